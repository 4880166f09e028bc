//! Closed forms and recurrences for `pf_n(P)`, with a registry keyed by pattern set.
//!
//! All arithmetic is exact. Every division goes through [`div_exact`], which
//! panics on a nonzero remainder.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cache::RowCache;
use crate::dyck::{count_d, count_h};
use crate::patterns::PatternSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("k={k} is outside 1..={n}")]
    OutOfRange { n: usize, k: i64 },
}

static CATALAN: RowCache = RowCache::new();

pub fn catalan(n: usize) -> BigUint {
    CATALAN.with_rows(
        n,
        |m, rows| {
            if m == 0 {
                vec![BigUint::one()]
            } else {
                // C_m = C_{m-1} * 2(2m-1) / (m+1)
                let num = &rows[m - 1][0] * BigUint::from(2 * (2 * m - 1));
                vec![div_exact(&num, &BigUint::from(m + 1))]
            }
        },
        |rows| rows[n][0].clone(),
    )
}

/// `binom(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc = div_exact(&acc, &BigUint::from(i + 1));
    }
    acc
}

/// Panics unless `den` divides `num`.
pub fn div_exact(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "inexact division: {num} / {den}");
    q
}

fn c(n: usize) -> BigUint {
    catalan(n)
}

fn b_i(n: usize, k: usize) -> BigUint {
    binomial(n as i64, k as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaKind {
    ClosedForm,
    Recurrence,
    BijectiveCount,
}

#[derive(Clone)]
pub struct FormulaEntry {
    pub key: PatternSet,
    pub kind: FormulaKind,
    pub evaluator: fn(usize) -> BigUint,
    /// The formula, written out.
    pub refs: &'static str,
    pub oeis_id: Option<&'static str>,
}

impl std::fmt::Debug for FormulaEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormulaEntry")
            .field("key", &self.key.to_string())
            .field("kind", &self.kind)
            .field("refs", &self.refs)
            .field("oeis_id", &self.oeis_id)
            .finish()
    }
}

type EntryRow = (
    &'static [&'static str],
    FormulaKind,
    fn(usize) -> BigUint,
    &'static str,
    Option<&'static str>,
);

const ENTRIES: &[EntryRow] = &[
    (
        &["123,132,213,231,312"],
        FormulaKind::ClosedForm,
        five_decreasing,
        "3 if n=2 else 1",
        None,
    ),
    (
        &["132,213,231,312,321"],
        FormulaKind::ClosedForm,
        five_increasing,
        "3 if n=2 else C_n",
        None,
    ),
    (
        &["123,132,213,231", "123,132,231,312"],
        FormulaKind::ClosedForm,
        four_three,
        "3 for n>=2",
        Some("A122553"),
    ),
    (
        &["123,132,213,312", "123,213,231,312"],
        FormulaKind::ClosedForm,
        four_n_plus_one,
        "n+1 for n>=2",
        Some("A065475"),
    ),
    (
        &["132,213,231,312"],
        FormulaKind::ClosedForm,
        four_catalan_plus_one,
        "C_n+1 for n>=2",
        None,
    ),
    (
        &["132,213,231,321", "132,231,312,321"],
        FormulaKind::ClosedForm,
        four_catalan_sum,
        "C_n+C_{n-1} for n>=2",
        Some("A071716"),
    ),
    (
        &["132,213,312,321", "213,231,312,321"],
        FormulaKind::ClosedForm,
        four_catalan_diff,
        "2C_n-C_{n-1}",
        Some("A000782"),
    ),
    (
        &["123,132,231"],
        FormulaKind::ClosedForm,
        odd,
        "2n-1",
        Some("A005408"),
    ),
    (
        &["123,132,312", "123,213,231", "123,231,312"],
        FormulaKind::ClosedForm,
        triangular,
        "binom(n+1,2)",
        Some("A000217"),
    ),
    (
        &["123,213,312"],
        FormulaKind::ClosedForm,
        central_polygonal,
        "n(n-1)+1",
        Some("A002061"),
    ),
    (
        &["123,132,213"],
        FormulaKind::BijectiveCount,
        leafy_tree_count,
        "rooted ordered trees with n+1 edges, every vertex a leaf or adjacent to a leaf",
        Some("A143363"),
    ),
    (
        &["132,213,231", "132,231,312"],
        FormulaKind::ClosedForm,
        catalan_partial_sum,
        "sum_{i=1}^{n} C_i",
        Some("A014138"),
    ),
    (
        &["132,213,312", "213,231,312", "123,213"],
        FormulaKind::ClosedForm,
        catalan_difference,
        "C_{n+1}-C_n",
        Some("A000245"),
    ),
    (
        &["132,231,321"],
        FormulaKind::ClosedForm,
        catalan_plus_weighted,
        "C_n+(n-1)C_{n-1}",
        Some("A077587"),
    ),
    (
        &["132,213,321", "132,312,321", "213,231,321"],
        FormulaKind::ClosedForm,
        central_binomial_odd,
        "binom(2n-1,n)",
        Some("A001700"),
    ),
    (
        &["213,312,321"],
        FormulaKind::ClosedForm,
        weighted_catalan_difference,
        "nC_n-(n-1)C_{n-1}",
        Some("A076540"),
    ),
    (
        &["231,312,321"],
        FormulaKind::ClosedForm,
        dissection_sum,
        "sum_{k=0}^{floor(n/2)} binom(2n-k,n+k) binom(n+k,k) / (n+1)",
        Some("A001002"),
    ),
    (
        &["123,231"],
        FormulaKind::ClosedForm,
        pair_123_231,
        "binom(n+1,3)+binom(n,2)+1",
        Some("A105163"),
    ),
    (
        &["123,312"],
        FormulaKind::ClosedForm,
        pair_123_312,
        "2 binom(n+1,3)+1",
        Some("A064999"),
    ),
    (
        &["123,132"],
        FormulaKind::Recurrence,
        b_row_sum,
        "sum_{k=2}^{n+1} b(n,k)",
        Some("A000958"),
    ),
    (
        &["132,231"],
        FormulaKind::ClosedForm,
        pair_132_231,
        "sum_{k=0}^{n-1} binom(n-1,k) C_{n-k}",
        Some("A002212"),
    ),
    (
        &["132,213", "132,312", "213,231", "231,312"],
        FormulaKind::Recurrence,
        super_catalan,
        "s_n = s_{n-1} + 2 sum_{i=1}^{n-1} s_i s_{n-i-1}, s_0 = 1",
        Some("A001003"),
    ),
    (
        &["132,321"],
        FormulaKind::Recurrence,
        pair_132_321,
        "C_n + sum_{m=1}^{n-1} (n-m) h(n,m)",
        None,
    ),
    (
        &["213,321"],
        FormulaKind::Recurrence,
        pair_213_321,
        "C_n + sum_{m=1}^{n-1} m h(n,m)",
        None,
    ),
    (
        &["213,312"],
        FormulaKind::Recurrence,
        pair_213_312,
        "sum_{k=0}^{n-1} (sum_{i=0}^{k} binom(n-1,i)) d(n,k)",
        None,
    ),
    (
        &["231,321"],
        FormulaKind::ClosedForm,
        ternary,
        "binom(3n,n)/(2n+1)",
        Some("A001764"),
    ),
    (
        &["312,321"],
        FormulaKind::ClosedForm,
        run_product_sum,
        "sum over Dyck paths of prod over non-final north runs (run length + 1)",
        None,
    ),
    (&["12"], FormulaKind::ClosedForm, one, "1", None),
    (&["21"], FormulaKind::ClosedForm, catalan_n, "C_n", None),
    (
        &["123"],
        FormulaKind::ClosedForm,
        rq_123,
        "sum_{k=ceil(n/2)}^{n} C_k binom(n,k) binom(k,n-k) / (n-k+1)",
        None,
    ),
];

/// Every registered formula, keyed by pattern set.
pub fn registry() -> &'static BTreeMap<PatternSet, FormulaEntry> {
    static REGISTRY: OnceLock<BTreeMap<PatternSet, FormulaEntry>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut map = BTreeMap::new();
        for &(keys, kind, evaluator, refs, oeis_id) in ENTRIES {
            for key in keys {
                let key: PatternSet = key.parse().expect("registry keys are valid");
                let entry = FormulaEntry {
                    key: key.clone(),
                    kind,
                    evaluator,
                    refs,
                    oeis_id,
                };
                let previous = map.insert(key, entry);
                assert!(previous.is_none(), "duplicate registry key {key_text}", key_text = keys.join(";"));
            }
        }
        map
    })
}

pub fn lookup(set: &PatternSet) -> Option<&'static FormulaEntry> {
    registry().get(set)
}

/// The registered value of `pf_n(set)`, or `None` when nothing is registered or `n == 0`.
pub fn closed_form(set: &PatternSet, n: usize) -> Option<BigUint> {
    if n == 0 {
        return None;
    }
    lookup(set).map(|e| (e.evaluator)(n))
}

fn five_decreasing(n: usize) -> BigUint {
    BigUint::from(if n == 2 { 3u32 } else { 1 })
}

fn five_increasing(n: usize) -> BigUint {
    if n == 2 {
        BigUint::from(3u32)
    } else {
        c(n)
    }
}

fn four_three(n: usize) -> BigUint {
    BigUint::from(if n == 1 { 1u32 } else { 3 })
}

fn four_n_plus_one(n: usize) -> BigUint {
    BigUint::from(if n == 1 { 1 } else { n + 1 })
}

fn four_catalan_plus_one(n: usize) -> BigUint {
    if n == 1 {
        BigUint::one()
    } else {
        c(n) + 1u32
    }
}

fn four_catalan_sum(n: usize) -> BigUint {
    if n == 1 {
        BigUint::one()
    } else {
        c(n) + c(n - 1)
    }
}

fn four_catalan_diff(n: usize) -> BigUint {
    c(n) * 2u32 - c(n - 1)
}

fn odd(n: usize) -> BigUint {
    BigUint::from(2 * n - 1)
}

fn triangular(n: usize) -> BigUint {
    b_i(n + 1, 2)
}

fn central_polygonal(n: usize) -> BigUint {
    BigUint::from(n * (n - 1) + 1)
}

fn catalan_partial_sum(n: usize) -> BigUint {
    (1..=n).map(c).sum()
}

fn catalan_difference(n: usize) -> BigUint {
    c(n + 1) - c(n)
}

fn catalan_plus_weighted(n: usize) -> BigUint {
    c(n) + c(n - 1) * (n - 1)
}

fn central_binomial_odd(n: usize) -> BigUint {
    b_i(2 * n - 1, n)
}

fn weighted_catalan_difference(n: usize) -> BigUint {
    c(n) * n - c(n - 1) * (n - 1)
}

fn dissection_sum(n: usize) -> BigUint {
    let total: BigUint = (0..=n / 2)
        .map(|k| b_i(2 * n - k, n + k) * b_i(n + k, k))
        .sum();
    div_exact(&total, &BigUint::from(n + 1))
}

fn pair_123_231(n: usize) -> BigUint {
    b_i(n + 1, 3) + b_i(n, 2) + 1u32
}

fn pair_123_312(n: usize) -> BigUint {
    b_i(n + 1, 3) * 2u32 + 1u32
}

fn b_row_sum(n: usize) -> BigUint {
    (2..=n as i64 + 1).map(|k| recurrence_b(n as i64, k)).sum()
}

fn pair_132_231(n: usize) -> BigUint {
    (0..n).map(|k| b_i(n - 1, k) * c(n - k)).sum()
}

fn pair_132_321(n: usize) -> BigUint {
    c(n) + (1..n).map(|m| count_h(n, m as i64) * (n - m)).sum::<BigUint>()
}

fn pair_213_321(n: usize) -> BigUint {
    c(n) + (1..n).map(|m| count_h(n, m as i64) * m).sum::<BigUint>()
}

fn pair_213_312(n: usize) -> BigUint {
    let mut partial = BigUint::zero();
    let mut total = BigUint::zero();
    for k in 0..n {
        partial += b_i(n - 1, k);
        total += &partial * count_d(n, k);
    }
    total
}

fn ternary(n: usize) -> BigUint {
    div_exact(&b_i(3 * n, n), &BigUint::from(2 * n + 1))
}

fn one(_n: usize) -> BigUint {
    BigUint::one()
}

fn catalan_n(n: usize) -> BigUint {
    c(n)
}

/// `Σ_d Π (w_i + 1)` over semilength-`n` Dyck paths `d`, the product running over
/// all north runs but the last.
///
/// Dynamic program over the lattice point at which each north run starts.
pub fn run_product_sum(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    // g[a][b]: weighted completions from (a norths, b easts) with a north run about to start.
    let mut g = vec![vec![BigUint::zero(); n]; n];
    for a in (0..n).rev() {
        for b in 0..=a {
            let mut total = BigUint::zero();
            for r in 1..=n - a {
                let top = a + r;
                if top == n {
                    total += 1u32;
                    continue;
                }
                let mut inner = BigUint::zero();
                for e in b + 1..=top {
                    inner += &g[top][e];
                }
                total += inner * (r + 1);
            }
            g[a][b] = total;
        }
    }
    g[0][0].clone()
}

static LEAFY: RowCache = RowCache::new();

/// Rooted ordered trees with `edges` edges in which every vertex with children
/// has at least one leaf child.
pub fn leafy_trees_with_edges(edges: usize) -> BigUint {
    // Row e holds [T(e), S(e), N(e)]: S counts child sequences with e edges in total,
    // N those sequences with no leaf child.
    LEAFY.with_rows(
        edges,
        |e, rows| {
            if e == 0 {
                return vec![BigUint::one(), BigUint::one(), BigUint::one()];
            }
            let mut s = BigUint::zero();
            let mut no_leaf = BigUint::zero();
            for first in 0..e {
                s += &rows[first][0] * &rows[e - 1 - first][1];
                if first >= 1 {
                    no_leaf += &rows[first][0] * &rows[e - 1 - first][2];
                }
            }
            let t = &s - &no_leaf;
            vec![t, s, no_leaf]
        },
        |rows| rows[edges][0].clone(),
    )
}

fn leafy_tree_count(n: usize) -> BigUint {
    leafy_trees_with_edges(n + 1)
}

static B_ROWS: RowCache = RowCache::new();

/// The active-site triangle: zero for `k < 2`, `k > n + 1` or `n < 1`,
/// `b(1,2) = b(2,2) = 1`, otherwise `2b(n-1,k-1) + Σ_{j=k-1}^{n-1} b(n-2,j)`.
pub fn recurrence_b(n: i64, k: i64) -> BigUint {
    if n < 1 || k < 2 || k > n + 1 {
        return BigUint::zero();
    }
    let (nu, ku) = (n as usize, k as usize);
    B_ROWS.with_rows(nu, build_b_row, |rows| rows[nu][ku].clone())
}

// Row n holds b(n, 0..=n+1).
fn build_b_row(n: usize, rows: &[Vec<BigUint>]) -> Vec<BigUint> {
    let get = |m: i64, k: i64| -> BigUint {
        if m < 1 || k < 0 {
            return BigUint::zero();
        }
        rows[m as usize].get(k as usize).cloned().unwrap_or_default()
    };
    let mut row = vec![BigUint::zero(); n + 2];
    if n == 0 {
        return row;
    }
    for k in 2..=n + 1 {
        row[k] = if k == 2 && n <= 2 {
            BigUint::one()
        } else {
            let (ni, ki) = (n as i64, k as i64);
            let mut v = get(ni - 1, ki - 1) * 2u32;
            for j in (ki - 1)..=(ni - 1) {
                v += get(ni - 2, j);
            }
            v
        };
    }
    row
}

static F_ROWS: RowCache = RowCache::new();

/// `f(0) = f(1) = 1` and the triple-sum recurrence counting dot-and-parenthesis arrangements.
pub fn recurrence_f(n: usize) -> BigUint {
    F_ROWS.with_rows(
        n,
        |m, rows| {
            if m <= 1 {
                return vec![BigUint::one()];
            }
            let f = |i: usize| &rows[i][0];
            let mut total = BigUint::zero();
            for i in 2..=m {
                // Σ_j f(m-i-j) and Σ_k f(i-k) factor apart.
                let tail: BigUint = (0..=m - i).map(|j| f(m - i - j)).sum();
                let head: BigUint = (2..=i).map(|k| f(i - k)).sum();
                total += head * tail;
            }
            for j in 0..m {
                total += f(m - 1 - j);
            }
            vec![total]
        },
        |rows| rows[n][0].clone(),
    )
}

static A_ROWS: RowCache = RowCache::new();

/// Catalan's triangle restricted to `1 <= k <= n`: `a(n,1) = 1`, `a(n,n) = C_n`,
/// `a(n,k) = a(n-1,k) + a(n,k-1)`.
pub fn triangle_a(n: usize, k: i64) -> Result<BigUint, FormulaError> {
    if k < 1 || k as u64 > n as u64 {
        return Err(FormulaError::OutOfRange { n, k });
    }
    Ok(A_ROWS.with_rows(
        n,
        |m, rows| {
            let mut row = vec![BigUint::zero(); m + 1];
            for k in 1..=m {
                row[k] = if k == 1 {
                    BigUint::one()
                } else if k == m {
                    catalan(m)
                } else {
                    &rows[m - 1][k] + &row[k - 1]
                };
            }
            row
        },
        |rows| rows[n][k as usize].clone(),
    ))
}

static SUPER: RowCache = RowCache::new();

/// `s_0 = 1`, `s_n = s_{n-1} + 2 Σ_{i=1}^{n-1} s_i s_{n-i-1}`.
pub fn super_catalan(n: usize) -> BigUint {
    SUPER.with_rows(
        n,
        |m, rows| {
            if m == 0 {
                return vec![BigUint::one()];
            }
            let s = |i: usize| &rows[i][0];
            let mut conv = BigUint::zero();
            for i in 1..m {
                conv += s(i) * s(m - i - 1);
            }
            vec![s(m - 1) + conv * 2u32]
        },
        |rows| rows[n][0].clone(),
    )
}

/// `Σ_{k=⌈n/2⌉}^{n} C_k binom(n,k) binom(k,n-k) / (n-k+1)`, each term divided exactly.
pub fn rq_123(n: usize) -> BigUint {
    (n.div_ceil(2)..=n)
        .map(|k| {
            let num = c(k) * b_i(n, k) * b_i(k, n - k);
            div_exact(&num, &BigUint::from(n - k + 1))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::enumerate_dyck_paths;

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn brute_binomial(n: u64, k: u64) -> BigUint {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for i in 0..k {
            num *= n - i;
            den *= i + 1;
        }
        num / den
    }

    #[test]
    fn basic_numbers() {
        assert_eq!(catalan(3), big(5));
        assert_eq!(catalan(0), big(1));
        assert_eq!(binomial(6, 3), big(20));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(3, -1), big(0));
        for n in 0..40u64 {
            for k in 0..=n {
                assert_eq!(binomial(n as i64, k as i64), brute_binomial(n, k));
            }
            assert_eq!(catalan(n as usize), brute_binomial(2 * n, n) / (n + 1));
        }
    }

    #[test]
    #[should_panic(expected = "inexact division")]
    fn inexact_division_panics() {
        div_exact(&big(7), &big(2));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(&set("213,312,321"), 6), Some(big(582)));
        assert_eq!(closed_form(&set("231,321"), 5), Some(big(273)));
        assert_eq!(closed_form(&set("132,231"), 4), Some(big(36)));
        assert_eq!(closed_form(&set("132"), 4), None);
        assert_eq!(closed_form(&set("231,321"), 0), None);
    }

    #[test]
    fn registry_shape() {
        let reg = registry();
        assert_eq!(reg.len(), 44);
        for entry in reg.values() {
            for n in 1..=12 {
                let _ = (entry.evaluator)(n);
            }
        }
        assert_eq!(lookup(&set("312,213")).unwrap().key, set("213,312"));
    }

    #[test]
    fn b_table_examples() {
        assert_eq!(recurrence_b(4, 2), big(3));
        assert_eq!(recurrence_b(5, 6), big(16));
        let row3: BigUint = (2..=4).map(|k| recurrence_b(3, k)).sum();
        assert_eq!(row3, big(8));
        assert_eq!(recurrence_b(5, 1), big(0));
        assert_eq!(recurrence_b(5, 7), big(0));
        assert_eq!(recurrence_b(0, 2), big(0));
        for n in 1..=20i64 {
            assert_eq!(recurrence_b(n, n + 1), BigUint::one() << (n - 1));
        }
    }

    #[test]
    fn b_row_sums_equal_b_two_steps_later() {
        for n in 1..=25i64 {
            let sum: BigUint = (2..=n + 1).map(|k| recurrence_b(n, k)).sum();
            assert_eq!(sum, recurrence_b(n + 2, 2), "n={n}");
        }
    }

    #[test]
    fn f_examples() {
        assert_eq!(recurrence_f(0), big(1));
        assert_eq!(recurrence_f(3), big(9));
        assert_eq!(recurrence_f(6), big(297));
        for n in 1..=30 {
            assert_eq!(recurrence_f(n), catalan(n + 1) - catalan(n), "n={n}");
        }
    }

    // The raw triple sum, without factoring.
    #[test]
    fn f_factoring_matches_triple_sum() {
        let mut f = vec![big(1), big(1)];
        for n in 2..=12usize {
            let mut total = BigUint::zero();
            for i in 2..=n {
                for j in 0..=n - i {
                    for k in 2..=i {
                        total += &f[i - k] * &f[n - i - j];
                    }
                }
            }
            for j in 0..n {
                total += &f[n - 1 - j];
            }
            assert_eq!(total, recurrence_f(n));
            f.push(total);
        }
    }

    #[test]
    fn a_examples() {
        assert_eq!(triangle_a(7, 1).unwrap(), big(1));
        assert_eq!(triangle_a(4, 4).unwrap(), big(14));
        let row5: BigUint = (1..=5).map(|k| triangle_a(5, k).unwrap()).sum();
        assert_eq!(row5, big(90));
        assert!(triangle_a(4, 0).is_err());
        assert!(triangle_a(4, 5).is_err());
        for n in 1..=20 {
            let row: BigUint = (1..=n as i64).map(|k| triangle_a(n, k).unwrap()).sum();
            assert_eq!(row, catalan(n + 1) - catalan(n));
        }
    }

    #[test]
    fn super_catalan_examples() {
        assert_eq!(super_catalan(2), big(3));
        assert_eq!(super_catalan(3), big(11));
        assert_eq!(super_catalan(6), big(903));
    }

    // Little Schröder numbers via the path-count definition: Σ_k N(n,k) 2^{k-1}.
    #[test]
    fn super_catalan_matches_narayana_sum() {
        for n in 1..=20usize {
            let total: BigUint = (1..=n)
                .map(|k| {
                    let narayana = binomial(n as i64, k as i64) * binomial(n as i64, k as i64 - 1) / n;
                    narayana << (k - 1)
                })
                .sum();
            assert_eq!(super_catalan(n), total, "n={n}");
        }
    }

    #[test]
    fn rq_examples() {
        assert_eq!(rq_123(1), big(1));
        assert_eq!(rq_123(3), big(11));
        assert_eq!(rq_123(6), big(1207));
        for n in 1..=60 {
            let _ = rq_123(n);
        }
    }

    #[test]
    fn dissection_and_ternary_divide_exactly() {
        for n in 1..=60 {
            let _ = dissection_sum(n);
            let _ = ternary(n);
        }
    }

    #[test]
    fn catalan_product_identity() {
        for n in 1..=30usize {
            let mut total = BigUint::zero();
            for k in 1..=n {
                for i in 0..k {
                    total += catalan(i) * catalan(n - i - 1);
                }
            }
            assert_eq!(total, binomial(2 * n as i64 - 1, n as i64));
        }
    }

    #[test]
    fn run_product_matches_path_enumeration() {
        for n in 1..=9 {
            let direct: u64 = enumerate_dyck_paths(n)
                .iter()
                .map(|d| {
                    let runs = d.north_run_lengths();
                    let runs = runs.lengths();
                    runs[..runs.len() - 1].iter().map(|&r| r as u64 + 1).product::<u64>()
                })
                .sum();
            assert_eq!(run_product_sum(n), big(direct), "n={n}");
        }
    }

    #[test]
    fn leafy_counts() {
        let expected = [1u64, 1, 1, 3, 6, 17, 43, 123];
        for (e, &v) in expected.iter().enumerate() {
            assert_eq!(leafy_trees_with_edges(e), big(v), "edges={e}");
        }
    }
}
