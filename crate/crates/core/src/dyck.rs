//! Unlabeled Dyck paths and the path statistics used by the counting formulas.
//!
//! A path is a word over `{N, E}` with as many `N` as `E` steps in which no
//! prefix has more `E` than `N` steps. The canonical text form is the step word
//! itself, e.g. `"NNENEE"`; the empty string is the path of semilength 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cache::RowCache;
use crate::formulas::{binomial, catalan, div_exact};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    N,
    E,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("invalid step {found:?} at position {position}; expected 'N' or 'E'")]
    InvalidStep { found: char, position: usize },
    #[error("path dips below the diagonal at step {position}")]
    BelowDiagonal { position: usize },
    #[error("path ends at height {height}, not on the diagonal")]
    Unbalanced { height: usize },
    #[error("the empty path has no first-return decomposition")]
    Empty,
    #[error("north step index {m} out of range 1..={semilength}")]
    IndexOutOfRange { m: usize, semilength: usize },
}

/// A Dyck path. Ordering is lexicographic on steps with `N < E`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

/// Lengths of the maximal runs of north steps, in path order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunComposition(pub Vec<usize>);

impl RunComposition {
    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, DyckError> {
        let mut height = 0usize;
        for (position, step) in steps.iter().enumerate() {
            match step {
                Step::N => height += 1,
                Step::E => {
                    height = height
                        .checked_sub(1)
                        .ok_or(DyckError::BelowDiagonal { position })?;
                }
            }
        }
        if height != 0 {
            return Err(DyckError::Unbalanced { height });
        }
        Ok(DyckPath { steps })
    }

    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    /// `(NE)^n`.
    pub fn zigzag(n: usize) -> Self {
        let mut steps = Vec::with_capacity(2 * n);
        for _ in 0..n {
            steps.push(Step::N);
            steps.push(Step::E);
        }
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Rebuilds `N inner E tail`.
    pub fn compose(inner: &DyckPath, tail: &DyckPath) -> DyckPath {
        let mut steps = Vec::with_capacity(inner.steps.len() + tail.steps.len() + 2);
        steps.push(Step::N);
        steps.extend_from_slice(&inner.steps);
        steps.push(Step::E);
        steps.extend_from_slice(&tail.steps);
        DyckPath { steps }
    }

    /// Splits at the first return to the diagonal: `self = N inner E tail`.
    pub fn first_return_split(&self) -> Result<(DyckPath, DyckPath), DyckError> {
        if self.steps.is_empty() {
            return Err(DyckError::Empty);
        }
        let mut height = 0usize;
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                Step::N => height += 1,
                Step::E => height -= 1,
            }
            if height == 0 {
                let inner = DyckPath {
                    steps: self.steps[1..i].to_vec(),
                };
                let tail = DyckPath {
                    steps: self.steps[i + 1..].to_vec(),
                };
                return Ok((inner, tail));
            }
        }
        unreachable!("a validated non-empty path returns to the diagonal")
    }

    pub fn north_run_lengths(&self) -> RunComposition {
        let mut runs = Vec::new();
        let mut current = 0usize;
        for step in &self.steps {
            match step {
                Step::N => current += 1,
                Step::E => {
                    if current > 0 {
                        runs.push(current);
                    }
                    current = 0;
                }
            }
        }
        RunComposition(runs)
    }

    /// Number of north steps between consecutive east steps, one entry per
    /// vertical line `x = 0, 1, ..., n-1` (empty runs included).
    pub fn column_heights(&self) -> Vec<usize> {
        let mut cols = Vec::with_capacity(self.semilength());
        let mut current = 0usize;
        for step in &self.steps {
            match step {
                Step::N => current += 1,
                Step::E => {
                    cols.push(current);
                    current = 0;
                }
            }
        }
        cols
    }

    /// Builds the path `N^{c_1} E N^{c_2} E ...` from per-column north counts.
    pub fn from_column_heights(cols: &[usize]) -> Result<Self, DyckError> {
        let mut steps = Vec::with_capacity(2 * cols.iter().sum::<usize>());
        for &c in cols {
            steps.extend(std::iter::repeat_n(Step::N, c));
            steps.push(Step::E);
        }
        DyckPath::new(steps)
    }

    /// Number of trailing north runs of length exactly one.
    ///
    /// `(NE)^n` reports `n - 1`: its first singleton is not counted.
    pub fn trailing_singleton_norths(&self) -> usize {
        let runs = self.north_run_lengths();
        let runs = runs.lengths();
        let n = self.semilength();
        if n > 0 && runs.len() == n {
            return n - 1;
        }
        runs.iter().rev().take_while(|&&r| r == 1).count()
    }

    /// Whether the `m`-th north step (1-based) is immediately followed by an east step.
    pub fn mth_north_followed_by_east(&self, m: usize) -> Result<bool, DyckError> {
        let n = self.semilength();
        if m < 1 || m > n {
            return Err(DyckError::IndexOutOfRange { m, semilength: n });
        }
        let idx = self
            .steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::N)
            .nth(m - 1)
            .map(|(i, _)| i)
            .expect("m is within range");
        Ok(self.steps.get(idx + 1) == Some(&Step::E))
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::N => "N",
                Step::E => "E",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .trim()
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                'N' | 'n' => Ok(Step::N),
                'E' | 'e' => Ok(Step::E),
                found => Err(DyckError::InvalidStep { found, position }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        DyckPath::new(steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DyckPath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Lexicographic stream (`N < E`) of all Dyck paths of a fixed semilength.
#[derive(Debug, Clone)]
pub struct DyckPaths {
    next: Option<Vec<Step>>,
}

impl DyckPaths {
    pub fn new(n: usize) -> Self {
        let mut first = vec![Step::N; n];
        first.extend(std::iter::repeat_n(Step::E, n));
        DyckPaths { next: Some(first) }
    }
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(DyckPath { steps: current })
    }
}

// Rightmost N that can become E, followed by the smallest completion.
fn successor(steps: &[Step]) -> Option<Vec<Step>> {
    let total_n = steps.len() / 2;
    let mut norths = 0usize;
    let mut easts = 0usize;
    let mut heights = Vec::with_capacity(steps.len());
    for s in steps {
        heights.push((norths, easts));
        match s {
            Step::N => norths += 1,
            Step::E => easts += 1,
        }
    }
    for i in (0..steps.len()).rev() {
        let (n_before, e_before) = heights[i];
        if steps[i] == Step::N && n_before > e_before {
            let mut out = steps[..i].to_vec();
            out.push(Step::E);
            let remaining_n = total_n - n_before;
            out.extend(std::iter::repeat_n(Step::N, remaining_n));
            out.extend(std::iter::repeat_n(Step::E, steps.len() - out.len()));
            return Some(out);
        }
    }
    None
}

pub fn enumerate_dyck_paths(n: usize) -> Vec<DyckPath> {
    DyckPaths::new(n).collect()
}

static H_ROWS: RowCache = RowCache::new();
static D_ROWS: RowCache = RowCache::new();

/// Number of semilength-`n` paths whose `m`-th north step is followed by an east step.
pub fn count_h(n: usize, m: i64) -> BigUint {
    if m < 1 || m as u64 > n as u64 {
        return BigUint::zero();
    }
    H_ROWS.with_rows(n, build_h_row, |rows| rows[n][m as usize].clone())
}

// Row n holds h(n, 0..=n).
fn build_h_row(n: usize, rows: &[Vec<BigUint>]) -> Vec<BigUint> {
    let h = |a: usize, b: usize| -> BigUint {
        if b < 1 || b > a {
            BigUint::zero()
        } else {
            rows[a][b].clone()
        }
    };
    let mut row = vec![BigUint::zero(); n + 1];
    for m in 1..=n {
        row[m] = if m == 1 {
            catalan(n - 1)
        } else if m == n {
            catalan(n)
        } else {
            let mut total = BigUint::zero();
            for i in 1..m {
                total += catalan(i - 1) * h(n - i, m - i);
            }
            for i in m..=n {
                total += h(i - 1, m - 1) * catalan(n - i);
            }
            total
        };
    }
    row
}

/// Number of semilength-`n` paths with exactly `k` trailing singleton north runs,
/// by the first-return recurrence.
pub fn count_d(n: usize, k: usize) -> BigUint {
    if n == 0 || k >= n {
        return BigUint::zero();
    }
    D_ROWS.with_rows(n, build_d_row, |rows| rows[n][k].clone())
}

// Row n holds d(n, 0..n).
fn build_d_row(n: usize, rows: &[Vec<BigUint>]) -> Vec<BigUint> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![BigUint::one()];
    }
    let d = |a: usize, b: usize| -> BigUint { rows[a].get(b).cloned().unwrap_or_default() };
    (0..n)
        .map(|k| {
            let mut total = if k >= 1 { d(n - 1, k - 1) } else { BigUint::zero() };
            for i in (k + 1)..n {
                total += catalan(n - i - 1) * d(i, k);
            }
            total
        })
        .collect()
}

/// `(k+1) * binom(2n-2-k, n-1-k) / n`.
pub fn count_d_closed_form(n: usize, k: usize) -> BigUint {
    if n == 0 || k >= n {
        return BigUint::zero();
    }
    let top = (2 * n - 2 - k) as i64;
    let num = BigUint::from(k + 1) * binomial(top, (n - 1 - k) as i64);
    div_exact(&num, &BigUint::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    fn texts(n: usize) -> Vec<String> {
        enumerate_dyck_paths(n).iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(texts(0), vec![""]);
        assert_eq!(texts(1), vec!["NE"]);
        assert_eq!(texts(2), vec!["NNEE", "NENE"]);
        assert_eq!(
            texts(3),
            vec!["NNNEEE", "NNENEE", "NNEENE", "NENNEE", "NENENE"]
        );
        assert_eq!(enumerate_dyck_paths(6).len(), 132);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        for n in 0..=8 {
            let paths = enumerate_dyck_paths(n);
            assert_eq!(BigUint::from(paths.len()), catalan(n));
            assert!(paths.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn parse_rejects_bad_words() {
        assert!(matches!(
            "NEEN".parse::<DyckPath>(),
            Err(DyckError::BelowDiagonal { position: 2 })
        ));
        assert!(matches!(
            "NNE".parse::<DyckPath>(),
            Err(DyckError::Unbalanced { height: 1 })
        ));
        assert!(matches!(
            "NXE".parse::<DyckPath>(),
            Err(DyckError::InvalidStep { found: 'X', position: 1 })
        ));
    }

    #[test]
    fn first_return() {
        let (a, b) = p("NNEE").first_return_split().unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("NE".into(), "".into()));
        let (a, b) = p("NENE").first_return_split().unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("".into(), "NE".into()));
        let (a, b) = p("NENNEE").first_return_split().unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("".into(), "NNEE".into()));
        assert_eq!(DyckPath::empty().first_return_split(), Err(DyckError::Empty));
        for n in 1..=8 {
            for path in DyckPaths::new(n) {
                let (inner, tail) = path.first_return_split().unwrap();
                assert_eq!(DyckPath::compose(&inner, &tail), path);
            }
        }
    }

    #[test]
    fn runs() {
        assert_eq!(p("NNNEEE").north_run_lengths().0, vec![3]);
        assert_eq!(p("NNENEE").north_run_lengths().0, vec![2, 1]);
        assert_eq!(p("NENENE").north_run_lengths().0, vec![1, 1, 1]);
        assert_eq!(p("NNEENE").column_heights(), vec![2, 0, 1]);
    }

    #[test]
    fn trailing_singletons() {
        assert_eq!(p("NENENE").trailing_singleton_norths(), 2);
        assert_eq!(p("NENNEE").trailing_singleton_norths(), 0);
        assert_eq!(p("NNENEE").trailing_singleton_norths(), 1);
        assert_eq!(p("NE").trailing_singleton_norths(), 0);
    }

    #[test]
    fn mth_north() {
        assert!(p("NENENE").mth_north_followed_by_east(2).unwrap());
        assert!(!p("NNEE").mth_north_followed_by_east(1).unwrap());
        assert!(p("NNENEE").mth_north_followed_by_east(2).unwrap());
        assert!(p("NNEE").mth_north_followed_by_east(2).unwrap());
        assert_eq!(
            p("NNEE").mth_north_followed_by_east(3),
            Err(DyckError::IndexOutOfRange { m: 3, semilength: 2 })
        );
        assert!(p("NNEE").mth_north_followed_by_east(0).is_err());
    }

    #[test]
    fn h_values() {
        assert_eq!(count_h(3, 1), BigUint::from(2u32));
        assert_eq!(count_h(4, 4), BigUint::from(14u32));
        assert_eq!(count_h(3, 2), BigUint::from(3u32));
        assert_eq!(count_h(3, 0), BigUint::zero());
        assert_eq!(count_h(3, 4), BigUint::zero());
        assert_eq!(count_h(3, -2), BigUint::zero());
    }

    #[test]
    fn h_matches_brute_force() {
        for n in 1..=8 {
            let paths = enumerate_dyck_paths(n);
            for m in 1..=n {
                let brute = paths
                    .iter()
                    .filter(|p| p.mth_north_followed_by_east(m).unwrap())
                    .count();
                assert_eq!(count_h(n, m as i64), BigUint::from(brute), "h({n},{m})");
            }
        }
    }

    #[test]
    fn d_values() {
        assert_eq!(count_d(3, 0), BigUint::from(2u32));
        assert_eq!(count_d(3, 2), BigUint::from(1u32));
        assert_eq!(count_d(5, 2), BigUint::from(9u32));
        assert_eq!(count_d(5, 5), BigUint::zero());
        assert_eq!(count_d(5, 7), BigUint::zero());
    }

    #[test]
    fn d_matches_brute_force_and_sums_to_catalan() {
        for n in 1..=8 {
            let mut tally = vec![0usize; n];
            for path in DyckPaths::new(n) {
                tally[path.trailing_singleton_norths()] += 1;
            }
            let mut sum = BigUint::zero();
            for (k, &count) in tally.iter().enumerate() {
                assert_eq!(count_d(n, k), BigUint::from(count), "d({n},{k})");
                sum += count_d(n, k);
            }
            assert_eq!(sum, catalan(n));
        }
    }

    #[test]
    fn d_recurrence_equals_closed_form() {
        for n in 1..=20 {
            for k in 0..n {
                assert_eq!(count_d(n, k), count_d_closed_form(n, k), "d({n},{k})");
            }
        }
    }

    fn arb_path() -> impl proptest::strategy::Strategy<Value = DyckPath> {
        use proptest::prelude::*;
        (1usize..=9).prop_flat_map(|n| {
            let paths = enumerate_dyck_paths(n);
            (0..paths.len()).prop_map(move |i| paths[i].clone())
        })
    }

    proptest::proptest! {
        #[test]
        fn text_and_json_round_trip(path in arb_path()) {
            proptest::prop_assert_eq!(&path.to_string().parse::<DyckPath>().unwrap(), &path);
            let json = serde_json::to_string(&path).unwrap();
            proptest::prop_assert_eq!(serde_json::from_str::<DyckPath>(&json).unwrap(), path);
        }

        #[test]
        fn split_and_columns_recompose(path in arb_path()) {
            let (inner, tail) = path.first_return_split().unwrap();
            proptest::prop_assert_eq!(&DyckPath::compose(&inner, &tail), &path);
            proptest::prop_assert_eq!(&DyckPath::from_column_heights(&path.column_heights()).unwrap(), &path);
            proptest::prop_assert_eq!(path.north_run_lengths().total(), path.semilength());
            proptest::prop_assert!(path.trailing_singleton_norths() < path.semilength());
        }
    }
}
