//! Classical pattern containment and the two engines counting parking functions
//! whose reading permutation avoids a pattern set.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::dyck::DyckPaths;
use crate::parking::parking_functions_on_path;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("not a permutation of 1..n: {0}")]
    InvalidPermutation(String),
    #[error("empty pattern set")]
    EmptySet,
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("{engine} is capped at n={cap}, requested n={n}; {hint}")]
    CapExceeded {
        engine: &'static str,
        n: usize,
        cap: usize,
        hint: &'static str,
    },
    #[error("engines disagree at n={n}: naive={naive}, perm-sum={perm_sum}")]
    EngineDisagreement {
        n: usize,
        naive: BigUint,
        perm_sum: BigUint,
    },
    #[error("{0} does not avoid 123, 231 and 312")]
    NotEligible(Permutation),
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self, PatternError> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n || seen[v] {
                return Err(PatternError::InvalidPermutation(format!("{entries:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `I_n`.
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// `J_n`.
    pub fn reverse_identity(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    /// `α ⊕ β`: β follows α with its values raised by `|α|`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let k = self.len();
        Permutation(self.0.iter().copied().chain(other.0.iter().map(|v| v + k)).collect())
    }

    /// `α ⊖ β`: β follows α and α's values are raised by `|β|`.
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let m = other.len();
        Permutation(self.0.iter().map(|v| v + m).chain(other.0.iter().copied()).collect())
    }

    /// 1-based positions `i` with `π_i < π_{i+1}`.
    pub fn ascent_set(&self) -> BTreeSet<usize> {
        ascents(&self.0)
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains(&self.0, &pattern.0)
    }

    pub fn count_occurrences(&self, pattern: &Permutation) -> BigUint {
        count_occurrences(&self.0, &pattern.0)
    }

    pub fn avoids(&self, set: &PatternSet) -> bool {
        avoids(&self.0, set)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() <= 9 { "" } else { "," };
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PatternError::InvalidPermutation(s.to_string());
        let entries = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?
        };
        if entries.is_empty() {
            return Err(bad());
        }
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A sorted, duplicate-free set of patterns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternSet(Vec<Permutation>);

impl PatternSet {
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self, PatternError> {
        let mut v: Vec<Permutation> = patterns.into_iter().collect();
        if v.is_empty() {
            return Err(PatternError::EmptySet);
        }
        v.sort();
        v.dedup();
        Ok(PatternSet(v))
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sorted one-line notations, as used in JSON output.
    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|p| p.to_string()).collect()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(","))
    }
}

impl FromStr for PatternSet {
    type Err = PatternError;

    /// Comma-separated one-line notations, e.g. `"231,123"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                if t.len() > 9 {
                    return Err(PatternError::InvalidPermutation(t.to_string()));
                }
                t.parse::<Permutation>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PatternSet::new(parts)
    }
}

pub(crate) fn ascents(word: &[usize]) -> BTreeSet<usize> {
    word.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] < w[1])
        .map(|(i, _)| i + 1)
        .collect()
}

// Backtracking over increasing index tuples; `pinned_last` forces the final index.
fn search(
    host: &[usize],
    pattern: &[usize],
    chosen: &mut Vec<usize>,
    start: usize,
    pinned_last: Option<usize>,
    visit: &mut dyn FnMut() -> bool,
) -> bool {
    let pos = chosen.len();
    if pos == pattern.len() {
        return visit();
    }
    let remaining = pattern.len() - pos;
    let range = match pinned_last {
        Some(last) if remaining == 1 => last.max(start)..last + 1,
        Some(last) => start..(last + 2).saturating_sub(remaining),
        None => start..(host.len() + 1).saturating_sub(remaining),
    };
    for i in range {
        let value = host[i];
        let consistent = chosen
            .iter()
            .zip(pattern)
            .all(|(&c, &p)| (p < pattern[pos]) == (host[c] < value));
        if consistent {
            chosen.push(i);
            let stop = search(host, pattern, chosen, i + 1, pinned_last, visit);
            chosen.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

/// Whether some subsequence of `host` is order-isomorphic to `pattern`.
pub fn contains(host: &[usize], pattern: &[usize]) -> bool {
    if pattern.len() > host.len() {
        return false;
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    search(host, pattern, &mut chosen, 0, None, &mut || true)
}

fn contains_ending_at_last(host: &[usize], pattern: &[usize]) -> bool {
    if pattern.is_empty() || pattern.len() > host.len() {
        return false;
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    search(host, pattern, &mut chosen, 0, Some(host.len() - 1), &mut || true)
}

/// Number of index sets at which `pattern` occurs in `host`.
pub fn count_occurrences(host: &[usize], pattern: &[usize]) -> BigUint {
    if pattern.len() > host.len() {
        return BigUint::zero();
    }
    let mut count: u128 = 0;
    let mut chosen = Vec::with_capacity(pattern.len());
    search(host, pattern, &mut chosen, 0, None, &mut || {
        count += 1;
        false
    });
    BigUint::from(count)
}

pub fn avoids(host: &[usize], set: &PatternSet) -> bool {
    set.0.iter().all(|p| !contains(host, &p.0))
}

/// Size limits for the exhaustive engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for which `S_n` is filtered by brute force.
    pub brute_force_perm: usize,
    /// Largest `n` for which all parking functions are enumerated.
    pub naive_pf: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            brute_force_perm: 10,
            naive_pf: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Naive,
    PermSum,
    Both,
}

/// Avoiders of `set` in `S_n`, lexicographically ordered.
pub fn enumerate_avoiders(n: usize, set: &PatternSet) -> Result<Vec<Permutation>, PatternError> {
    enumerate_avoiders_with(n, set, &Caps::default())
}

pub fn enumerate_avoiders_with(
    n: usize,
    set: &PatternSet,
    caps: &Caps,
) -> Result<Vec<Permutation>, PatternError> {
    if n > caps.brute_force_perm {
        return Err(PatternError::CapExceeded {
            engine: "permutation filter",
            n,
            cap: caps.brute_force_perm,
            hint: "the perm-sum engine is unavailable at this size",
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    extend_avoiding(n, set, &mut prefix, &mut used, &mut out);
    Ok(out)
}

fn extend_avoiding(
    n: usize,
    set: &PatternSet,
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    if prefix.len() == n {
        out.push(Permutation(prefix.clone()));
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        prefix.push(v);
        if !set.0.iter().any(|p| contains_ending_at_last(prefix, &p.0)) {
            used[v] = true;
            extend_avoiding(n, set, prefix, used, out);
            used[v] = false;
        }
        prefix.pop();
    }
}

/// Number of Dyck paths whose north steps `perm` can label increasingly within runs.
///
/// North steps `i` and `i+1` may share a run only if `i` is an ascent, so a descent
/// forces at least one east step between them.
pub fn compatible_path_count(perm: &Permutation) -> BigUint {
    compatible_path_count_word(&perm.0)
}

pub(crate) fn compatible_path_count_word(word: &[usize]) -> BigUint {
    let n = word.len();
    if n == 0 {
        return BigUint::one();
    }
    // dp[e]: ways with i north steps and e east steps placed, the last step being north i.
    let mut dp = vec![BigUint::one()];
    for i in 1..n {
        let forced = usize::from(word[i - 1] > word[i]);
        let mut next = vec![BigUint::zero(); i + 1];
        let mut prefix = BigUint::zero();
        for (e_new, slot) in next.iter_mut().enumerate() {
            if e_new >= forced {
                let e_old = e_new - forced;
                if e_old < dp.len() {
                    prefix += &dp[e_old];
                }
                *slot = prefix.clone();
            }
        }
        dp = next;
    }
    dp.into_iter().sum()
}

/// `pf_n(set)` computed by the requested engine(s).
pub fn count_pf_avoiding(n: usize, set: &PatternSet, method: Method) -> Result<BigUint, PatternError> {
    count_pf_avoiding_with(n, set, method, &Caps::default())
}

pub fn count_pf_avoiding_with(
    n: usize,
    set: &PatternSet,
    method: Method,
    caps: &Caps,
) -> Result<BigUint, PatternError> {
    if n == 0 {
        return Err(PatternError::ZeroSize);
    }
    match method {
        Method::Naive => count_naive(n, set, caps),
        Method::PermSum => count_perm_sum(n, set, caps),
        Method::Both => {
            let naive = count_naive(n, set, caps)?;
            let perm_sum = count_perm_sum(n, set, caps)?;
            if naive != perm_sum {
                return Err(PatternError::EngineDisagreement { n, naive, perm_sum });
            }
            Ok(naive)
        }
    }
}

fn count_naive(n: usize, set: &PatternSet, caps: &Caps) -> Result<BigUint, PatternError> {
    if n > caps.naive_pf {
        return Err(PatternError::CapExceeded {
            engine: "naive enumeration",
            n,
            cap: caps.naive_pf,
            hint: "use the perm-sum engine",
        });
    }
    let paths: Vec<_> = DyckPaths::new(n).collect();
    let total: u64 = paths
        .par_iter()
        .map(|path| {
            parking_functions_on_path(path)
                .iter()
                .filter(|pf| avoids(&pf.reading_word(), set))
                .count() as u64
        })
        .sum();
    Ok(BigUint::from(total))
}

fn count_perm_sum(n: usize, set: &PatternSet, caps: &Caps) -> Result<BigUint, PatternError> {
    let avoiders = enumerate_avoiders_with(n, set, caps)?;
    Ok(avoiders
        .par_iter()
        .map(compatible_path_count)
        .reduce(BigUint::zero, |a, b| a + b))
}

/// Raises the digits before `1` by `n-k` and lowers those after it by `k-1`,
/// where `k` is the position of `1`. Ascent positions are unchanged.
pub fn ascent_preserving_shift(perm: &Permutation) -> Result<Permutation, PatternError> {
    let eligible: PatternSet = "123,231,312".parse().expect("literal pattern set");
    if !perm.avoids(&eligible) {
        return Err(PatternError::NotEligible(perm.clone()));
    }
    let n = perm.len();
    let k = perm.0.iter().position(|&v| v == 1).map_or(0, |i| i + 1);
    let shifted = perm
        .0
        .iter()
        .enumerate()
        .map(|(i, &v)| match (i + 1).cmp(&k) {
            std::cmp::Ordering::Less => v + (n - k),
            std::cmp::Ordering::Equal => v,
            std::cmp::Ordering::Greater => v - (k - 1),
        })
        .collect();
    Ok(Permutation(shifted))
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation(current.clone()));
        let Some(i) = (0..current.len().saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..current.len())
            .rev()
            .find(|&j| current[j] > current[i])
            .expect("a larger suffix element exists");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}
