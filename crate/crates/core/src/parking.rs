//! Parking functions in block notation.
//!
//! Block `i` (1-based) holds the labels of the north steps on the vertical line
//! `x = i - 1`, equivalently the cars whose preferred spot is `i`. Text form is
//! `{1,2}|{}|{3}`; the JSON form is a list of lists of integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::dyck::{DyckPath, DyckPaths};
use crate::patterns::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParkingError {
    #[error("prefix condition fails at i={i}: fewer than {i} labels in the first {i} blocks")]
    PrefixViolated { i: usize },
    #[error("label {label} at reading position {position} is out of range or repeated")]
    LabelInvalid { position: usize, label: usize },
    #[error("expected {expected} blocks, found {found}")]
    BlockCount { expected: usize, found: usize },
    #[error("parking functions of size 0 are not supported")]
    Empty,
    #[error("word has length {word}, path has semilength {path}")]
    LengthMismatch { word: usize, path: usize },
    #[error("run {run} is not increasing")]
    RunNotIncreasing { run: usize },
    #[error("preference {value} of car {car} is outside 1..={n}")]
    PreferenceOutOfRange { car: usize, value: usize, n: usize },
    #[error("cannot parse parking function: {0}")]
    Parse(String),
}

/// A parking function of size `n >= 1`; every block is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParkingFunction {
    blocks: Vec<Vec<usize>>,
}

impl ParkingFunction {
    /// Checks the prefix condition, then the label set, then the block count.
    pub fn validate(mut blocks: Vec<Vec<usize>>) -> Result<Self, ParkingError> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(ParkingError::Empty);
        }
        let mut running = 0usize;
        for (idx, block) in blocks.iter().enumerate() {
            running += block.len();
            if running < idx + 1 {
                return Err(ParkingError::PrefixViolated { i: idx + 1 });
            }
        }
        let mut seen = vec![false; n + 1];
        let mut position = 0usize;
        for block in &mut blocks {
            block.sort_unstable();
            for &label in block.iter() {
                position += 1;
                if label == 0 || label > n || seen[label] {
                    return Err(ParkingError::LabelInvalid { position, label });
                }
                seen[label] = true;
            }
        }
        if blocks.len() != n {
            return Err(ParkingError::BlockCount {
                expected: n,
                found: blocks.len(),
            });
        }
        Ok(ParkingFunction { blocks })
    }

    // Callers guarantee sorted blocks forming a valid parking function.
    pub(crate) fn from_blocks_unchecked(blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(ParkingFunction::validate(blocks.clone()).is_ok());
        ParkingFunction { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn to_dyck(&self) -> DyckPath {
        let cols: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        DyckPath::from_column_heights(&cols).expect("prefix condition guarantees a Dyck path")
    }

    /// Blocks concatenated in order, each read increasingly.
    pub fn reading_permutation(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.blocks.iter().flatten().copied().collect())
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// Labels the north steps of `path` with `word`, in order.
    pub fn from_path_and_word(path: &DyckPath, word: &Permutation) -> Result<Self, ParkingError> {
        let n = path.semilength();
        if word.len() != n {
            return Err(ParkingError::LengthMismatch {
                word: word.len(),
                path: n,
            });
        }
        if n == 0 {
            return Err(ParkingError::Empty);
        }
        let labels = word.entries();
        let mut blocks = Vec::with_capacity(n);
        let mut next = 0usize;
        let mut run = 0usize;
        for &height in &path.column_heights() {
            let block = labels[next..next + height].to_vec();
            if height > 0 {
                run += 1;
                if block.windows(2).any(|w| w[0] > w[1]) {
                    return Err(ParkingError::RunNotIncreasing { run });
                }
            }
            next += height;
            blocks.push(block);
        }
        Ok(ParkingFunction { blocks })
    }

    /// `prefs[l - 1]` is the (1-based) block holding label `l`.
    pub fn to_preferences(&self) -> Vec<usize> {
        let mut prefs = vec![0usize; self.size()];
        for (i, block) in self.blocks.iter().enumerate() {
            for &label in block {
                prefs[label - 1] = i + 1;
            }
        }
        prefs
    }

    pub fn from_preferences(prefs: &[usize]) -> Result<Self, ParkingError> {
        let n = prefs.len();
        if n == 0 {
            return Err(ParkingError::Empty);
        }
        let mut blocks = vec![Vec::new(); n];
        for (car, &value) in prefs.iter().enumerate() {
            if value == 0 || value > n {
                return Err(ParkingError::PreferenceOutOfRange {
                    car: car + 1,
                    value,
                    n,
                });
            }
            blocks[value - 1].push(car + 1);
        }
        ParkingFunction::validate(blocks)
    }
}

impl fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str("{")?;
            for (j, label) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{label}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Parses block notation. `{}` and `∅` both denote an empty block.
pub fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>, ParkingError> {
    s.trim()
        .split('|')
        .map(|raw| {
            let raw = raw.trim();
            if raw == "∅" {
                return Ok(Vec::new());
            }
            let inner = raw
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| ParkingError::Parse(format!("block {raw:?} is not of the form {{..}}")))?;
            if inner.trim().is_empty() {
                return Ok(Vec::new());
            }
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| ParkingError::Parse(format!("bad label {t:?}")))
                })
                .collect()
        })
        .collect()
}

impl FromStr for ParkingFunction {
    type Err = ParkingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ParkingFunction::validate(parse_blocks(s)?)
    }
}

impl Serialize for ParkingFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.blocks.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParkingFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(deserializer)?;
        ParkingFunction::validate(blocks).map_err(serde::de::Error::custom)
    }
}

/// All parking functions on `path`, in lexicographic order of the reading word.
pub fn parking_functions_on_path(path: &DyckPath) -> Vec<ParkingFunction> {
    let cols = path.column_heights();
    let n = path.semilength();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fill_columns(&cols, &mut blocks, &mut used, &mut out);
    out
}

fn fill_columns(
    cols: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    used: &mut [bool],
    out: &mut Vec<ParkingFunction>,
) {
    let idx = blocks.len();
    if idx == cols.len() {
        out.push(ParkingFunction {
            blocks: blocks.clone(),
        });
        return;
    }
    let free: Vec<usize> = (1..used.len()).filter(|&l| !used[l]).collect();
    let mut choice = Vec::with_capacity(cols[idx]);
    combos(&free, cols[idx], 0, &mut choice, &mut |subset| {
        for &l in subset {
            used[l] = true;
        }
        blocks.push(subset.to_vec());
        fill_columns(cols, blocks, used, out);
        blocks.pop();
        for &l in subset {
            used[l] = false;
        }
    });
}

// k-subsets of `pool` in lexicographic order.
fn combos(
    pool: &[usize],
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if current.len() == k {
        visit(current);
        return;
    }
    let need = k - current.len();
    if pool.len() < start + need {
        return;
    }
    for i in start..=pool.len() - need {
        current.push(pool[i]);
        combos(pool, k, i + 1, current, visit);
        current.pop();
    }
}

/// Stream of all parking functions of size `n`: Dyck paths in lexicographic
/// order, and within a path the labelings in lexicographic order of the word.
pub struct ParkingFunctions {
    paths: DyckPaths,
    pending: std::vec::IntoIter<ParkingFunction>,
}

impl Iterator for ParkingFunctions {
    type Item = ParkingFunction;

    fn next(&mut self) -> Option<ParkingFunction> {
        loop {
            if let Some(pf) = self.pending.next() {
                return Some(pf);
            }
            let path = self.paths.next()?;
            self.pending = parking_functions_on_path(&path).into_iter();
        }
    }
}

/// Panics if `n == 0`.
pub fn enumerate_parking_functions(n: usize) -> ParkingFunctions {
    assert!(n >= 1, "parking functions of size 0 are not supported");
    ParkingFunctions {
        paths: DyckPaths::new(n),
        pending: Vec::new().into_iter(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::catalan;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn pf(s: &str) -> ParkingFunction {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    // Cars arrive in label order and take the first free spot at or after their preference.
    fn parks_everyone(prefs: &[usize]) -> bool {
        let n = prefs.len();
        let mut taken = vec![false; n + 1];
        for &p in prefs {
            match (p..=n).find(|&s| !taken[s]) {
                Some(s) => taken[s] = true,
                None => return false,
            }
        }
        true
    }

    #[test]
    fn validate_examples() {
        assert!(ParkingFunction::validate(vec![vec![1, 2], vec![]]).is_ok());
        assert_eq!(
            ParkingFunction::validate(vec![vec![1], vec![], vec![2]]),
            Err(ParkingError::PrefixViolated { i: 2 })
        );
        assert!(matches!(
            ParkingFunction::validate(vec![vec![1, 1], vec![]]),
            Err(ParkingError::LabelInvalid { .. })
        ));
        assert!(matches!(
            ParkingFunction::validate(vec![vec![1, 3], vec![]]),
            Err(ParkingError::LabelInvalid { position: 2, label: 3 })
        ));
        assert_eq!(
            ParkingFunction::validate(vec![vec![1, 2, 3], vec![], vec![], vec![]]),
            Err(ParkingError::PrefixViolated { i: 4 })
        );
        assert_eq!(
            ParkingFunction::validate(vec![vec![1, 2], vec![3]]),
            Err(ParkingError::BlockCount { expected: 3, found: 2 })
        );
        assert_eq!(ParkingFunction::validate(vec![]), Err(ParkingError::Empty));
    }

    #[test]
    fn text_round_trip() {
        let p = pf("{2,1}|{}");
        assert_eq!(p.to_string(), "{1,2}|{}");
        assert_eq!(pf("{1,2}|∅"), p);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[[1,2],[]]");
        assert_eq!(serde_json::from_str::<ParkingFunction>(&json).unwrap(), p);
        assert!("{1,x}".parse::<ParkingFunction>().is_err());
    }

    #[test]
    fn to_dyck_examples() {
        assert_eq!(pf("{1,2}|{}").to_dyck().to_string(), "NNEE");
        assert_eq!(pf("{2}|{1}").to_dyck().to_string(), "NENE");
        assert_eq!(pf("{1}|{2}").to_dyck().to_string(), "NENE");
    }

    #[test]
    fn reading_permutation_examples() {
        assert_eq!(pf("{1,2}|{}").reading_permutation().to_string(), "12");
        assert_eq!(pf("{2}|{1}").reading_permutation().to_string(), "21");
        assert_eq!(
            pf("{1,2}|{4}|{3,5,7}|{}|{6}|{}|{}")
                .reading_permutation()
                .to_string(),
            "1243576"
        );
    }

    #[test]
    fn from_path_and_word_examples() {
        let nnee: DyckPath = "NNEE".parse().unwrap();
        let nene: DyckPath = "NENE".parse().unwrap();
        assert_eq!(
            ParkingFunction::from_path_and_word(&nnee, &perm("12")).unwrap(),
            pf("{1,2}|{}")
        );
        assert_eq!(
            ParkingFunction::from_path_and_word(&nnee, &perm("21")),
            Err(ParkingError::RunNotIncreasing { run: 1 })
        );
        assert_eq!(
            ParkingFunction::from_path_and_word(&nene, &perm("21")).unwrap(),
            pf("{2}|{1}")
        );
        assert!(matches!(
            ParkingFunction::from_path_and_word(&nene, &perm("123")),
            Err(ParkingError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn preferences_examples() {
        assert_eq!(pf("{1,2}|{}").to_preferences(), vec![1, 1]);
        assert_eq!(pf("{2}|{1}").to_preferences(), vec![2, 1]);
        assert!(parks_everyone(&[2, 1]));
        assert_eq!(
            ParkingFunction::from_preferences(&[2, 2]),
            Err(ParkingError::PrefixViolated { i: 1 })
        );
        assert!(!parks_everyone(&[2, 2]));
        assert!(matches!(
            ParkingFunction::from_preferences(&[3, 1]),
            Err(ParkingError::PreferenceOutOfRange { car: 1, value: 3, n: 2 })
        ));
    }

    #[test]
    fn enumeration_small() {
        let two: Vec<String> = enumerate_parking_functions(2).map(|p| p.to_string()).collect();
        assert_eq!(two, vec!["{1,2}|{}", "{1}|{2}", "{2}|{1}"]);
        let one: Vec<String> = enumerate_parking_functions(1).map(|p| p.to_string()).collect();
        assert_eq!(one, vec!["{1}"]);
        assert_eq!(enumerate_parking_functions(3).count(), 16);
    }

    #[test]
    fn enumeration_counts_and_round_trips() {
        for n in 1..=7usize {
            let all: Vec<ParkingFunction> = enumerate_parking_functions(n).collect();
            assert_eq!(all.len(), (n + 1).pow(n as u32 - 1), "n={n}");
            if n <= 6 {
                let mut sorted = all.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len());
                let mut identity_count = 0usize;
                for p in &all {
                    assert!(ParkingFunction::validate(p.blocks.clone()).is_ok());
                    let word = p.reading_permutation();
                    let back = ParkingFunction::from_path_and_word(&p.to_dyck(), &word).unwrap();
                    assert_eq!(&back, p);
                    let prefs = p.to_preferences();
                    assert!(parks_everyone(&prefs));
                    assert_eq!(&ParkingFunction::from_preferences(&prefs).unwrap(), p);
                    if word.entries().windows(2).all(|w| w[0] < w[1]) {
                        identity_count += 1;
                    }
                }
                assert_eq!(BigUint::from(identity_count), catalan(n));
            }
        }
    }

    #[test]
    fn preference_validity_matches_parking_process() {
        for n in 1..=5usize {
            let total = n.pow(n as u32);
            for code in 0..total {
                let mut prefs = Vec::with_capacity(n);
                let mut c = code;
                for _ in 0..n {
                    prefs.push(c % n + 1);
                    c /= n;
                }
                assert_eq!(
                    ParkingFunction::from_preferences(&prefs).is_ok(),
                    parks_everyone(&prefs),
                    "{prefs:?}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn preference_round_trip(prefs in (1usize..=7).prop_flat_map(|n| proptest::collection::vec(1..=n, n))) {
            match ParkingFunction::from_preferences(&prefs) {
                Ok(p) => {
                    prop_assert!(parks_everyone(&prefs));
                    prop_assert_eq!(p.to_preferences(), prefs);
                }
                Err(_) => prop_assert!(!parks_everyone(&prefs)),
            }
        }
    }
}
