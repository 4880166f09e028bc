//! Integer sequence records, OEIS b-file I/O, comparison reports and the
//! conjecture harness.
//!
//! Embedded data is compiled in from `data/sequences.txt`. A b-file named
//! `bNNNNNN.txt` in the directory given by `PFAVOID_BFILE_DIR` (or passed
//! explicitly) replaces the embedded record for that id.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use thiserror::Error;

use crate::dyck::{count_d, count_h};
use crate::formulas::recurrence_b;
use crate::patterns::{count_pf_avoiding, Method, PatternSet};

pub const BFILE_DIR_ENV: &str = "PFAVOID_BFILE_DIR";

const EMBEDDED: &str = include_str!("../data/sequences.txt");

/// Longest accepted value field, in characters.
const MAX_DIGITS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("line {line}: {message}")]
    BFile { line: usize, message: String },
    #[error("unknown sequence id {0}")]
    UnknownId(String),
    #[error("unknown conjecture {0}")]
    UnknownConjecture(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("engine failure: {0}")]
    Engine(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Embedded,
    Bfile,
    Computed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    pub id: String,
    pub offset: i64,
    #[serde(serialize_with = "decimal_strings")]
    pub values: Vec<BigInt>,
    pub source: Source,
}

fn decimal_strings<S: serde::Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

impl SequenceRecord {
    pub fn computed(id: impl Into<String>, offset: i64, values: &[BigUint]) -> Self {
        SequenceRecord {
            id: id.into(),
            offset,
            values: values.iter().map(|v| BigInt::from(v.clone())).collect(),
            source: Source::Computed,
        }
    }

    pub fn get(&self, index: i64) -> Option<&BigInt> {
        let i = index.checked_sub(self.offset)?;
        usize::try_from(i).ok().and_then(|i| self.values.get(i))
    }

    /// Last index covered.
    pub fn last_index(&self) -> i64 {
        self.offset + self.values.len() as i64 - 1
    }
}

fn parse_embedded() -> BTreeMap<String, SequenceRecord> {
    let mut map = BTreeMap::new();
    for line in EMBEDDED.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(id), Some(offset), Some(values), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            panic!("malformed embedded record {line:?}");
        };
        let record = SequenceRecord {
            id: id.to_string(),
            offset: offset.parse().expect("embedded offset"),
            values: values
                .split(',')
                .map(|v| v.parse().expect("embedded value"))
                .collect(),
            source: Source::Embedded,
        };
        map.insert(id.to_string(), record);
    }
    map
}

/// The compiled-in records, by id.
pub fn builtin_registry() -> &'static BTreeMap<String, SequenceRecord> {
    static REG: OnceLock<BTreeMap<String, SequenceRecord>> = OnceLock::new();
    REG.get_or_init(parse_embedded)
}

/// Parses the b-file format: `index value` lines, `#` comments, LF or CRLF.
pub fn parse_bfile(id: &str, text: &str) -> Result<SequenceRecord, OeisError> {
    let mut offset = None;
    let mut last: Option<i64> = None;
    let mut values = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw).trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| OeisError::BFile {
            line: line_no,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected \"index value\", got {line:?}")));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| err(format!("bad index {index:?}")))?;
        if value.len() > MAX_DIGITS {
            return Err(err(format!("value has more than {MAX_DIGITS} characters")));
        }
        let value: BigInt = value
            .parse()
            .map_err(|_| err(format!("bad value {value:?}")))?;
        if let Some(prev) = last {
            if index != prev + 1 {
                let message = if index <= prev {
                    format!("index {index} does not increase after {prev}")
                } else {
                    format!("gap between indices {prev} and {index}")
                };
                return Err(err(message));
            }
        }
        offset.get_or_insert(index);
        last = Some(index);
        values.push(value);
    }
    let offset = offset.ok_or(OeisError::BFile {
        line: 0,
        message: "no data lines".into(),
    })?;
    Ok(SequenceRecord {
        id: id.to_string(),
        offset,
        values,
        source: Source::Bfile,
    })
}

pub fn format_bfile(record: &SequenceRecord) -> String {
    let mut out = String::new();
    for (i, v) in record.values.iter().enumerate() {
        let _ = writeln!(out, "{} {}", record.offset + i as i64, v);
    }
    out
}

pub fn bfile_name(id: &str) -> String {
    format!("b{}.txt", id.trim_start_matches('A'))
}

/// The b-file directory: the explicit argument, else the environment variable.
pub fn bfile_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(BFILE_DIR_ENV).map(PathBuf::from))
}

/// The b-file record for `id` if one is present, otherwise the embedded record.
pub fn load_record(id: &str, dir: Option<&Path>) -> Result<SequenceRecord, OeisError> {
    if let Some(dir) = bfile_dir(dir) {
        let path = dir.join(bfile_name(id));
        if path.is_file() {
            let text = std::fs::read_to_string(&path).map_err(|e| OeisError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            return parse_bfile(id, &text);
        }
    }
    builtin_registry()
        .get(id)
        .cloned()
        .ok_or_else(|| OeisError::UnknownId(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum Verdict {
    FullMatch,
    MismatchAt(i64),
    InsufficientData,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexComparison {
    pub index: i64,
    #[serde(serialize_with = "decimal")]
    pub left: BigInt,
    #[serde(serialize_with = "decimal")]
    pub right: BigInt,
    pub matches: bool,
}

fn decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub left: String,
    pub right: String,
    /// Inclusive index range of the overlap, if any.
    pub range: Option<(i64, i64)>,
    pub entries: Vec<IndexComparison>,
    pub verdict: Verdict,
}

impl ComparisonReport {
    pub fn is_full_match(&self) -> bool {
        self.verdict == Verdict::FullMatch
    }
}

/// Compares two records on their common index range.
pub fn compare_records(left: &SequenceRecord, right: &SequenceRecord) -> ComparisonReport {
    let lo = left.offset.max(right.offset);
    let hi = left.last_index().min(right.last_index());
    let mut entries = Vec::new();
    if lo <= hi && !left.values.is_empty() && !right.values.is_empty() {
        for index in lo..=hi {
            let l = left.get(index).expect("in range").clone();
            let r = right.get(index).expect("in range").clone();
            entries.push(IndexComparison {
                index,
                matches: l == r,
                left: l,
                right: r,
            });
        }
    }
    let verdict = if entries.is_empty() {
        Verdict::InsufficientData
    } else {
        entries
            .iter()
            .find(|e| !e.matches)
            .map_or(Verdict::FullMatch, |e| Verdict::MismatchAt(e.index))
    };
    ComparisonReport {
        left: left.id.clone(),
        right: right.id.clone(),
        range: entries
            .first()
            .zip(entries.last())
            .map(|(a, b)| (a.index, b.index)),
        entries,
        verdict,
    }
}

/// Compares `computed[i]`, taken to sit at index `start_n + i`, with `record`.
pub fn compare(computed: &[BigUint], start_n: i64, record: &SequenceRecord) -> ComparisonReport {
    compare_records(&SequenceRecord::computed("computed", start_n, computed), record)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedReport {
    pub name: String,
    pub description: String,
    pub report: ComparisonReport,
}

/// Depth limits for the conjecture harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureConfig {
    pub b_max_n: usize,
    pub triangle_rows: usize,
    pub naive_max_n: usize,
    pub permsum_max_n: usize,
    pub bfile_dir: Option<PathBuf>,
}

impl Default for ConjectureConfig {
    fn default() -> Self {
        ConjectureConfig {
            b_max_n: 12,
            triangle_rows: 9,
            naive_max_n: 6,
            permsum_max_n: 8,
            bfile_dir: None,
        }
    }
}

pub const CONJECTURES: &[&str] = &[
    "b-A000958",
    "b2-A000958",
    "h-A028364",
    "d-A033184",
    "pf132-naive-A243688",
    "pf132-permsum-A243688",
    "pf231-naive-A243688",
    "pf231-permsum-A243688",
    "b-pf123132",
];

/// Runs one named check; `max_n` overrides the relevant depth limit.
pub fn run_conjecture(
    name: &str,
    max_n: Option<usize>,
    config: &ConjectureConfig,
) -> Result<NamedReport, OeisError> {
    let dir = config.bfile_dir.as_deref();
    let b_row_sum = |n: usize| -> BigUint {
        (2..=n as i64 + 1).map(|k| recurrence_b(n as i64, k)).sum()
    };
    let engine = |n: usize, set: &str, method: Method| -> Result<Vec<BigUint>, OeisError> {
        let set: PatternSet = set.parse().expect("literal pattern set");
        (1..=n)
            .map(|m| count_pf_avoiding(m, &set, method).map_err(|e| OeisError::Engine(e.to_string())))
            .collect()
    };
    let (description, report) = match name {
        "b-A000958" => {
            let n = max_n.unwrap_or(config.b_max_n);
            let values: Vec<BigUint> = (1..=n).map(b_row_sum).collect();
            (
                format!("row sums of b(n,k), n=1..{n}, against A000958(n+1)"),
                compare(&values, 2, &load_record("A000958", dir)?),
            )
        }
        "b2-A000958" => {
            let n = max_n.unwrap_or(config.b_max_n);
            let values: Vec<BigUint> = (1..=n as i64).map(|m| recurrence_b(m + 2, 2)).collect();
            (
                format!("b(n+2,2), n=1..{n}, against A000958(n+1)"),
                compare(&values, 2, &load_record("A000958", dir)?),
            )
        }
        "h-A028364" => {
            let rows = max_n.unwrap_or(config.triangle_rows);
            let values: Vec<BigUint> = (1..=rows)
                .flat_map(|n| (1..=n).map(move |m| count_h(n, m as i64)))
                .collect();
            (
                format!("h(n,m) read by rows n=1..{rows}, m=1..n, against A028364"),
                compare(&values, 0, &load_record("A028364", dir)?),
            )
        }
        "d-A033184" => {
            let rows = max_n.unwrap_or(config.triangle_rows);
            let values: Vec<BigUint> = (1..=rows)
                .flat_map(|n| (0..n).map(move |k| count_d(n, k)))
                .collect();
            (
                format!("d(n,k) read by rows n=1..{rows}, k=0..n-1, against A033184"),
                compare(&values, 1, &load_record("A033184", dir)?),
            )
        }
        "pf132-naive-A243688" | "pf231-naive-A243688" => {
            let pattern = &name[2..5];
            let n = max_n.unwrap_or(config.naive_max_n);
            (
                format!("pf_n({pattern}) by exhaustive enumeration, n=1..{n}, against A243688"),
                compare(&engine(n, pattern, Method::Naive)?, 1, &load_record("A243688", dir)?),
            )
        }
        "pf132-permsum-A243688" | "pf231-permsum-A243688" => {
            let pattern = &name[2..5];
            let n = max_n.unwrap_or(config.permsum_max_n);
            (
                format!("pf_n({pattern}) by the permutation sum, n=1..{n}, against A243688"),
                compare(&engine(n, pattern, Method::PermSum)?, 1, &load_record("A243688", dir)?),
            )
        }
        "b-pf123132" => {
            let n = max_n.unwrap_or(config.naive_max_n);
            let sums: Vec<BigUint> = (1..=n).map(b_row_sum).collect();
            let brute = engine(n, "123,132", Method::Naive)?;
            (
                format!("row sums of b(n,k) against exhaustive pf_n(123,132), n=1..{n}"),
                compare_records(
                    &SequenceRecord::computed("b row sums", 1, &sums),
                    &SequenceRecord::computed("pf(123,132)", 1, &brute),
                ),
            )
        }
        other => return Err(OeisError::UnknownConjecture(other.to_string())),
    };
    Ok(NamedReport {
        name: name.to_string(),
        description,
        report,
    })
}

/// Every check in [`CONJECTURES`] at the configured depth. Reports only; nothing asserts.
pub fn conjecture_checks(config: &ConjectureConfig) -> Result<Vec<NamedReport>, OeisError> {
    CONJECTURES
        .iter()
        .map(|name| run_conjecture(name, None, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn record(id: &str) -> SequenceRecord {
        builtin_registry()[id].clone()
    }

    #[test]
    fn registry_contents() {
        let reg = builtin_registry();
        for id in [
            "A122553", "A065475", "A071716", "A000782", "A005408", "A000217", "A002061",
            "A143363", "A014138", "A000245", "A077587", "A001700", "A076540", "A001002",
            "A105163", "A064999", "A000958", "A002212", "A001003", "A001764", "A243688",
        ] {
            assert!(reg.contains_key(id), "{id}");
        }
        let start = |id: &str| -> Vec<String> {
            reg[id].values[..6].iter().map(|v| v.to_string()).collect()
        };
        assert_eq!(start("A001003"), ["1", "3", "11", "45", "197", "903"]);
        assert_eq!(start("A001764"), ["1", "3", "12", "55", "273", "1428"]);
        assert_eq!(start("A005408"), ["1", "3", "5", "7", "9", "11"]);
    }

    #[test]
    fn parse_examples() {
        let r = parse_bfile("x", "1 1\n2 3\n3 11").unwrap();
        assert_eq!(r.offset, 1);
        assert_eq!(r.values, vec![BigInt::from(1), BigInt::from(3), BigInt::from(11)]);
        assert_eq!(parse_bfile("x", "# comment\n0 1\n1 1").unwrap().offset, 0);
        assert!(matches!(
            parse_bfile("x", "1 1\n1 2"),
            Err(OeisError::BFile { line: 2, .. })
        ));
        assert!(matches!(
            parse_bfile("x", "1 1\r\n2 x\r\n"),
            Err(OeisError::BFile { line: 2, .. })
        ));
        assert_eq!(parse_bfile("x", "5 -7\r\n6 8\r\n").unwrap().values[0], BigInt::from(-7));
        let long = format!("1 {}", "9".repeat(MAX_DIGITS + 1));
        assert!(matches!(parse_bfile("x", &long), Err(OeisError::BFile { line: 1, .. })));
        assert!(parse_bfile("x", "# only comments\n").is_err());
        assert!(parse_bfile("x", "1 2 3").is_err());
    }

    #[test]
    fn compare_examples() {
        let pf: Vec<BigUint> = ints(&[1, 3, 11, 45, 197, 903]);
        assert_eq!(compare(&pf, 1, &record("A001003")).verdict, Verdict::FullMatch);
        let short = SequenceRecord::computed("A001764", 1, &ints(&[1, 3, 12, 55]));
        assert_eq!(compare(&ints(&[1, 3, 12]), 1, &short).verdict, Verdict::FullMatch);
        assert_eq!(compare(&ints(&[1, 3, 13]), 1, &short).verdict, Verdict::MismatchAt(3));
        assert_eq!(
            compare(&ints(&[1, 3]), 10, &short).verdict,
            Verdict::InsufficientData
        );
        let report = compare(&ints(&[1, 3, 12]), 1, &short);
        assert_eq!(report.range, Some((1, 3)));
        assert_eq!(report.entries.len(), 3);
    }

    #[test]
    fn report_json_shape() {
        let short = SequenceRecord::computed("s", 1, &ints(&[1, 3]));
        let json = serde_json::to_value(compare(&ints(&[1, 4]), 1, &short)).unwrap();
        assert_eq!(json["verdict"]["kind"], "mismatch_at");
        assert_eq!(json["verdict"]["index"], 2);
        assert_eq!(json["entries"][1]["left"], "4");
    }

    #[test]
    fn bfile_directory_overrides_embedded() {
        let dir = std::env::temp_dir().join(format!("pfavoid-bfile-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("b001003.txt"), "# test\n0 1\n1 1\n2 3\n3 11\n").unwrap();
        let r = load_record("A001003", Some(&dir)).unwrap();
        assert_eq!(r.source, Source::Bfile);
        assert_eq!(r.offset, 0);
        let embedded = load_record("A001764", Some(&dir)).unwrap();
        assert_eq!(embedded.source, Source::Embedded);
        assert!(matches!(load_record("A999999", Some(&dir)), Err(OeisError::UnknownId(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn harness_small() {
        let config = ConjectureConfig::default();
        let r = run_conjecture("b-pf123132", Some(6), &config).unwrap();
        assert!(r.report.is_full_match());
        let values: Vec<String> = r.report.entries.iter().map(|e| e.left.to_string()).collect();
        assert_eq!(values, ["1", "3", "8", "24", "75", "243"]);
        for name in ["pf132-naive-A243688", "pf231-naive-A243688"] {
            let r = run_conjecture(name, Some(6), &config).unwrap();
            assert!(r.report.is_full_match(), "{name}");
            let values: Vec<String> = r.report.entries.iter().map(|e| e.left.to_string()).collect();
            assert_eq!(values, ["1", "3", "13", "69", "417", "2759"]);
        }
        assert!(run_conjecture("d-A033184", Some(6), &config).unwrap().report.is_full_match());
        assert!(matches!(
            run_conjecture("nope", None, &config),
            Err(OeisError::UnknownConjecture(_))
        ));
    }

    fn arb_record() -> impl Strategy<Value = SequenceRecord> {
        (-5i64..50, proptest::collection::vec(any::<i128>(), 1..30)).prop_map(|(offset, v)| {
            SequenceRecord {
                id: "r".into(),
                offset,
                values: v.into_iter().map(BigInt::from).collect(),
                source: Source::Bfile,
            }
        })
    }

    proptest! {
        #[test]
        fn bfile_round_trip(r in arb_record()) {
            prop_assert_eq!(parse_bfile("r", &format_bfile(&r)).unwrap(), r);
        }

        #[test]
        fn compare_is_symmetric(a in arb_record(), b in arb_record()) {
            let ab = compare_records(&a, &b);
            let ba = compare_records(&b, &a);
            prop_assert_eq!(&ab.verdict, &ba.verdict);
            prop_assert_eq!(ab.range, ba.range);
            prop_assert_eq!(ab.entries.len(), ba.entries.len());
            for (x, y) in ab.entries.iter().zip(&ba.entries) {
                prop_assert_eq!(x.index, y.index);
                prop_assert_eq!(&x.left, &y.right);
                prop_assert_eq!(x.matches, y.matches);
            }
        }
    }
}
