//! Command-line surface: counts, tables, enumeration, bijection checks,
//! conjecture reports and OEIS comparisons.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bijections::{
    catalan_triangle_step, enumerate_leafy_trees, enumerate_noncrossing_trees, fill_312_321,
    leafy_tree_to_pf, noncrossing_tree_to_pf, BijectionError,
};
use crate::dyck::DyckPaths;
use crate::formulas::closed_form;
use crate::oeis::{
    self, compare, conjecture_checks, load_record, run_conjecture, ComparisonReport,
    ConjectureConfig, NamedReport, OeisError, Verdict,
};
use crate::parking::{enumerate_parking_functions, ParkingFunction};
use crate::patterns::{count_pf_avoiding_with, Caps, Method, PatternError, PatternSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_INSUFFICIENT: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Oeis(#[from] OeisError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(name = "pfavoid", version, about = "Pattern-avoiding parking functions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Directory holding OEIS b-files named bNNNNNN.txt (default: $PFAVOID_BFILE_DIR).
    #[arg(long, global = true)]
    pub bfile_dir: Option<PathBuf>,
    /// Worker threads for the counting engines (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count parking functions avoiding a pattern set.
    Count {
        /// Comma-separated patterns in one-line notation, e.g. 231,321.
        #[arg(long)]
        patterns: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CliMethod::All)]
        method: CliMethod,
    },
    /// Reproduce the enumeration table for pattern sets of one size.
    Table {
        /// Number of patterns per set, 1 to 5.
        #[arg(long)]
        set_size: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = CliMethod::All)]
        method: CliMethod,
    },
    /// List parking functions in block notation.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Only list those avoiding these patterns.
        #[arg(long)]
        patterns: Option<String>,
    },
    /// Run a bijection over its whole domain.
    Bijection {
        #[arg(long, value_enum)]
        name: BijectionName,
        #[arg(long)]
        n: usize,
        /// Check validity, injectivity and the image against brute force.
        #[arg(long)]
        verify: bool,
    },
    /// Compare computed data with an OEIS entry for an open conjecture.
    Conjecture {
        /// One of the known check names, or "all".
        #[arg(long, default_value = "all")]
        name: String,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Compare an OEIS entry with the counts of its pattern set.
    Oeis {
        #[arg(long)]
        id: String,
        /// Largest n to compute (default: the record's range, capped by the engines).
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliMethod {
    Naive,
    Permsum,
    Formula,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BijectionName {
    Leafy,
    Noncrossing,
    #[value(name = "fill312321")]
    Fill312321,
    Trianglestep,
}

/// One count, possibly from several methods.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRow {
    pub pattern_set: Vec<String>,
    pub n: usize,
    pub value: String,
    pub methods: Vec<String>,
    /// Value per method, in the order of `methods`.
    pub values: Vec<String>,
    pub agrees: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oeis_id: Option<String>,
}

pub fn parse_patterns(text: &str) -> Result<PatternSet, CliError> {
    text.parse::<PatternSet>()
        .map_err(|e| CliError::Input(format!("bad pattern list {text:?}: {e}")))
}

/// Runs the requested method(s). `All` skips engines whose cap is exceeded and the
/// formula when none is registered, but needs at least one method.
pub fn cmd_count(
    set: &PatternSet,
    n: usize,
    method: CliMethod,
    caps: &Caps,
) -> Result<OutputRow, CliError> {
    if n == 0 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    let mut results: Vec<(&str, BigUint)> = Vec::new();
    let engine = |m: Method| count_pf_avoiding_with(n, set, m, caps);
    let formula = || closed_form(set, n);
    match method {
        CliMethod::Naive => results.push(("naive", engine(Method::Naive)?)),
        CliMethod::Permsum => results.push(("permsum", engine(Method::PermSum)?)),
        CliMethod::Formula => {
            let v = formula()
                .ok_or_else(|| CliError::Input(format!("no closed form registered for {set}")))?;
            results.push(("formula", v));
        }
        CliMethod::All => {
            if n <= caps.naive_pf {
                results.push(("naive", engine(Method::Naive)?));
            }
            if n <= caps.brute_force_perm {
                results.push(("permsum", engine(Method::PermSum)?));
            }
            if let Some(v) = formula() {
                results.push(("formula", v));
            }
            if results.is_empty() {
                return Err(CliError::Input(format!(
                    "n={n} exceeds every engine cap and {set} has no closed form"
                )));
            }
        }
    }
    let agrees = results.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(OutputRow {
        pattern_set: set.names(),
        n,
        value: results[0].1.to_string(),
        methods: results.iter().map(|(m, _)| m.to_string()).collect(),
        values: results.iter().map(|(_, v)| v.to_string()).collect(),
        agrees,
        oeis_id: table_group_of(set).and_then(|g| g.oeis_id).map(str::to_string),
    })
}

/// A row of a published table: pattern sets sharing one sequence.
#[derive(Debug, Clone, Copy)]
pub struct TableGroup {
    pub sets: &'static [&'static str],
    pub oeis_id: Option<&'static str>,
    /// OEIS index of `pf_n` minus `n`.
    pub shift: i64,
}

const fn group(sets: &'static [&'static str], oeis_id: Option<&'static str>, shift: i64) -> TableGroup {
    TableGroup { sets, oeis_id, shift }
}

const SIZE_1: &[TableGroup] = &[
    group(&["123"], None, 0),
    group(&["132", "231"], Some("A243688"), 0),
    group(&["213", "312"], None, 0),
    group(&["321"], None, 0),
];

const SIZE_2: &[TableGroup] = &[
    group(&["123,231"], Some("A105163"), 0),
    group(&["123,312"], Some("A064999"), 0),
    group(&["123,132"], Some("A000958"), 1),
    group(&["123,213"], Some("A000245"), 0),
    group(&["132,231"], Some("A002212"), 0),
    group(&["132,213", "132,312", "213,231", "231,312"], Some("A001003"), 0),
    group(&["132,321"], None, 0),
    group(&["213,321"], None, 0),
    group(&["213,312"], None, 0),
    group(&["231,321"], Some("A001764"), 0),
    group(&["312,321"], None, 0),
];

const SIZE_3: &[TableGroup] = &[
    group(&["123,132,231"], Some("A005408"), -1),
    group(&["123,132,312", "123,213,231", "123,231,312"], Some("A000217"), 0),
    group(&["123,213,312"], Some("A002061"), 0),
    group(&["123,132,213"], Some("A143363"), 1),
    group(&["132,213,231", "132,231,312"], Some("A014138"), -1),
    group(&["132,213,312", "213,231,312"], Some("A000245"), 0),
    group(&["132,231,321"], Some("A077587"), 0),
    group(&["132,213,321", "132,312,321", "213,231,321"], Some("A001700"), -1),
    group(&["213,312,321"], Some("A076540"), 0),
    group(&["231,312,321"], Some("A001002"), 0),
];

const SIZE_4: &[TableGroup] = &[
    group(&["123,132,213,231", "123,132,231,312"], Some("A122553"), 0),
    group(&["123,132,213,312", "123,213,231,312"], Some("A065475"), 0),
    group(&["132,213,231,312"], None, 0),
    group(&["132,213,231,321", "132,231,312,321"], Some("A071716"), 0),
    group(&["132,213,312,321", "213,231,312,321"], Some("A000782"), 0),
];

const SIZE_5: &[TableGroup] = &[
    group(&["123,132,213,231,312"], None, 0),
    group(&["132,213,231,312,321"], None, 0),
];

pub fn table_groups(set_size: usize) -> Option<&'static [TableGroup]> {
    match set_size {
        1 => Some(SIZE_1),
        2 => Some(SIZE_2),
        3 => Some(SIZE_3),
        4 => Some(SIZE_4),
        5 => Some(SIZE_5),
        _ => None,
    }
}

fn table_group_of(set: &PatternSet) -> Option<&'static TableGroup> {
    table_groups(set.len())?
        .iter()
        .find(|g| g.sets.iter().any(|s| s.parse::<PatternSet>().as_ref() == Ok(set)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub pattern_sets: Vec<Vec<String>>,
    pub values: Vec<String>,
    pub oeis_id: Option<String>,
    /// Every method and every set in the row gave the same sequence.
    pub agrees: bool,
    pub counts: Vec<OutputRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub set_size: usize,
    pub max_n: usize,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn agrees(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }
}

pub fn cmd_table(set_size: usize, max_n: usize, method: CliMethod, caps: &Caps) -> Result<Table, CliError> {
    let groups = table_groups(set_size)
        .ok_or_else(|| CliError::Input(format!("set size must be 1..=5, got {set_size}")))?;
    let mut rows = Vec::with_capacity(groups.len());
    for g in groups {
        let mut counts = Vec::new();
        let mut sequences = Vec::new();
        for text in g.sets {
            let set = parse_patterns(text)?;
            let seq: Vec<OutputRow> = (1..=max_n)
                .map(|n| cmd_count(&set, n, method, caps))
                .collect::<Result<_, _>>()?;
            sequences.push(seq.iter().map(|r| r.value.clone()).collect::<Vec<_>>());
            counts.extend(seq);
        }
        let agrees = counts.iter().all(|r| r.agrees) && sequences.windows(2).all(|w| w[0] == w[1]);
        rows.push(TableRow {
            pattern_sets: g
                .sets
                .iter()
                .map(|s| s.parse::<PatternSet>().expect("table sets are valid").names())
                .collect(),
            values: sequences.swap_remove(0),
            oeis_id: g.oeis_id.map(str::to_string),
            agrees,
            counts,
        });
    }
    Ok(Table { set_size, max_n, rows })
}

pub fn cmd_enumerate(
    n: usize,
    set: Option<&PatternSet>,
    caps: &Caps,
) -> Result<Vec<ParkingFunction>, CliError> {
    if n == 0 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    if n > caps.naive_pf {
        return Err(PatternError::CapExceeded {
            engine: "naive enumeration",
            n,
            cap: caps.naive_pf,
            hint: "use count with the perm-sum engine",
        }
        .into());
    }
    Ok(enumerate_parking_functions(n)
        .filter(|pf| set.is_none_or(|s| pf.reading_permutation().avoids(s)))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub name: BijectionName,
    pub n: usize,
    pub domain_size: usize,
    pub outputs: usize,
    /// Set by `--verify`: outputs are parking functions avoiding the target family.
    pub valid: Option<bool>,
    pub injective: Option<bool>,
    /// Image equals the brute-force avoider set (not defined for `trianglestep`).
    pub image_matches: Option<bool>,
    pub target: String,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        [self.valid, self.injective, self.image_matches]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

pub fn cmd_bijection(name: BijectionName, n: usize, verify: bool, caps: &Caps) -> Result<BijectionReport, CliError> {
    if n == 0 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    let target = match name {
        BijectionName::Leafy => "123,132,213",
        BijectionName::Noncrossing => "231,321",
        BijectionName::Fill312321 => "312,321",
        BijectionName::Trianglestep => "213,231,312",
    };
    let family = parse_patterns(target)?;
    let (domain_size, outputs): (usize, Vec<ParkingFunction>) = match name {
        BijectionName::Leafy => {
            let trees = enumerate_leafy_trees(n + 1);
            let out = trees.iter().map(leafy_tree_to_pf).collect::<Result<_, _>>()?;
            (trees.len(), out)
        }
        BijectionName::Noncrossing => {
            let trees = enumerate_noncrossing_trees(n);
            let out = trees.iter().map(noncrossing_tree_to_pf).collect::<Result<_, _>>()?;
            (trees.len(), out)
        }
        BijectionName::Fill312321 => {
            let paths: Vec<_> = DyckPaths::new(n).collect();
            (paths.len(), paths.iter().flat_map(fill_312_321).collect())
        }
        BijectionName::Trianglestep => {
            let sources: Vec<ParkingFunction> = cmd_enumerate(n, Some(&family), caps)?
                .into_iter()
                .filter(|pf| catalan_triangle_step(pf).is_ok())
                .collect();
            let out = sources.iter().map(catalan_triangle_step).collect::<Result<_, _>>()?;
            (sources.len(), out)
        }
    };
    let mut report = BijectionReport {
        name,
        n,
        domain_size,
        outputs: outputs.len(),
        valid: None,
        injective: None,
        image_matches: None,
        target: target.to_string(),
    };
    if verify {
        let image: BTreeSet<&ParkingFunction> = outputs.iter().collect();
        report.injective = Some(image.len() == outputs.len());
        report.valid = Some(
            outputs
                .iter()
                .all(|pf| pf.size() == n && pf.reading_permutation().avoids(&family)),
        );
        if name != BijectionName::Trianglestep {
            let brute = cmd_enumerate(n, Some(&family), caps)?;
            report.image_matches = Some(brute.iter().collect::<BTreeSet<_>>() == image);
        }
    }
    Ok(report)
}

pub fn cmd_conjecture(
    name: &str,
    max_n: Option<usize>,
    config: &ConjectureConfig,
) -> Result<Vec<NamedReport>, CliError> {
    if name == "all" {
        let reports = match max_n {
            None => conjecture_checks(config)?,
            Some(_) => oeis::CONJECTURES
                .iter()
                .map(|c| run_conjecture(c, max_n, config))
                .collect::<Result<_, _>>()?,
        };
        return Ok(reports);
    }
    Ok(vec![run_conjecture(name, max_n, config)?])
}

/// Compares the OEIS record `id` against the first pattern set of its table row.
pub fn cmd_oeis(
    id: &str,
    max_n: Option<usize>,
    bfile_dir: Option<&std::path::Path>,
    caps: &Caps,
) -> Result<ComparisonReport, CliError> {
    let group = (1..=5)
        .flat_map(|s| table_groups(s).expect("sizes 1..=5"))
        .find(|g| g.oeis_id == Some(id))
        .ok_or_else(|| CliError::Input(format!("{id} is not attached to any pattern set")))?;
    let record = load_record(id, bfile_dir)?;
    let set = parse_patterns(group.sets[0])?;
    let has_formula = closed_form(&set, 1).is_some();
    let record_last_n = record.last_index() - group.shift;
    let mut top = max_n.map_or(record_last_n.max(1), |m| m as i64);
    if !has_formula {
        top = top.min(caps.brute_force_perm as i64);
    }
    let values: Vec<BigUint> = (1..=top.max(0) as usize)
        .map(|n| match closed_form(&set, n) {
            Some(v) => Ok(v),
            None => count_pf_avoiding_with(n, &set, Method::PermSum, caps),
        })
        .collect::<Result<_, _>>()?;
    let mut report = compare(&values, 1 + group.shift, &record);
    report.left = format!("pf_n({set})");
    Ok(report)
}

pub fn verdict_exit(v: &Verdict) -> i32 {
    match v {
        Verdict::FullMatch => EXIT_OK,
        Verdict::MismatchAt(_) => EXIT_MISMATCH,
        Verdict::InsufficientData => EXIT_INSUFFICIENT,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "patterns,n,value,method,agrees";

pub fn csv_line(row: &OutputRow) -> String {
    format!(
        "{},{},{},{},{}",
        csv_field(&row.pattern_set.join(",")),
        row.n,
        row.value,
        csv_field(&row.methods.join("+")),
        row.agrees
    )
}

fn text_count(row: &OutputRow) -> String {
    let detail: Vec<String> = row
        .methods
        .iter()
        .zip(&row.values)
        .map(|(m, v)| format!("{m}={v}"))
        .collect();
    format!(
        "pf_{}({}) = {}  [{}; {}]",
        row.n,
        row.pattern_set.join(","),
        row.value,
        detail.join(" "),
        if row.agrees { "agree" } else { "DISAGREE" }
    )
}

fn text_report(r: &ComparisonReport) -> String {
    let verdict = match &r.verdict {
        Verdict::FullMatch => "full_match".to_string(),
        Verdict::MismatchAt(i) => format!("mismatch_at({i})"),
        Verdict::InsufficientData => "insufficient_data".to_string(),
    };
    let range = r
        .range
        .map_or("no overlap".to_string(), |(a, b)| format!("indices {a}..={b}"));
    let mut s = format!("{} vs {}: {verdict} over {range}", r.left, r.right);
    for e in r.entries.iter().filter(|e| !e.matches) {
        s.push_str(&format!("\n  index {}: {} != {}", e.index, e.left, e.right));
    }
    s
}

/// Parses nothing; runs an already-parsed command line and returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let caps = Caps::default();
    let fmt = cli.format;
    match &cli.command {
        Command::Count { patterns, n, method } => {
            let row = cmd_count(&parse_patterns(patterns)?, *n, *method, &caps)?;
            match fmt {
                Format::Text => writeln!(out, "{}", text_count(&row))?,
                Format::Csv => writeln!(out, "{CSV_HEADER}\n{}", csv_line(&row))?,
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&row)?)?,
            }
            Ok(if row.agrees { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Table { set_size, max_n, method } => {
            let table = cmd_table(*set_size, *max_n, *method, &caps)?;
            match fmt {
                Format::Text => {
                    for row in &table.rows {
                        let sets: Vec<String> = row.pattern_sets.iter().map(|s| s.join(",")).collect();
                        writeln!(
                            out,
                            "{:<40} {:<44} {}{}",
                            sets.join(" / "),
                            row.values.join(", "),
                            row.oeis_id.as_deref().unwrap_or("new"),
                            if row.agrees { "" } else { "  DISAGREE" }
                        )?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "{CSV_HEADER}")?;
                    for r in table.rows.iter().flat_map(|r| &r.counts) {
                        writeln!(out, "{}", csv_line(r))?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table)?)?,
            }
            Ok(if table.agrees() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Enumerate { n, patterns } => {
            let set = patterns.as_deref().map(parse_patterns).transpose()?;
            let pfs = cmd_enumerate(*n, set.as_ref(), &caps)?;
            match fmt {
                Format::Text => {
                    for pf in &pfs {
                        writeln!(out, "{pf}")?;
                    }
                    writeln!(out, "count: {}", pfs.len())?;
                }
                Format::Csv => {
                    writeln!(out, "parking_function")?;
                    for pf in &pfs {
                        writeln!(out, "{}", csv_field(&pf.to_string()))?;
                    }
                }
                Format::Json => {
                    let doc = serde_json::json!({
                        "n": n,
                        "pattern_set": set.map(|s| s.names()).unwrap_or_default(),
                        "parking_functions": pfs,
                        "count": pfs.len(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Bijection { name, n, verify } => {
            let report = cmd_bijection(*name, *n, *verify, &caps)?;
            match fmt {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                _ => {
                    let flag = |c: Option<bool>| c.map_or("-", |b| if b { "yes" } else { "NO" });
                    writeln!(
                        out,
                        "{:?} n={}: {} inputs, {} outputs; valid {} injective {} image matches {} (target {})",
                        report.name,
                        report.n,
                        report.domain_size,
                        report.outputs,
                        flag(report.valid),
                        flag(report.injective),
                        flag(report.image_matches),
                        report.target
                    )?;
                }
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Conjecture { name, max_n } => {
            let config = ConjectureConfig {
                bfile_dir: oeis::bfile_dir(cli.bfile_dir.as_deref()),
                ..ConjectureConfig::default()
            };
            let reports = cmd_conjecture(name, *max_n, &config)?;
            match fmt {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
                _ => {
                    for r in &reports {
                        writeln!(out, "{}: {}\n{}", r.name, r.description, text_report(&r.report))?;
                    }
                }
            }
            Ok(reports
                .iter()
                .map(|r| verdict_exit(&r.report.verdict))
                .max()
                .unwrap_or(EXIT_OK))
        }
        Command::Oeis { id, max_n } => {
            let report = cmd_oeis(id, *max_n, cli.bfile_dir.as_deref(), &caps)?;
            match fmt {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                _ => writeln!(out, "{}", text_report(&report))?,
            }
            Ok(verdict_exit(&report.verdict))
        }
    }
}

/// Sets the global rayon pool size; later calls are ignored.
pub fn configure_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
}

/// Entry point for the binary: parse, run, map errors to exit codes.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    configure_threads(cli.threads);
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
