use std::process::Command;

use pfavoid::cli::{OutputRow, Table};

fn pfavoid(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pfavoid"))
        .args(args)
        .env_remove("PFAVOID_BFILE_DIR")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn count_json_schema() {
    let (code, json) = pfavoid(&["count", "--patterns", "321,231", "--n", "6", "--format", "json"]);
    assert_eq!(code, 0);
    let row: OutputRow = serde_json::from_str(&json).unwrap();
    assert_eq!(row.pattern_set, ["231", "321"]);
    assert_eq!(row.value, "1428");
    assert_eq!(row.values, ["1428", "1428", "1428"]);
    assert!(row.agrees);
    let raw: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(raw["value"].is_string());
    assert_eq!(raw["oeis_id"], "A001764");
}

#[test]
fn table_json_round_trips() {
    let (code, json) = pfavoid(&["table", "--set-size", "4", "--max-n", "6", "--format", "json"]);
    assert_eq!(code, 0);
    let table: Table = serde_json::from_str(&json).unwrap();
    assert_eq!(table.rows.len(), 5);
    assert_eq!(table.rows[2].values, ["1", "3", "6", "15", "43", "133"]);
    let again: Table = serde_json::from_str(&serde_json::to_string(&table).unwrap()).unwrap();
    assert_eq!(again, table);
}

#[test]
fn formula_beyond_engine_caps() {
    let (code, text) = pfavoid(&["count", "--patterns", "231,321", "--n", "40", "--method", "formula"]);
    assert_eq!(code, 0);
    assert!(text.contains("formula="), "{text}");
    let (code, _) = pfavoid(&["count", "--patterns", "132", "--n", "40"]);
    assert_eq!(code, 2);
}

#[test]
fn threads_do_not_change_output() {
    let one = pfavoid(&["--threads", "1", "table", "--set-size", "2", "--max-n", "5", "--format", "csv"]);
    let many = pfavoid(&["--threads", "4", "table", "--set-size", "2", "--max-n", "5", "--format", "csv"]);
    assert_eq!(one, many);
    assert!(one.1.starts_with("patterns,n,value,method,agrees\n"));
}

#[test]
fn bfile_directory_flag() {
    let dir = std::env::temp_dir().join(format!("pfavoid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("b001764.txt"), "# test\n0 1\n1 1\n2 3\n3 12\n4 56\n").unwrap();
    let d = dir.to_str().unwrap();
    let (code, text) = pfavoid(&["oeis", "--id", "A001764", "--bfile-dir", d]);
    assert_eq!(code, 3, "{text}");
    assert!(text.contains("mismatch_at(4)"), "{text}");
    std::fs::write(dir.join("b001764.txt"), "0 1\r\n1 1\r\n2 3\r\n3 12\r\n4 55\r\n5 273\r\n6 1428\r\n7 7752\r\n").unwrap();
    let (code, text) = pfavoid(&["oeis", "--id", "A001764", "--bfile-dir", d]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("indices 1..=7"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}
