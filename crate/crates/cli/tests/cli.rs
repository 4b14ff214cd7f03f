use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn pdakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdakit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn header(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

fn construct_to(dir: &TempDir, name: &str, args: &[&str]) -> std::path::PathBuf {
    let out = dir.path().join(name);
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let o = pdakit(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

const TINY: &str = "2 2 1 1\n* 1\n1 *\n";

#[test]
fn construct_headers() {
    let dir = TempDir::new().unwrap();
    let pg = construct_to(&dir, "pg.txt", &["pg", "--q", "2", "--k", "3", "--m", "1", "--t", "1", "--set", "1"]);
    assert_eq!(header(&pg), "7 7 4 7");
    let fano = construct_to(&dir, "fano.txt", &["config", "--design", "fano", "--set", "1"]);
    assert_eq!(header(&fano), "7 7 4 7");
    let b = construct_to(&dir, "b.txt", &["tdesign-b", "--design", "complete:4:2", "--t1", "1", "--t2", "1"]);
    assert_eq!(header(&b), "4 4 1 6");
}

#[test]
fn construct_prints_row_and_json() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("p.json");
    let o = pdakit(&["construct", "pg", "--q", "2", "--k", "3", "--m", "1", "--t", "1", "--json", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("R/R*=5/3"), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["K"], 7);
}

#[test]
fn hypothesis_violation_exits_3() {
    let o = pdakit(&["construct", "pg", "--q", "2", "--k", "2", "--m", "2", "--t", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("requires m+t ≤ k"), "{}", stderr(&o));
    let o = pdakit(&["construct", "pg", "--q", "2", "--k", "2", "--m", "1", "--t", "1", "--set", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let pg = construct_to(&dir, "pg.txt", &["pg", "--q", "2", "--k", "3", "--m", "1", "--t", "1"]);
    assert_eq!(pdakit(&["validate", pg.to_str().unwrap()]).status.code(), Some(0));

    let text = fs::read_to_string(&pg).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let col = lines[1].split_whitespace().position(|t| t == "*").unwrap();
    let mut row: Vec<&str> = lines[1].split_whitespace().collect();
    row[col] = "1";
    lines[1] = row.join(" ");
    let bad = dir.path().join("c1.txt");
    fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let o = pdakit(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(&format!("C1 violated at column {}", col + 1)), "{}", stderr(&o));

    let c2 = dir.path().join("c2.txt");
    fs::write(&c2, "2 2 1 2\n* 1\n1 *\n").unwrap();
    let o = pdakit(&["validate", c2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("C2 violated"), "{}", stderr(&o));

    let junk = dir.path().join("junk.txt");
    fs::write(&junk, "2 2 1 1\n* x\n1 *\n").unwrap();
    assert_eq!(pdakit(&["validate", junk.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn simulate_reports() {
    let dir = TempDir::new().unwrap();
    let tiny = dir.path().join("tiny.txt");
    fs::write(&tiny, TINY).unwrap();
    let o = pdakit(&["simulate", tiny.to_str().unwrap(), "--files", "2", "--mode", "exhaustive"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rate"], "1/2");
    assert_eq!(v["demands_tested"], 4);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);

    let pg = construct_to(&dir, "pg.txt", &["pg", "--q", "2", "--k", "3", "--m", "1", "--t", "1"]);
    let o = pdakit(&["simulate", pg.to_str().unwrap(), "--files", "4", "--mode", "adversarial"]);
    assert!(o.status.success(), "{}", stderr(&o));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 2 1 1\n1 1\n* *\n").unwrap();
    assert_eq!(pdakit(&["simulate", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn product_headers_and_validates() {
    let dir = TempDir::new().unwrap();
    let tiny = dir.path().join("tiny.txt");
    fs::write(&tiny, TINY).unwrap();
    let out = dir.path().join("tt.txt");
    let o = pdakit(&["product", tiny.to_str().unwrap(), tiny.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(header(&out), "4 4 3 1");
    assert!(stdout(&o).contains("M/N = 1/2 + 1/2 - 1/2·1/2 = 3/4"), "{}", stdout(&o));
    assert_eq!(pdakit(&["validate", out.to_str().unwrap()]).status.code(), Some(0));

    let pg = construct_to(&dir, "pg.txt", &["pg", "--q", "2", "--k", "3", "--m", "1", "--t", "1"]);
    let out = dir.path().join("pp.txt");
    let o = pdakit(&["product", pg.to_str().unwrap(), pg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(header(&out).starts_with("49 49 40 "));
}

#[test]
fn tabulate_tables() {
    let o = pdakit(&["tabulate", "pg", "--q", "2", "--k", "2..4", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("family,params,orientation,K,F,M/N,R,R*,R/R*,F*(MN),admissible"));
    assert!(out.contains("pg,\"q=2,k=3,m=1,t=1\",1,7,7,4/7,1,3/5,5/3,35,yes"));
    assert!(out.lines().any(|l| l.ends_with(",no")));

    let o = pdakit(&["tabulate", "config", "--design", "fano", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 4);

    let o = pdakit(&["tabulate", "tdesign-b", "--design", "complete:4:2"]);
    let row = stdout(&o).lines().find(|l| l.contains("1/4")).map(String::from).unwrap();
    assert_eq!(row.matches("3/2").count(), 2, "{row}");
}

#[test]
fn every_constructed_file_validates_and_decodes() {
    let dir = TempDir::new().unwrap();
    let cases: &[&[&str]] = &[
        &["pg", "--q", "2", "--k", "3", "--m", "1", "--t", "1", "--set", "2"],
        &["pg", "--q", "3", "--k", "3", "--m", "1", "--t", "1", "--set", "3"],
        &["config", "--design", "affine-9", "--set", "2"],
        &["tdesign-a", "--design", "fano", "--t0", "1", "--set", "3"],
        &["tdesign-lambda", "--design", "sqs8", "--t1", "1", "--t2", "1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let p = construct_to(&dir, &format!("{i}.txt"), args);
        let path = p.to_str().unwrap();
        assert_eq!(pdakit(&["validate", path]).status.code(), Some(0), "{args:?}");
        let o = pdakit(&["simulate", path, "--samples", "30"]);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn designs_subcommands() {
    let o = pdakit(&["designs", "list"]);
    assert!(stdout(&o).contains("fano"));
    let o = pdakit(&["designs", "show", "fano"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["v"], 7);
    let o = pdakit(&["designs", "certify", "sqs8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"t\":3"));
    let o = pdakit(&["designs", "certify", "sqs8", "--as", "configuration"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(pdakit(&["designs", "show", "nope"]).status.code(), Some(3));
}
