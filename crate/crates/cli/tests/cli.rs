use std::io::Write;
use std::process::{Command, Output};

fn sperner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sperner")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file_with(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn family_sizes() {
    let o = sperner(&["family", "M", "3", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 7);

    let o = sperner(&["family", "U", "8", "2", "--format", "shorthand"]);
    let text = stdout(&o);
    assert_eq!(text.trim().split(',').count(), 8);
    assert!(text.trim().split(',').any(|b| b == "78"));

    let o = sperner(&["family", "U", "8", "2", "--primed-labels"]);
    assert!(stdout(&o).contains("{0,0'}"));
}

#[test]
fn family_errors() {
    assert_eq!(sperner(&["family", "S", "4", "1"]).status.code(), Some(2));
    assert_eq!(sperner(&["family", "M", "3"]).status.code(), Some(2));
    assert_eq!(sperner(&["family", "M", "3", "7"]).status.code(), Some(2));
    assert_eq!(sperner(&["family", "Q", "3", "1"]).status.code(), Some(2));
}

#[test]
fn family_to_file_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m31.json");
    let o = sperner(&["family", "M", "3", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let o = sperner(&["check", out.to_str().unwrap(), "M3_1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn deck_lines() {
    let tri = file_with("12,13,23\n");
    assert_eq!(stdout(&sperner(&["deck", path(&tri)])), "1 ×3\n");
    let one = file_with("1\n");
    assert_eq!(stdout(&sperner(&["deck", path(&one), "--n", "2"])), "1 ×1\n");
    let two = file_with("1,2,34\n");
    assert_eq!(stdout(&sperner(&["deck", path(&two)])), "1,2 ×4\n1,2,3 ×1\n1,23 ×1\n");
}

#[test]
fn hypergraph_decks_agree() {
    let a = sperner(&["deck", "M3_1", "--mode", "hypergraph"]);
    let b = sperner(&["deck", "M3_2", "--mode", "hypergraph"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lines = stdout(&a).lines().map(|l| l.rsplit('×').next().unwrap().parse::<usize>().unwrap()).sum::<usize>();
    assert_eq!(lines, 6);
}

#[test]
fn deck_input_errors() {
    let bad = file_with("12,1x\n");
    assert_eq!(sperner(&["deck", path(&bad)]).status.code(), Some(2));
    assert_eq!(sperner(&["deck", "no-such-file"]).status.code(), Some(2));
    let single = file_with("1\n");
    assert_eq!(sperner(&["deck", path(&single)]).status.code(), Some(2));
    let big = file_with(r#"{"n": 30, "blocks": [[1, 2]]}"#);
    assert_eq!(sperner(&["deck", path(&big)]).status.code(), Some(3));
}

#[test]
fn antichain_warning() {
    let chain = file_with("1,12\n");
    let plain = sperner(&["deck", path(&chain), "--n", "3"]);
    assert!(plain.status.success());
    assert!(String::from_utf8_lossy(&plain.stderr).contains("not an antichain"));
    let fixed = sperner(&["deck", path(&chain), "--n", "3", "--minimalize"]);
    let single = file_with("1\n");
    assert_eq!(fixed.stdout, sperner(&["deck", path(&single), "--n", "3"]).stdout);
}

#[test]
fn check_relations() {
    assert_eq!(sperner(&["check", "M3_1", "M3_2", "--relation", "strong"]).status.code(), Some(0));
    assert_eq!(sperner(&["check", "M3_1", "M3_2", "--relation", "hypomorphic"]).status.code(), Some(0));
    let o = sperner(&["check", "M3_1", "M3_2", "--relation", "iso"]);
    assert_eq!(o.status.code(), Some(1));
    let o = sperner(&["check", "M3_1", "M3_1", "--relation", "iso"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness 1 2 3 4 5 6"));
    assert_eq!(sperner(&["check", "M3_1", "M4_1"]).status.code(), Some(2));
}

#[test]
fn check_reports_witness() {
    let a = file_with("12,23\n");
    let b = file_with("13,23\n");
    let o = sperner(&["check", path(&a), path(&b)]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().find(|l| l.starts_with("witness")).unwrap().to_string();
    let images: Vec<usize> = line.split_whitespace().skip(1).map(|t| t.parse().unwrap()).collect();
    assert_eq!(images[1], 3);
}

#[test]
fn appendix_output() {
    let o = sperner(&["appendix", "3"]);
    assert_eq!(stdout(&o).lines().count(), 9);
    let text = stdout(&sperner(&["appendix", "4"]));
    let marked: Vec<&str> =
        text.lines().filter_map(|l| l.split('\t').next()).filter_map(|l| l.strip_suffix(" *")).collect();
    assert_eq!(marked, ["12,13,14,234", "12,13,23"]);
    let five = stdout(&sperner(&["appendix", "5"]));
    assert_eq!(five.lines().count(), 209);
    assert!(!five.contains('*'));
    assert_eq!(sperner(&["appendix", "6"]).status.code(), Some(3));
    assert_eq!(sperner(&["appendix", "1"]).status.code(), Some(2));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&sperner(&["appendix", "4", "--format", "json"]))).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 28);
}

#[test]
fn output_is_deterministic() {
    for args in [&["appendix", "4"][..], &["deck", "M4_2"], &["family", "S", "5", "1"]] {
        assert_eq!(sperner(args).stdout, sperner(args).stdout);
    }
}

fn clone_lines(o: &Output) -> Vec<String> {
    stdout(o).lines().map(str::to_string).collect()
}

#[test]
fn clone_reports() {
    let maj = file_with(r#"{"domain":2,"codomain":2,"arity":3,"table":[0,0,0,1,0,1,1,1]}"#);
    let lines = clone_lines(&sperner(&["clones", path(&maj)]));
    for want in ["M ✓", "S ✓", "SM ✓"] {
        assert!(lines.iter().any(|l| l == want), "{want}");
    }
    let xor = file_with(r#"{"domain":2,"codomain":2,"arity":2,"table":[0,1,1,0]}"#);
    let lines = clone_lines(&sperner(&["clones", path(&xor)]));
    assert!(lines.contains(&"L ✓".to_string()) && lines.contains(&"M ✗".to_string()));
    let lines = clone_lines(&sperner(&["clones", "U7_1", "--term"]));
    for want in ["M ✓", "T0 ✓", "T1 ✓", "U_∞ ✓"] {
        assert!(lines.iter().any(|l| l == want), "{want}");
    }
    let ternary = file_with(r#"{"domain":3,"codomain":3,"arity":1,"table":[0,1,2]}"#);
    assert_eq!(sperner(&["clones", path(&ternary)]).status.code(), Some(2));
}

#[test]
fn function_decks() {
    let and = file_with(r#"{"domain":2,"codomain":2,"arity":3,"table":[0,0,0,0,0,0,0,1]}"#);
    let o = sperner(&["deck", path(&and), "--mode", "function"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"domain\":2,\"codomain\":2,\"arity\":2,\"table\":[0,0,0,1]} ×3\n");
}
