use std::process::{Command, Output};

use ade_core::fusion::fusion_matrices;
use ade_core::reference as golden;
use ade_core::IntMatrix;
use serde_json::Value;

fn ade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ade")).args(args).output().expect("run ade")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = ade(args);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn fusion_table_has_block_layout() {
    let o = ade(&["fusion", "E6", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("E6 | 0   3     4 | 1"), "{text}");
    assert!(lines[1].chars().all(|c| c == '-'));
    assert_eq!(lines.iter().filter(|l| l.starts_with('-')).count(), 2);
    let row2 = lines.iter().find(|l| l.starts_with("2 ")).unwrap();
    assert!(row2.contains("0 2 2 4"), "{row2}");
}

#[test]
fn toric_w00_table_matches_printed_matrix() {
    let o = ade(&["toric", "E6", "--element", "0x0", "--format", "table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("W_0⊗0"));
    let w00 = golden::TORIC.iter().find(|(k, _)| *k == (0, 0)).unwrap().1;
    let body: Vec<String> = lines.take(11).map(|l| l.replace(' ', "")).collect();
    assert_eq!(body, w00.iter().map(|r| r.replace(' ', "")).collect::<Vec<_>>());
}

#[test]
fn toric_accepts_non_canonical_pairs() {
    let v = json(&["toric", "E6", "--element", "3⊗1", "--format", "json"]);
    let w31: IntMatrix = serde_json::from_value(v["payload"]["matrix"].clone()).unwrap();
    let w02 = golden::TORIC.iter().find(|(k, _)| *k == (0, 2)).unwrap().1;
    assert_eq!(w31, golden::matrix(&w02));
}

#[test]
fn e7_is_a_domain_error() {
    let o = ade(&["fusion", "E7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("lack of positivity"));
    assert!(stdout(&o).is_empty());

    let o = ade(&["fusion", "E7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let diag: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(diag["error"], "no-positive-hypergroup");
    assert_eq!(diag["graph"], "E7");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["fusion", "E6", "--format", "dot"][..],
        &["fusion", "E9"],
        &["fusion", "~A3"],
        &["fusion", "banana"],
        &["bogus", "E6"],
        &["toric", "E6", "--element", "0y0"],
        &["ocneanu", "E6", "--element", "2x2"],
        &["modular-check", "E6", "--tol", "-1"],
    ] {
        assert_eq!(ade(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_envelope_and_matrix_round_trip() {
    let v = json(&["fusion", "E6", "--format", "json"]);
    assert_eq!(v["command"], "fusion");
    assert_eq!(v["graph"], "E6");
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
    let matrices: Vec<IntMatrix> = serde_json::from_value(v["payload"]["fusion"]["matrices"].clone()).unwrap();
    let fa = fusion_matrices(&"E6".parse().unwrap()).unwrap();
    assert_eq!(matrices, fa.matrices());
    let ambichiral: Vec<u32> = serde_json::from_value(v["payload"]["ambichiral"].clone()).unwrap();
    assert_eq!(ambichiral, vec![0, 3, 4]);
}

#[test]
fn ocneanu_dot_export() {
    let o = ade(&["ocneanu", "E6", "--format", "dot"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("graph ocneanu {"));
    assert!(dot.contains("label=\"5⊗1\""));
    assert!(dot.contains("style=dashed"));
    assert_eq!(dot.matches("[label=\"").count(), 12);
}

#[test]
fn ocneanu_json_lists_canonical_basis() {
    let v = json(&["ocneanu", "E6", "--format", "json"]);
    let basis: Vec<String> = serde_json::from_value(v["payload"]["algebra"]["basis"].clone()).unwrap();
    let want: Vec<String> = golden::QS_BASIS.iter().map(|(a, b)| format!("{a}⊗{b}")).collect();
    assert_eq!(basis, want);
    let dims: Vec<i64> = serde_json::from_value(v["payload"]["s_matrices"]["dims"].clone()).unwrap();
    assert_eq!(dims.iter().map(|d| d * d).sum::<i64>(), 2512);
}

#[test]
fn paths_table_shows_the_diagram() {
    let o = ade(&["paths", "E6", "--format", "table", "--length", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("        3\n        |\n0 - 1 - 2 - 5 - 4\n"), "{text}");
    assert!(text.contains("7  | 0 21 0 15 0 20 (1066)"), "{text}");
    assert_eq!(ade(&["paths", "E6", "--length", "9"]).status.code(), Some(1));
}

#[test]
fn modular_check_reports_the_partition_function() {
    let o = ade(&["modular-check", "E6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Z = |χ1+χ7|² + |χ4+χ8|² + |χ5+χ11|²"));
    assert!(stdout(&o).contains("T has order 48"));
    let v = json(&["modular-check", "D6", "--format", "json"]);
    assert_eq!(v["payload"]["relations_hold"], true);
    assert!(v["payload"]["invariance"].is_null());
}

#[test]
fn verify_paper_flags_only_the_a11_total() {
    let o = ade(&["verify-paper", "E6"]);
    let text = stdout(&o);
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails, vec!["FAIL A11 Σ d_n = 536: got 286, expected 536"]);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() > 40);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(ade(&["verify-paper", "A3"]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("ade-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("essential.json");
    let o = ade(&["essential", "E6", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let dims: Vec<i64> = serde_json::from_value(v["payload"]["dimensions"]["dims"].clone()).unwrap();
    assert_eq!(dims, golden::ESSPATH_DIMS);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&ade(&["ocneanu", "E8", "--format", "json"]));
    let b = stdout(&ade(&["ocneanu", "E8", "--format", "json"]));
    assert_eq!(a, b);
}
