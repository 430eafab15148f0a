use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn orchard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orchard"))
        .args(args)
        .env_remove("ORCHARD_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn total(o: &Output) -> u64 {
    let out = stdout(o);
    let line = out.lines().find(|l| l.starts_with("total ")).expect("total line");
    line[6..].trim().parse().expect("numeric total")
}

fn construct_to(dir: &Path, name: &str, args: &[&str]) -> (Output, String) {
    let path = dir.join(name);
    let path_str = path.to_str().unwrap().to_owned();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path_str]);
    (orchard(&full), path_str)
}

#[test]
fn count_reports_total_and_edges() {
    let dir = TempDir::new().unwrap();
    let (o, file) = construct_to(dir.path(), "blocks.json", &["--family", "disjoint-cycles", "--n", "4", "--x", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = orchard(&["count", &file]);
    assert_eq!(code(&o), 0);
    assert_eq!(total(&o), 48);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("edge ")).count(), 12);

    let (_, file) = construct_to(dir.path(), "c5.json", &["--family", "cycle", "--n", "5"]);
    assert_eq!(total(&orchard(&["count", &file])), 0);
}

#[test]
fn count_json_report() {
    let dir = TempDir::new().unwrap();
    let (_, file) = construct_to(dir.path(), "l4.json", &["--family", "ladder", "--n", "4"]);
    let o = orchard(&["count", "--json", &file]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"].to_string(), "16");
    assert_eq!(v["edges"].as_array().unwrap().len(), 10);
}

#[test]
fn collinear_points_exit_3_with_the_triple() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        r#"{"graph":{"vertex_count":3,"edges":[[0,1],[1,2]]},
            "points":[[[0,1],[0,1]],[[1,1],[1,1]],[[2,1],[2,1]]]}"#,
    )
    .unwrap();
    let o = orchard(&["count", file.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("0, 1, 2"), "{}", stderr(&o));
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{\"graph\": ").unwrap();
    assert_eq!(code(&orchard(&["count", file.to_str().unwrap()])), 2);
    assert_eq!(code(&orchard(&["count", "/nonexistent/drawing.json"])), 2);
    assert_eq!(code(&orchard(&["bounds", "--family", "moebius", "--n", "4"])), 2);
    assert_eq!(code(&orchard(&["bounds", "--family", "prism"])), 2);
    assert_eq!(code(&orchard(&["construct", "--family", "star", "--n", "5"])), 2);
    assert_eq!(code(&orchard(&["frobnicate"])), 2);
}

#[test]
fn prism_svg_recounts_to_96() {
    let dir = TempDir::new().unwrap();
    let (o, file) =
        construct_to(dir.path(), "p6.svg", &["--family", "prism", "--n", "6", "--format", "svg", "--show-lines"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(std::fs::read_to_string(&file).unwrap().starts_with("<?xml"));
    assert_eq!(total(&orchard(&["count", &file])), 96);
}

#[test]
fn ladder_json_has_expected_shape() {
    let o = orchard(&["construct", "--family", "ladder", "--n", "7"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 14);
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 19);
}

#[test]
fn bouquet_of_three_recounts_to_12() {
    let dir = TempDir::new().unwrap();
    let (o, file) = construct_to(dir.path(), "b3.json", &["--family", "bouquet", "--x", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(total(&orchard(&["count", &file])), 12);
}

#[test]
fn bouquet_of_four_recounts_to_36() {
    let dir = TempDir::new().unwrap();
    let (o, file) = construct_to(dir.path(), "b4.json", &["--family", "bouquet", "--x", "4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(total(&orchard(&["count", &file])), 36);
}

#[test]
fn bounds_tables() {
    let o = orchard(&["bounds", "--family", "prism", "--n", "5"]);
    let out = stdout(&o);
    assert!(out.contains("lower 45, upper 62"), "{out}");

    let o = orchard(&["bounds", "--family", "ladder", "--n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"].to_string(), "4");

    let o = orchard(&["bounds", "--family", "open-chain", "--n", "4", "--x", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"].to_string(), "12");
}

fn best_count(o: &Output) -> u64 {
    let v: serde_json::Value = serde_json::from_str(&stdout(o)).expect("search JSON");
    v["best_count"].to_string().parse().unwrap()
}

#[test]
fn search_modes() {
    let o = orchard(&["search", "--family", "ladder", "--n", "3", "--mode", "auto"]);
    assert_eq!(best_count(&o), 4);
    let o = orchard(&["search", "--family", "disjoint-cycles", "--n", "3", "--x", "2", "--mode", "convex"]);
    assert_eq!(best_count(&o), 6);
    let o = orchard(&["search", "--family", "prism", "--n", "5", "--mode", "anneal", "--seed", "1", "--budget", "100000"]);
    let c = best_count(&o);
    assert!((45..=62).contains(&c), "{c}");
    assert_eq!(code(&orchard(&["search", "--family", "prism", "--n", "5", "--mode", "greedy"])), 2);
}

#[test]
fn output_does_not_depend_on_threads() {
    let args = ["search", "--family", "ladder", "--n", "5", "--mode", "anneal", "--seed", "4", "--budget", "400000"];
    let one = orchard(&[&["--threads", "1"], &args[..]].concat());
    let three = orchard(&[&["--threads", "3"], &args[..]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(stdout(&one), stdout(&three));
}

#[test]
fn verify_table_rows() {
    let o = orchard(&["verify", "--search-runs", "0"]);
    let out = stdout(&o);
    let row = |claim: &str| out.lines().find(|l| l.contains(claim)).unwrap_or_else(|| panic!("no row {claim}"));
    assert!(row("P_7 two-color").starts_with("PASS") && row("P_7 two-color").ends_with("142"));
    assert!(row("L4 stored drawing").starts_with("PASS") && row("L4 stored drawing").ends_with("16"));
    let any_fail = out.lines().any(|l| l.starts_with("FAIL"));
    assert_eq!(code(&o), if any_fail { 1 } else { 0 });
}

#[test]
fn verify_passes_on_a_fresh_checkout() {
    let o = orchard(&["verify", "--search-runs", "0"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
