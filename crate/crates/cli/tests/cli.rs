use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn satlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satlat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn piped_build_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let o = satlat(&["piped", "build", "--p", "3", "--k", "3", "-o", s(&g)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&g)["format"], "isoped/1");
    let o = satlat(&["piped", "check", s(&g)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn piped_build_p2_is_construction_failure() {
    let o = satlat(&["piped", "build", "--p", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn piped_check_figure2_reports_margin() {
    let fig = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/figure2.isoped.json");
    let o = satlat(&["piped", "check", fig]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("margin = 3/2 - 1 = 1/2"), "{}", stdout(&o));
}

#[test]
fn piped_lc_and_nogo() {
    let o = satlat(&["piped", "lc", "--k", "2", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("leading coefficient = -8"));
    let o = satlat(&["piped", "nogo", "--k", "3", "--samples", "5", "--l2-samples", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn reduce_rankn_one_clause() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.cnf", "p cnf 2 1\n1 -2 0\n");
    let out = dir.path().join("i.json");
    let o = satlat(&["reduce", "rankn", "--p", "1", "--W", "1", "--gadget", "l1:k=2", s(&f), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&out);
    assert_eq!(v["format"], "cvp-instance/1");
    assert_eq!(v["threshold_pow"], "3");
    assert_eq!(v["provenance"]["reduction"], "rankn");
}

#[test]
fn reduce_inf_records_radius() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.cnf", "p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
    let out = dir.path().join("i.json");
    let o = satlat(&["reduce", "inf", s(&f), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["norm"], "inf");
    assert_eq!(v["provenance"]["params"]["r"], "1");
    assert_eq!(v["threshold"], "1");
}

#[test]
fn reduce_gap_eth_records_stages() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g3.cnf", "p cnf 4 3\n1 2 3 0\n-1 2 -4 0\n1 -3 4 0\n");
    let out = dir.path().join("i.json");
    let args = ["reduce", "gap-eth", "--delta", "0.9", "--dprime", "0.95", "--p", "1", "--seed", "7", s(&f), "-o", s(&out)];
    let o = satlat(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("gamma"));
    let v = json(&out);
    let stages: Vec<&str> =
        v["provenance"]["stages"].as_array().unwrap().iter().map(|st| st["name"].as_str().unwrap()).collect();
    assert_eq!(stages, ["sparsify", "garey3to2", "gap2"]);
    assert_eq!(v["provenance"]["seed"], 7);
    let first = std::fs::read(&out).unwrap();
    satlat(&args);
    assert_eq!(std::fs::read(&out).unwrap(), first);
}

#[test]
fn solve_counts_optimal_assignments() {
    let dir = tempfile::tempdir().unwrap();
    // Best weight 3 with two optimal assignments.
    let f = write(dir.path(), "t2.cnf", "p cnf 3 3\n1 2 0\n-1 3 0\n-2 -3 0\n");
    let inst = dir.path().join("h.json");
    let o = satlat(&["reduce", "highrank", "--p", "1", "--W", "3", s(&f), "-o", s(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    let o = satlat(&["solve", "cvp", s(&inst), "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 2"), "{}", stdout(&o));
    let o = satlat(&["solve", "maxsat", s(&f), "--W", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("optimal assignments: 2"));
    let o = satlat(&["solve", "maxsat", s(&f), "--W", "4"]);
    assert_eq!(o.status.code(), Some(2), "W above the clause count is a parameter error");
}

#[test]
fn solve_warns_on_narrow_box_and_respects_limit() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.cnf", "p cnf 2 2\n1 2 0\n-1 -2 0\n");
    let inst = dir.path().join("i.json");
    satlat(&["reduce", "highrank", "--W", "2", s(&f), "-o", s(&inst)]);
    let o = satlat(&["solve", "cvp", s(&inst), "--box", "0:1"]);
    assert!(stdout(&o).contains("warning"), "{}", stdout(&o));
    let o = satlat(&["solve", "svp", s(&inst)]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_satlat"))
        .args(["solve", "cvp", s(&inst)])
        .env("SATLAT_ENUM_LIMIT", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("limit"), "{}", stderr(&o));
}

#[test]
fn cvpp_prep_and_query() {
    let dir = tempfile::tempdir().unwrap();
    let lat = dir.path().join("b2.json");
    let o = satlat(&["reduce", "cvpp-prep", "--n", "2", "--p", "1", "-o", s(&lat)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let f = write(dir.path(), "q.cnf", "p cnf 2 1\n1 2 0\n");
    let inst = dir.path().join("q.json");
    let o = satlat(&["reduce", "cvpp-query", "--lattice", s(&lat), "--W", "1", s(&f), "-o", s(&inst)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&inst)["threshold_pow"], "42");
    let o = satlat(&["solve", "cvp", s(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("best dist^p: 42"), "{}", stdout(&o));
    let unit = write(dir.path(), "u.cnf", "p cnf 2 1\n1 0\n");
    let o = satlat(&["reduce", "cvpp-query", "--lattice", s(&lat), s(&unit)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sat_transforms() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g3.cnf", "p cnf 4 3\n1 2 3 0\n-1 2 -4 0\n1 -3 4 0\n");
    let o = satlat(&["sat", "garey3to2", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p cnf 7 30\n"), "{}", stdout(&o));
    let run = || satlat(&["sat", "sparsify", s(&f), "--delta", "1/2", "--dprime", "3/4", "--seed", "42"]).stdout;
    assert_eq!(run(), run());
    let o = satlat(&["sat", "sparsify", s(&f), "--delta", "0.9", "--dprime", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = satlat(&["sat", "maxsat", s(&f), "--W", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_exit_codes() {
    let o = satlat(&["verify", "--reduction", "rankn", "--random", "5,8,3,10", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("10/10 agree"));
    let o = satlat(&["verify", "--reduction", "cvpp", "--n", "3", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = satlat(&["verify", "--reduction", "rankn", "--random", "4,4,3,3", "--gadget", "figure2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2), "figure2 is a p = 3 gadget");
    // A width-3 clause cannot go through a width-2 gadget: that record fails.
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.cnf", "p cnf 3 2\n1 2 0\n-1 3 0\n");
    write(dir.path(), "b.cnf", "p cnf 3 1\n1 2 3 0\n");
    let args = ["verify", "--reduction", "rankn", "--gadget", "l1:k=2", "--k", "2", "--corpus", s(dir.path())];
    let o = satlat(&args);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("1/2 agree"), "{}", stdout(&o));
    let o = satlat(&["verify", "--reduction", "nope", "--random", "4,4,3,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(satlat(&["reduce", "inf", "/nonexistent.cnf"]).status.code(), Some(2));
    assert_eq!(satlat(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"format\": \"cvp-instance/1\"}");
    let o = satlat(&["solve", "cvp", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
}
