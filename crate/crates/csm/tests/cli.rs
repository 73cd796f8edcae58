//! Drives the `csm` binary and compares against checked-in golden output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn csm(args: &[&str], cache_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_csm"));
    cmd.args(args);
    match cache_dir {
        Some(dir) => cmd.env("CSM_CACHE_DIR", dir),
        None => cmd.env_remove("CSM_CACHE_DIR"),
    };
    cmd.output().expect("failed to spawn csm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    let out = csm(args, None);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), golden(name), "{args:?} differs from {name}");
}

#[test]
fn gamma_worked_example() {
    let out = csm(&["gamma", "--alpha", "3,2,1", "--beta", "2,0,0"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "11\n");
}

#[test]
fn gamma_single_part() {
    let out = csm(&["gamma", "--alpha", "5", "--beta", "3"], None);
    assert_eq!(stdout(&out), "10\n");
}

#[test]
fn gamma_space_separated_partitions() {
    let out = csm(&["gamma", "--alpha", "3 2 1", "--beta", "2 0 0", "--format", "csv"], None);
    assert_eq!(stdout(&out), "alpha,beta,gamma\n\"3,2,1\",\"2,0,0\",11\n");
}

#[test]
fn gamma_show_terms() {
    assert_golden(&["gamma", "--alpha", "3,2,1", "--beta", "2,0,0", "--show-terms"], "gamma_3_2_1__2_0_0_terms.txt");
    let text = golden("gamma_3_2_1__2_0_0_terms.txt");
    assert_eq!(text.matches("term ").count(), 12);
    assert!(text.ends_with("= 11\n"));
    assert!(text.contains("(-1)"));
    assert_golden(
        &["gamma", "--alpha", "3,2,1", "--beta", "2,0,0", "--show-terms", "--format", "json"],
        "gamma_3_2_1__2_0_0_terms.json",
    );
}

#[test]
fn table_goldens() {
    assert_golden(&["table", "--alpha", "3,2,1", "--cell", "--format", "json", "--deterministic"], "table_cell_3_2_1.json");
    assert_golden(&["table", "--alpha", "3,2,1", "--variety", "--format", "csv"], "table_variety_3_2_1.csv");
    assert_golden(&["table", "--alpha", "2,2", "--cell"], "table_cell_2_2.txt");
}

#[test]
fn table_small_cases() {
    let out = csm(&["table", "--alpha", "1", "--cell", "--format", "csv"], None);
    assert_eq!(stdout(&out), "beta,gamma\n\"1\",1\n\"0\",1\n");
    let out = csm(&["table", "--alpha", "2", "--variety", "--format", "pretty"], None);
    assert_eq!(stdout(&out), "c_SM(S(2)) = 1*S(2) + 3*S(1) + 3*S(0)\n");

    let out = csm(&["table", "--alpha", "3,2,1", "--cell", "--format", "json"], None);
    let doc = csm::TableDocument::from_json(&stdout(&out)).unwrap();
    assert_eq!(doc.rows.len(), 14);
    let row = doc.rows.iter().find(|r| r.beta.parts() == [2, 0, 0]).unwrap();
    assert_eq!(row.gamma.to_string(), "11");
    assert!(doc.meta.timestamp.is_some());
}

#[test]
fn table_needs_a_kind() {
    assert_eq!(csm(&["table", "--alpha", "2,1"], None).status.code(), Some(2));
    assert_eq!(csm(&["table", "--alpha", "2,1", "--cell", "--variety"], None).status.code(), Some(2));
}

#[test]
fn deterministic_output_is_stable() {
    let args = ["table", "--alpha", "4,2,1", "--cell", "--format", "json", "--deterministic", "--jobs", "3"];
    assert_eq!(csm(&args, None).stdout, csm(&args, None).stdout);
}

#[test]
fn exit_codes() {
    let parse = csm(&["gamma", "--alpha", "1,2", "--beta", "0,0"], None);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("weakly decreasing"));
    assert_eq!(csm(&["gamma", "--alpha", "x", "--beta", "0"], None).status.code(), Some(2));
    assert_eq!(csm(&["table", "--alpha", "3,-1", "--cell"], None).status.code(), Some(2));

    let domain = csm(&["gamma", "--alpha", "3,2,1", "--beta", "3,3,0"], None);
    assert_eq!(domain.status.code(), Some(3));
    assert_eq!(csm(&["gamma", "--alpha", "2,1", "--beta", "2,2", "--show-terms"], None).status.code(), Some(3));

    assert_eq!(csm(&["sweep", "--d", "0", "--n", "3"], None).status.code(), Some(2));
    assert_eq!(csm(&["sweep", "--d", "2", "--n", "3", "--checks", "bogus"], None).status.code(), Some(2));
}

#[test]
fn sweep_golden_and_jobs() {
    assert_golden(&["sweep", "--d", "2", "--n", "3", "--deterministic"], "sweep_d2_n3.json");
    let one = csm(&["sweep", "--d", "2", "--n", "3", "--deterministic", "--jobs", "1"], None);
    let many = csm(&["sweep", "--d", "2", "--n", "3", "--deterministic", "--jobs", "8"], None);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn sweep_check_subset() {
    let out = csm(&["sweep", "--d", "2", "--n", "2", "--checks", "positivity,leading-one", "--deterministic"], None);
    assert_eq!(out.status.code(), Some(0));
    let report: csm::SweepReport = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<_> = report.check_passes.keys().map(|c| c.name()).collect();
    assert_eq!(names, ["positivity", "leading-one"]);
}

#[test]
fn sweep_resume_reuses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sweep", "--d", "3", "--n", "2", "--deterministic", "--resume"];
    let fresh = csm(&["sweep", "--d", "3", "--n", "2", "--deterministic"], None);
    let first = csm(&args, Some(dir.path()));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, fresh.stdout);

    let cache_file = dir.path().join(csm::cache::CACHE_FILE);
    let lines = std::fs::read_to_string(&cache_file).unwrap().lines().count();
    assert_eq!(lines, 10);

    // Second run finds everything cached and writes nothing.
    let second = csm(&args, Some(dir.path()));
    assert_eq!(second.stdout, fresh.stdout);
    assert_eq!(std::fs::read_to_string(&cache_file).unwrap().lines().count(), 10);

    // Dropping records forces just those partitions to be recomputed.
    let text = std::fs::read_to_string(&cache_file).unwrap();
    let kept: Vec<_> = text.lines().take(4).collect();
    std::fs::write(&cache_file, kept.join("\n") + "\n").unwrap();
    let third = csm(&args, Some(dir.path()));
    assert_eq!(third.stdout, fresh.stdout);
    assert_eq!(std::fs::read_to_string(&cache_file).unwrap().lines().count(), 10);
}

#[test]
fn corrupt_cache_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join(csm::cache::CACHE_FILE), "{\"broken\": true}\n").unwrap();
    let out = csm(&["sweep", "--d", "2", "--n", "2", "--resume"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("{\"broken\": true}"));
}

#[test]
fn selfcheck_passes() {
    let out = csm(&["selfcheck"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("selfcheck: 7/7 passed\n"));
}
