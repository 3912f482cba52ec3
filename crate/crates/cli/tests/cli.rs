use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn liardom(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liardom"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn setup() -> TempDir {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("k2.graph"), "2 1\n0 1\n").unwrap();
    fs::write(dir.path().join("p3.graph"), "3 2\n0 1\n1 2\n").unwrap();
    dir
}

fn file(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn pipeline_files_chain_without_transformation() {
    let d = setup();
    let p = d.path();
    assert_eq!(
        code(&liardom(p, &["embed", "-i", "p3.graph", "-o", "p3.emb"])),
        0
    );
    let out = liardom(
        p,
        &[
            "reduce",
            "-i",
            "p3.graph",
            "-e",
            "p3.emb",
            "-o",
            "p3.pts",
            "--provenance",
            "p3.prov",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let pts = fs::read_to_string(file(&d, "p3.pts")).unwrap();
    assert_eq!(pts.lines().filter(|l| !l.starts_with('#')).count(), 20);
    let prov = fs::read_to_string(file(&d, "p3.prov")).unwrap();
    assert!(prov.contains("support 2 z"));

    assert_eq!(
        code(&liardom(p, &["solve", "-i", "p3.pts", "-o", "p3.sol"])),
        0
    );
    let sol = fs::read_to_string(file(&d, "p3.sol")).unwrap();
    assert_eq!(sol.lines().count(), 16);
    let v = liardom(p, &["verify", "-i", "p3.pts", "-s", "p3.sol"]);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout(&v).trim(), "ok");
}

#[test]
fn verify_reports_condition_one_witness() {
    let d = setup();
    let p = d.path();
    liardom(p, &["reduce", "-i", "k2.graph", "-o", "a.pts"]);
    fs::write(file(&d, "bad.sol"), "0\n1\n").unwrap();
    let out = liardom(
        p,
        &["verify", "--problem", "lds", "-i", "a.pts", "-s", "bad.sol"],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("condition=1"), "{}", stdout(&out));
}

#[test]
fn theorem_exit_status_follows_the_report() {
    let d = setup();
    let out = liardom(d.path(), &["theorem", "-i", "k2.graph"]);
    let text = stdout(&out);
    assert!(text.starts_with("theorem n=2 m=1 l=1 gamma_ds=1 gamma_lds=10 expected=11 pass=false"));
    assert_eq!(code(&out), 1);
}

#[test]
fn render_is_byte_identical() {
    let d = setup();
    let p = d.path();
    liardom(p, &["reduce", "-i", "k2.graph", "-o", "a.pts"]);
    assert_eq!(
        code(&liardom(p, &["render", "-i", "a.pts", "-o", "a.svg"])),
        0
    );
    assert_eq!(
        code(&liardom(p, &["render", "-i", "a.pts", "-o", "b.svg"])),
        0
    );
    let a = fs::read(file(&d, "a.svg")).unwrap();
    assert_eq!(a, fs::read(file(&d, "b.svg")).unwrap());
    assert!(a.starts_with(b"<?xml"));

    liardom(p, &["embed", "-i", "p3.graph", "-o", "p3.emb"]);
    let e = liardom(p, &["render", "-i", "p3.emb"]);
    assert_eq!(code(&e), 0);
    assert_eq!(stdout(&e).matches("<polyline").count(), 2);
}

#[test]
fn infeasible_and_routing_failures_exit_three() {
    let d = setup();
    let p = d.path();
    assert_eq!(code(&liardom(p, &["solve", "-i", "k2.graph"])), 3);
    assert_eq!(
        code(&liardom(p, &["solve", "-i", "k2.graph", "--problem", "ds"])),
        0
    );
    fs::write(
        file(&d, "k33.graph"),
        "6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n",
    )
    .unwrap();
    assert_eq!(
        code(&liardom(p, &["embed", "-i", "k33.graph", "--budget", "50"])),
        3
    );
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let d = setup();
    let p = d.path();
    assert_eq!(code(&liardom(p, &["solve", "--bogus"])), 2);
    assert_eq!(code(&liardom(p, &["solve", "-i", "missing.graph"])), 2);
    fs::write(file(&d, "bad.graph"), "2 1\n1 0\n").unwrap();
    let out = liardom(p, &["embed", "-i", "bad.graph"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(
        code(&liardom(
            p,
            &["solve", "-i", "k2.graph", "--method", "magic"]
        )),
        2
    );
    assert_eq!(
        code(&liardom(
            p,
            &["gen", "points", "--count", "10", "--side", "2"]
        )),
        2
    );
}

#[test]
fn outputs_are_deterministic() {
    let d = setup();
    let p = d.path();
    let run = |args: &[&str]| stdout(&liardom(p, args));
    for args in [
        &["gen", "graph", "--seed", "5", "-n", "7"][..],
        &["gen", "points", "--seed", "5", "--count", "12"][..],
        &["embed", "-i", "p3.graph"][..],
        &["reduce", "-i", "p3.graph"][..],
        &["solve", "-i", "p3.graph", "--method", "greedy"][..],
    ] {
        let first = run(args);
        assert!(!first.is_empty(), "{args:?}");
        assert_eq!(first, run(args), "{args:?}");
    }
}

#[test]
fn generated_graphs_feed_the_theorem_command() {
    let d = setup();
    let p = d.path();
    let g = liardom(
        p,
        &[
            "gen",
            "graph",
            "--seed",
            "1",
            "-n",
            "4",
            "-o",
            "g.graph",
            "--embedding",
            "g.emb",
        ],
    );
    assert_eq!(code(&g), 0);
    let out = liardom(p, &["theorem", "-i", "g.graph", "-e", "g.emb"]);
    assert!(matches!(code(&out), 0 | 1));
    assert!(stdout(&out).starts_with("theorem n=4 "));
}
