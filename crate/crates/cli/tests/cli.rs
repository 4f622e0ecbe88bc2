use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn onsup(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onsup"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn example_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = onsup(dir.path(), &["example", "surveillance", "--out-dir", "."]);
    assert!(out.status.success());
    dir
}

#[test]
fn full_pipeline_through_files() {
    let dir = example_dir();
    let d = dir.path();
    assert!(onsup(
        d,
        &[
            "compose",
            "--des",
            "g_pos.json",
            "--des",
            "g_task.json",
            "--out",
            "g.json"
        ]
    )
    .status
    .success());
    assert_eq!(
        fs::read(d.join("g.json")).unwrap(),
        fs::read(d.join("plant.json")).unwrap()
    );
    let out = onsup(
        d,
        &[
            "translate",
            "--spec",
            "spec.ltl",
            "--ap",
            "p0,p1,p2,p3,p4,p5,qs",
            "--out",
            "dfa.json",
        ],
    );
    assert!(out.status.success());
    assert!(onsup(
        d,
        &["product", "--des", "g.json", "--dfa", "dfa.json", "--out", "p.json"]
    )
    .status
    .success());
    let product = fs::read_to_string(d.join("p.json")).unwrap();
    assert_eq!(product.matches("\"des_state\"").count(), 79);
    assert!(onsup(d, &["rank", "--product", "p.json", "--out", "ranks.csv"])
        .status
        .success());
    let ranks = fs::read_to_string(d.join("ranks.csv")).unwrap();
    assert_eq!(ranks.lines().count(), 80);
    assert!(ranks.lines().nth(1).unwrap().ends_with(",14"));
}

#[test]
fn run_writes_transcript_and_trace() {
    let dir = example_dir();
    let d = dir.path();
    let out = onsup(
        d,
        &[
            "run",
            "--des",
            "plant.json",
            "--spec",
            "spec.ltl",
            "--perm",
            "-0.5,20",
            "--seed",
            "4",
            "--transcript",
            "t.jsonl",
            "--trace",
            "trace.csv",
        ],
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("accepted=true"));
    let steps: usize = stdout
        .split("steps=")
        .nth(1)
        .unwrap()
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(fs::read_to_string(d.join("t.jsonl")).unwrap().lines().count(), steps);
    assert_eq!(
        fs::read_to_string(d.join("trace.csv")).unwrap().lines().count(),
        steps + 2
    );
}

#[test]
fn batch_writes_one_row_per_configuration() {
    let dir = example_dir();
    let d = dir.path();
    let out = onsup(
        d,
        &[
            "batch",
            "--des",
            "plant.json",
            "--spec",
            "spec.ltl",
            "--perm-sweep",
            "b=30;a=-0.25,-0.5,-1,-2",
            "--runs",
            "50",
            "--master-seed",
            "1",
            "--out",
            "s.csv",
        ],
    );
    assert!(out.status.success());
    let text = fs::read_to_string(d.join("s.csv")).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("a,b,mean_steps,std_steps,mean_pattern_size,std_pattern_size\n-0.25,30,"));
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    let dir = example_dir();
    let d = dir.path();
    let bad_formula = onsup(d, &["translate", "--formula", "!(p0 & p1)", "--ap", "p0,p1"]);
    assert_eq!(bad_formula.status.code(), Some(2));
    let bad_schedule = onsup(
        d,
        &[
            "run",
            "--des",
            "plant.json",
            "--spec",
            "spec.ltl",
            "--perm",
            "0.5,20",
            "--seed",
            "1",
        ],
    );
    assert_eq!(bad_schedule.status.code(), Some(2));
    let missing = onsup(d, &["rank", "--product", "nope.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let unenforceable = onsup(
        d,
        &[
            "run",
            "--des",
            "plant.json",
            "--formula",
            "p1",
            "--perm",
            "-1,5",
            "--seed",
            "1",
        ],
    );
    assert_eq!(unenforceable.status.code(), Some(3));
    let capped = onsup(
        d,
        &[
            "run",
            "--des",
            "plant.json",
            "--spec",
            "spec.ltl",
            "--perm",
            "-0.5,20",
            "--seed",
            "1",
            "--max-steps",
            "3",
        ],
    );
    assert_eq!(capped.status.code(), Some(4));
}

#[test]
fn translate_prints_to_stdout_without_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = onsup(dir.path(), &["translate", "--formula", "F a", "--ap", "a"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"accepting\""));
}
