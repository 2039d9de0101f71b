use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use balanced_nsga::experiments::{CSV_HEADER, SUMMARY_HEADER};
use tempfile::TempDir;

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsga-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_args<'a>(out: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut args = vec![
        "run",
        "--benchmark",
        "omm",
        "--n",
        "8",
        "--algo",
        "balanced",
        "--runs",
        "3",
        "--seed",
        "7",
        "--out",
        out,
    ];
    args.extend_from_slice(extra);
    args
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_header_and_one_row_per_trial() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("runs.csv");
    let status = bench(&run_args(path_str(&out), &["--pop-mult", "4"]));
    assert_eq!(
        status.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );

    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 4);
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(&fields[..7], ["omm", "8", "2", "", "balanced", "36", "4.0"]);
        let iterations: u64 = fields[8].parse().unwrap();
        let evaluations: u64 = fields[9].parse().unwrap();
        assert_eq!(evaluations, 36 * (iterations + 1));
        assert_eq!(fields[10], "true");
    }
}

#[test]
fn rerun_with_same_seed_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (out, parallelism) in [(&a, "1"), (&b, "3")] {
        let status = bench(&run_args(
            path_str(out),
            &["--pop-size", "20", "--parallelism", parallelism],
        ));
        assert_eq!(status.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn explicit_budget_caps_evaluations() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("runs.csv");
    let args = [
        "run",
        "--benchmark",
        "ojzj",
        "--n",
        "20",
        "--k",
        "4",
        "--algo",
        "classic",
        "--pop-size",
        "10",
        "--runs",
        "2",
        "--seed",
        "1",
        "--budget",
        "95",
        "--out",
        path_str(&out),
    ];
    assert_eq!(bench(&args).status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    for row in text.lines().skip(1) {
        assert!(row.ends_with(",8,90,false"), "{row}");
    }
}

#[test]
fn configuration_errors_exit_with_1() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.csv");
    let out = path_str(&out);
    let cases: Vec<Vec<&str>> = vec![
        run_args(out, &[]),
        run_args(out, &["--pop-size", "20", "--pop-mult", "4"]),
        run_args(out, &["--pop-size", "20", "--budget", "19"]),
        run_args(out, &["--pop-size", "0"]),
        run_args(out, &["--pop-mult", "-1"]),
        vec![
            "run",
            "--benchmark",
            "zdt1",
            "--n",
            "8",
            "--algo",
            "classic",
            "--pop-size",
            "4",
            "--runs",
            "1",
            "--seed",
            "1",
            "--out",
            out,
        ],
        vec![
            "run",
            "--benchmark",
            "omm",
            "--n",
            "8",
            "--algo",
            "random",
            "--pop-size",
            "4",
            "--runs",
            "1",
            "--seed",
            "1",
            "--out",
            out,
        ],
        vec![
            "run",
            "--benchmark",
            "ojzj",
            "--n",
            "8",
            "--algo",
            "classic",
            "--pop-size",
            "4",
            "--runs",
            "1",
            "--seed",
            "1",
            "--out",
            out,
        ],
        vec![
            "run",
            "--benchmark",
            "omm-m",
            "--n",
            "9",
            "--m",
            "4",
            "--algo",
            "classic",
            "--pop-size",
            "4",
            "--runs",
            "1",
            "--seed",
            "1",
            "--out",
            out,
        ],
        vec!["frobnicate"],
    ];
    for args in cases {
        let output = bench(&args);
        assert_eq!(
            output.status.code(),
            Some(1),
            "{args:?}: {}",
            String::from_utf8_lossy(&output.stderr)
        );
    }
}

#[test]
fn io_errors_exit_with_2() {
    let dir = TempDir::new().unwrap();
    let missing_dir = dir.path().join("no/such/dir/runs.csv");
    assert_eq!(
        bench(&run_args(path_str(&missing_dir), &["--pop-size", "20"]))
            .status
            .code(),
        Some(2)
    );

    let summary = dir.path().join("summary.csv");
    let absent = dir.path().join("absent.csv");
    let output = bench(&[
        "summarize",
        "--in",
        path_str(&absent),
        "--out",
        path_str(&summary),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn malformed_rows_are_reported_with_their_line() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(
        &input,
        format!("{CSV_HEADER}\nomm,8,2,,classic,36,4.0,1,3,144,true\nomm,8,2,,classic,36,4.0,2,three,144,true\n"),
    )
    .unwrap();
    let output = bench(&[
        "summarize",
        "--in",
        path_str(&input),
        "--out",
        path_str(&dir.path().join("s.csv")),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("line 3"));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(bench(&["--help"]).status.code(), Some(0));
    assert_eq!(bench(&["--version"]).status.code(), Some(0));
    assert_eq!(bench(&["run", "--help"]).status.code(), Some(0));
}

#[test]
fn summarize_pairs_classic_with_balanced() {
    let dir = TempDir::new().unwrap();
    let classic = dir.path().join("classic.csv");
    let balanced = dir.path().join("balanced.csv");
    for (out, algo) in [(&classic, "classic"), (&balanced, "balanced")] {
        let args = [
            "run",
            "--benchmark",
            "lotz",
            "--n",
            "10",
            "--algo",
            algo,
            "--pop-mult",
            "4",
            "--runs",
            "5",
            "--seed",
            "3",
            "--out",
            path_str(out),
        ];
        assert_eq!(bench(&args).status.code(), Some(0));
    }
    let merged = dir.path().join("merged.csv");
    let balanced_text = fs::read_to_string(&balanced).unwrap();
    let body: String = balanced_text
        .lines()
        .skip(1)
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(&merged, fs::read_to_string(&classic).unwrap() + &body).unwrap();

    let summary = dir.path().join("summary.csv");
    let output = bench(&[
        "summarize",
        "--in",
        path_str(&merged),
        "--out",
        path_str(&summary),
    ]);
    assert_eq!(
        output.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let text = fs::read_to_string(&summary).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], SUMMARY_HEADER);
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..6], ["lotz", "10", "2", "", "44", "4.0"]);
    assert_eq!(fields[6], "5");
    assert_eq!(fields[11], "5");
    let p: f64 = fields[17].parse().unwrap();
    assert!((0.0..=1.0).contains(&p));
    assert!(["exact", "normal_approx"].contains(&fields[18]));
}
