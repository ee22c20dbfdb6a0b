use std::path::Path;
use std::process::{Command, Output};

use hypercert_cli::parse_range;

fn hypercert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write_set(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn ranges() {
    assert_eq!(parse_range("2..100").unwrap(), (2, 100));
    assert_eq!(parse_range("2..=5").unwrap(), (2, 5));
    assert_eq!(parse_range("7").unwrap(), (7, 7));
    assert!(parse_range("5..2").is_err());
    assert!(parse_range("a..2").is_err());
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(code(&hypercert(&["pk", "--k", "3", "--bogus"])), 3);
    assert_eq!(code(&hypercert(&["frobnicate"])), 3);
}

#[test]
fn help_exits_zero() {
    let o = hypercert(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("energy"));
}

#[test]
fn out_of_range_parameters_are_usage_errors() {
    assert_eq!(
        code(&hypercert(&[
            "--prec",
            "512",
            "--prec-cap",
            "256",
            "pk",
            "--k",
            "3"
        ])),
        3
    );
    assert_eq!(code(&hypercert(&["pk", "--k", "0..3"])), 3);
    assert_eq!(
        code(&hypercert(&["walk", "simulate", "--q", "3/2", "--k", "2"])),
        3
    );
    assert_eq!(
        code(&hypercert(&["means", "expand", "--k", "2", "--eps", "0"])),
        3
    );
    assert_eq!(
        code(&hypercert(&[
            "energy", "compute", "--k", "2", "--mask", "1ff", "--d", "2"
        ])),
        3
    );
}

#[test]
fn malformed_set_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_set(dir.path(), "bad.txt", "00\n012\n");
    let o = hypercert(&["energy", "verify", "--k", "2", "--set", &bad]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let ragged = write_set(dir.path(), "ragged.txt", "00\n1\n");
    assert_eq!(
        code(&hypercert(&[
            "energy", "verify", "--k", "2", "--set", &ragged
        ])),
        3
    );
}

#[test]
fn energy_verify_three_point_set() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path(), "a.txt", "# corner\n00\n01\n\n10\n");
    let o = hypercert(&["energy", "verify", "--k", "2", "--set", &set]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("energy=15"), "{out}");
    assert!(out.contains("bound=[17.11356"), "{out}");
    assert!(out.contains("bruteforce=agrees"));
    let by_mask = hypercert(&["energy", "verify", "--k", "2", "--mask", "0x0b", "--d", "2"]);
    assert_eq!(code(&by_mask), 0);
    assert!(stdout(&by_mask).contains("energy=15"));
}

#[test]
fn energy_compute_lists_tally() {
    let o = hypercert(&["energy", "compute", "--k", "2", "--mask", "3", "--d", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("energy=6"));
    assert!(out.contains("# tally: (0):1 (1):2 (2):1"), "{out}");
}

#[test]
fn walk_exponent_above_sharp_value_fails_at_half() {
    let o = hypercert(&["walk", "verify", "--k", "5", "--p", "2.57"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let line = out.lines().find(|l| l.contains("k=5 q=1/2 ")).unwrap();
    assert!(line.starts_with("certain-false"), "{line}");
}

#[test]
fn sharp_walk_inequality_holds() {
    assert_eq!(
        code(&hypercert(&[
            "walk", "verify", "--k", "1..6", "--q-grid", "11"
        ])),
        0
    );
}

#[test]
fn undecided_at_cap_exits_two() {
    // 20 bits cannot separate the sides near the equality point
    let o = hypercert(&[
        "--prec",
        "20",
        "--prec-cap",
        "20",
        "ineq",
        "main",
        "--k",
        "40",
        "--grid",
        "1001",
    ]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    assert!(stdout(&o).contains("undecided"));
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    for args in [
        &["walk", "verify", "--k", "1..8", "--q-grid", "21"][..],
        &[
            "energy",
            "random",
            "--d",
            "4",
            "--k",
            "3",
            "--samples",
            "40",
            "--seed",
            "9",
        ][..],
        &[
            "ode",
            "residual",
            "--k",
            "2..6",
            "--samples",
            "20",
            "--seed",
            "4",
        ][..],
        &[
            "walk", "simulate", "--q", "3/10", "--k", "5", "--trials", "300000", "--seed", "2",
        ][..],
    ] {
        let outputs: Vec<String> = ["1", "3", "8"]
            .iter()
            .map(|j| {
                let mut full = vec!["--jobs", j, "--format", "json"];
                full.extend_from_slice(args);
                stdout(&hypercert(&full))
            })
            .collect();
        assert!(!outputs[0].is_empty());
        assert!(outputs.iter().all(|o| *o == outputs[0]), "{args:?}");
    }
}

#[test]
fn json_report_shape() {
    let o = hypercert(&["--format", "json", "pk", "--k", "1..4", "--digits", "8"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["total"], 4);
    assert_eq!(v["summary"]["exact_equality"], 1);
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    assert_eq!(v["records"][0]["verdict"], "exact-equality");
    assert_eq!(v["parameters"]["k"], "1..4");
    assert_eq!(v["margin_digits"], 8);
    assert!(v["command"]
        .as_str()
        .unwrap()
        .starts_with("hypercert pk --k 1..4"));
}

#[test]
fn csv_report_shape() {
    let o = hypercert(&[
        "--format", "csv", "walk", "verify", "--k", "2", "--q-grid", "5",
    ]);
    assert_eq!(code(&o), 0);
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "case");
    assert_eq!(&headers[1], "verdict");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[2][0], "k=2 q=1/2");
    assert_eq!(&rows[2][1], "exact-equality");
    assert_eq!(&rows[1][1], "certain-true");
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let args = ["means", "expand", "--k", "2..3", "--eps", "1/1000"];
    let direct = stdout(&hypercert(&args));
    let mut with_out = vec!["--out", path.to_str().unwrap()];
    with_out.extend_from_slice(&args);
    let o = hypercert(&with_out);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn command_echo_reruns_identically() {
    let first = stdout(&hypercert(&[
        "ineq",
        "legendre",
        "--k",
        "2..3",
        "--samples",
        "4",
        "--seed",
        "11",
    ]));
    let echo = first
        .lines()
        .next()
        .unwrap()
        .strip_prefix("# hypercert ")
        .unwrap();
    let args: Vec<&str> = echo.split_whitespace().collect();
    assert_eq!(stdout(&hypercert(&args)), first);
}

#[test]
fn simulation_report() {
    let o = hypercert(&[
        "walk", "simulate", "--q", "1/2", "--k", "2", "--trials", "100000",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("S_k=0 k=2 q=1/2"));
    assert!(out.contains("exact=3/8"));
    let o = hypercert(&[
        "walk",
        "simulate",
        "--right-prob",
        "1/2",
        "--k",
        "3",
        "--trials",
        "1000",
    ]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0);
    assert!(
        out.contains("S_k=-3 k=3 q=1  ") && out.contains("count=0"),
        "{out}"
    );
}
