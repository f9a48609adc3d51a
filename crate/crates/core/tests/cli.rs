use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logbehave"))
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

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn eval_zeta_two() {
    let o = run(&["eval", "zeta", "2"]);
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).starts_with("1.6449340668482264364724151666"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn eval_first_bessel_zero() {
    let o = run(&["eval", "bessel_zero", "--mu", "0", "--k", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], "logbehave/1");
    assert!(v["value"].as_str().unwrap().starts_with("2.4048255576957727686"));
    assert_eq!(v["error"]["kind"], "absolute");
}

#[test]
fn eval_domain_violation_exits_2() {
    let o = run(&["eval", "theta", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("x > 1"));
    assert_eq!(code(&run(&["eval", "bessel_zeta", "2"])), 2);
    assert_eq!(code(&run(&["eval", "nope", "2"])), 2);
    assert_eq!(code(&run(&["--precision", "16", "eval", "zeta", "2"])), 2);
}

#[test]
fn gen_tables() {
    let o = run(&["gen", "lasalle_a", "1", "5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let col: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(col, ["2", "1", "2", "8", "52"]);

    let o = run(&["gen", "bernoulli", "0", "4", "--format", "json"]);
    let v = json(&o);
    let vals: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(vals, ["1", "-1/2", "1/6", "0", "-1/30"]);

    let o = run(&["gen", "a_mu", "--mu", "1/2", "1", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "index,value\n1,2\n2,4/3\n3,32/9\n");

    let o = run(&["gen", "narayana", "1", "3", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "r,k,coefficient\n1,1,1\n2,1,1\n2,2,1\n3,1,1\n3,2,3\n3,3,1\n"
    );
}

#[test]
fn gen_errors_exit_2() {
    assert_eq!(code(&run(&["gen", "nope", "1", "3"])), 2);
    assert_eq!(code(&run(&["gen", "a_mu", "1", "3"])), 2);
    assert_eq!(code(&run(&["gen", "a_mu", "--mu", "-1", "1", "3"])), 2);
    assert_eq!(code(&run(&["gen", "catalan", "5", "1"])), 2);
    assert_eq!(code(&run(&["gen", "catalan", "0", "3"])), 2);
}

#[test]
fn verify_a_mu_default_range() {
    let o = run(&["verify", "a_mu", "--mu", "1", "--max-n", "108", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["passed"], true);
    let reports = v["reports"].as_array().unwrap();
    let root = &reports[1];
    assert_eq!(root["property"], "nth_root_increasing");
    assert_eq!(root["range"]["start"], 2);
    assert_eq!(root["range"]["end"], 108);
    assert_eq!(root["method"], "exact_bigint");
    assert_eq!(reports[2]["gating"], false);
    assert_eq!(reports[2]["notes"]["stated_threshold"], 101);
}

#[test]
fn verify_bernoulli_exits_0() {
    let o = run(&["verify", "bernoulli", "--max-n", "100"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("PASSED\n"));
}

#[test]
fn verify_conjectures_never_gates() {
    let o = run(&[
        "--tolerance",
        "1e-20",
        "--precision",
        "128",
        "verify",
        "conjectures",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["gating"], false);
        assert!(!r["notes"]["samples"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&run(&["verify", "nope"])), 2);
    assert_eq!(code(&run(&["verify", "theta_monotone", "6", "5", "1"])), 2);
    assert_eq!(code(&run(&["verify", "theta_monotone", "6", "7"])), 2);
    assert_eq!(code(&run(&["verify", "a_mu", "--mu", "-2"])), 2);
    assert_eq!(code(&run(&["verify", "zero_bounds", "--mu", "-1.5"])), 2);
}

#[test]
fn exact_output_is_byte_identical() {
    let args = ["verify", "b", "--max-n", "30", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn plotdata_row_counts() {
    let o = run(&["plotdata", "theta", "6", "50", "0.5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x,value"));
    assert_eq!(lines.count(), 89);

    let o = run(&[
        "--tolerance",
        "1e-20",
        "--precision",
        "128",
        "plotdata",
        "theta_mu",
        "--mu",
        "0",
        "150",
        "300",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 152);
}

#[test]
fn plotdata_bell_root_is_monotone() {
    let o = run(&[
        "--tolerance",
        "1e-20",
        "--precision",
        "128",
        "plotdata",
        "bell_root",
        "1",
        "30",
        "0.25",
    ]);
    assert_eq!(code(&o), 0);
    let ys: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(ys.len(), 117);
    assert!(ys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn plotdata_bad_grid_exits_2() {
    assert_eq!(code(&run(&["plotdata", "theta", "50", "6", "0.5"])), 2);
    assert_eq!(code(&run(&["plotdata", "theta", "6", "50", "0"])), 2);
    assert_eq!(code(&run(&["plotdata", "theta_mu", "6", "50", "1"])), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("logbehave-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gen.csv");
    let o = run(&[
        "gen",
        "catalan",
        "1",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "index,value\n1,1\n2,2\n3,5\n4,14\n"
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verify"));
}
