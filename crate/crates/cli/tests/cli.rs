use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lacunary() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lacunary"));
    c.env_remove("LACUNARY_MAX_SPAN");
    c
}

fn run(args: &[&str]) -> Output {
    lacunary().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn factors_expression() {
    let o = run(&["factor", "-d", "1", "x^1001+x^1000+x^2+x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "unit: 1\nx^1\n(x + 1)^2\n");
}

#[test]
fn parse_error_exit_code() {
    let o = run(&["factor", "-d", "1", "x^^3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('2'));
}

#[test]
fn span_limit_exit_code() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "x^2000000 + x + 1").unwrap();
    let path = file.path().to_str().unwrap();
    let o = run(&["factor", "-d", "1", "--strategy", "paranoid", path]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["factor", "-d", "1", path]);
    assert_eq!(o.status.code(), Some(0));

    let o = lacunary()
        .env("LACUNARY_MAX_SPAN", "100")
        .args([
            "factor",
            "-d",
            "1",
            "--strategy",
            "paranoid",
            "--max-span",
            "100000",
            "x^500 - 1",
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_output() {
    let o = run(&[
        "factor",
        "-d",
        "2",
        "--format",
        "json",
        "--stats",
        "--",
        "-6*x^3 + 6*x",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["unit"], "-6");
    assert_eq!(v["x_power"], "1");
    let factors = v["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 2);
    assert_eq!(factors[0]["coeffs"], serde_json::json!(["-1", "1"]));
    assert_eq!(factors[0]["mult"], 1);
    for key in ["total_ms", "noncyclotomic_ms", "cyclotomic_ms", "gcd_ms"] {
        assert!(v["stats"][key].is_number(), "{key}");
    }
}

#[test]
fn reads_standard_input() {
    let mut child = lacunary()
        .args(["factor", "-d", "2", "--verify"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x^4 - 1\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "unit: 1\nx^0\n(x - 1)^1\n(x + 1)^1\n(x^2 + 1)^1\n"
    );
}

#[test]
fn generate_then_factor() {
    let o = run(&["generate", "--bench", "1/10000", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let poly = stdout(&o);
    assert!(poly.contains("x^"));
    let again = run(&["generate", "--bench", "0.0001", "--seed", "4"]);
    assert_eq!(stdout(&again), poly);
    let o = run(&["factor", "-d", "1", "--verify", poly.trim()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rejects_zero_degree_and_zero_polynomial() {
    assert_eq!(run(&["factor", "-d", "0", "x + 1"]).status.code(), Some(2));
    assert_eq!(run(&["factor", "-d", "1", "x - x"]).status.code(), Some(2));
}
