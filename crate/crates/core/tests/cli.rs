use std::io::Write;
use std::process::{Command, Output, Stdio};

fn numqe(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_numqe"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decide_exit_codes() {
    let o = numqe(&["decide", "--theory", "c-mul", "forall x. exists y. y*y = x"], "");
    assert_eq!((stdout(&o).trim(), o.status.code()), ("TRUE", Some(0)));
    let o = numqe(&["decide", "--theory", "r-mul", "forall x. exists y. y*y = x"], "");
    assert_eq!((stdout(&o).trim(), o.status.code()), ("FALSE", Some(1)));
}

#[test]
fn eliminate_prints_quantifier_free_formula() {
    let o = numqe(&["eliminate", "--theory", "r-mul", "exists x. x*x = y"], "");
    assert_eq!(stdout(&o).trim(), "y = 0 | P(y)");
    assert_eq!(o.status.code(), Some(0));
    let o = numqe(&["eliminate", "--theory", "c-mul", "exists x. x != 0 & x^3 = 2"], "");
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn error_exit_codes() {
    assert_eq!(numqe(&["decide", "--theory", "c-mul", "exists x. (x = 1"], "").status.code(), Some(64));
    assert_eq!(numqe(&["decide", "--theory", "z-add", "exists x. x*x = 1"], "").status.code(), Some(65));
    let cap = numqe(
        &["eliminate", "--theory", "z-add", "--dnf-cap", "3", "exists x. (x = a | x = b) & (x = c | x = d)"],
        "",
    );
    assert_eq!(cap.status.code(), Some(66));
    assert_eq!(numqe(&["decide", "x = 1"], "").status.code(), Some(64));
    assert_eq!(numqe(&["frobnicate"], "").status.code(), Some(64));
}

#[test]
fn batch_from_stdin_uses_worst_exit() {
    let input = "forall x. exists y. y^3 = x\n\n# comment\nexists x. x != 1 & x^2 = 1\n";
    let o = numqe(&["decide", "--theory", "rpos-mul"], input);
    assert_eq!(stdout(&o), "TRUE\nFALSE\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn batch_from_file() {
    let dir = std::env::temp_dir().join(format!("numqe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("input.txt");
    std::fs::write(&path, "exists x. x = 1\nexists x. x =\n").unwrap();
    let o = numqe(&["decide", "--theory", "c-mul", "--file", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(64));
    assert!(stdout(&o).starts_with("TRUE\nERROR"));
    let missing = numqe(&["decide", "--theory", "c-mul", "--file", dir.join("nope").to_str().unwrap()], "");
    assert_eq!(missing.status.code(), Some(64));
}

#[test]
fn json_lines_formats() {
    let o = numqe(&["decide", "--theory", "c-mul", "--format", "json-lines", "exists x. x^2 = 2"], "");
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["theory"], "c-mul");
    assert_eq!(v["qf"], "true");

    let o = numqe(&["trace", "--theory", "r-mul", "--format", "json-lines", "exists x. x*x = y"], "");
    let steps: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!steps.is_empty());
    for (i, s) in steps.iter().enumerate() {
        assert_eq!(s["step"], i + 1);
        assert!(s["rule"].is_string() && s["before"].is_string() && s["after"].is_string());
    }
    assert_eq!(steps.last().unwrap()["after"], "y = 0 | P(y)");
}

#[test]
fn axioms_and_counterexamples() {
    let o = numqe(&["axioms", "--theory", "c-mul", "--n-max", "3"], "");
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("M8,3: ")));
    assert_eq!(o.status.code(), Some(0));

    let o = numqe(&["counterexamples", "--kind", "Q_OVER_M"], "");
    assert!(stdout(&o).trim_end().ends_with("RESULT REPRODUCED"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn oracle_check_is_deterministic() {
    let args = ["oracle-check", "--theory", "z-add", "--samples", "50", "--seed", "9"];
    let (a, b) = (numqe(&args, ""), numqe(&args, ""));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("0 disagree"));
}
