mod common;

use std::process::{Command, Output};

use common::fixture_path;

fn icsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icsolve"))
        .args(args)
        .output()
        .expect("run icsolve")
}

fn input(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_golden() {
    let out = icsolve(&[
        "construct",
        "--input",
        &input("groupcast7.icp"),
        "--format",
        "machine",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in [
        "x1+x2+x3",
        "x3+x4+x5",
        "x4+x5+x6",
        "x6+x7",
        "length=4",
        "fallback=false",
        "overall=true",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line}:\n{text}");
    }
}

#[test]
fn verify_golden() {
    let out = icsolve(&[
        "verify",
        "--input",
        &input("bench_row1.icp"),
        "--code",
        &input("bench_row1.code"),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("length=3\n"));
    assert!(text.ends_with("overall=true\n"));
}

#[test]
fn minrank_golden() {
    let out = icsolve(&["minrank", "--input", &input("empty5.icg")]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "minrank=5\nmais=5\ncover_upper=5\nstrip 1\nstrip 2\nstrip 3\nstrip 4\nstrip 5\n\
         row 10000\nrow 01000\nrow 00100\nrow 00010\nrow 00001\n"
    );
}

#[test]
fn compare_golden() {
    let out = icsolve(&[
        "compare",
        "--input",
        &input("groupcast7.icp"),
        "--format",
        "machine",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "l_star=4 field_star=2 l_pm=5 field_pm=2\n");
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    for cmd in ["construct", "reduce", "minrank", "pm-baseline", "cover"] {
        let a = icsolve(&[cmd, "--input", &input("bench_row2.icp"), "--workers", "1"]);
        let b = icsolve(&[cmd, "--input", &input("bench_row2.icp"), "--workers", "4"]);
        let c = icsolve(&[cmd, "--input", &input("bench_row2.icp")]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert_eq!(a.stdout, c.stdout, "{cmd}");
    }
}

#[test]
fn failed_verification_exits_nonzero() {
    let dir = std::env::temp_dir().join(format!("icsolve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let code = dir.join("short.code");
    std::fs::write(&code, "x1+x2\n").unwrap();
    let out = icsolve(&[
        "verify",
        "--input",
        &input("bench_row1.icp"),
        "--code",
        code.to_str().unwrap(),
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("overall=false\n"));
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(icsolve(&["construct"]).status.code(), Some(1));
    assert_eq!(
        icsolve(&["construct", "--input", "/nonexistent.icp"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        icsolve(&["minrank", "--input", &input("empty5.icg"), "--budget", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(icsolve(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(icsolve(&["cover", "--bogus"]).status.code(), Some(2));
}

#[test]
fn reduce_output_names_super_vertices() {
    let out = icsolve(&["graph", "--input", &input("groupcast7.icp")]);
    assert!(out.status.success());
    let graph = stdout(&out);
    assert!(graph.contains("problem unicast-graph"));
    let out = icsolve(&["reduce", "--input", &input("groupcast7.icp")]);
    let text = stdout(&out);
    assert!(text.contains("merge y1 := 1 2\n"), "{text}");
    assert!(text.contains("vertex y4 := 4 5\n"), "{text}");
    assert!(text.contains("edge x7 y1\n"), "{text}");
    assert!(text.ends_with("vertices=5\nexact=false\n"), "{text}");
}
