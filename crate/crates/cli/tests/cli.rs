use std::path::PathBuf;
use std::process::{Command, Output};

fn ott(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ott"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn script(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ott-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const HEADER: &str = "postulate A : Type\npostulate a : A\n";

#[test]
fn postulates_only_exit_zero_and_print_nothing() {
    let p = script("empty.ott", HEADER);
    let o = ott(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn failing_obligation_prints_locus() {
    let p = script(
        "fail.ott",
        &format!("{HEADER}check [x : A] |- refl(A, x) : Id(A, x, a)\n"),
    );
    let o = ott(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("line 3: check: reject at term"), "{out}");
    assert!(out.contains("expected Id(A, x, x), found Id(A, x, a)"), "{out}");
}

#[test]
fn json_records_and_steps() {
    let p = script(
        "ok.ott",
        &format!("{HEADER}check |- refl(A, a) : Id(A, a, a)\ninfer |- refl(A, a)\n"),
    );
    let o = ott(&["--json", "check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    for l in &lines {
        assert!(l.starts_with('{') && l.contains("\"verdict\":\"accept\""), "{l}");
    }
    assert!(lines[1].contains("\"output\":\"Id(A, a, a)\""), "{}", lines[1]);
    let o = ott(&["check", "--steps", p.to_str().unwrap()]);
    assert!(stdout(&o).contains("[steps "));
}

#[test]
fn modes_filter_items() {
    let p = script(
        "modes.ott",
        &format!("{HEADER}check |- a : A\ninfer |- a\nelab symmetry |- A, a, a, refl(A, a)\n"),
    );
    let path = p.to_str().unwrap();
    let count = |mode: &str| {
        stdout(&ott(&[mode, path]))
            .lines()
            .filter(|l| l.starts_with("line"))
            .count()
    };
    assert_eq!(count("check"), 3);
    assert_eq!(count("infer"), 1);
    assert_eq!(count("elab"), 1);
}

#[test]
fn error_exit_codes() {
    let p = script("bad.ott", "postulate A : Type\ncheck |- (\n");
    let o = ott(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.ott:"));
    assert_eq!(ott(&["check", "/nonexistent/x.ott"]).status.code(), Some(3));
    assert_eq!(ott(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(ott(&["--help"]).status.code(), Some(0));
}

#[test]
fn bench_fits_and_validates() {
    let o = ott(&[
        "bench",
        "--family",
        "app-chain",
        "--sizes",
        "64,128,512,2048,8192,16384",
        "--reps",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("app-chain: slope"));
    let o = ott(&["--json", "bench", "--family", "lambda-chain", "--sizes", "64,128"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with('{')));
    assert_eq!(
        ott(&["bench", "--family", "nope", "--sizes", "64"]).status.code(),
        Some(3)
    );
    assert_eq!(
        ott(&["bench", "--family", "app-chain", "--sizes", "128,64"])
            .status
            .code(),
        Some(3)
    );
}
