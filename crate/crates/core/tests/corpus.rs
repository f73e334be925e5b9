//! Golden scripts: recorded verdicts, reproduced by the driver and, where
//! the judgement is small enough, by the enumeration oracle.

use std::fs;
use std::path::{Path, PathBuf};

use ott::driver::{run_source, Mode, Outcome};
use ott::oracle::Oracle;
use ott::parser::{parse_script, print_script, Goal, ItemKind};
use ott::Judgement;

fn scripts() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ott"))
        .collect();
    v.sort();
    assert!(!v.is_empty());
    v
}

/// `line N: item [name]: verdict`, dropping reasons.
fn verdict_lines(src: &str) -> Vec<String> {
    run_source(src, Mode::Check)
        .unwrap()
        .iter()
        .map(|r| {
            let v = if r.verdict == Outcome::Accept {
                "accept"
            } else {
                "reject"
            };
            match &r.name {
                Some(n) => format!("line {}: {} {n}: {v}", r.line, r.item),
                None => format!("line {}: {}: {v}", r.line, r.item),
            }
        })
        .collect()
}

#[test]
fn recorded_verdicts() {
    for path in scripts() {
        let src = fs::read_to_string(&path).unwrap();
        let expected = fs::read_to_string(path.with_extension("expected")).unwrap();
        let expected: Vec<&str> = expected.lines().collect();
        assert_eq!(verdict_lines(&src), expected, "{}", path.display());
    }
}

#[test]
fn oracle_agrees_on_small_items() {
    let mut decided = 0;
    for path in scripts() {
        let src = fs::read_to_string(&path).unwrap();
        let script = parse_script(&src).unwrap();
        let sig = script.signature().unwrap();
        if !ott::checker::check_signature(&sig).accepted() {
            continue;
        }
        let mut oracle = Oracle::new(&sig, 10);
        for item in &script.items {
            let ItemKind::Check { ctx, goal } = &item.kind else {
                continue;
            };
            let c = ctx.context.clone();
            let j = match goal {
                Goal::Ctxt => Judgement::CtxtWF(c),
                Goal::Type(t) => Judgement::TypeWF(c, t.clone()),
                Goal::Term { term, ty } => Judgement::HasType(c, term.clone(), ty.clone()),
            };
            let Ok(want) = oracle.derivable(&j) else {
                continue;
            };
            decided += 1;
            assert_eq!(
                ott::check(&sig, &j).accepted(),
                want,
                "{}:{}",
                path.display(),
                item.line
            );
        }
    }
    assert!(decided >= 20, "only {decided} items within the oracle's range");
}

#[test]
fn printed_scripts_reparse_to_the_same_items() {
    for path in scripts() {
        let src = fs::read_to_string(&path).unwrap();
        let script = parse_script(&src).unwrap();
        let printed = print_script(&script);
        let again = parse_script(&printed).unwrap_or_else(|e| panic!("{e}\n{printed}"));
        assert_eq!(script.kinds(), again.kinds(), "{}", path.display());
    }
}
