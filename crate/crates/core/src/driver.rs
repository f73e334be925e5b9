//! Running scripts: one record per obligation, in file order.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::checker::{check, check_signature, infer_metered, CheckReport, Judgement, Verdict};
use crate::derived::{run_call, Elaborated};
use crate::parser::{parse_script, print, Goal, ItemKind, NamedContext, ParseError};
use crate::syntax::{Context, Signature};

/// Which items a run processes. Postulates and definitions are always
/// read; `Check` also runs every `infer` and `elab` item.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Check,
    Infer,
    Elab,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Accept,
    Reject,
}

/// One verdict line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub line: usize,
    /// `check`, `infer`, `elab`, `def` or `postulate`.
    pub item: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub verdict: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<String>,
    pub steps: u64,
    pub nanoseconds: u128,
    /// Inferred type, or elaborated term.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Type an elaborated term was checked at.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stated_type: Option<String>,
}

impl Record {
    fn new(line: usize, item: &'static str) -> Record {
        Record {
            line,
            item,
            name: None,
            verdict: Outcome::Accept,
            reason: None,
            locus: None,
            steps: 0,
            nanoseconds: 0,
            output: None,
            stated_type: None,
        }
    }

    fn report(mut self, r: &CheckReport, names: &[String]) -> Record {
        self.steps = r.steps;
        self.nanoseconds = r.wall_time.as_nanos();
        if let Verdict::Reject(e) = &r.verdict {
            self.verdict = Outcome::Reject;
            self.reason = Some(e.reason.render(names));
            self.locus = Some(e.locus.to_string());
        }
        self
    }

    pub fn accepted(&self) -> bool {
        self.verdict == Outcome::Accept
    }

    /// The text form: one line, plus indented output lines.
    pub fn render(&self, show_steps: bool) -> String {
        let mut s = format!("line {}: {}", self.line, self.item);
        if let Some(n) = &self.name {
            let _ = write!(s, " {n}");
        }
        match self.verdict {
            Outcome::Accept => s.push_str(": accept"),
            Outcome::Reject => {
                s.push_str(": reject");
                if let Some(l) = self.locus.as_ref().filter(|l| !l.is_empty()) {
                    let _ = write!(s, " at {l}");
                }
                if let Some(r) = &self.reason {
                    let _ = write!(s, ": {r}");
                }
            }
        }
        if show_steps {
            let _ = write!(s, " [steps {}, {} ns]", self.steps, self.nanoseconds);
        }
        if let Some(o) = &self.output {
            let _ = write!(s, "\n  {o}");
        }
        if let Some(t) = &self.stated_type {
            let _ = write!(s, "\n  : {t}");
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{error}")]
    Parse { path: String, error: ParseError },
}

/// Reads, parses and runs a script file.
pub fn run_script(path: &Path, mode: Mode) -> Result<Vec<Record>, DriverError> {
    let shown = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|source| DriverError::Io {
        path: shown.clone(),
        source,
    })?;
    run_source(&src, mode).map_err(|error| DriverError::Parse { path: shown, error })
}

pub fn run_source(src: &str, mode: Mode) -> Result<Vec<Record>, ParseError> {
    let script = parse_script(src)?;
    let mut out = Vec::new();
    let Ok(sig) = script.signature() else {
        unreachable!("duplicate declarations are parse errors")
    };
    let report = check_signature(&sig);
    if let Some(rej) = report.rejection() {
        let line = script
            .items
            .iter()
            .find(|i| match &i.kind {
                ItemKind::Postulate { name, .. } => {
                    rej.locus.to_string().starts_with(&format!("sig[{name}]"))
                }
                _ => false,
            })
            .map_or(1, |i| i.line);
        out.push(Record::new(line, "postulate").report(&report, &[]));
        return Ok(out);
    }
    for item in &script.items {
        let rec = match (&item.kind, mode) {
            (ItemKind::Def { name, ty, body }, Mode::Check) => {
                let mut r = match ty {
                    Some(ty) => Record::new(item.line, "def").report(
                        &check(
                            &sig,
                            &Judgement::HasType(Context::new(), body.clone(), ty.clone()),
                        ),
                        &[],
                    ),
                    None => infer_record(&sig, item.line, "def", &NamedContext::default(), body, false),
                };
                r.name = Some(name.clone());
                r
            }
            (ItemKind::Check { ctx, goal }, Mode::Check) => {
                let c = ctx.context.clone();
                let j = match goal {
                    Goal::Ctxt => Judgement::CtxtWF(c),
                    Goal::Type(t) => Judgement::TypeWF(c, t.clone()),
                    Goal::Term { term, ty } => Judgement::HasType(c, term.clone(), ty.clone()),
                };
                Record::new(item.line, "check").report(&check(&sig, &j), &ctx.names)
            }
            (ItemKind::Infer { ctx, term }, Mode::Check | Mode::Infer) => {
                infer_record(&sig, item.line, "infer", ctx, term, true)
            }
            (ItemKind::Elab { ctx, call }, Mode::Check | Mode::Elab) => {
                elab_record(&sig, item.line, ctx, call)
            }
            _ => continue,
        };
        out.push(rec);
    }
    Ok(out)
}

fn infer_record(
    sig: &Signature,
    line: usize,
    item: &'static str,
    ctx: &NamedContext,
    term: &crate::syntax::Term,
    show: bool,
) -> Record {
    let start = Instant::now();
    let (res, steps) = infer_metered(sig, &ctx.context, term);
    let mut r = Record::new(line, item);
    r.steps = steps;
    r.nanoseconds = start.elapsed().as_nanos();
    match res {
        Ok(ty) if show => r.output = Some(print(&ty, &ctx.names)),
        Ok(_) => {}
        Err(e) => {
            r.verdict = Outcome::Reject;
            r.reason = Some(e.reason.render(&ctx.names));
            r.locus = Some(e.locus.to_string());
        }
    }
    r
}

fn elab_record(sig: &Signature, line: usize, ctx: &NamedContext, call: &crate::parser::ElabCall) -> Record {
    let start = Instant::now();
    let mut r = Record::new(line, "elab");
    r.name = Some(call.elaborator.name().to_string());
    let ctx_report = check(sig, &Judgement::CtxtWF(ctx.context.clone()));
    if !ctx_report.accepted() {
        return r.report(&ctx_report, &ctx.names);
    }
    match run_call(sig, &ctx.context, call) {
        Ok(Elaborated::Type { ty, .. }) => r.output = Some(format!("{} Type", print(&ty, &ctx.names))),
        Ok(Elaborated::Term(res)) => {
            r.output = Some(print(&res.term, &ctx.names));
            r.stated_type = Some(print(&res.stated_type, &ctx.names));
            r.steps = res.term.size() as u64;
        }
        Err(e) => {
            r.verdict = Outcome::Reject;
            r.reason = Some(e.to_string());
        }
    }
    r.nanoseconds = start.elapsed().as_nanos();
    r
}

/// 0 if every record accepts, 1 otherwise.
pub fn exit_code(records: &[Record]) -> i32 {
    if records.iter().all(Record::accepted) {
        0
    } else {
        1
    }
}
