//! Deciding `⊢ Γ Ctxt`, `Γ ⊢ σ Type` and `Γ ⊢ a ∈ σ`.
//!
//! The top-level [`check`] runs three stages: the context, then the type
//! under the promise that the context is well formed, then the term under
//! the promise that the type is a type. Inside the last two stages a rule's
//! premises are only rechecked when the promise does not already imply them,
//! so every case does one comparison of the given type against the shape its
//! rule dictates plus a fixed number of recursive calls:
//!
//! | term            | recursive calls |
//! |-----------------|-----------------|
//! | `lam`, `refl`, `succ` | 1 |
//! | `app`, `natrec` | 4 |
//! | `idrec`         | 6 |
//! | `betaconv`, `idconv`, `natconv_*`, variables, constants, `zero` | 0 |
//!
//! A type former costs 2 (`Pi`) or 3 (`Id`) calls. Nothing is ever
//! normalised; all equality is syntactic.

mod shape;

use std::borrow::Cow;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::grow;
use crate::subst::{weaken, ContextMorphism, SubstEnv};
use crate::syntax::{Context, Decl, Kind, Signature, Term};
use shape::Shape;

/// The three statement forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgement {
    CtxtWF(Context),
    TypeWF(Context, Term),
    HasType(Context, Term, Term),
}

impl Judgement {
    pub fn context(&self) -> &Context {
        match self {
            Judgement::CtxtWF(c) | Judgement::TypeWF(c, _) | Judgement::HasType(c, _, _) => c,
        }
    }

    /// Total number of nodes in the context and the terms.
    pub fn size(&self) -> usize {
        match self {
            Judgement::CtxtWF(c) => c.size(),
            Judgement::TypeWF(c, s) => c.size() + s.size(),
            Judgement::HasType(c, a, s) => c.size() + a.size() + s.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Reason {
    #[error("variable #{index} is not bound in a context of length {len}")]
    Unbound { index: usize, len: usize },
    #[error("`{0}` is not declared")]
    Undeclared(String),
    #[error("`{0}` is an atomic type, not a term")]
    TypeConstantAsTerm(String),
    #[error("`{0}` is a term constant, not a type")]
    TermConstantAsType(String),
    #[error("{} is not a type", kind_name(*.0))]
    NotAType(Kind),
    #[error("{} is a type, not a term", kind_name(*.0))]
    NotATerm(Kind),
    #[error("type mismatch for {}: expected {expected}, found {found}", kind_name(*.rule))]
    Mismatch {
        rule: Kind,
        expected: Box<Printed>,
        found: Box<Printed>,
    },
}

impl Reason {
    /// Like `Display`, naming the outermost context entries `names`.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Reason::Mismatch {
                rule,
                expected,
                found,
            } => format!(
                "type mismatch for {}: expected {}, found {}",
                kind_name(*rule),
                expected.render(names),
                found.render(names)
            ),
            other => other.to_string(),
        }
    }
}

/// A term in a rejection message, with the number of variables in scope
/// where it occurred. Large terms keep only their size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Printed {
    term: Option<Term>,
    size: usize,
    scope: usize,
}

impl Printed {
    fn new(t: &Term, scope: usize) -> Printed {
        let size = t.size();
        Printed {
            term: (size <= PRINT_LIMIT).then(|| t.clone()),
            size,
            scope,
        }
    }

    pub fn term(&self) -> Option<&Term> {
        self.term.as_ref()
    }

    /// Prints with `names` for the outermost variables and fresh names for
    /// the rest of the scope.
    pub fn render(&self, names: &[String]) -> String {
        let Some(t) = &self.term else {
            return format!("<{}-node term>", self.size);
        };
        let mut scope: Vec<String> = names.iter().take(self.scope).cloned().collect();
        let mut taken: std::collections::HashSet<String> = scope.iter().cloned().collect();
        taken.extend(t.constants().iter().map(|c| c.to_string()));
        while scope.len() < self.scope {
            let n = crate::parser::fresh_name("v", &taken);
            taken.insert(n.clone());
            scope.push(n);
        }
        crate::parser::print(t, &scope)
    }
}

impl fmt::Display for Printed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// Surface keyword of each constructor, for messages.
pub fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Var => "a variable",
        Kind::Const => "a constant",
        Kind::Pi => "Pi",
        Kind::Lambda => "lam",
        Kind::App => "app",
        Kind::BetaConv => "betaconv",
        Kind::Id => "Id",
        Kind::Refl => "refl",
        Kind::IdRec => "idrec",
        Kind::IdConv => "idconv",
        Kind::NatTy => "Nat",
        Kind::Zero => "zero",
        Kind::Succ => "succ",
        Kind::NatRec => "natrec",
        Kind::NatConvZero => "natconv_zero",
        Kind::NatConvSucc => "natconv_succ",
    }
}

/// Path from the root of the judgement to the failing subterm, such as
/// `ctx[1]/codomain` or `term/fun/arg`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Locus(pub Vec<Cow<'static, str>>);

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            f.write_str(seg)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{reason} (at {locus})")]
pub struct Rejection {
    pub reason: Reason,
    pub locus: Locus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// Checker calls, plus nodes visited by comparisons, plus nodes built
    /// when an expected type has to be materialized. Deterministic.
    pub steps: u64,
    pub wall_time: Duration,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match &self.verdict {
            Verdict::Accept => None,
            Verdict::Reject(r) => Some(r),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Type,
    Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    /// Entry into one recursive check; `depth` 1 is a stage root.
    Call { depth: usize, form: Form, head: Kind },
    /// A comparison of a given type against a rule's expected shape, made
    /// by the call at `depth`.
    Compare { depth: usize },
}

/// Direct recursive calls and comparisons made by the first call of the
/// given form at depth 1 (a stage root).
pub fn root_counts(trace: &[TraceEvent], form: Form) -> Option<(usize, usize)> {
    let start = trace
        .iter()
        .position(|e| matches!(e, TraceEvent::Call { depth: 1, form: f, .. } if *f == form))?;
    let (mut calls, mut compares) = (0, 0);
    for e in &trace[start + 1..] {
        match *e {
            TraceEvent::Call { depth: 1, .. } => break,
            TraceEvent::Call { depth: 2, .. } => calls += 1,
            TraceEvent::Compare { depth: 1 } => compares += 1,
            _ => {}
        }
    }
    Some((calls, compares))
}

/// Types up to this many nodes are printed in mismatch messages.
const PRINT_LIMIT: usize = 400;

type Check = Result<(), Rejection>;

struct Checker<'s, 'a> {
    sig: &'s Signature,
    ctx: Vec<Cow<'a, Term>>,
    steps: u64,
    depth: usize,
    path: Vec<Cow<'static, str>>,
    trace: Option<Vec<TraceEvent>>,
}

impl<'s, 'a> Checker<'s, 'a> {
    fn new(sig: &'s Signature, traced: bool) -> Checker<'s, 'a> {
        Checker {
            sig,
            ctx: Vec::new(),
            steps: 0,
            depth: 0,
            path: Vec::new(),
            trace: traced.then(Vec::new),
        }
    }

    fn reject(&self, reason: Reason) -> Rejection {
        Rejection {
            reason,
            locus: Locus(self.path.clone()),
        }
    }

    fn enter(&mut self, seg: impl Into<Cow<'static, str>>, form: Form, head: Kind) {
        self.steps += 1;
        self.depth += 1;
        self.path.push(seg.into());
        let depth = self.depth;
        if let Some(t) = &mut self.trace {
            t.push(TraceEvent::Call { depth, form, head });
        }
    }

    fn leave(&mut self) {
        self.depth -= 1;
        self.path.pop();
    }

    fn under<R>(&mut self, entries: Vec<Cow<'a, Term>>, f: impl FnOnce(&mut Self) -> R) -> R {
        let n = entries.len();
        self.ctx.extend(entries);
        let r = f(self);
        self.ctx.truncate(self.ctx.len() - n);
        r
    }

    fn type_star(&mut self, seg: impl Into<Cow<'static, str>>, sigma: &'a Term) -> Check {
        self.enter(seg, Form::Type, sigma.kind());
        let r = grow(|| self.type_inner(sigma));
        self.leave();
        r
    }

    fn term_star(&mut self, seg: impl Into<Cow<'static, str>>, a: &'a Term, sigma: &Term) -> Check {
        if let Term::Succ(_) = a {
            return self.succ_chain(seg.into(), a, sigma);
        }
        self.enter(seg, Form::Term, a.kind());
        let r = grow(|| self.term_inner(a, sigma));
        self.leave();
        r
    }

    /// `term_star` on a run of `succ` nodes, as a loop: numerals are the one
    /// place where very deep terms are routine.
    fn succ_chain(&mut self, mut seg: Cow<'static, str>, a: &'a Term, sigma: &Term) -> Check {
        let nat = Term::NatTy;
        let mut expected = sigma;
        let mut cur = a;
        let mut entered = 0;
        let r = loop {
            self.enter(seg, Form::Term, cur.kind());
            entered += 1;
            let Term::Succ(pred) = cur else {
                break grow(|| self.term_inner(cur, expected));
            };
            if let Err(e) = self.compare(Kind::Succ, &Shape::Exact(&nat), expected) {
                break Err(e);
            }
            seg = Cow::Borrowed("pred");
            expected = &nat;
            cur = pred;
        };
        for _ in 0..entered {
            self.leave();
        }
        r
    }

    fn type_inner(&mut self, sigma: &'a Term) -> Check {
        match sigma {
            Term::Pi { domain, codomain } => {
                self.type_star("domain", domain)?;
                self.under(vec![Cow::Borrowed(&**domain)], |c| {
                    c.type_star("codomain", codomain)
                })
            }
            Term::Id { over, lhs, rhs } => {
                self.type_star("over", over)?;
                self.term_star("lhs", lhs, over)?;
                self.term_star("rhs", rhs, over)
            }
            Term::NatTy => Ok(()),
            Term::Const(c) => match self.sig.get(c) {
                Some(Decl::Type) => Ok(()),
                Some(Decl::Constant(_)) => Err(self.reject(Reason::TermConstantAsType(c.to_string()))),
                None => Err(self.reject(Reason::Undeclared(c.to_string()))),
            },
            other => Err(self.reject(Reason::NotAType(other.kind()))),
        }
    }

    fn compare(&mut self, rule: Kind, expected: &Shape<'_>, sigma: &Term) -> Check {
        let depth = self.depth;
        if let Some(t) = &mut self.trace {
            t.push(TraceEvent::Compare { depth });
        }
        if expected.matches(sigma, &mut self.steps) {
            return Ok(());
        }
        Err(self.mismatch(rule, expected, sigma))
    }

    fn mismatch(&self, rule: Kind, expected: &Shape<'_>, sigma: &Term) -> Rejection {
        let n = expected.size();
        let scope = self.ctx.len();
        let expected = if n <= PRINT_LIMIT {
            Printed::new(&expected.materialize(), scope)
        } else {
            Printed {
                term: None,
                size: n,
                scope,
            }
        };
        self.reject(Reason::Mismatch {
            rule,
            expected: Box::new(expected),
            found: Box::new(Printed::new(sigma, scope)),
        })
    }

    fn owned(&mut self, t: Term) -> Term {
        self.steps += t.size() as u64;
        t
    }

    fn term_inner(&mut self, a: &'a Term, sigma: &Term) -> Check {
        let nat = Term::NatTy;
        match a {
            Term::Var(i) => {
                let len = self.ctx.len();
                if *i >= len {
                    return Err(self.reject(Reason::Unbound { index: *i, len }));
                }
                let depth = self.depth;
                if let Some(t) = &mut self.trace {
                    t.push(TraceEvent::Compare { depth });
                }
                let entry: &Term = &self.ctx[len - 1 - i];
                if Shape::Weakened(entry, i + 1).matches(sigma, &mut self.steps) {
                    return Ok(());
                }
                let entry: &Term = &self.ctx[len - 1 - i];
                Err(self.mismatch(Kind::Var, &Shape::Weakened(entry, i + 1), sigma))
            }
            Term::Const(c) => match self.sig.get(c) {
                Some(Decl::Constant(ty)) => self.compare(Kind::Const, &Shape::Exact(ty), sigma),
                Some(Decl::Type) => Err(self.reject(Reason::TypeConstantAsTerm(c.to_string()))),
                None => Err(self.reject(Reason::Undeclared(c.to_string()))),
            },
            Term::Pi { .. } | Term::Id { .. } | Term::NatTy => Err(self.reject(Reason::NotATerm(a.kind()))),
            Term::Lambda {
                domain,
                codomain,
                body,
            } => {
                let expected = Shape::node(Kind::Pi, vec![Shape::Exact(domain), Shape::Exact(codomain)]);
                self.compare(Kind::Lambda, &expected, sigma)?;
                self.under(vec![Cow::Borrowed(&**domain)], |c| {
                    c.term_star("body", body, codomain)
                })
            }
            Term::App {
                domain,
                codomain,
                fun,
                arg,
            } => {
                self.compare(Kind::App, &Shape::Subst(codomain, SubstEnv::single(arg)), sigma)?;
                self.type_star("domain", domain)?;
                self.under(vec![Cow::Borrowed(&**domain)], |c| {
                    c.type_star("codomain", codomain)
                })?;
                let pi = self.owned(Term::pi((**domain).clone(), (**codomain).clone()));
                self.term_star("fun", fun, &pi)?;
                self.term_star("arg", arg, domain)
            }
            Term::BetaConv {
                domain,
                codomain,
                arg,
                body,
            } => {
                let expected = Shape::node(
                    Kind::Id,
                    vec![
                        Shape::Subst(codomain, SubstEnv::single(arg)),
                        Shape::node(
                            Kind::App,
                            vec![
                                Shape::Exact(domain),
                                Shape::Exact(codomain),
                                Shape::node(
                                    Kind::Lambda,
                                    vec![Shape::Exact(domain), Shape::Exact(codomain), Shape::Exact(body)],
                                ),
                                Shape::Exact(arg),
                            ],
                        ),
                        Shape::Subst(body, SubstEnv::single(arg)),
                    ],
                );
                self.compare(Kind::BetaConv, &expected, sigma)
            }
            Term::Refl { over, point } => {
                let expected = Shape::node(
                    Kind::Id,
                    vec![Shape::Exact(over), Shape::Exact(point), Shape::Exact(point)],
                );
                self.compare(Kind::Refl, &expected, sigma)?;
                self.term_star("point", point, over)
            }
            Term::IdRec {
                over,
                motive,
                lhs,
                rhs,
                path,
                base,
            } => {
                let env = SubstEnv::borrowed(&[&**lhs, &**rhs, &**path], 0);
                self.compare(Kind::IdRec, &Shape::Subst(motive, env), sigma)?;
                self.type_star("over", over)?;
                let a1 = self.owned(weaken(over, 1));
                let id = self.owned(Term::id(weaken(over, 2), Term::var(1), Term::var(0)));
                self.under(
                    vec![Cow::Borrowed(&**over), Cow::Owned(a1), Cow::Owned(id)],
                    |c| c.type_star("motive", motive),
                )?;
                self.term_star("lhs", lhs, over)?;
                self.term_star("rhs", rhs, over)?;
                let path_ty = self.owned(Term::id((**over).clone(), (**lhs).clone(), (**rhs).clone()));
                self.term_star("path", path, &path_ty)?;
                let diag = SubstEnv::new(
                    vec![
                        Cow::Owned(Term::var(0)),
                        Cow::Owned(Term::var(0)),
                        Cow::Owned(Term::refl(weaken(over, 1), Term::var(0))),
                    ],
                    1,
                );
                let base_ty = diag.apply_metered(motive, &mut self.steps);
                self.under(vec![Cow::Borrowed(&**over)], |c| {
                    c.term_star("base", base, &base_ty)
                })
            }
            Term::IdConv {
                over,
                motive,
                point,
                base,
            } => {
                let refl = self.owned(Term::refl((**over).clone(), (**point).clone()));
                let expected = Shape::node(
                    Kind::Id,
                    vec![
                        Shape::Subst(motive, SubstEnv::borrowed(&[&**point, &**point, &refl], 0)),
                        Shape::node(
                            Kind::IdRec,
                            vec![
                                Shape::Exact(over),
                                Shape::Exact(motive),
                                Shape::Exact(point),
                                Shape::Exact(point),
                                Shape::Exact(&refl),
                                Shape::Exact(base),
                            ],
                        ),
                        Shape::Subst(base, SubstEnv::single(point)),
                    ],
                );
                self.compare(Kind::IdConv, &expected, sigma)
            }
            Term::Zero => self.compare(Kind::Zero, &Shape::Exact(&nat), sigma),
            Term::Succ(pred) => {
                self.compare(Kind::Succ, &Shape::Exact(&nat), sigma)?;
                self.term_star("pred", pred, &nat)
            }
            Term::NatRec {
                motive,
                zcase,
                scase,
                scrutinee,
            } => {
                self.compare(
                    Kind::NatRec,
                    &Shape::Subst(motive, SubstEnv::single(scrutinee)),
                    sigma,
                )?;
                self.under(vec![Cow::Owned(Term::NatTy)], |c| c.type_star("motive", motive))?;
                let zero = Term::Zero;
                let z_ty = SubstEnv::single(&zero).apply_metered(motive, &mut self.steps);
                self.term_star("zcase", zcase, &z_ty)?;
                let step = SubstEnv::new(vec![Cow::Owned(Term::succ(Term::var(1)))], 2);
                let s_ty = step.apply_metered(motive, &mut self.steps);
                self.under(vec![Cow::Owned(Term::NatTy), Cow::Borrowed(&**motive)], |c| {
                    c.term_star("scase", scase, &s_ty)
                })?;
                self.term_star("scrutinee", scrutinee, &nat)
            }
            Term::NatConvZero { motive, zcase, scase } => {
                let zero = Term::Zero;
                let expected = Shape::node(
                    Kind::Id,
                    vec![
                        Shape::Subst(motive, SubstEnv::single(&zero)),
                        Shape::node(
                            Kind::NatRec,
                            vec![
                                Shape::Exact(motive),
                                Shape::Exact(zcase),
                                Shape::Exact(scase),
                                Shape::Exact(&zero),
                            ],
                        ),
                        Shape::Exact(zcase),
                    ],
                );
                self.compare(Kind::NatConvZero, &expected, sigma)
            }
            Term::NatConvSucc {
                motive,
                zcase,
                scase,
                pred,
            } => {
                let succ = self.owned(Term::succ((**pred).clone()));
                let rec = self.owned(Term::natrec(
                    (**motive).clone(),
                    (**zcase).clone(),
                    (**scase).clone(),
                    (**pred).clone(),
                ));
                let expected = Shape::node(
                    Kind::Id,
                    vec![
                        Shape::Subst(motive, SubstEnv::single(&succ)),
                        Shape::node(
                            Kind::NatRec,
                            vec![
                                Shape::Exact(motive),
                                Shape::Exact(zcase),
                                Shape::Exact(scase),
                                Shape::Exact(&succ),
                            ],
                        ),
                        Shape::Subst(scase, SubstEnv::borrowed(&[&**pred, &rec], 0)),
                    ],
                );
                self.compare(Kind::NatConvSucc, &expected, sigma)
            }
        }
    }

    fn context(&mut self, ctx: &'a Context) -> Check {
        self.ctx.clear();
        for (i, entry) in ctx.entries().iter().enumerate() {
            self.type_star(format!("ctx[{i}]"), entry)?;
            self.ctx.push(Cow::Borrowed(entry));
        }
        Ok(())
    }

    fn judgement(&mut self, j: &'a Judgement) -> Check {
        self.context(j.context())?;
        match j {
            Judgement::CtxtWF(_) => Ok(()),
            Judgement::TypeWF(_, sigma) => self.type_star("type", sigma),
            Judgement::HasType(_, a, sigma) => {
                self.type_star("type", sigma)?;
                self.term_star("term", a, sigma)
            }
        }
    }
}

fn report(r: Check, steps: u64, start: Instant) -> CheckReport {
    CheckReport {
        verdict: match r {
            Ok(()) => Verdict::Accept,
            Err(e) => Verdict::Reject(e),
        },
        steps,
        wall_time: start.elapsed(),
    }
}

/// Decides a judgement from scratch. The signature is assumed valid (see
/// [`check_signature`]).
pub fn check(sig: &Signature, j: &Judgement) -> CheckReport {
    check_traced_opt(sig, j, false).0
}

/// [`check`], also returning the sequence of recursive calls and
/// comparisons.
pub fn check_traced(sig: &Signature, j: &Judgement) -> (CheckReport, Vec<TraceEvent>) {
    check_traced_opt(sig, j, true)
}

fn check_traced_opt(sig: &Signature, j: &Judgement, traced: bool) -> (CheckReport, Vec<TraceEvent>) {
    let start = Instant::now();
    let mut c = Checker::new(sig, traced);
    let r = c.judgement(j);
    let steps = c.steps;
    (report(r, steps, start), c.trace.unwrap_or_default())
}

pub fn check_ctxt(sig: &Signature, ctx: &Context) -> CheckReport {
    let start = Instant::now();
    let mut c = Checker::new(sig, false);
    let r = c.context(ctx);
    report(r, c.steps, start)
}

/// `Γ ⊢ σ Type` assuming `⊢ Γ Ctxt`. The answer is meaningless if the
/// promise fails.
pub(crate) fn check_type_star(sig: &Signature, ctx: &Context, sigma: &Term) -> CheckReport {
    let start = Instant::now();
    let mut c = Checker::new(sig, false);
    c.ctx = ctx.entries().iter().map(Cow::Borrowed).collect();
    let r = c.type_star("type", sigma);
    report(r, c.steps, start)
}

/// `Γ ⊢ a ∈ σ` assuming `Γ ⊢ σ Type`. The answer is meaningless if the
/// promise fails.
pub(crate) fn check_term_star(sig: &Signature, ctx: &Context, a: &Term, sigma: &Term) -> CheckReport {
    let start = Instant::now();
    let mut c = Checker::new(sig, false);
    c.ctx = ctx.entries().iter().map(Cow::Borrowed).collect();
    let r = c.term_star("term", a, sigma);
    report(r, c.steps, start)
}

/// Checks that every postulated constant's type is a closed type over the
/// earlier declarations.
pub fn check_signature(sig: &Signature) -> CheckReport {
    let start = Instant::now();
    let mut c = Checker::new(sig, false);
    let mut r = Ok(());
    for (name, decl) in sig.iter() {
        if let Decl::Constant(ty) = decl {
            r = c.type_star(format!("sig[{name}]"), ty);
            if r.is_err() {
                break;
            }
        }
    }
    report(r, c.steps, start)
}

/// The type the rule for `a`'s head constructor would assign, without
/// checking any premise.
fn candidate_type(sig: &Signature, ctx: &Context, a: &Term) -> Result<Term, Reason> {
    let zero = Term::Zero;
    Ok(match a {
        Term::Var(i) => ctx.lookup(*i).ok_or(Reason::Unbound {
            index: *i,
            len: ctx.len(),
        })?,
        Term::Const(c) => match sig.get(c) {
            Some(Decl::Constant(ty)) => ty.clone(),
            Some(Decl::Type) => return Err(Reason::TypeConstantAsTerm(c.to_string())),
            None => return Err(Reason::Undeclared(c.to_string())),
        },
        Term::Pi { .. } | Term::Id { .. } | Term::NatTy => return Err(Reason::NotATerm(a.kind())),
        Term::Lambda { domain, codomain, .. } => Term::pi((**domain).clone(), (**codomain).clone()),
        Term::App { codomain, arg, .. } => SubstEnv::single(arg).apply(codomain),
        Term::BetaConv {
            domain,
            codomain,
            arg,
            body,
        } => {
            let s = SubstEnv::single(arg);
            Term::id(
                s.apply(codomain),
                Term::app(
                    (**domain).clone(),
                    (**codomain).clone(),
                    Term::lambda((**domain).clone(), (**codomain).clone(), (**body).clone()),
                    (**arg).clone(),
                ),
                s.apply(body),
            )
        }
        Term::Refl { over, point } => Term::id((**over).clone(), (**point).clone(), (**point).clone()),
        Term::IdRec {
            motive,
            lhs,
            rhs,
            path,
            ..
        } => SubstEnv::borrowed(&[&**lhs, &**rhs, &**path], 0).apply(motive),
        Term::IdConv {
            over,
            motive,
            point,
            base,
        } => {
            let refl = Term::refl((**over).clone(), (**point).clone());
            Term::id(
                SubstEnv::borrowed(&[&**point, &**point, &refl], 0).apply(motive),
                Term::idrec(
                    (**over).clone(),
                    (**motive).clone(),
                    (**point).clone(),
                    (**point).clone(),
                    refl.clone(),
                    (**base).clone(),
                ),
                SubstEnv::single(point).apply(base),
            )
        }
        Term::Zero | Term::Succ(_) => Term::NatTy,
        Term::NatRec {
            motive, scrutinee, ..
        } => SubstEnv::single(scrutinee).apply(motive),
        Term::NatConvZero { motive, zcase, scase } => Term::id(
            SubstEnv::single(&zero).apply(motive),
            Term::natrec(
                (**motive).clone(),
                (**zcase).clone(),
                (**scase).clone(),
                Term::Zero,
            ),
            (**zcase).clone(),
        ),
        Term::NatConvSucc {
            motive,
            zcase,
            scase,
            pred,
        } => {
            let succ = Term::succ((**pred).clone());
            let rec = |m: Term| Term::natrec((**motive).clone(), (**zcase).clone(), (**scase).clone(), m);
            let rec_m = rec((**pred).clone());
            Term::id(
                SubstEnv::single(&succ).apply(motive),
                rec(succ.clone()),
                SubstEnv::borrowed(&[&**pred, &rec_m], 0).apply(scase),
            )
        }
    })
}

/// The unique type of `a` in `ctx`, if it has one. All premises are
/// checked, including that `ctx` is well formed.
pub fn infer(sig: &Signature, ctx: &Context, a: &Term) -> Result<Term, Rejection> {
    infer_metered(sig, ctx, a).0
}

/// [`infer`] together with the number of checker steps spent.
pub fn infer_metered(sig: &Signature, ctx: &Context, a: &Term) -> (Result<Term, Rejection>, u64) {
    let candidate = candidate_type(sig, ctx, a);
    let mut c = Checker::new(sig, false);
    if let Err(e) = c.context(ctx) {
        return (Err(e), c.steps);
    }
    let ty = match &candidate {
        Ok(t) => t,
        Err(reason) => {
            let locus = Locus(vec![Cow::Borrowed("term")]);
            let reason = reason.clone();
            return (Err(Rejection { reason, locus }), c.steps);
        }
    };
    c.steps += ty.size() as u64;
    let r = c
        .type_star("inferred", ty)
        .and_then(|()| c.term_star("term", a, ty));
    let steps = c.steps;
    (r.map(|()| ty.clone()), steps)
}

/// Checks the typing conditions of a context morphism `f : Δ → Γ`: both
/// contexts are well formed and each `tᵢ` has type `Γᵢ[t₁, …, tᵢ₋₁]` in Δ.
pub fn check_morphism(sig: &Signature, f: &ContextMorphism) -> CheckReport {
    let start = Instant::now();
    let mut c = Checker::new(sig, false);
    let r = (|| {
        c.context(f.target())?;
        c.context(f.source())?;
        for (i, (t, entry)) in f.terms().iter().zip(f.target().entries()).enumerate() {
            let prefix: Vec<&Term> = f.terms()[..i].iter().collect();
            let ty = SubstEnv::borrowed(&prefix, 0).apply_metered(entry, &mut c.steps);
            c.term_star(format!("terms[{i}]"), t, &ty)?;
        }
        Ok(())
    })();
    report(r, c.steps, start)
}
