//! Elaborators for admissible rules: transport and the congruence
//! properties of identity types, Π-types over telescopes, and identity
//! elimination with a telescope of extra premises.
//!
//! Each elaborator is a pure term builder (`*_term`) plus a checked wrapper
//! that verifies the premises, builds the term, and rechecks it at its
//! stated type with the kernel. Nothing here is trusted: an [`ElabResult`]
//! exists only if the kernel accepted it.
//!
//! # Index conventions
//!
//! `transport(A, B, a, b, p, t)` uses the motive, in `Γ, x : A, y : A, u : Id(A, x, y)`,
//!
//! ```text
//! Q = Pi(B[Var2 / Var0, outer +3], B[Var2 / Var0, outer +4])
//! ```
//!
//! The domain is `B` at `x` (which is `Var2` under `x, y, u`). The codomain
//! sits under one more binder `z`, where `y` is `Var2`, so it is `B` at `y`.
//! Then `Q[x, x, refl] = Pi(B, B↑1)` in `Γ, x`, inhabited by
//! `lam(B, B↑1, Var0)`, and `idrec(A, Q, a, b, p, -)` has type
//! `Pi(B[a], B[b]↑1)`. With `A = Nat`, `B = Id(Nat, x, 0)`:
//!
//! ```text
//! Q = Pi(Id(Nat, Var2, 0), Id(Nat, Var2, 0))     -- domain mentions x, codomain y
//! ```

use std::borrow::Cow;

use thiserror::Error;

use crate::checker::{check, check_ctxt, check_term_star, check_type_star, Judgement, Rejection, Verdict};
use crate::parser::{ElabArg, ElabCall, Elaborator};
use crate::subst::{subst, weaken, weaken_at, SubstEnv};
use crate::syntax::{Context, Signature, Telescope, Term};

/// A kernel-checked term together with the type it was checked at.
#[derive(Clone, Debug, PartialEq)]
pub struct ElabResult {
    pub term: Term,
    pub stated_type: Term,
    pub context: Context,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ElabError {
    #[error("premise `{premise}` does not hold: {rejection}")]
    Premise {
        premise: &'static str,
        rejection: Rejection,
    },
    #[error("emitted term fails to recheck: {0}")]
    Recheck(Rejection),
    #[error("expected {expected} arguments for the telescope, found {found}")]
    ArgumentCount { expected: usize, found: usize },
    #[error("argument {0} has the wrong shape")]
    BadArgument(usize),
}

fn premise(sig: &Signature, j: Judgement, name: &'static str) -> Result<(), ElabError> {
    match check(sig, &j).verdict {
        Verdict::Accept => Ok(()),
        Verdict::Reject(rejection) => Err(ElabError::Premise {
            premise: name,
            rejection,
        }),
    }
}

/// Rechecks through the staged entry points, so each promise is established
/// before it is relied on.
fn finish(sig: &Signature, ctx: &Context, term: Term, stated_type: Term) -> Result<ElabResult, ElabError> {
    for r in [check_ctxt(sig, ctx), check_type_star(sig, ctx, &stated_type)] {
        if let Verdict::Reject(e) = r.verdict {
            return Err(ElabError::Recheck(e));
        }
    }
    if let Verdict::Reject(e) = check_term_star(sig, ctx, &term, &stated_type).verdict {
        return Err(ElabError::Recheck(e));
    }
    Ok(ElabResult {
        term,
        stated_type,
        context: ctx.clone(),
    })
}

fn env<'a>(terms: impl IntoIterator<Item = &'a Term>, shift: usize) -> SubstEnv<'a> {
    SubstEnv::new(terms.into_iter().map(Cow::Borrowed).collect(), shift)
}

fn split_pi(t: Term) -> (Term, Term) {
    match &t {
        Term::Pi { domain, codomain } => ((**domain).clone(), (**codomain).clone()),
        other => unreachable!("expected a Pi, built {other:?}"),
    }
}

fn split_lambda_body(t: Term) -> Term {
    match &t {
        Term::Lambda { body, .. } => (**body).clone(),
        other => unreachable!("expected a lam, built {other:?}"),
    }
}

// ----------------------------------------------------------------------
// Congruence

pub fn transport_term(over: &Term, family: &Term, a: &Term, b: &Term, p: &Term, t: &Term) -> Term {
    let x = Term::var(2);
    let dom = env([&x], 3).apply(family);
    let cod = env([&x], 4).apply(family);
    let motive = Term::pi(dom, cod);
    let base = Term::lambda(family.clone(), weaken(family, 1), Term::var(0));
    let s = Term::idrec(over.clone(), motive, a.clone(), b.clone(), p.clone(), base);
    Term::app(subst(family, a, 0), weaken(&subst(family, b, 0), 1), s, t.clone())
}

pub fn symmetry_term(over: &Term, a: &Term, b: &Term, p: &Term) -> Term {
    let family = Term::id(weaken(over, 1), Term::var(0), weaken(a, 1));
    transport_term(over, &family, a, b, p, &Term::refl(over.clone(), a.clone()))
}

pub fn transitivity_term(over: &Term, a: &Term, b: &Term, c: &Term, p: &Term, q: &Term) -> Term {
    let family = Term::id(weaken(over, 1), Term::var(0), weaken(c, 1));
    transport_term(over, &family, b, a, &symmetry_term(over, a, b, p), q)
}

/// `e` lives under one variable of type `over`; the result has type
/// `Id(target, e[a], e[b])`.
pub fn congruence_term(over: &Term, target: &Term, e: &Term, a: &Term, b: &Term, p: &Term) -> Term {
    let ea = subst(e, a, 0);
    let family = Term::id(weaken(target, 1), weaken(&ea, 1), e.clone());
    transport_term(over, &family, a, b, p, &Term::refl(target.clone(), ea))
}

/// From `p : Id(Pi(A, B), f, g)` and `a : A`, a path between
/// `app(A, B, f, a)` and `app(A, B, g, a)` in `B[a]`.
pub fn congruence_app_term(domain: &Term, codomain: &Term, f: &Term, g: &Term, p: &Term, a: &Term) -> Term {
    let e = Term::app(
        weaken(domain, 1),
        weaken_at(codomain, 1, 1),
        Term::var(0),
        weaken(a, 1),
    );
    congruence_term(
        &Term::pi(domain.clone(), codomain.clone()),
        &subst(codomain, a, 0),
        &e,
        f,
        g,
        p,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn transport(
    sig: &Signature,
    ctx: &Context,
    over: &Term,
    family: &Term,
    a: &Term,
    b: &Term,
    p: &Term,
    t: &Term,
) -> Result<ElabResult, ElabError> {
    premise(
        sig,
        Judgement::TypeWF(ctx.extended(over.clone()), family.clone()),
        "x.B",
    )?;
    let path = Term::id(over.clone(), a.clone(), b.clone());
    premise(sig, Judgement::HasType(ctx.clone(), p.clone(), path), "p")?;
    premise(
        sig,
        Judgement::HasType(ctx.clone(), t.clone(), subst(family, a, 0)),
        "t",
    )?;
    finish(
        sig,
        ctx,
        transport_term(over, family, a, b, p, t),
        subst(family, b, 0),
    )
}

pub fn symmetry(
    sig: &Signature,
    ctx: &Context,
    over: &Term,
    a: &Term,
    b: &Term,
    p: &Term,
) -> Result<ElabResult, ElabError> {
    let path = Term::id(over.clone(), a.clone(), b.clone());
    premise(sig, Judgement::HasType(ctx.clone(), p.clone(), path), "p")?;
    finish(
        sig,
        ctx,
        symmetry_term(over, a, b, p),
        Term::id(over.clone(), b.clone(), a.clone()),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn transitivity(
    sig: &Signature,
    ctx: &Context,
    over: &Term,
    a: &Term,
    b: &Term,
    c: &Term,
    p: &Term,
    q: &Term,
) -> Result<ElabResult, ElabError> {
    let pty = Term::id(over.clone(), a.clone(), b.clone());
    premise(sig, Judgement::HasType(ctx.clone(), p.clone(), pty), "p")?;
    let qty = Term::id(over.clone(), b.clone(), c.clone());
    premise(sig, Judgement::HasType(ctx.clone(), q.clone(), qty), "q")?;
    finish(
        sig,
        ctx,
        transitivity_term(over, a, b, c, p, q),
        Term::id(over.clone(), a.clone(), c.clone()),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn congruence(
    sig: &Signature,
    ctx: &Context,
    over: &Term,
    target: &Term,
    e: &Term,
    a: &Term,
    b: &Term,
    p: &Term,
) -> Result<ElabResult, ElabError> {
    premise(sig, Judgement::TypeWF(ctx.clone(), target.clone()), "C")?;
    premise(
        sig,
        Judgement::HasType(ctx.extended(over.clone()), e.clone(), weaken(target, 1)),
        "x.e",
    )?;
    let path = Term::id(over.clone(), a.clone(), b.clone());
    premise(sig, Judgement::HasType(ctx.clone(), p.clone(), path), "p")?;
    finish(
        sig,
        ctx,
        congruence_term(over, target, e, a, b, p),
        Term::id(target.clone(), subst(e, a, 0), subst(e, b, 0)),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn congruence_app(
    sig: &Signature,
    ctx: &Context,
    domain: &Term,
    codomain: &Term,
    f: &Term,
    g: &Term,
    p: &Term,
    a: &Term,
) -> Result<ElabResult, ElabError> {
    let fun = Term::pi(domain.clone(), codomain.clone());
    let path = Term::id(fun, f.clone(), g.clone());
    premise(sig, Judgement::HasType(ctx.clone(), p.clone(), path), "p")?;
    premise(
        sig,
        Judgement::HasType(ctx.clone(), a.clone(), domain.clone()),
        "a",
    )?;
    let app = |h: &Term| Term::app(domain.clone(), codomain.clone(), h.clone(), a.clone());
    finish(
        sig,
        ctx,
        congruence_app_term(domain, codomain, f, g, p, a),
        Term::id(subst(codomain, a, 0), app(f), app(g)),
    )
}

// ----------------------------------------------------------------------
// Π over a telescope. `delta[i]` lives in the ambient context extended by
// `delta[..i]`; `family` and bodies live under all of `delta`; argument
// `args[i]` lives in the ambient context.

pub fn telescope_pi_type(delta: &[Term], family: &Term) -> Term {
    delta
        .iter()
        .rev()
        .fold(family.clone(), |acc, d| Term::pi(d.clone(), acc))
}

pub fn telescope_lam_term(delta: &[Term], family: &Term, body: &Term) -> Term {
    let mut fam = family.clone();
    let mut t = body.clone();
    for d in delta.iter().rev() {
        t = Term::lambda(d.clone(), fam.clone(), t);
        fam = Term::pi(d.clone(), fam);
    }
    t
}

pub fn telescope_app_term(delta: &[Term], family: &Term, f: &Term, args: &[Term]) -> Term {
    let Some((last, init)) = delta.split_last() else {
        return f.clone();
    };
    let inner = Term::pi(last.clone(), family.clone());
    let (prefix, arg) = args.split_at(init.len());
    let g = telescope_app_term(init, &inner, f, prefix);
    let (dom, cod) = split_pi(env(prefix, 0).apply(&inner));
    Term::app(dom, cod, g, arg[0].clone())
}

/// Witness of `Id(B[args], app(Δ, B, lam(Δ, B, t), args), t[args])`.
pub fn telescope_betaconv_term(delta: &[Term], family: &Term, args: &[Term], body: &Term) -> Term {
    match delta.len() {
        0 => return Term::refl(family.clone(), body.clone()),
        1 => {
            return Term::betaconv(delta[0].clone(), family.clone(), args[0].clone(), body.clone());
        }
        _ => {}
    }
    let (last, init) = delta.split_last().expect("nonempty");
    let inner_fam = Term::pi(last.clone(), family.clone());
    let inner_body = Term::lambda(last.clone(), family.clone(), body.clone());
    let (prefix, arg) = args.split_at(init.len());
    let arg = &arg[0];

    let ih = telescope_betaconv_term(init, &inner_fam, prefix, &inner_body);
    let fun = telescope_app_term(
        init,
        &inner_fam,
        &telescope_lam_term(init, &inner_fam, &inner_body),
        prefix,
    );
    let e = env(prefix, 0);
    let (dom, cod) = split_pi(e.apply(&inner_fam));
    let t1 = split_lambda_body(e.apply(&inner_body));
    let lam = Term::lambda(dom.clone(), cod.clone(), t1.clone());

    let step1 = congruence_app_term(&dom, &cod, &fun, &lam, &ih, arg);
    let step2 = Term::betaconv(dom.clone(), cod.clone(), arg.clone(), t1.clone());
    transitivity_term(
        &subst(&cod, arg, 0),
        &Term::app(dom.clone(), cod.clone(), fun, arg.clone()),
        &Term::app(dom, cod, lam, arg.clone()),
        &subst(&t1, arg, 0),
        &step1,
        &step2,
    )
}

/// [`telescope_pi`] bundles a checked telescope and family with builders
/// for the introduction, elimination and computation terms.
#[derive(Debug)]
pub struct ContextualPi<'s> {
    sig: &'s Signature,
    context: Context,
    delta: Telescope,
    family: Term,
    pub pi_type: Term,
}

pub fn telescope_pi<'s>(
    sig: &'s Signature,
    ctx: &Context,
    delta: &Telescope,
    family: &Term,
) -> Result<ContextualPi<'s>, ElabError> {
    let inner = delta.extend_context(ctx);
    premise(sig, Judgement::CtxtWF(inner.clone()), "delta")?;
    premise(sig, Judgement::TypeWF(inner, family.clone()), "zs.B")?;
    let pi_type = telescope_pi_type(delta.entries(), family);
    premise(
        sig,
        Judgement::TypeWF(ctx.clone(), pi_type.clone()),
        "Pi(delta, B)",
    )?;
    Ok(ContextualPi {
        sig,
        context: ctx.clone(),
        delta: delta.clone(),
        family: family.clone(),
        pi_type,
    })
}

impl ContextualPi<'_> {
    fn morphism(&self, args: &[Term]) -> Result<(), ElabError> {
        let n = self.delta.len();
        if args.len() != n {
            return Err(ElabError::ArgumentCount {
                expected: n,
                found: args.len(),
            });
        }
        for (i, d) in self.delta.entries().iter().enumerate() {
            let ty = env(&args[..i], 0).apply(d);
            premise(
                self.sig,
                Judgement::HasType(self.context.clone(), args[i].clone(), ty),
                "args",
            )?;
        }
        Ok(())
    }

    fn body(&self, t: &Term) -> Result<(), ElabError> {
        let j = Judgement::HasType(
            self.delta.extend_context(&self.context),
            t.clone(),
            self.family.clone(),
        );
        premise(self.sig, j, "zs.t")
    }

    pub fn lam(&self, body: &Term) -> Result<ElabResult, ElabError> {
        self.body(body)?;
        let t = telescope_lam_term(self.delta.entries(), &self.family, body);
        finish(self.sig, &self.context, t, self.pi_type.clone())
    }

    pub fn app(&self, f: &Term, args: &[Term]) -> Result<ElabResult, ElabError> {
        premise(
            self.sig,
            Judgement::HasType(self.context.clone(), f.clone(), self.pi_type.clone()),
            "f",
        )?;
        self.morphism(args)?;
        let t = telescope_app_term(self.delta.entries(), &self.family, f, args);
        finish(self.sig, &self.context, t, env(args, 0).apply(&self.family))
    }

    pub fn betaconv(&self, args: &[Term], body: &Term) -> Result<ElabResult, ElabError> {
        self.body(body)?;
        self.morphism(args)?;
        let d = self.delta.entries();
        let e = env(args, 0);
        let lam = telescope_lam_term(d, &self.family, body);
        let ty = Term::id(
            e.apply(&self.family),
            telescope_app_term(d, &self.family, &lam, args),
            e.apply(body),
        );
        finish(
            self.sig,
            &self.context,
            telescope_betaconv_term(d, &self.family, args, body),
            ty,
        )
    }
}

// ----------------------------------------------------------------------
// Identity elimination over a telescope. `delta` lives in
// `Γ, x : A, y : A, u : Id(A, x, y)`, the motive under that and `delta`,
// and the base case `d` in `Γ, x : A` extended by `delta[x, x, refl]`.

fn diagonal(over: &Term) -> [Term; 3] {
    [
        Term::var(0),
        Term::var(0),
        Term::refl(weaken(over, 1), Term::var(0)),
    ]
}

fn peel(mut t: Term, n: usize) -> (Vec<Term>, Term) {
    let mut doms = Vec::with_capacity(n);
    for _ in 0..n {
        let (d, c) = split_pi(t);
        doms.push(d);
        t = c;
    }
    (doms, t)
}

/// The motive context `Γ, x : A, y : A, u : Id(A, x, y)`.
fn motive_context(ctx: &Context, over: &Term) -> Context {
    let mut c = ctx.clone();
    c.push(over.clone());
    c.push(weaken(over, 1));
    c.push(Term::id(weaken(over, 2), Term::var(1), Term::var(0)));
    c
}

/// `delta` and `P` instantiated at `x, x, refl`, living in `Γ, x : A`.
fn diagonal_telescope(over: &Term, delta: &[Term], motive: &Term) -> (Vec<Term>, Term) {
    let diag = diagonal(over);
    peel(
        env(&diag, 1).apply(&telescope_pi_type(delta, motive)),
        delta.len(),
    )
}

/// `idrec(A, [x,y,u]Π(Δ, P), a, b, p, [x]λ(Δ, P, d)[x, x, refl])` applied
/// to `qs`; at length 0 the primitive `idrec`.
#[allow(clippy::too_many_arguments)]
pub fn telescope_idrec_term(
    over: &Term,
    delta: &[Term],
    motive: &Term,
    a: &Term,
    b: &Term,
    p: &Term,
    qs: &[Term],
    base: &Term,
) -> Term {
    if delta.is_empty() {
        return Term::idrec(
            over.clone(),
            motive.clone(),
            a.clone(),
            b.clone(),
            p.clone(),
            base.clone(),
        );
    }
    let n = delta.len();
    let q = telescope_pi_type(delta, motive);
    let (dd, pd) = diagonal_telescope(over, delta, motive);
    let s = telescope_lam_term(&dd, &pd, base);
    let rec = Term::idrec(over.clone(), q.clone(), a.clone(), b.clone(), p.clone(), s);
    let (da, pa) = peel(env([a, b, p], 0).apply(&q), n);
    telescope_app_term(&da, &pa, &rec, qs)
}

/// Witness that the telescope `idrec` at `a, a, refl(A, a), ws` computes
/// to `d[a, ws]`: `idconv` for the packed motive, carried through the
/// telescope application by congruence in the function position, then
/// composed with the telescope `betaconv`.
pub fn telescope_idconv_term(
    over: &Term,
    delta: &[Term],
    motive: &Term,
    a: &Term,
    ws: &[Term],
    base: &Term,
) -> Term {
    if delta.is_empty() {
        return Term::idconv(over.clone(), motive.clone(), a.clone(), base.clone());
    }
    let n = delta.len();
    let refl = Term::refl(over.clone(), a.clone());
    let q = telescope_pi_type(delta, motive);
    let (dd, pd) = diagonal_telescope(over, delta, motive);
    let s = telescope_lam_term(&dd, &pd, base);
    let rec = Term::idrec(
        over.clone(),
        q.clone(),
        a.clone(),
        a.clone(),
        refl.clone(),
        s.clone(),
    );
    let qa = env([a, a, &refl], 0).apply(&q);
    let (da, pa) = peel(qa.clone(), n);

    let lhs = telescope_app_term(&da, &pa, &rec, ws);
    let step0 = Term::idconv(over.clone(), q, a.clone(), s);

    let base_a = subst(base, a, n);
    let lam_a = telescope_lam_term(&da, &pa, &base_a);
    let da_w: Vec<Term> = da.iter().enumerate().map(|(i, d)| weaken_at(d, 1, i)).collect();
    let pa_w = weaken_at(&pa, 1, n);
    let ws_w: Vec<Term> = ws.iter().map(|w| weaken(w, 1)).collect();
    let e = telescope_app_term(&da_w, &pa_w, &Term::var(0), &ws_w);
    let target = env(ws, 0).apply(&pa);
    let step1 = congruence_term(&qa, &target, &e, &rec, &lam_a, &step0);

    let mid = telescope_app_term(&da, &pa, &lam_a, ws);
    let step2 = telescope_betaconv_term(&da, &pa, ws, &base_a);
    let rhs = env(ws, 0).apply(&base_a);
    transitivity_term(&target, &lhs, &mid, &rhs, &step1, &step2)
}

struct IdPremises<'a> {
    over: &'a Term,
    delta: &'a Telescope,
    motive: &'a Term,
    base: &'a Term,
}

impl IdPremises<'_> {
    fn check(&self, sig: &Signature, ctx: &Context) -> Result<(), ElabError> {
        let mctx = self.delta.extend_context(&motive_context(ctx, self.over));
        premise(sig, Judgement::CtxtWF(mctx.clone()), "x y u.delta")?;
        premise(sig, Judgement::TypeWF(mctx, self.motive.clone()), "x y u zs.P")?;
        let (dd, pd) = diagonal_telescope(self.over, self.delta.entries(), self.motive);
        let bctx = Telescope::new(dd).extend_context(&ctx.extended(self.over.clone()));
        premise(sig, Judgement::HasType(bctx, self.base.clone(), pd), "x zs.d")
    }

    /// `args[i] : delta[i][a, b, p, args[..i]]`.
    fn arguments(
        &self,
        sig: &Signature,
        ctx: &Context,
        abp: [&Term; 3],
        args: &[Term],
    ) -> Result<(), ElabError> {
        let n = self.delta.len();
        if args.len() != n {
            return Err(ElabError::ArgumentCount {
                expected: n,
                found: args.len(),
            });
        }
        for (i, d) in self.delta.entries().iter().enumerate() {
            let ty = env(abp.into_iter().chain(&args[..i]), 0).apply(d);
            premise(sig, Judgement::HasType(ctx.clone(), args[i].clone(), ty), "qs")?;
        }
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
pub fn telescope_idrec(
    sig: &Signature,
    ctx: &Context,
    over: &Term,
    delta: &Telescope,
    motive: &Term,
    a: &Term,
    b: &Term,
    p: &Term,
    qs: &[Term],
    base: &Term,
) -> Result<ElabResult, ElabError> {
    let prem = IdPremises {
        over,
        delta,
        motive,
        base,
    };
    prem.check(sig, ctx)?;
    for (t, name) in [(a, "a"), (b, "b")] {
        premise(
            sig,
            Judgement::HasType(ctx.clone(), t.clone(), over.clone()),
            name,
        )?;
    }
    let path = Term::id(over.clone(), a.clone(), b.clone());
    premise(sig, Judgement::HasType(ctx.clone(), p.clone(), path), "p")?;
    prem.arguments(sig, ctx, [a, b, p], qs)?;
    let term = telescope_idrec_term(over, delta.entries(), motive, a, b, p, qs, base);
    let ty = env([a, b, p].into_iter().chain(qs), 0).apply(motive);
    finish(sig, ctx, term, ty)
}

#[allow(clippy::too_many_arguments)]
pub fn telescope_idconv(
    sig: &Signature,
    ctx: &Context,
    over: &Term,
    delta: &Telescope,
    motive: &Term,
    a: &Term,
    ws: &[Term],
    base: &Term,
) -> Result<ElabResult, ElabError> {
    let prem = IdPremises {
        over,
        delta,
        motive,
        base,
    };
    prem.check(sig, ctx)?;
    premise(sig, Judgement::HasType(ctx.clone(), a.clone(), over.clone()), "a")?;
    let refl = Term::refl(over.clone(), a.clone());
    prem.arguments(sig, ctx, [a, a, &refl], ws)?;
    let d = delta.entries();
    let ty = Term::id(
        env([a, a, &refl].into_iter().chain(ws), 0).apply(motive),
        telescope_idrec_term(over, d, motive, a, a, &refl, ws, base),
        env(std::iter::once(a).chain(ws), 0).apply(base),
    );
    finish(sig, ctx, telescope_idconv_term(over, d, motive, a, ws, base), ty)
}

// ----------------------------------------------------------------------
// Script entry point

/// What an `elab` item produces.
#[derive(Clone, Debug, PartialEq)]
pub enum Elaborated {
    /// A type (from `telescope_pi`), checked well formed.
    Type {
        ty: Term,
        context: Context,
    },
    Term(ElabResult),
}

impl Elaborated {
    pub fn context(&self) -> &Context {
        match self {
            Elaborated::Type { context, .. } => context,
            Elaborated::Term(r) => &r.context,
        }
    }
}

/// Runs a parsed `elab` call in `ctx`.
pub fn run_call(sig: &Signature, ctx: &Context, call: &ElabCall) -> Result<Elaborated, ElabError> {
    let args = &call.args;
    let term = |i: usize| match args.get(i) {
        Some(ElabArg::Term(t)) => Ok(t),
        _ => Err(ElabError::BadArgument(i)),
    };
    let bound = |i: usize| match args.get(i) {
        Some(ElabArg::Bound { body, .. }) => Ok(body),
        _ => Err(ElabError::BadArgument(i)),
    };
    let tele = |i: usize| match args.get(i) {
        Some(ElabArg::Tele { tele, .. }) => Ok(tele),
        _ => Err(ElabError::BadArgument(i)),
    };
    let tuple = |i: usize| match args.get(i) {
        Some(ElabArg::Tuple(ts)) => Ok(ts.as_slice()),
        _ => Err(ElabError::BadArgument(i)),
    };
    let r = match call.elaborator {
        Elaborator::Transport => transport(
            sig,
            ctx,
            term(0)?,
            bound(1)?,
            term(2)?,
            term(3)?,
            term(4)?,
            term(5)?,
        )?,
        Elaborator::Symmetry => symmetry(sig, ctx, term(0)?, term(1)?, term(2)?, term(3)?)?,
        Elaborator::Transitivity => transitivity(
            sig,
            ctx,
            term(0)?,
            term(1)?,
            term(2)?,
            term(3)?,
            term(4)?,
            term(5)?,
        )?,
        Elaborator::Congruence => congruence(
            sig,
            ctx,
            term(0)?,
            term(1)?,
            bound(2)?,
            term(3)?,
            term(4)?,
            term(5)?,
        )?,
        Elaborator::CongruenceApp => congruence_app(
            sig,
            ctx,
            term(0)?,
            bound(1)?,
            term(2)?,
            term(3)?,
            term(4)?,
            term(5)?,
        )?,
        Elaborator::TelescopePi => {
            let pi = telescope_pi(sig, ctx, tele(0)?, bound(1)?)?;
            return Ok(Elaborated::Type {
                ty: pi.pi_type,
                context: ctx.clone(),
            });
        }
        Elaborator::TelescopeLam => telescope_pi(sig, ctx, tele(0)?, bound(1)?)?.lam(bound(2)?)?,
        Elaborator::TelescopeApp => telescope_pi(sig, ctx, tele(0)?, bound(1)?)?.app(term(2)?, tuple(3)?)?,
        Elaborator::TelescopeBetaConv => {
            telescope_pi(sig, ctx, tele(0)?, bound(1)?)?.betaconv(tuple(2)?, bound(3)?)?
        }
        Elaborator::TelescopeIdRec => telescope_idrec(
            sig,
            ctx,
            term(0)?,
            tele(1)?,
            bound(2)?,
            term(3)?,
            term(4)?,
            term(5)?,
            tuple(6)?,
            bound(7)?,
        )?,
        Elaborator::TelescopeIdConv => telescope_idconv(
            sig,
            ctx,
            term(0)?,
            tele(1)?,
            bound(2)?,
            term(3)?,
            tuple(4)?,
            bound(5)?,
        )?,
    };
    Ok(Elaborated::Term(r))
}
