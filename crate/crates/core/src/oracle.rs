//! An independent decision procedure for small judgements, used only to
//! cross-check the checker.
//!
//! Instead of analysing a given judgement top-down, the oracle applies the
//! inference rules forwards: it builds, for a context `Γ` and a size `n`,
//! the set of all pairs `(t, σ)` with `Γ ⊢ t ∈ σ` derivable and `|t| = n`,
//! and likewise the set of all types of size `n`. Every premise of every
//! rule is required explicitly, and substitution is the textbook
//! one-variable-at-a-time definition, sharing no code with the checker.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use thiserror::Error;

use crate::checker::Judgement;
use crate::syntax::{Decl, Kind, Signature, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("a term of size {size} exceeds the enumeration depth {depth}")]
    ResourceCap { size: usize, depth: usize },
}

type Ctx = Vec<Term>;

#[derive(Default)]
struct Level {
    pairs: Vec<(Term, Term)>,
    seen: HashSet<(Term, Term)>,
    by_type: HashMap<Term, Vec<usize>>,
}

impl Level {
    fn push(&mut self, t: Term, ty: Term) {
        if self.seen.insert((t.clone(), ty.clone())) {
            self.by_type.entry(ty.clone()).or_default().push(self.pairs.len());
            self.pairs.push((t, ty));
        }
    }

    fn of_type<'l>(&'l self, ty: &Term) -> impl Iterator<Item = &'l Term> + 'l {
        self.by_type
            .get(ty)
            .into_iter()
            .flatten()
            .map(move |&i| &self.pairs[i].0)
    }
}

#[derive(Default)]
struct TyLevel {
    list: Vec<Term>,
    set: HashSet<Term>,
}

impl TyLevel {
    fn push(&mut self, t: Term) {
        if self.set.insert(t.clone()) {
            self.list.push(t);
        }
    }
}

/// Memoised forward enumeration over one signature.
pub struct Oracle<'s> {
    sig: &'s Signature,
    depth: usize,
    terms: HashMap<(Ctx, usize), Rc<Level>>,
    types: HashMap<(Ctx, usize), Rc<TyLevel>>,
}

/// Decides `j` by enumeration; terms and types in `j` may have at most
/// `depth` nodes.
pub fn oracle_derivable(sig: &Signature, j: &Judgement, depth: usize) -> Result<bool, OracleError> {
    Oracle::new(sig, depth).derivable(j)
}

fn shift(t: &Term, by: usize, cutoff: usize) -> Term {
    match t {
        Term::Var(k) if *k >= cutoff => Term::Var(k + by),
        _ if t.is_leaf() => t.clone(),
        _ => t.map_children(|c, b| shift(c, by, cutoff + b)),
    }
}

/// `t[a/x]` for the innermost variable `x`; `a` lives outside `x`.
fn subst0(t: &Term, a: &Term) -> Term {
    fn go(t: &Term, a: &Term, depth: usize) -> Term {
        match t {
            Term::Var(k) if *k == depth => shift(a, depth, 0),
            Term::Var(k) if *k > depth => Term::Var(k - 1),
            _ if t.is_leaf() => t.clone(),
            _ => t.map_children(|c, b| go(c, a, depth + b)),
        }
    }
    go(t, a, 0)
}

/// `P[a, b, p / x, y, u]`.
fn motive_at(p_ty: &Term, a: &Term, b: &Term, p: &Term) -> Term {
    let m = subst0(p_ty, &shift(p, 2, 0));
    let m = subst0(&m, &shift(b, 1, 0));
    subst0(&m, a)
}

/// `P[x', x', refl(A, x') / x, y, u]` in the context extended by `x' : A`.
fn motive_diag(p_ty: &Term, over: &Term) -> Term {
    let m = shift(p_ty, 1, 3);
    let m = subst0(&m, &Term::refl(shift(over, 3, 0), Term::var(2)));
    let m = subst0(&m, &Term::var(1));
    subst0(&m, &Term::var(0))
}

/// `P[succ n / n]` in the context extended by `n : Nat, ih : P`.
fn motive_step(p_ty: &Term) -> Term {
    subst0(&shift(p_ty, 2, 1), &Term::succ(Term::var(1)))
}

/// `s[m, r / n, ih]`.
fn scase_at(s: &Term, m: &Term, r: &Term) -> Term {
    subst0(&subst0(s, &shift(r, 1, 0)), m)
}

fn lookup(ctx: &[Term], i: usize) -> Option<Term> {
    let pos = ctx.len().checked_sub(i + 1)?;
    Some(shift(&ctx[pos], i + 1, 0))
}

fn extended(ctx: &[Term], more: &[Term]) -> Ctx {
    let mut c = ctx.to_vec();
    c.extend(more.iter().cloned());
    c
}

impl<'s> Oracle<'s> {
    pub fn new(sig: &'s Signature, depth: usize) -> Oracle<'s> {
        Oracle {
            sig,
            depth,
            terms: HashMap::new(),
            types: HashMap::new(),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn cap(&self, size: usize) -> Result<(), OracleError> {
        if size > self.depth {
            Err(OracleError::ResourceCap {
                size,
                depth: self.depth,
            })
        } else {
            Ok(())
        }
    }

    pub fn derivable(&mut self, j: &Judgement) -> Result<bool, OracleError> {
        let ctx = j.context().entries();
        for e in ctx {
            self.cap(e.size())?;
        }
        match j {
            Judgement::CtxtWF(_) => {}
            Judgement::TypeWF(_, s) => self.cap(s.size())?,
            Judgement::HasType(_, t, _) => self.cap(t.size())?,
        }
        if !self.context_ok(ctx) {
            return Ok(false);
        }
        Ok(match j {
            Judgement::CtxtWF(_) => true,
            Judgement::TypeWF(_, s) => self.is_type(ctx, s),
            Judgement::HasType(_, t, s) => self.has_type(ctx, t, s),
        })
    }

    pub fn context_ok(&mut self, ctx: &[Term]) -> bool {
        (0..ctx.len()).all(|i| self.is_type(&ctx[..i], &ctx[i]))
    }

    fn is_type(&mut self, ctx: &[Term], s: &Term) -> bool {
        let n = s.size();
        n <= self.depth && self.types(ctx, n).set.contains(s)
    }

    fn has_type(&mut self, ctx: &[Term], t: &Term, s: &Term) -> bool {
        let n = t.size();
        n <= self.depth && self.level(ctx, n).seen.contains(&(t.clone(), s.clone()))
    }

    /// All derivable `(t, σ)` in `ctx` with `|t| = n`, assuming `ctx` is
    /// well formed.
    pub fn typed_terms(&mut self, ctx: &[Term], n: usize) -> Vec<(Term, Term)> {
        self.level(ctx, n).pairs.clone()
    }

    /// All `σ` with `ctx ⊢ σ Type` and `|σ| = n`.
    pub fn well_formed_types(&mut self, ctx: &[Term], n: usize) -> Vec<Term> {
        self.types(ctx, n).list.clone()
    }

    fn level(&mut self, ctx: &[Term], n: usize) -> Rc<Level> {
        let key = (ctx.to_vec(), n);
        if let Some(l) = self.terms.get(&key) {
            return l.clone();
        }
        let l = Rc::new(self.compute_terms(ctx, n));
        self.terms.insert(key, l.clone());
        l
    }

    fn types(&mut self, ctx: &[Term], n: usize) -> Rc<TyLevel> {
        let key = (ctx.to_vec(), n);
        if let Some(l) = self.types.get(&key) {
            return l.clone();
        }
        let l = Rc::new(self.compute_types(ctx, n));
        self.types.insert(key, l.clone());
        l
    }

    fn compute_types(&mut self, ctx: &[Term], n: usize) -> TyLevel {
        let mut out = TyLevel::default();
        if n == 0 {
            return out;
        }
        if n == 1 {
            out.push(Term::NatTy);
            for (name, decl) in self.sig.iter() {
                if *decl == Decl::Type {
                    out.push(Term::Const(name.clone()));
                }
            }
            return out;
        }
        // Pi(A, B): 1 + |A| + |B| = n
        for k1 in 1..n - 1 {
            for a in self.types(ctx, k1).list.iter() {
                let ext = extended(ctx, std::slice::from_ref(a));
                for b in self.types(&ext, n - 1 - k1).list.iter() {
                    out.push(Term::pi(a.clone(), b.clone()));
                }
            }
        }
        // Id(A, a, b): 1 + |A| + |a| + |b| = n
        for k1 in 1..n.saturating_sub(2) {
            for big_a in self.types(ctx, k1).list.iter() {
                for ka in 1..n - 1 - k1 {
                    let kb = n - 1 - k1 - ka;
                    let la = self.level(ctx, ka);
                    let lb = self.level(ctx, kb);
                    for x in la.of_type(big_a) {
                        for y in lb.of_type(big_a) {
                            out.push(Term::id(big_a.clone(), x.clone(), y.clone()));
                        }
                    }
                }
            }
        }
        out
    }

    fn compute_terms(&mut self, ctx: &[Term], n: usize) -> Level {
        let mut out = Level::default();
        if n == 0 {
            return out;
        }
        if n == 1 {
            for i in 0..ctx.len() {
                out.push(Term::var(i), lookup(ctx, i).expect("in range"));
            }
            for (name, decl) in self.sig.iter() {
                if let Decl::Constant(ty) = decl {
                    out.push(Term::Const(name.clone()), ty.clone());
                }
            }
            out.push(Term::Zero, Term::NatTy);
            return out;
        }
        let nat = Term::NatTy;
        let m = n - 1;

        // succ(t)
        for t in self.level(ctx, m).of_type(&nat) {
            out.push(Term::succ(t.clone()), Term::NatTy);
        }

        // refl(A, a)
        for ka in 1..m {
            for (a, big_a) in self.level(ctx, ka).pairs.iter() {
                if big_a.size() == m - ka && self.is_type(ctx, big_a) {
                    out.push(
                        Term::refl(big_a.clone(), a.clone()),
                        Term::id(big_a.clone(), a.clone(), a.clone()),
                    );
                }
            }
        }

        // lam(A, B, t), with t : B under A
        for k1 in 1..m {
            for big_a in self.types(ctx, k1).list.iter() {
                let ext = extended(ctx, std::slice::from_ref(big_a));
                for kt in 1..m - k1 {
                    let kb = m - k1 - kt;
                    for (t, big_b) in self.level(&ext, kt).pairs.iter() {
                        if big_b.size() == kb && self.is_type(&ext, big_b) {
                            out.push(
                                Term::lambda(big_a.clone(), big_b.clone(), t.clone()),
                                Term::pi(big_a.clone(), big_b.clone()),
                            );
                        }
                    }
                }
            }
        }

        // app(A, B, f, a)
        for kf in 1..m {
            for (f, fty) in self.level(ctx, kf).pairs.iter() {
                let Term::Pi { domain, codomain } = fty else {
                    continue;
                };
                let used = kf + domain.size() + codomain.size();
                if used >= m {
                    continue;
                }
                let ka = m - used;
                if !self.is_type(ctx, domain) {
                    continue;
                }
                let ext = extended(ctx, &[(**domain).clone()]);
                if !self.is_type(&ext, codomain) {
                    continue;
                }
                for a in self.level(ctx, ka).of_type(domain) {
                    out.push(
                        Term::app((**domain).clone(), (**codomain).clone(), f.clone(), a.clone()),
                        subst0(codomain, a),
                    );
                }
            }
        }

        // betaconv(A, B, a, t)
        for k1 in 1..m {
            for big_a in self.types(ctx, k1).list.iter() {
                let ext = extended(ctx, std::slice::from_ref(big_a));
                for kt in 1..m - k1 {
                    for (t, big_b) in self.level(&ext, kt).pairs.iter() {
                        let used = k1 + kt + big_b.size();
                        if used >= m || !self.is_type(&ext, big_b) {
                            continue;
                        }
                        for a in self.level(ctx, m - used).of_type(big_a) {
                            let lam = Term::lambda(big_a.clone(), big_b.clone(), t.clone());
                            let app = Term::app(big_a.clone(), big_b.clone(), lam, a.clone());
                            out.push(
                                Term::betaconv(big_a.clone(), big_b.clone(), a.clone(), t.clone()),
                                Term::id(subst0(big_b, a), app, subst0(t, a)),
                            );
                        }
                    }
                }
            }
        }

        // idrec(A, P, a, b, p, d) and idconv(A, P, a, d)
        for k1 in 1..m {
            for big_a in self.types(ctx, k1).list.iter() {
                let mctx = extended(
                    ctx,
                    &[
                        big_a.clone(),
                        shift(big_a, 1, 0),
                        Term::id(shift(big_a, 2, 0), Term::var(1), Term::var(0)),
                    ],
                );
                let ext = extended(ctx, std::slice::from_ref(big_a));
                for kp in 1..m - k1 {
                    for motive in self.types(&mctx, kp).list.iter() {
                        let d_ty = motive_diag(motive, big_a);
                        let rest = m - k1 - kp;
                        for kd in 1..rest {
                            let ds: Vec<Term> = self.level(&ext, kd).of_type(&d_ty).cloned().collect();
                            if ds.is_empty() {
                                continue;
                            }
                            let rest = rest - kd;
                            // idconv: |a| = rest
                            for a in self.level(ctx, rest).of_type(big_a) {
                                let refl = Term::refl(big_a.clone(), a.clone());
                                for d in &ds {
                                    let rec = Term::idrec(
                                        big_a.clone(),
                                        motive.clone(),
                                        a.clone(),
                                        a.clone(),
                                        refl.clone(),
                                        d.clone(),
                                    );
                                    out.push(
                                        Term::idconv(big_a.clone(), motive.clone(), a.clone(), d.clone()),
                                        Term::id(motive_at(motive, a, a, &refl), rec, subst0(d, a)),
                                    );
                                }
                            }
                            // idrec: |a| + |b| + |p| = rest
                            for ka in 1..rest {
                                for kb in 1..rest - ka {
                                    let kpath = rest - ka - kb;
                                    if kpath == 0 {
                                        continue;
                                    }
                                    let la = self.level(ctx, ka);
                                    let lb = self.level(ctx, kb);
                                    let lp = self.level(ctx, kpath);
                                    for a in la.of_type(big_a) {
                                        for b in lb.of_type(big_a) {
                                            let path_ty = Term::id(big_a.clone(), a.clone(), b.clone());
                                            for p in lp.of_type(&path_ty) {
                                                for d in &ds {
                                                    out.push(
                                                        Term::idrec(
                                                            big_a.clone(),
                                                            motive.clone(),
                                                            a.clone(),
                                                            b.clone(),
                                                            p.clone(),
                                                            d.clone(),
                                                        ),
                                                        motive_at(motive, a, b, p),
                                                    );
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        // natrec(P, z, s, m), natconv_zero(P, z, s), natconv_succ(P, z, s, m)
        let nctx = extended(ctx, &[Term::NatTy]);
        for kp in 1..m {
            for motive in self.types(&nctx, kp).list.iter() {
                let z_ty = subst0(motive, &Term::Zero);
                let s_ctx = extended(ctx, &[Term::NatTy, motive.clone()]);
                let s_ty = motive_step(motive);
                for kz in 1..m - kp {
                    let zs: Vec<Term> = self.level(ctx, kz).of_type(&z_ty).cloned().collect();
                    if zs.is_empty() {
                        continue;
                    }
                    let ks_total = m - kp - kz;
                    for ks in 1..=ks_total {
                        let ss: Vec<Term> = self.level(&s_ctx, ks).of_type(&s_ty).cloned().collect();
                        let km = ks_total - ks;
                        for z in &zs {
                            for s in &ss {
                                let rec = |arg: Term| Term::natrec(motive.clone(), z.clone(), s.clone(), arg);
                                if km == 0 {
                                    out.push(
                                        Term::natconv_zero(motive.clone(), z.clone(), s.clone()),
                                        Term::id(z_ty.clone(), rec(Term::Zero), z.clone()),
                                    );
                                    continue;
                                }
                                for arg in self.level(ctx, km).of_type(&nat) {
                                    out.push(rec(arg.clone()), subst0(motive, arg));
                                    let succ = Term::succ(arg.clone());
                                    out.push(
                                        Term::natconv_succ(motive.clone(), z.clone(), s.clone(), arg.clone()),
                                        Term::id(
                                            subst0(motive, &succ),
                                            rec(succ.clone()),
                                            scase_at(s, arg, &rec(arg.clone())),
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Every raw (not necessarily well-typed) term of exactly `n` nodes over
/// `scope` variables, the given constants, `Nat` and `zero`. Grows very
/// quickly with `n`.
pub fn raw_terms(scope: usize, n: usize, constants: &[&str]) -> Vec<Term> {
    let mut memo = HashMap::new();
    raw(scope, n, constants, &mut memo)
}

fn raw(
    scope: usize,
    n: usize,
    constants: &[&str],
    memo: &mut HashMap<(usize, usize), Vec<Term>>,
) -> Vec<Term> {
    if let Some(v) = memo.get(&(scope, n)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.extend((0..scope).map(Term::var));
        out.extend(constants.iter().map(|c| Term::constant(*c)));
        out.push(Term::NatTy);
        out.push(Term::Zero);
    } else if n > 1 {
        for kind in Kind::ALL {
            let binders = kind.binders();
            if binders.is_empty() {
                continue;
            }
            for sizes in compositions(n - 1, binders.len()) {
                let mut acc: Vec<Vec<Term>> = vec![Vec::new()];
                for (&b, &k) in binders.iter().zip(&sizes) {
                    let kids = raw(scope + b, k, constants, memo);
                    let mut next = Vec::with_capacity(acc.len() * kids.len());
                    for prefix in &acc {
                        for c in &kids {
                            let mut v = prefix.clone();
                            v.push(c.clone());
                            next.push(v);
                        }
                    }
                    acc = next;
                }
                out.extend(acc.into_iter().filter_map(|kids| Term::from_parts(kind, kids)));
            }
        }
    }
    memo.insert((scope, n), out.clone());
    out
}

/// Ordered ways to write `total` as `parts` positive summands.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Context;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.add_type("A").unwrap();
        s.add_constant("a", Term::constant("A")).unwrap();
        s
    }

    #[test]
    fn variable_rule_instances() {
        let s = sig();
        let ctx = Context::from_entries(vec![Term::constant("A")]);
        let j = Judgement::HasType(ctx, Term::var(0), Term::constant("A"));
        assert_eq!(oracle_derivable(&s, &j, 10), Ok(true));
        let j = Judgement::HasType(Context::new(), Term::var(0), Term::constant("A"));
        assert_eq!(oracle_derivable(&s, &j, 10), Ok(false));
    }

    #[test]
    fn resource_cap() {
        let s = sig();
        let j = Judgement::HasType(Context::new(), Term::numeral(20), Term::NatTy);
        assert!(oracle_derivable(&s, &j, 10).is_err());
    }

    #[test]
    fn small_examples() {
        let s = sig();
        let a = Term::constant("A");
        let mut o = Oracle::new(&s, 10);
        let id = Term::lambda(a.clone(), a.clone(), Term::var(0));
        let j = Judgement::HasType(Context::new(), id.clone(), Term::pi(a.clone(), a.clone()));
        assert_eq!(o.derivable(&j), Ok(true));
        let app = Term::app(a.clone(), a.clone(), id.clone(), Term::constant("a"));
        let j = Judgement::HasType(Context::new(), app, a.clone());
        assert_eq!(o.derivable(&j), Ok(true));
        let beta = Term::betaconv(a.clone(), a.clone(), Term::constant("a"), Term::var(0));
        let ty = Term::id(
            a.clone(),
            Term::app(a.clone(), a.clone(), id, Term::constant("a")),
            Term::constant("a"),
        );
        let j = Judgement::HasType(Context::new(), beta, ty);
        assert_eq!(o.derivable(&j), Ok(true));
        let j = Judgement::TypeWF(Context::new(), Term::id(a.clone(), Term::Zero, Term::Zero));
        assert_eq!(o.derivable(&j), Ok(false));
    }

    #[test]
    fn textbook_substitutions() {
        // Id(A, x, y)[a, a, refl / x, y, u] = Id(A, a, a)
        let a = Term::constant("A");
        let motive = Term::id(a.clone(), Term::var(2), Term::var(1));
        let k = Term::constant("a");
        assert_eq!(
            motive_at(&motive, &k, &k, &Term::refl(a.clone(), k.clone())),
            Term::id(a.clone(), k.clone(), k.clone())
        );
        assert_eq!(
            motive_diag(&Term::id(a.clone(), Term::var(1), Term::var(2)), &a),
            Term::id(a.clone(), Term::var(0), Term::var(0))
        );
        let u_motive = Term::id(
            Term::id(a.clone(), Term::var(2), Term::var(1)),
            Term::var(0),
            Term::var(0),
        );
        assert_eq!(
            motive_diag(&u_motive, &a),
            Term::id(
                Term::id(a.clone(), Term::var(0), Term::var(0)),
                Term::refl(a.clone(), Term::var(0)),
                Term::refl(a.clone(), Term::var(0))
            )
        );
        assert_eq!(
            motive_step(&Term::id(Term::NatTy, Term::var(0), Term::var(1))),
            Term::id(Term::NatTy, Term::succ(Term::var(1)), Term::var(2))
        );
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(5, 3).len(), 6);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn raw_counts() {
        assert_eq!(raw_terms(0, 1, &["A"]).len(), 3);
        // succ(leaf): 3; Refl(leaf, leaf): 9; Pi(leaf, leaf under 1): 3 * 4
        assert_eq!(raw_terms(0, 2, &["A"]).len(), 3);
        assert_eq!(raw_terms(0, 3, &["A"]).len(), 3 + 12 + 9);
    }
}
