//! Seeded random generation of well-typed terms, and single-node mutations.
//!
//! Terms are built forwards from the typing rules, so each generated pair
//! `(t, σ)` is derivable by construction; tests still run the kernel on
//! every one of them. The signature is fixed: `A : Type`, `a : A`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checker::Judgement;
use crate::subst::{subst, weaken, SubstEnv};
use crate::syntax::{Context, Kind, Signature, Term};

pub fn signature() -> Signature {
    let mut s = Signature::new();
    s.add_type("A").expect("fresh");
    s.add_constant("a", Term::constant("A")).expect("fresh");
    s
}

fn atom() -> Term {
    Term::constant("A")
}

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A derivable `Γ ⊢ t ∈ σ` with `Γ` of at most `max_ctx` entries.
    pub fn judgement(&mut self, max_ctx: usize, depth: usize) -> Judgement {
        let len = self.rng.gen_range(0..=max_ctx);
        let ctx = self.context(len, 2);
        let (t, s) = self.term_in(ctx.entries(), depth);
        Judgement::HasType(ctx, t, s)
    }

    pub fn context(&mut self, len: usize, depth: usize) -> Context {
        let mut ctx = Context::new();
        for _ in 0..len {
            let ty = self.type_in(ctx.entries(), depth);
            ctx.push(ty);
        }
        ctx
    }

    pub fn type_in(&mut self, ctx: &[Term], depth: usize) -> Term {
        if depth == 0 {
            return if self.rng.gen_bool(0.5) {
                atom()
            } else {
                Term::NatTy
            };
        }
        match self.rng.gen_range(0..5) {
            0 => atom(),
            1 => Term::NatTy,
            2 => {
                let dom = self.type_in(ctx, depth - 1);
                let cod = self.type_in(&extend(ctx, std::slice::from_ref(&dom)), depth - 1);
                Term::pi(dom, cod)
            }
            _ => {
                let (t, s) = self.term_in(ctx, depth - 1);
                let u = self.inhabit(ctx, &s, depth - 1).unwrap_or_else(|| t.clone());
                if self.rng.gen_bool(0.5) {
                    Term::id(s, t, u)
                } else {
                    Term::id(s, u, t)
                }
            }
        }
    }

    fn leaf(&mut self, ctx: &[Term]) -> (Term, Term) {
        let k = self.rng.gen_range(0..ctx.len() + 2);
        if k < ctx.len() {
            let ty = weaken(&ctx[ctx.len() - 1 - k], k + 1);
            (Term::var(k), ty)
        } else if k == ctx.len() {
            (Term::constant("a"), atom())
        } else {
            (Term::Zero, Term::NatTy)
        }
    }

    pub fn nat_term(&mut self, ctx: &[Term], depth: usize) -> Term {
        let nat_vars: Vec<usize> = (0..ctx.len())
            .filter(|&i| ctx[ctx.len() - 1 - i] == Term::NatTy)
            .collect();
        if depth == 0 {
            return match nat_vars.choose(&mut self.rng) {
                Some(&i) if self.rng.gen_bool(0.5) => Term::var(i),
                _ => Term::numeral(self.rng.gen_range(0..3)),
            };
        }
        match self.rng.gen_range(0..4) {
            0 => Term::succ(self.nat_term(ctx, depth - 1)),
            1 => {
                // a closed recursion with a constant motive
                let z = self.nat_term(ctx, depth - 1);
                let m = self.nat_term(ctx, depth - 1);
                Term::natrec(Term::NatTy, z, Term::succ(Term::var(0)), m)
            }
            _ => self.nat_term(ctx, 0),
        }
    }

    /// Some `t` with `ctx ⊢ t ∈ ty` for easily inhabited types.
    pub fn inhabit(&mut self, ctx: &[Term], ty: &Term, depth: usize) -> Option<Term> {
        let vars: Vec<usize> = (0..ctx.len())
            .filter(|&i| weaken(&ctx[ctx.len() - 1 - i], i + 1) == *ty)
            .collect();
        if let Some(&i) = vars.choose(&mut self.rng) {
            if self.rng.gen_bool(0.5) {
                return Some(Term::var(i));
            }
        }
        match ty {
            Term::NatTy => Some(self.nat_term(ctx, depth.min(2))),
            Term::Const(c) if &**c == "A" => Some(Term::constant("a")),
            Term::Id { over, lhs, rhs } if lhs == rhs => Some(Term::refl((**over).clone(), (**lhs).clone())),
            Term::Pi { domain, codomain } => {
                let body = self.inhabit(&extend(ctx, &[(**domain).clone()]), codomain, depth)?;
                Some(Term::lambda((**domain).clone(), (**codomain).clone(), body))
            }
            _ => vars.first().map(|&i| Term::var(i)),
        }
    }

    /// A path out of `a : ty`: `refl`, or a variable of a matching `Id`.
    fn path_from(&mut self, ctx: &[Term], a: &Term, ty: &Term) -> (Term, Term) {
        let mut paths = Vec::new();
        for i in 0..ctx.len() {
            if let Term::Id { over, lhs, rhs } = &weaken(&ctx[ctx.len() - 1 - i], i + 1) {
                if **over == *ty && **lhs == *a {
                    paths.push((Term::var(i), (**rhs).clone()));
                }
            }
        }
        match paths.choose(&mut self.rng) {
            Some((p, b)) if self.rng.gen_bool(0.7) => (b.clone(), p.clone()),
            _ => (a.clone(), Term::refl(ty.clone(), a.clone())),
        }
    }

    /// An identity-elimination motive over `ty` together with a base case.
    fn id_motive(&mut self, ctx: &[Term], ty: &Term, depth: usize) -> (Term, Term) {
        match self.rng.gen_range(0..4) {
            0 => (
                Term::id(weaken(ty, 3), Term::var(2), Term::var(1)),
                Term::refl(weaken(ty, 1), Term::var(0)),
            ),
            1 => {
                let paths = Term::id(weaken(ty, 3), Term::var(2), Term::var(1));
                let base = Term::refl(weaken(ty, 1), Term::var(0));
                (
                    Term::id(paths, Term::var(0), Term::var(0)),
                    Term::refl(Term::id(weaken(ty, 1), Term::var(0), Term::var(0)), base),
                )
            }
            k => {
                // abstract the base case's type over x (or y)
                let (d, dty) = self.term_in(&extend(ctx, std::slice::from_ref(ty)), depth);
                let to = Term::var(if k == 2 { 2 } else { 1 });
                let motive = SubstEnv::new(vec![std::borrow::Cow::Owned(to)], 3).apply(&dty);
                (motive, d)
            }
        }
    }

    /// A motive over `Nat` with zero and successor cases.
    fn nat_motive(&mut self, ctx: &[Term], depth: usize) -> (Term, Term, Term) {
        if self.rng.gen_bool(0.5) {
            let (z, c) = self.term_in(ctx, depth);
            let s = if self.rng.gen_bool(0.5) {
                Term::var(0)
            } else {
                weaken(&z, 2)
            };
            (weaken(&c, 1), z, s)
        } else {
            let nat = Term::NatTy;
            (
                Term::id(nat.clone(), Term::var(0), Term::var(0)),
                Term::refl(nat.clone(), Term::Zero),
                Term::refl(nat, Term::succ(Term::var(1))),
            )
        }
    }

    pub fn term_in(&mut self, ctx: &[Term], depth: usize) -> (Term, Term) {
        if depth == 0 || self.rng.gen_ratio(1, 5) {
            return self.leaf(ctx);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..10) {
            0 => (Term::succ(self.nat_term(ctx, d)), Term::NatTy),
            1 => {
                let (t, s) = self.term_in(ctx, d);
                (Term::refl(s.clone(), t.clone()), Term::id(s, t.clone(), t))
            }
            2 => {
                let dom = self.type_in(ctx, d.min(2));
                let (t, cod) = self.term_in(&extend(ctx, std::slice::from_ref(&dom)), d);
                (Term::lambda(dom.clone(), cod.clone(), t), Term::pi(dom, cod))
            }
            3 => {
                let (a, dom) = self.term_in(ctx, d);
                let (t, cod) = self.term_in(&extend(ctx, std::slice::from_ref(&dom)), d);
                let fun = self
                    .function(ctx, &dom, &cod)
                    .unwrap_or_else(|| Term::lambda(dom.clone(), cod.clone(), t));
                let ty = subst(&cod, &a, 0);
                (Term::app(dom, cod, fun, a), ty)
            }
            4 => {
                let (a, dom) = self.term_in(ctx, d);
                let (t, cod) = self.term_in(&extend(ctx, std::slice::from_ref(&dom)), d);
                let lam = Term::lambda(dom.clone(), cod.clone(), t.clone());
                let ty = Term::id(
                    subst(&cod, &a, 0),
                    Term::app(dom.clone(), cod.clone(), lam, a.clone()),
                    subst(&t, &a, 0),
                );
                (Term::betaconv(dom, cod, a, t), ty)
            }
            5 | 6 => {
                let (a, ty) = self.term_in(ctx, d);
                let (motive, base) = self.id_motive(ctx, &ty, d);
                if self.rng.gen_bool(0.5) {
                    let (b, p) = self.path_from(ctx, &a, &ty);
                    let res = env(&[&a, &b, &p]).apply(&motive);
                    (Term::idrec(ty, motive, a, b, p, base), res)
                } else {
                    let refl = Term::refl(ty.clone(), a.clone());
                    let res = Term::id(
                        env(&[&a, &a, &refl]).apply(&motive),
                        Term::idrec(
                            ty.clone(),
                            motive.clone(),
                            a.clone(),
                            a.clone(),
                            refl,
                            base.clone(),
                        ),
                        subst(&base, &a, 0),
                    );
                    (Term::idconv(ty, motive, a, base), res)
                }
            }
            _ => {
                let (motive, z, s) = self.nat_motive(ctx, d);
                match self.rng.gen_range(0..3) {
                    0 => {
                        let m = self.nat_term(ctx, d);
                        let ty = subst(&motive, &m, 0);
                        (Term::natrec(motive, z, s, m), ty)
                    }
                    1 => {
                        let ty = Term::id(
                            subst(&motive, &Term::Zero, 0),
                            Term::natrec(motive.clone(), z.clone(), s.clone(), Term::Zero),
                            z.clone(),
                        );
                        (Term::natconv_zero(motive, z, s), ty)
                    }
                    _ => {
                        let m = self.nat_term(ctx, d);
                        let rec = |n: Term| Term::natrec(motive.clone(), z.clone(), s.clone(), n);
                        let sm = Term::succ(m.clone());
                        let ty = Term::id(
                            subst(&motive, &sm, 0),
                            rec(sm),
                            env(&[&m, &rec(m.clone())]).apply(&s),
                        );
                        (Term::natconv_succ(motive, z, s, m), ty)
                    }
                }
            }
        }
    }

    /// A context variable of type `Pi(dom, cod)`, if any.
    fn function(&mut self, ctx: &[Term], dom: &Term, cod: &Term) -> Option<Term> {
        let want = Term::pi(dom.clone(), cod.clone());
        let found: Vec<usize> = (0..ctx.len())
            .filter(|&i| weaken(&ctx[ctx.len() - 1 - i], i + 1) == want)
            .collect();
        found.choose(&mut self.rng).map(|&i| Term::var(i))
    }
}

fn extend(ctx: &[Term], more: &[Term]) -> Vec<Term> {
    let mut v = ctx.to_vec();
    v.extend_from_slice(more);
    v
}

fn env<'a>(terms: &[&'a Term]) -> SubstEnv<'a> {
    SubstEnv::borrowed(terms, 0)
}

/// Leaves usable in a scope of `scope` variables over the fixed signature.
pub fn leaves(scope: usize) -> Vec<Term> {
    let mut v: Vec<Term> = (0..scope).map(Term::var).collect();
    v.extend([atom(), Term::constant("a"), Term::NatTy, Term::Zero]);
    v
}

/// Every term differing from `t` at exactly one node: a subtree replaced
/// by a leaf, a node wrapped in `succ`, or `natrec` and `natconv_succ`
/// swapped. All results differ syntactically from `t` and are well scoped
/// in `scope`.
pub fn mutations(t: &Term, scope: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for l in leaves(scope) {
        if l != *t {
            out.push(l);
        }
    }
    out.push(Term::succ(t.clone()));
    let kids: Vec<Term> = t.children().into_iter().cloned().collect();
    let swapped = match t.kind() {
        Kind::NatRec => Some(Kind::NatConvSucc),
        Kind::NatConvSucc => Some(Kind::NatRec),
        _ => None,
    };
    if let Some(k) = swapped {
        out.extend(Term::from_parts(k, kids.clone()));
    }
    for (i, &b) in t.kind().binders().iter().enumerate() {
        for m in mutations(&kids[i], scope + b) {
            let mut v = kids.clone();
            v[i] = m;
            out.extend(Term::from_parts(t.kind(), v));
        }
    }
    out
}
