//! De Bruijn shifting, capture-avoiding substitution, simultaneous
//! substitution environments and context morphisms.
//!
//! The checker never needs `B[a/x]` as a tree when all it wants to know is
//! whether `B[a/x] ≡ σ`; [`equal_under_subst`] answers that by walking `σ`
//! and expanding the environment on demand, so the cost is linear in `σ`.

use std::borrow::Cow;

use thiserror::Error;

use crate::grow;
use crate::syntax::{Context, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("shifting variable {index} by {by} would make it negative")]
    Underflow { index: usize, by: isize },
}

/// Adds `by` to every free index `>= cutoff`.
pub fn shift(t: &Term, by: isize, cutoff: usize) -> Result<Term, ShiftError> {
    if by >= 0 {
        return Ok(weaken_at(t, by as usize, cutoff));
    }
    let down = by.unsigned_abs();
    if let Some(index) = lowest_free_at_or_above(t, cutoff) {
        if index < cutoff + down {
            return Err(ShiftError::Underflow { index, by });
        }
    }
    Ok(map_vars(t, cutoff, &|i, _| Term::Var(i - down)))
}

fn lowest_free_at_or_above(t: &Term, cutoff: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut stack = vec![(t, 0usize)];
    while let Some((t, depth)) = stack.pop() {
        if let Term::Var(i) = t {
            if *i >= depth + cutoff {
                let rel = i - depth;
                best = Some(best.map_or(rel, |b| b.min(rel)));
            }
        }
        for (c, b) in t.children().into_iter().zip(t.kind().binders()) {
            stack.push((c, depth + b));
        }
    }
    best
}

/// Rebuilds `t`, replacing each free variable `Var(i)` with `i >= depth + cutoff`
/// (where `depth` is the binder depth at the occurrence) by `f(i, depth)`.
fn map_vars(t: &Term, cutoff: usize, f: &dyn Fn(usize, usize) -> Term) -> Term {
    fn go(t: &Term, depth: usize, cutoff: usize, f: &dyn Fn(usize, usize) -> Term) -> Term {
        match t {
            Term::Var(i) if *i >= depth + cutoff => f(*i, depth),
            _ if t.is_leaf() => t.clone(),
            _ => grow(|| t.map_children(|c, b| go(c, depth + b, cutoff, f))),
        }
    }
    go(t, 0, cutoff, f)
}

/// Weakening: adds `by` to every free index `>= cutoff`. Never fails.
pub fn weaken_at(t: &Term, by: usize, cutoff: usize) -> Term {
    if by == 0 {
        return t.clone();
    }
    map_vars(t, cutoff, &|i, _| Term::Var(i + by))
}

/// Weakens a term by `by` fresh innermost variables.
pub fn weaken(t: &Term, by: usize) -> Term {
    weaken_at(t, by, 0)
}

/// `t[a/x]` where `x` is `Var(at)`.
///
/// `t` lives in `Γ, x, Δ` with `|Δ| = at` and `a` lives in `Γ`; the result
/// lives in `Γ, Δ[a/x]`. Indices above `at` move down by one.
pub fn subst(t: &Term, a: &Term, at: usize) -> Term {
    map_vars(t, at, &|i, depth| {
        if i == depth + at {
            weaken(a, depth + at)
        } else {
            Term::Var(i - 1)
        }
    })
}

/// A simultaneous substitution for the innermost block of variables.
///
/// Applied to a term living in `Ψ, x₁, …, xₙ`, it replaces `xⱼ` by
/// `terms[j-1]` (so the innermost variable `Var(0)` maps to the last term)
/// and sends an outer variable `Var(k)`, `k >= n`, to `Var(k - n + shift)`.
/// The terms themselves live in the target context.
#[derive(Clone, Debug)]
pub struct SubstEnv<'a> {
    terms: Vec<Cow<'a, Term>>,
    shift: usize,
}

enum Resolved<'e> {
    Var(usize),
    Block(&'e Term, usize),
}

impl<'a> SubstEnv<'a> {
    pub fn new(terms: Vec<Cow<'a, Term>>, shift: usize) -> SubstEnv<'a> {
        SubstEnv { terms, shift }
    }

    /// `[a/x]` for the innermost variable.
    pub fn single(a: &'a Term) -> SubstEnv<'a> {
        SubstEnv::new(vec![Cow::Borrowed(a)], 0)
    }

    /// Borrows each term; `terms` is outermost first.
    pub fn borrowed(terms: &[&'a Term], shift: usize) -> SubstEnv<'a> {
        SubstEnv::new(terms.iter().map(|t| Cow::Borrowed(*t)).collect(), shift)
    }

    /// No block; every variable is shifted up by `by`.
    pub fn shift_only(by: usize) -> SubstEnv<'a> {
        SubstEnv::new(Vec::new(), by)
    }

    pub fn block_len(&self) -> usize {
        self.terms.len()
    }

    pub fn outer_shift(&self) -> usize {
        self.shift
    }

    /// The `j`-th block term, outermost first.
    pub fn term(&self, j: usize) -> Option<&Term> {
        self.terms.get(j).map(|c| &**c)
    }

    fn resolve(&self, k: usize, depth: usize) -> Resolved<'_> {
        let n = self.terms.len();
        if k < depth {
            Resolved::Var(k)
        } else if k - depth < n {
            Resolved::Block(&self.terms[n - 1 - (k - depth)], depth)
        } else {
            Resolved::Var(k - n + self.shift)
        }
    }

    /// Eager application.
    pub fn apply(&self, t: &Term) -> Term {
        self.apply_metered(t, &mut 0)
    }

    /// Eager application; adds the size of the result to `steps`.
    pub fn apply_metered(&self, t: &Term, steps: &mut u64) -> Term {
        fn go(env: &SubstEnv<'_>, t: &Term, depth: usize, steps: &mut u64) -> Term {
            match t {
                Term::Var(k) => match env.resolve(*k, depth) {
                    Resolved::Var(v) => {
                        *steps += 1;
                        Term::Var(v)
                    }
                    Resolved::Block(u, by) => {
                        let out = weaken(u, by);
                        *steps += out.size() as u64;
                        out
                    }
                },
                _ => {
                    *steps += 1;
                    if t.is_leaf() {
                        t.clone()
                    } else {
                        grow(|| t.map_children(|c, b| go(env, c, depth + b, steps)))
                    }
                }
            }
        }
        go(self, t, 0, steps)
    }
}

/// True iff `env.apply(t) ≡ target`, without building `env.apply(t)`.
pub fn equal_under_subst(t: &Term, env: &SubstEnv<'_>, target: &Term) -> bool {
    equal_under_subst_metered(t, env, target, &mut 0)
}

/// [`equal_under_subst`] that adds one step per visited node of `target`.
/// The walk aborts at the first mismatch, so the cost never exceeds
/// `size(target)`.
pub fn equal_under_subst_metered(t: &Term, env: &SubstEnv<'_>, target: &Term, steps: &mut u64) -> bool {
    enum Frame<'x> {
        // `t` at binder depth `depth`, the environment applied lazily.
        Subst(&'x Term, usize, &'x Term),
        // a block term `u` at local depth `local`, free indices raised by `by`.
        Shifted(&'x Term, usize, usize, &'x Term),
    }
    let mut stack = vec![Frame::Subst(t, 0, target)];
    while let Some(frame) = stack.pop() {
        *steps += 1;
        match frame {
            Frame::Subst(t, depth, target) => match t {
                Term::Var(k) => match env.resolve(*k, depth) {
                    Resolved::Var(v) => {
                        if !matches!(target, Term::Var(w) if *w == v) {
                            return false;
                        }
                    }
                    Resolved::Block(u, by) => {
                        // The block term is compared against the same target
                        // node; do not charge twice.
                        *steps -= 1;
                        stack.push(Frame::Shifted(u, 0, by, target));
                    }
                },
                _ => {
                    if !same_head(t, target) {
                        return false;
                    }
                    for ((c, tc), b) in t
                        .children()
                        .into_iter()
                        .zip(target.children())
                        .zip(t.kind().binders())
                    {
                        stack.push(Frame::Subst(c, depth + b, tc));
                    }
                }
            },
            Frame::Shifted(u, local, by, target) => match u {
                Term::Var(j) => {
                    let v = if *j < local { *j } else { *j + by };
                    if !matches!(target, Term::Var(w) if *w == v) {
                        return false;
                    }
                }
                _ => {
                    if !same_head(u, target) {
                        return false;
                    }
                    for ((c, tc), b) in u
                        .children()
                        .into_iter()
                        .zip(target.children())
                        .zip(u.kind().binders())
                    {
                        stack.push(Frame::Shifted(c, local + b, by, tc));
                    }
                }
            },
        }
    }
    true
}

/// Compares `weaken(t, by) ≡ target` lazily.
pub fn equal_weakened_metered(t: &Term, by: usize, target: &Term, steps: &mut u64) -> bool {
    equal_under_subst_metered(t, &SubstEnv::shift_only(by), target, steps)
}

fn same_head(s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Var(i), Term::Var(j)) => i == j,
        (Term::Const(a), Term::Const(b)) => a == b,
        _ => s.kind() == t.kind(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("morphism into a context of length {target} needs {target} terms, got {given}")]
    Length { target: usize, given: usize },
    #[error("component {index} is not scoped in the source context")]
    Unscoped { index: usize },
    #[error("term is not scoped in the morphism's target context")]
    Scope,
    #[error("cannot compose: source of the first is not the target of the second")]
    Mismatch,
}

/// A context morphism `f : Δ → Γ`, a sequence `(t₁, …, tₙ)` with one term
/// (living in `Δ`) per entry of `Γ`, outermost first.
///
/// Only scoping is enforced here; the typing conditions are checked by
/// `checker::check_morphism`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextMorphism {
    source: Context,
    target: Context,
    terms: Vec<Term>,
}

impl ContextMorphism {
    pub fn new(source: Context, target: Context, terms: Vec<Term>) -> Result<ContextMorphism, MorphismError> {
        if terms.len() != target.len() {
            return Err(MorphismError::Length {
                target: target.len(),
                given: terms.len(),
            });
        }
        if let Some(index) = terms.iter().position(|t| !t.is_scoped(source.len())) {
            return Err(MorphismError::Unscoped { index });
        }
        Ok(ContextMorphism {
            source,
            target,
            terms,
        })
    }

    /// `1_Γ = (x₁, …, xₙ)`.
    pub fn identity(ctx: &Context) -> ContextMorphism {
        let n = ctx.len();
        ContextMorphism {
            source: ctx.clone(),
            target: ctx.clone(),
            terms: (0..n).map(|j| Term::Var(n - 1 - j)).collect(),
        }
    }

    /// `!_Δ : Δ → []`.
    pub fn terminal(ctx: &Context) -> ContextMorphism {
        ContextMorphism {
            source: ctx.clone(),
            target: Context::new(),
            terms: Vec::new(),
        }
    }

    /// `(f, t) : Δ → [Γ, x : σ]`.
    pub fn extend(mut self, sigma: Term, t: Term) -> Result<ContextMorphism, MorphismError> {
        if !sigma.is_scoped(self.target.len()) {
            return Err(MorphismError::Scope);
        }
        if !t.is_scoped(self.source.len()) {
            return Err(MorphismError::Unscoped {
                index: self.terms.len(),
            });
        }
        self.target.push(sigma);
        self.terms.push(t);
        Ok(self)
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn env(&self) -> SubstEnv<'_> {
        SubstEnv::new(self.terms.iter().map(Cow::Borrowed).collect(), 0)
    }
}

/// Generalised substitution `θ[f]`. `theta` must be scoped over `f`'s target.
pub fn apply_morphism(theta: &Term, f: &ContextMorphism) -> Result<Term, MorphismError> {
    if !theta.is_scoped(f.target.len()) {
        return Err(MorphismError::Scope);
    }
    Ok(f.env().apply(theta))
}

/// `f ∘ g = (t₁[g], …, tₙ[g])` for `g : Θ → Δ` and `f : Δ → Γ`.
pub fn compose(f: &ContextMorphism, g: &ContextMorphism) -> Result<ContextMorphism, MorphismError> {
    if f.source != g.target {
        return Err(MorphismError::Mismatch);
    }
    let env = g.env();
    Ok(ContextMorphism {
        source: g.source.clone(),
        target: f.target.clone(),
        terms: f.terms.iter().map(|t| env.apply(t)).collect(),
    })
}
