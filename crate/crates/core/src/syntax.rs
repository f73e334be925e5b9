//! Core syntax: the single term tree used for both terms and types, together
//! with contexts, telescopes and the signature of postulated constants.
//!
//! Variables are De Bruijn indices (`Var(0)` is the innermost binder), so
//! syntactic equality of core terms is alpha-equivalence. Every constructor
//! carries all of the annotations its typing rule mentions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::grow;

/// Identifier of a postulated constant or atomic type.
pub type Name = Arc<str>;

/// A core term or type.
///
/// Fields documented as "binding k" are interpreted in the enclosing context
/// extended by k new variables; within them indices `0..k` refer to the new
/// binders, innermost (last bound) first.
// `PartialEq` is hand-written only to avoid deep recursion; it is plain
// structural equality, so the derived `Hash` agrees with it.
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Debug, Hash, Eq)]
pub enum Term {
    Var(usize),
    Const(Name),
    /// `Π(A, [x]B)`; `codomain` binding 1.
    Pi {
        domain: Box<Term>,
        codomain: Box<Term>,
    },
    /// `λ(A, [x]B, [x]t)`; `codomain` and `body` binding 1.
    Lambda {
        domain: Box<Term>,
        codomain: Box<Term>,
        body: Box<Term>,
    },
    /// `app(A, [x]B, f, a)`; `codomain` binding 1.
    App {
        domain: Box<Term>,
        codomain: Box<Term>,
        fun: Box<Term>,
        arg: Box<Term>,
    },
    /// `betaconv(A, [x]B, a, [x]t)`; `codomain` and `body` binding 1.
    BetaConv {
        domain: Box<Term>,
        codomain: Box<Term>,
        arg: Box<Term>,
        body: Box<Term>,
    },
    /// `lhs =_over rhs`.
    Id {
        over: Box<Term>,
        lhs: Box<Term>,
        rhs: Box<Term>,
    },
    Refl {
        over: Box<Term>,
        point: Box<Term>,
    },
    /// `idrec(A, [x,y,u]P, a, b, p, [x]d)`; `motive` binding 3 (u innermost),
    /// `base` binding 1.
    IdRec {
        over: Box<Term>,
        motive: Box<Term>,
        lhs: Box<Term>,
        rhs: Box<Term>,
        path: Box<Term>,
        base: Box<Term>,
    },
    /// `idconv(A, [x,y,u]P, a, [x]d)`.
    IdConv {
        over: Box<Term>,
        motive: Box<Term>,
        point: Box<Term>,
        base: Box<Term>,
    },
    NatTy,
    Zero,
    Succ(Box<Term>),
    /// `natrec([n]P, z, [n,ih]s, m)`; `motive` binding 1, `scase` binding 2
    /// (ih innermost).
    NatRec {
        motive: Box<Term>,
        zcase: Box<Term>,
        scase: Box<Term>,
        scrutinee: Box<Term>,
    },
    /// Witness of `natrec(P, z, s, zero) =_{P[zero]} z`.
    NatConvZero {
        motive: Box<Term>,
        zcase: Box<Term>,
        scase: Box<Term>,
    },
    /// Witness of `natrec(P, z, s, succ m) =_{P[succ m]} s[m, natrec(P, z, s, m)]`.
    NatConvSucc {
        motive: Box<Term>,
        zcase: Box<Term>,
        scase: Box<Term>,
        pred: Box<Term>,
    },
}

/// Head constructor of a [`Term`], without its data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Var,
    Const,
    Pi,
    Lambda,
    App,
    BetaConv,
    Id,
    Refl,
    IdRec,
    IdConv,
    NatTy,
    Zero,
    Succ,
    NatRec,
    NatConvZero,
    NatConvSucc,
}

impl Kind {
    pub const ALL: [Kind; 16] = [
        Kind::Var,
        Kind::Const,
        Kind::Pi,
        Kind::Lambda,
        Kind::App,
        Kind::BetaConv,
        Kind::Id,
        Kind::Refl,
        Kind::IdRec,
        Kind::IdConv,
        Kind::NatTy,
        Kind::Zero,
        Kind::Succ,
        Kind::NatRec,
        Kind::NatConvZero,
        Kind::NatConvSucc,
    ];

    /// Number of new variables each child is under, in field order.
    pub const fn binders(self) -> &'static [usize] {
        match self {
            Kind::Var | Kind::Const | Kind::NatTy | Kind::Zero => &[],
            Kind::Pi => &[0, 1],
            Kind::Lambda => &[0, 1, 1],
            Kind::App => &[0, 1, 0, 0],
            Kind::BetaConv => &[0, 1, 0, 1],
            Kind::Id => &[0, 0, 0],
            Kind::Refl => &[0, 0],
            Kind::IdRec => &[0, 3, 0, 0, 0, 1],
            Kind::IdConv => &[0, 3, 0, 1],
            Kind::Succ => &[0],
            Kind::NatRec => &[1, 0, 2, 0],
            Kind::NatConvZero => &[1, 0, 2],
            Kind::NatConvSucc => &[1, 0, 2, 0],
        }
    }

    pub const fn arity(self) -> usize {
        self.binders().len()
    }

    pub const fn field_names(self) -> &'static [&'static str] {
        match self {
            Kind::Var | Kind::Const | Kind::NatTy | Kind::Zero => &[],
            Kind::Pi => &["domain", "codomain"],
            Kind::Lambda => &["domain", "codomain", "body"],
            Kind::App => &["domain", "codomain", "fun", "arg"],
            Kind::BetaConv => &["domain", "codomain", "arg", "body"],
            Kind::Id => &["over", "lhs", "rhs"],
            Kind::Refl => &["over", "point"],
            Kind::IdRec => &["over", "motive", "lhs", "rhs", "path", "base"],
            Kind::IdConv => &["over", "motive", "point", "base"],
            Kind::Succ => &["pred"],
            Kind::NatRec => &["motive", "zcase", "scase", "scrutinee"],
            Kind::NatConvZero => &["motive", "zcase", "scase"],
            Kind::NatConvSucc => &["motive", "zcase", "scase", "pred"],
        }
    }
}

fn bx(t: Term) -> Box<Term> {
    Box::new(t)
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn constant(name: impl Into<Name>) -> Term {
        Term::Const(name.into())
    }

    pub fn pi(domain: Term, codomain: Term) -> Term {
        Term::Pi {
            domain: bx(domain),
            codomain: bx(codomain),
        }
    }

    pub fn lambda(domain: Term, codomain: Term, body: Term) -> Term {
        Term::Lambda {
            domain: bx(domain),
            codomain: bx(codomain),
            body: bx(body),
        }
    }

    pub fn app(domain: Term, codomain: Term, fun: Term, arg: Term) -> Term {
        Term::App {
            domain: bx(domain),
            codomain: bx(codomain),
            fun: bx(fun),
            arg: bx(arg),
        }
    }

    pub fn betaconv(domain: Term, codomain: Term, arg: Term, body: Term) -> Term {
        Term::BetaConv {
            domain: bx(domain),
            codomain: bx(codomain),
            arg: bx(arg),
            body: bx(body),
        }
    }

    pub fn id(over: Term, lhs: Term, rhs: Term) -> Term {
        Term::Id {
            over: bx(over),
            lhs: bx(lhs),
            rhs: bx(rhs),
        }
    }

    pub fn refl(over: Term, point: Term) -> Term {
        Term::Refl {
            over: bx(over),
            point: bx(point),
        }
    }

    pub fn idrec(over: Term, motive: Term, lhs: Term, rhs: Term, path: Term, base: Term) -> Term {
        Term::IdRec {
            over: bx(over),
            motive: bx(motive),
            lhs: bx(lhs),
            rhs: bx(rhs),
            path: bx(path),
            base: bx(base),
        }
    }

    pub fn idconv(over: Term, motive: Term, point: Term, base: Term) -> Term {
        Term::IdConv {
            over: bx(over),
            motive: bx(motive),
            point: bx(point),
            base: bx(base),
        }
    }

    pub fn succ(pred: Term) -> Term {
        Term::Succ(bx(pred))
    }

    pub fn natrec(motive: Term, zcase: Term, scase: Term, scrutinee: Term) -> Term {
        Term::NatRec {
            motive: bx(motive),
            zcase: bx(zcase),
            scase: bx(scase),
            scrutinee: bx(scrutinee),
        }
    }

    pub fn natconv_zero(motive: Term, zcase: Term, scase: Term) -> Term {
        Term::NatConvZero {
            motive: bx(motive),
            zcase: bx(zcase),
            scase: bx(scase),
        }
    }

    pub fn natconv_succ(motive: Term, zcase: Term, scase: Term, pred: Term) -> Term {
        Term::NatConvSucc {
            motive: bx(motive),
            zcase: bx(zcase),
            scase: bx(scase),
            pred: bx(pred),
        }
    }

    /// The numeral `succ^n(zero)`.
    pub fn numeral(n: usize) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::succ(t);
        }
        t
    }

    pub fn kind(&self) -> Kind {
        match self {
            Term::Var(_) => Kind::Var,
            Term::Const(_) => Kind::Const,
            Term::Pi { .. } => Kind::Pi,
            Term::Lambda { .. } => Kind::Lambda,
            Term::App { .. } => Kind::App,
            Term::BetaConv { .. } => Kind::BetaConv,
            Term::Id { .. } => Kind::Id,
            Term::Refl { .. } => Kind::Refl,
            Term::IdRec { .. } => Kind::IdRec,
            Term::IdConv { .. } => Kind::IdConv,
            Term::NatTy => Kind::NatTy,
            Term::Zero => Kind::Zero,
            Term::Succ(_) => Kind::Succ,
            Term::NatRec { .. } => Kind::NatRec,
            Term::NatConvZero { .. } => Kind::NatConvZero,
            Term::NatConvSucc { .. } => Kind::NatConvSucc,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Const(_) | Term::NatTy | Term::Zero)
    }

    /// Direct subterms in field order. Pair with [`Kind::binders`] to know
    /// how many variables each one is under.
    pub fn children(&self) -> SmallVec<[&Term; 6]> {
        let mut out = SmallVec::new();
        match self {
            Term::Var(_) | Term::Const(_) | Term::NatTy | Term::Zero => {}
            Term::Pi { domain, codomain } => out.extend([&**domain, &**codomain]),
            Term::Lambda {
                domain,
                codomain,
                body,
            } => out.extend([&**domain, &**codomain, &**body]),
            Term::App {
                domain,
                codomain,
                fun,
                arg,
            } => out.extend([&**domain, &**codomain, &**fun, &**arg]),
            Term::BetaConv {
                domain,
                codomain,
                arg,
                body,
            } => out.extend([&**domain, &**codomain, &**arg, &**body]),
            Term::Id { over, lhs, rhs } => out.extend([&**over, &**lhs, &**rhs]),
            Term::Refl { over, point } => out.extend([&**over, &**point]),
            Term::IdRec {
                over,
                motive,
                lhs,
                rhs,
                path,
                base,
            } => out.extend([&**over, &**motive, &**lhs, &**rhs, &**path, &**base]),
            Term::IdConv {
                over,
                motive,
                point,
                base,
            } => out.extend([&**over, &**motive, &**point, &**base]),
            Term::Succ(pred) => out.push(&**pred),
            Term::NatRec {
                motive,
                zcase,
                scase,
                scrutinee,
            } => out.extend([&**motive, &**zcase, &**scase, &**scrutinee]),
            Term::NatConvZero { motive, zcase, scase } => out.extend([&**motive, &**zcase, &**scase]),
            Term::NatConvSucc {
                motive,
                zcase,
                scase,
                pred,
            } => out.extend([&**motive, &**zcase, &**scase, &**pred]),
        }
        out
    }

    fn children_mut(&mut self) -> SmallVec<[&mut Box<Term>; 6]> {
        let mut out = SmallVec::new();
        match self {
            Term::Var(_) | Term::Const(_) | Term::NatTy | Term::Zero => {}
            Term::Pi { domain, codomain } => out.extend([domain, codomain]),
            Term::Lambda {
                domain,
                codomain,
                body,
            } => out.extend([domain, codomain, body]),
            Term::App {
                domain,
                codomain,
                fun,
                arg,
            } => out.extend([domain, codomain, fun, arg]),
            Term::BetaConv {
                domain,
                codomain,
                arg,
                body,
            } => out.extend([domain, codomain, arg, body]),
            Term::Id { over, lhs, rhs } => out.extend([over, lhs, rhs]),
            Term::Refl { over, point } => out.extend([over, point]),
            Term::IdRec {
                over,
                motive,
                lhs,
                rhs,
                path,
                base,
            } => out.extend([over, motive, lhs, rhs, path, base]),
            Term::IdConv {
                over,
                motive,
                point,
                base,
            } => out.extend([over, motive, point, base]),
            Term::Succ(pred) => out.push(pred),
            Term::NatRec {
                motive,
                zcase,
                scase,
                scrutinee,
            } => out.extend([motive, zcase, scase, scrutinee]),
            Term::NatConvZero { motive, zcase, scase } => out.extend([motive, zcase, scase]),
            Term::NatConvSucc {
                motive,
                zcase,
                scase,
                pred,
            } => out.extend([motive, zcase, scase, pred]),
        }
        out
    }

    /// Builds a non-leaf node from its kind and children in field order.
    /// Returns `None` for leaf kinds with data or a wrong child count.
    pub fn from_parts(kind: Kind, children: Vec<Term>) -> Option<Term> {
        if children.len() != kind.arity() {
            return None;
        }
        let mut it = children.into_iter();
        let mut next = || it.next().expect("arity checked");
        Some(match kind {
            Kind::Var | Kind::Const => return None,
            Kind::NatTy => Term::NatTy,
            Kind::Zero => Term::Zero,
            Kind::Pi => Term::pi(next(), next()),
            Kind::Lambda => Term::lambda(next(), next(), next()),
            Kind::App => Term::app(next(), next(), next(), next()),
            Kind::BetaConv => Term::betaconv(next(), next(), next(), next()),
            Kind::Id => Term::id(next(), next(), next()),
            Kind::Refl => Term::refl(next(), next()),
            Kind::IdRec => Term::idrec(next(), next(), next(), next(), next(), next()),
            Kind::IdConv => Term::idconv(next(), next(), next(), next()),
            Kind::Succ => Term::succ(next()),
            Kind::NatRec => Term::natrec(next(), next(), next(), next()),
            Kind::NatConvZero => Term::natconv_zero(next(), next(), next()),
            Kind::NatConvSucc => Term::natconv_succ(next(), next(), next(), next()),
        })
    }

    /// Rebuilds this node with each child replaced by `f(child, binders)`.
    /// Leaves are returned as copies.
    pub fn map_children(&self, mut f: impl FnMut(&Term, usize) -> Term) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::Const(c) => Term::Const(c.clone()),
            _ => {
                let kind = self.kind();
                let kids = self
                    .children()
                    .into_iter()
                    .zip(kind.binders())
                    .map(|(c, &b)| f(c, b))
                    .collect();
                Term::from_parts(kind, kids).expect("same shape")
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            n += 1;
            stack.extend(t.children());
        }
        n
    }

    /// True if some free variable has index `>= cutoff`.
    pub fn has_free_at_or_above(&self, cutoff: usize) -> bool {
        let mut stack = vec![(self, 0usize)];
        while let Some((t, depth)) = stack.pop() {
            if let Term::Var(i) = t {
                if *i >= depth + cutoff {
                    return true;
                }
            }
            for (c, b) in t.children().into_iter().zip(t.kind().binders()) {
                stack.push((c, depth + b));
            }
        }
        false
    }

    /// True if the term is well scoped in a context of length `len`.
    pub fn is_scoped(&self, len: usize) -> bool {
        !self.has_free_at_or_above(len)
    }

    /// True if `Var(index)` (relative to the top) occurs free.
    pub fn mentions_var(&self, index: usize) -> bool {
        let mut stack = vec![(self, 0usize)];
        while let Some((t, depth)) = stack.pop() {
            if let Term::Var(i) = t {
                if *i == depth + index {
                    return true;
                }
            }
            for (c, b) in t.children().into_iter().zip(t.kind().binders()) {
                stack.push((c, depth + b));
            }
        }
        false
    }

    /// Names of all constants occurring in the term.
    pub fn constants(&self) -> Vec<Name> {
        let mut out: Vec<Name> = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if let Term::Const(c) = t {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
            stack.extend(t.children());
        }
        out
    }
}

/// Syntactic equality, `≡`. Stops at the first mismatch and never visits
/// more node pairs than the smaller tree has nodes.
pub fn syntactic_equal(s: &Term, t: &Term) -> bool {
    syntactic_equal_metered(s, t, &mut 0)
}

/// [`syntactic_equal`] that adds the number of node pairs visited to `steps`.
pub fn syntactic_equal_metered(s: &Term, t: &Term, steps: &mut u64) -> bool {
    let mut stack = vec![(s, t)];
    while let Some((s, t)) = stack.pop() {
        *steps += 1;
        let same_head = match (s, t) {
            (Term::Var(i), Term::Var(j)) => i == j,
            (Term::Const(a), Term::Const(b)) => a == b,
            _ => s.kind() == t.kind(),
        };
        if !same_head {
            return false;
        }
        stack.extend(s.children().into_iter().zip(t.children()));
    }
    true
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        syntactic_equal(self, other)
    }
}

impl Clone for Term {
    fn clone(&self) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::Const(c) => Term::Const(c.clone()),
            Term::NatTy => Term::NatTy,
            Term::Zero => Term::Zero,
            _ => grow(|| self.map_children(|c, _| c.clone())),
        }
    }
}

// Deep terms (long succ chains, application spines) would overflow the
// stack with the compiler-generated recursive drop.
impl Drop for Term {
    fn drop(&mut self) {
        let kids = self.children_mut();
        if kids.iter().all(|c| c.is_leaf()) {
            return;
        }
        let mut stack: Vec<Term> = kids
            .into_iter()
            .filter(|c| !c.is_leaf())
            .map(|c| std::mem::replace(&mut **c, Term::Zero))
            .collect();
        while let Some(mut t) = stack.pop() {
            for c in t.children_mut() {
                if !c.is_leaf() {
                    stack.push(std::mem::replace(&mut **c, Term::Zero));
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print(self, &[]))
    }
}

/// An ordered list of types; entry `i` is a type in the context of entries
/// `0..i`. Index 0 is the outermost entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    entries: Vec<Term>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_entries(entries: Vec<Term>) -> Context {
        Context { entries }
    }

    pub fn entries(&self) -> &[Term] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Term> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, ty: Term) {
        self.entries.push(ty);
    }

    pub fn pop(&mut self) -> Option<Term> {
        self.entries.pop()
    }

    pub fn extended(&self, ty: Term) -> Context {
        let mut c = self.clone();
        c.push(ty);
        c
    }

    /// The type of `Var(index)`, weakened to live in the whole context.
    pub fn lookup(&self, index: usize) -> Option<Term> {
        let pos = self.entries.len().checked_sub(index + 1)?;
        Some(crate::subst::weaken(&self.entries[pos], index + 1))
    }

    /// Sum of entry sizes.
    pub fn size(&self) -> usize {
        self.entries.iter().map(Term::size).sum()
    }

    /// True if every entry only mentions earlier entries.
    pub fn is_scoped(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, t)| t.is_scoped(i))
    }
}

/// A dependent sequence of types over an ambient context: entry `i` lives in
/// the ambient context extended by entries `0..i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Telescope {
    entries: Vec<Term>,
}

impl Telescope {
    pub fn new(entries: Vec<Term>) -> Telescope {
        Telescope { entries }
    }

    pub fn entries(&self) -> &[Term] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The ambient context followed by the telescope entries.
    pub fn extend_context(&self, ambient: &Context) -> Context {
        let mut c = ambient.clone();
        for e in &self.entries {
            c.push(e.clone());
        }
        c
    }
}

/// A signature declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    /// A postulated atomic type, `⊢ A Type`.
    Type,
    /// A postulated constant of the given closed type.
    Constant(Term),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("`{0}` is already declared")]
    Duplicate(Name),
    #[error("declaration of `{name}` mentions undeclared `{missing}`")]
    Undeclared { name: Name, missing: Name },
    #[error("the type of `{0}` has free variables")]
    Open(Name),
}

/// Globally postulated atomic types and typed constants, in declaration
/// order. Each constant's type may mention only earlier declarations.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    order: Vec<Name>,
    decls: HashMap<Name, Decl>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_type(&mut self, name: impl Into<Name>) -> Result<(), SignatureError> {
        let name = name.into();
        if self.decls.contains_key(&name) {
            return Err(SignatureError::Duplicate(name));
        }
        self.order.push(name.clone());
        self.decls.insert(name, Decl::Type);
        Ok(())
    }

    /// Adds a constant. Only scoping is checked here; well-formedness of
    /// the type is the checker's business (see `checker::postulate`).
    pub fn add_constant(&mut self, name: impl Into<Name>, ty: Term) -> Result<(), SignatureError> {
        let name = name.into();
        if self.decls.contains_key(&name) {
            return Err(SignatureError::Duplicate(name));
        }
        if !ty.is_scoped(0) {
            return Err(SignatureError::Open(name));
        }
        if let Some(missing) = ty.constants().into_iter().find(|c| !self.decls.contains_key(c)) {
            return Err(SignatureError::Undeclared { name, missing });
        }
        self.order.push(name.clone());
        self.decls.insert(name, Decl::Constant(ty));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.decls.contains_key(name)
    }

    pub fn is_type(&self, name: &str) -> bool {
        matches!(self.decls.get(name), Some(Decl::Type))
    }

    pub fn constant_type(&self, name: &str) -> Option<&Term> {
        match self.decls.get(name) {
            Some(Decl::Constant(t)) => Some(t),
            _ => None,
        }
    }

    /// Declarations in the order they were made.
    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Decl)> {
        self.order.iter().map(|n| (n, &self.decls[n]))
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_size(t: &Term) -> usize {
        1 + t.children().into_iter().map(naive_size).sum::<usize>()
    }

    fn naive_eq(s: &Term, t: &Term) -> bool {
        match (s, t) {
            (Term::Var(i), Term::Var(j)) => i == j,
            (Term::Const(a), Term::Const(b)) => a == b,
            _ => {
                s.kind() == t.kind()
                    && s.children()
                        .into_iter()
                        .zip(t.children())
                        .all(|(a, b)| naive_eq(a, b))
            }
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(Term::var(0).size(), 1);
        assert_eq!(Term::id(Term::NatTy, Term::Zero, Term::Zero).size(), 4);
        let t = Term::lambda(Term::constant("A"), Term::constant("A"), Term::succ(Term::var(0)));
        assert_eq!(t.size(), 5);
        assert_eq!(t.size(), naive_size(&t));
    }

    #[test]
    fn equality_basics() {
        assert!(syntactic_equal(&Term::var(0), &Term::var(0)));
        assert!(!syntactic_equal(&Term::Zero, &Term::succ(Term::Zero)));
        assert!(!syntactic_equal(&Term::var(0), &Term::var(1)));
        assert!(!syntactic_equal(&Term::constant("A"), &Term::constant("B")));
    }

    #[test]
    fn equality_cost_bounded_by_smaller_tree() {
        let big = Term::numeral(1000);
        let small = Term::numeral(3);
        let mut steps = 0;
        assert!(!syntactic_equal_metered(&big, &small, &mut steps));
        assert!(steps <= small.size() as u64);
        let mut steps = 0;
        assert!(!syntactic_equal_metered(&Term::Zero, &big, &mut steps));
        assert_eq!(steps, 1);
    }

    #[test]
    fn deep_terms_drop_and_clone() {
        let t = Term::numeral(1_000_000);
        let u = t.clone();
        assert_eq!(u.size(), 1_000_001);
        assert!(syntactic_equal(&t, &u));
    }

    #[test]
    fn signature_rules() {
        let mut sig = Signature::new();
        sig.add_type("A").unwrap();
        assert_eq!(sig.add_type("A"), Err(SignatureError::Duplicate("A".into())));
        sig.add_constant("a", Term::constant("A")).unwrap();
        assert!(matches!(
            sig.add_constant("b", Term::constant("B")),
            Err(SignatureError::Undeclared { .. })
        ));
        assert!(matches!(
            sig.add_constant("c", Term::var(0)),
            Err(SignatureError::Open(_))
        ));
        let names: Vec<_> = sig.iter().map(|(n, _)| n.to_string()).collect();
        assert_eq!(names, ["A", "a"]);
    }

    #[test]
    fn from_parts_rejects_bad_arity() {
        assert!(Term::from_parts(Kind::Pi, vec![Term::Zero]).is_none());
        assert!(Term::from_parts(Kind::Var, vec![]).is_none());
        assert_eq!(
            Term::from_parts(Kind::Succ, vec![Term::Zero]),
            Some(Term::numeral(1))
        );
    }

    pub(crate) fn arb_term(len: usize) -> impl proptest::strategy::Strategy<Value = Term> {
        crate::testing::arb_term(len)
    }

    proptest::proptest! {
        #[test]
        fn size_matches_naive(t in arb_term(2)) {
            proptest::prop_assert_eq!(t.size(), naive_size(&t));
        }

        #[test]
        fn equality_matches_naive(s in arb_term(2), t in arb_term(2)) {
            proptest::prop_assert_eq!(syntactic_equal(&s, &t), naive_eq(&s, &t));
            proptest::prop_assert!(syntactic_equal(&s, &s));
            proptest::prop_assert_eq!(syntactic_equal(&s, &t), syntactic_equal(&t, &s));
        }

        #[test]
        fn equality_transitive(s in arb_term(1)) {
            let t = s.clone();
            let u = t.clone();
            proptest::prop_assert!(syntactic_equal(&s, &t) && syntactic_equal(&t, &u) && syntactic_equal(&s, &u));
        }

        #[test]
        fn size_is_additive(t in arb_term(2)) {
            let kids: usize = t.children().into_iter().map(Term::size).sum();
            proptest::prop_assert_eq!(t.size(), kids + 1);
            for c in t.children() {
                proptest::prop_assert!(c.size() < t.size());
            }
        }
    }
}
