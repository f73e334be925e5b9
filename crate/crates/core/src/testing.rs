//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::syntax::{Kind, Term};

/// Well-scoped terms over `scope` free variables and the constants `A` and
/// `a`. Node kinds are chosen uniformly, so most terms are ill-typed.
pub fn arb_term(scope: usize) -> impl Strategy<Value = Term> {
    arb_term_sized(scope, 16)
}

pub fn arb_term_sized(scope: usize, max_nodes: u32) -> BoxedStrategy<Term> {
    arb_scoped(scope, max_nodes)
}

fn leaf(scope: usize) -> BoxedStrategy<Term> {
    let mut options: Vec<BoxedStrategy<Term>> = vec![
        Just(Term::constant("A")).boxed(),
        Just(Term::constant("a")).boxed(),
        Just(Term::NatTy).boxed(),
        Just(Term::Zero).boxed(),
    ];
    if scope > 0 {
        options.push((0..scope).prop_map(Term::Var).boxed());
    }
    proptest::strategy::Union::new(options).boxed()
}

fn arb_scoped(scope: usize, budget: u32) -> BoxedStrategy<Term> {
    if budget <= 1 {
        return leaf(scope);
    }
    let kinds: Vec<Kind> = Kind::ALL.iter().copied().filter(|k| k.arity() > 0).collect();
    let node = proptest::sample::select(kinds).prop_flat_map(move |kind| {
        let per_child = ((budget - 1) / kind.arity() as u32).max(1);
        let children: Vec<BoxedStrategy<Term>> = kind
            .binders()
            .iter()
            .map(|b| arb_scoped(scope + b, per_child))
            .collect();
        children.prop_map(move |kids| Term::from_parts(kind, kids).unwrap())
    });
    prop_oneof![2 => leaf(scope), 3 => node].boxed()
}
