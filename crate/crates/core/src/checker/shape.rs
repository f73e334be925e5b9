//! Expected types described without building them.
//!
//! Each typing rule fixes the shape of the type its conclusion has, in terms
//! of the annotations on the term (for example `B[a/x]` for an application).
//! A [`Shape`] records that description so the checker can compare it
//! against the given type node by node, paying only for nodes of the given
//! type that it actually visits.

use crate::subst::{equal_under_subst_metered, SubstEnv};
use crate::syntax::{syntactic_equal_metered, Kind, Term};

#[derive(Debug)]
pub(crate) enum Shape<'x> {
    Exact(&'x Term),
    /// `t` weakened by `by`.
    Weakened(&'x Term, usize),
    Subst(&'x Term, SubstEnv<'x>),
    /// A node of the given kind (never `Var` or `Const`) with child shapes.
    /// Children in binding positions must be `Exact` (already in
    /// the extended scope).
    Node(Kind, Vec<Shape<'x>>),
}

impl<'x> Shape<'x> {
    pub(crate) fn node(kind: Kind, kids: Vec<Shape<'x>>) -> Shape<'x> {
        debug_assert_eq!(kids.len(), kind.arity());
        Shape::Node(kind, kids)
    }

    /// Compares against `target`, adding one step per target node visited.
    pub(crate) fn matches(&self, target: &Term, steps: &mut u64) -> bool {
        match self {
            Shape::Exact(t) => syntactic_equal_metered(t, target, steps),
            Shape::Weakened(t, by) => equal_under_subst_metered(t, &SubstEnv::shift_only(*by), target, steps),
            Shape::Subst(t, env) => equal_under_subst_metered(t, env, target, steps),
            Shape::Node(kind, kids) => {
                *steps += 1;
                if target.kind() != *kind {
                    return false;
                }
                kids.iter()
                    .zip(target.children())
                    .all(|(k, c)| k.matches(c, steps))
            }
        }
    }

    pub(crate) fn materialize(&self) -> Term {
        match self {
            Shape::Exact(t) => (*t).clone(),
            Shape::Weakened(t, by) => crate::subst::weaken(t, *by),
            Shape::Subst(t, env) => env.apply(t),
            Shape::Node(kind, kids) => {
                Term::from_parts(*kind, kids.iter().map(Shape::materialize).collect()).expect("shape arity")
            }
        }
    }

    /// Number of nodes `materialize` would produce, computed without
    /// building it.
    pub(crate) fn size(&self) -> usize {
        match self {
            Shape::Exact(t) => t.size(),
            Shape::Weakened(t, _) => t.size(),
            Shape::Subst(t, env) => subst_size(t, env),
            Shape::Node(_, kids) => 1 + kids.iter().map(Shape::size).sum::<usize>(),
        }
    }
}

fn subst_size(t: &Term, env: &SubstEnv<'_>) -> usize {
    let block: Vec<usize> = (0..env.block_len())
        .map(|j| env.term(j).map_or(1, Term::size))
        .collect();
    let n = block.len();
    let mut total = 0;
    let mut stack = vec![(t, 0usize)];
    while let Some((t, depth)) = stack.pop() {
        match t {
            Term::Var(k) if *k >= depth && k - depth < n => total += block[n - 1 - (k - depth)],
            _ => {
                total += 1;
                for (c, b) in t.children().into_iter().zip(t.kind().binders()) {
                    stack.push((c, depth + b));
                }
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_shapes_compare_and_materialize() {
        let a = Term::constant("A");
        let x = Term::constant("a");
        let s = Shape::node(
            Kind::Id,
            vec![Shape::Exact(&a), Shape::Exact(&x), Shape::Exact(&x)],
        );
        let t = Term::id(a.clone(), x.clone(), x.clone());
        let mut steps = 0;
        assert!(s.matches(&t, &mut steps));
        assert_eq!(steps, 4);
        assert_eq!(s.materialize(), t);
        assert_eq!(s.size(), 4);
        let mut steps = 0;
        assert!(!s.matches(&Term::NatTy, &mut steps));
        assert_eq!(steps, 1);
    }

    #[test]
    fn subst_size_counts_block_terms() {
        // Id(Nat, x, x)[succ(zero)/x]
        let body = Term::id(Term::NatTy, Term::var(0), Term::var(0));
        let arg = Term::numeral(1);
        let s = Shape::Subst(&body, SubstEnv::single(&arg));
        assert_eq!(s.size(), s.materialize().size());
        assert_eq!(s.size(), 6);
    }
}
