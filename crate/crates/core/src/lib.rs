//! A proof-checking kernel for objective type theory: Martin-Löf type theory
//! with Π- and identity types (plus natural numbers and postulates) in which
//! every computation rule is a propositional equality witnessed by an
//! explicit constructor (`betaconv`, `idconv`, `natconv_*`).
//!
//! Without definitional equality, checking `Γ ⊢ a ∈ σ` never normalises
//! anything; it is a structural walk with syntactic comparisons and runs in
//! time quadratic in the size of the judgement.

pub mod bench;
pub mod checker;
pub mod derived;
pub mod driver;
pub mod generate;
pub mod oracle;
pub mod parser;
pub mod subst;
pub mod syntax;

#[cfg(test)]
pub(crate) mod testing;

pub use checker::{check, infer, CheckReport, Judgement, Verdict};
pub use subst::{ContextMorphism, SubstEnv};
pub use syntax::{Context, Decl, Kind, Name, Signature, Telescope, Term};

/// Runs `f`, growing the stack first if less than the red zone remains.
/// Every recursive walk over terms goes through this so that deep terms
/// (long `succ` chains, application spines) do not overflow.
#[inline]
pub(crate) fn grow<R>(f: impl FnOnce() -> R) -> R {
    stacker::maybe_grow(128 * 1024, 4 * 1024 * 1024, f)
}
