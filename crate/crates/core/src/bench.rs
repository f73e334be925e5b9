//! Judgement families of prescribed size and the scaling fit.
//!
//! All families live over `A : Type`, `a : A` (plus `Nat`). A family builds
//! as many layers as fit below the requested size and makes up the rest
//! with one context entry `Id(Nat, m, k)` for numerals `m`, `k`, so the
//! judgement size is exact once the request is above the family minimum.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::checker::{check, Judgement};
use crate::subst::weaken;
use crate::syntax::{Context, Signature, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `app(A, A, lam(x : A -> A) x, ...)` nested around `a`.
    AppChain,
    /// `lam(x1 : A) ... lam(xk : A) xj` at its full Π type.
    LambdaChain,
    /// `idrec(A, x y u. Id(A, x, y), a, a, p, x. refl(A, x))` with `p` the
    /// previous layer, starting from `refl(A, a)`.
    IdrecTower,
    /// A chain of constant functions each applied to a conversion witness
    /// (`betaconv`, `idconv`, `natconv_zero`, `natconv_succ` in turn).
    ConvHeavy,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::AppChain,
        Family::LambdaChain,
        Family::IdrecTower,
        Family::ConvHeavy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::AppChain => "app-chain",
            Family::LambdaChain => "lambda-chain",
            Family::IdrecTower => "idrec-tower",
            Family::ConvHeavy => "conv-heavy",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Family, BenchError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| BenchError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum BenchError {
    #[error("unknown family `{0}` (expected app-chain, lambda-chain, idrec-tower or conv-heavy)")]
    UnknownFamily(String),
    #[error("size {size} is too small for {family} (minimum {min})")]
    TooSmall { family: Family, size: usize, min: usize },
    #[error("sizes must be strictly increasing")]
    SizesNotIncreasing,
    #[error("at least one size and one repetition are required")]
    Empty,
    #[error("need at least 5 sizes spanning two orders of magnitude in steps, got {points} points spanning {span:.1}x")]
    InsufficientData { points: usize, span: f64 },
    #[error("generated judgement of size {size} was rejected: {reason}")]
    Rejected { size: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.sizes.is_empty() || self.repetitions == 0 {
            return Err(BenchError::Empty);
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BenchError::SizesNotIncreasing);
        }
        Ok(())
    }
}

pub fn signature() -> Signature {
    crate::generate::signature()
}

fn atom() -> Term {
    Term::constant("A")
}

/// `layers` layers of one family, without padding. `variant` picks the
/// body variable of a lambda chain and the first witness of a
/// conversion chain.
fn build(family: Family, layers: usize, variant: usize) -> (Term, Term) {
    let a = atom();
    match family {
        Family::AppChain => {
            let id = Term::lambda(a.clone(), a.clone(), Term::var(0));
            let mut t = Term::constant("a");
            for _ in 0..layers {
                t = Term::app(a.clone(), a.clone(), id.clone(), t);
            }
            (t, a)
        }
        Family::LambdaChain => {
            if layers == 0 {
                return (Term::constant("a"), a);
            }
            let mut body = Term::var(variant % layers);
            let mut ty = a.clone();
            for _ in 0..layers {
                body = Term::lambda(a.clone(), ty.clone(), body);
                ty = Term::pi(a.clone(), ty);
            }
            (body, ty)
        }
        Family::IdrecTower => {
            let k = Term::constant("a");
            let motive = Term::id(weaken(&a, 3), Term::var(2), Term::var(1));
            let base = Term::refl(a.clone(), Term::var(0));
            let mut p = Term::refl(a.clone(), k.clone());
            for _ in 0..layers {
                p = Term::idrec(a.clone(), motive.clone(), k.clone(), k.clone(), p, base.clone());
            }
            (p, Term::id(a.clone(), k.clone(), k))
        }
        Family::ConvHeavy => {
            let witnesses = conversion_witnesses();
            let mut t = Term::constant("a");
            for i in 0..layers {
                let (w, wty) = &witnesses[(i + variant) % witnesses.len()];
                // `t` is closed, so it needs no weakening under the binder
                let konst = Term::lambda(wty.clone(), a.clone(), t);
                t = Term::app(wty.clone(), a.clone(), konst, w.clone());
            }
            (t, a)
        }
    }
}

/// Closed conversion witnesses with their types.
fn conversion_witnesses() -> Vec<(Term, Term)> {
    let a = atom();
    let k = Term::constant("a");
    let id = Term::lambda(a.clone(), a.clone(), Term::var(0));
    let beta = (
        Term::betaconv(a.clone(), a.clone(), k.clone(), Term::var(0)),
        Term::id(
            a.clone(),
            Term::app(a.clone(), a.clone(), id, k.clone()),
            k.clone(),
        ),
    );
    let motive = Term::id(weaken(&a, 3), Term::var(2), Term::var(1));
    let base = Term::refl(a.clone(), Term::var(0));
    let refl = Term::refl(a.clone(), k.clone());
    let idconv = (
        Term::idconv(a.clone(), motive.clone(), k.clone(), base.clone()),
        Term::id(
            Term::id(a.clone(), k.clone(), k.clone()),
            Term::idrec(a.clone(), motive, k.clone(), k.clone(), refl.clone(), base),
            refl,
        ),
    );
    let nat = Term::NatTy;
    let step = Term::succ(Term::var(0));
    let rec = |m: Term| Term::natrec(nat.clone(), Term::Zero, step.clone(), m);
    let nzero = (
        Term::natconv_zero(nat.clone(), Term::Zero, step.clone()),
        Term::id(nat.clone(), rec(Term::Zero), Term::Zero),
    );
    let one = Term::numeral(1);
    let nsucc = (
        Term::natconv_succ(nat.clone(), Term::Zero, step.clone(), one.clone()),
        Term::id(nat.clone(), rec(Term::succ(one.clone())), Term::succ(rec(one))),
    );
    vec![beta, idconv, nzero, nsucc]
}

fn unpadded_size(family: Family, layers: usize, variant: usize) -> usize {
    let (t, s) = build(family, layers, variant);
    t.size() + s.size()
}

/// Smallest padding entry, `Id(Nat, zero, zero)`.
const MIN_PAD: usize = 4;

/// The smallest size with at least one layer, for every variant.
pub fn minimum_size(family: Family) -> usize {
    (0..4)
        .map(|v| unpadded_size(family, 1, v))
        .max()
        .expect("nonempty")
}

/// One judgement of exactly `size` nodes, derivable by construction.
pub fn generate_one(family: Family, size: usize, seed: u64) -> Result<Judgement, BenchError> {
    let min = minimum_size(family);
    if size < min {
        return Err(BenchError::TooSmall { family, size, min });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (size as u64).rotate_left(32));
    let variant = rng.gen_range(0..4usize);
    // the most layers that leave room for a padding entry
    let room = |k: usize| unpadded_size(family, k, variant) + MIN_PAD <= size;
    let (mut lo, mut hi) = (0usize, 1usize);
    while room(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if room(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let layers = if unpadded_size(family, lo + 1, variant) == size {
        lo + 1
    } else {
        lo
    };
    let (t, s) = build(family, layers, variant);
    let rest = size - (t.size() + s.size());
    let mut ctx = Context::new();
    if rest > 0 {
        let total = rest - MIN_PAD;
        let m = rng.gen_range(0..=total);
        ctx.push(Term::id(Term::NatTy, Term::numeral(m), Term::numeral(total - m)));
    }
    Ok(Judgement::HasType(ctx, t, s))
}

/// One judgement per configured size; each is checked before it is
/// returned.
pub fn generate_family(cfg: &BenchConfig) -> Result<Vec<Judgement>, BenchError> {
    cfg.validate()?;
    let sig = signature();
    cfg.sizes
        .iter()
        .map(|&n| {
            let j = generate_one(cfg.family, n, cfg.seed)?;
            match check(&sig, &j).rejection() {
                None => Ok(j),
                Some(r) => Err(BenchError::Rejected {
                    size: n,
                    reason: r.to_string(),
                }),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
}

/// Slopes above this fail.
pub const SLOPE_LIMIT: f64 = 2.3;

/// Least squares of `ln steps` against `ln size`. Needs at least five
/// points whose steps span a factor of 100.
pub fn fit_scaling(points: &[(f64, f64)]) -> Result<Fit, BenchError> {
    let lo = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.1).fold(0.0, f64::max);
    let span = if lo > 0.0 { hi / lo } else { 0.0 };
    if points.len() < 5 || span < 100.0 {
        return Err(BenchError::InsufficientData {
            points: points.len(),
            span,
        });
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(Fit {
        slope,
        intercept: my - slope * mx,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub size: usize,
    pub steps: u64,
    pub nanos: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub family: Family,
    pub rows: Vec<BenchRow>,
    pub fit: Option<Fit>,
    pub pass: bool,
}

fn median<T: Ord + Copy>(mut v: Vec<T>) -> T {
    v.sort_unstable();
    v[v.len() / 2]
}

/// Generates, checks `repetitions` times per size, and fits. With too few
/// sizes the report carries no fit and does not pass.
pub fn run(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    let sig = signature();
    let judgements = generate_family(cfg)?;
    let mut rows = Vec::new();
    for j in &judgements {
        let mut steps = Vec::new();
        let mut nanos = Vec::new();
        for _ in 0..cfg.repetitions {
            let r = check(&sig, j);
            steps.push(r.steps);
            nanos.push(r.wall_time.as_nanos());
        }
        rows.push(BenchRow {
            size: j.size(),
            steps: median(steps),
            nanos: median(nanos),
        });
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.size as f64, r.steps as f64)).collect();
    let fit = fit_scaling(&points).ok();
    let pass = fit.as_ref().is_some_and(|f| f.slope <= SLOPE_LIMIT);
    Ok(BenchReport {
        family: cfg.family,
        rows,
        fit,
        pass,
    })
}

impl BenchRow {
    pub fn wall_time(&self) -> Duration {
        Duration::from_nanos(self.nanos as u64)
    }
}

impl BenchReport {
    /// One JSON record per size, then a summary record.
    pub fn to_json_lines(&self) -> Vec<String> {
        #[derive(Serialize)]
        struct Row<'r> {
            family: Family,
            #[serde(flatten)]
            row: &'r BenchRow,
        }
        #[derive(Serialize)]
        struct Summary<'r> {
            family: Family,
            fit: &'r Option<Fit>,
            pass: bool,
        }
        let mut out: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                serde_json::to_string(&Row {
                    family: self.family,
                    row,
                })
                .expect("serializable")
            })
            .collect();
        let summary = Summary {
            family: self.family,
            fit: &self.fit,
            pass: self.pass,
        };
        out.push(serde_json::to_string(&summary).expect("serializable"));
        out
    }
}
