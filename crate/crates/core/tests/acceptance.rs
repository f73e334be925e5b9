//! The seven acceptance criteria. Each test prints one `PASS`/`FAIL` line
//! straight to stdout (bypassing the harness's capture) and then asserts.

use std::io::Write as _;
use std::time::{Duration, Instant};

use ott::bench::{self, BenchConfig, Family, SLOPE_LIMIT};
use ott::checker::{check_morphism, check_traced, root_counts, Form};
use ott::derived::{self, telescope_pi_type};
use ott::generate::{self, mutations, Generator};
use ott::oracle::{raw_terms, Oracle};
use ott::subst::{apply_morphism, compose, weaken};
use ott::syntax::syntactic_equal;
use ott::{check, infer, Context, ContextMorphism, Judgement, Kind, Signature, SubstEnv, Telescope, Term};
use rand::Rng;

fn report(n: usize, title: &str, failures: &[String], detail: &str) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {n} ({title}): {verdict}: {detail}");
    for f in failures.iter().take(5) {
        let _ = writeln!(out, "    {f}");
    }
    let _ = out.flush();
    assert!(
        failures.is_empty(),
        "criterion {n}: {} failures, first: {}",
        failures.len(),
        failures[0]
    );
}

fn c(name: &str) -> Term {
    Term::constant(name)
}

// ----------------------------------------------------------------------

#[test]
fn c1_quadratic_scaling() {
    let sizes: Vec<usize> = (10..=17).map(|k| 1usize << k).collect();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut slopes = Vec::new();
    for family in Family::ALL {
        let cfg = BenchConfig {
            family,
            sizes: sizes.clone(),
            repetitions: 1,
            seed: 7,
        };
        match bench::run(&cfg) {
            Ok(r) => {
                let fit = r.fit.expect("eight sizes are enough to fit");
                slopes.push(format!("{} {:.3}", family.name(), fit.slope));
                if !(0.9..=SLOPE_LIMIT).contains(&fit.slope) {
                    failures.push(format!("{}: slope {:.3}", family.name(), fit.slope));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", family.name())),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        1,
        "quadratic scaling",
        &failures,
        &format!("slopes [{}] in {:.1}s", slopes.join(", "), elapsed.as_secs_f64()),
    );
}

// ----------------------------------------------------------------------

/// `2^x` as a Nat expression over the free `x`, by iterated doubling.
fn exp2(x: Term) -> Term {
    let double_ih = Term::natrec(
        Term::NatTy,
        Term::Zero,
        Term::succ(Term::succ(Term::var(0))),
        Term::var(0),
    );
    Term::natrec(Term::NatTy, Term::numeral(1), double_ih, x)
}

const EXP2_NODES: usize = 11;

/// A Nat expression of exactly `size` nodes: `height` nested powers of two
/// over a numeral, or (at height 0) a plain numeral.
fn tower(size: usize, height: usize) -> Term {
    let mut t = Term::numeral(size - height * EXP2_NODES - 1);
    for _ in 0..height {
        t = exp2(t);
    }
    assert_eq!(t.size(), size);
    t
}

fn refl_judgement(lhs: Term, rhs: Term) -> Judgement {
    let ty = Term::id(Term::NatTy, lhs.clone(), rhs);
    Judgement::HasType(Context::new(), Term::refl(Term::NatTy, lhs), ty)
}

#[test]
fn c2_fast_non_derivability() {
    let sig = generate::signature();
    let mut failures = Vec::new();
    let mut points = Vec::new();
    let mut slowest = Duration::ZERO;
    for side in [500, 1000, 3000, 10_000, 30_000, 100_000] {
        let j = refl_judgement(tower(side, 3), tower(side, 0));
        let r = check(&sig, &j);
        if r.accepted() {
            failures.push(format!("size {side}: accepted"));
        }
        slowest = slowest.max(r.wall_time);
        points.push((j.size() as f64, r.steps as f64));
    }
    let fit = bench::fit_scaling(&points).expect("six points over two decades");
    if !(0.95..=1.05).contains(&fit.slope) {
        failures.push(format!("steps slope {:.3}", fit.slope));
    }
    if slowest > Duration::from_secs(1) {
        failures.push(format!("slowest check {slowest:?}"));
    }

    // Same judgement size, very different encoded values.
    let side = 100_000;
    let variants = [(3, 0), (0, 3), (1, 5), (7, 2), (0, 1)];
    let steps: Vec<u64> = variants
        .iter()
        .map(|&(h1, h2)| {
            let r = check(&sig, &refl_judgement(tower(side, h1), tower(side, h2)));
            if r.accepted() {
                failures.push(format!("heights {h1}/{h2}: accepted"));
            }
            r.steps
        })
        .collect();
    let (lo, hi) = (*steps.iter().min().unwrap(), *steps.iter().max().unwrap());
    let spread = (hi - lo) as f64 / lo as f64;
    if spread > 0.01 {
        failures.push(format!(
            "steps vary by {:.2}% across values: {steps:?}",
            spread * 100.0
        ));
    }
    report(
        2,
        "fast non-derivability",
        &failures,
        &format!(
            "slope {:.3}, slowest {:.1} ms at 2x{side} nodes, value spread {:.3}%",
            fit.slope,
            slowest.as_secs_f64() * 1e3,
            spread * 100.0
        ),
    );
}

// ----------------------------------------------------------------------

const DEPTH: usize = 10;

struct Tally {
    instances: usize,
    positive: usize,
    failures: Vec<String>,
}

impl Tally {
    fn compare(&mut self, sig: &Signature, oracle: &mut Oracle<'_>, j: Judgement) {
        let Ok(expected) = oracle.derivable(&j) else {
            return;
        };
        self.instances += 1;
        self.positive += expected as usize;
        let got = check(sig, &j).accepted();
        if got != expected {
            self.failures
                .push(format!("check {got}, oracle {expected}: {j:?}"));
        }
    }
}

#[test]
fn c3_oracle_equivalence() {
    let start = Instant::now();
    let sig = generate::signature();
    let mut oracle = Oracle::new(&sig, DEPTH);
    let mut tally = Tally {
        instances: 0,
        positive: 0,
        failures: Vec::new(),
    };
    let contexts = [vec![], vec![c("A")], vec![Term::NatTy]];

    for ctx in &contexts {
        let context = Context::from_entries(ctx.clone());
        for n in 1..=DEPTH {
            for (t, s) in oracle.typed_terms(ctx, n) {
                // every single-node mutation of the type, and of small terms
                if n <= 7 {
                    for m in mutations(&s, ctx.len()) {
                        tally.compare(
                            &sig,
                            &mut oracle,
                            Judgement::HasType(context.clone(), t.clone(), m),
                        );
                    }
                }
                if n <= 5 {
                    for m in mutations(&t, ctx.len()) {
                        tally.compare(
                            &sig,
                            &mut oracle,
                            Judgement::HasType(context.clone(), m, s.clone()),
                        );
                    }
                }
                tally.compare(&sig, &mut oracle, Judgement::HasType(context.clone(), t, s));
            }
        }
        // brute force over raw pairs
        let terms: Vec<Term> = (1..=5)
            .flat_map(|n| raw_terms(ctx.len(), n, &["A", "a"]))
            .collect();
        let types: Vec<Term> = (1..=4)
            .flat_map(|n| raw_terms(ctx.len(), n, &["A", "a"]))
            .collect();
        for t in &terms {
            for s in &types {
                tally.compare(
                    &sig,
                    &mut oracle,
                    Judgement::HasType(context.clone(), t.clone(), s.clone()),
                );
            }
        }
        for n in 1..=6 {
            for s in raw_terms(ctx.len(), n, &["A", "a"]) {
                tally.compare(&sig, &mut oracle, Judgement::TypeWF(context.clone(), s));
            }
        }
    }
    // contexts of up to two raw entries
    let first: Vec<Term> = (1..=4).flat_map(|n| raw_terms(0, n, &["A", "a"])).collect();
    for e0 in &first {
        tally.compare(
            &sig,
            &mut oracle,
            Judgement::CtxtWF(Context::from_entries(vec![e0.clone()])),
        );
        for n in 1..=4 {
            for e1 in raw_terms(1, n, &["A", "a"]) {
                let ctx = Context::from_entries(vec![e0.clone(), e1]);
                tally.compare(&sig, &mut oracle, Judgement::CtxtWF(ctx));
            }
        }
    }

    let elapsed = start.elapsed();
    let mut failures = tally.failures;
    if tally.instances < 10_000 {
        failures.push(format!("only {} instances", tally.instances));
    }
    if elapsed > Duration::from_secs(600) {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        3,
        "oracle equivalence",
        &failures,
        &format!(
            "{} instances ({} derivable) agree, {:.1}s",
            tally.instances,
            tally.positive,
            elapsed.as_secs_f64()
        ),
    );
}

// ----------------------------------------------------------------------

const MAX_MUTATED: usize = 600;

#[test]
fn c4_uniqueness_of_types() {
    let sig = generate::signature();
    let mut g = Generator::new(2024);
    let mut failures = Vec::new();
    let mut mutants = 0;
    let mut oversized = 0;
    let mut i = 0;
    while i < 1000 {
        let Judgement::HasType(ctx, t, sigma) = g.judgement(2, 3) else {
            unreachable!()
        };
        // the mutant count is quadratic in the type's size
        if sigma.size() > MAX_MUTATED {
            oversized += 1;
            continue;
        }
        i += 1;
        let ty = match infer(&sig, &ctx, &t) {
            Ok(ty) => ty,
            Err(e) => {
                failures.push(format!("#{i}: infer failed: {}", e.reason));
                continue;
            }
        };
        if !check(&sig, &Judgement::HasType(ctx.clone(), t.clone(), ty.clone())).accepted() {
            failures.push(format!("#{i}: inferred type rejected"));
        }
        for m in mutations(&ty, ctx.len()) {
            mutants += 1;
            if check(&sig, &Judgement::HasType(ctx.clone(), t.clone(), m.clone())).accepted() {
                failures.push(format!("#{i}: mutant accepted: {m:?}"));
            }
        }
    }
    report(
        4,
        "uniqueness of types",
        &failures,
        &format!(
            "1000 terms inferred and rechecked, {mutants} mutated types rejected \
             ({oversized} draws over {MAX_MUTATED} type nodes redrawn)"
        ),
    );
}

// ----------------------------------------------------------------------

/// A context ending in `y : X, p : Id(X, x, y)` for a generated `x : X`,
/// so that paths need not be `refl`. Returns the context, `X`, `x`, `y`
/// and `p` in it.
fn path_setting(g: &mut Generator) -> (Context, Term, Term, Term, Term) {
    let len = g.rng().gen_range(0..=2);
    let mut ctx = g.context(len, 1);
    let (x, ty) = g.term_in(ctx.entries(), 2);
    if g.rng().gen_bool(0.2) {
        return (ctx, ty.clone(), x.clone(), x.clone(), Term::refl(ty, x));
    }
    ctx.push(ty.clone());
    ctx.push(Term::id(weaken(&ty, 1), weaken(&x, 1), Term::var(0)));
    (ctx, weaken(&ty, 2), weaken(&x, 2), Term::var(1), Term::var(0))
}

fn elab_instance(
    g: &mut Generator,
    sig: &Signature,
    which: usize,
) -> Option<Result<derived::ElabResult, derived::ElabError>> {
    let (ctx, ty, x, y, p) = path_setting(g);
    Some(match which {
        0 => {
            let inner = ctx.extended(ty.clone());
            let family = if g.rng().gen_bool(0.5) {
                Term::id(weaken(&ty, 1), Term::var(0), weaken(&x, 1))
            } else {
                g.type_in(inner.entries(), 2)
            };
            let t = g.inhabit(ctx.entries(), &ott::subst::subst(&family, &x, 0), 2)?;
            derived::transport(sig, &ctx, &ty, &family, &x, &y, &p, &t)
        }
        1 => derived::symmetry(sig, &ctx, &ty, &x, &y, &p),
        2 => {
            // a second path out of y
            let mut ctx = ctx;
            ctx.push(weaken(&ty, 0));
            ctx.push(Term::id(weaken(&ty, 1), weaken(&y, 1), Term::var(0)));
            let w = |t: &Term| weaken(t, 2);
            derived::transitivity(
                sig,
                &ctx,
                &w(&ty),
                &w(&x),
                &w(&y),
                &Term::var(1),
                &w(&p),
                &Term::var(0),
            )
        }
        _ => {
            let len = g.rng().gen_range(0..=1);
            let mut ctx = g.context(len, 1);
            let dom = g.type_in(ctx.entries(), 1);
            let cod = g.type_in(&[ctx.entries(), std::slice::from_ref(&dom)].concat(), 1);
            let fun = Term::pi(dom.clone(), cod.clone());
            let f = g.inhabit(ctx.entries(), &fun, 2)?;
            ctx.push(fun.clone());
            ctx.push(Term::id(weaken(&fun, 1), weaken(&f, 1), Term::var(0)));
            let a = g.inhabit(ctx.entries(), &weaken(&dom, 2), 2)?;
            let w = |t: &Term| weaken(t, 2);
            let cod2 = ott::subst::weaken_at(&cod, 2, 1);
            derived::congruence_app(
                sig,
                &ctx,
                &w(&dom),
                &cod2,
                &w(&f),
                &Term::var(1),
                &Term::var(0),
                &a,
            )
        }
    })
}

/// Entry types for position `scope` of a telescope over `base` leading
/// variables; `a_vars` are the indices (at that position) of entries of
/// type `A`.
fn entry_pool(a_vars: &[usize]) -> Vec<Term> {
    let mut v = vec![c("A"), Term::NatTy, Term::id(c("A"), c("a"), c("a"))];
    v.extend(a_vars.iter().map(|&k| Term::id(c("A"), Term::var(k), c("a"))));
    v
}

/// All telescopes of length at most 3 over the entry pool, with the
/// positions of their `A` entries.
fn telescopes(extra: &dyn Fn(usize) -> Vec<Term>) -> Vec<Vec<Term>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for d in &frontier {
            let i = d.len();
            let a_vars: Vec<usize> = (0..i).filter(|&j| d[j] == c("A")).map(|j| i - 1 - j).collect();
            let mut pool = entry_pool(&a_vars);
            pool.extend(extra(i));
            for e in pool {
                let mut d2: Vec<Term> = d.clone();
                d2.push(e);
                next.push(d2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Closed inhabitants over `{A, a, b, p : Id(A, a, b)}`.
fn closed_inhabitant(ty: &Term) -> Option<Term> {
    match ty {
        Term::NatTy => Some(Term::numeral(2)),
        Term::Const(n) if &**n == "A" => Some(c("a")),
        Term::Id { over, lhs, rhs } if lhs == rhs => Some(Term::refl((**over).clone(), (**lhs).clone())),
        Term::Id { lhs, rhs, .. } if **lhs == c("a") && **rhs == c("b") => Some(c("p")),
        _ => None,
    }
}

fn arguments(delta: &[Term], leading: &[Term]) -> Option<Vec<Term>> {
    let mut args: Vec<Term> = Vec::new();
    for d in delta {
        let env: Vec<&Term> = leading.iter().chain(&args).collect();
        let ty = SubstEnv::borrowed(&env, 0).apply(d);
        args.push(closed_inhabitant(&ty)?);
    }
    Some(args)
}

fn peel(mut t: Term, n: usize) -> (Vec<Term>, Term) {
    let mut doms = Vec::new();
    for _ in 0..n {
        let Term::Pi { domain, codomain } = &t else {
            unreachable!()
        };
        doms.push((**domain).clone());
        let next = (**codomain).clone();
        t = next;
    }
    (doms, t)
}

#[test]
fn c5_admissible_rules_recheck() {
    let sig = generate::signature();
    let mut g = Generator::new(99);
    let mut failures = Vec::new();
    let mut done = [0usize; 4];
    while done.iter().sum::<usize>() < 500 {
        let which = done.iter().sum::<usize>() % 4;
        let Some(r) = elab_instance(&mut g, &sig, which) else {
            continue;
        };
        done[which] += 1;
        if let Err(e) = r {
            failures.push(format!("rule {which}: {e}"));
        }
    }

    let mut tsig = generate::signature();
    tsig.add_constant("b", c("A")).unwrap();
    tsig.add_constant("p", Term::id(c("A"), c("a"), c("b"))).unwrap();
    let empty = Context::new();
    let mut pi_terms = 0;
    for delta in telescopes(&|_| vec![]) {
        let n = delta.len();
        let a_vars: Vec<usize> = (0..n)
            .filter(|&j| delta[j] == c("A"))
            .map(|j| n - 1 - j)
            .collect();
        let mut families = entry_pool(&a_vars);
        families.push(Term::pi(c("A"), Term::NatTy));
        for family in families {
            let pi = match derived::telescope_pi(&tsig, &empty, &Telescope::new(delta.clone()), &family) {
                Ok(pi) => pi,
                Err(e) => {
                    failures.push(format!("telescope_pi {delta:?}: {e}"));
                    continue;
                }
            };
            let inner = Telescope::new(delta.clone()).extend_context(&empty);
            let Some(body) = g.inhabit(inner.entries(), &family, 2) else {
                continue;
            };
            let Some(args) = arguments(&delta, &[]) else {
                continue;
            };
            let results = [
                pi.lam(&body),
                pi.lam(&body).and_then(|l| pi.app(&l.term, &args)),
                pi.betaconv(&args, &body),
            ];
            for r in results {
                pi_terms += 1;
                if let Err(e) = r {
                    failures.push(format!("telescope_pi {delta:?} / {family:?}: {e}"));
                }
            }
        }
    }

    // telescopes in x : A, y : A, u : Id(A, x, y)
    let over = c("A");
    let mut id_terms = 0;
    let motive_extra = |i: usize| vec![Term::id(c("A"), Term::var(i + 2), Term::var(i + 1))];
    for delta in telescopes(&motive_extra) {
        let n = delta.len();
        let motives = [
            Term::id(c("A"), Term::var(n + 2), Term::var(n + 1)),
            Term::id(c("A"), Term::var(n + 2), Term::var(n + 2)),
            c("A"),
            Term::NatTy,
        ];
        for motive in motives {
            let diag = SubstEnv::new(
                vec![
                    std::borrow::Cow::Owned(Term::var(0)),
                    std::borrow::Cow::Owned(Term::var(0)),
                    std::borrow::Cow::Owned(Term::refl(over.clone(), Term::var(0))),
                ],
                1,
            );
            let (dd, pd) = peel(diag.apply(&telescope_pi_type(&delta, &motive)), n);
            let bctx = Telescope::new(dd).extend_context(&Context::from_entries(vec![over.clone()]));
            let Some(base) = g.inhabit(bctx.entries(), &pd, 2) else {
                continue;
            };
            let tel = Telescope::new(delta.clone());
            let refl = Term::refl(over.clone(), c("a"));
            if let Some(qs) = arguments(&delta, &[c("a"), c("b"), c("p")]) {
                id_terms += 1;
                let r = derived::telescope_idrec(
                    &tsig,
                    &empty,
                    &over,
                    &tel,
                    &motive,
                    &c("a"),
                    &c("b"),
                    &c("p"),
                    &qs,
                    &base,
                );
                if let Err(e) = r {
                    failures.push(format!("telescope_idrec {delta:?} / {motive:?}: {e}"));
                }
            }
            if let Some(ws) = arguments(&delta, &[c("a"), c("a"), refl]) {
                id_terms += 1;
                let r = derived::telescope_idconv(&tsig, &empty, &over, &tel, &motive, &c("a"), &ws, &base);
                if let Err(e) = r {
                    failures.push(format!("telescope_idconv {delta:?} / {motive:?}: {e}"));
                }
            }
        }
    }
    if pi_terms == 0 || id_terms == 0 {
        failures.push("no telescope instances".into());
    }
    report(
        5,
        "admissible rules recheck",
        &failures,
        &format!(
            "500 equality-reasoning terms ({done:?} per rule), {pi_terms} telescope Pi terms, {id_terms} telescope Id terms"
        ),
    );
}

// ----------------------------------------------------------------------

/// A well-typed morphism from `source` into a freshly generated context of
/// length `len`.
fn morphism_from(g: &mut Generator, source: &Context, len: usize) -> Option<ContextMorphism> {
    let target = g.context(len, 1);
    let mut terms: Vec<Term> = Vec::new();
    for e in target.entries() {
        let env: Vec<&Term> = terms.iter().collect();
        let ty = SubstEnv::borrowed(&env, 0).apply(e);
        terms.push(g.inhabit(source.entries(), &ty, 2)?);
    }
    ContextMorphism::new(source.clone(), target, terms).ok()
}

#[test]
fn c6_substitution_laws() {
    let sig = generate::signature();
    let mut g = Generator::new(4242);
    let mut failures = Vec::new();
    let mut triples = 0;
    let mut tries = 0;
    while triples < 1000 {
        tries += 1;
        let len = |g: &mut Generator| g.rng().gen_range(0..=3);
        let l0 = len(&mut g);
        let e = g.context(l0, 1);
        let (l1, l2, l3) = (len(&mut g), len(&mut g), len(&mut g));
        let Some(h) = morphism_from(&mut g, &e, l1) else {
            continue;
        };
        let Some(gm) = morphism_from(&mut g, h.target(), l2) else {
            continue;
        };
        let Some(f) = morphism_from(&mut g, gm.target(), l3) else {
            continue;
        };
        triples += 1;
        for m in [&f, &gm, &h] {
            if !check_morphism(&sig, m).accepted() {
                failures.push(format!("#{triples}: generated morphism ill-typed"));
            }
        }
        let comp = |a: &ContextMorphism, b: &ContextMorphism| compose(a, b).expect("composable");
        let (delta, gamma) = (f.source().clone(), f.target().clone());
        if comp(&ContextMorphism::identity(&gamma), &f) != f
            || comp(&f, &ContextMorphism::identity(&delta)) != f
        {
            failures.push(format!("#{triples}: unit law"));
        }
        if comp(&f, &comp(&gm, &h)) != comp(&comp(&f, &gm), &h) {
            failures.push(format!("#{triples}: associativity"));
        }
        let fg = comp(&f, &gm);
        let sigma = g.type_in(gamma.entries(), 2);
        let (a, _) = g.term_in(gamma.entries(), 3);
        for (what, theta) in [("type", sigma), ("term", a)] {
            let lhs = apply_morphism(&theta, &fg).unwrap();
            let rhs = apply_morphism(&apply_morphism(&theta, &f).unwrap(), &gm).unwrap();
            if !syntactic_equal(&lhs, &rhs) {
                failures.push(format!("#{triples}: {what} law"));
            }
        }
    }
    report(
        6,
        "substitution laws",
        &failures,
        &format!("{triples} well-typed morphism triples ({tries} drawn), four laws each"),
    );
}

// ----------------------------------------------------------------------

#[test]
fn c7_call_counts() {
    let sig = generate::signature();
    let a = || c("A");
    let pt = || c("a");
    let nat = || Term::NatTy;
    let id_a = || Term::lambda(a(), a(), Term::var(0));
    let rec = |n: Term| Term::natrec(nat(), Term::Zero, Term::var(0), n);
    let motive = || Term::id(a(), Term::var(2), Term::var(1));
    let base = || Term::refl(a(), Term::var(0));
    let refl = || Term::refl(a(), pt());
    let ctx = Context::from_entries(vec![a()]);

    // (constructor, context, term, type, calls)
    let cases: Vec<(Kind, Context, Term, Term, usize)> = vec![
        (Kind::Var, ctx.clone(), Term::var(0), a(), 0),
        (Kind::Const, Context::new(), pt(), a(), 0),
        (Kind::Lambda, Context::new(), id_a(), Term::pi(a(), a()), 1),
        (
            Kind::App,
            Context::new(),
            Term::app(a(), a(), id_a(), pt()),
            a(),
            4,
        ),
        (
            Kind::BetaConv,
            Context::new(),
            Term::betaconv(a(), a(), pt(), Term::var(0)),
            Term::id(a(), Term::app(a(), a(), id_a(), pt()), pt()),
            0,
        ),
        (Kind::Refl, Context::new(), refl(), Term::id(a(), pt(), pt()), 1),
        (
            Kind::IdRec,
            Context::new(),
            Term::idrec(a(), motive(), pt(), pt(), refl(), base()),
            Term::id(a(), pt(), pt()),
            6,
        ),
        (
            Kind::IdConv,
            Context::new(),
            Term::idconv(a(), motive(), pt(), base()),
            Term::id(
                Term::id(a(), pt(), pt()),
                Term::idrec(a(), motive(), pt(), pt(), refl(), base()),
                refl(),
            ),
            0,
        ),
        (Kind::Zero, Context::new(), Term::Zero, nat(), 0),
        (Kind::Succ, Context::new(), Term::numeral(1), nat(), 1),
        (Kind::NatRec, Context::new(), rec(Term::numeral(1)), nat(), 4),
        (
            Kind::NatConvZero,
            Context::new(),
            Term::natconv_zero(nat(), Term::Zero, Term::var(0)),
            Term::id(nat(), rec(Term::Zero), Term::Zero),
            0,
        ),
        (
            Kind::NatConvSucc,
            Context::new(),
            Term::natconv_succ(nat(), Term::Zero, Term::var(0), Term::Zero),
            Term::id(nat(), rec(Term::numeral(1)), rec(Term::Zero)),
            0,
        ),
    ];
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for (kind, ctx, t, ty, calls) in cases {
        let (r, trace) = check_traced(&sig, &Judgement::HasType(ctx, t, ty));
        if !r.accepted() {
            failures.push(format!("{kind:?}: rejected: {:?}", r.verdict));
            continue;
        }
        let got = root_counts(&trace, Form::Term);
        if got != Some((calls, 1)) {
            failures.push(format!(
                "{kind:?}: expected {calls} calls and 1 comparison, got {got:?}"
            ));
        }
        seen.push(kind);
    }
    for (ty, calls) in [
        (Term::pi(a(), a()), 2),
        (Term::id(a(), pt(), pt()), 3),
        (nat(), 0),
        (a(), 0),
    ] {
        let kind = ty.kind();
        let (r, trace) = check_traced(&sig, &Judgement::TypeWF(Context::new(), ty));
        let got = root_counts(&trace, Form::Type);
        if !r.accepted() || got != Some((calls, 0)) {
            failures.push(format!("{kind:?} type: expected {calls} calls, got {got:?}"));
        }
    }
    report(
        7,
        "promise-discipline call counts",
        &failures,
        &format!(
            "{} term constructors and 4 type formers at their exact counts",
            seen.len()
        ),
    );
}
