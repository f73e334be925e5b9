//! Script files: declarations followed by obligations.
//!
//! ```text
//! postulate A : Type
//! postulate a : A
//! def id : Pi(x : A) A := lam(x : A -> A) x
//! check [x : A] |- refl(A, x) : Id(A, x, x)
//! check |- Pi(x : A) A Type
//! check [x : A, y : A] |- ctxt
//! infer [x : A] |- app{A, _. A}(id, x)
//! elab symmetry [x : A, y : A, p : Id(A, x, y)] |- A, x, y, p
//! ```

use std::collections::HashSet;
use std::fmt;

use super::lexer::{Keyword, Tok};
use super::print::fresh_name;
use super::{
    check_distinct, line_of, print, to_core, Global, Globals, Ident, ParseError, ParseErrorKind, Parser,
};
use crate::syntax::{Context, Signature, Telescope, Term};

#[derive(Clone, Debug)]
pub struct Script {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug)]
pub struct Item {
    /// 1-based line where the item starts.
    pub line: usize,
    pub kind: ItemKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ItemKind {
    PostulateType {
        name: String,
    },
    Postulate {
        name: String,
        ty: Term,
    },
    /// A closed definition, inlined into later items.
    Def {
        name: String,
        ty: Option<Term>,
        body: Term,
    },
    Check {
        ctx: NamedContext,
        goal: Goal,
    },
    Infer {
        ctx: NamedContext,
        term: Term,
    },
    Elab {
        ctx: NamedContext,
        call: ElabCall,
    },
}

/// A context together with the surface names of its entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NamedContext {
    pub names: Vec<String>,
    pub context: Context,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Goal {
    Ctxt,
    Type(Term),
    Term { term: Term, ty: Term },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elaborator {
    Transport,
    Symmetry,
    Transitivity,
    Congruence,
    CongruenceApp,
    TelescopePi,
    TelescopeLam,
    TelescopeApp,
    TelescopeBetaConv,
    TelescopeIdRec,
    TelescopeIdConv,
}

/// Shape of one elaborator argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgSpec {
    Term,
    /// `x1 .. xn. t` with exactly n names.
    Bind(usize),
    /// Binds n names plus one per entry of the (single) telescope argument.
    BindTele(usize),
    /// `x1 .. xn. [z1 : D1, ...]`: a telescope under n names.
    Tele(usize),
    /// `(t1, ..., tk)`.
    Tuple,
}

impl Elaborator {
    pub const ALL: [Elaborator; 11] = [
        Elaborator::Transport,
        Elaborator::Symmetry,
        Elaborator::Transitivity,
        Elaborator::Congruence,
        Elaborator::CongruenceApp,
        Elaborator::TelescopePi,
        Elaborator::TelescopeLam,
        Elaborator::TelescopeApp,
        Elaborator::TelescopeBetaConv,
        Elaborator::TelescopeIdRec,
        Elaborator::TelescopeIdConv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Elaborator::Transport => "transport",
            Elaborator::Symmetry => "symmetry",
            Elaborator::Transitivity => "transitivity",
            Elaborator::Congruence => "congruence",
            Elaborator::CongruenceApp => "congruence_app",
            Elaborator::TelescopePi => "telescope_pi",
            Elaborator::TelescopeLam => "telescope_lam",
            Elaborator::TelescopeApp => "telescope_app",
            Elaborator::TelescopeBetaConv => "telescope_betaconv",
            Elaborator::TelescopeIdRec => "telescope_idrec",
            Elaborator::TelescopeIdConv => "telescope_idconv",
        }
    }

    pub fn from_name(s: &str) -> Option<Elaborator> {
        Elaborator::ALL.iter().copied().find(|e| e.name() == s)
    }

    pub fn args(self) -> &'static [ArgSpec] {
        use ArgSpec::*;
        match self {
            // A, x.B, a, b, p, t
            Elaborator::Transport => &[Term, Bind(1), Term, Term, Term, Term],
            // A, a, b, p
            Elaborator::Symmetry => &[Term, Term, Term, Term],
            // A, a, b, c, p, q
            Elaborator::Transitivity => &[Term, Term, Term, Term, Term, Term],
            // A, C, x.e, a, b, p
            Elaborator::Congruence => &[Term, Term, Bind(1), Term, Term, Term],
            // A, x.B, f, g, p, a
            Elaborator::CongruenceApp => &[Term, Bind(1), Term, Term, Term, Term],
            // [D], zs.B
            Elaborator::TelescopePi => &[Tele(0), BindTele(0)],
            // [D], zs.B, zs.t
            Elaborator::TelescopeLam => &[Tele(0), BindTele(0), BindTele(0)],
            // [D], zs.B, f, (a1, ..)
            Elaborator::TelescopeApp => &[Tele(0), BindTele(0), Term, Tuple],
            // [D], zs.B, (a1, ..), zs.t
            Elaborator::TelescopeBetaConv => &[Tele(0), BindTele(0), Tuple, BindTele(0)],
            // A, x y u.[D], x y u zs.P, a, b, p, (q1, ..), x zs.d
            Elaborator::TelescopeIdRec => &[Term, Tele(3), BindTele(3), Term, Term, Term, Tuple, BindTele(1)],
            // A, x y u.[D], x y u zs.P, a, (q1, ..), x zs.d
            Elaborator::TelescopeIdConv => &[Term, Tele(3), BindTele(3), Term, Tuple, BindTele(1)],
        }
    }
}

impl fmt::Display for Elaborator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ElabArg {
    Term(Term),
    /// A term under `binders` new variables.
    Bound {
        binders: usize,
        body: Term,
    },
    /// A telescope under `prefix` new variables.
    Tele {
        prefix: usize,
        tele: Telescope,
    },
    Tuple(Vec<Term>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElabCall {
    pub elaborator: Elaborator,
    pub args: Vec<ElabArg>,
}

impl Script {
    /// The signature declared by the postulates, in order.
    pub fn signature(&self) -> Result<Signature, crate::syntax::SignatureError> {
        let mut sig = Signature::new();
        for item in &self.items {
            match &item.kind {
                ItemKind::PostulateType { name } => sig.add_type(name.as_str())?,
                ItemKind::Postulate { name, ty } => sig.add_constant(name.as_str(), ty.clone())?,
                _ => {}
            }
        }
        Ok(sig)
    }

    /// Item kinds only: what round-tripping through the printer preserves.
    pub fn kinds(&self) -> Vec<&ItemKind> {
        self.items.iter().map(|i| &i.kind).collect()
    }
}

pub fn parse_script(src: &str) -> Result<Script, ParseError> {
    let mut p = Parser::new(src)?;
    let mut globals = Globals::new();
    let mut items = Vec::new();
    while !p.at_eof() {
        let start = p.span().start;
        let kind = item(&mut p, &mut globals).map_err(|e| e.locate(src))?;
        items.push(Item {
            line: line_of(src, start),
            kind,
        });
    }
    Ok(Script { items })
}

fn declare(globals: &mut Globals, name: &Ident, g: Global) -> Result<(), ParseError> {
    if globals.insert(&name.name, g) {
        Ok(())
    } else {
        Err(ParseError::new(
            ParseErrorKind::DuplicateDecl(name.name.clone()),
            name.span,
        ))
    }
}

fn closed(p: &mut Parser<'_>, globals: &Globals) -> Result<Term, ParseError> {
    let s = p.term()?;
    to_core(&s, &[], globals)
}

fn item(p: &mut Parser<'_>, globals: &mut Globals) -> Result<ItemKind, ParseError> {
    let kw = match p.peek() {
        Tok::Kw(k) => *k,
        _ => return Err(p.error("`postulate`, `def`, `check`, `infer` or `elab`")),
    };
    match kw {
        Keyword::Postulate => {
            p.bump();
            let name = p.name()?;
            p.expect(Tok::Colon)?;
            if p.eat(&Tok::Kw(Keyword::Type)) {
                declare(globals, &name, Global::Type)?;
                Ok(ItemKind::PostulateType { name: name.name })
            } else {
                let ty = closed(p, globals)?;
                declare(globals, &name, Global::Constant(ty.clone()))?;
                Ok(ItemKind::Postulate { name: name.name, ty })
            }
        }
        Keyword::Def => {
            p.bump();
            let name = p.name()?;
            let ty = if p.eat(&Tok::Colon) {
                Some(closed(p, globals)?)
            } else {
                None
            };
            p.expect(Tok::Define)?;
            let body = closed(p, globals)?;
            declare(globals, &name, Global::Def(body.clone()))?;
            Ok(ItemKind::Def {
                name: name.name,
                ty,
                body,
            })
        }
        Keyword::Check => {
            p.bump();
            let ctx = context(p, globals)?;
            p.expect(Tok::Turnstile)?;
            let goal = if p.eat(&Tok::Kw(Keyword::Ctxt)) {
                Goal::Ctxt
            } else {
                let s = p.term()?;
                let t = to_core(&s, &ctx.names, globals)?;
                if p.eat(&Tok::Kw(Keyword::Type)) {
                    Goal::Type(t)
                } else {
                    p.expect(Tok::Colon)?;
                    let s = p.term()?;
                    let ty = to_core(&s, &ctx.names, globals)?;
                    Goal::Term { term: t, ty }
                }
            };
            Ok(ItemKind::Check { ctx, goal })
        }
        Keyword::Infer => {
            p.bump();
            let ctx = context(p, globals)?;
            p.expect(Tok::Turnstile)?;
            let s = p.term()?;
            let term = to_core(&s, &ctx.names, globals)?;
            Ok(ItemKind::Infer { ctx, term })
        }
        Keyword::Elab => {
            p.bump();
            let id = p.name()?;
            let elaborator = Elaborator::from_name(&id.name).ok_or_else(|| {
                ParseError::new(ParseErrorKind::UnknownElaborator(id.name.clone()), id.span)
            })?;
            let ctx = context(p, globals)?;
            p.expect(Tok::Turnstile)?;
            let args = elab_args(p, globals, &ctx.names, elaborator)?;
            Ok(ItemKind::Elab {
                ctx,
                call: ElabCall { elaborator, args },
            })
        }
        _ => Err(p.error("`postulate`, `def`, `check`, `infer` or `elab`")),
    }
}

/// `[x : A, y : B]`, possibly empty or omitted.
fn context(p: &mut Parser<'_>, globals: &Globals) -> Result<NamedContext, ParseError> {
    let mut out = NamedContext::default();
    if !p.eat(&Tok::LBracket) {
        return Ok(out);
    }
    let entries = entries(p, globals, &[])?;
    for (id, ty) in entries {
        out.names.push(id.name);
        out.context.push(ty);
    }
    Ok(out)
}

/// `z1 : D1, ..., zk : Dk]` after the opening bracket; each entry is
/// resolved under `scope` and the earlier entries.
fn entries(
    p: &mut Parser<'_>,
    globals: &Globals,
    scope: &[String],
) -> Result<Vec<(Ident, Term)>, ParseError> {
    let mut out: Vec<(Ident, Term)> = Vec::new();
    let mut names = scope.to_vec();
    if p.eat(&Tok::RBracket) {
        return Ok(out);
    }
    loop {
        let id = p.binder()?;
        if id.name != "_" && out.iter().any(|(m, _)| m.name == id.name) {
            return Err(ParseError::new(
                ParseErrorKind::DuplicateBinder(id.name.clone()),
                id.span,
            ));
        }
        p.expect(Tok::Colon)?;
        let s = p.term()?;
        let ty = to_core(&s, &names, globals)?;
        names.push(id.name.clone());
        out.push((id, ty));
        if p.eat(&Tok::RBracket) {
            return Ok(out);
        }
        p.expect(Tok::Comma)?;
    }
}

fn elab_args(
    p: &mut Parser<'_>,
    globals: &Globals,
    scope: &[String],
    elaborator: Elaborator,
) -> Result<Vec<ElabArg>, ParseError> {
    let mut out = Vec::new();
    let mut tele_len = 0;
    for (i, spec) in elaborator.args().iter().enumerate() {
        if i > 0 {
            p.expect(Tok::Comma)?;
        }
        let arg = match *spec {
            ArgSpec::Term => {
                let s = p.term()?;
                ElabArg::Term(to_core(&s, scope, globals)?)
            }
            ArgSpec::Bind(n) | ArgSpec::BindTele(n) => {
                let n = if matches!(spec, ArgSpec::BindTele(_)) {
                    n + tele_len
                } else {
                    n
                };
                let start = p.span();
                let binders = p.binder_group()?;
                if binders.len() != n {
                    return Err(ParseError::new(
                        ParseErrorKind::BinderCount {
                            expected: n,
                            found: binders.len(),
                        },
                        start,
                    ));
                }
                let mut inner = scope.to_vec();
                inner.extend(binders.iter().map(|b| b.name.clone()));
                let s = p.term()?;
                ElabArg::Bound {
                    binders: n,
                    body: to_core(&s, &inner, globals)?,
                }
            }
            ArgSpec::Tele(n) => {
                let start = p.span();
                let binders = p.binder_group()?;
                if binders.len() != n {
                    return Err(ParseError::new(
                        ParseErrorKind::BinderCount {
                            expected: n,
                            found: binders.len(),
                        },
                        start,
                    ));
                }
                let mut inner = scope.to_vec();
                inner.extend(binders.iter().map(|b| b.name.clone()));
                p.expect(Tok::LBracket)?;
                let es = entries(p, globals, &inner)?;
                let names: Vec<Ident> = es.iter().map(|(id, _)| id.clone()).collect();
                check_distinct(&names)?;
                tele_len = es.len();
                ElabArg::Tele {
                    prefix: n,
                    tele: Telescope::new(es.into_iter().map(|(_, t)| t).collect()),
                }
            }
            ArgSpec::Tuple => {
                p.expect(Tok::LParen)?;
                let mut items = Vec::new();
                if !p.eat(&Tok::RParen) {
                    loop {
                        let s = p.term()?;
                        items.push(to_core(&s, scope, globals)?);
                        if p.eat(&Tok::RParen) {
                            break;
                        }
                        p.expect(Tok::Comma)?;
                    }
                }
                ElabArg::Tuple(items)
            }
        };
        out.push(arg);
    }
    Ok(out)
}

fn taken(scope: &[String], terms: &[&Term]) -> HashSet<String> {
    let mut s: HashSet<String> = scope.iter().cloned().collect();
    for t in terms {
        s.extend(t.constants().iter().map(|c| c.to_string()));
    }
    s
}

fn fresh_many(base: &str, n: usize, taken: &mut HashSet<String>) -> Vec<String> {
    (0..n)
        .map(|_| {
            let x = fresh_name(base, taken);
            taken.insert(x.clone());
            x
        })
        .collect()
}

fn print_context(ctx: &NamedContext) -> String {
    let mut out = String::from("[");
    for (i, (name, ty)) in ctx.names.iter().zip(ctx.context.entries()).enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(name);
        out.push_str(" : ");
        out.push_str(&print(ty, &ctx.names[..i]));
    }
    out.push(']');
    out
}

fn print_binders(names: &[String]) -> String {
    if names.is_empty() {
        String::new()
    } else {
        format!("{}. ", names.join(" "))
    }
}

fn print_arg(arg: &ElabArg, scope: &[String]) -> String {
    match arg {
        ElabArg::Term(t) => print(t, scope),
        ElabArg::Bound { binders, body } => {
            let mut tk = taken(scope, &[body]);
            let names = fresh_many("z", *binders, &mut tk);
            let mut inner = scope.to_vec();
            inner.extend(names.iter().cloned());
            format!("{}{}", print_binders(&names), print(body, &inner))
        }
        ElabArg::Tele { prefix, tele } => {
            let refs: Vec<&Term> = tele.entries().iter().collect();
            let mut tk = taken(scope, &refs);
            let names = fresh_many("x", *prefix, &mut tk);
            let mut inner = scope.to_vec();
            inner.extend(names.iter().cloned());
            let mut out = print_binders(&names);
            out.push('[');
            for (i, e) in tele.entries().iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let z = fresh_name("z", &tk);
                tk.insert(z.clone());
                out.push_str(&format!("{z} : {}", print(e, &inner)));
                inner.push(z);
            }
            out.push(']');
            out
        }
        ElabArg::Tuple(ts) => {
            let parts: Vec<String> = ts.iter().map(|t| print(t, scope)).collect();
            format!("({})", parts.join(", "))
        }
    }
}

pub fn print_item(kind: &ItemKind) -> String {
    match kind {
        ItemKind::PostulateType { name } => format!("postulate {name} : Type"),
        ItemKind::Postulate { name, ty } => format!("postulate {name} : {}", print(ty, &[])),
        ItemKind::Def { name, ty, body } => match ty {
            Some(ty) => format!("def {name} : {} := {}", print(ty, &[]), print(body, &[])),
            None => format!("def {name} := {}", print(body, &[])),
        },
        ItemKind::Check { ctx, goal } => {
            let c = print_context(ctx);
            match goal {
                Goal::Ctxt => format!("check {c} |- ctxt"),
                Goal::Type(t) => format!("check {c} |- {} Type", print(t, &ctx.names)),
                Goal::Term { term, ty } => format!(
                    "check {c} |- {} : {}",
                    print(term, &ctx.names),
                    print(ty, &ctx.names)
                ),
            }
        }
        ItemKind::Infer { ctx, term } => {
            format!("infer {} |- {}", print_context(ctx), print(term, &ctx.names))
        }
        ItemKind::Elab { ctx, call } => {
            let args: Vec<String> = call.args.iter().map(|a| print_arg(a, &ctx.names)).collect();
            format!(
                "elab {} {} |- {}",
                call.elaborator,
                print_context(ctx),
                args.join(", ")
            )
        }
    }
}

pub fn print_script(s: &Script) -> String {
    let mut out = String::new();
    for it in &s.items {
        out.push_str(&print_item(&it.kind));
        out.push('\n');
    }
    out
}
