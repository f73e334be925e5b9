//! Concrete syntax: a surface tree with named binders and source spans,
//! conversion to and from core terms, a printer, and the script format.
//!
//! Every constructor is keyword-prefixed and fully annotated, for example
//! `app{A, x. B}(f, a)` or `natrec{n. P}(z, n ih. s, m)`. The full grammar
//! is in `docs/grammar.ebnf`.

pub mod lexer;
mod print;
pub mod script;

use std::collections::HashMap;

use thiserror::Error;

use crate::grow;
use crate::syntax::{Decl, Kind, Signature, Term};
use lexer::{Keyword, Tok, Token};

pub use print::{fresh_name, from_core, print, render};
pub use script::{
    parse_script, print_script, ArgSpec, ElabArg, ElabCall, Elaborator, Goal, Item, ItemKind, NamedContext,
    Script,
};

/// Largest numeral literal accepted (`succ` nodes are materialized).
pub const MAX_NUMERAL: usize = 1 << 24;

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Lex(String),
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("duplicate binder `{0}`")]
    DuplicateBinder(String),
    #[error("`{0}` is already declared")]
    DuplicateDecl(String),
    #[error("unknown elaborator `{0}`")]
    UnknownElaborator(String),
    #[error("expected {expected} bound names, found {found}")]
    BinderCount { expected: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
}

/// A parse or name-resolution error. Line and column are 1-based; they are
/// 0 for errors produced without access to the source text (see
/// [`ParseError::locate`]).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
    line: usize,
    column: usize,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, span: Span) -> ParseError {
        ParseError {
            kind,
            span,
            line: 0,
            column: 0,
        }
    }

    pub(crate) fn lex(src: &str, at: usize, msg: String) -> ParseError {
        ParseError::new(
            ParseErrorKind::Lex(msg),
            Span {
                start: at,
                end: at + 1,
            },
        )
        .locate(src)
    }

    /// Fills in line and column from the span.
    pub fn locate(mut self, src: &str) -> ParseError {
        let at = self.span.start.min(src.len());
        let before = &src[..at];
        self.line = before.matches('\n').count() + 1;
        self.column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        self
    }

    pub fn line(&self) -> usize {
        self.line
    }

    pub fn column(&self) -> usize {
        self.column
    }
}

/// 1-based line of a byte offset.
pub fn line_of(src: &str, at: usize) -> usize {
    src[..at.min(src.len())].matches('\n').count() + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Ident {
        Ident {
            name: name.into(),
            span: Span::default(),
        }
    }
}

/// A parsed term with names still unresolved.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceTerm {
    pub span: Span,
    pub node: Surface,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Surface {
    /// A bound variable, constant or definition.
    Name(String),
    Numeral(usize),
    /// Any other constructor; `children` follow the core field order, each
    /// with exactly `kind.binders()[i]` bound names (outermost first).
    Node {
        kind: Kind,
        children: Vec<SurfaceChild>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceChild {
    pub binders: Vec<Ident>,
    pub term: SurfaceTerm,
}

impl SurfaceTerm {
    pub fn new(node: Surface) -> SurfaceTerm {
        SurfaceTerm {
            span: Span::default(),
            node,
        }
    }

    /// Renames every binding site with `fresh(old)` and updates the bound
    /// occurrences. The two children of a lambda that share its binder are
    /// renamed together. `fresh` must not return names that occur free.
    pub fn rename_bound(&self, fresh: &mut dyn FnMut(&str) -> String) -> SurfaceTerm {
        let mut map: Vec<(String, String)> = Vec::new();
        rename(self, &mut map, fresh)
    }
}

fn rename(
    s: &SurfaceTerm,
    map: &mut Vec<(String, String)>,
    fresh: &mut dyn FnMut(&str) -> String,
) -> SurfaceTerm {
    grow(|| {
        let node = match &s.node {
            Surface::Name(n) => Surface::Name(
                map.iter()
                    .rev()
                    .find(|(old, _)| old == n)
                    .map_or_else(|| n.clone(), |(_, new)| new.clone()),
            ),
            Surface::Numeral(n) => Surface::Numeral(*n),
            Surface::Node { kind, children } => {
                let mut shared: Option<Vec<String>> = None;
                let mut out = Vec::with_capacity(children.len());
                for (i, c) in children.iter().enumerate() {
                    let reuse = *kind == Kind::Lambda && i == 2;
                    let names: Vec<String> = match (&shared, reuse) {
                        (Some(ns), true) => ns.clone(),
                        _ => c.binders.iter().map(|b| fresh(&b.name)).collect(),
                    };
                    if *kind == Kind::Lambda && i == 1 {
                        shared = Some(names.clone());
                    }
                    for (b, n) in c.binders.iter().zip(&names) {
                        map.push((b.name.clone(), n.clone()));
                    }
                    let term = rename(&c.term, map, fresh);
                    map.truncate(map.len() - c.binders.len());
                    out.push(SurfaceChild {
                        binders: c
                            .binders
                            .iter()
                            .zip(names)
                            .map(|(b, name)| Ident { name, span: b.span })
                            .collect(),
                        term,
                    });
                }
                Surface::Node {
                    kind: *kind,
                    children: out,
                }
            }
        };
        SurfaceTerm { span: s.span, node }
    })
}

// Parsed input can nest deeply (long succ chains); avoid recursive drop.
impl Drop for SurfaceTerm {
    fn drop(&mut self) {
        if let Surface::Node { children, .. } = &mut self.node {
            let mut stack = std::mem::take(children);
            while let Some(mut c) = stack.pop() {
                if let Surface::Node { children, .. } = &mut c.term.node {
                    stack.append(children);
                }
            }
        }
    }
}

/// What a global name refers to during resolution.
#[derive(Clone, Debug)]
pub enum Global {
    Type,
    Constant(Term),
    /// A closed definition, inlined at each use.
    Def(Term),
}

#[derive(Clone, Debug, Default)]
pub struct Globals {
    entries: HashMap<String, Global>,
}

impl Globals {
    pub fn new() -> Globals {
        Globals::default()
    }

    pub fn from_signature(sig: &Signature) -> Globals {
        let mut g = Globals::new();
        for (name, decl) in sig.iter() {
            let entry = match decl {
                Decl::Type => Global::Type,
                Decl::Constant(ty) => Global::Constant(ty.clone()),
            };
            g.entries.insert(name.to_string(), entry);
        }
        g
    }

    /// Returns false if the name is already taken.
    pub fn insert(&mut self, name: &str, g: Global) -> bool {
        if self.entries.contains_key(name) {
            return false;
        }
        self.entries.insert(name.to_string(), g);
        true
    }

    pub fn get(&self, name: &str) -> Option<&Global> {
        self.entries.get(name)
    }
}

/// Resolves names: innermost binder first, then globals. Definitions are
/// replaced by their bodies. `scope` lists the enclosing bound names,
/// outermost first.
pub fn to_core(s: &SurfaceTerm, scope: &[String], globals: &Globals) -> Result<Term, ParseError> {
    let mut scope = scope.to_vec();
    resolve(s, &mut scope, globals)
}

fn resolve(s: &SurfaceTerm, scope: &mut Vec<String>, globals: &Globals) -> Result<Term, ParseError> {
    grow(|| match &s.node {
        Surface::Name(n) => {
            if n == "_" {
                return Err(ParseError::new(
                    ParseErrorKind::Invalid("`_` cannot be referenced".into()),
                    s.span,
                ));
            }
            if let Some(pos) = scope.iter().rposition(|x| x == n) {
                return Ok(Term::Var(scope.len() - 1 - pos));
            }
            match globals.get(n) {
                Some(Global::Type) | Some(Global::Constant(_)) => Ok(Term::constant(n.as_str())),
                Some(Global::Def(body)) => Ok(body.clone()),
                None => Err(ParseError::new(ParseErrorKind::Unbound(n.clone()), s.span)),
            }
        }
        Surface::Numeral(n) => {
            if *n > MAX_NUMERAL {
                return Err(ParseError::new(
                    ParseErrorKind::Invalid(format!("numeral {n} exceeds {MAX_NUMERAL}")),
                    s.span,
                ));
            }
            Ok(Term::numeral(*n))
        }
        Surface::Node { kind, children } => {
            let expected = kind.binders();
            let malformed = || {
                ParseError::new(
                    ParseErrorKind::Invalid(format!("malformed {kind:?} node")),
                    s.span,
                )
            };
            if matches!(kind, Kind::Var | Kind::Const) || children.len() != expected.len() {
                return Err(malformed());
            }
            let mut kids = Vec::with_capacity(children.len());
            for (c, &b) in children.iter().zip(expected) {
                if c.binders.len() != b {
                    return Err(malformed());
                }
                scope.extend(c.binders.iter().map(|x| x.name.clone()));
                let r = resolve(&c.term, scope, globals);
                scope.truncate(scope.len() - b);
                kids.push(r?);
            }
            Term::from_parts(*kind, kids).ok_or_else(malformed)
        }
    })
}

/// Parses a single surface term; the whole input must be consumed.
pub fn parse_term(src: &str) -> Result<SurfaceTerm, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term().map_err(|e| e.locate(src))?;
    p.expect_eof().map_err(|e| e.locate(src))?;
    Ok(t)
}

/// Parses and resolves a term in the given scope.
pub fn parse_core(src: &str, scope: &[String], globals: &Globals) -> Result<Term, ParseError> {
    let s = parse_term(src)?;
    to_core(&s, scope, globals).map_err(|e| e.locate(src))
}

pub(crate) struct Parser<'s> {
    _src: std::marker::PhantomData<&'s str>,
    toks: Vec<Token>,
    pos: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Kw(k) => format!("`{}`", k.as_str()),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBrace => "`{`".into(),
        Tok::RBrace => "`}`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Turnstile => "`|-`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Define => "`:=`".into(),
        Tok::Eof => "end of input".into(),
    }
}

impl<'s> Parser<'s> {
    pub(crate) fn new(src: &'s str) -> Result<Parser<'s>, ParseError> {
        Ok(Parser {
            _src: std::marker::PhantomData,
            toks: lexer::lex(src)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub(crate) fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    pub(crate) fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error(&self, expected: &str) -> ParseError {
        ParseError::new(
            ParseErrorKind::Syntax {
                expected: expected.to_string(),
                found: describe(self.peek()),
            },
            self.span(),
        )
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.error(&describe(&tok)))
        }
    }

    pub(crate) fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    /// An identifier or `_`.
    pub(crate) fn binder(&mut self) -> Result<Ident, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.bump().span;
                Ok(Ident { name, span })
            }
            _ => Err(self.error("a name")),
        }
    }

    /// An identifier other than `_`.
    pub(crate) fn name(&mut self) -> Result<Ident, ParseError> {
        let id = self.binder()?;
        if id.name == "_" {
            return Err(ParseError::new(
                ParseErrorKind::Syntax {
                    expected: "a name".into(),
                    found: "`_`".into(),
                },
                id.span,
            ));
        }
        Ok(id)
    }

    /// Optional `x y z.` prefix. Consumes names only when a dot follows them.
    pub(crate) fn binder_group(&mut self) -> Result<Vec<Ident>, ParseError> {
        let mut k = 0;
        while matches!(self.peek_at(k), Tok::Ident(_)) {
            k += 1;
        }
        if k == 0 || *self.peek_at(k) != Tok::Dot {
            return Ok(Vec::new());
        }
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            out.push(self.binder()?);
        }
        self.expect(Tok::Dot)?;
        check_distinct(&out)?;
        Ok(out)
    }

    fn bound(&mut self, n: usize) -> Result<SurfaceChild, ParseError> {
        let start = self.span();
        let binders = self.binder_group()?;
        if binders.len() != n {
            return Err(ParseError::new(
                ParseErrorKind::BinderCount {
                    expected: n,
                    found: binders.len(),
                },
                start,
            ));
        }
        let term = self.term()?;
        Ok(SurfaceChild { binders, term })
    }

    fn plain(&mut self) -> Result<SurfaceChild, ParseError> {
        Ok(SurfaceChild {
            binders: Vec::new(),
            term: self.term()?,
        })
    }

    pub(crate) fn term(&mut self) -> Result<SurfaceTerm, ParseError> {
        grow(|| self.term_inner())
    }

    fn term_inner(&mut self) -> Result<SurfaceTerm, ParseError> {
        let start = self.span();
        let node = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Surface::Name(name)
            }
            Tok::Num(n) => {
                self.bump();
                Surface::Numeral(n)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                return Ok(t);
            }
            Tok::Kw(kw) => {
                self.bump();
                self.keyword_form(kw)?
            }
            _ => return Err(self.error("a term")),
        };
        let end = self.toks[self.pos.saturating_sub(1)].span.end;
        Ok(SurfaceTerm {
            span: Span {
                start: start.start,
                end,
            },
            node,
        })
    }

    fn keyword_form(&mut self, kw: Keyword) -> Result<Surface, ParseError> {
        let node = |kind, children| Surface::Node { kind, children };
        Ok(match kw {
            Keyword::Pi => {
                self.expect(Tok::LParen)?;
                let x = self.binder()?;
                self.expect(Tok::Colon)?;
                let a = self.plain()?;
                self.expect(Tok::RParen)?;
                let b = self.term()?;
                node(Kind::Pi, vec![a, child(vec![x], b)])
            }
            Keyword::Lam => {
                self.expect(Tok::LParen)?;
                let x = self.binder()?;
                self.expect(Tok::Colon)?;
                let a = self.plain()?;
                self.expect(Tok::Arrow)?;
                let b = self.term()?;
                self.expect(Tok::RParen)?;
                let t = self.term()?;
                node(
                    Kind::Lambda,
                    vec![a, child(vec![x.clone()], b), child(vec![x], t)],
                )
            }
            Keyword::App => {
                let (a, b) = self.family_annotation()?;
                self.expect(Tok::LParen)?;
                let f = self.plain()?;
                self.expect(Tok::Comma)?;
                let arg = self.plain()?;
                self.expect(Tok::RParen)?;
                node(Kind::App, vec![a, b, f, arg])
            }
            Keyword::BetaConv => {
                let (a, b) = self.family_annotation()?;
                self.expect(Tok::LParen)?;
                let arg = self.plain()?;
                self.expect(Tok::Comma)?;
                let body = self.bound(1)?;
                self.expect(Tok::RParen)?;
                node(Kind::BetaConv, vec![a, b, arg, body])
            }
            Keyword::Id => {
                let kids = self.args(&[0, 0, 0])?;
                node(Kind::Id, kids)
            }
            Keyword::Refl => {
                let kids = self.args(&[0, 0])?;
                node(Kind::Refl, kids)
            }
            Keyword::IdRec | Keyword::IdConv => {
                self.expect(Tok::LBrace)?;
                let a = self.plain()?;
                self.expect(Tok::Comma)?;
                let p = self.bound(3)?;
                self.expect(Tok::RBrace)?;
                if kw == Keyword::IdRec {
                    let mut kids = vec![a, p];
                    kids.extend(self.args(&[0, 0, 0, 1])?);
                    node(Kind::IdRec, kids)
                } else {
                    let mut kids = vec![a, p];
                    kids.extend(self.args(&[0, 1])?);
                    node(Kind::IdConv, kids)
                }
            }
            Keyword::Nat => node(Kind::NatTy, Vec::new()),
            Keyword::Zero => node(Kind::Zero, Vec::new()),
            Keyword::Succ => {
                let kids = self.args(&[0])?;
                node(Kind::Succ, kids)
            }
            Keyword::NatRec | Keyword::NatConvZero | Keyword::NatConvSucc => {
                self.expect(Tok::LBrace)?;
                let p = self.bound(1)?;
                self.expect(Tok::RBrace)?;
                let (kind, shape): (Kind, &[usize]) = match kw {
                    Keyword::NatRec => (Kind::NatRec, &[0, 2, 0]),
                    Keyword::NatConvZero => (Kind::NatConvZero, &[0, 2]),
                    _ => (Kind::NatConvSucc, &[0, 2, 0]),
                };
                let mut kids = vec![p];
                kids.extend(self.args(shape)?);
                node(kind, kids)
            }
            _ => {
                self.pos -= 1;
                return Err(self.error("a term"));
            }
        })
    }

    /// `{A, x. B}`
    fn family_annotation(&mut self) -> Result<(SurfaceChild, SurfaceChild), ParseError> {
        self.expect(Tok::LBrace)?;
        let a = self.plain()?;
        self.expect(Tok::Comma)?;
        let b = self.bound(1)?;
        self.expect(Tok::RBrace)?;
        Ok((a, b))
    }

    /// `(c1, ..., cn)` where child i binds `shape[i]` names.
    fn args(&mut self, shape: &[usize]) -> Result<Vec<SurfaceChild>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::with_capacity(shape.len());
        for (i, &n) in shape.iter().enumerate() {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            out.push(self.bound(n)?);
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }
}

fn child(binders: Vec<Ident>, term: SurfaceTerm) -> SurfaceChild {
    SurfaceChild { binders, term }
}

/// Rejects repeated names in one binding group (`_` may repeat).
pub(crate) fn check_distinct(names: &[Ident]) -> Result<(), ParseError> {
    for (i, n) in names.iter().enumerate() {
        if n.name != "_" && names[..i].iter().any(|m| m.name == n.name) {
            return Err(ParseError::new(
                ParseErrorKind::DuplicateBinder(n.name.clone()),
                n.span,
            ));
        }
    }
    Ok(())
}
