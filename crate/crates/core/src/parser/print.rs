use std::collections::HashSet;
use std::fmt::Write;

use super::lexer::is_keyword;
use super::{Ident, Surface, SurfaceChild, SurfaceTerm};
use crate::grow;
use crate::syntax::{Kind, Term};

/// `base`, `base1`, `base2`, ... : the first that is not taken and not a
/// keyword.
pub fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(base) && !is_keyword(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !taken.contains(n) && !is_keyword(n))
        .expect("unbounded")
}

fn base_names(kind: Kind, child: usize) -> &'static [&'static str] {
    match (kind, child) {
        (Kind::IdRec | Kind::IdConv, 1) => &["x", "y", "u"],
        (Kind::NatRec | Kind::NatConvZero | Kind::NatConvSucc, 0) => &["n"],
        (Kind::NatRec | Kind::NatConvZero | Kind::NatConvSucc, 2) => &["n", "ih"],
        _ => &["x"],
    }
}

/// Converts a core term to surface syntax in a scope of named variables
/// (outermost first). Binder names are chosen fresh for the scope and the
/// constants of `t`. Variables bound outside the scope become `#k`, where `k`
/// is the index relative to the outside of `scope`.
pub fn from_core(t: &Term, scope: &[String]) -> SurfaceTerm {
    let mut taken: HashSet<String> = scope.iter().cloned().collect();
    taken.extend(t.constants().iter().map(|c| c.to_string()));
    let mut names = scope.to_vec();
    convert(t, &mut names, &mut taken)
}

fn convert(t: &Term, names: &mut Vec<String>, taken: &mut HashSet<String>) -> SurfaceTerm {
    grow(|| {
        let node = match t {
            Term::Var(i) => {
                let i = *i;
                if i < names.len() {
                    Surface::Name(names[names.len() - 1 - i].clone())
                } else {
                    // Not representable; shown as `#k`.
                    Surface::Name(format!("#{}", i - names.len()))
                }
            }
            Term::Const(c) => Surface::Name(c.to_string()),
            Term::Succ(_) | Term::Zero if numeral_value(t).is_some() => {
                Surface::Numeral(numeral_value(t).expect("checked"))
            }
            _ => {
                let kind = t.kind();
                let mut lambda_names: Option<Vec<String>> = None;
                let mut children = Vec::new();
                for (i, (c, &b)) in t.children().into_iter().zip(kind.binders()).enumerate() {
                    let chosen: Vec<String> = match (&lambda_names, kind, i) {
                        (Some(ns), Kind::Lambda, 2) => ns.clone(),
                        _ => {
                            let mut v = Vec::with_capacity(b);
                            for base in base_names(kind, i).iter().take(b) {
                                let n = fresh_name(base, taken);
                                taken.insert(n.clone());
                                v.push(n);
                            }
                            v
                        }
                    };
                    if kind == Kind::Lambda && i == 1 {
                        lambda_names = Some(chosen.clone());
                    }
                    names.extend(chosen.iter().cloned());
                    let term = convert(c, names, taken);
                    names.truncate(names.len() - b);
                    children.push(SurfaceChild {
                        binders: chosen.into_iter().map(Ident::new).collect(),
                        term,
                    });
                }
                Surface::Node { kind, children }
            }
        };
        SurfaceTerm::new(node)
    })
}

fn numeral_value(t: &Term) -> Option<usize> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match cur {
            Term::Zero => return Some(n),
            Term::Succ(p) => {
                n += 1;
                cur = p;
            }
            _ => return None,
        }
    }
}

/// Renders surface syntax as text accepted by the parser.
pub fn render(s: &SurfaceTerm) -> String {
    let mut out = String::new();
    write_surface(s, &mut out);
    out
}

/// Prints a core term; see [`from_core`] for naming.
pub fn print(t: &Term, scope: &[String]) -> String {
    render(&from_core(t, scope))
}

fn binders_dot(c: &SurfaceChild, out: &mut String) {
    if c.binders.is_empty() {
        return;
    }
    for (i, b) in c.binders.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&b.name);
    }
    out.push_str(". ");
}

fn write_child(c: &SurfaceChild, out: &mut String) {
    binders_dot(c, out);
    write_surface(&c.term, out);
}

fn write_list(cs: &[SurfaceChild], out: &mut String) {
    out.push('(');
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_child(c, out);
    }
    out.push(')');
}

fn write_surface(s: &SurfaceTerm, out: &mut String) {
    grow(|| match &s.node {
        Surface::Name(n) => out.push_str(n),
        Surface::Numeral(n) => {
            let _ = write!(out, "{n}");
        }
        Surface::Node { kind, children: c } => {
            let name = |c: &SurfaceChild| c.binders.first().map_or("_", |b| b.name.as_str()).to_string();
            match kind {
                Kind::Pi => {
                    let _ = write!(out, "Pi({} : ", name(&c[1]));
                    write_surface(&c[0].term, out);
                    out.push_str(") ");
                    write_surface(&c[1].term, out);
                }
                Kind::Lambda => {
                    let _ = write!(out, "lam({} : ", name(&c[1]));
                    write_surface(&c[0].term, out);
                    out.push_str(" -> ");
                    write_surface(&c[1].term, out);
                    out.push_str(") ");
                    write_surface(&c[2].term, out);
                }
                Kind::App | Kind::BetaConv => {
                    out.push_str(if *kind == Kind::App { "app{" } else { "betaconv{" });
                    write_child(&c[0], out);
                    out.push_str(", ");
                    write_child(&c[1], out);
                    out.push('}');
                    write_list(&c[2..], out);
                }
                Kind::Id | Kind::Refl | Kind::Succ => {
                    out.push_str(match kind {
                        Kind::Id => "Id",
                        Kind::Refl => "refl",
                        _ => "succ",
                    });
                    write_list(c, out);
                }
                Kind::IdRec | Kind::IdConv => {
                    out.push_str(if *kind == Kind::IdRec { "idrec{" } else { "idconv{" });
                    write_child(&c[0], out);
                    out.push_str(", ");
                    write_child(&c[1], out);
                    out.push('}');
                    write_list(&c[2..], out);
                }
                Kind::NatTy => out.push_str("Nat"),
                Kind::Zero => out.push_str("zero"),
                Kind::NatRec | Kind::NatConvZero | Kind::NatConvSucc => {
                    out.push_str(match kind {
                        Kind::NatRec => "natrec{",
                        Kind::NatConvZero => "natconv_zero{",
                        _ => "natconv_succ{",
                    });
                    write_child(&c[0], out);
                    out.push('}');
                    write_list(&c[1..], out);
                }
                Kind::Var | Kind::Const => out.push_str("<malformed>"),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_core, Global, Globals};

    fn globals() -> Globals {
        let mut g = Globals::new();
        g.insert("A", Global::Type);
        g.insert("x", Global::Constant(Term::constant("A")));
        g
    }

    #[test]
    fn prints_readable_forms() {
        let a = Term::constant("A");
        let t = Term::lambda(a.clone(), a.clone(), Term::var(0));
        assert_eq!(print(&t, &[]), "lam(x : A -> A) x");
        assert_eq!(print(&Term::numeral(3), &[]), "3");
        assert_eq!(
            print(&Term::pi(Term::NatTy, Term::succ(Term::var(0))), &[]),
            "Pi(x : Nat) succ(x)"
        );
    }

    #[test]
    fn avoids_capturing_constants_and_scope() {
        // the constant `x` must stay distinguishable from the bound variable
        let a = Term::constant("A");
        let t = Term::lambda(a.clone(), a.clone(), Term::constant("x"));
        let s = print(&t, &["x1".to_string()]);
        assert_eq!(s, "lam(x2 : A -> A) x");
        let back = parse_core(&s, &["x1".to_string()], &globals()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn out_of_scope_variables_are_marked() {
        assert_eq!(print(&Term::var(3), &["a".into()]), "#2");
    }

    #[test]
    fn round_trips_every_kind() {
        let g = globals();
        let a = Term::constant("A");
        let samples = vec![
            Term::idrec(
                a.clone(),
                Term::id(a.clone(), Term::var(2), Term::var(1)),
                Term::constant("x"),
                Term::constant("x"),
                Term::refl(a.clone(), Term::constant("x")),
                Term::refl(a.clone(), Term::var(0)),
            ),
            Term::idconv(a.clone(), Term::var(0), Term::constant("x"), Term::var(0)),
            Term::betaconv(a.clone(), a.clone(), Term::constant("x"), Term::var(0)),
            Term::app(a.clone(), a.clone(), Term::constant("x"), Term::constant("x")),
            Term::natrec(
                Term::NatTy,
                Term::Zero,
                Term::succ(Term::var(0)),
                Term::numeral(2),
            ),
            Term::natconv_zero(Term::NatTy, Term::Zero, Term::var(1)),
            Term::natconv_succ(Term::var(0), Term::Zero, Term::var(1), Term::succ(Term::NatTy)),
        ];
        for t in samples {
            let s = print(&t, &[]);
            assert_eq!(parse_core(&s, &[], &g).unwrap(), t, "{s}");
        }
    }
}
