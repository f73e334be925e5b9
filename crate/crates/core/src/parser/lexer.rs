use super::{ParseError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(usize),
    Kw(Keyword),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Dot,
    Turnstile,
    Arrow,
    Define,
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keyword {
    Postulate,
    Def,
    Check,
    Infer,
    Elab,
    Type,
    Ctxt,
    Pi,
    Lam,
    App,
    BetaConv,
    Id,
    Refl,
    IdRec,
    IdConv,
    Nat,
    Zero,
    Succ,
    NatRec,
    NatConvZero,
    NatConvSucc,
}

impl Keyword {
    pub const ALL: [Keyword; 21] = [
        Keyword::Postulate,
        Keyword::Def,
        Keyword::Check,
        Keyword::Infer,
        Keyword::Elab,
        Keyword::Type,
        Keyword::Ctxt,
        Keyword::Pi,
        Keyword::Lam,
        Keyword::App,
        Keyword::BetaConv,
        Keyword::Id,
        Keyword::Refl,
        Keyword::IdRec,
        Keyword::IdConv,
        Keyword::Nat,
        Keyword::Zero,
        Keyword::Succ,
        Keyword::NatRec,
        Keyword::NatConvZero,
        Keyword::NatConvSucc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Postulate => "postulate",
            Keyword::Def => "def",
            Keyword::Check => "check",
            Keyword::Infer => "infer",
            Keyword::Elab => "elab",
            Keyword::Type => "Type",
            Keyword::Ctxt => "ctxt",
            Keyword::Pi => "Pi",
            Keyword::Lam => "lam",
            Keyword::App => "app",
            Keyword::BetaConv => "betaconv",
            Keyword::Id => "Id",
            Keyword::Refl => "refl",
            Keyword::IdRec => "idrec",
            Keyword::IdConv => "idconv",
            Keyword::Nat => "Nat",
            Keyword::Zero => "zero",
            Keyword::Succ => "succ",
            Keyword::NatRec => "natrec",
            Keyword::NatConvZero => "natconv_zero",
            Keyword::NatConvSucc => "natconv_succ",
        }
    }

    pub fn parse(s: &str) -> Option<Keyword> {
        Keyword::ALL.iter().copied().find(|k| k.as_str() == s)
    }
}

pub fn is_keyword(s: &str) -> bool {
    Keyword::parse(s).is_some()
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if src[i..].starts_with("--") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let two = src.get(i..i + 2);
        let tok = match two {
            Some("|-") => {
                i += 2;
                Tok::Turnstile
            }
            Some("->") => {
                i += 2;
                Tok::Arrow
            }
            Some(":=") => {
                i += 2;
                Tok::Define
            }
            _ => {
                i += 1;
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    '.' => Tok::Dot,
                    c if c.is_ascii_digit() => {
                        while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                            i += 1;
                        }
                        let text = &src[start..i];
                        let n = text.parse::<usize>().map_err(|_| {
                            ParseError::lex(src, start, format!("numeral `{text}` is too large"))
                        })?;
                        Tok::Num(n)
                    }
                    c if is_ident_start(c) => {
                        while i < bytes.len() && is_ident_continue(bytes[i] as char) {
                            i += 1;
                        }
                        let text = &src[start..i];
                        match Keyword::parse(text) {
                            Some(k) => Tok::Kw(k),
                            None => Tok::Ident(text.to_string()),
                        }
                    }
                    _ => {
                        let ch = src[start..].chars().next().unwrap_or('?');
                        return Err(ParseError::lex(
                            src,
                            start,
                            format!("unexpected character `{ch}`"),
                        ));
                    }
                }
            }
        };
        toks.push(Token {
            tok,
            span: Span { start, end: i },
        });
    }
    toks.push(Token {
        tok: Tok::Eof,
        span: Span {
            start: src.len(),
            end: src.len(),
        },
    });
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_punctuation_and_comments() {
        let toks = lex("check [x : A] |- x : A -- trailing\n lam(x : A -> A) x := 12").unwrap();
        let kinds: Vec<_> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(kinds[0], Tok::Kw(Keyword::Check));
        assert!(kinds.contains(&Tok::Turnstile));
        assert!(kinds.contains(&Tok::Arrow));
        assert!(kinds.contains(&Tok::Define));
        assert!(kinds.contains(&Tok::Num(12)));
        assert_eq!(kinds.last(), Some(&Tok::Eof));
    }

    #[test]
    fn reports_bad_character() {
        let err = lex("postulate A : Type\n  #").unwrap_err();
        assert_eq!((err.line(), err.column()), (2, 3));
    }
}
