// Concrete syntax:
//
//   formula := imp
//   imp     := or ("->" imp)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "Prov" "(" "#" formula "#" ")" | "(" formula ")" | "0=1" | IDENT
//   IDENT   := [A-Za-z][A-Za-z0-9_']*

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::Formula;

/// Identifier used for the hole of a diagonal template.
pub const HOLE: &str = "@";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    BadChar(char),
    #[error("expected {expected}, found {found}")]
    Expected { expected: &'static str, found: String },
    #[error("`Prov` is reserved")]
    ReservedProv,
    #[error("trailing input starting with {0}")]
    Trailing(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Tilde,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    Hash,
    Falsum,
    Prov,
    Hole,
    Ident(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Tilde => f.write_str("`~`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Hash => f.write_str("`#`"),
            Tok::Falsum => f.write_str("`0=1`"),
            Tok::Prov => f.write_str("`Prov`"),
            Tok::Hole => f.write_str("`@`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

pub fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    s != "Prov" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn lex(text: &str, allow_hole: bool) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let bad = || ParseError {
            column: col,
            kind: ParseErrorKind::BadChar(c),
        };
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' => toks.push((Tok::Tilde, col)),
            '&' => toks.push((Tok::Amp, col)),
            '|' => toks.push((Tok::Bar, col)),
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            '#' => toks.push((Tok::Hash, col)),
            '@' if allow_hole => toks.push((Tok::Hole, col)),
            '-' => {
                if chars.get(i + 1) != Some(&'>') {
                    return Err(bad());
                }
                toks.push((Tok::Arrow, col));
                i += 1;
            }
            '0' => {
                if chars.get(i + 1) != Some(&'=') || chars.get(i + 2) != Some(&'1') {
                    return Err(bad());
                }
                toks.push((Tok::Falsum, col));
                i += 2;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || matches!(chars[i + 1], '_' | '\''))
                {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                if word == "Prov" {
                    toks.push((Tok::Prov, col));
                } else {
                    toks.push((Tok::Ident(word), col));
                }
            }
            _ => return Err(bad()),
        }
        i += 1;
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    is_name: &'a dyn Fn(&str) -> bool,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError {
            column: self.column(),
            kind: ParseErrorKind::Expected {
                expected,
                found: self.peek().to_string(),
            },
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let column = self.column();
        if matches!(
            self.peek(),
            Tok::Amp | Tok::Bar | Tok::Arrow | Tok::RParen | Tok::Hash | Tok::End
        ) {
            return Err(self.error("a formula"));
        }
        match self.bump() {
            Tok::Tilde => Ok(Formula::neg(self.unary()?)),
            Tok::Prov => {
                if *self.peek() != Tok::LParen {
                    return Err(ParseError {
                        column,
                        kind: ParseErrorKind::ReservedProv,
                    });
                }
                self.bump();
                self.expect(Tok::Hash, "`#` opening a quotation")?;
                let inner = self.formula()?;
                self.expect(Tok::Hash, "`#` closing a quotation")?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::prov(inner))
            }
            Tok::LParen => {
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Falsum => Ok(Formula::Falsum),
            Tok::Hole => Ok(Formula::Name(HOLE.into())),
            Tok::Ident(id) => {
                if (self.is_name)(&id) {
                    Ok(Formula::Name(id))
                } else {
                    Ok(Formula::Atom(id))
                }
            }
            _ => unreachable!("non-leading tokens are rejected above"),
        }
    }
}

/// Parse with every identifier read as an atom. Use
/// [`DefEnv::parse_formula`](super::DefEnv::parse_formula) to resolve names.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, &|_| false, false)
}

/// Parses with a caller-chosen set of names; identifiers outside it become
/// atoms. With `allow_hole`, `@` parses as the diagonalization hole.
pub fn parse_with(
    text: &str,
    is_name: &dyn Fn(&str) -> bool,
    allow_hole: bool,
) -> Result<Formula, ParseError> {
    let toks = lex(text, allow_hole)?;
    let mut p = Parser {
        toks,
        pos: 0,
        is_name,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(ParseError {
            column: p.column(),
            kind: ParseErrorKind::Trailing(p.peek().to_string()),
        });
    }
    Ok(f)
}

// Binding strength: 1 `->`, 2 `|`, 3 `&`, 4 unary.
pub(super) fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula, ctx: u8) -> fmt::Result {
    if let Some(inner) = f.as_negation() {
        out.write_str("~")?;
        return write_formula(out, inner, 4);
    }
    match f {
        Formula::Atom(s) | Formula::Name(s) => out.write_str(s),
        Formula::Falsum => out.write_str("0=1"),
        Formula::Prov(a) => {
            out.write_str("Prov(#")?;
            write_formula(out, a, 0)?;
            out.write_str("#)")
        }
        Formula::And(a, b) => binary(out, ctx, 3, " & ", (a, 3), (b, 4)),
        Formula::Or(a, b) => binary(out, ctx, 2, " | ", (a, 2), (b, 3)),
        Formula::Imp(a, b) => binary(out, ctx, 1, " -> ", (a, 2), (b, 1)),
    }
}

fn binary(
    out: &mut fmt::Formatter<'_>,
    ctx: u8,
    prec: u8,
    op: &str,
    (a, pa): (&Formula, u8),
    (b, pb): (&Formula, u8),
) -> fmt::Result {
    let parens = ctx > prec;
    if parens {
        out.write_str("(")?;
    }
    write_formula(out, a, pa)?;
    out.write_str(op)?;
    write_formula(out, b, pb)?;
    if parens {
        out.write_str(")")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::DefEnv;
    use alloc::format;

    fn a() -> Formula {
        Formula::atom("A")
    }
    fn b() -> Formula {
        Formula::atom("B")
    }

    #[test]
    fn parse_examples() {
        let env = DefEnv::new()
            .with("L", Formula::prov(Formula::neg(Formula::name("L"))))
            .unwrap();
        assert_eq!(
            env.parse_formula("L -> Prov(#0=1#)").unwrap(),
            Formula::imp(Formula::name("L"), Formula::prov(Formula::Falsum))
        );
        assert_eq!(parse_formula("0=1").unwrap(), Formula::Falsum);
        assert_eq!(parse_formula("~A").unwrap(), Formula::neg(a()));
    }

    #[test]
    fn print_examples() {
        assert_eq!(format!("{}", Formula::neg(a())), "~A");
        assert_eq!(
            format!("{}", Formula::prov(Formula::neg(Formula::name("L")))),
            "Prov(#~L#)"
        );
        assert_eq!(format!("{}", Formula::and(a(), b())), "A & B");
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("A -> B -> A").unwrap();
        assert_eq!(f, Formula::imp(a(), Formula::imp(b(), a())));
        let f = parse_formula("A & B & A").unwrap();
        assert_eq!(f, Formula::and(Formula::and(a(), b()), a()));
        let f = parse_formula("A | B & A -> B").unwrap();
        assert_eq!(
            f,
            Formula::imp(Formula::or(a(), Formula::and(b(), a())), b())
        );
        let f = parse_formula("~A & B").unwrap();
        assert_eq!(f, Formula::and(Formula::neg(a()), b()));
        assert_eq!(format!("{}", Formula::imp(Formula::imp(a(), b()), a())), "(A -> B) -> A");
        assert_eq!(format!("{}", Formula::and(a(), Formula::and(b(), a()))), "A & (B & A)");
        assert_eq!(format!("{}", Formula::neg(Formula::and(a(), b()))), "~(A & B)");
    }

    #[test]
    fn nested_quotation() {
        let f = parse_formula("Prov(#Prov(#A#) -> A#)").unwrap();
        assert_eq!(
            f,
            Formula::prov(Formula::imp(Formula::prov(a()), a()))
        );
        assert_eq!(format!("{f}"), "Prov(#Prov(#A#) -> A#)");
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_formula("A & ").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_formula("A $ B").unwrap_err();
        assert_eq!(e, ParseError { column: 3, kind: ParseErrorKind::BadChar('$') });
        let e = parse_formula("Prov(A)").unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_formula("A B").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Trailing(_)));
        assert!(parse_formula("@").is_err());
        assert!(parse_formula("Prov").is_err());
    }

    #[test]
    fn identifiers() {
        assert!(is_ident("L'"));
        assert!(is_ident("x_1"));
        assert!(!is_ident("1x"));
        assert!(!is_ident("Prov"));
        assert!(!is_ident("@"));
    }
}
