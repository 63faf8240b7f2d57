//! Truth-universe files: `sent <name> := <t-expr>` lines with `#` comments.
//!
//! ```text
//! t-expr := or
//! or     := and ("|" and)*
//! and    := unary ("&" unary)*
//! unary  := "~" unary | "(" t-expr ")" | "true(" name ")" | "true_<n>(" name ")"
//!         | "atom(" name "," ("T" | "F") ")" | name
//! ```

use std::fmt::Write as _;
use std::path::Path;

use ht_core::{SentenceUniverse, TSentence};

use crate::defs::char_offset;
use crate::error::{read, FormatError, LoadError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    LParen,
    RParen,
    Comma,
    Word(String),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, (usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || "_'".contains(chars[i])) {
                    i += 1;
                }
                out.push((Tok::Word(chars[start..i].iter().collect()), start));
                continue;
            }
            _ => return Err((i, format!("unexpected character `{c}`"))),
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

type PResult<T> = Result<T, (usize, String)>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> PResult<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err((self.col(), format!("expected {what}")))
        }
    }

    fn word(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Word(w) => {
                self.bump();
                Ok(w)
            }
            _ => Err((self.col(), format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> PResult<TSentence> {
        let mut left = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            left = TSentence::or(left, self.conj()?);
        }
        Ok(left)
    }

    fn conj(&mut self) -> PResult<TSentence> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            left = TSentence::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> PResult<TSentence> {
        let col = self.col();
        match self.bump() {
            Tok::Not => Ok(TSentence::not(self.unary()?)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Word(w) if *self.peek() == Tok::LParen => self.call(&w, col),
            Tok::Word(w) => Ok(TSentence::name(w)),
            _ => Err((col, "expected a sentence".into())),
        }
    }

    fn call(&mut self, head: &str, col: usize) -> PResult<TSentence> {
        self.bump();
        let s = if head == "true" {
            TSentence::true_of(self.word("a sentence name")?)
        } else if head == "atom" {
            let name = self.word("an atom name")?;
            self.expect(Tok::Comma, "`,`")?;
            let vcol = self.col();
            let value = match self.word("T or F")?.as_str() {
                "T" => true,
                "F" => false,
                _ => return Err((vcol, "expected T or F".into())),
            };
            TSentence::base(name, value)
        } else if let Some(level) = head.strip_prefix("true_").and_then(|n| n.parse().ok()) {
            TSentence::true_n(level, self.word("a sentence name")?)
        } else {
            return Err((col, format!("unknown predicate `{head}`")));
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(s)
    }
}

pub fn parse_sentence(text: &str) -> Result<TSentence, (usize, String)> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let s = p.expr()?;
    if *p.peek() != Tok::End {
        return Err((p.col(), "trailing input".into()));
    }
    Ok(s)
}

/// Parses a universe file. Names are not checked here; see
/// [`SentenceUniverse::validate`].
pub fn parse_universe(text: &str) -> Result<SentenceUniverse, FormatError> {
    let mut u = SentenceUniverse::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let at = |part: &str, m: String| FormatError::new(n, char_offset(line, part) + 1, m);
        let rest = t
            .strip_prefix("sent ")
            .ok_or_else(|| at(t, "expected `sent`".into()))?;
        let (name, body) = rest
            .split_once(":=")
            .ok_or_else(|| at(rest, "expected `:=`".into()))?;
        let s = parse_sentence(body)
            .map_err(|(c, m)| FormatError::new(n, char_offset(line, body) + c + 1, m))?;
        u.define(name.trim(), s).map_err(|e| at(name.trim(), e.to_string()))?;
    }
    Ok(u)
}

pub fn load_universe(path: &Path) -> Result<SentenceUniverse, LoadError> {
    parse_universe(&read(path)?).map_err(|e| LoadError::format(path, e))
}

pub fn write_sentence(s: &TSentence) -> String {
    fn go(s: &TSentence, ctx: u8, out: &mut String) {
        let (own, open) = match s {
            TSentence::Or(..) => (1, ctx > 1),
            TSentence::And(..) => (2, ctx > 2),
            _ => (3, false),
        };
        if open {
            out.push('(');
        }
        match s {
            TSentence::Base { atom, value } => {
                let _ = write!(out, "atom({atom}, {})", if *value { "T" } else { "F" });
            }
            TSentence::Not(a) => {
                out.push('~');
                go(a, 3, out);
            }
            TSentence::And(a, b) | TSentence::Or(a, b) => {
                go(a, own, out);
                out.push_str(if own == 1 { " | " } else { " & " });
                go(b, own + 1, out);
            }
            TSentence::TruePred(t) => {
                let _ = write!(out, "true({t})");
            }
            TSentence::TrueN(k, t) => {
                let _ = write!(out, "true_{k}({t})");
            }
            TSentence::Name(t) => out.push_str(t),
        }
        if open {
            out.push(')');
        }
    }
    let mut out = String::new();
    go(s, 0, &mut out);
    out
}

pub fn write_universe(u: &SentenceUniverse) -> String {
    let mut out = String::new();
    for (name, s) in u.iter() {
        let _ = writeln!(out, "sent {name} := {}", write_sentence(s));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let u = parse_universe(
            "# a few sentences\n\
             sent s := atom(p, T)\n\
             sent t := true(s) & ~true_2(s) | s\n\
             sent liar := ~true(liar)\n",
        )
        .unwrap();
        assert_eq!(u.len(), 3);
        let t = u.get("t").unwrap();
        assert_eq!(
            *t,
            TSentence::or(
                TSentence::and(
                    TSentence::true_of("s"),
                    TSentence::not(TSentence::true_n(2, "s"))
                ),
                TSentence::name("s")
            )
        );
        assert_eq!(parse_universe(&write_universe(&u)).unwrap(), u);
    }

    #[test]
    fn writer_keeps_grouping() {
        let s = parse_sentence("~(a | b) & (c | d)").unwrap();
        assert_eq!(write_sentence(&s), "~(a | b) & (c | d)");
        assert_eq!(parse_sentence(&write_sentence(&s)).unwrap(), s);
        let s = parse_sentence("a & (b & c)").unwrap();
        assert_eq!(parse_sentence(&write_sentence(&s)).unwrap(), s);
    }

    #[test]
    fn errors() {
        let e = parse_universe("sent a := atom(p, X)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 19));
        let e = parse_universe("sent a := atom(p, T)\nsent a := true(a)").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_universe("sent a := false(b)").unwrap_err();
        assert!(e.message.contains("false"));
        let e = parse_universe("let a := b").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
    }
}
