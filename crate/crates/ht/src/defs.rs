//! Definition files: `def X := f` and `diag X := template`, one per line,
//! with `#` comment lines. Definitions may refer to each other in any order.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use ht_core::formula::parse_with;
use ht_core::{diagonalize, DefEnv, Formula, Template};

use crate::error::{read, FormatError, LoadError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DefKind {
    Def,
    Diag,
}

/// A definition line whose body is not parsed yet.
#[derive(Clone, Debug)]
pub(crate) struct PendingDef<'a> {
    pub line: usize,
    pub kind: DefKind,
    pub name: &'a str,
    pub body: &'a str,
    /// Character offset of `body` within its line.
    pub offset: usize,
}

pub(crate) fn char_offset(line: &str, part: &str) -> usize {
    let start = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..start].chars().count()
}

/// Recognizes `def`/`diag` lines. Returns `None` for anything else.
pub(crate) fn def_line(line_no: usize, line: &str) -> Option<Result<PendingDef<'_>, FormatError>> {
    let trimmed = line.trim_start();
    let (kind, rest) = if let Some(r) = trimmed.strip_prefix("def ") {
        (DefKind::Def, r)
    } else if let Some(r) = trimmed.strip_prefix("diag ") {
        (DefKind::Diag, r)
    } else {
        return None;
    };
    let Some((name, body)) = rest.split_once(":=") else {
        return Some(Err(FormatError::new(
            line_no,
            char_offset(line, rest) + 1,
            "expected `:=`",
        )));
    };
    let name = name.trim();
    if !ht_core::formula::is_ident(name) {
        return Some(Err(FormatError::new(
            line_no,
            char_offset(line, rest) + 1,
            format!("`{name}` is not a valid identifier"),
        )));
    }
    Some(Ok(PendingDef {
        line: line_no,
        kind,
        name,
        body,
        offset: char_offset(line, body),
    }))
}

/// Adds `defs` to `base`, resolving every identifier bound in either as a
/// name.
pub(crate) fn resolve(base: DefEnv, defs: &[PendingDef<'_>]) -> Result<DefEnv, FormatError> {
    let mut names: BTreeSet<&str> = base.names().collect();
    for d in defs {
        if !names.insert(d.name) {
            return Err(FormatError::new(
                d.line,
                1,
                format!("name `{}` is already defined", d.name),
            ));
        }
    }
    let is_name = |id: &str| names.contains(id);
    let mut env = base.clone();
    for d in defs {
        let hole = d.kind == DefKind::Diag;
        let parsed = parse_with(d.body, &is_name, hole)
            .map_err(|e| FormatError::from_parse(d.line, d.offset, &e))?;
        let err = |e: &dyn std::fmt::Display| FormatError::new(d.line, 1, e.to_string());
        env = match d.kind {
            DefKind::Def => env.with(d.name, parsed).map_err(|e| err(&e))?,
            DefKind::Diag => {
                let t = Template::new(parsed).map_err(|e| err(&e))?;
                diagonalize(d.name, &t, &env).map_err(|e| err(&e))?
            }
        };
    }
    Ok(env)
}

pub fn parse_defs(text: &str) -> Result<DefEnv, FormatError> {
    let mut pending = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        match def_line(i + 1, line) {
            Some(d) => pending.push(d?),
            None => {
                return Err(FormatError::new(
                    i + 1,
                    char_offset(line, t) + 1,
                    "expected `def` or `diag`",
                ))
            }
        }
    }
    resolve(DefEnv::new(), &pending)
}

pub fn load_defs(path: &Path) -> Result<DefEnv, LoadError> {
    parse_defs(&read(path)?).map_err(|e| LoadError::format(path, e))
}

/// `def` lines for every binding, in name order.
pub fn write_defs(env: &DefEnv) -> String {
    let mut out = String::new();
    for (name, body) in env.iter() {
        let _ = writeln!(out, "def {name} := {body}");
    }
    out
}

/// Merges two environments; a name bound in both is an error.
pub fn merge(a: &DefEnv, b: &DefEnv) -> Result<DefEnv, String> {
    let mut env = a.clone();
    for (name, body) in b.iter() {
        env = env.with(name, body.clone()).map_err(|e| e.to_string())?;
    }
    Ok(env)
}

/// The body `def` would bind for `name`, printed as a `def` line.
pub fn def_line_for(name: &str, body: &Formula) -> String {
    format!("def {name} := {body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_references_and_diag() {
        let env = parse_defs("# two sentences\ndef A := ~B\ndiag B := Prov(#~@#) & A\n").unwrap();
        assert_eq!(env.get("A").unwrap().to_string(), "~B");
        assert_eq!(env.get("B").unwrap().to_string(), "Prov(#~B#) & A");
        assert!(matches!(env.get("A"), Some(Formula::Imp(b, _)) if **b == Formula::name("B")));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_defs("def L := Prov(#~L#)\ndef L := L").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_defs("\ndef X := A &").unwrap_err();
        assert_eq!((e.line, e.column), (2, 13));
        let e = parse_defs("diag X := Prov(#X#)").unwrap_err();
        assert!(e.message.contains("hole"), "{e}");
        let e = parse_defs("axiom X").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn written_defs_parse_back() {
        let env = parse_defs("diag L := Prov(#~@#)\ndiag L2 := ~Prov(#@#)").unwrap();
        assert_eq!(parse_defs(&write_defs(&env)).unwrap(), env);
    }
}
