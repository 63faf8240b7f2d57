//! Proof-script files.
//!
//! ```text
//! # expect-ok:
//! # expect-rejected: --prov-axioms=false step=3 kind=rule-disabled
//! use liar.defs
//! config ex_falso=false excluded_middle=false reflection=false prov_axioms=true
//! goal |- ~~L
//! 1. assume : ~L
//! 2. axS1 : ~L -> Prov(#~L#)  (subst A=~L)
//! 3. impE [1, 2] : Prov(#~L#)
//! 4. def [3] : L
//! 5. impE [4, 1] : 0=1
//! 6. impI [5] discharge 1 : ~~L  ; closes the assumption
//! ```

use std::fmt::Write as _;
use std::path::Path;

use ht_core::{DefEnv, Formula, LogicConfig, ProofScript, ProofStep, Rule, Sequent, Subst};

use crate::config::{apply_pairs, Overrides};
use crate::defs::{self, char_offset, def_line, PendingDef};
use crate::error::{read, FormatError, LoadError};

/// A header comment declaring how the script should fare under a config.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectation {
    pub ok: bool,
    pub overrides: Overrides,
    /// For rejections: the step the kernel should stop at.
    pub step: Option<usize>,
    /// For rejections: the error kind, e.g. `rule-disabled`.
    pub kind: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptFile {
    pub script: ProofScript,
    pub expectations: Vec<Expectation>,
}

fn expectation(line_no: usize, text: &str) -> Result<Option<Expectation>, FormatError> {
    let body = text.trim_start_matches('#').trim();
    let (ok, rest) = if let Some(r) = body.strip_prefix("expect-ok:") {
        (true, r)
    } else if let Some(r) = body.strip_prefix("expect-rejected:") {
        (false, r)
    } else {
        return Ok(None);
    };
    let err = |m: String| FormatError::new(line_no, 1, m);
    let mut e = Expectation { ok, ..Expectation::default() };
    for tok in rest.split_whitespace() {
        if let Some(n) = tok.strip_prefix("step=") {
            e.step = Some(n.parse().map_err(|_| err(format!("bad step `{n}`")))?);
        } else if let Some(k) = tok.strip_prefix("kind=") {
            e.kind = Some(k.to_string());
        } else {
            e.overrides.set_flag(tok).map_err(err)?;
        }
    }
    Ok(Some(e))
}

struct Located<'a> {
    line_no: usize,
    line: &'a str,
    rest: &'a str,
}

/// Parses a script. `use` lines are handed to `resolve_use`, which returns
/// the environment the named file defines.
pub fn parse_script_with(
    text: &str,
    resolve_use: &mut dyn FnMut(&str) -> Result<DefEnv, String>,
) -> Result<ScriptFile, FormatError> {
    let mut env = DefEnv::new();
    let mut pending: Vec<PendingDef<'_>> = Vec::new();
    let mut config = LogicConfig::HT;
    let mut goal: Option<Located<'_>> = None;
    let mut steps: Vec<Located<'_>> = Vec::new();
    let mut expectations = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let t = line.trim();
        let col = || char_offset(line, t) + 1;
        if t.is_empty() {
            continue;
        }
        if t.starts_with('#') {
            expectations.extend(expectation(n, t)?);
            continue;
        }
        if let Some(file) = t.strip_prefix("use ") {
            let used = resolve_use(file.trim()).map_err(|m| FormatError::new(n, col(), m))?;
            env = defs::merge(&env, &used).map_err(|m| FormatError::new(n, col(), m))?;
        } else if let Some(d) = def_line(n, line) {
            pending.push(d?);
        } else if let Some(rest) = t.strip_prefix("config ") {
            config = apply_pairs(config, rest).map_err(|m| FormatError::new(n, col(), m))?;
        } else if let Some(rest) = t.strip_prefix("goal ") {
            if goal.is_some() {
                return Err(FormatError::new(n, col(), "second goal line"));
            }
            goal = Some(Located { line_no: n, line, rest });
        } else if t.starts_with(|c: char| c.is_ascii_digit()) {
            steps.push(Located { line_no: n, line, rest: t });
        } else {
            return Err(FormatError::new(n, col(), format!("unrecognized line `{t}`")));
        }
    }

    let env = defs::resolve(env, &pending)?;
    let goal = goal.ok_or_else(|| FormatError::new(1, 1, "missing goal line"))?;
    let goal = parse_sequent(&goal, &env)?;
    let steps = steps
        .iter()
        .map(|s| parse_step(s, &env))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ScriptFile {
        script: ProofScript { env, config, goal, steps },
        expectations,
    })
}

/// Parses a script whose `use` lines name files relative to `base_dir`.
pub fn parse_script(text: &str, base_dir: &Path) -> Result<ScriptFile, FormatError> {
    parse_script_with(text, &mut |file| {
        defs::load_defs(&base_dir.join(file)).map_err(|e| e.to_string())
    })
}

pub fn load_script(path: &Path) -> Result<ScriptFile, LoadError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_script(&read(path)?, dir).map_err(|e| LoadError::format(path, e))
}

fn formula_at(env: &DefEnv, line_no: usize, line: &str, part: &str) -> Result<Formula, FormatError> {
    env.parse_formula(part)
        .map_err(|e| FormatError::from_parse(line_no, char_offset(line, part), &e))
}

fn parse_sequent(loc: &Located<'_>, env: &DefEnv) -> Result<Sequent, FormatError> {
    let Some((hyps, concl)) = loc.rest.split_once("|-") else {
        return Err(FormatError::new(
            loc.line_no,
            char_offset(loc.line, loc.rest) + 1,
            "expected `|-`",
        ));
    };
    let conclusion = formula_at(env, loc.line_no, loc.line, concl)?;
    let hyps = hyps.trim();
    let mut hypotheses = Vec::new();
    if !hyps.is_empty() {
        let inner = hyps
            .strip_prefix('[')
            .and_then(|h| h.strip_suffix(']'))
            .ok_or_else(|| {
                FormatError::new(loc.line_no, char_offset(loc.line, hyps) + 1, "expected `[...]`")
            })?;
        for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
            hypotheses.push(formula_at(env, loc.line_no, loc.line, part)?);
        }
    }
    Ok(Sequent::new(hypotheses, conclusion))
}

fn numbers(text: &str, line_no: usize, line: &str) -> Result<Vec<usize>, FormatError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse().map_err(|_| {
                FormatError::new(line_no, char_offset(line, p) + 1, format!("`{p}` is not a step index"))
            })
        })
        .collect()
}

fn parse_step(loc: &Located<'_>, env: &DefEnv) -> Result<ProofStep, FormatError> {
    let (n, line) = (loc.line_no, loc.line);
    let at = |part: &str, m: String| FormatError::new(n, char_offset(line, part) + 1, m);
    let Some((head, tail)) = loc.rest.split_once(':') else {
        return Err(at(loc.rest, "expected `:` before the formula".into()));
    };
    let (tail, note) = match tail.split_once(';') {
        Some((t, note)) => (t, Some(note.trim().to_string())),
        None => (tail, None),
    };

    let (index_text, head) = head
        .split_once('.')
        .ok_or_else(|| at(head, "expected `<n>.`".into()))?;
    let index: usize = index_text
        .trim()
        .parse()
        .map_err(|_| at(index_text, format!("`{index_text}` is not a step index")))?;
    let head = head.trim_start();
    let rule_end = head.find(|c: char| c.is_whitespace() || c == '[').unwrap_or(head.len());
    let rule_text = &head[..rule_end];
    let rule: Rule = rule_text
        .parse()
        .map_err(|_| at(rule_text, format!("unknown rule `{rule_text}`")))?;
    let mut rest = head[rule_end..].trim_start();
    let mut premises = Vec::new();
    if let Some(r) = rest.strip_prefix('[') {
        let (inner, after) = r.split_once(']').ok_or_else(|| at(rest, "unclosed `[`".into()))?;
        premises = numbers(inner, n, line)?;
        rest = after.trim_start();
    }
    let mut discharge = Vec::new();
    if let Some(r) = rest.strip_prefix("discharge") {
        discharge = numbers(r, n, line)?;
        rest = "";
    }
    if !rest.trim().is_empty() {
        return Err(at(rest.trim(), format!("unexpected `{}`", rest.trim())));
    }

    let (formula_text, subst_text) = split_subst(tail);
    let formula = formula_at(env, n, line, formula_text)?;
    let mut subst = Subst::new();
    if let Some(s) = subst_text {
        for entry in s.split(',').filter(|e| !e.trim().is_empty()) {
            let (var, f) = entry
                .split_once('=')
                .ok_or_else(|| at(entry, "expected `VAR=formula`".into()))?;
            let var = var.trim();
            let f = formula_at(env, n, line, f)?;
            if subst.insert(var.to_string(), f).is_some() {
                return Err(at(entry, format!("metavariable `{var}` given twice")));
            }
        }
    }

    let mut step = ProofStep::new(index, rule, premises, formula);
    step.discharge = discharge;
    step.subst = subst;
    step.note = note;
    Ok(step)
}

/// Splits a trailing `(subst ...)` clause off a step's formula text.
fn split_subst(tail: &str) -> (&str, Option<&str>) {
    let trimmed = tail.trim_end();
    if let (Some(start), true) = (trimmed.rfind("(subst"), trimmed.ends_with(')')) {
        let inner = &trimmed[start + "(subst".len()..trimmed.len() - 1];
        if inner.is_empty() || inner.starts_with(char::is_whitespace) {
            return (&tail[..start], Some(inner));
        }
    }
    (tail, None)
}

pub fn write_step(step: &ProofStep) -> String {
    let mut out = format!("{}. {}", step.index, step.rule);
    if !step.premises.is_empty() {
        let p: Vec<String> = step.premises.iter().map(|i| i.to_string()).collect();
        let _ = write!(out, " [{}]", p.join(", "));
    }
    if !step.discharge.is_empty() {
        let d: Vec<String> = step.discharge.iter().map(|i| i.to_string()).collect();
        let _ = write!(out, " discharge {}", d.join(" "));
    }
    let _ = write!(out, " : {}", step.formula);
    if !step.subst.is_empty() {
        let s: Vec<String> = step.subst.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = write!(out, "  (subst {})", s.join(", "));
    }
    if let Some(note) = &step.note {
        let _ = write!(out, "  ; {note}");
    }
    out
}

/// Self-contained text for `s`: definitions inline, then config, goal and
/// steps.
pub fn write_script(s: &ProofScript) -> String {
    let mut out = defs::write_defs(&s.env);
    let _ = writeln!(out, "config {}", s.config);
    let _ = writeln!(out, "goal {}", s.goal);
    for step in &s.steps {
        out.push_str(&write_step(step));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DN: &str = "\
# expect-ok:
# expect-rejected: --prov-axioms=false step=2 kind=rule-disabled
diag L := Prov(#~@#)
goal |- ~~L
1. assume : ~L
2. axS1 : ~L -> Prov(#~L#)  (subst A=~L)
3. impE [1, 2] : Prov(#~L#)
4. def [3] : L
5. impE [4, 1] : 0=1
6. impI [5] discharge 1 : ~~L  ; closes the assumption
";

    fn no_use(_: &str) -> Result<DefEnv, String> {
        Err("no files here".into())
    }

    #[test]
    fn parses_and_checks() {
        let f = parse_script_with(DN, &mut no_use).unwrap();
        assert_eq!(f.script.config, LogicConfig::HT);
        assert_eq!(f.script.steps.len(), 6);
        assert_eq!(f.script.steps[5].discharge, [1]);
        assert_eq!(f.script.steps[5].note.as_deref(), Some("closes the assumption"));
        assert_eq!(f.expectations.len(), 2);
        assert_eq!(f.expectations[1].step, Some(2));
        assert_eq!(f.expectations[1].overrides.prov_axioms, Some(false));
        assert!(ht_core::check_script(&f.script).is_ok());
    }

    #[test]
    fn writer_round_trips() {
        let f = parse_script_with(DN, &mut no_use).unwrap();
        let text = write_script(&f.script);
        let back = parse_script_with(&text, &mut no_use).unwrap();
        assert_eq!(back.script, f.script);
    }

    #[test]
    fn subst_with_falsum_and_implication() {
        let text = "goal |- (A & ~A -> 0=1) -> Prov(#A & ~A -> 0=1#)\n\
                    1. axS1 : (A & ~A -> 0=1) -> Prov(#A & ~A -> 0=1#)  (subst A=A & ~A -> 0=1)\n";
        let f = parse_script_with(text, &mut no_use).unwrap();
        assert_eq!(f.script.steps[0].subst["A"].to_string(), "~(A & ~A)");
        assert!(ht_core::check_script(&f.script).is_ok());
    }

    #[test]
    fn error_positions() {
        let e = parse_script_with("goal |- A\n1. assume : A &", &mut no_use).unwrap_err();
        assert_eq!((e.line, e.column), (2, 16));
        let e = parse_script_with("goal |- A\n1. frobnicate : A", &mut no_use).unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));
        let e = parse_script_with("use x.defs\ngoal |- A", &mut no_use).unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_script_with("1. assume : A", &mut no_use).unwrap_err();
        assert!(e.message.contains("goal"));
        let e = parse_script_with("goal A", &mut no_use).unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
    }
}
