//! Self-referential sentences by named fixed points.
//!
//! A [`Template`] is a formula with one or more holes (written `@`).
//! [`diagonalize`] binds a fresh name to the template with every hole
//! replaced by that name, so the name unfolds to a context applied to itself.

use alloc::string::{String, ToString};

use crate::formula::{is_ident, parse_with, DefEnv, Formula, ParseError};

pub use crate::formula::HOLE;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagError {
    #[error("name `{0}` is already bound")]
    NameCollision(String),
    #[error("template has no hole")]
    NoHole,
    #[error("`{0}` is not a valid identifier")]
    BadIdent(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    body: Formula,
}

impl Template {
    /// Holes are `Name("@")` leaves.
    pub fn new(body: Formula) -> Result<Self, DiagError> {
        if !body.mentions_name(HOLE) {
            return Err(DiagError::NoHole);
        }
        Ok(Template { body })
    }

    /// Parse a template; `@` marks the hole and identifiers bound in
    /// `env` (or equal to `own_name`) become names.
    pub fn parse(text: &str, env: &DefEnv, own_name: Option<&str>) -> Result<Self, TemplateError> {
        let body = parse_with(text, &|id| env.contains(id) || Some(id) == own_name, true)?;
        Ok(Template::new(body)?)
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    /// Fill every hole with `f`.
    pub fn apply(&self, f: &Formula) -> Formula {
        self.body.substitute_name(HOLE, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TemplateError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Diag(#[from] DiagError),
}

/// Extend `env` with `name ↦ t[@ := name]`. The input environment is left
/// untouched.
pub fn diagonalize(name: &str, t: &Template, env: &DefEnv) -> Result<DefEnv, DiagError> {
    if !is_ident(name) {
        return Err(DiagError::BadIdent(name.to_string()));
    }
    if env.contains(name) {
        return Err(DiagError::NameCollision(name.to_string()));
    }
    let mut out = env.clone();
    out.define(name, t.apply(&Formula::name(name)))
        .map_err(|_| DiagError::NameCollision(name.to_string()))?;
    Ok(out)
}
