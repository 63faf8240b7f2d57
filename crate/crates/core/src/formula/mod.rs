//! Formula syntax tree, definitional environments and unfolding.
//!
//! Negation is not a constructor: `~A` is `A -> 0=1`. Quotation is
//! structural, so `Prov` holds a formula subtree rather than a number.

mod code;
pub mod enumerate;
mod syntax;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use code::{Codec, CodeError, GodelCode};
pub use syntax::{is_ident, parse_formula, parse_with, ParseError, ParseErrorKind, HOLE};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    /// The distinguished absurd atom, written `0=1`.
    Falsum,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Prov(Box<Formula>),
    /// Reference to a sentence bound in a [`DefEnv`].
    Name(String),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn name(id: impl Into<String>) -> Self {
        Formula::Name(id.into())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn prov(a: Formula) -> Self {
        Formula::Prov(Box::new(a))
    }

    /// `~a`, i.e. `a -> 0=1`.
    pub fn neg(a: Formula) -> Self {
        Formula::imp(a, Formula::Falsum)
    }

    /// The negated formula when `self` has the shape `A -> 0=1`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if **b == Formula::Falsum => Some(a),
            _ => None,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Name(_) => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Prov(a) => 1 + a.size(),
        }
    }

    /// Maximum nesting of `Prov`.
    pub fn quote_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Name(_) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.quote_depth().max(b.quote_depth())
            }
            Formula::Prov(a) => 1 + a.quote_depth(),
        }
    }

    /// Immediate subformulas, including the argument of `Prov`.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Name(_) => Vec::new(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => vec![&**a, &**b],
            Formula::Prov(a) => vec![&**a],
        }
    }

    /// All subformulas, `self` included, in pre-order.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            let mut kids = f.children();
            kids.reverse();
            stack.extend(kids);
        }
        out
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Atom(a) => Some(a.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn names(&self) -> BTreeSet<&str> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Name(n) => Some(n.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn mentions_name(&self, id: &str) -> bool {
        self.subformulas()
            .into_iter()
            .any(|f| matches!(f, Formula::Name(n) if n == id))
    }

    pub fn is_prov_free(&self) -> bool {
        self.quote_depth() == 0
    }

    /// Replace every `Name(id)` (also under quotation) with `replacement`.
    pub fn substitute_name(&self, id: &str, replacement: &Formula) -> Formula {
        self.map_leaves(&|f| match f {
            Formula::Name(n) if n == id => Some(replacement.clone()),
            _ => None,
        })
    }

    /// Replace every `Atom(id)` with the formula bound to it.
    pub fn substitute_atoms(&self, map: &BTreeMap<String, Formula>) -> Formula {
        self.map_leaves(&|f| match f {
            Formula::Atom(a) => map.get(a).cloned(),
            _ => None,
        })
    }

    fn map_leaves(&self, leaf: &dyn Fn(&Formula) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Name(_) => {
                leaf(self).unwrap_or_else(|| self.clone())
            }
            Formula::And(a, b) => Formula::and(a.map_leaves(leaf), b.map_leaves(leaf)),
            Formula::Or(a, b) => Formula::or(a.map_leaves(leaf), b.map_leaves(leaf)),
            Formula::Imp(a, b) => Formula::imp(a.map_leaves(leaf), b.map_leaves(leaf)),
            Formula::Prov(a) => Formula::prov(a.map_leaves(leaf)),
        }
    }

    /// Rebuild this node with new children, in the order of [`Formula::children`].
    fn with_children(&self, mut kids: Vec<Formula>) -> Formula {
        match self {
            Formula::And(..) => {
                let b = kids.pop().unwrap();
                Formula::and(kids.pop().unwrap(), b)
            }
            Formula::Or(..) => {
                let b = kids.pop().unwrap();
                Formula::or(kids.pop().unwrap(), b)
            }
            Formula::Imp(..) => {
                let b = kids.pop().unwrap();
                Formula::imp(kids.pop().unwrap(), b)
            }
            Formula::Prov(_) => Formula::prov(kids.pop().unwrap()),
            leaf => leaf.clone(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        syntax::write_formula(f, self, 0)
    }
}

/// `~f`.
pub fn neg(f: Formula) -> Formula {
    Formula::neg(f)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnvError {
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("name `{0}` is already defined")]
    Duplicate(String),
    #[error("`{0}` is not a valid identifier")]
    BadIdent(String),
}

/// Sentence definitions. Bodies may mention any bound name, including
/// their own, inside or outside quotation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefEnv {
    bindings: BTreeMap<String, Formula>,
}

impl DefEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a binding. Name resolution of the body is not checked here; see
    /// [`DefEnv::validate`].
    pub fn define(&mut self, id: impl Into<String>, body: Formula) -> Result<(), EnvError> {
        let id = id.into();
        if !is_ident(&id) {
            return Err(EnvError::BadIdent(id));
        }
        if self.bindings.contains_key(&id) {
            return Err(EnvError::Duplicate(id));
        }
        self.bindings.insert(id, body);
        Ok(())
    }

    pub fn with(mut self, id: impl Into<String>, body: Formula) -> Result<Self, EnvError> {
        self.define(id, body)?;
        Ok(self)
    }

    pub fn get(&self, id: &str) -> Option<&Formula> {
        self.bindings.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.bindings.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Bound names in lexicographic order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Every `Name` occurring in a body must be bound.
    pub fn validate(&self) -> Result<(), EnvError> {
        for body in self.bindings.values() {
            if let Some(n) = body.names().into_iter().find(|n| !self.contains(n)) {
                return Err(EnvError::Unbound(n.to_string()));
            }
        }
        Ok(())
    }

    /// Parse with identifiers bound here read as `Name`s, the rest as atoms.
    pub fn parse_formula(&self, text: &str) -> Result<Formula, ParseError> {
        parse_with(text, &|id| self.contains(id), false)
    }

    pub fn is_subset_of(&self, other: &DefEnv) -> bool {
        self.bindings
            .iter()
            .all(|(k, v)| other.bindings.get(k) == Some(v))
    }
}

/// Replace every occurrence of `Name(target)` in `f`, quotations included,
/// with its body.
pub fn unfold_once(f: &Formula, env: &DefEnv, target: &str) -> Result<Formula, EnvError> {
    let body = env
        .get(target)
        .ok_or_else(|| EnvError::Unbound(target.to_string()))?;
    Ok(f.substitute_name(target, body))
}

/// Formulas one definitional step away: a single `Name` leaf replaced by
/// its body, or a single occurrence of a body replaced by its name.
pub(crate) fn def_neighbors(f: &Formula, env: &DefEnv) -> Vec<Formula> {
    let mut out = Vec::new();
    if let Formula::Name(n) = f {
        if let Some(body) = env.get(n) {
            out.push(body.clone());
        }
    }
    for (n, body) in env.iter() {
        if body == f {
            out.push(Formula::name(n));
        }
    }
    let kids = f.children();
    for (i, kid) in kids.iter().enumerate() {
        for replaced in def_neighbors(kid, env) {
            let rebuilt: Vec<Formula> = kids
                .iter()
                .enumerate()
                .map(|(j, k)| if i == j { replaced.clone() } else { (*k).clone() })
                .collect();
            out.push(f.with_children(rebuilt));
        }
    }
    out
}

/// Every formula within `radius` definitional steps of `f`.
pub(crate) fn def_ball(f: &Formula, env: &DefEnv, radius: usize) -> BTreeSet<Formula> {
    let mut seen = BTreeSet::new();
    seen.insert(f.clone());
    let mut frontier = vec![f.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for h in def_neighbors(g, env) {
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// Whether `a` and `b` are joined by at most `depth_bound` single-position
/// unfold or fold steps.
pub fn defeq(a: &Formula, b: &Formula, env: &DefEnv, depth_bound: usize) -> bool {
    if a == b {
        return true;
    }
    if depth_bound == 0 {
        return false;
    }
    // Steps are reversible, so meeting in the middle is exact.
    let from_a = def_ball(a, env, depth_bound.div_ceil(2));
    let from_b = def_ball(b, env, depth_bound / 2);
    from_b.iter().any(|g| from_a.contains(g))
}
