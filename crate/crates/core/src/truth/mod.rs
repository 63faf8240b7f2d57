//! Truth over finite sentence universes: Kripke's least fixed point under
//! the strong Kleene scheme, and Tarski's indexed hierarchy.
//!
//! Truth ascriptions target sentence names rather than quoted syntax, so
//! "this sentence is not true" is `liar := ~true(liar)`.

mod kleene;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

pub use kleene::ThreeVal;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TSentence {
    /// A truth-free sentence with a given classical value.
    Base { atom: String, value: bool },
    Not(Box<TSentence>),
    And(Box<TSentence>, Box<TSentence>),
    Or(Box<TSentence>, Box<TSentence>),
    /// `true(s)`: the single, untyped truth predicate.
    TruePred(String),
    /// `true_k(s)`: the level-`k` predicate of the Tarski hierarchy.
    TrueN(u32, String),
    /// Reference to another sentence by name.
    Name(String),
}

impl TSentence {
    pub fn base(atom: impl Into<String>, value: bool) -> Self {
        TSentence::Base { atom: atom.into(), value }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(s: TSentence) -> Self {
        TSentence::Not(Box::new(s))
    }

    pub fn and(a: TSentence, b: TSentence) -> Self {
        TSentence::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: TSentence, b: TSentence) -> Self {
        TSentence::Or(Box::new(a), Box::new(b))
    }

    pub fn true_of(target: impl Into<String>) -> Self {
        TSentence::TruePred(target.into())
    }

    pub fn true_n(level: u32, target: impl Into<String>) -> Self {
        TSentence::TrueN(level, target.into())
    }

    pub fn name(target: impl Into<String>) -> Self {
        TSentence::Name(target.into())
    }

    /// Sentence names this one refers to, through truth predicates or
    /// directly.
    pub fn references(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.walk(&mut |s| match s {
            TSentence::TruePred(t) | TSentence::TrueN(_, t) | TSentence::Name(t) => {
                out.insert(t.as_str());
            }
            _ => {}
        });
        out
    }

    fn walk<'a>(&'a self, visit: &mut dyn FnMut(&'a TSentence)) {
        visit(self);
        match self {
            TSentence::Not(a) => a.walk(visit),
            TSentence::And(a, b) | TSentence::Or(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            _ => {}
        }
    }

    pub fn has_truth_predicate(&self) -> bool {
        let mut found = false;
        self.walk(&mut |s| {
            if matches!(s, TSentence::TruePred(_) | TSentence::TrueN(..)) {
                found = true;
            }
        });
        found
    }

    /// Every `true_k(s)` becomes `true(s)`.
    pub fn untyped(&self) -> TSentence {
        match self {
            TSentence::TrueN(_, t) => TSentence::TruePred(t.clone()),
            TSentence::Not(a) => TSentence::not(a.untyped()),
            TSentence::And(a, b) => TSentence::and(a.untyped(), b.untyped()),
            TSentence::Or(a, b) => TSentence::or(a.untyped(), b.untyped()),
            other => other.clone(),
        }
    }

    /// Strong Kleene value given the current valuation. `true(s)` and
    /// `true_k(s)` read the valuation of `s`; a bare name is an
    /// abbreviation and evaluates its binding in place.
    pub fn eval(&self, u: &SentenceUniverse, v: &Valuation) -> ThreeVal {
        self.eval_bounded(u, v, u.len())
    }

    fn eval_bounded(&self, u: &SentenceUniverse, v: &Valuation, fuel: usize) -> ThreeVal {
        match self {
            TSentence::Base { value, .. } => ThreeVal::from(*value),
            TSentence::Not(a) => !a.eval_bounded(u, v, fuel),
            TSentence::And(a, b) => a.eval_bounded(u, v, fuel) & b.eval_bounded(u, v, fuel),
            TSentence::Or(a, b) => a.eval_bounded(u, v, fuel) | b.eval_bounded(u, v, fuel),
            TSentence::TruePred(t) | TSentence::TrueN(_, t) => v.get(t),
            TSentence::Name(t) => match (u.get(t), fuel) {
                (Some(body), 1..) => body.eval_bounded(u, v, fuel - 1),
                _ => ThreeVal::U,
            },
        }
    }

    fn direct_names(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.walk(&mut |s| {
            if let TSentence::Name(t) = s {
                out.insert(t.as_str());
            }
        });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TruthError {
    #[error("unbound sentence name `{0}`")]
    Unbound(String),
    #[error("sentence `{0}` is defined twice")]
    Duplicate(String),
    #[error("sentence `{0}` refers to itself without a truth predicate")]
    NameCycle(String),
}

/// Name-closed finite set of sentence bindings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SentenceUniverse {
    bindings: BTreeMap<String, TSentence>,
}

impl SentenceUniverse {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn define(&mut self, name: impl Into<String>, s: TSentence) -> Result<(), TruthError> {
        let name = name.into();
        if self.bindings.contains_key(&name) {
            return Err(TruthError::Duplicate(name));
        }
        self.bindings.insert(name, s);
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, s: TSentence) -> Result<Self, TruthError> {
        self.define(name, s)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&TSentence> {
        self.bindings.get(name)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TSentence)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    /// Every referenced name is bound, and bare-name references are
    /// well-founded (self-reference must pass through a truth predicate).
    pub fn validate(&self) -> Result<(), TruthError> {
        for s in self.bindings.values() {
            if let Some(r) = s.references().into_iter().find(|r| !self.bindings.contains_key(*r)) {
                return Err(TruthError::Unbound(r.to_string()));
            }
        }
        // Depth-first search for a cycle among bare-name edges.
        let mut done = BTreeSet::new();
        for start in self.names() {
            let mut path = Vec::new();
            self.name_cycle(start, &mut path, &mut done)?;
        }
        Ok(())
    }

    fn name_cycle<'a>(
        &'a self,
        at: &'a str,
        path: &mut Vec<&'a str>,
        done: &mut BTreeSet<&'a str>,
    ) -> Result<(), TruthError> {
        if done.contains(at) {
            return Ok(());
        }
        if path.contains(&at) {
            return Err(TruthError::NameCycle(at.to_string()));
        }
        path.push(at);
        if let Some(s) = self.bindings.get(at) {
            for next in s.direct_names() {
                self.name_cycle(next, path, done)?;
            }
        }
        path.pop();
        done.insert(at);
        Ok(())
    }

    /// The same universe with every `true_k` replaced by `true`.
    pub fn untyped(&self) -> SentenceUniverse {
        SentenceUniverse {
            bindings: self
                .bindings
                .iter()
                .map(|(k, v)| (k.clone(), v.untyped()))
                .collect(),
        }
    }
}

/// Total map from sentence names to three truth values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    values: BTreeMap<String, ThreeVal>,
}

impl Valuation {
    fn undefined(u: &SentenceUniverse) -> Self {
        Valuation {
            values: u.names().map(|n| (n.to_string(), ThreeVal::U)).collect(),
        }
    }

    /// `U` for names outside the universe.
    pub fn get(&self, name: &str) -> ThreeVal {
        self.values.get(name).copied().unwrap_or(ThreeVal::U)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ThreeVal)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Information order: every defined value here is kept in `later`.
    pub fn extended_by(&self, later: &Valuation) -> bool {
        self.values
            .iter()
            .all(|(k, v)| *v == ThreeVal::U || later.get(k) == *v)
    }
}

/// Valuations of successive stages. Stage 0 is all-`U`; stage `k+1`
/// evaluates every sentence simultaneously against stage `k`. The last
/// entry is the least fixed point: one more stage would reproduce it.
pub fn kripke_stages(u: &SentenceUniverse) -> Vec<Valuation> {
    let mut stages = vec![Valuation::undefined(u)];
    loop {
        let prev = stages.last().unwrap();
        let next = Valuation {
            values: u
                .iter()
                .map(|(n, s)| (n.to_string(), s.eval(u, prev)))
                .collect(),
        };
        if next == *prev {
            return stages;
        }
        stages.push(next);
    }
}

/// Least fixed point and the index of the first stage that reaches it.
pub fn kripke_fixpoint(u: &SentenceUniverse) -> (Valuation, usize) {
    let mut stages = kripke_stages(u);
    let n = stages.len() - 1;
    (stages.pop().unwrap(), n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Groundedness {
    /// Classical value in the least fixed point, and the stage it appeared.
    Grounded { value: bool, stage: usize },
    Ungrounded,
}

pub fn classify_grounded(u: &SentenceUniverse, name: &str) -> Result<Groundedness, TruthError> {
    if u.get(name).is_none() {
        return Err(TruthError::Unbound(name.to_string()));
    }
    Ok(classify_in(&kripke_stages(u), name))
}

/// Groundedness of `name` read off precomputed stages.
pub fn classify_in(stages: &[Valuation], name: &str) -> Groundedness {
    let last = stages.last().map_or(ThreeVal::U, |v| v.get(name));
    match last.to_bool() {
        None => Groundedness::Ungrounded,
        Some(value) => {
            let stage = stages
                .iter()
                .position(|v| v.get(name) == last)
                .unwrap_or(0);
            Groundedness::Grounded { value, stage }
        }
    }
}

impl Groundedness {
    pub fn stage(self) -> Option<usize> {
        match self {
            Groundedness::Grounded { stage, .. } => Some(stage),
            Groundedness::Ungrounded => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TarskiEntry {
    pub level: u32,
    pub value: bool,
}

/// Tarski levels. A sentence without `true_k` sits at level 0; otherwise
/// its level is the largest `k` it (or anything it names) uses, provided
/// each `true_k(t)` targets a sentence of level below `k`. Sentences that
/// use the untyped `true`, refer to themselves without passing through a
/// level, or violate the stratification get `None`.
pub fn tarski_levels(u: &SentenceUniverse) -> BTreeMap<String, Option<TarskiEntry>> {
    let mut memo: BTreeMap<String, Option<TarskiEntry>> = BTreeMap::new();
    let mut visiting = BTreeSet::new();
    for name in u.names() {
        tarski_of(u, name, &mut memo, &mut visiting);
    }
    memo
}

fn tarski_of(
    u: &SentenceUniverse,
    name: &str,
    memo: &mut BTreeMap<String, Option<TarskiEntry>>,
    visiting: &mut BTreeSet<String>,
) -> Option<TarskiEntry> {
    if let Some(e) = memo.get(name) {
        return *e;
    }
    // A cycle through references means no well-founded evaluation.
    if !visiting.insert(name.to_string()) {
        return None;
    }
    let entry = u
        .get(name)
        .and_then(|s| tarski_expr(u, s, memo, visiting));
    visiting.remove(name);
    memo.insert(name.to_string(), entry);
    entry
}

fn tarski_expr(
    u: &SentenceUniverse,
    s: &TSentence,
    memo: &mut BTreeMap<String, Option<TarskiEntry>>,
    visiting: &mut BTreeSet<String>,
) -> Option<TarskiEntry> {
    Some(match s {
        TSentence::Base { value, .. } => TarskiEntry { level: 0, value: *value },
        TSentence::Not(a) => {
            let e = tarski_expr(u, a, memo, visiting)?;
            TarskiEntry { level: e.level, value: !e.value }
        }
        TSentence::And(a, b) | TSentence::Or(a, b) => {
            let x = tarski_expr(u, a, memo, visiting)?;
            let y = tarski_expr(u, b, memo, visiting)?;
            let value = if matches!(s, TSentence::And(..)) {
                x.value && y.value
            } else {
                x.value || y.value
            };
            TarskiEntry { level: x.level.max(y.level), value }
        }
        TSentence::TruePred(_) => return None,
        TSentence::TrueN(k, t) => {
            let target = tarski_of(u, t, memo, visiting)?;
            if target.level >= *k {
                return None;
            }
            TarskiEntry { level: *k, value: target.value }
        }
        TSentence::Name(t) => tarski_of(u, t, memo, visiting)?,
    })
}

#[cfg(test)]
mod tests;
