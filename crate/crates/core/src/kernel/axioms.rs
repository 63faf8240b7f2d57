use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{KernelError, LogicConfig, Toggle};
use crate::formula::Formula;

/// Metavariable assignment for an axiom instance.
pub type Subst = BTreeMap<String, Formula>;

/// Provability axiom schemes.
///
/// ```text
/// S1   A -> Prov(A)
/// S2a  Prov(A) & Prov(B) -> Prov(A & B)
/// S2b  Prov(A & B) -> Prov(A) & Prov(B)
/// S3   Prov(A) | Prov(B) -> Prov(A | B)
/// S4   Prov(A | B) & Prov(A -> C) & Prov(B -> C) -> Prov(C)
/// S5   Prov(A) & Prov(A -> B) -> Prov(B)
/// Refl Prov(A) -> A
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scheme {
    S1,
    S2a,
    S2b,
    S3,
    S4,
    S5,
    Refl,
}

impl Scheme {
    pub const ALL: [Scheme; 7] = [
        Scheme::S1,
        Scheme::S2a,
        Scheme::S2b,
        Scheme::S3,
        Scheme::S4,
        Scheme::S5,
        Scheme::Refl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::S1 => "S1",
            Scheme::S2a => "S2a",
            Scheme::S2b => "S2b",
            Scheme::S3 => "S3",
            Scheme::S4 => "S4",
            Scheme::S5 => "S5",
            Scheme::Refl => "Refl",
        }
    }

    pub fn metavariables(self) -> &'static [&'static str] {
        match self {
            Scheme::S1 | Scheme::Refl => &["A"],
            Scheme::S4 => &["A", "B", "C"],
            _ => &["A", "B"],
        }
    }

    pub fn toggle(self) -> Toggle {
        match self {
            Scheme::Refl => Toggle::Reflection,
            _ => Toggle::ProvAxioms,
        }
    }

    pub fn enabled(self, config: &LogicConfig) -> bool {
        config.enabled(self.toggle())
    }

    /// The scheme with metavariables as atoms `A`, `B`, `C`.
    pub fn pattern(self) -> Formula {
        use Formula as F;
        let (a, b, c) = (F::atom("A"), F::atom("B"), F::atom("C"));
        let p = F::prov;
        match self {
            Scheme::S1 => F::imp(a.clone(), p(a)),
            Scheme::S2a => F::imp(
                F::and(p(a.clone()), p(b.clone())),
                p(F::and(a, b)),
            ),
            Scheme::S2b => F::imp(
                p(F::and(a.clone(), b.clone())),
                F::and(p(a), p(b)),
            ),
            Scheme::S3 => F::imp(F::or(p(a.clone()), p(b.clone())), p(F::or(a, b))),
            Scheme::S4 => F::imp(
                F::and(
                    F::and(p(F::or(a.clone(), b.clone())), p(F::imp(a, c.clone()))),
                    p(F::imp(b, c.clone())),
                ),
                p(c),
            ),
            Scheme::S5 => F::imp(
                F::and(p(a.clone()), p(F::imp(a, b.clone()))),
                p(b),
            ),
            Scheme::Refl => F::imp(p(a.clone()), a),
        }
    }

    /// Closed instance for `subst`, which must cover exactly the scheme's
    /// metavariables.
    pub fn instantiate(self, subst: &Subst) -> Result<Formula, KernelError> {
        let vars = self.metavariables();
        if let Some(missing) = vars.iter().find(|v| !subst.contains_key(**v)) {
            return Err(KernelError::MissingMetavariable {
                scheme: self,
                var: missing.to_string(),
            });
        }
        if let Some(extra) = subst.keys().find(|k| !vars.contains(&k.as_str())) {
            return Err(KernelError::ExtraMetavariable {
                scheme: self,
                var: extra.clone(),
            });
        }
        Ok(self.pattern().substitute_atoms(subst))
    }

    /// The substitution making `f` an instance of this scheme, if any.
    pub fn matches(self, f: &Formula) -> Option<Subst> {
        let mut subst = Subst::new();
        if match_pattern(&self.pattern(), f, &mut subst) {
            Some(subst)
        } else {
            None
        }
    }
}

fn match_pattern(pattern: &Formula, f: &Formula, subst: &mut Subst) -> bool {
    match (pattern, f) {
        (Formula::Atom(v), _) => match subst.get(v) {
            Some(bound) => bound == f,
            None => {
                subst.insert(v.clone(), f.clone());
                true
            }
        },
        (Formula::And(p, q), Formula::And(a, b))
        | (Formula::Or(p, q), Formula::Or(a, b))
        | (Formula::Imp(p, q), Formula::Imp(a, b)) => {
            match_pattern(p, a, subst) && match_pattern(q, b, subst)
        }
        (Formula::Prov(p), Formula::Prov(a)) => match_pattern(p, a, subst),
        _ => false,
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Scheme::ALL.into_iter().find(|x| x.as_str() == s).ok_or(())
    }
}

/// Instance of `scheme` under `subst`, gated by `config`.
pub fn instantiate_axiom(
    scheme: Scheme,
    subst: &Subst,
    config: &LogicConfig,
) -> Result<Formula, KernelError> {
    if !scheme.enabled(config) {
        return Err(KernelError::RuleDisabled(scheme.toggle()));
    }
    scheme.instantiate(subst)
}

/// All schemes `f` instantiates under `config`, with their substitutions.
pub fn axiom_matches(f: &Formula, config: &LogicConfig) -> Vec<(Scheme, Subst)> {
    Scheme::ALL
        .into_iter()
        .filter(|s| s.enabled(config))
        .filter_map(|s| s.matches(f).map(|m| (s, m)))
        .collect()
}
