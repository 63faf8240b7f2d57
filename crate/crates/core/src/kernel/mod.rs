//! Natural deduction proof checking.
//!
//! A script is a list of numbered steps. Each step cites a rule and earlier
//! steps, states the formula it concludes, and the checker computes the
//! sequent `Γ ⊢ F` it establishes. Contexts are sets of hypotheses: `assume`
//! introduces one, `impI` and `orE` discharge, every other rule takes the
//! union of its premises' contexts.

mod axioms;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use axioms::{axiom_matches, instantiate_axiom, Scheme, Subst};

use crate::formula::{defeq, DefEnv, Formula};

/// Unfold budget of the `def` rule and of goal matching.
pub const DEF_DEPTH: usize = 2;

/// Minimal logic plus independent extensions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogicConfig {
    pub ex_falso: bool,
    pub excluded_middle: bool,
    pub reflection: bool,
    pub prov_axioms: bool,
}

impl LogicConfig {
    pub const MINIMAL: LogicConfig = LogicConfig {
        ex_falso: false,
        excluded_middle: false,
        reflection: false,
        prov_axioms: false,
    };

    pub const INTUITIONISTIC: LogicConfig = LogicConfig {
        ex_falso: true,
        ..LogicConfig::MINIMAL
    };

    pub const CLASSICAL: LogicConfig = LogicConfig {
        ex_falso: true,
        excluded_middle: true,
        ..LogicConfig::MINIMAL
    };

    /// Minimal logic with the provability schemes, no reflection, no
    /// excluded middle.
    pub const HT: LogicConfig = LogicConfig {
        prov_axioms: true,
        ..LogicConfig::MINIMAL
    };

    pub fn enabled(&self, t: Toggle) -> bool {
        match t {
            Toggle::ExFalso => self.ex_falso,
            Toggle::ExcludedMiddle => self.excluded_middle,
            Toggle::Reflection => self.reflection,
            Toggle::ProvAxioms => self.prov_axioms,
        }
    }

    pub fn set(&mut self, t: Toggle, on: bool) {
        match t {
            Toggle::ExFalso => self.ex_falso = on,
            Toggle::ExcludedMiddle => self.excluded_middle = on,
            Toggle::Reflection => self.reflection = on,
            Toggle::ProvAxioms => self.prov_axioms = on,
        }
    }

    pub fn with(mut self, t: Toggle, on: bool) -> Self {
        self.set(t, on);
        self
    }

    /// Every toggle on here is also on in `other`.
    pub fn is_subset_of(&self, other: &LogicConfig) -> bool {
        Toggle::ALL
            .into_iter()
            .all(|t| !self.enabled(t) || other.enabled(t))
    }
}

impl fmt::Display for LogicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ex_falso={} excluded_middle={} reflection={} prov_axioms={}",
            self.ex_falso, self.excluded_middle, self.reflection, self.prov_axioms
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Toggle {
    ExFalso,
    ExcludedMiddle,
    Reflection,
    ProvAxioms,
}

impl Toggle {
    pub const ALL: [Toggle; 4] = [
        Toggle::ExFalso,
        Toggle::ExcludedMiddle,
        Toggle::Reflection,
        Toggle::ProvAxioms,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Toggle::ExFalso => "ex_falso",
            Toggle::ExcludedMiddle => "excluded_middle",
            Toggle::Reflection => "reflection",
            Toggle::ProvAxioms => "prov_axioms",
        }
    }
}

impl fmt::Display for Toggle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Toggle {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Toggle::ALL.into_iter().find(|t| t.as_str() == s).ok_or(())
    }
}

/// `Γ ⊢ F` with Γ kept duplicate-free in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub hypotheses: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(hypotheses: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Self {
        let mut s = Sequent {
            hypotheses: Vec::new(),
            conclusion,
        };
        for h in hypotheses {
            s.add_hypothesis(h);
        }
        s
    }

    pub fn theorem(conclusion: Formula) -> Self {
        Sequent::new([], conclusion)
    }

    pub fn add_hypothesis(&mut self, h: Formula) {
        if !self.hypotheses.contains(&h) {
            self.hypotheses.push(h);
        }
    }

    pub fn has_hypothesis(&self, h: &Formula) -> bool {
        self.hypotheses.contains(h)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hypotheses.is_empty() {
            f.write_str("[")?;
            for (i, h) in self.hypotheses.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{h}")?;
            }
            f.write_str("] ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `assume`: `[A] ⊢ A`.
    Hyp,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    Def,
    Efq,
    Lem,
    Ax(Scheme),
}

impl Rule {
    pub fn name(self) -> String {
        match self {
            Rule::Hyp => "assume".into(),
            Rule::AndI => "andI".into(),
            Rule::AndE1 => "andE1".into(),
            Rule::AndE2 => "andE2".into(),
            Rule::OrI1 => "orI1".into(),
            Rule::OrI2 => "orI2".into(),
            Rule::OrE => "orE".into(),
            Rule::ImpI => "impI".into(),
            Rule::ImpE => "impE".into(),
            Rule::Def => "def".into(),
            Rule::Efq => "efq".into(),
            Rule::Lem => "lem".into(),
            Rule::Ax(s) => format!("ax{s}"),
        }
    }

    fn arity(self) -> usize {
        match self {
            Rule::Hyp | Rule::Lem | Rule::Ax(_) => 0,
            Rule::AndI | Rule::ImpE => 2,
            Rule::OrE => 3,
            _ => 1,
        }
    }

    fn toggle(self) -> Option<Toggle> {
        match self {
            Rule::Efq => Some(Toggle::ExFalso),
            Rule::Lem => Some(Toggle::ExcludedMiddle),
            Rule::Ax(s) => Some(s.toggle()),
            _ => None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Rule {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "assume" | "hyp" => Rule::Hyp,
            "andI" => Rule::AndI,
            "andE1" => Rule::AndE1,
            "andE2" => Rule::AndE2,
            "orI1" => Rule::OrI1,
            "orI2" => Rule::OrI2,
            "orE" => Rule::OrE,
            "impI" => Rule::ImpI,
            "impE" => Rule::ImpE,
            "def" => Rule::Def,
            "efq" => Rule::Efq,
            "lem" => Rule::Lem,
            other => Rule::Ax(other.strip_prefix("ax").ok_or(())?.parse()?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    /// 1-based position in the script.
    pub index: usize,
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub formula: Formula,
    /// `assume` steps discharged by `impI` (one) or `orE` (two). Empty means
    /// the antecedent or disjuncts are discharged by formula.
    pub discharge: Vec<usize>,
    /// Only on axiom steps.
    pub subst: Subst,
    pub note: Option<String>,
}

impl ProofStep {
    pub fn new(index: usize, rule: Rule, premises: Vec<usize>, formula: Formula) -> Self {
        ProofStep {
            index,
            rule,
            premises,
            formula,
            discharge: Vec::new(),
            subst: Subst::new(),
            note: None,
        }
    }

    pub fn discharging(mut self, steps: Vec<usize>) -> Self {
        self.discharge = steps;
        self
    }

    pub fn with_subst(mut self, subst: Subst) -> Self {
        self.subst = subst;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub env: DefEnv,
    pub config: LogicConfig,
    pub goal: Sequent,
    pub steps: Vec<ProofStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("rule-disabled: {0}")]
    RuleDisabled(Toggle),
    #[error("premise-mismatch: expected {expected}, found {actual}")]
    PremiseMismatch { expected: String, actual: String },
    #[error("discharge-mismatch: {0}")]
    DischargeMismatch(String),
    #[error("bad-premise: step {0} is not an earlier step")]
    BadPremise(usize),
    #[error("premise-count: {rule} takes {expected} premises, got {actual}")]
    PremiseCount {
        rule: Rule,
        expected: usize,
        actual: usize,
    },
    #[error("bad-index: expected step {expected}, found {actual}")]
    BadIndex { expected: usize, actual: usize },
    #[error("axiom-subst: {scheme} has no metavariable {var}")]
    ExtraMetavariable { scheme: Scheme, var: String },
    #[error("axiom-subst: {scheme} needs metavariable {var}")]
    MissingMetavariable { scheme: Scheme, var: String },
    #[error("goal-mismatch: expected {expected}, found {actual}")]
    GoalMismatch { expected: String, actual: String },
}

impl KernelError {
    pub fn kind(&self) -> &'static str {
        match self {
            KernelError::RuleDisabled(_) => "rule-disabled",
            KernelError::PremiseMismatch { .. } => "premise-mismatch",
            KernelError::DischargeMismatch(_) => "discharge-mismatch",
            KernelError::BadPremise(_) => "bad-premise",
            KernelError::PremiseCount { .. } => "premise-count",
            KernelError::BadIndex { .. } => "bad-index",
            KernelError::ExtraMetavariable { .. } | KernelError::MissingMetavariable { .. } => {
                "axiom-subst"
            }
            KernelError::GoalMismatch { .. } => "goal-mismatch",
        }
    }

    pub fn expected(&self) -> Option<String> {
        match self {
            KernelError::PremiseMismatch { expected, .. }
            | KernelError::GoalMismatch { expected, .. } => Some(expected.clone()),
            KernelError::RuleDisabled(t) => Some(format!("{t}=true")),
            KernelError::BadIndex { expected, .. } => Some(expected.to_string()),
            KernelError::PremiseCount { expected, .. } => Some(expected.to_string()),
            _ => None,
        }
    }

    pub fn actual(&self) -> Option<String> {
        match self {
            KernelError::PremiseMismatch { actual, .. }
            | KernelError::GoalMismatch { actual, .. } => Some(actual.clone()),
            KernelError::RuleDisabled(t) => Some(format!("{t}=false")),
            KernelError::BadIndex { actual, .. } => Some(actual.to_string()),
            KernelError::PremiseCount { actual, .. } => Some(actual.to_string()),
            _ => None,
        }
    }
}

fn mismatch(expected: impl fmt::Display, actual: impl fmt::Display) -> KernelError {
    KernelError::PremiseMismatch {
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn require_eq(expected: &Formula, actual: &Formula) -> Result<(), KernelError> {
    if expected == actual {
        Ok(())
    } else {
        Err(mismatch(expected, actual))
    }
}

fn union<'a>(parts: impl IntoIterator<Item = &'a [Formula]>, conclusion: Formula) -> Sequent {
    Sequent::new(parts.into_iter().flatten().cloned(), conclusion)
}

fn without<'a>(hyps: &'a [Formula], h: &'a Formula) -> impl Iterator<Item = &'a Formula> {
    hyps.iter().filter(move |x| *x != h)
}

/// A discharged assumption must be an earlier `[A] ⊢ A` step for the
/// expected `A`.
fn check_discharge(state: &[Sequent], at: usize, idx: usize, expected: &Formula) -> Result<(), KernelError> {
    let s = lookup(state, at, idx)?;
    let is_assumption = s.hypotheses.len() == 1 && s.hypotheses[0] == s.conclusion;
    if !is_assumption {
        return Err(KernelError::DischargeMismatch(format!(
            "step {idx} ({s}) is not an assumption"
        )));
    }
    if s.conclusion != *expected {
        return Err(KernelError::DischargeMismatch(format!(
            "step {idx} assumes {}, expected {expected}",
            s.conclusion
        )));
    }
    Ok(())
}

fn lookup(state: &[Sequent], at: usize, idx: usize) -> Result<&Sequent, KernelError> {
    if idx == 0 || idx >= at || idx > state.len() {
        return Err(KernelError::BadPremise(idx));
    }
    Ok(&state[idx - 1])
}

/// Sequent established by `step`, given the sequents of steps `1..` in `state`.
pub fn check_step(
    state: &[Sequent],
    step: &ProofStep,
    config: &LogicConfig,
    env: &DefEnv,
) -> Result<Sequent, KernelError> {
    if step.index != state.len() + 1 {
        return Err(KernelError::BadIndex {
            expected: state.len() + 1,
            actual: step.index,
        });
    }
    if let Some(t) = step.rule.toggle() {
        if !config.enabled(t) {
            return Err(KernelError::RuleDisabled(t));
        }
    }
    if step.premises.len() != step.rule.arity() {
        return Err(KernelError::PremiseCount {
            rule: step.rule,
            expected: step.rule.arity(),
            actual: step.premises.len(),
        });
    }
    let prem: Vec<&Sequent> = step
        .premises
        .iter()
        .map(|&i| lookup(state, step.index, i))
        .collect::<Result<_, _>>()?;
    let f = &step.formula;
    let hyps = |ps: &[&Sequent]| -> Vec<Formula> {
        ps.iter().flat_map(|p| p.hypotheses.iter().cloned()).collect()
    };

    match step.rule {
        Rule::Hyp => Ok(Sequent::new([f.clone()], f.clone())),
        Rule::AndI => {
            let want = Formula::and(prem[0].conclusion.clone(), prem[1].conclusion.clone());
            require_eq(&want, f)?;
            Ok(Sequent::new(hyps(&prem), f.clone()))
        }
        Rule::AndE1 | Rule::AndE2 => match &prem[0].conclusion {
            Formula::And(a, b) => {
                let part = if step.rule == Rule::AndE1 { a } else { b };
                require_eq(part, f)?;
                Ok(Sequent::new(hyps(&prem), f.clone()))
            }
            other => Err(mismatch("a conjunction", other)),
        },
        Rule::OrI1 | Rule::OrI2 => match f {
            Formula::Or(a, b) => {
                let part = if step.rule == Rule::OrI1 { a } else { b };
                require_eq(part, &prem[0].conclusion)?;
                Ok(Sequent::new(hyps(&prem), f.clone()))
            }
            other => Err(mismatch("a disjunction", other)),
        },
        Rule::OrE => {
            let (a, b) = match &prem[0].conclusion {
                Formula::Or(a, b) => (&**a, &**b),
                other => return Err(mismatch("a disjunction", other)),
            };
            require_eq(f, &prem[1].conclusion)?;
            require_eq(f, &prem[2].conclusion)?;
            match step.discharge.as_slice() {
                [] => {}
                [da, db] => {
                    check_discharge(state, step.index, *da, a)?;
                    check_discharge(state, step.index, *db, b)?;
                }
                other => {
                    return Err(KernelError::DischargeMismatch(format!(
                        "orE discharges two assumptions, got {}",
                        other.len()
                    )))
                }
            }
            let left: Vec<Formula> = without(&prem[1].hypotheses, a).cloned().collect();
            let right: Vec<Formula> = without(&prem[2].hypotheses, b).cloned().collect();
            Ok(union(
                [prem[0].hypotheses.as_slice(), &left, &right],
                f.clone(),
            ))
        }
        Rule::ImpI => {
            let (a, b) = match f {
                Formula::Imp(a, b) => (&**a, &**b),
                other => return Err(mismatch("an implication", other)),
            };
            require_eq(b, &prem[0].conclusion)?;
            match step.discharge.as_slice() {
                [] => {}
                [d] => check_discharge(state, step.index, *d, a)?,
                other => {
                    return Err(KernelError::DischargeMismatch(format!(
                        "impI discharges one assumption, got {}",
                        other.len()
                    )))
                }
            }
            Ok(Sequent::new(
                without(&prem[0].hypotheses, a).cloned(),
                f.clone(),
            ))
        }
        Rule::ImpE => {
            let want = Formula::imp(prem[0].conclusion.clone(), f.clone());
            require_eq(&want, &prem[1].conclusion)?;
            Ok(Sequent::new(hyps(&prem), f.clone()))
        }
        Rule::Def => {
            if !defeq(&prem[0].conclusion, f, env, DEF_DEPTH) {
                return Err(KernelError::PremiseMismatch {
                    expected: format!("a definitional variant of {}", prem[0].conclusion),
                    actual: f.to_string(),
                });
            }
            Ok(Sequent::new(hyps(&prem), f.clone()))
        }
        Rule::Efq => {
            require_eq(&Formula::Falsum, &prem[0].conclusion)?;
            Ok(Sequent::new(hyps(&prem), f.clone()))
        }
        Rule::Lem => match f {
            Formula::Or(a, b) if **b == Formula::neg((**a).clone()) => Ok(Sequent::theorem(f.clone())),
            other => Err(mismatch("A | ~A", other)),
        },
        Rule::Ax(scheme) => {
            let want = scheme.instantiate(&step.subst)?;
            require_eq(&want, f)?;
            Ok(Sequent::theorem(f.clone()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// Index of the failing step; for a goal mismatch, the last step.
    pub step: usize,
    pub error: KernelError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    /// Sequents of the steps that checked, in order.
    pub derived: Vec<Sequent>,
    pub rejection: Option<Rejection>,
}

impl CheckResult {
    pub fn is_ok(&self) -> bool {
        self.rejection.is_none()
    }
}

/// The goal is met when the last sequent's conclusion is definitionally
/// equal to the goal's and its hypotheses are among the goal's.
pub fn goal_met(derived: &Sequent, goal: &Sequent, env: &DefEnv) -> bool {
    defeq(&derived.conclusion, &goal.conclusion, env, DEF_DEPTH)
        && derived.hypotheses.iter().all(|h| goal.has_hypothesis(h))
}

pub fn check_script(s: &ProofScript) -> CheckResult {
    let mut derived = Vec::with_capacity(s.steps.len());
    for step in &s.steps {
        match check_step(&derived, step, &s.config, &s.env) {
            Ok(seq) => derived.push(seq),
            Err(error) => {
                return CheckResult {
                    derived,
                    rejection: Some(Rejection {
                        step: step.index,
                        error,
                    }),
                }
            }
        }
    }
    let rejection = match derived.last() {
        Some(last) if goal_met(last, &s.goal, &s.env) => None,
        last => Some(Rejection {
            step: s.steps.len(),
            error: KernelError::GoalMismatch {
                expected: s.goal.to_string(),
                actual: last.map_or_else(|| "no steps".into(), |l| l.to_string()),
            },
        }),
    };
    CheckResult { derived, rejection }
}
