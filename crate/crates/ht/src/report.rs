//! JSON report shapes. Field order and map ordering are fixed, so the same
//! inputs always serialize to the same bytes.

use std::collections::BTreeMap;

use serde::Serialize;

use ht_core::{
    CheckResult, Groundedness, LogicConfig, ProofScript, SaturationResult, SentenceUniverse,
    TarskiEntry, ThreeVal,
};

#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub command: String,
    pub inputs: Inputs,
    pub outcome: T,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Inputs {
    pub files: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigJson>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConfigJson {
    pub ex_falso: bool,
    pub excluded_middle: bool,
    pub reflection: bool,
    pub prov_axioms: bool,
}

impl From<LogicConfig> for ConfigJson {
    fn from(c: LogicConfig) -> Self {
        ConfigJson {
            ex_falso: c.ex_falso,
            excluded_middle: c.excluded_middle,
            reflection: c.reflection,
            prov_axioms: c.prov_axioms,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepJson {
    pub index: usize,
    pub rule: String,
    pub sequent: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorJson {
    pub step: usize,
    pub kind: String,
    pub expected: Option<String>,
    pub actual: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub script: String,
    pub status: &'static str,
    pub config: ConfigJson,
    pub goal: String,
    pub steps: Vec<StepJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorJson>,
}

impl CheckJson {
    pub fn new(script_path: &str, s: &ProofScript, r: &CheckResult) -> Self {
        let steps = s
            .steps
            .iter()
            .zip(&r.derived)
            .map(|(step, seq)| StepJson {
                index: step.index,
                rule: step.rule.to_string(),
                sequent: seq.to_string(),
            })
            .collect();
        let error = r.rejection.as_ref().map(|rej| ErrorJson {
            step: rej.step,
            kind: rej.error.kind().to_string(),
            expected: rej.error.expected(),
            actual: rej.error.actual(),
            message: rej.error.to_string(),
        });
        CheckJson {
            script: script_path.to_string(),
            status: if r.is_ok() { "OK" } else { "Rejected" },
            config: s.config.into(),
            goal: s.goal.to_string(),
            steps,
            error,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QueryJson {
    pub present: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturateJson {
    pub universe_size: usize,
    pub derived: Vec<String>,
    pub saturated: bool,
    pub rounds_used: usize,
    pub contains: BTreeMap<String, QueryJson>,
}

impl SaturateJson {
    pub fn new(r: &SaturationResult, queries: &[(String, Option<bool>, bool)]) -> Self {
        SaturateJson {
            universe_size: r.universe().len(),
            derived: r.derived().iter().map(|f| f.to_string()).collect(),
            saturated: r.saturated(),
            rounds_used: r.rounds_used(),
            contains: queries
                .iter()
                .map(|(q, expected, present)| {
                    (q.clone(), QueryJson { present: *present, expected: *expected })
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProveJson {
    pub goal: String,
    /// `found` or `not-derivable-within-bounds`.
    pub status: &'static str,
    pub script: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KripkeJson {
    pub value: &'static str,
    pub grounded: bool,
    pub stage: Option<usize>,
    pub tarski_level: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TarskiJson {
    pub tarski_level: Option<u32>,
    pub value: Option<&'static str>,
}

pub fn kripke_json(
    u: &SentenceUniverse,
    stages: &[ht_core::Valuation],
    tarski: &BTreeMap<String, Option<TarskiEntry>>,
) -> BTreeMap<String, KripkeJson> {
    let last = stages.last();
    u.names()
        .map(|name| {
            let value = last.map_or(ThreeVal::U, |v| v.get(name));
            let g = ht_core::truth::classify_in(stages, name);
            let entry = KripkeJson {
                value: value.as_str(),
                grounded: matches!(g, Groundedness::Grounded { .. }),
                stage: g.stage(),
                tarski_level: tarski.get(name).copied().flatten().map(|e| e.level),
            };
            (name.to_string(), entry)
        })
        .collect()
}

pub fn tarski_json(tarski: &BTreeMap<String, Option<TarskiEntry>>) -> BTreeMap<String, TarskiJson> {
    tarski
        .iter()
        .map(|(name, e)| {
            let j = TarskiJson {
                tarski_level: e.map(|e| e.level),
                value: e.map(|e| if e.value { "T" } else { "F" }),
            };
            (name.clone(), j)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeJson {
    pub formula: String,
    /// Decimal digits; codes overflow JSON numbers quickly.
    pub code: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagJson {
    pub name: String,
    pub body: String,
    pub unfolds_to_template: bool,
}

pub fn to_json<T: Serialize>(r: &Report<T>) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}
