//! Logic configurations as text: `ex_falso=true excluded_middle=false ...`.

use std::path::Path;

use ht_core::{LogicConfig, Toggle};

use crate::error::{read, FormatError, LoadError};

fn toggle(key: &str) -> Option<Toggle> {
    key.replace('-', "_").parse().ok()
}

/// Applies `key=value` pairs to `base`. Keys may use `_` or `-`.
pub fn apply_pairs(base: LogicConfig, text: &str) -> Result<LogicConfig, String> {
    let mut c = base;
    for pair in text.split_whitespace() {
        let Some((k, v)) = pair.split_once('=') else {
            return Err(format!("expected key=value, found `{pair}`"));
        };
        let t = toggle(k).ok_or_else(|| format!("unknown toggle `{k}`"))?;
        let on = v
            .parse::<bool>()
            .map_err(|_| format!("`{v}` is not true or false"))?;
        c.set(t, on);
    }
    Ok(c)
}

/// Config files hold `key=value` pairs, any number per line, with `#`
/// comment lines. Unset toggles keep their HT values.
pub fn parse_config(text: &str) -> Result<LogicConfig, FormatError> {
    let mut c = LogicConfig::HT;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let t = t.strip_prefix("config ").unwrap_or(t);
        c = apply_pairs(c, t).map_err(|m| FormatError::new(i + 1, 1, m))?;
    }
    Ok(c)
}

pub fn load_config(path: &Path) -> Result<LogicConfig, LoadError> {
    parse_config(&read(path)?).map_err(|e| LoadError::format(path, e))
}

pub fn write_config(c: &LogicConfig) -> String {
    c.to_string()
}

/// Toggle settings given on the command line or in a test expectation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub ex_falso: Option<bool>,
    pub excluded_middle: Option<bool>,
    pub reflection: Option<bool>,
    pub prov_axioms: Option<bool>,
}

impl Overrides {
    pub fn apply(&self, mut c: LogicConfig) -> LogicConfig {
        let pairs = [
            (Toggle::ExFalso, self.ex_falso),
            (Toggle::ExcludedMiddle, self.excluded_middle),
            (Toggle::Reflection, self.reflection),
            (Toggle::ProvAxioms, self.prov_axioms),
        ];
        for (t, v) in pairs {
            if let Some(on) = v {
                c.set(t, on);
            }
        }
        c
    }

    pub fn is_empty(&self) -> bool {
        *self == Overrides::default()
    }

    /// Parses one `--reflection=false` style flag into `self`.
    pub fn set_flag(&mut self, flag: &str) -> Result<(), String> {
        let body = flag
            .strip_prefix("--")
            .ok_or_else(|| format!("expected a --toggle=bool flag, found `{flag}`"))?;
        let (k, v) = body.split_once('=').unwrap_or((body, "true"));
        let on = v
            .parse::<bool>()
            .map_err(|_| format!("`{v}` is not true or false"))?;
        let slot = match toggle(k).ok_or_else(|| format!("unknown toggle `{k}`"))? {
            Toggle::ExFalso => &mut self.ex_falso,
            Toggle::ExcludedMiddle => &mut self.excluded_middle,
            Toggle::Reflection => &mut self.reflection,
            Toggle::ProvAxioms => &mut self.prov_axioms,
        };
        *slot = Some(on);
        Ok(())
    }

    /// The flags that reproduce `self`.
    pub fn to_flags(&self) -> Vec<String> {
        let pairs = [
            ("ex-falso", self.ex_falso),
            ("excluded-middle", self.excluded_middle),
            ("reflection", self.reflection),
            ("prov-axioms", self.prov_axioms),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.map(|on| format!("--{k}={on}")))
            .collect()
    }
}
