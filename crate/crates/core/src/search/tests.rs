use super::*;
use crate::kernel::check_script;

fn liar() -> DefEnv {
    DefEnv::new()
        .with("L", Formula::prov(Formula::neg(Formula::name("L"))))
        .unwrap()
}

fn f(env: &DefEnv, text: &str) -> Formula {
    env.parse_formula(text).unwrap()
}

fn liar_run(config: LogicConfig, queries: &[&str]) -> SaturationResult {
    let env = liar();
    let b = SearchBounds::default();
    let mut seeds = vec![Formula::name("L")];
    seeds.extend(queries.iter().map(|q| f(&env, q)));
    let u = build_universe(&seeds, &env, &b);
    saturate(&u, &config, &env, &b)
}

fn assert_witnessed(r: &SaturationResult, g: &Formula) {
    let w = r.witness(g).unwrap_or_else(|| panic!("no witness for {g}"));
    let res = check_script(&w);
    assert!(res.is_ok(), "witness for {g} rejected: {:?}", res.rejection);
}

#[test]
fn universe_examples() {
    let env = liar();
    let b = SearchBounds { formula_size: 4, quote_depth: 1, ..SearchBounds::default() };
    let u = build_universe(&[Formula::name("L")], &env, &b);
    for text in ["L", "~L", "Prov(#L#)", "Prov(#~L#)", "0=1", "L -> Prov(#L#)"] {
        assert!(u.contains(&f(&env, text)), "{text}");
    }
    // Quote depth 2 is out of bounds.
    assert!(!u.contains(&f(&env, "Prov(#Prov(#L#)#)")));
    assert!(u.iter().all(|g| g.size() <= 4 && g.quote_depth() <= 1));
    // Ordered by size.
    let sizes: Vec<_> = u.iter().map(Formula::size).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn universe_closure_examples() {
    let env = liar();
    let b = SearchBounds { formula_size: 12, ..SearchBounds::default() };
    let u = build_universe(&[Formula::name("L")], &env, &b);
    for text in ["L", "~L", "Prov(#~L#)", "Prov(#L#)", "0=1", "Prov(#0=1#)"] {
        assert!(u.contains(&f(&env, text)), "{text}");
    }
    let b = SearchBounds { quote_depth: 1, ..SearchBounds::default() };
    let u = build_universe(&[Formula::Falsum], &DefEnv::new(), &b);
    for g in [Formula::Falsum, Formula::neg(Formula::Falsum), Formula::prov(Formula::Falsum)] {
        assert!(u.contains(&g), "{g}");
    }
}

#[test]
fn empty_seeds_give_empty_universe() {
    let env = DefEnv::new();
    let b = SearchBounds::default();
    let u = build_universe(&[], &env, &b);
    assert!(u.is_empty());
    let r = saturate(&u, &LogicConfig::HT, &env, &b);
    assert!(r.is_empty());
    assert!(r.saturated());
}

#[test]
fn ht_liar_saturation() {
    let r = liar_run(LogicConfig::HT, &["L -> Prov(#0=1#)"]);
    let env = liar();
    assert!(r.saturated());
    for g in ["~~L", "L -> Prov(#0=1#)", "L -> Prov(#L#)"] {
        let g = f(&env, g);
        assert!(r.contains(&g), "{g}");
        assert_witnessed(&r, &g);
    }
    assert!(!r.contains(&Formula::Falsum));
    assert!(!r.contains(&f(&env, "Prov(#0=1#)")));
    assert!(!r.contains(&Formula::name("L")));
}

#[test]
fn reflection_derives_falsum() {
    let cfg = LogicConfig { reflection: true, ..LogicConfig::HT };
    let r = liar_run(cfg, &["0=1"]);
    assert!(r.contains(&Formula::Falsum));
    assert_witnessed(&r, &Formula::Falsum);
}

#[test]
fn excluded_middle_derives_provable_falsum() {
    let cfg = LogicConfig { excluded_middle: true, ..LogicConfig::HT };
    let r = liar_run(cfg, &["Prov(#0=1#)"]);
    let env = liar();
    let g = f(&env, "Prov(#0=1#)");
    assert!(r.contains(&g));
    assert_witnessed(&r, &g);
    assert!(!r.contains(&Formula::Falsum));
}

#[test]
fn every_derived_formula_has_a_witness() {
    let r = liar_run(LogicConfig::HT, &[]);
    for g in r.derived() {
        assert_witnessed(&r, g);
    }
}

#[test]
fn minimal_logic_identity() {
    let env = DefEnv::new();
    let g = f(&env, "A -> A");
    let w = prove_bounded(&g, &LogicConfig::MINIMAL, &env, &SearchBounds::default()).unwrap();
    assert!(check_script(&w).is_ok());
    let g = f(&env, "A & B -> B & A");
    let w = prove_bounded(&g, &LogicConfig::MINIMAL, &env, &SearchBounds::default()).unwrap();
    assert!(check_script(&w).is_ok());
    // Excluded middle is out of reach without the toggle.
    let g = f(&env, "A | ~A");
    assert!(prove_bounded(&g, &LogicConfig::INTUITIONISTIC, &env, &SearchBounds::default()).is_none());
}

#[test]
fn monotone_in_config() {
    let base = liar_run(LogicConfig::HT, &[]);
    for cfg in [
        LogicConfig { ex_falso: true, ..LogicConfig::HT },
        LogicConfig { excluded_middle: true, ..LogicConfig::HT },
        LogicConfig { reflection: true, ..LogicConfig::HT },
    ] {
        let more = liar_run(cfg, &[]);
        for g in base.derived() {
            assert!(more.contains(g), "{g} lost under {cfg}");
        }
    }
}

#[test]
fn monotone_in_rounds() {
    let env = liar();
    let u = build_universe(&[Formula::name("L")], &env, &SearchBounds::default());
    let full = saturate(&u, &LogicConfig::HT, &env, &SearchBounds::default());
    assert!(full.round_sizes().windows(2).all(|w| w[0] <= w[1]));
    let mut prev: Vec<Formula> = Vec::new();
    for n in 1..=full.rounds_used() {
        let b = SearchBounds { iterations: n, ..SearchBounds::default() };
        let r = saturate(&u, &LogicConfig::HT, &env, &b);
        assert!(prev.iter().all(|g| r.contains(g)));
        prev = r.derived().into_iter().cloned().collect();
    }
    assert_eq!(prev.len(), full.len());
}

#[test]
fn saturation_is_deterministic() {
    let a = liar_run(LogicConfig::HT, &[]);
    let b = liar_run(LogicConfig::HT, &[]);
    assert_eq!(a.derived(), b.derived());
    let g = f(&liar(), "~~L");
    assert_eq!(a.witness(&g), b.witness(&g));
}
