use std::collections::BTreeMap;

use ht_core::formula::enumerate;
use ht_core::{defeq, unfold_once, Codec, DefEnv, Formula};

fn liar() -> DefEnv {
    DefEnv::new()
        .with("L", Formula::prov(Formula::neg(Formula::name("L"))))
        .unwrap()
}

#[test]
fn print_parse_round_trip_up_to_size_8() {
    let env = liar();
    let leaves = [Formula::atom("A"), Formula::atom("B"), Formula::name("L"), Formula::Falsum];
    let mut n = 0usize;
    for f in enumerate::up_to(&leaves, 8) {
        let text = f.to_string();
        assert_eq!(env.parse_formula(&text).as_ref(), Ok(&f), "{text}");
        n += 1;
    }
    assert_eq!(n, 343_712);
}

#[test]
fn codes_are_injective_up_to_size_5() {
    let leaves = [Formula::atom("A"), Formula::atom("B"), Formula::Falsum, Formula::name("L")];
    let all = enumerate::up_to(&leaves, 5);
    let codec = Codec::new(["A", "B"], ["L"]);
    let mut seen = BTreeMap::new();
    for f in &all {
        let c = codec.encode(f).unwrap();
        assert_eq!(codec.decode(&c).as_ref(), Ok(f));
        if let Some(prev) = seen.insert(c.clone(), f) {
            panic!("{prev} and {f} share code {c}");
        }
    }
    assert_eq!(seen.len(), all.len());
}

#[test]
fn defeq_is_symmetric_on_small_formulas() {
    let env = liar();
    let mut pool = enumerate::up_to(&[Formula::name("L"), Formula::atom("A")], 4);
    pool.extend(
        pool.clone()
            .iter()
            .filter(|f| f.mentions_name("L"))
            .map(|f| unfold_once(f, &env, "L").unwrap()),
    );
    for a in &pool {
        for b in &pool {
            for k in 0..=2 {
                assert_eq!(defeq(a, b, &env, k), defeq(b, a, &env, k), "{a} / {b} at {k}");
            }
        }
    }
}

#[test]
fn unfold_without_occurrence_is_identity() {
    let env = liar();
    for f in enumerate::up_to(&[Formula::atom("A"), Formula::Falsum], 5) {
        assert_eq!(unfold_once(&f, &env, "L").unwrap(), f);
    }
}
