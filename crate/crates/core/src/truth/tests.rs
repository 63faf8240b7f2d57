use super::*;
use proptest::prelude::*;

fn liar() -> SentenceUniverse {
    SentenceUniverse::new()
        .with("liar", TSentence::not(TSentence::true_of("liar")))
        .unwrap()
}

#[test]
fn liar_is_undefined_and_ungrounded() {
    let u = liar();
    let (v, _) = kripke_fixpoint(&u);
    assert_eq!(v.get("liar"), ThreeVal::U);
    assert_eq!(classify_grounded(&u, "liar"), Ok(Groundedness::Ungrounded));
}

#[test]
fn truth_teller_stays_undefined() {
    let u = SentenceUniverse::new()
        .with("tt", TSentence::true_of("tt"))
        .unwrap();
    let stages = kripke_stages(&u);
    // Stage 1 evaluates true(tt) against all-U, which is U again.
    assert_eq!(stages.len(), 1);
    assert_eq!(stages[0].get("tt"), ThreeVal::U);
}

#[test]
fn grounded_chain() {
    let u = SentenceUniverse::new()
        .with("s", TSentence::base("p", true))
        .unwrap()
        .with("t", TSentence::true_of("s"))
        .unwrap();
    let stages = kripke_stages(&u);
    assert_eq!(stages[1].get("s"), ThreeVal::T);
    assert_eq!(stages[1].get("t"), ThreeVal::U);
    assert_eq!(stages[2].get("t"), ThreeVal::T);
    let (_, n) = kripke_fixpoint(&u);
    assert_eq!(n, 2);
    assert_eq!(
        classify_grounded(&u, "s"),
        Ok(Groundedness::Grounded { value: true, stage: 1 })
    );
    assert_eq!(
        classify_grounded(&u, "t"),
        Ok(Groundedness::Grounded { value: true, stage: 2 })
    );
}

#[test]
fn sentence_about_the_liar_is_ungrounded() {
    let u = liar()
        .with("about", TSentence::not(TSentence::true_of("liar")))
        .unwrap();
    assert_eq!(classify_grounded(&u, "about"), Ok(Groundedness::Ungrounded));
}

#[test]
fn strong_kleene_lets_a_false_conjunct_ground_the_liar_context() {
    // f is false, so f & true(liar) is false even though liar is U.
    let u = liar()
        .with("f", TSentence::base("p", false))
        .unwrap()
        .with("g", TSentence::and(TSentence::true_of("f"), TSentence::true_of("liar")))
        .unwrap();
    assert_eq!(
        classify_grounded(&u, "g"),
        Ok(Groundedness::Grounded { value: false, stage: 2 })
    );
}

#[test]
fn classify_unbound() {
    assert_eq!(
        classify_grounded(&liar(), "nope"),
        Err(TruthError::Unbound("nope".into()))
    );
}

#[test]
fn tarski_examples() {
    let u = SentenceUniverse::new()
        .with("a", TSentence::base("p", true))
        .unwrap()
        .with("b", TSentence::true_n(1, "a"))
        .unwrap()
        .with("c", TSentence::true_n(1, "c"))
        .unwrap()
        .with("d", TSentence::true_n(1, "b"))
        .unwrap()
        .with("e", TSentence::not(TSentence::true_n(2, "b")))
        .unwrap();
    let lv = tarski_levels(&u);
    assert_eq!(lv["a"], Some(TarskiEntry { level: 0, value: true }));
    assert_eq!(lv["b"], Some(TarskiEntry { level: 1, value: true }));
    assert_eq!(lv["c"], None);
    // b already uses true_1, so true_1(b) is out of range.
    assert_eq!(lv["d"], None);
    assert_eq!(lv["e"], Some(TarskiEntry { level: 2, value: false }));
}

#[test]
fn tarski_rejects_untyped_truth_and_plain_cycles() {
    let u = liar()
        .with("x", TSentence::name("y"))
        .unwrap()
        .with("y", TSentence::not(TSentence::name("x")))
        .unwrap()
        .with("z", TSentence::true_n(1, "liar"))
        .unwrap();
    let lv = tarski_levels(&u);
    assert_eq!(lv["liar"], None);
    assert_eq!(lv["x"], None);
    assert_eq!(lv["y"], None);
    assert_eq!(lv["z"], None);
}

#[test]
fn bare_name_cycles_are_ill_formed() {
    let u = SentenceUniverse::new()
        .with("x", TSentence::name("y"))
        .unwrap()
        .with("y", TSentence::not(TSentence::name("x")))
        .unwrap();
    assert!(matches!(u.validate(), Err(TruthError::NameCycle(_))));
    assert!(liar().validate().is_ok());
}

#[test]
fn bare_names_evaluate_in_place() {
    let u = SentenceUniverse::new()
        .with("a", TSentence::base("p", false))
        .unwrap()
        .with("b", TSentence::not(TSentence::name("a")))
        .unwrap();
    let (v, n) = kripke_fixpoint(&u);
    assert_eq!(n, 1);
    assert_eq!(v.get("b"), ThreeVal::T);
}

#[test]
fn validation_catches_unbound_targets() {
    let u = SentenceUniverse::new()
        .with("a", TSentence::true_of("ghost"))
        .unwrap();
    assert_eq!(u.validate(), Err(TruthError::Unbound("ghost".into())));
}

/// Bare names may only point at earlier sentences; later ones are reached
/// through `true` instead.
fn ground_names(s: TSentence, j: usize) -> TSentence {
    match s {
        TSentence::Name(t) if t[1..].parse::<usize>().unwrap() >= j => TSentence::TruePred(t),
        TSentence::Not(a) => TSentence::not(ground_names(*a, j)),
        TSentence::And(a, b) => TSentence::and(ground_names(*a, j), ground_names(*b, j)),
        TSentence::Or(a, b) => TSentence::or(ground_names(*a, j), ground_names(*b, j)),
        other => other,
    }
}

fn arb_universe(max: usize) -> impl Strategy<Value = SentenceUniverse> {
    (1..=max).prop_flat_map(|n| {
        let names: Vec<String> = (0..n).map(|i| alloc::format!("s{i}")).collect();
        let leaf = prop_oneof![
            any::<bool>().prop_map(|b| TSentence::base("p", b)),
            (0..n).prop_map(|i| TSentence::true_of(alloc::format!("s{i}"))),
            (0..n, 1..4u32).prop_map(|(i, k)| TSentence::true_n(k, alloc::format!("s{i}"))),
            (0..n).prop_map(|i| TSentence::name(alloc::format!("s{i}"))),
        ];
        let expr = leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(TSentence::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| TSentence::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| TSentence::or(a, b)),
            ]
        });
        proptest::collection::vec(expr, n).prop_map(move |bodies| {
            let mut u = SentenceUniverse::new();
            for (j, (name, body)) in names.iter().zip(bodies).enumerate() {
                u.define(name.clone(), ground_names(body, j)).unwrap();
            }
            u.validate().unwrap();
            u
        })
    })
}

proptest! {
    #[test]
    fn kripke_is_monotone_and_fast(u in arb_universe(12)) {
        let stages = kripke_stages(&u);
        for w in stages.windows(2) {
            prop_assert!(w[0].extended_by(&w[1]));
        }
        prop_assert!(stages.len() - 1 <= u.len() + 1);
    }

    #[test]
    fn tarski_levels_are_kripke_grounded(u in arb_universe(8)) {
        let levels = tarski_levels(&u);
        let stages = kripke_stages(&u.untyped());
        for (name, entry) in &levels {
            if let Some(e) = entry {
                prop_assert_eq!(
                    classify_in(&stages, name),
                    Groundedness::Grounded { value: e.value, stage: classify_in(&stages, name).stage().unwrap() }
                );
            }
        }
    }

    #[test]
    fn truth_free_universes_settle_in_one_stage(bits in proptest::collection::vec(any::<bool>(), 1..10)) {
        let mut u = SentenceUniverse::new();
        for (i, b) in bits.iter().enumerate() {
            let s = match i % 3 {
                0 => TSentence::base("p", *b),
                1 => TSentence::not(TSentence::base("q", *b)),
                _ => TSentence::or(TSentence::name("s0"), TSentence::name(alloc::format!("s{}", i - 1))),
            };
            u.define(alloc::format!("s{i}"), s).unwrap();
        }
        let (_, n) = kripke_fixpoint(&u);
        prop_assert_eq!(n, 1);
        for name in u.names() {
            let grounded = matches!(classify_grounded(&u, name).unwrap(), Groundedness::Grounded { .. });
            prop_assert!(grounded);
        }
    }
}
