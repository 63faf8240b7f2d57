use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::SearchBounds;
use crate::formula::{unfold_once, DefEnv, Formula};
use crate::kernel::{Scheme, Subst};

/// Finite, ordered set of formulas the search may derive. Ordered by size,
/// then structurally.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Universe {
    formulas: Vec<Formula>,
    index: BTreeMap<Formula, usize>,
}

impl Universe {
    pub fn from_formulas(set: impl IntoIterator<Item = Formula>) -> Self {
        let set: BTreeSet<Formula> = set.into_iter().collect();
        let mut formulas: Vec<Formula> = set.into_iter().collect();
        formulas.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        let index = formulas
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        Universe { formulas, index }
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn get(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.formulas.iter()
    }
}

struct Closure<'a> {
    bounds: &'a SearchBounds,
    set: BTreeSet<Formula>,
    work: Vec<Formula>,
}

impl Closure<'_> {
    fn fits(&self, f: &Formula) -> bool {
        f.size() <= self.bounds.formula_size && f.quote_depth() <= self.bounds.quote_depth
    }

    fn add(&mut self, f: Formula) {
        if self.fits(&f) && !self.set.contains(&f) {
            self.set.insert(f.clone());
            self.work.push(f);
        }
    }
}

/// Candidate formulas for a bounded search from `seeds`.
///
/// The core set is the closure of the seeds under subformulas, unfolding
/// one name, negation and `Prov`-wrapping, within the size and quotation
/// bounds. The universe adds every instance of the axiom schemes and of
/// excluded middle whose metavariables range over the core set and which
/// itself fits the bounds, together with its subformulas.
pub fn build_universe(seeds: &[Formula], env: &DefEnv, b: &SearchBounds) -> Universe {
    let mut c = Closure {
        bounds: b,
        set: BTreeSet::new(),
        work: Vec::new(),
    };
    for s in seeds {
        c.add(s.clone());
    }
    while let Some(f) = c.work.pop() {
        for kid in f.children() {
            c.add(kid.clone());
        }
        for n in f.names() {
            if let Ok(g) = unfold_once(&f, env, n) {
                c.add(g);
            }
        }
        c.add(Formula::neg(f.clone()));
        c.add(Formula::prov(f));
    }
    let core = c.set;

    let mut out = core.clone();
    let mut by_size: BTreeMap<usize, Vec<&Formula>> = BTreeMap::new();
    for f in &core {
        by_size.entry(f.size()).or_default().push(f);
    }
    let up_to = |n: usize| -> Vec<&Formula> {
        by_size.range(..=n).flat_map(|(_, v)| v.iter().copied()).collect()
    };
    let max = b.formula_size;
    let mut instances: Vec<Formula> = Vec::new();
    let unary_cap = max.saturating_sub(2) / 2;
    for a in up_to(unary_cap) {
        let s = subst(&[("A", a)]);
        instances.push(Scheme::S1.instantiate(&s).unwrap());
        instances.push(Scheme::Refl.instantiate(&s).unwrap());
        instances.push(Formula::or(a.clone(), Formula::neg(a.clone())));
    }
    // S2a, S2b, S3 and S5 instances have size 2|A| + 2|B| + 6.
    let pair_cap = max.saturating_sub(6) / 2;
    let small = up_to(pair_cap);
    for a in &small {
        for bb in &small {
            if a.size() + bb.size() > pair_cap {
                continue;
            }
            let s = subst(&[("A", a), ("B", bb)]);
            for scheme in [Scheme::S2a, Scheme::S2b, Scheme::S3, Scheme::S5] {
                instances.push(scheme.instantiate(&s).unwrap());
            }
            // S4 has size 2|A| + 2|B| + 3|C| + 10.
            for cc in &small {
                if 2 * (a.size() + bb.size()) + 3 * cc.size() + 10 <= max {
                    let s = subst(&[("A", a), ("B", bb), ("C", cc)]);
                    instances.push(Scheme::S4.instantiate(&s).unwrap());
                }
            }
        }
    }
    for inst in instances {
        if inst.size() <= max && inst.quote_depth() <= b.quote_depth {
            for sub in inst.subformulas() {
                out.insert(sub.clone());
            }
        }
    }
    Universe::from_formulas(out)
}

fn subst(pairs: &[(&str, &Formula)]) -> Subst {
    pairs
        .iter()
        .map(|(k, v)| ((*k).into(), (*v).clone()))
        .collect()
}
