//! Bounded forward search over a finite universe of formulas.

mod universe;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::formula::{def_ball, DefEnv, Formula};
use crate::kernel::{
    axiom_matches, LogicConfig, ProofScript, ProofStep, Rule, Scheme, Sequent, Subst, DEF_DEPTH,
};

pub use universe::{build_universe, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub quote_depth: usize,
    pub formula_size: usize,
    pub iterations: usize,
    /// Nesting depth of hypothetical sub-derivations (for `impI` and `orE`).
    pub hyp_depth: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            quote_depth: 2,
            formula_size: 16,
            iterations: 64,
            hyp_depth: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Leaf,
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
}

#[derive(Clone, Debug)]
enum Just {
    Hyp,
    Axiom(Scheme, Subst),
    Lem,
    AndI(usize, usize),
    AndE1(usize),
    AndE2(usize),
    OrI1(usize),
    OrI2(usize),
    ImpE(usize, usize),
    Def(usize),
    Efq(usize),
    /// Child context index, or `None` when the consequent already holds.
    ImpI(Option<usize>),
    OrE { disj: usize, left: usize, right: usize },
}

struct Index {
    nodes: Vec<Node>,
    /// Binary parents of each formula.
    parents: Vec<Vec<usize>>,
    /// Formulas within definitional distance `DEF_DEPTH`, excluding self.
    defeq: Vec<Vec<usize>>,
    falsum: Option<usize>,
    axioms: Vec<(usize, Just)>,
}

impl Index {
    fn new(u: &Universe, env: &DefEnv, config: &LogicConfig) -> Self {
        let n = u.len();
        let mut nodes = vec![Node::Leaf; n];
        let mut parents = vec![Vec::new(); n];
        for (i, f) in u.iter().enumerate() {
            let pair = |a: &Formula, b: &Formula| (u.index_of(a), u.index_of(b));
            let node = match f {
                Formula::And(a, b) => match pair(a, b) {
                    (Some(x), Some(y)) => Node::And(x, y),
                    _ => Node::Leaf,
                },
                Formula::Or(a, b) => match pair(a, b) {
                    (Some(x), Some(y)) => Node::Or(x, y),
                    _ => Node::Leaf,
                },
                Formula::Imp(a, b) => match pair(a, b) {
                    (Some(x), Some(y)) => Node::Imp(x, y),
                    _ => Node::Leaf,
                },
                _ => Node::Leaf,
            };
            if let Node::And(x, y) | Node::Or(x, y) | Node::Imp(x, y) = node {
                parents[x].push(i);
                if y != x {
                    parents[y].push(i);
                }
            }
            nodes[i] = node;
        }

        let (r1, r2) = (DEF_DEPTH.div_ceil(2), DEF_DEPTH / 2);
        let mut reach: BTreeMap<Formula, Vec<usize>> = BTreeMap::new();
        for (j, g) in u.iter().enumerate() {
            for x in def_ball(g, env, r2) {
                reach.entry(x).or_default().push(j);
            }
        }
        let defeq = u
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut out = BTreeSet::new();
                for x in def_ball(f, env, r1) {
                    if let Some(js) = reach.get(&x) {
                        out.extend(js.iter().copied().filter(|&j| j != i));
                    }
                }
                out.into_iter().collect()
            })
            .collect();

        let mut axioms = Vec::new();
        for (i, f) in u.iter().enumerate() {
            if let Some((scheme, subst)) = axiom_matches(f, config).into_iter().next() {
                axioms.push((i, Just::Axiom(scheme, subst)));
            } else if config.excluded_middle {
                if let Formula::Or(a, b) = f {
                    if b.as_negation() == Some(a) {
                        axioms.push((i, Just::Lem));
                    }
                }
            }
        }

        Index {
            nodes,
            parents,
            defeq,
            falsum: u.index_of(&Formula::Falsum),
            axioms,
        }
    }
}

#[derive(Clone, Debug)]
struct Context {
    facts: Vec<bool>,
    count: usize,
    /// Facts first derived in this context; the rest are inherited.
    just: BTreeMap<usize, Just>,
    children: Vec<Context>,
}

impl Context {
    fn root(n: usize) -> Self {
        Context {
            facts: vec![false; n],
            count: 0,
            just: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    fn child(&self, hyp: usize) -> Self {
        let mut c = Context {
            facts: self.facts.clone(),
            count: self.count,
            just: BTreeMap::new(),
            children: Vec::new(),
        };
        c.add(hyp, Just::Hyp, &mut Vec::new());
        c
    }

    fn add(&mut self, i: usize, just: Just, work: &mut Vec<usize>) {
        if !self.facts[i] {
            self.facts[i] = true;
            self.count += 1;
            self.just.insert(i, just);
            work.push(i);
        }
    }
}

struct Saturator<'a> {
    ix: &'a Index,
    config: LogicConfig,
    bounds: SearchBounds,
}

impl Saturator<'_> {
    /// Closes `ctx` under the single-premise-context rules.
    fn close(&self, ctx: &mut Context, mut work: Vec<usize>) {
        let ix = self.ix;
        while let Some(i) = work.pop() {
            match ix.nodes[i] {
                Node::And(l, r) => {
                    ctx.add(l, Just::AndE1(i), &mut work);
                    ctx.add(r, Just::AndE2(i), &mut work);
                }
                Node::Imp(l, r) if ctx.facts[l] => ctx.add(r, Just::ImpE(l, i), &mut work),
                _ => {}
            }
            for &p in &ix.parents[i] {
                match ix.nodes[p] {
                    Node::And(l, r) if ctx.facts[l] && ctx.facts[r] => {
                        ctx.add(p, Just::AndI(l, r), &mut work)
                    }
                    Node::Or(l, _) if l == i => ctx.add(p, Just::OrI1(i), &mut work),
                    Node::Or(_, _) => ctx.add(p, Just::OrI2(i), &mut work),
                    Node::Imp(l, r) if l == i && ctx.facts[p] => {
                        ctx.add(r, Just::ImpE(i, p), &mut work)
                    }
                    _ => {}
                }
            }
            for &g in &ix.defeq[i] {
                ctx.add(g, Just::Def(i), &mut work);
            }
            if Some(i) == ix.falsum && self.config.ex_falso {
                for g in 0..ctx.facts.len() {
                    ctx.add(g, Just::Efq(i), &mut work);
                }
            }
        }
    }

    /// Saturates `ctx` by alternating hypothetical passes and closure.
    /// Returns the fact count after each round and whether a fixpoint was
    /// reached within the iteration bound.
    fn run(&self, ctx: &mut Context, depth: usize) -> (Vec<usize>, bool) {
        let mut sizes = Vec::new();
        if depth >= self.bounds.hyp_depth {
            return (sizes, true);
        }
        while sizes.len() < self.bounds.iterations {
            let before = ctx.count;
            self.hypothetical(ctx, depth);
            sizes.push(ctx.count);
            if ctx.count == before {
                return (sizes, true);
            }
        }
        (sizes, false)
    }

    fn hypothetical(&self, ctx: &mut Context, depth: usize) {
        let ix = self.ix;
        let mut cands = BTreeSet::new();
        for (p, node) in ix.nodes.iter().enumerate() {
            match *node {
                Node::Imp(l, _) if !ctx.facts[p] && !ctx.facts[l] => {
                    cands.insert(l);
                }
                Node::Or(l, r) if ctx.facts[p] && !ctx.facts[l] && !ctx.facts[r] => {
                    cands.insert(l);
                    cands.insert(r);
                }
                _ => {}
            }
        }
        let mut kids: BTreeMap<usize, Context> = BTreeMap::new();
        for h in cands {
            let mut kid = ctx.child(h);
            self.close(&mut kid, vec![h]);
            self.run(&mut kid, depth + 1);
            kids.insert(h, kid);
        }

        let mut keep: BTreeMap<usize, usize> = BTreeMap::new();
        let mut keep_kid = |h: usize, ctx: &mut Context, kids: &BTreeMap<usize, Context>| {
            *keep.entry(h).or_insert_with(|| {
                ctx.children.push(kids[&h].clone());
                ctx.children.len() - 1
            })
        };
        let mut work = Vec::new();
        for (p, node) in ix.nodes.iter().enumerate() {
            if ctx.facts[p] {
                continue;
            }
            if let Node::Imp(l, r) = *node {
                if ctx.facts[r] {
                    ctx.add(p, Just::ImpI(None), &mut work);
                } else if kids.get(&l).is_some_and(|k| k.facts[r]) {
                    let k = keep_kid(l, ctx, &kids);
                    ctx.add(p, Just::ImpI(Some(k)), &mut work);
                }
            }
        }
        for d in 0..ix.nodes.len() {
            let Node::Or(l, r) = ix.nodes[d] else { continue };
            if !ctx.facts[d] {
                continue;
            }
            let (Some(kl), Some(kr)) = (kids.get(&l), kids.get(&r)) else {
                continue;
            };
            for c in 0..ix.nodes.len() {
                if !ctx.facts[c] && kl.facts[c] && kr.facts[c] {
                    let left = keep_kid(l, ctx, &kids);
                    let right = keep_kid(r, ctx, &kids);
                    ctx.add(c, Just::OrE { disj: d, left, right }, &mut work);
                }
            }
        }
        self.close(ctx, work);
    }
}

/// Outcome of [`saturate`].
#[derive(Clone, Debug)]
pub struct SaturationResult {
    universe: Universe,
    env: DefEnv,
    config: LogicConfig,
    root: Context,
    round_sizes: Vec<usize>,
    saturated: bool,
}

impl SaturationResult {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.universe.index_of(f).is_some_and(|i| self.root.facts[i])
    }

    /// Derived theorems in universe order.
    pub fn derived(&self) -> Vec<&Formula> {
        self.universe
            .iter()
            .enumerate()
            .filter(|(i, _)| self.root.facts[*i])
            .map(|(_, f)| f)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.root.count
    }

    pub fn is_empty(&self) -> bool {
        self.root.count == 0
    }

    pub fn rounds_used(&self) -> usize {
        self.round_sizes.len()
    }

    /// Number of derived theorems after each round; the first entry is the
    /// closure of the axioms.
    pub fn round_sizes(&self) -> &[usize] {
        &self.round_sizes
    }

    pub fn saturated(&self) -> bool {
        self.saturated
    }

    /// A script for `f` that the kernel accepts, if `f` was derived.
    pub fn witness(&self, f: &Formula) -> Option<ProofScript> {
        let i = self.universe.index_of(f)?;
        if !self.root.facts[i] {
            return None;
        }
        let mut em = Emitter {
            universe: &self.universe,
            steps: Vec::new(),
            memo: BTreeMap::new(),
        };
        em.emit(&[(0, &self.root)], i);
        Some(ProofScript {
            env: self.env.clone(),
            config: self.config,
            goal: Sequent::theorem(f.clone()),
            steps: em.steps,
        })
    }
}

/// Forward-chains from the axioms enabled by `config` over `universe`.
pub fn saturate(
    universe: &Universe,
    config: &LogicConfig,
    env: &DefEnv,
    bounds: &SearchBounds,
) -> SaturationResult {
    let ix = Index::new(universe, env, config);
    let sat = Saturator {
        ix: &ix,
        config: *config,
        bounds: *bounds,
    };
    let mut root = Context::root(universe.len());
    let mut work = Vec::new();
    for (i, j) in &ix.axioms {
        root.add(*i, j.clone(), &mut work);
    }
    sat.close(&mut root, work);
    let mut round_sizes = vec![root.count];
    let (sizes, saturated) = if bounds.iterations <= 1 {
        (Vec::new(), bounds.hyp_depth == 0)
    } else {
        let b = SearchBounds {
            iterations: bounds.iterations - 1,
            ..*bounds
        };
        Saturator { bounds: b, ..sat }.run(&mut root, 0)
    };
    round_sizes.extend(sizes);
    SaturationResult {
        universe: universe.clone(),
        env: env.clone(),
        config: *config,
        root,
        round_sizes,
        saturated,
    }
}

/// Searches for a proof of `goal` within `bounds`.
pub fn prove_bounded(
    goal: &Formula,
    config: &LogicConfig,
    env: &DefEnv,
    bounds: &SearchBounds,
) -> Option<ProofScript> {
    let u = build_universe(core::slice::from_ref(goal), env, bounds);
    saturate(&u, config, env, bounds).witness(goal)
}

struct Emitter<'a> {
    universe: &'a Universe,
    steps: Vec<ProofStep>,
    /// Keyed by context id (its path from the root) and formula.
    memo: BTreeMap<(Vec<usize>, usize), usize>,
}

type Chain<'c> = [(usize, &'c Context)];

impl Emitter<'_> {
    fn push(&mut self, rule: Rule, premises: Vec<usize>, f: usize) -> usize {
        let idx = self.steps.len() + 1;
        self.steps
            .push(ProofStep::new(idx, rule, premises, self.universe.get(f).clone()));
        idx
    }

    fn emit(&mut self, chain: &Chain<'_>, f: usize) -> usize {
        let (_, ctx) = chain[chain.len() - 1];
        let Some(just) = ctx.just.get(&f) else {
            return self.emit(&chain[..chain.len() - 1], f);
        };
        let key = (chain.iter().map(|c| c.0).collect::<Vec<_>>(), f);
        if let Some(&s) = self.memo.get(&key) {
            return s;
        }
        let step = match just {
            Just::Hyp => self.push(Rule::Hyp, vec![], f),
            Just::Axiom(scheme, subst) => {
                let idx = self.push(Rule::Ax(*scheme), vec![], f);
                self.steps[idx - 1].subst = subst.clone();
                idx
            }
            Just::Lem => self.push(Rule::Lem, vec![], f),
            Just::AndI(l, r) => {
                let a = self.emit(chain, *l);
                let b = self.emit(chain, *r);
                self.push(Rule::AndI, vec![a, b], f)
            }
            Just::AndE1(p) => {
                let a = self.emit(chain, *p);
                self.push(Rule::AndE1, vec![a], f)
            }
            Just::AndE2(p) => {
                let a = self.emit(chain, *p);
                self.push(Rule::AndE2, vec![a], f)
            }
            Just::OrI1(p) => {
                let a = self.emit(chain, *p);
                self.push(Rule::OrI1, vec![a], f)
            }
            Just::OrI2(p) => {
                let a = self.emit(chain, *p);
                self.push(Rule::OrI2, vec![a], f)
            }
            Just::ImpE(minor, major) => {
                let a = self.emit(chain, *minor);
                let b = self.emit(chain, *major);
                self.push(Rule::ImpE, vec![a, b], f)
            }
            Just::Def(p) => {
                let a = self.emit(chain, *p);
                self.push(Rule::Def, vec![a], f)
            }
            Just::Efq(p) => {
                let a = self.emit(chain, *p);
                self.push(Rule::Efq, vec![a], f)
            }
            Just::ImpI(kid) => {
                let (ant, cons) = match self.universe.get(f) {
                    Formula::Imp(a, b) => (
                        self.universe.index_of(a).unwrap(),
                        self.universe.index_of(b).unwrap(),
                    ),
                    _ => unreachable!("impI on a non-implication"),
                };
                let (h, b) = match kid {
                    Some(k) => {
                        let mut sub = chain.to_vec();
                        sub.push((*k, &ctx.children[*k]));
                        (self.emit(&sub, ant), self.emit(&sub, cons))
                    }
                    None => {
                        let h = self.push(Rule::Hyp, vec![], ant);
                        (h, self.emit(chain, cons))
                    }
                };
                let idx = self.push(Rule::ImpI, vec![b], f);
                self.steps[idx - 1].discharge = vec![h];
                idx
            }
            Just::OrE { disj, left, right } => {
                let d = self.emit(chain, *disj);
                let Formula::Or(a, b) = self.universe.get(*disj) else {
                    unreachable!("orE on a non-disjunction")
                };
                let (a, b) = (
                    self.universe.index_of(a).unwrap(),
                    self.universe.index_of(b).unwrap(),
                );
                let mut sub = chain.to_vec();
                sub.push((*left, &ctx.children[*left]));
                let ha = self.emit(&sub, a);
                let ca = self.emit(&sub, f);
                sub.pop();
                sub.push((*right, &ctx.children[*right]));
                let hb = self.emit(&sub, b);
                let cb = self.emit(&sub, f);
                let idx = self.push(Rule::OrE, vec![d, ca, cb], f);
                self.steps[idx - 1].discharge = vec![ha, hb];
                idx
            }
        };
        self.memo.insert(key, step);
        step
    }
}

#[cfg(test)]
mod tests;
