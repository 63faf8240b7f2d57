//! Proof-checking kernel and bounded proof search for natural deduction
//! with a self-applicative provability predicate, plus Kripke and Tarski
//! truth models over finite sentence universes.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, JSON reports
//! and the command line live in the `ht` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod diagonal;
pub mod formula;
pub mod kernel;
pub mod search;
pub mod truth;

pub use diagonal::{diagonalize, DiagError, Template, TemplateError};
pub use formula::{
    defeq, parse_formula, unfold_once, Codec, CodeError, DefEnv, EnvError, Formula, GodelCode,
    ParseError,
};
pub use kernel::{
    check_script, check_step, instantiate_axiom, CheckResult, KernelError, LogicConfig, ProofScript,
    ProofStep, Rejection, Rule, Scheme, Sequent, Subst, Toggle,
};
pub use search::{build_universe, prove_bounded, saturate, SaturationResult, SearchBounds, Universe};
pub use truth::{
    classify_grounded, kripke_fixpoint, kripke_stages, tarski_levels, Groundedness,
    SentenceUniverse, TSentence, TarskiEntry, ThreeVal, TruthError, Valuation,
};
