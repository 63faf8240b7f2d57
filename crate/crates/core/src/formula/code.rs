//! Gödel numbering by Cantor pairing.
//!
//! `Atom(i) = ⟨0,i⟩`, `0=1 = ⟨1,0⟩`, `And = ⟨2,⟨a,b⟩⟩`, `Or = ⟨3,⟨a,b⟩⟩`,
//! `Imp = ⟨4,⟨a,b⟩⟩`, `Prov(a) = ⟨5,a⟩`, `Name(i) = ⟨6,i⟩`, where `i` is the
//! position of the identifier in a lexicographically sorted registry and
//! `⟨x,y⟩ = (x+y)(x+y+1)/2 + y`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{DefEnv, Formula};

const TAG_ATOM: u32 = 0;
const TAG_FALSUM: u32 = 1;
const TAG_AND: u32 = 2;
const TAG_OR: u32 = 3;
const TAG_IMP: u32 = 4;
const TAG_PROV: u32 = 5;
const TAG_NAME: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GodelCode(pub BigUint);

impl GodelCode {
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Display for GodelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl core::str::FromStr for GodelCode {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(GodelCode)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("not a code")]
    NotACode,
    #[error("`{0}` is not in the identifier registry")]
    Unregistered(String),
}

pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    let t = &s * (&s + 1u32);
    (t >> 1u32) + y
}

pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) >> 1u32;
    let t = (&w * (&w + 1u32)) >> 1u32;
    let y = z - t;
    let x = w - &y;
    (x, y)
}

/// Identifier registries for atoms and defined names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Codec {
    atoms: Vec<String>,
    names: Vec<String>,
}

impl Codec {
    pub fn new<A, N>(atoms: A, names: N) -> Self
    where
        A: IntoIterator,
        A::Item: AsRef<str>,
        N: IntoIterator,
        N::Item: AsRef<str>,
    {
        let atoms: BTreeSet<String> = atoms.into_iter().map(|a| a.as_ref().to_string()).collect();
        let names: BTreeSet<String> = names.into_iter().map(|a| a.as_ref().to_string()).collect();
        Codec {
            atoms: atoms.into_iter().collect(),
            names: names.into_iter().collect(),
        }
    }

    /// Registry with the atoms of `formulas` and the names bound in `env`.
    pub fn for_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>, env: &DefEnv) -> Self {
        let mut atoms = BTreeSet::new();
        for f in formulas {
            atoms.extend(f.atoms());
        }
        for (_, body) in env.iter() {
            atoms.extend(body.atoms());
        }
        Codec::new(atoms, env.names())
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn encode(&self, f: &Formula) -> Result<GodelCode, CodeError> {
        self.code(f).map(GodelCode)
    }

    fn code(&self, f: &Formula) -> Result<BigUint, CodeError> {
        let tagged = |tag: u32, v: BigUint| pair(&BigUint::from(tag), &v);
        Ok(match f {
            Formula::Atom(a) => tagged(TAG_ATOM, index_of(&self.atoms, a)?),
            Formula::Falsum => tagged(TAG_FALSUM, BigUint::zero()),
            Formula::And(a, b) => tagged(TAG_AND, pair(&self.code(a)?, &self.code(b)?)),
            Formula::Or(a, b) => tagged(TAG_OR, pair(&self.code(a)?, &self.code(b)?)),
            Formula::Imp(a, b) => tagged(TAG_IMP, pair(&self.code(a)?, &self.code(b)?)),
            Formula::Prov(a) => tagged(TAG_PROV, self.code(a)?),
            Formula::Name(n) => tagged(TAG_NAME, index_of(&self.names, n)?),
        })
    }

    pub fn decode(&self, c: &GodelCode) -> Result<Formula, CodeError> {
        self.uncode(&c.0)
    }

    fn uncode(&self, z: &BigUint) -> Result<Formula, CodeError> {
        let (tag, rest) = unpair(z);
        let lookup = |reg: &[String]| {
            rest.to_usize()
                .and_then(|i| reg.get(i))
                .cloned()
                .ok_or(CodeError::NotACode)
        };
        let halves = || -> Result<(Formula, Formula), CodeError> {
            let (a, b) = unpair(&rest);
            Ok((self.uncode(&a)?, self.uncode(&b)?))
        };
        match tag.to_u32() {
            Some(TAG_ATOM) => lookup(&self.atoms).map(Formula::Atom),
            Some(TAG_FALSUM) if rest.is_zero() => Ok(Formula::Falsum),
            Some(TAG_AND) => halves().map(|(a, b)| Formula::and(a, b)),
            Some(TAG_OR) => halves().map(|(a, b)| Formula::or(a, b)),
            Some(TAG_IMP) => halves().map(|(a, b)| Formula::imp(a, b)),
            Some(TAG_PROV) => self.uncode(&rest).map(Formula::prov),
            Some(TAG_NAME) => lookup(&self.names).map(Formula::Name),
            _ => Err(CodeError::NotACode),
        }
    }
}

fn index_of(reg: &[String], id: &str) -> Result<BigUint, CodeError> {
    reg.binary_search_by(|r| r.as_str().cmp(id))
        .map(BigUint::from)
        .map_err(|_| CodeError::Unregistered(id.to_string()))
}
