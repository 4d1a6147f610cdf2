//! Residue calculus for tan/sec/Ψ kernels: Laurent expansions per pole family and the
//! zero-sum relation over all poles.

mod coeff;
mod engine;
mod expand;
mod kernel;
mod laurent;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use coeff::{CoeffPoly, GenKey, SeqSym};
pub use engine::{derive_relation, residue_contribution, solve_for, sum_generic, Contribution, SumTerm};
pub use expand::{expand_base, expand_psi, expand_trig};
pub use kernel::{KernelSpec, PoleFamily, PsiArg, PsiFactor, Trig};
pub use laurent::LaurentSeries;

use crate::algebra::{normalize, Atom, SymbolicValue};
use crate::series::SeriesSpec;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ResidueError {
    #[error("invalid kernel: {0}")]
    Kernel(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("monomial outside the recognized families: {0}")]
    Unmapped(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("truncation underflow: {0}")]
    Truncation(String),
    #[error("target {0} does not appear in the relation")]
    TargetAbsent(String),
}

/// Σ coefficient · series + constant = 0.
#[derive(Clone, Debug, Default)]
pub struct Relation {
    terms: BTreeMap<SeriesSpec, SymbolicValue>,
    constant: SymbolicValue,
    mentioned: BTreeSet<SeriesSpec>,
}

/// Equality ignores which zero-coefficient families were mentioned.
impl PartialEq for Relation {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && self.constant == o.constant
    }
}

impl Eq for Relation {}

impl Relation {
    pub fn from_parts(
        terms: BTreeMap<SeriesSpec, SymbolicValue>,
        constant: SymbolicValue,
        mut mentioned: BTreeSet<SeriesSpec>,
    ) -> Self {
        let mut kept = BTreeMap::new();
        for (s, c) in terms {
            let c = normalize(&c);
            mentioned.insert(s.clone());
            if !c.is_zero() {
                kept.insert(s, c);
            }
        }
        Relation { terms: kept, constant: normalize(&constant), mentioned }
    }

    pub fn new(terms: Vec<(SymbolicValue, SeriesSpec)>, constant: SymbolicValue) -> Self {
        let mut map: BTreeMap<SeriesSpec, SymbolicValue> = BTreeMap::new();
        for (c, s) in terms {
            let slot = map.entry(s).or_default();
            *slot = &*slot + &c;
        }
        Relation::from_parts(map, constant, BTreeSet::new())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeriesSpec, &SymbolicValue)> {
        self.terms.iter()
    }

    pub fn constant(&self) -> &SymbolicValue {
        &self.constant
    }

    pub fn mentions(&self, s: &SeriesSpec) -> bool {
        self.mentioned.contains(s) || self.terms.contains_key(s)
    }

    pub fn coefficient(&self, s: &SeriesSpec) -> SymbolicValue {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub(crate) fn remove(&mut self, s: &SeriesSpec) {
        self.terms.remove(s);
        self.mentioned.remove(s);
    }

    pub fn scale(&self, r: &rug::Rational) -> Relation {
        Relation {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c.scale(r))).filter(|(_, c)| !c.is_zero()).collect(),
            constant: self.constant.scale(r),
            mentioned: self.mentioned.clone(),
        }
    }

    /// Highest harmonic degree among the terms.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|s| s.degree()).max().unwrap_or(0)
    }

    /// The left-hand side as one symbolic value with series atoms.
    pub fn to_symbolic(&self) -> SymbolicValue {
        let mut acc = self.constant.clone();
        for (s, c) in &self.terms {
            acc = &acc + &(c * &SymbolicValue::atom(Atom::Series(s.clone())));
        }
        normalize(&acc)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut w: BTreeSet<u32> = self.constant.weights().into_iter().collect();
        for (s, c) in &self.terms {
            for cw in c.weights() {
                w.insert(cw + s.weight());
            }
        }
        w.len() <= 1
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in &self.terms {
            let (neg, body) = match c.len() {
                1 => {
                    let (m, r) = c.terms().next().unwrap();
                    let neg = *r < 0;
                    let mag = SymbolicValue::monomial(m.clone(), rug::Rational::from(r.abs_ref()));
                    let text = if mag == SymbolicValue::one() { String::new() } else { format!("{mag}*") };
                    (neg, text)
                }
                _ => (false, format!("({c})*")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write!(f, "{body}{s}")?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)?;
        } else if self.constant.len() == 1 {
            let (m, r) = self.constant.terms().next().unwrap();
            let mag = SymbolicValue::monomial(m.clone(), rug::Rational::from(r.abs_ref()));
            write!(f, " {} {mag}", if *r < 0 { '-' } else { '+' })?;
        } else if !self.constant.is_zero() {
            write!(f, " + ({})", self.constant)?;
        }
        write!(f, " = 0")
    }
}
