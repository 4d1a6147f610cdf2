//! Exact ℚ-linear combinations of monomials over a fixed alphabet of constants.

mod normalize;
mod render;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;
use thiserror::Error;

use crate::numerics::{NumericContext, NumericValue};
use crate::series::SeriesSpec;

pub use normalize::{normalize, rewrite_atom};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unresolved atom {0}")]
    Unresolved(String),
    #[error("invalid atom {0}: {1}")]
    InvalidAtom(String, String),
    #[error("evaluation of {0} failed: {1}")]
    Evaluation(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Pi,
    Log2,
    Catalan,
    Li4Half,
    Zeta(u32),
    /// Dirichlet β at even arguments.
    Beta(u32),
    /// ζ(k̄) = Σ (-1)^n n^{-k}
    ZetaBar(u32),
    /// t̃(k) = Σ (n-1/2)^{-k}
    TildeT(u32),
    /// t̄(k) = Σ (-1)^{n-1} (n-1/2)^{-k}
    BarT(u32),
    DoubleZeta(u32, u32),
    DoubleZetaBar(u32, u32),
    DoubleTildeT(u32, u32),
    DoubleTildeTBar(u32, u32),
    /// Classical linear Euler sum Σ H_n^{(a)} n^{-b}.
    EulerS(u32, u32),
    KTT(Vec<u32>),
    /// Σ H_{n-1}^{(k)} (n-1/2)^{-m}
    MixedM(u32, u32),
    /// t̃ at depth ≥ 3.
    MultiTildeT(Vec<u32>),
    /// Σ_{n≥1} (n+a)^{-s}
    Hurwitz(u32, Rational),
    /// Any sum family without a dedicated name.
    Series(SeriesSpec),
}

impl Atom {
    pub fn weight(&self) -> u32 {
        match self {
            Atom::Pi | Atom::Log2 => 1,
            Atom::Catalan => 2,
            Atom::Li4Half => 4,
            Atom::Zeta(k) | Atom::Beta(k) | Atom::ZetaBar(k) | Atom::TildeT(k) | Atom::BarT(k) => *k,
            Atom::DoubleZeta(a, b)
            | Atom::DoubleZetaBar(a, b)
            | Atom::DoubleTildeT(a, b)
            | Atom::DoubleTildeTBar(a, b)
            | Atom::EulerS(a, b)
            | Atom::MixedM(a, b) => a + b,
            Atom::KTT(v) | Atom::MultiTildeT(v) => v.iter().sum(),
            Atom::Hurwitz(s, _) => *s,
            Atom::Series(s) => s.weight(),
        }
    }

    /// Checks the convergence constraint the atom carries.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let bad = |why: &str| Err(AlgebraError::InvalidAtom(self.to_string(), why.to_string()));
        match self {
            Atom::Zeta(k) | Atom::TildeT(k) if *k < 2 => bad("argument must be ≥ 2"),
            Atom::Beta(k) if *k < 2 || k % 2 == 1 => bad("β atoms take even arguments ≥ 2"),
            Atom::ZetaBar(k) | Atom::BarT(k) if *k < 1 => bad("argument must be ≥ 1"),
            Atom::DoubleZeta(a, b) | Atom::DoubleTildeT(a, b) if *a < 2 || *b < 1 => bad("needs a ≥ 2, b ≥ 1"),
            Atom::DoubleZetaBar(a, b) | Atom::DoubleTildeTBar(a, b) if *a < 1 || *b < 1 => bad("needs a, b ≥ 1"),
            Atom::EulerS(a, b) if *a < 1 || *b < 2 => bad("needs a ≥ 1, b ≥ 2"),
            Atom::MixedM(k, m) if *k < 1 || *m < 2 => bad("needs k ≥ 1, m ≥ 2"),
            Atom::KTT(v) | Atom::MultiTildeT(v) if v.is_empty() || v[0] < 2 || v.contains(&0) => {
                bad("leading index must be ≥ 2")
            }
            Atom::Hurwitz(s, a) if *s < 2 || *a <= -1 => bad("needs s ≥ 2, a > -1"),
            _ => Ok(()),
        }
    }
}

/// Commutative product of atoms, stored as sorted atom → power.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<Atom, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn atom(a: Atom) -> Self {
        Self::power(a, 1)
    }

    pub fn power(a: Atom, k: u32) -> Self {
        let mut m = BTreeMap::new();
        if k > 0 {
            m.insert(a, k);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(a, k)| a.weight() * k).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Atom, u32)> {
        self.0.iter().map(|(a, k)| (a, *k))
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (a, k) in &o.0 {
            *m.entry(a.clone()).or_insert(0) += k;
        }
        Monomial(m)
    }
}

/// Finite map Monomial → nonzero Rational.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicValue(BTreeMap<Monomial, Rational>);

impl SymbolicValue {
    pub fn zero() -> Self {
        SymbolicValue(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::rational(Rational::from(1))
    }

    pub fn rational(r: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(Monomial::one(), r);
        v
    }

    pub fn int(k: i64) -> Self {
        Self::rational(Rational::from(k))
    }

    pub fn atom(a: Atom) -> Self {
        Self::monomial(Monomial::atom(a), Rational::from(1))
    }

    pub fn atom_pow(a: Atom, k: u32) -> Self {
        Self::monomial(Monomial::power(a, k), Rational::from(1))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c == 0 {
            return;
        }
        let slot = self.0.entry(m.clone()).or_default();
        *slot += c;
        if *slot == 0 {
            self.0.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rational value if the expression has no atoms.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::new()),
            1 => self.0.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, r: &Rational) -> SymbolicValue {
        if *r == 0 {
            return Self::zero();
        }
        SymbolicValue(self.0.iter().map(|(m, c)| (m.clone(), Rational::from(c * r))).collect())
    }

    pub fn pow(&self, k: u32) -> SymbolicValue {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Set of monomial weights present.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.0.keys().map(|m| m.weight()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights().len() <= 1
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = self.0.keys().flat_map(|m| m.0.keys().cloned()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Replace each atom by a value; atoms mapped to None stay.
    pub fn substitute(&self, f: &dyn Fn(&Atom) -> Option<SymbolicValue>) -> SymbolicValue {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            let mut term = Self::rational(c.clone());
            for (a, k) in &m.0 {
                let piece = match f(a) {
                    Some(v) => v.pow(*k),
                    None => Self::atom_pow(a.clone(), *k),
                };
                term = &term * &piece;
            }
            out = &out + &term;
        }
        out
    }
}

pub enum CombineOp {
    Add,
    Sub,
    Mul,
}

pub fn sym_combine(op: CombineOp, a: &SymbolicValue, b: &SymbolicValue) -> SymbolicValue {
    match op {
        CombineOp::Add => a + b,
        CombineOp::Sub => a - b,
        CombineOp::Mul => a * b,
    }
}

impl<'a> Add<&'a SymbolicValue> for &'a SymbolicValue {
    type Output = SymbolicValue;
    fn add(self, rhs: &'a SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SymbolicValue> for &'a SymbolicValue {
    type Output = SymbolicValue;
    fn sub(self, rhs: &'a SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a SymbolicValue> for &'a SymbolicValue {
    type Output = SymbolicValue;
    fn mul(self, rhs: &'a SymbolicValue) -> SymbolicValue {
        let mut out = SymbolicValue::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                out.add_term(m1.mul(m2), Rational::from(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &SymbolicValue {
    type Output = SymbolicValue;
    fn neg(self) -> SymbolicValue {
        self.scale(&Rational::from(-1))
    }
}

impl From<Atom> for SymbolicValue {
    fn from(a: Atom) -> Self {
        SymbolicValue::atom(a)
    }
}

impl From<Rational> for SymbolicValue {
    fn from(r: Rational) -> Self {
        SymbolicValue::rational(r)
    }
}

/// Σ coeff · Π resolver(atom)^k with propagated error bounds.
pub fn eval_numeric<E: std::fmt::Display>(
    v: &SymbolicValue,
    resolver: &dyn Fn(&Atom) -> Result<NumericValue, E>,
    ctx: &NumericContext,
) -> Result<NumericValue, AlgebraError> {
    let prec = ctx.precision();
    let mut cache: BTreeMap<&Atom, NumericValue> = BTreeMap::new();
    let mut total = NumericValue::zero(prec);
    for (m, c) in &v.0 {
        let mut term = NumericValue::from_rational(c, prec);
        for (a, k) in &m.0 {
            if !cache.contains_key(a) {
                let x = resolver(a).map_err(|e| AlgebraError::Unresolved(format!("{a} ({e})")))?;
                cache.insert(a, x);
            }
            term = &term * &cache[a].pow_u(*k);
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Equality modulo the implemented rewrite set.
pub fn canonical_eq(a: &SymbolicValue, b: &SymbolicValue) -> bool {
    normalize(a) == normalize(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: u32) -> SymbolicValue {
        SymbolicValue::atom(Atom::Zeta(k))
    }

    #[test]
    fn ring_basics() {
        let pi2 = SymbolicValue::atom_pow(Atom::Pi, 2);
        assert!((&pi2 + &(-&pi2)).is_zero());
        let l = &SymbolicValue::atom(Atom::Log2) * &pi2;
        let two = l.scale(&Rational::from(2));
        assert_eq!(two.coefficient(&Monomial::atom(Atom::Log2).mul(&Monomial::power(Atom::Pi, 2))), 2);
        let sq = &z(3) * &z(3);
        assert_eq!(sq, SymbolicValue::atom_pow(Atom::Zeta(3), 2));
        assert_eq!(sq.weights(), vec![6]);
    }

    #[test]
    fn canonical_equality_examples() {
        let pi2_half = SymbolicValue::atom_pow(Atom::Pi, 2).scale(&Rational::from((1, 2)));
        assert!(canonical_eq(&SymbolicValue::atom(Atom::TildeT(2)), &pi2_half));
        let t3 = SymbolicValue::atom(Atom::TildeT(3)).scale(&Rational::from((1, 7)));
        assert!(canonical_eq(&z(3), &t3));
        assert!(!canonical_eq(&SymbolicValue::atom(Atom::DoubleZeta(2, 1)), &z(3)));
    }

    #[test]
    fn unresolved_atom_is_named() {
        let ctx = NumericContext::default();
        let v = SymbolicValue::atom(Atom::KTT(vec![2, 4]));
        let r = |_: &Atom| -> Result<NumericValue, String> { Err("no entry".into()) };
        let e = eval_numeric(&v, &r, &ctx).unwrap_err();
        assert!(e.to_string().contains("KT(2,4)"), "{e}");
        let empty = eval_numeric(&SymbolicValue::zero(), &r, &ctx).unwrap();
        assert!(empty.value().is_zero());
    }

    #[test]
    fn atom_constraints() {
        assert!(Atom::DoubleZeta(1, 2).validate().is_err());
        assert!(Atom::DoubleZeta(2, 1).validate().is_ok());
        assert!(Atom::Beta(3).validate().is_err());
        assert!(Atom::ZetaBar(1).validate().is_ok());
    }
}
