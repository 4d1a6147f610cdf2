//! Owned arithmetic over symbolic values plus the index-set helpers the
//! closed forms are written in.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rug::Rational;

use super::Convention;
use crate::algebra::{Atom, SymbolicValue};
use crate::numerics::binomial;
use crate::series::{make_series_spec, Family, MultipleFamily, MultipleSpec, SeriesSpec, SumRef};

#[derive(Clone, Debug)]
pub(crate) struct E(pub SymbolicValue);

impl E {
    pub fn zero() -> E {
        E(SymbolicValue::zero())
    }
    pub fn int(k: i64) -> E {
        E(SymbolicValue::int(k))
    }
    pub fn rat(n: i64, d: i64) -> E {
        E(SymbolicValue::rational(Rational::from((n, d))))
    }
    pub fn atom(a: Atom) -> E {
        E(SymbolicValue::atom(a))
    }
    pub fn pow(&self, k: u32) -> E {
        E(self.0.pow(k))
    }
}

impl Add for E {
    type Output = E;
    fn add(self, o: E) -> E {
        E(&self.0 + &o.0)
    }
}
impl Sub for E {
    type Output = E;
    fn sub(self, o: E) -> E {
        E(&self.0 - &o.0)
    }
}
impl Mul for E {
    type Output = E;
    fn mul(self, o: E) -> E {
        E(&self.0 * &o.0)
    }
}
impl Neg for E {
    type Output = E;
    fn neg(self) -> E {
        E(-&self.0)
    }
}
impl Mul<E> for i64 {
    type Output = E;
    fn mul(self, o: E) -> E {
        E(o.0.scale(&Rational::from(self)))
    }
}
impl Mul<E> for Rational {
    type Output = E;
    fn mul(self, o: E) -> E {
        E(o.0.scale(&self))
    }
}
impl AddAssign for E {
    fn add_assign(&mut self, o: E) {
        self.0 = &self.0 + &o.0;
    }
}
impl SubAssign for E {
    fn sub_assign(&mut self, o: E) {
        self.0 = &self.0 - &o.0;
    }
}

/// (-1)^k
pub(crate) fn sg(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// C(n, k), zero whenever the arguments leave 0 ≤ k ≤ n.
pub(crate) fn bin(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::new();
    }
    Rational::from(binomial(n as u32, k as u32))
}

/// All (k_1..k_r) with Σ w_i k_i = n and k_i ≥ min_i.
pub(crate) fn solutions(n: i64, w: &[i64], min: &[i64]) -> Vec<Vec<i64>> {
    fn go(n: i64, w: &[i64], min: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let i = cur.len();
        if i == w.len() {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: i64 = w[i + 1..].iter().zip(&min[i + 1..]).map(|(a, b)| a * b).sum();
        let mut k = min[i];
        while w[i] * k + rest <= n {
            cur.push(k);
            go(n - w[i] * k, w, min, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(n, w, min, &mut Vec::new(), &mut out);
    out
}

/// Positive solutions of 2k₁ + k₂ + ... + k_r = n.
pub(crate) fn even_lead(n: i64, r: usize) -> Vec<Vec<i64>> {
    let mut w = vec![1; r];
    w[0] = 2;
    solutions(n, &w, &vec![1; r])
}

/// Atom factory that applies the active convention and records what it did.
pub(crate) struct F {
    conv: Convention,
    zeta0: bool,
    trace: RefCell<BTreeSet<String>>,
}

impl F {
    pub fn new(conv: Convention, zeta0: bool) -> F {
        F { conv, zeta0, trace: RefCell::new(BTreeSet::new()) }
    }

    pub fn trace(&self) -> Vec<String> {
        self.trace.borrow().iter().cloned().collect()
    }

    fn note(&self, s: &str) {
        self.trace.borrow_mut().insert(s.to_string());
    }

    pub fn pi(&self) -> E {
        E::atom(Atom::Pi)
    }
    pub fn log2(&self) -> E {
        E::atom(Atom::Log2)
    }

    /// ζ(k). Out-of-range arguments without a covering convention stay as
    /// invalid atoms, which instantiation rejects unless they cancel.
    pub fn z(&self, k: i64) -> E {
        match k {
            1 => match self.conv {
                Convention::Zeta1IsZero => {
                    self.note("zeta(1) -> 0");
                    E::zero()
                }
                Convention::Zeta1IsMinus2Log2 => {
                    self.note("zeta(1) -> -2*log2");
                    -2 * self.log2()
                }
                Convention::None => E::atom(Atom::Zeta(1)),
            },
            0 if self.zeta0 => {
                self.note("zeta(0) -> -1/2");
                E::rat(-1, 2)
            }
            k => E::atom(Atom::Zeta(k.max(0) as u32)),
        }
    }

    pub fn zb(&self, k: i64) -> E {
        if k == 0 && self.zeta0 {
            self.note("zeta(0b) -> -1/2");
            return E::rat(-1, 2);
        }
        E::atom(Atom::ZetaBar(k.max(0) as u32))
    }

    pub fn tt(&self, k: i64) -> E {
        if k == 1 && self.conv != Convention::None {
            self.note("tt(1) -> 0");
            return E::zero();
        }
        E::atom(Atom::TildeT(k.max(0) as u32))
    }

    pub fn tb(&self, k: i64) -> E {
        E::atom(Atom::BarT(k.max(0) as u32))
    }

    /// Σ_{n≥1} (n+a)^{-s}
    pub fn hz(&self, s: i64, a: &Rational) -> E {
        if s == 1 && self.conv != Convention::None {
            self.note("hz(1;a) -> 0");
            return E::zero();
        }
        E::atom(Atom::Hurwitz(s.max(0) as u32, a.clone()))
    }

    pub fn z2(&self, a: i64, b: i64) -> E {
        E::atom(Atom::DoubleZeta(a as u32, b as u32))
    }
    pub fn z2b(&self, a: i64, b: i64) -> E {
        E::atom(Atom::DoubleZetaBar(a as u32, b as u32))
    }
    pub fn tt2(&self, a: i64, b: i64) -> E {
        E::atom(Atom::DoubleTildeT(a as u32, b as u32))
    }
    pub fn tt2b(&self, a: i64, b: i64) -> E {
        E::atom(Atom::DoubleTildeTBar(a as u32, b as u32))
    }
    pub fn kt(&self, v: &[i64]) -> E {
        E::atom(Atom::KTT(v.iter().map(|&x| x as u32).collect()))
    }

    pub fn ser(&self, s: SeriesSpec) -> E {
        E::atom(Atom::Series(s))
    }

    /// Σ_n Π_j H_{n-1}^{(j)} / (n-1/2)^e over a polynomial in the H's.
    pub fn m_poly(&self, poly: &Poly, e: i64) -> E {
        let mut out = E::zero();
        for (orders, c) in &poly.0 {
            let term = if orders.is_empty() { self.tt(e) } else { self.ser(fam(Family::M, orders, e)) };
            out += E(c.0.clone()) * term;
        }
        out
    }
}

/// Polynomial in the H_{n-1}^{(j)}, keyed by sorted order lists.
#[derive(Clone, Debug)]
pub(crate) struct Poly(pub BTreeMap<Vec<u32>, E>);

impl Poly {
    pub fn one() -> Poly {
        Poly(BTreeMap::from([(vec![], E::int(1))]))
    }

    /// c·H^{(j)} + d
    pub fn linear(j: u32, c: E, d: E) -> Poly {
        Poly(BTreeMap::from([(vec![j], c), (vec![], d)]))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out: BTreeMap<Vec<u32>, E> = BTreeMap::new();
        for (ka, ca) in &self.0 {
            for (kb, cb) in &o.0 {
                let mut k = ka.clone();
                k.extend(kb);
                k.sort();
                let c = ca.clone() * cb.clone();
                let slot = out.entry(k).or_insert_with(E::zero);
                *slot += c;
            }
        }
        out.retain(|_, c| !c.0.is_zero());
        Poly(out)
    }
}

pub(crate) fn fam(f: Family, p: &[u32], q: i64) -> SeriesSpec {
    make_series_spec(f, p, q as u32, None).expect("registry family spec")
}

fn plist(p: &[i64]) -> Vec<u32> {
    p.iter().map(|&x| x as u32).collect()
}

pub(crate) fn t_s(p: &[i64], q: i64) -> SeriesSpec {
    fam(Family::T, &plist(p), q)
}
pub(crate) fn tbar_s(p: &[i64], q: i64) -> SeriesSpec {
    fam(Family::Tbar, &plist(p), q)
}
pub(crate) fn s_s(p: &[i64], q: i64) -> SeriesSpec {
    fam(Family::S, &plist(p), q)
}
pub(crate) fn es_s(p: &[i64], q: i64) -> SeriesSpec {
    fam(Family::EulerS, &plist(p), q)
}
pub(crate) fn m_s(p: &[i64], q: i64) -> SeriesSpec {
    fam(Family::M, &plist(p), q)
}
pub(crate) fn hm_s(k: i64, q: i64, a: &Rational) -> SeriesSpec {
    make_series_spec(Family::HurwitzMixed, &[k as u32], q as u32, Some(a.clone())).expect("registry family spec")
}
pub(crate) fn kt_m(v: &[i64]) -> SumRef {
    SumRef::Multiple(MultipleSpec::plain(MultipleFamily::KanekoTsumura, plist(v)).expect("registry KT spec"))
}
pub(crate) fn tv_m(v: &[i64], bars: &[bool]) -> SumRef {
    SumRef::Multiple(MultipleSpec::new(MultipleFamily::TValue, plist(v), bars.to_vec()).expect("registry t spec"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets() {
        // 2k1 + k2 = 5: (1,3), (2,1)
        assert_eq!(even_lead(5, 2), vec![vec![1, 3], vec![2, 1]]);
        assert_eq!(solutions(3, &[1, 1], &[0, 0]).len(), 4);
        assert!(even_lead(2, 3).is_empty());
    }

    #[test]
    fn degenerate_binomials_vanish() {
        assert_eq!(bin(2, 3), 0);
        assert_eq!(bin(-1, 0), 0);
        assert_eq!(bin(5, 2), 10);
    }
}
