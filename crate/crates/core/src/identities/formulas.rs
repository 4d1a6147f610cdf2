//! Closed forms for the general families, written term by term in the order
//! the formulas are usually stated. Every builder returns the LHS combination
//! with its parity prefactor already evaluated, and the RHS.

use rug::Rational;

use super::expr::*;
use super::Params;
use crate::series::{tsum_as_tvalues, SumRef};

pub(crate) type Built = (Vec<(Rational, SumRef)>, E);

fn l(c: i64, s: impl Into<SumRef>) -> (Rational, SumRef) {
    (Rational::from(c), s.into())
}

fn r(c: Rational, s: impl Into<SumRef>) -> (Rational, SumRef) {
    (c, s.into())
}

/// Σ_{2k₁+k₂=n} t̃(2k₁) ζ(k₂+1)
fn tz(f: &F, n: i64) -> E {
    let mut e = E::zero();
    for k in even_lead(n, 2) {
        e += f.tt(2 * k[0]) * f.z(k[1] + 1);
    }
    e
}

/// Σ_{2k₁+k₂+k₃=n} t̃(2k₁) ζ(k₂+1) ζ(k₃+1)
fn tzz(f: &F, n: i64) -> E {
    let mut e = E::zero();
    for k in even_lead(n, 3) {
        e += f.tt(2 * k[0]) * f.z(k[1] + 1) * f.z(k[2] + 1);
    }
    e
}

pub(crate) fn linear_t_even_q(f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let rhs = sg(q + 1) * f.tt(q + 1) + 4 * f.log2() * f.tt(q) - 2 * tz(f, q);
    (vec![l(2, t_s(&[1], q))], rhs)
}

pub(crate) fn linear_t_odd(f: &F, a: &Params) -> Built {
    let (p, q) = (a.i("p"), a.i("q"));
    let mut rhs = sg(p + q) * f.tt(p + q) - (sg(p) * (1 + sg(q))) * (f.tt(p) * f.tt(q));
    for k in 0..p {
        let c = Rational::from(sg(p) * (sg(k) - 1)) * bin(p + q - k - 2, q - 1);
        if c != 0 {
            rhs -= c * (f.tt(k + 1) * f.z(p + q - k - 1));
        }
    }
    for k in even_lead(q + 1, 2) {
        rhs += Rational::from(2 * sg(p)) * bin(k[1] + p - 2, p - 1) * (f.tt(2 * k[0]) * f.z(k[1] + p - 1));
    }
    (vec![l(2, t_s(&[p], q))], rhs)
}

pub(crate) fn quad_t_even(f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let (pi, lg) = (f.pi(), f.log2());
    let rhs = pi.pow(2) * f.z(q) + sg(q) * f.tt(q + 2) + (4 * (1 - sg(q))) * (lg.clone() * f.tt(q + 1))
        - 2 * f.tt2(q + 1, 1)
        + (4 * (1 + sg(q))) * (lg.pow(2) * f.tt(q))
        - 4 * tz(f, q + 1)
        - 8 * (lg * tz(f, q))
        + 2 * tzz(f, q);
    (vec![l(2, t_s(&[1, 1], q))], rhs)
}

pub(crate) fn quad_t_12(f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let (pi, lg) = (f.pi(), f.log2());
    let mut rhs = pi.pow(2) * (f.z2(q, 1) + 2 * (lg.clone() * f.z(q))) - (q - 1) * (pi.pow(2) * f.z(q + 1))
        + (sg(q + 1) - 1) * (f.tt(2) * f.tt2(q, 1))
        - f.tt(2) * f.tt(q + 1)
        - f.tt2(q + 2, 1)
        - f.tt2(q + 1, 2)
        - sg(q) * f.tt(q + 3)
        + (2 * (1 + sg(q))) * (lg.clone() * f.tt(q + 2));
    for k in even_lead(q + 2, 2) {
        rhs += (2 * (k[1] - 1)) * (f.tt(2 * k[0]) * f.z(k[1] + 1));
    }
    for k in even_lead(q + 1, 2) {
        rhs += (4 * k[1]) * (lg.clone() * f.tt(2 * k[0]) * f.z(k[1] + 1));
    }
    for k in even_lead(q + 1, 3) {
        rhs -= (2 * k[2]) * (f.tt(2 * k[0]) * f.z(k[1] + 1) * f.z(k[2] + 1));
    }
    (vec![l(2, t_s(&[1, 2], q))], rhs)
}

pub(crate) fn quad_t_1p(f: &F, a: &Params) -> Built {
    let (p, q) = (a.i("p"), a.i("q"));
    let lg = f.log2();
    let sp = sg(p);
    let mut rhs = -(sp * (1 + sg(q))) * (f.tt(p) * f.ser(t_s(&[1], q)))
        - sp * (f.tt(p) * f.tt(q + 1))
        - f.ser(t_s(&[1], p + q))
        - f.ser(t_s(&[p], q + 1))
        - sg(p + q) * f.tt(p + q + 1)
        + (2 * (1 + sg(p + q))) * (lg.clone() * f.tt(p + q))
        - 2 * tz(f, p + q);
    for k in even_lead(q + 2, 2) {
        rhs += Rational::from(2 * sp) * bin(k[1] + p - 2, p - 1) * (f.tt(2 * k[0]) * f.z(k[1] + p - 1));
    }
    for k in even_lead(q + 1, 2) {
        rhs += Rational::from(4 * sp) * bin(k[1] + p - 2, p - 1) * (lg.clone() * f.tt(2 * k[0]) * f.z(k[1] + p - 1));
    }
    for k in even_lead(q + 1, 3) {
        let c = Rational::from(-2 * sp) * bin(k[2] + p - 2, p - 1);
        if c != 0 {
            rhs += c * (f.tt(2 * k[0]) * f.z(k[1] + 1) * f.z(k[2] + p - 1));
        }
    }
    for l in 0..=p {
        let c = Rational::from(sp * (sg(l) - 1)) * bin(p + q - l - 1, q - 1);
        if c != 0 {
            rhs += c * (f.tt(l + 1) * f.z(p + q - l));
        }
    }
    for l in 0..p {
        let c = Rational::from(-sp * (sg(l) - 1)) * bin(p + q - l - 2, q - 1);
        if c != 0 {
            let w = p + q - l - 1;
            rhs += c * (f.tt(l + 1) * (f.ser(es_s(&[1], w)) + 2 * (lg.clone() * f.z(w))));
        }
    }
    for k in 1..p {
        for l in 0..(p - k) {
            let c = Rational::from(sp * sg(k + 1) * (sg(l) - 1)) * bin(p + q - k - l - 2, q - 1);
            if c != 0 {
                let w = p + q - k - l - 1;
                let inner = sg(k) * f.ser(es_s(&[k + 1], w)) - f.z(k + 1) * f.z(w);
                rhs += c * (f.tt(l + 1) * inner);
            }
        }
    }
    (vec![l(2, t_s(&[1, p], q))], rhs)
}

/// The k-sum of the T_{p₁p₂,q} formula with roles (p1, p2); `classical`
/// selects the H_n-sums over n^w, otherwise H_{n-1}-sums over (n-1/2)^w with
/// t̃ in place of ζ.
fn pair_tail(f: &F, p1: i64, p2: i64, q: i64, classical: bool) -> E {
    let mut e = E::zero();
    for k in 1..=p2 {
        let outer = Rational::from(sg(p1 + p2) * sg(k)) * bin(k + p1 - 2, p1 - 1);
        if outer == 0 {
            continue;
        }
        for l in 0..=(p2 - k) {
            let c = outer.clone() * Rational::from(sg(l) - 1) * bin(p2 + q - k - l - 1, q - 1);
            if c == 0 {
                continue;
            }
            let (u, w) = (k + p1 - 1, p2 + q - k - l);
            let inner = if classical {
                f.z(u) * f.z(w) + sg(u) * f.ser(es_s(&[u], w))
            } else {
                f.z(u) * f.tt(w) + sg(u) * f.ser(m_s(&[u], w))
            };
            e += c * (f.tt(l + 1) * inner);
        }
    }
    e
}

pub(crate) fn quad_t_p1p2(f: &F, a: &Params) -> Built {
    let (p1, p2, q) = (a.i("p1"), a.i("p2"), a.i("q"));
    let mut rhs = -f.ser(t_s(&[p1], p2 + q)) - f.ser(t_s(&[p2], p1 + q))
        - (sg(p1 + p2) * (1 + sg(q))) * (f.tt(p1) * f.tt(p2) * f.tt(q))
        + (sg(p1) * (sg(p2 + q) - 1)) * (f.tt(p1) * f.ser(t_s(&[p2], q)))
        + (sg(p2) * (sg(p1 + q) - 1)) * (f.tt(p2) * f.ser(t_s(&[p1], q)))
        - sg(p1) * (f.tt(p1) * f.tt(p2 + q))
        - sg(p2) * (f.tt(p2) * f.tt(p1 + q));
    for l in 0..(p1 + p2) {
        let c = Rational::from(-sg(p1 + p2) * (sg(l) - 1)) * bin(p1 + p2 + q - l - 2, q - 1);
        if c != 0 {
            rhs += c * (f.tt(l + 1) * f.z(p1 + p2 + q - l - 1));
        }
    }
    rhs += pair_tail(f, p1, p2, q, true) + pair_tail(f, p2, p1, q, true);
    rhs += sg(p1 + p2 + q) * f.tt(p1 + p2 + q);
    for (x, y) in [(p1, p2), (p2, p1)] {
        for k in solutions(y + q + 1, &[1, 2], &[1, 1]) {
            rhs += Rational::from(2 * sg(x)) * bin(x + k[0] - 2, x - 1) * (f.z(x + k[0] - 1) * f.tt(2 * k[1]));
        }
    }
    for k in solutions(q + 2, &[1, 1, 2], &[1, 1, 1]) {
        let c = Rational::from(2 * sg(p1 + p2)) * bin(p1 + k[0] - 2, p1 - 1) * bin(p2 + k[1] - 2, p2 - 1);
        rhs += c * (f.z(p1 + k[0] - 1) * f.z(p2 + k[1] - 1) * f.tt(2 * k[2]));
    }
    let pre = 1 + sg(p1 + p2 + q);
    (vec![l(pre, t_s(&[p1, p2], q))], rhs)
}

pub(crate) fn cubic_t(f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let (pi, lg) = (f.pi(), f.log2());
    let mut res0 = (1 - sg(q)) * f.tt(q + 3)
        + (6 * (1 + sg(q))) * (lg.clone() * f.tt(q + 2))
        + (12 * (1 - sg(q))) * (lg.pow(2) * f.tt(q + 1))
        + (8 * (1 + sg(q))) * (lg.pow(3) * f.tt(q))
        - 6 * tz(f, q + 2)
        - 24 * (lg.clone() * tz(f, q + 1))
        - 24 * (lg.pow(2) * tz(f, q))
        + 6 * tzz(f, q + 1)
        + 12 * (lg.clone() * tzz(f, q));
    for k in even_lead(q, 4) {
        res0 -= 2 * (f.tt(2 * k[0]) * f.z(k[1] + 1) * f.z(k[2] + 1) * f.z(k[3] + 1));
    }
    let rhs = 3 * (pi.pow(2) * (f.z2(q, 1) + 2 * (lg * f.z(q)))) - (q - 3) * (pi.pow(2) * f.z(q + 1))
        - 3 * f.ser(t_s(&[1, 1], q + 1))
        - 3 * f.tt2(q + 2, 1)
        - f.tt(q + 3)
        + res0;
    (vec![l(2, t_s(&[1, 1, 1], q))], rhs)
}

pub(crate) fn alt_t_linear_1(f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let mut rhs = sg(q + 1) * f.tb(q + 1) - f.pi() * f.zb(q) + (2 * (sg(q) - 1)) * (f.log2() * f.tb(q));
    for k in even_lead(q - 2, 2) {
        rhs += 2 * (f.tb(2 * k[0] + 1) * f.z(k[1] + 2));
    }
    (vec![l(2, tbar_s(&[1], q))], rhs)
}

pub(crate) fn alt_t_linear(f: &F, a: &Params) -> Built {
    let (p, q) = (a.i("p"), a.i("q"));
    let mut rhs = sg(p + q) * f.tb(p + q) + (sg(p) * (1 - sg(q))) * (f.tt(p) * f.tb(q));
    for k in 0..p {
        let c = Rational::from(sg(p) * (sg(k) + 1)) * bin(p + q - k - 2, q - 1);
        if c != 0 {
            rhs += c * (f.tb(k + 1) * f.zb(p + q - k - 1));
        }
    }
    for k in solutions(q - 1, &[2, 1], &[0, 0]) {
        rhs += Rational::from(-2 * sg(p)) * bin(p + k[1] - 1, p - 1) * (f.tb(2 * k[0] + 1) * f.z(p + k[1]));
    }
    (vec![l(2, tbar_s(&[p], q))], rhs)
}

pub(crate) fn alt_t_quad(f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let (pi, lg) = (f.pi(), f.log2());
    let mut rhs = (q - 2) * (pi.clone() * f.zb(q + 1)) - 2 * (pi.clone() * f.z2b(q, 1))
        - 4 * (pi * lg.clone() * f.zb(q))
        - 2 * f.tt2b(q + 1, 1)
        + sg(q) * f.tb(q + 2)
        - (4 * (1 + sg(q))) * (lg.clone() * f.tb(q + 1))
        - (4 * (1 - sg(q))) * (lg.pow(2) * f.tb(q));
    for k in even_lead(q + 1, 3) {
        rhs -= 2 * (f.tb(2 * k[0] - 1) * f.z(k[1] + 1) * f.z(k[2] + 1));
    }
    for k in even_lead(q + 2, 2) {
        rhs += 4 * (f.tb(2 * k[0] - 1) * f.z(k[1] + 1));
    }
    for k in even_lead(q + 1, 2) {
        rhs += 8 * (lg.clone() * f.tb(2 * k[0] - 1) * f.z(k[1] + 1));
    }
    (vec![l(2, tbar_s(&[1, 1], q))], rhs)
}

/// C_{n-1}(j) as a polynomial in H_{n-1}^{(j)}.
fn c_coeff(f: &F, j: i64) -> Poly {
    if j == 1 {
        Poly::linear(1, E::int(1), 2 * f.log2())
    } else {
        Poly::linear(j as u32, E::int(sg(j - 1)), -f.z(j))
    }
}

fn factorial(k: i64) -> Rational {
    Rational::from(crate::numerics::factorial(k as u32))
}

pub(crate) fn s_1p(f: &F, a: &Params) -> Built {
    let (p, q) = (a.i("p"), a.i("q"));
    let mut rhs = E::zero();
    for l in 0..p {
        let c = Rational::from(sg(p - 1) * (sg(l) - 1)) * bin(p + q - l - 2, q - 1);
        if c != 0 {
            rhs += c * (f.tt(l + 1) * f.tt(p + q - l - 1));
        }
    }
    for k in 1..=p {
        // k-vectors of length p-1 with |k| = k
        for kv in solutions(k, &vec![1; (p - 1) as usize], &vec![0; (p - 1) as usize]) {
            let kt: i64 = kv.iter().enumerate().map(|(i, kj)| (i as i64 + 1) * kj).sum();
            if kt > p - 1 {
                continue;
            }
            let mut multi = factorial(k);
            for kj in &kv {
                multi /= factorial(*kj);
            }
            let mut poly = Poly::one();
            for (i, kj) in kv.iter().enumerate() {
                for _ in 0..*kj {
                    poly = poly.mul(&c_coeff(f, i as i64 + 1));
                }
            }
            let outer = bin(p, k) * multi * Rational::from(sg(p - 1 - kt));
            for l in 0..=(p - 1 - kt) {
                let c = outer.clone() * Rational::from(sg(l) - 1) * bin(p + q - kt - l - 2, q - 1);
                if c != 0 {
                    rhs += c * (f.tt(l + 1) * f.m_poly(&poly, p + q - kt - l - 1));
                }
            }
        }
    }
    for kv in solutions(q, &vec![1; p as usize], &vec![1; p as usize]) {
        let mut t = E::int(sg(p + 1));
        for kj in kv {
            t = t * f.tt(kj + 1);
        }
        rhs += t;
    }
    for kv in even_lead(q, (p + 1) as usize) {
        let mut t = E::int(-2 * sg(p + 1)) * f.z(2 * kv[0]);
        for kj in &kv[1..] {
            t = t * f.tt(kj + 1);
        }
        rhs += t;
    }
    (vec![l(2, s_s(&vec![1; p as usize], q))], rhs)
}

pub(crate) fn s_1sq(f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let mut rhs = f.pi().pow(2) * f.tt(q);
    for k in solutions(q, &[1, 1], &[1, 1]) {
        rhs -= f.tt(k[0] + 1) * f.tt(k[1] + 1);
    }
    for k in even_lead(q, 3) {
        rhs += 2 * (f.z(2 * k[0]) * f.tt(k[1] + 1) * f.tt(k[2] + 1));
    }
    (vec![l(2, s_s(&[1, 1], q))], rhs)
}

pub(crate) fn s_1cube(f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let mut rhs = (-2 * q) * (f.tt(2) * f.tt(q + 1))
        + 6 * (f.tt(2) * f.ser(m_s(&[1], q)))
        + 12 * (f.log2() * f.tt(2) * f.tt(q));
    for k in solutions(q, &[1, 1, 1], &[1, 1, 1]) {
        rhs += f.tt(k[0] + 1) * f.tt(k[1] + 1) * f.tt(k[2] + 1);
    }
    for k in even_lead(q, 4) {
        rhs -= 2 * (f.z(2 * k[0]) * f.tt(k[1] + 1) * f.tt(k[2] + 1) * f.tt(k[3] + 1));
    }
    (vec![l(2, s_s(&[1, 1, 1], q))], rhs)
}

pub(crate) fn s_1p_mixed(f: &F, a: &Params) -> Built {
    let (p, q) = (a.i("p"), a.i("q"));
    let lg = f.log2();
    let sp = sg(p);
    let mut rhs = (-sp * (1 + sg(q))) * (f.tt(p) * f.ser(s_s(&[1], q)));
    for l in 0..=p {
        let c = Rational::from(sp * (sg(l) - 1)) * bin(p + q - l - 1, q - 1);
        if c != 0 {
            rhs += c * (f.tt(l + 1) * f.tt(p + q - l));
        }
    }
    for l in 0..p {
        let c = Rational::from(-sp * (sg(l) - 1)) * bin(p + q - l - 2, q - 1);
        if c != 0 {
            let w = p + q - l - 1;
            rhs += c * (f.tt(l + 1) * (f.ser(m_s(&[1], w)) + 2 * (lg.clone() * f.tt(w))));
        }
    }
    for k in 1..p {
        for l in 0..(p - k) {
            let c = Rational::from(-sp * (sg(l) - 1)) * bin(p + q - k - l - 2, q - 1);
            if c != 0 {
                let w = p + q - k - l - 1;
                let inner = f.ser(m_s(&[k + 1], w)) - sg(k) * (f.z(k + 1) * f.tt(w));
                rhs += c * (f.tt(l + 1) * inner);
            }
        }
    }
    for k in solutions(q + 1, &[1, 1], &[1, 1]) {
        rhs += Rational::from(sp) * bin(k[1] + p - 2, p - 1) * (f.tt(k[0] + 1) * f.tt(k[1] + p - 1));
    }
    for k in even_lead(q + 1, 3) {
        let c = Rational::from(-2 * sp) * bin(k[2] + p - 2, p - 1);
        if c != 0 {
            rhs += c * (f.z(2 * k[0]) * f.tt(k[1] + 1) * f.tt(k[2] + p - 1));
        }
    }
    (vec![l(2, s_s(&[1, p], q))], rhs)
}

pub(crate) fn s_p1p2(f: &F, a: &Params) -> Built {
    let (p1, p2, q) = (a.i("p1"), a.i("p2"), a.i("q"));
    let s12 = sg(p1 + p2);
    let mut rhs = -(s12 * (1 + sg(q))) * (f.tt(p1) * f.tt(p2) * f.z(q))
        + (sg(p1) * (sg(p2 + q) - 1)) * (f.tt(p1) * f.ser(s_s(&[p2], q)))
        + (sg(p2) * (sg(p1 + q) - 1)) * (f.tt(p2) * f.ser(s_s(&[p1], q)));
    for k in solutions(q + 2, &[1, 1], &[1, 1]) {
        let c = Rational::from(-s12) * bin(k[0] + p1 - 2, p1 - 1) * bin(k[1] + p2 - 2, p2 - 1);
        rhs += c * (f.tt(k[0] + p1 - 1) * f.tt(k[1] + p2 - 1));
    }
    for k in solutions(q + 2, &[1, 1, 2], &[1, 1, 1]) {
        let c = Rational::from(2 * s12) * bin(k[0] + p1 - 2, p1 - 1) * bin(k[1] + p2 - 2, p2 - 1);
        rhs += c * (f.tt(k[0] + p1 - 1) * f.tt(k[1] + p2 - 1) * f.z(2 * k[2]));
    }
    for l in 0..(p1 + p2) {
        let c = Rational::from(-s12 * (sg(l) - 1)) * bin(p1 + p2 + q - l - 2, q - 1);
        if c != 0 {
            rhs += c * (f.tt(l + 1) * f.tt(p1 + p2 + q - l - 1));
        }
    }
    rhs += pair_tail(f, p1, p2, q, false) + pair_tail(f, p2, p1, q, false);
    let pre = 1 + sg(p1 + p2 + q);
    (vec![l(pre, s_s(&[p1, p2], q))], rhs)
}

pub(crate) fn kt_double_zeta(f: &F, a: &Params) -> Built {
    let (p, q) = (a.i("p"), a.i("q"));
    let m = p + q;
    let mut rhs = Rational::from((1 - sg(p), 2)) * (f.z(p) - f.zb(p));
    for k in 0..=(p / 2) {
        let c = Rational::from(sg(p)) * bin(m - 2 * k - 1, q - 1);
        if c != 0 {
            rhs += c * ((f.z(2 * k) - f.zb(2 * k)) * (f.z(m - 2 * k) - f.zb(m - 2 * k)));
        }
    }
    for k in 0..=(q / 2) {
        let c = Rational::from(sg(p)) * bin(m - 2 * k - 1, p - 1);
        if c != 0 {
            rhs += c * ((f.z(2 * k) + f.zb(2 * k)) * (f.z(m - 2 * k) - f.zb(m - 2 * k)));
        }
    }
    (vec![l(1, kt_m(&[q, p]))], rhs)
}

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from(rug::Integer::from(1) << k as u32)
    } else {
        Rational::from((1, rug::Integer::from(1) << (-k) as u32))
    }
}

pub(crate) fn kt_double_bridge(f: &F, a: &Params) -> Built {
    let (k1, k2) = (a.i("k1"), a.i("k2"));
    (vec![l(1, kt_m(&[k1, k2]))], pow2(2 - k1 - k2) * f.ser(s_s(&[k2], k1)))
}

pub(crate) fn kt_triple_bridge(f: &F, a: &Params) -> Built {
    let (k1, k2, k3) = (a.i("k1"), a.i("k2"), a.i("k3"));
    let rhs = pow2(3 - k1 - k2 - k3) * (f.tt(k1) * f.ser(s_s(&[k3], k2)) - f.ser(s_s(&[k1, k3], k2)));
    (vec![l(1, kt_m(&[k1, k2, k3]))], rhs)
}

pub(crate) fn mixed_h_kt(f: &F, a: &Params) -> Built {
    let (k1, k2) = (a.i("k1"), a.i("k2"));
    let rhs = -pow2(k1 + k2 - 2) * f.kt(&[k1, k2]) + f.z(k1) * f.tt(k2);
    (vec![l(1, m_s(&[k1], k2))], rhs)
}

pub(crate) fn mixed_h1(f: &F, a: &Params) -> Built {
    let p = a.i("p");
    let mut rhs = Rational::from((p, 2)) * f.tt(p + 1) - 2 * (f.log2() * f.tt(p));
    for j in 1..=(p - 2) {
        rhs -= Rational::from((1, 2)) * (f.tt(p - j) * f.tt(j + 1));
    }
    (vec![l(1, m_s(&[1], p))], rhs)
}

/// Merges repeated specs and drops vanishing coefficients.
fn collect(terms: Vec<(Rational, SumRef)>) -> Vec<(Rational, SumRef)> {
    let mut out: Vec<(Rational, SumRef)> = Vec::new();
    for (c, s) in terms {
        match out.iter_mut().find(|(_, t)| *t == s) {
            Some(slot) => slot.0 += c,
            None => out.push((c, s)),
        }
    }
    out.retain(|(c, _)| *c != 0);
    out
}

/// Shared shape of the Hurwitz and half-shift duality: `shift` = a.
fn duality_general(f: &F, p: i64, q: i64, m: i64, a: &Rational) -> Built {
    let half = *a == Rational::from((-1, 2));
    let hz = |s: i64| if half { f.tt(s) } else { f.hz(s, a) };
    let spec = |k: i64, e: i64| if half { m_s(&[k], e) } else { hm_s(k, e, a) };
    let mut lhs = Vec::new();
    for i in 0..p {
        let j = p - 1 - i;
        lhs.push(r(Rational::from(sg(m - 1)) * bin(m + i - 1, i) * bin(q + j - 1, j), spec(m + i, q + j)));
    }
    for i in 0..m {
        let j = m - 1 - i;
        lhs.push(r(Rational::from(sg(p - 1)) * bin(p + i - 1, i) * bin(q + j - 1, j), spec(p + i, q + j)));
    }
    let mut rhs = bin(p + q + m - 2, q - 1) * hz(p + q + m - 1);
    for i in 0..p {
        let j = p - 1 - i;
        rhs += Rational::from(sg(i)) * bin(m + i - 1, i) * bin(q + j - 1, j) * (f.z(m + i) * hz(q + j));
    }
    for i in 0..m {
        let j = m - 1 - i;
        rhs += Rational::from(sg(i)) * bin(p + i - 1, i) * bin(q + j - 1, j) * (f.z(p + i) * hz(q + j));
    }
    for i in 0..q {
        let j = q - 1 - i;
        rhs -= bin(m + i - 1, i) * bin(p + j - 1, j) * (hz(m + i) * hz(p + j));
    }
    (collect(lhs), rhs)
}

pub(crate) fn kt_duality_general(f: &F, a: &Params) -> Built {
    duality_general(f, a.i("p"), a.i("q"), a.i("m"), &Rational::from((-1, 2)))
}

pub(crate) fn kt_duality_hurwitz(f: &F, a: &Params) -> Built {
    duality_general(f, a.i("p"), a.i("q"), a.i("m"), &a.r("a"))
}

pub(crate) fn kt_duality(f: &F, a: &Params) -> Built {
    let (p, q, m) = (a.i("p"), a.i("q"), a.i("m"));
    let mut lhs = Vec::new();
    for i in 0..p {
        let j = p - 1 - i;
        lhs.push(r(Rational::from(sg(m)) * bin(m + i - 1, i) * bin(q + j - 1, j), kt_m(&[m + i, q + j])));
    }
    for i in 0..m {
        let j = m - 1 - i;
        lhs.push(r(Rational::from(sg(p)) * bin(p + i - 1, i) * bin(q + j - 1, j), kt_m(&[p + i, q + j])));
    }
    let mut inner = bin(p + q + m - 2, q - 1) * f.tt(p + q + m - 1);
    for i in 0..p {
        let j = p - 1 - i;
        let c = Rational::from(sg(i) + sg(m)) * bin(m + i - 1, i) * bin(q + j - 1, j);
        if c != 0 {
            inner += c * (f.z(m + i) * f.tt(q + j));
        }
    }
    for i in 0..m {
        let j = m - 1 - i;
        let c = Rational::from(sg(i) + sg(p)) * bin(p + i - 1, i) * bin(q + j - 1, j);
        if c != 0 {
            inner += c * (f.z(p + i) * f.tt(q + j));
        }
    }
    for i in 0..q {
        let j = q - 1 - i;
        inner -= bin(m + i - 1, i) * bin(p + j - 1, j) * (f.tt(m + i) * f.tt(p + j));
    }
    (collect(lhs), pow2(-(p + q + m - 3)) * inner)
}

pub(crate) fn kt_duality_cor(f: &F, a: &Params) -> Built {
    let (p, q) = (a.i("p"), a.i("q"));
    let mut lhs = Vec::new();
    for i in 0..p {
        let j = p - 1 - i;
        lhs.push(r(bin(p + i - 1, i) * bin(q + j - 1, j), kt_m(&[p + i, q + j])));
    }
    let mut rhs = pow2(-(2 * p + q - 2)) * bin(2 * p + q - 2, q - 1) * f.tt(2 * p + q - 1);
    for i in 0..p {
        let j = p - 1 - i;
        let c = pow2(-(2 * p + q - 3)) * bin(p + i - 1, i) * bin(q + j - 1, j) * Rational::from(1 - sg(j));
        if c != 0 {
            rhs += c * (f.z(p + i) * f.tt(q + j));
        }
    }
    for i in 0..q {
        let j = q - 1 - i;
        let c = -pow2(-(2 * p + q - 2)) * Rational::from(sg(p)) * bin(p + i - 1, i) * bin(p + j - 1, j);
        rhs += c * (f.tt(p + i) * f.tt(p + j));
    }
    (collect(lhs), rhs)
}

pub(crate) fn s_t_duality(f: &F, a: &Params) -> Built {
    let (p, q, m) = (a.i("p"), a.i("q"), a.i("m"));
    let mut lhs = Vec::new();
    for i in 0..m {
        let j = m - 1 - i;
        lhs.push(r(Rational::from(sg(p - 1)) * bin(p + i - 1, i) * bin(q + j - 1, j), s_s(&[p + i], q + j)));
    }
    for i in 0..p {
        let j = p - 1 - i;
        lhs.push(r(Rational::from(sg(m - 1)) * bin(m + i - 1, i) * bin(q + j - 1, j), t_s(&[m + i], q + j)));
    }
    let mut rhs = E::zero();
    for i in 0..m {
        let j = m - 1 - i;
        rhs += Rational::from(sg(i)) * bin(p + i - 1, i) * bin(q + j - 1, j) * (f.tt(p + i) * f.z(q + j));
    }
    for i in 0..p {
        let j = p - 1 - i;
        rhs += Rational::from(sg(i)) * bin(m + i - 1, i) * bin(q + j - 1, j) * (f.tt(m + i) * f.tt(q + j));
    }
    for i in 0..q {
        let j = q - 1 - i;
        rhs -= bin(m + i - 1, i) * bin(p + j - 1, j) * (f.z(m + i) * f.tt(p + j));
    }
    (collect(lhs), rhs)
}

pub(crate) fn t_composition(_f: &F, a: &Params) -> Built {
    let q = a.i("q");
    let ps: Vec<i64> = ["p1", "p2", "p3"].iter().filter_map(|n| a.get_i(n)).collect();
    let pl: Vec<u32> = ps.iter().map(|&x| x as u32).collect();
    let rhs = tsum_as_tvalues(&pl, q as u32).expect("composition of a convergent T-sum");
    (vec![l(1, t_s(&ps, q))], E(rhs))
}
