//! Worked numeric evaluations, kept apart from the general formulas so a slip
//! in one cannot hide behind the other.

use rug::Rational;

use super::expr::*;
use super::formulas::Built;
use super::{Convention, Descriptor, EntryKind, ParamSpec};
use crate::algebra::Atom;
use crate::series::SumRef;

fn ex(id: &'static str, summary: &'static str, build: super::Builder) -> Descriptor {
    Descriptor {
        id,
        kind: EntryKind::Example,
        summary,
        params: Vec::new(),
        domain: "fixed instance",
        convention: Convention::None,
        zeta0: false,
        anchor: "",
        bound: Vec::new(),
        gate: |_| Ok(()),
        build,
    }
}

fn bound(mut d: Descriptor, vals: &[(&'static str, i64)]) -> Descriptor {
    d.params = vals.iter().map(|&(name, min)| ParamSpec { name, min, optional: false, choices: None }).collect();
    d.bound = vals.to_vec();
    d
}

fn c(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn one(s: impl Into<SumRef>) -> (Rational, SumRef) {
    (Rational::from(1), s.into())
}

fn k(n: i64, d: i64, s: impl Into<SumRef>) -> (Rational, SumRef) {
    (c(n, d), s.into())
}

fn t2(a: i64, b: i64) -> SumRef {
    tv_m(&[a, b], &[false, false])
}

fn pz(f: &F, pi_pow: u32, z: i64) -> E {
    f.pi().pow(pi_pow) * f.z(z)
}

pub(super) fn entries() -> Vec<Descriptor> {
    vec![
        ex("ex-T12", "T_{1,2}", |f, _| -> Built {
            (vec![one(t_s(&[1], 2))], c(-7, 2) * f.z(3) + f.pi().pow(2) * f.log2())
        }),
        ex("ex-T23", "T_{2,3}", |f, _| {
            (vec![one(t_s(&[2], 3))], c(-31, 2) * f.z(5) + c(3, 2) * pz(f, 2, 3))
        }),
        ex("ex-T32", "T_{3,2}", |f, _| (vec![one(t_s(&[3], 2))], c(-31, 2) * f.z(5) + 2 * pz(f, 2, 3))),
        ex("ex-T14", "T_{1,4}", |f, _| {
            let rhs = c(-31, 2) * f.z(5) + c(1, 3) * (f.pi().pow(4) * f.log2()) - c(1, 2) * pz(f, 2, 3);
            (vec![one(t_s(&[1], 4))], rhs)
        }),
        bound(
            ex("quad-sum-example", "T_{1^2,2} + t(3,1)", |f, _| {
                (vec![one(t_s(&[1, 1], 2)), one(t2(3, 1))], 2 * (f.log2().pow(2) * f.pi().pow(2)))
            }),
            &[("q", 2)],
        ),
        ex("ex-T12-3", "2T_{12,3} + t(5,1) + t(4,2)", |f, _| {
            let rhs = c(-1, 24) * f.pi().pow(6) + 6 * (f.log2() * pz(f, 2, 3));
            (vec![k(2, 1, t_s(&[1, 2], 3)), one(t2(5, 1)), one(t2(4, 2))], rhs)
        }),
        ex("ex-T13-2", "2T_{13,2} + T_{1,5} + T_{3,3}", |f, _| {
            let rhs = 8 * (f.log2() * pz(f, 2, 3)) - c(7, 360) * f.pi().pow(6);
            (vec![k(2, 1, t_s(&[1, 3], 2)), one(t_s(&[1], 5)), one(t_s(&[3], 3))], rhs)
        }),
        ex("S-quad-example", "T_{2^2,2} + T_{2,4}", |f, _| {
            (vec![one(t_s(&[2, 2], 2)), one(t_s(&[2], 4))], c(7, 360) * f.pi().pow(6))
        }),
        ex("ex-T1cube-2", "T_{1^3,2} + 3/2 T_{1^2,3}", |f, _| {
            let rhs = c(5, 4) * pz(f, 2, 3) + 4 * (f.log2().pow(3) * f.pi().pow(2)) + c(31, 4) * f.z(5);
            (vec![one(t_s(&[1, 1, 1], 2)), k(3, 2, t_s(&[1, 1], 3))], rhs)
        }),
        ex("ex-Tbar11", "alternating Tbar_{1,1}", |f, _| {
            (vec![one(tbar_s(&[1], 1))], 2 * E::atom(Atom::Catalan) - c(1, 2) * (f.pi() * f.log2()))
        }),
        ex("ex-Tbar11-t", "t(1b,1)", |f, _| {
            (vec![one(tv_m(&[1, 1], &[true, false]))], 2 * E::atom(Atom::Catalan) - c(1, 2) * (f.pi() * f.log2()))
        }),
        ex("ex-Tbar22", "alternating Tbar_{2,2}", |f, _| {
            (vec![one(tbar_s(&[2], 2))], c(1, 2) * f.tt(4) - c(7, 4) * (f.pi() * f.z(3)))
        }),
        ex("ex-Tbar1sq-1", "alternating Tbar_{1^2,1} + t(2b,1)", |f, _| {
            let rhs = c(1, 12) * f.pi().pow(3) - c(1, 2) * (f.pi() * f.log2().pow(2));
            (vec![one(tbar_s(&[1, 1], 1)), one(tv_m(&[2, 1], &[true, false]))], rhs)
        }),
        ex("ex-Tbar1sq-3", "alternating Tbar_{1^2,3} + t(4b,1)", |f, _| {
            let rhs = c(17, 720) * f.pi().pow(5) + c(7, 2) * (f.pi() * f.log2() * f.z(3))
                - f.log2().pow(2) * f.pi().pow(3)
                - f.pi() * f.z2b(3, 1);
            (vec![one(tbar_s(&[1, 1], 3)), one(tv_m(&[4, 1], &[true, false]))], rhs)
        }),
        ex("ex-S1sq-2", "S_{1^2,2}", |f, _| (vec![one(s_s(&[1, 1], 2))], c(1, 8) * f.pi().pow(4))),
        ex("ex-S1sq-4", "S_{1^2,4}", |f, _| {
            (vec![one(s_s(&[1, 1], 4))], c(1, 24) * f.pi().pow(6) - c(49, 2) * f.z(3).pow(2))
        }),
        ex("ex-S1cube-2", "S_{1^3,2}", |f, _| (vec![one(s_s(&[1, 1, 1], 2))], c(7, 2) * pz(f, 2, 3))),
        ex("ex-S1cube-4", "S_{1^3,4}", |f, _| {
            (vec![one(s_s(&[1, 1, 1], 4))], c(-21, 8) * pz(f, 4, 3) + 31 * pz(f, 2, 5))
        }),
        ex("ex-S12-3", "S_{12,3}", |f, _| {
            (vec![one(s_s(&[1, 2], 3))], c(-1, 16) * f.pi().pow(6) + 49 * f.z(3).pow(2))
        }),
        ex("ex-S2sq-2-mixed", "S_{2^2,2} through t-values and an H-sum", |f, _| {
            let rhs = f.tt(2) * f.tt(4) - 2 * f.tt(3).pow(2)
                + 2 * (f.tt(2).pow(2) * f.z(2))
                + 2 * (f.tt(2) * f.ser(m_s(&[2], 2)));
            (vec![one(s_s(&[2, 2], 2))], rhs)
        }),
        ex("ex-S2sq-2", "S_{2^2,2}", |f, _| {
            let (pi, lg) = (f.pi(), f.log2());
            let rhs = 32 * (pi.pow(2) * E::atom(Atom::Li4Half)) - 98 * f.z(3).pow(2)
                + 28 * (pi.pow(2) * f.z(3) * lg.clone())
                - c(61, 360) * pi.pow(6)
                + c(4, 3) * (pi.pow(2) * lg.pow(4))
                - c(4, 3) * (pi.pow(4) * lg.pow(2));
            (vec![one(s_s(&[2, 2], 2))], rhs)
        }),
        ex("ex-M-duality-223", "3 M_{2,4} + 2 M_{3,3}", |f, _| {
            (vec![k(3, 1, m_s(&[2], 4)), k(2, 1, m_s(&[3], 3))], 112 * f.z(3).pow(2) - c(1, 6) * f.pi().pow(6))
        }),
        ex("ex-KT-duality-23", "3T(2,4) + 2T(3,3)", |f, _| {
            (vec![k(3, 1, kt_m(&[2, 4])), k(2, 1, kt_m(&[3, 3]))], c(1, 64) * f.pi().pow(6) - c(49, 8) * f.z(3).pow(2))
        }),
        ex("ex-ST-122", "S_{2,2} + 2S_{1,3} - T_{2,2}", |f, _| {
            (vec![one(s_s(&[2], 2)), k(2, 1, s_s(&[1], 3)), k(-1, 1, t_s(&[2], 2))], c(1, 12) * f.pi().pow(4))
        }),
        ex("ex-ST-222", "S_{2,3} + S_{3,2} + T_{2,3} + T_{3,2}", |f, _| {
            let lhs = vec![one(s_s(&[2], 3)), one(s_s(&[3], 2)), one(t_s(&[2], 3)), one(t_s(&[3], 2))];
            (lhs, 2 * (f.z(2) * f.tt(3)))
        }),
    ]
}

