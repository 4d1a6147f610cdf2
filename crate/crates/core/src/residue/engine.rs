use std::collections::{BTreeMap, BTreeSet};

use rug::Rational;

use super::coeff::{CoeffPoly, GenKey, SeqSym};
use super::expand::{expand_base, expand_psi, expand_trig};
use super::kernel::{KernelSpec, PoleFamily};
use super::laurent::LaurentSeries;
use super::{Relation, ResidueError};
use crate::algebra::{normalize, Atom, SymbolicValue};
use crate::series::{Offset, SeqFactor, SeriesSpec};

/// Residue of a kernel at one pole family.
#[derive(Clone, Debug, PartialEq)]
pub enum Contribution {
    /// Function of the generic index n.
    Generic { family: PoleFamily, residue: CoeffPoly },
    Fixed { family: PoleFamily, residue: SymbolicValue },
}

/// What a monomial of a generic residue sums to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumTerm {
    Series(SeriesSpec),
    /// A convergent sum without harmonic factors, already closed.
    Value(SymbolicValue),
    /// Σ 1/(n + a): divergent alone, paired across families.
    Harmonic(Rational),
}

fn leading_order(kernel: &KernelSpec, fam: &PoleFamily) -> Result<Vec<i32>, ResidueError> {
    // expand to order -1 only to read off the nominal leading orders
    let mut out = Vec::new();
    if let Some(t) = kernel.trig() {
        out.push(expand_trig(t, fam, -2)?.min_order);
    }
    for f in kernel.psi() {
        out.push(expand_psi(f.arg, f.order - 1, fam, -2)?.min_order);
    }
    out.push(expand_base(kernel.base_shift(), kernel.exponent(), fam, -2)?.min_order);
    Ok(out)
}

pub fn residue_contribution(kernel: &KernelSpec, family: &PoleFamily) -> Result<Contribution, ResidueError> {
    let mins = leading_order(kernel, family)?;
    let total: i32 = mins.iter().sum();
    let residue = if total >= 0 {
        CoeffPoly::zero()
    } else {
        let need = |m: i32| -1 - (total - m);
        let mut i = 0;
        let mut factors: Vec<LaurentSeries> = Vec::new();
        if let Some(t) = kernel.trig() {
            factors.push(expand_trig(t, family, need(mins[i]))?);
            i += 1;
        }
        for f in kernel.psi() {
            factors.push(expand_psi(f.arg, f.order - 1, family, need(mins[i]))?);
            i += 1;
        }
        factors.push(expand_base(kernel.base_shift(), kernel.exponent(), family, need(mins[i]))?);
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = acc.mul(f);
        }
        acc.residue()?
    };
    Ok(match family {
        PoleFamily::Generic { .. } => Contribution::Generic { family: family.clone(), residue },
        PoleFamily::Fixed(_) => Contribution::Fixed {
            family: family.clone(),
            residue: residue
                .as_constant()
                .ok_or_else(|| ResidueError::Unsupported(format!("symbolic residue at fixed point {family}")))?,
        },
    })
}

fn canonical_offset(a: &Rational) -> Result<i64, ResidueError> {
    if *a == 0 {
        Ok(0)
    } else if *a == Rational::from((-1, 2)) {
        Ok(-1)
    } else {
        Err(ResidueError::Unsupported(format!("denominator shift {a}")))
    }
}

/// X_{n+o} rewritten at the canonical offset t.
fn rewrite_symbol(s: &SeqSym, t: i64) -> CoeffPoly {
    let one = SymbolicValue::one();
    let mut out = CoeffPoly::term(GenKey::seq(SeqSym { offset: t, ..*s }), one.clone());
    let c = s.kind.shift();
    let (lo, hi, sgn) = if s.offset > t { (t + 1, s.offset, 1) } else { (s.offset + 1, t, -1) };
    for i in lo..=hi {
        let a = Rational::from(i) + &c;
        out.add_term(GenKey::inv(a, s.order), SymbolicValue::int(sgn));
    }
    out
}

fn canonicalize(p: &CoeffPoly, t: i64) -> CoeffPoly {
    let mut out = CoeffPoly::zero();
    for (k, v) in p.terms() {
        let mut acc = CoeffPoly::term(GenKey { seq: BTreeMap::new(), ..k.clone() }, v.clone());
        for (s, e) in &k.seq {
            let r = if s.offset == t {
                CoeffPoly::term(GenKey::seq(*s), SymbolicValue::one())
            } else {
                rewrite_symbol(s, t)
            };
            acc = acc.mul(&r.pow(*e));
        }
        out = out.add(&acc);
    }
    out
}

/// Sum a generic residue over n ≥ 1, with denominators (n + shift).
pub fn sum_generic(residue: &CoeffPoly, shift: &Rational) -> Result<Vec<(SymbolicValue, SumTerm)>, ResidueError> {
    let t = canonical_offset(shift)?;
    let canon = canonicalize(residue, t);
    let offset = if t == 0 { Offset::AtN } else { Offset::AtNMinus1 };
    let mut out = Vec::new();
    for (k, v) in canon.terms() {
        let bad = || ResidueError::Unmapped(format!("{k}"));
        if k.inv.len() != 1 {
            return Err(bad());
        }
        let (a, &q) = k.inv.iter().next().unwrap();
        if a != shift {
            return Err(bad());
        }
        let term = if k.seq.is_empty() {
            let half = *a != 0;
            match (half, k.sign) {
                (_, false) if q == 1 => SumTerm::Harmonic(a.clone()),
                (false, false) => SumTerm::Value(SymbolicValue::atom(Atom::Zeta(q))),
                (false, true) => SumTerm::Value(SymbolicValue::atom(Atom::ZetaBar(q))),
                (true, false) => SumTerm::Value(SymbolicValue::atom(Atom::TildeT(q))),
                (true, true) => SumTerm::Value(-&SymbolicValue::atom(Atom::BarT(q))),
            }
        } else {
            let mut factors = Vec::new();
            for (s, e) in &k.seq {
                for _ in 0..*e {
                    factors.push(SeqFactor::new(s.kind, offset, s.order));
                }
            }
            let spec = SeriesSpec::new(factors, a.clone(), q, k.sign).map_err(|e| ResidueError::Unmapped(format!("{k}: {e}")))?;
            SumTerm::Series(spec)
        };
        out.push((v.clone(), term));
    }
    Ok(out)
}

fn family_shift(kernel: &KernelSpec, fam: &PoleFamily) -> Rational {
    match fam {
        PoleFamily::Generic { sigma, tau } => Rational::from(tau + kernel.base_shift()) * i32::from(*sigma),
        PoleFamily::Fixed(x) => x.clone(),
    }
}

/// Σ of all residues = 0.
pub fn derive_relation(kernel: &KernelSpec) -> Result<Relation, ResidueError> {
    let mut terms: BTreeMap<SeriesSpec, SymbolicValue> = BTreeMap::new();
    let mut mentioned = BTreeSet::new();
    let mut constant = SymbolicValue::zero();
    let mut harmonic: BTreeMap<Rational, SymbolicValue> = BTreeMap::new();
    for fam in kernel.pole_families() {
        match residue_contribution(kernel, &fam)? {
            Contribution::Fixed { residue, .. } => constant = &constant + &residue,
            Contribution::Generic { residue, .. } => {
                for (c, term) in sum_generic(&residue, &family_shift(kernel, &fam))? {
                    match term {
                        SumTerm::Series(s) => {
                            mentioned.insert(s.clone());
                            let slot = terms.entry(s).or_default();
                            *slot = &*slot + &c;
                        }
                        SumTerm::Value(v) => constant = &constant + &(&c * &v),
                        SumTerm::Harmonic(a) => {
                            let slot = harmonic.entry(a).or_default();
                            *slot = &*slot + &c;
                        }
                    }
                }
            }
        }
    }
    // pair Σ1/(n-1/2) with Σ1/n: Σ (1/(n-1/2) - 1/n) = 2 log 2
    let total = harmonic.values().fold(SymbolicValue::zero(), |acc, v| &acc + v);
    if !normalize(&total).is_zero() {
        return Err(ResidueError::Divergent(format!("unpaired harmonic terms: {total}")));
    }
    if let Some(c) = harmonic.get(&Rational::from((-1, 2))) {
        constant = &constant + &(c * &SymbolicValue::atom(Atom::Log2).scale(&Rational::from(2)));
    }
    Ok(Relation::from_parts(terms, constant, mentioned))
}

/// c · target = remainder, read off a relation.
pub fn solve_for(rel: &Relation, target: &SeriesSpec) -> Result<(Rational, Relation), ResidueError> {
    if !rel.mentions(target) {
        return Err(ResidueError::TargetAbsent(target.to_string()));
    }
    let coef = rel.coefficient(target);
    let c = coef
        .as_rational()
        .ok_or_else(|| ResidueError::Unsupported(format!("non-rational coefficient {coef} on {target}")))?;
    let mut rest = rel.clone();
    rest.remove(target);
    Ok((-c, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::canonical_eq;
    use crate::numerics::NumericContext;
    use crate::residue::{PsiArg, PsiFactor, Trig};
    use crate::series::{make_series_spec, Evaluator, Family, HarmonicKind};

    fn psi(order: u32) -> PsiFactor {
        PsiFactor { arg: PsiArg::HalfMinusS, order }
    }

    fn kernel(trig: Option<Trig>, ps: &[u32], c: Rational, q: u32) -> KernelSpec {
        KernelSpec::new(trig, ps.iter().map(|&p| psi(p)).collect(), c, q).unwrap()
    }

    fn zero_check(k: &KernelSpec) -> f64 {
        let rel = derive_relation(k).unwrap();
        assert!(rel.is_homogeneous(), "{rel}");
        let ev = Evaluator::new(NumericContext::new(30, 1_000_000, 12).unwrap());
        let v = ev.value(&rel.to_symbolic()).unwrap();
        v.to_f64().abs()
    }

    #[test]
    fn psi_at_integer_matches_display() {
        let s = expand_psi(PsiArg::HalfMinusS, 0, &PoleFamily::generic_integer(), 3).unwrap();
        assert_eq!(s.min_order, -1);
        assert_eq!(s.residue().unwrap(), CoeffPoly::rational(Rational::from(1)));
        let h = SeqSym { kind: HarmonicKind::Integer, offset: 0, order: 1 };
        let mut want = CoeffPoly::term(GenKey::seq(h), SymbolicValue::one());
        want.add_term(GenKey::one(), SymbolicValue::atom(Atom::Log2).scale(&Rational::from(2)));
        assert_eq!(s.coefficient(0).unwrap(), want);
        // (-1)^1 H_n^(2) - ζ(2)
        let h2 = SeqSym { order: 2, ..h };
        let mut c1 = CoeffPoly::term(GenKey::seq(h2), SymbolicValue::int(-1));
        c1.add_term(GenKey::one(), SymbolicValue::atom(Atom::Zeta(2)).scale(&Rational::from(-1)));
        assert_eq!(s.coefficient(1).unwrap(), c1);
    }

    #[test]
    fn psi_derivative_at_half() {
        // (-1)^p (t̃(p) + (-1)^p h_n^(p)) at order 0, p = 3
        let s = expand_psi(PsiArg::HalfMinusS, 2, &PoleFamily::generic_half(), 2).unwrap();
        assert_eq!(s.min_order, 0);
        let h = SeqSym { kind: HarmonicKind::Odd, offset: 0, order: 3 };
        let mut want = CoeffPoly::term(GenKey::seq(h), SymbolicValue::one());
        want.add_term(GenKey::one(), SymbolicValue::atom(Atom::TildeT(3)).scale(&Rational::from(-1)));
        assert_eq!(s.coefficient(0).unwrap(), want);
    }

    #[test]
    fn psi_at_fixed_half_point() {
        let s = expand_psi(PsiArg::HalfMinusS, 0, &PoleFamily::Fixed(Rational::from((-1, 2))), 4).unwrap();
        assert_eq!(s.min_order, 0);
        assert!(s.coefficient(0).unwrap().is_zero());
    }

    #[test]
    fn trig_tables() {
        let t = expand_trig(Trig::Tan, &PoleFamily::generic_half(), 4).unwrap();
        assert_eq!(t.residue().unwrap(), CoeffPoly::rational(Rational::from(-1)));
        let t = expand_trig(Trig::Tan, &PoleFamily::generic_integer(), 3).unwrap();
        let c = t.coefficient(1).unwrap().as_constant().unwrap();
        assert!(canonical_eq(&c, &SymbolicValue::atom_pow(Atom::Pi, 2)));
        let s = expand_trig(Trig::Sec, &PoleFamily::generic_integer(), 2).unwrap();
        let c0 = s.coefficient(0).unwrap();
        let (k, v) = c0.terms().next().unwrap();
        assert_eq!(*k, GenKey::sign());
        assert!(canonical_eq(v, &SymbolicValue::atom(Atom::Pi)));
    }

    #[test]
    fn half_residue_of_linear_kernel() {
        for p in 1..=3u32 {
            let k = kernel(Some(Trig::Tan), &[p], Rational::new(), 3);
            let Contribution::Generic { residue, .. } = residue_contribution(&k, &PoleFamily::generic_half()).unwrap()
            else {
                panic!()
            };
            let sgn = if p % 2 == 0 { 1 } else { -1 };
            let inv = GenKey::inv(Rational::from((-1, 2)), 3);
            let h = SeqSym { kind: HarmonicKind::Odd, offset: 0, order: p };
            let mut want = CoeffPoly::term(inv.mul(&GenKey::seq(h)), SymbolicValue::int(-1));
            // t̃(1) := 0
            if p > 1 {
                want.add_term(inv, SymbolicValue::atom(Atom::TildeT(p)).scale(&Rational::from(-sgn)));
            }
            assert_eq!(residue, want, "p={p}");
        }
    }

    #[test]
    fn integer_residue_of_square_kernel() {
        let k = kernel(Some(Trig::Tan), &[1, 1], Rational::new(), 4);
        let Contribution::Generic { residue, .. } = residue_contribution(&k, &PoleFamily::generic_integer()).unwrap()
        else {
            panic!()
        };
        let terms: Vec<_> = residue.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(*terms[0].0, GenKey::inv(Rational::new(), 4));
        assert!(canonical_eq(terms[0].1, &SymbolicValue::atom_pow(Atom::Pi, 2)));
    }

    #[test]
    fn generic_sum_rewrites_odd_harmonics() {
        let inv = GenKey::inv(Rational::from((-1, 2)), 3);
        let h = SeqSym { kind: HarmonicKind::Odd, offset: 0, order: 2 };
        let poly = CoeffPoly::term(inv.mul(&GenKey::seq(h)), SymbolicValue::int(-1));
        let out = sum_generic(&poly, &Rational::from((-1, 2))).unwrap();
        let t23 = make_series_spec(Family::T, &[2], 3, None).unwrap();
        assert!(out.contains(&(SymbolicValue::int(-1), SumTerm::Series(t23))));
        assert!(out.contains(&(SymbolicValue::int(-1), SumTerm::Value(SymbolicValue::atom(Atom::TildeT(5))))));
    }

    #[test]
    fn mixed_shift_is_unmapped() {
        let inv = GenKey::inv(Rational::from((-1, 2)), 3);
        let h = SeqSym { kind: HarmonicKind::Integer, offset: 0, order: 2 };
        let poly = CoeffPoly::term(inv.mul(&GenKey::seq(h)), SymbolicValue::one());
        assert!(matches!(sum_generic(&poly, &Rational::from((-1, 2))), Err(ResidueError::Unmapped(_))));
    }

    #[test]
    fn linear_relation_isolates_target() {
        let k = kernel(Some(Trig::Tan), &[1], Rational::new(), 4);
        let rel = derive_relation(&k).unwrap();
        let t14 = make_series_spec(Family::T, &[1], 4, None).unwrap();
        let (c, _) = solve_for(&rel, &t14).unwrap();
        assert_eq!(c.clone().abs(), 2);
        let k = kernel(Some(Trig::Tan), &[2], Rational::new(), 2);
        let rel = derive_relation(&k).unwrap();
        let t22 = make_series_spec(Family::T, &[2], 2, None).unwrap();
        let (c, _) = solve_for(&rel, &t22).unwrap();
        assert_eq!(c, 0);
        let t33 = make_series_spec(Family::T, &[3], 3, None).unwrap();
        assert!(matches!(solve_for(&rel, &t33), Err(ResidueError::TargetAbsent(_))));
    }

    #[test]
    fn relations_vanish_numerically() {
        let half = Rational::from((1, 2));
        let kernels = vec![
            kernel(Some(Trig::Tan), &[1], Rational::new(), 2),
            kernel(Some(Trig::Tan), &[2], Rational::new(), 3),
            kernel(Some(Trig::Tan), &[1, 1], Rational::new(), 2),
            kernel(Some(Trig::Tan), &[1, 2], Rational::new(), 3),
            kernel(Some(Trig::Sec), &[1], Rational::new(), 2),
            kernel(Some(Trig::Sec), &[2], Rational::new(), 2),
            kernel(Some(Trig::Tan), &[1], half.clone(), 3),
            kernel(Some(Trig::Tan), &[1, 1], half, 2),
        ];
        for k in &kernels {
            let r = zero_check(k);
            assert!(r < 1e-25, "{k}: residual {r}");
        }
    }

    #[test]
    fn trigless_relation_vanishes() {
        let k = KernelSpec::new(
            None,
            vec![psi(2), PsiFactor { arg: PsiArg::MinusS, order: 2 }],
            Rational::from(1),
            2,
        )
        .unwrap();
        let r = zero_check(&k);
        assert!(r < 1e-25, "residual {r}");
    }
}
