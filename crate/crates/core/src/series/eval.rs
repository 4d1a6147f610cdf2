use std::collections::HashMap;
use std::sync::Mutex;

use rug::{Integer, Rational};

use super::{MultipleFamily, MultipleSpec, SeriesError, SeriesSpec, SumRef};
use crate::algebra::{eval_numeric, AlgebraError, Atom, SymbolicValue};
use crate::numerics::summation::{self, Chain, Factor, Level, SumResult, Summand, Term};
use crate::numerics::{hurwitz_zeta, primitive_constant, NumericContext, NumericValue, Primitive};

fn series_summand(spec: &SeriesSpec) -> Summand {
    let outer = Term::new(spec.denom_shift().clone(), spec.exponent(), spec.alternating());
    let factors = spec
        .factors()
        .iter()
        .map(|f| Factor { chain: Chain::single(Term::new(f.kind.shift(), f.order, false)), lag: f.offset.lag() })
        .collect();
    Summand { outer, factors }
}

/// Nested sum over n₁ ◁ n₂ ◁ … as outer term plus one chain, with a rational prefactor.
fn nested_summand(terms: Vec<(Term, bool)>) -> Summand {
    // terms[j] carries whether n_j > n_{j+1} is strict
    let mut it = terms.into_iter();
    let (outer, strict0) = it.next().expect("non-empty");
    let rest: Vec<Level> = it.map(|(term, strict_next)| Level { term, strict_next }).collect();
    let factors = if rest.is_empty() {
        vec![]
    } else {
        vec![Factor { chain: Chain { levels: rest }, lag: if strict0 { 1 } else { 0 } }]
    };
    Summand { outer, factors }
}

fn multiple_summand(family: MultipleFamily, exps: &[u32], bars: &[bool]) -> (Summand, Rational) {
    match family {
        MultipleFamily::ZetaValue | MultipleFamily::TValue => {
            let shift = if family == MultipleFamily::TValue { Rational::from((-1, 2)) } else { Rational::new() };
            let terms = exps.iter().zip(bars).map(|(&e, &b)| (Term::new(shift.clone(), e, b), true)).collect();
            (nested_summand(terms), Rational::from(1))
        }
        MultipleFamily::KanekoTsumura => {
            // 2^r Σ_{n₁>…>n_r} Π (2n_j - d_j)^{-k_j}, d_j = r - j + 1. Writing
            // 2n_j - d_j = 2(m_j + a_j) with a_j ∈ {0, -1/2} makes the relation
            // between consecutive m's strict exactly when the inner d is even.
            let r = exps.len() as u32;
            let mut terms = Vec::new();
            for (j, &k) in exps.iter().enumerate() {
                let d = r - j as u32;
                let shift = if d.is_multiple_of(2) { Rational::new() } else { Rational::from((-1, 2)) };
                let strict = d >= 2 && (d - 1).is_multiple_of(2);
                terms.push((Term::new(shift, k, false), strict));
            }
            let w: u32 = exps.iter().sum();
            let pref = Rational::from((Integer::from(1) << r, Integer::from(1) << w));
            (nested_summand(terms), pref)
        }
    }
}

fn scaled(r: SumResult, c: &Rational) -> SumResult {
    SumResult { value: r.value.scale(c), ..r }
}

pub fn eval_series_detail(spec: &SeriesSpec, ctx: &NumericContext) -> Result<SumResult, SeriesError> {
    Ok(summation::sum(&series_summand(spec), ctx)?)
}

pub fn eval_series(spec: &SeriesSpec, ctx: &NumericContext) -> Result<NumericValue, SeriesError> {
    Ok(eval_series_detail(spec, ctx)?.value)
}

pub fn eval_series_with_cutoff(spec: &SeriesSpec, ctx: &NumericContext, n: u64) -> Result<SumResult, SeriesError> {
    Ok(summation::sum_with_cutoff(&series_summand(spec), ctx, n)?)
}

pub fn eval_multiple_detail(spec: &MultipleSpec, ctx: &NumericContext) -> Result<SumResult, SeriesError> {
    let (s, c) = multiple_summand(spec.family(), spec.exponents(), spec.bars());
    Ok(scaled(summation::sum(&s, ctx)?, &c))
}

pub fn eval_multiple(spec: &MultipleSpec, ctx: &NumericContext) -> Result<NumericValue, SeriesError> {
    Ok(eval_multiple_detail(spec, ctx)?.value)
}

fn plain_depth(family: MultipleFamily, exps: Vec<u32>, bars: Vec<bool>, ctx: &NumericContext) -> Result<NumericValue, SeriesError> {
    let spec = MultipleSpec::with_depth_limit(family, exps, bars, 8)?;
    eval_multiple(&spec, ctx)
}

/// Resolves atoms and sums from their defining series, with a shared cache.
pub struct Evaluator {
    ctx: NumericContext,
    atoms: Mutex<HashMap<Atom, NumericValue>>,
    sums: Mutex<HashMap<SumRef, SumResult>>,
}

impl Evaluator {
    pub fn new(ctx: NumericContext) -> Self {
        Evaluator { ctx, atoms: Mutex::new(HashMap::new()), sums: Mutex::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &NumericContext {
        &self.ctx
    }

    pub fn sum(&self, r: &SumRef) -> Result<SumResult, SeriesError> {
        if let Some(v) = self.sums.lock().unwrap().get(r) {
            return Ok(v.clone());
        }
        let v = match r {
            SumRef::Series(s) => eval_series_detail(s, &self.ctx)?,
            SumRef::Multiple(m) => eval_multiple_detail(m, &self.ctx)?,
        };
        self.sums.lock().unwrap().insert(r.clone(), v.clone());
        Ok(v)
    }

    pub fn atom(&self, a: &Atom) -> Result<NumericValue, SeriesError> {
        if let Some(v) = self.atoms.lock().unwrap().get(a) {
            return Ok(v.clone());
        }
        a.validate().map_err(|e| SeriesError::Invalid(e.to_string()))?;
        let v = self.atom_uncached(a)?;
        self.atoms.lock().unwrap().insert(a.clone(), v.clone());
        Ok(v)
    }

    fn atom_uncached(&self, a: &Atom) -> Result<NumericValue, SeriesError> {
        use MultipleFamily::*;
        let ctx = &self.ctx;
        let z = |exps: Vec<u32>, bars: Vec<bool>, fam| plain_depth(fam, exps, bars, ctx);
        Ok(match a {
            Atom::Pi => primitive_constant(Primitive::Pi, ctx)?,
            Atom::Log2 => primitive_constant(Primitive::Log2, ctx)?,
            Atom::Catalan => primitive_constant(Primitive::Catalan, ctx)?,
            Atom::Li4Half => primitive_constant(Primitive::Li4Half, ctx)?,
            Atom::Zeta(k) => z(vec![*k], vec![false], ZetaValue)?,
            Atom::ZetaBar(k) => z(vec![*k], vec![true], ZetaValue)?,
            Atom::TildeT(k) => z(vec![*k], vec![false], TValue)?,
            Atom::BarT(k) => -z(vec![*k], vec![true], TValue)?,
            Atom::Beta(k) => {
                let pref = Rational::from((Integer::from(1), Integer::from(1) << *k));
                (-z(vec![*k], vec![true], TValue)?).scale(&pref)
            }
            Atom::DoubleZeta(a, b) => z(vec![*a, *b], vec![false, false], ZetaValue)?,
            Atom::DoubleZetaBar(a, b) => z(vec![*a, *b], vec![true, false], ZetaValue)?,
            Atom::DoubleTildeT(a, b) => z(vec![*a, *b], vec![false, false], TValue)?,
            Atom::DoubleTildeTBar(a, b) => z(vec![*a, *b], vec![true, false], TValue)?,
            Atom::MultiTildeT(v) => z(v.clone(), vec![false; v.len()], TValue)?,
            Atom::KTT(v) => z(v.clone(), vec![false; v.len()], KanekoTsumura)?,
            Atom::EulerS(k, q) => {
                let s = super::make_series_spec(super::Family::EulerS, &[*k], *q, None)?;
                self.sum(&SumRef::Series(s))?.value
            }
            Atom::MixedM(k, q) => {
                let s = super::make_series_spec(super::Family::M, &[*k], *q, None)?;
                self.sum(&SumRef::Series(s))?.value
            }
            Atom::Hurwitz(s, a) => hurwitz_zeta(*s, a, ctx)?,
            Atom::Series(s) => self.sum(&SumRef::Series(s.clone()))?.value,
        })
    }

    pub fn value(&self, v: &SymbolicValue) -> Result<NumericValue, AlgebraError> {
        eval_numeric(v, &|a: &Atom| self.atom(a), &self.ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{make_series_spec, Family};
    use rug::float::Constant;
    use rug::Float;

    fn ctx() -> NumericContext {
        NumericContext::default()
    }

    fn close(v: &NumericValue, x: &Float, tol: f64) {
        let d = Float::with_val(400, v.value() - x).abs().to_f64();
        assert!(d < tol, "|{} - {}| = {d:e}", v.to_decimal(30), x.to_string_radix(10, Some(30)));
    }

    fn pi(p: u32) -> Float {
        Float::with_val(400, Constant::Pi).pow(p)
    }

    use rug::ops::Pow;

    #[test]
    fn t_one_two_value() {
        // -(7/2)ζ(3) + π² log 2
        let s = make_series_spec(Family::T, &[1], 2, None).unwrap();
        let v = eval_series(&s, &ctx()).unwrap();
        let z3 = Float::with_val(400, 3u32).zeta();
        let l2 = Float::with_val(400, Constant::Log2);
        let expect = Float::with_val(400, &pi(2) * &l2) - Float::with_val(400, &z3 * 7u32) / 2u32;
        close(&v, &expect, 1e-38);
        assert!(v.error_bound() < 1e-38);
    }

    #[test]
    fn s_one_one_two_value() {
        let s = make_series_spec(Family::S, &[1, 1], 2, None).unwrap();
        close(&eval_series(&s, &ctx()).unwrap(), &(pi(4) / 8u32), 1e-38);
    }

    #[test]
    fn tbar_one_one_value() {
        let s = make_series_spec(Family::Tbar, &[1], 1, None).unwrap();
        let g = Float::with_val(400, Constant::Catalan);
        let l2 = Float::with_val(400, Constant::Log2);
        let expect = Float::with_val(400, &g * 2u32) - Float::with_val(400, &pi(1) * &l2) / 2u32;
        close(&eval_series(&s, &ctx()).unwrap(), &expect, 1e-38);
    }

    #[test]
    fn multiple_values() {
        let c = ctx();
        let t2 = MultipleSpec::plain(MultipleFamily::TValue, vec![2]).unwrap();
        close(&eval_multiple(&t2, &c).unwrap(), &(pi(2) / 2u32), 1e-38);
        let z21 = MultipleSpec::plain(MultipleFamily::ZetaValue, vec![2, 1]).unwrap();
        close(&eval_multiple(&z21, &c).unwrap(), &Float::with_val(400, 3u32).zeta(), 1e-38);
        // KT T(2,2) = S_{2,2}/4 with S_{2,2} = Σ h_n^{(2)}/n²
        let kt = MultipleSpec::plain(MultipleFamily::KanekoTsumura, vec![2, 2]).unwrap();
        let s22 = make_series_spec(Family::S, &[2], 2, None).unwrap();
        let a = eval_multiple(&kt, &c).unwrap();
        let b = eval_series(&s22, &c).unwrap().scale(&Rational::from((1, 4)));
        assert!(a.abs_diff(&b).to_f64() < 1e-38);
    }

    #[test]
    fn kt_low_depth_brute_force() {
        // T(3,2) = 4 Σ_{n>m≥1} 1/((2n-2)^3 (2m-1)^2); compare against a direct double loop
        let c = NumericContext::new(20, 1000, 12).unwrap();
        let kt = eval_multiple(&MultipleSpec::plain(MultipleFamily::KanekoTsumura, vec![3, 2]).unwrap(), &c).unwrap();
        let mut acc = 0.0f64;
        let mut inner = 0.0f64;
        for n in 2..200_000u64 {
            inner += 1.0 / ((2 * (n - 1) - 1) as f64).powi(2);
            acc += inner / ((2 * n - 2) as f64).powi(3);
        }
        assert!((kt.to_f64() - 4.0 * acc).abs() < 1e-9, "{} vs {}", kt.to_f64(), 4.0 * acc);
    }

    #[test]
    fn evaluator_caches_and_resolves() {
        let e = Evaluator::new(ctx());
        let v = SymbolicValue::atom(Atom::BarT(2));
        let a = e.value(&v).unwrap();
        close(&a, &(Float::with_val(400, Constant::Catalan) * 4u32), 1e-38);
        let b = e.value(&v).unwrap();
        assert_eq!(a.value(), b.value());
    }
}
