//! Accelerated evaluation of nested sums
//!
//!   Σ_{n≥1} f(n) Π_i Q_i(n - lag_i),
//!
//! where f(n) = ε(n) (n+a)^{-k} and each Q_i is a prefix chain
//! Q(n) = Σ_{m₁≤n} f₁(m₁) Σ_{m₂ ◁ m₁} f₂(m₂) … with ◁ either < or ≤.
//! The direct partial sum runs to a cutoff N; every prefix is then continued
//! past N through an asymptotic expansion whose constant is fixed by its
//! exact value at N, and the outer tail follows from the same expansion.

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use super::expansion::Expansion;
use super::expansion::LogPoly;
use super::value::abs_f64;
use super::{NumericContext, NumericValue, NumericsError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub shift: Rational,
    pub exponent: u32,
    pub alternating: bool,
}

impl Term {
    pub fn new(shift: Rational, exponent: u32, alternating: bool) -> Self {
        Term { shift, exponent, alternating }
    }

    fn value(&self, n: u64, prec: u32) -> Float {
        let x = Float::with_val(prec, &self.shift + Rational::from(n));
        let mut v = Float::with_val(prec, x.pow(-(self.exponent as i32)));
        if self.alternating && n % 2 == 1 {
            v = -v;
        }
        v
    }

    fn expansion(&self, prec: u32, max_power: usize) -> Expansion {
        let p = LogPoly::inverse_power(prec, max_power, &self.shift, self.exponent);
        let z = LogPoly::zero(prec, max_power);
        if self.alternating {
            Expansion { smooth: z, oscillating: p }
        } else {
            Expansion { smooth: p, oscillating: z }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    pub term: Term,
    /// Relation to the next (inner) level: strict `<` if true, `≤` otherwise.
    pub strict_next: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub levels: Vec<Level>,
}

impl Chain {
    pub fn single(term: Term) -> Self {
        Chain { levels: vec![Level { term, strict_next: false }] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub chain: Chain,
    /// 0 evaluates the prefix at n, 1 at n-1.
    pub lag: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub outer: Term,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailMethod {
    Asymptotic,
    Richardson,
    /// The summand decays geometrically; no tail model is needed.
    Geometric,
}

/// Numeric result plus the provenance of the tail treatment.
#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: NumericValue,
    pub terms: u64,
    pub tail_order: u32,
    pub method: TailMethod,
}

impl Summand {
    fn weight(&self) -> u32 {
        self.outer.exponent
            + self
                .factors
                .iter()
                .flat_map(|f| f.chain.levels.iter())
                .map(|l| l.term.exponent)
                .sum::<u32>()
    }

    fn validate(&self) -> Result<(), NumericsError> {
        let check = |t: &Term| -> Result<(), NumericsError> {
            if t.exponent == 0 {
                return Err(NumericsError::Domain("zero exponent in summand".into()));
            }
            if t.shift <= -1 {
                return Err(NumericsError::Domain(format!("denominator shift {} ≤ -1", t.shift)));
            }
            Ok(())
        };
        check(&self.outer)?;
        for f in &self.factors {
            if f.lag > 1 || f.chain.levels.is_empty() {
                return Err(NumericsError::Domain("malformed prefix factor".into()));
            }
            for l in &f.chain.levels {
                check(&l.term)?;
            }
        }
        Ok(())
    }
}

/// Smallest cutoff for which the order-`t` asymptotic remainder falls below
/// 10^{-target_digits}.
fn cutoff_for(order: u32, target_digits: u32, max_terms: u64) -> u64 {
    let m = 2 * order as u64 + 2;
    let mut log_fact = 0.0f64;
    for i in 2..=m {
        log_fact += (i as f64).log10();
    }
    let log_n = (log_fact + target_digits as f64) / m as f64 - std::f64::consts::PI.log10();
    let n = 10f64.powf(log_n).ceil();
    let n = if n.is_finite() { n as u64 } else { u64::MAX };
    n.clamp(100, max_terms)
}

struct DirectState {
    /// Per factor, per level: prefix value at the current index.
    cur: Vec<Vec<Float>>,
    total: Float,
    magnitude: f64,
}

fn direct_sum(s: &Summand, prec: u32, n_max: u64) -> DirectState {
    let zero = Float::new(prec);
    let mut cur: Vec<Vec<Float>> =
        s.factors.iter().map(|f| vec![zero.clone(); f.chain.levels.len()]).collect();
    let mut prev = cur.clone();
    let mut total = Float::new(prec);
    let mut magnitude = 0.0f64;
    let mut prod = Float::new(prec);
    let mut tmp = Float::new(prec);
    for n in 1..=n_max {
        for (fi, f) in s.factors.iter().enumerate() {
            std::mem::swap(&mut cur[fi], &mut prev[fi]);
            let levels = &f.chain.levels;
            for l in (0..levels.len()).rev() {
                let fv = levels[l].term.value(n, prec);
                if l + 1 == levels.len() {
                    tmp.assign(&fv);
                } else if levels[l].strict_next {
                    tmp.assign(&fv * &prev[fi][l + 1]);
                } else {
                    tmp.assign(&fv * &cur[fi][l + 1]);
                }
                let (c, p) = (&mut cur[fi], &prev[fi]);
                c[l].assign(&p[l] + &tmp);
            }
        }
        prod.assign(s.outer.value(n, prec));
        for (fi, f) in s.factors.iter().enumerate() {
            if f.lag == 1 {
                prod *= &prev[fi][0];
            } else {
                prod *= &cur[fi][0];
            }
        }
        total += &prod;
        magnitude = magnitude.max(abs_f64(&total));
    }
    for c in &cur {
        for v in c {
            magnitude = magnitude.max(abs_f64(v));
        }
    }
    DirectState { cur, total, magnitude }
}

use rug::Assign;

/// Asymptotic continuation of the direct partial sum; returns the limit.
fn asymptotic_limit(
    s: &Summand,
    st: &DirectState,
    n: u64,
    prec: u32,
    order: u32,
    max_power: usize,
) -> Result<(Float, f64), NumericsError> {
    let x = Float::with_val(prec, n);
    let inv = Float::with_val(prec, x.recip_ref());
    let ln = Float::with_val(prec, x.ln_ref());
    let one = Expansion::one(prec, max_power);
    let mut factor_exps = Vec::with_capacity(s.factors.len());
    let mut abs_scale = 0.0f64;
    for (fi, f) in s.factors.iter().enumerate() {
        let levels = &f.chain.levels;
        let mut inner: Option<(Expansion, Expansion)> = None;
        for l in (0..levels.len()).rev() {
            let fl = levels[l].term.expansion(prec, max_power);
            let summand = match &inner {
                None => fl.mul(&one),
                Some((e, fe)) => {
                    if levels[l].strict_next {
                        fl.mul(&e.sub(fe))
                    } else {
                        fl.mul(e)
                    }
                }
            };
            let mut p = summand.indefinite_sum(order)?;
            abs_scale = abs_scale.max(p.eval_abs(&inv, &ln));
            let c = Float::with_val(prec, &st.cur[fi][l] - p.eval(n, &inv, &ln));
            p.add_constant(&c);
            inner = Some((p, summand));
        }
        let (e, fe) = inner.expect("non-empty chain");
        factor_exps.push(if f.lag == 1 { e.sub(&fe) } else { e });
    }
    let mut summand = s.outer.expansion(prec, max_power);
    for e in &factor_exps {
        summand = summand.mul(e);
    }
    let p = summand.indefinite_sum(order)?;
    if !p.is_decaying() {
        return Err(NumericsError::Divergent("partial sums grow without bound".into()));
    }
    abs_scale = abs_scale.max(p.eval_abs(&inv, &ln));
    let v = Float::with_val(prec, &st.total - p.eval(n, &inv, &ln));
    Ok((v, abs_scale))
}

pub fn sum(s: &Summand, ctx: &NumericContext) -> Result<SumResult, NumericsError> {
    let order = ctx.tail_order();
    if order == 0 {
        return richardson(s, ctx);
    }
    let n = cutoff_for(order, ctx.working_digits(), ctx.max_terms());
    sum_with_cutoff(s, ctx, n)
}

/// Same as [`sum`] with an explicit direct-summation cutoff.
pub fn sum_with_cutoff(s: &Summand, ctx: &NumericContext, n: u64) -> Result<SumResult, NumericsError> {
    s.validate()?;
    let order = ctx.tail_order();
    if order == 0 {
        return richardson(s, ctx);
    }
    let prec = ctx.precision() + 32;
    let st = direct_sum(s, prec, n);
    let base_power = (s.weight() + 2 * order + 4) as usize;
    let (v1, _) = asymptotic_limit(s, &st, n, prec, order, base_power)?;
    let (v2, scale) = asymptotic_limit(s, &st, n, prec, order + 1, base_power + 2)?;
    let truncation = 2.0 * abs_f64(&Float::with_val(prec, &v2 - &v1));
    let levels: u64 = s.factors.iter().map(|f| f.chain.levels.len() as u64).sum::<u64>() + 3;
    let eps = 2f64.powi(-(ctx.precision() as i32));
    let rounding = eps * ((n * levels) as f64 * st.magnitude.max(1.0) + 1e4 * scale.max(1.0));
    let bits = ctx.precision();
    let value = Float::with_val(bits, &v2);
    let err = truncation + rounding + super::value::ulp(&value);
    Ok(SumResult {
        value: NumericValue::new(value, err),
        terms: n,
        tail_order: order,
        method: TailMethod::Asymptotic,
    })
}

/// Fallback without an asymptotic model: Richardson extrapolation on N/2, N
/// for smooth summands, neighbour averaging for alternating ones.
fn richardson(s: &Summand, ctx: &NumericContext) -> Result<SumResult, NumericsError> {
    s.validate()?;
    let prec = ctx.precision() + 32;
    let n = ctx.max_terms();
    let half = direct_sum(s, prec, n / 2).total;
    let st = direct_sum(s, prec, n);
    let full = st.total;
    let w = s.outer.exponent as i32;
    let oscillating = s.outer.alternating;
    if !oscillating && w < 2 {
        return Err(NumericsError::Divergent("no tail model for slowly decaying summand".into()));
    }
    let (value, err) = if oscillating {
        let next = direct_sum(s, prec, n + 1).total;
        let avg = Float::with_val(prec, &full + &next) / 2u32;
        let d = abs_f64(&Float::with_val(prec, &next - &full));
        (avg, d)
    } else {
        let diff = Float::with_val(prec, &full - &half);
        let r = 2f64.powi(w - 1) - 1.0;
        let v = Float::with_val(prec, &full + Float::with_val(prec, &diff / r));
        (v, abs_f64(&diff))
    };
    let bits = ctx.precision();
    let value = Float::with_val(bits, &value);
    let eps = 2f64.powi(-(bits as i32));
    let err = err + eps * n as f64 * 8.0 * st.magnitude.max(1.0);
    Ok(SumResult { value: NumericValue::new(value, err), terms: n, tail_order: 0, method: TailMethod::Richardson })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn ctx() -> NumericContext {
        NumericContext::new(40, 1_000_000, 12).unwrap()
    }

    fn plain(a: Rational, k: u32) -> Term {
        Term::new(a, k, false)
    }

    #[test]
    fn zeta_two_and_three() {
        let c = ctx();
        let r = sum(&Summand { outer: plain(Rational::new(), 2), factors: vec![] }, &c).unwrap();
        let pi = Float::with_val(300, Constant::Pi);
        let z2 = Float::with_val(300, pi.square_ref()) / 6u32;
        let d = Float::with_val(300, r.value.value() - &z2).abs();
        assert!(d < 1e-45, "{d}");
        assert!(r.value.error_bound() < 1e-40);
        let r3 = sum(&Summand { outer: plain(Rational::new(), 3), factors: vec![] }, &c).unwrap();
        let z3 = Float::with_val(300, 3u32).zeta();
        let d = Float::with_val(300, r3.value.value() - &z3).abs();
        assert!(d < 1e-45, "{d}");
    }

    #[test]
    fn double_zeta_two_one_is_zeta_three() {
        // Σ_{n>m≥1} 1/(n² m) = ζ(3)
        let c = ctx();
        let s = Summand {
            outer: plain(Rational::new(), 2),
            factors: vec![Factor { chain: Chain::single(plain(Rational::new(), 1)), lag: 1 }],
        };
        let r = sum(&s, &c).unwrap();
        let z3 = Float::with_val(300, 3u32).zeta();
        let d = Float::with_val(300, r.value.value() - &z3).abs();
        assert!(d < 1e-42, "{d}");
    }

    #[test]
    fn alternating_log_two() {
        let c = ctx();
        let r = sum(&Summand { outer: Term::new(Rational::new(), 1, true), factors: vec![] }, &c).unwrap();
        let l2 = Float::with_val(300, Constant::Log2);
        let d = Float::with_val(300, r.value.value() + &l2).abs();
        assert!(d < 1e-45, "{d}");
    }

    #[test]
    fn harmonic_sum_rejected_when_divergent() {
        let c = ctx();
        let s = Summand {
            outer: plain(Rational::new(), 1),
            factors: vec![],
        };
        assert!(matches!(sum(&s, &c), Err(NumericsError::Divergent(_))));
    }

    #[test]
    fn richardson_fallback_widens() {
        let c = NumericContext::new(20, 20_000, 0).unwrap();
        let r = sum(&Summand { outer: plain(Rational::new(), 3), factors: vec![] }, &c).unwrap();
        assert_eq!(r.method, TailMethod::Richardson);
        let z3 = Float::with_val(300, 3u32).zeta();
        let d = Float::with_val(300, r.value.value() - &z3).abs().to_f64();
        assert!(d <= r.value.error_bound(), "{d} > {}", r.value.error_bound());
    }
}
