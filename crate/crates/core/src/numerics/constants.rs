use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use super::summation::{sum, Summand, Term};
use super::{bernoulli, euler_number, factorial, NumericContext, NumericValue, NumericsError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Primitive {
    Pi,
    Log2,
    Catalan,
    Li4Half,
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// ζ(2m) = (-1)^{m+1} B_{2m} (2π)^{2m} / (2 (2m)!) as a rational multiple of π^{2m}.
pub fn zeta_even_exact(k: u32) -> Result<Rational, NumericsError> {
    if k < 2 || k % 2 == 1 {
        return Err(NumericsError::Domain(format!("zeta_even_exact: k = {k}")));
    }
    let sign = if (k / 2) % 2 == 1 { 1 } else { -1 };
    let two_pow = Integer::from(1) << k;
    let r = bernoulli(k) * Rational::from(two_pow) / Rational::from(factorial(k) * 2u32);
    Ok(r * sign)
}

pub fn zeta_int(k: u32, ctx: &NumericContext) -> Result<NumericValue, NumericsError> {
    if k < 2 {
        return Err(NumericsError::Domain(format!("zeta_int: k = {k} < 2")));
    }
    if k.is_multiple_of(2) {
        let prec = ctx.precision();
        let c = zeta_even_exact(k)?;
        let v = Float::with_val(prec, pi(prec + 16).pow(k)) * Float::with_val(prec, &c);
        return Ok(NumericValue::rounded(v).widen(0.0).widen(4.0 * super::value::ulp(&pi(prec)) * k as f64));
    }
    zeta_series(k, ctx)
}

/// ζ(k) by direct summation with an asymptotic tail, any k ≥ 2.
pub fn zeta_series(k: u32, ctx: &NumericContext) -> Result<NumericValue, NumericsError> {
    if k < 2 {
        return Err(NumericsError::Domain(format!("zeta_series: k = {k} < 2")));
    }
    let s = Summand { outer: Term::new(Rational::new(), k, false), factors: vec![] };
    Ok(sum(&s, ctx)?.value)
}

pub fn dirichlet_beta(k: u32, ctx: &NumericContext) -> Result<NumericValue, NumericsError> {
    if k < 1 {
        return Err(NumericsError::Domain("dirichlet_beta: k = 0".into()));
    }
    let prec = ctx.precision();
    if k % 2 == 1 {
        // β(2m+1) = (-1)^m E_{2m} π^{2m+1} / (4^{m+1} (2m)!)
        let m = (k - 1) / 2;
        let e = euler_number(2 * m)?;
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        let den = (Integer::from(1) << (2 * (m + 1))) * factorial(2 * m);
        let c = Rational::from((e * sign, den));
        let v = Float::with_val(prec, pi(prec + 16).pow(k)) * Float::with_val(prec, &c);
        return Ok(NumericValue::rounded(v).widen(4.0 * super::value::ulp(&pi(prec)) * k as f64));
    }
    // β(k) = -2^{-k} Σ_{n≥1} (-1)^n (n - 1/2)^{-k}
    let s = Summand { outer: Term::new(Rational::from((-1, 2)), k, true), factors: vec![] };
    let r = sum(&s, ctx)?.value;
    Ok(-r.scale(&Rational::from((Integer::from(1), Integer::from(1) << k))))
}

pub fn hurwitz_zeta(s: u32, a: &Rational, ctx: &NumericContext) -> Result<NumericValue, NumericsError> {
    if s < 2 {
        return Err(NumericsError::Domain(format!("hurwitz_zeta: s = {s} < 2")));
    }
    if *a <= -1 {
        return Err(NumericsError::Domain(format!("hurwitz_zeta: a = {a} hits a pole")));
    }
    let sm = Summand { outer: Term::new(a.clone(), s, false), factors: vec![] };
    Ok(sum(&sm, ctx)?.value)
}

fn log2_series(ctx: &NumericContext) -> NumericValue {
    // ln 2 = 2 atanh(1/3) = 2 Σ_{k≥0} 3^{-(2k+1)} / (2k+1)
    let prec = ctx.precision() + 16;
    let terms = (ctx.working_digits() as f64 / 9f64.log10()).ceil() as u32 + 2;
    let ninth = Float::with_val(prec, 9u32).recip();
    let mut pw = Float::with_val(prec, 3u32).recip();
    let mut acc = Float::new(prec);
    for k in 0..terms {
        acc += Float::with_val(prec, &pw / (2 * k + 1));
        pw *= &ninth;
    }
    acc *= 2u32;
    let tail = 2.0 * pw.to_f64() * 9.0 / 8.0;
    let v = Float::with_val(ctx.precision(), &acc);
    NumericValue::rounded(v).widen(tail)
}

fn li4_half(ctx: &NumericContext) -> NumericValue {
    let prec = ctx.precision() + 16;
    let terms = (ctx.working_digits() as f64 / 2f64.log10()).ceil() as u32 + 4;
    let mut acc = Float::new(prec);
    let mut pw = Float::with_val(prec, 1u32);
    for n in 1..=terms {
        pw /= 2u32;
        let n4 = Float::with_val(prec, n).pow(4u32);
        acc += Float::with_val(prec, &pw / n4);
    }
    let tail = pw.to_f64() / (terms as f64).powi(4);
    NumericValue::rounded(Float::with_val(ctx.precision(), &acc)).widen(tail)
}

pub fn primitive_constant(name: Primitive, ctx: &NumericContext) -> Result<NumericValue, NumericsError> {
    Ok(match name {
        Primitive::Pi => NumericValue::rounded(pi(ctx.precision())),
        Primitive::Log2 => log2_series(ctx),
        Primitive::Catalan => dirichlet_beta(2, ctx)?,
        Primitive::Li4Half => li4_half(ctx),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> NumericContext {
        NumericContext::new(40, 1_000_000, 12).unwrap()
    }

    fn close(a: &NumericValue, b: &Float, tol: f64) {
        let d = Float::with_val(400, a.value() - b).abs().to_f64();
        assert!(d < tol, "difference {d:e} ≥ {tol:e}");
    }

    fn tol(c: &NumericContext) -> f64 {
        10f64.powi(-(c.digits() as i32 - 5))
    }

    #[test]
    fn zeta_small_values() {
        let c = ctx();
        let p = 400;
        close(&zeta_int(2, &c).unwrap(), &(Float::with_val(p, Constant::Pi).square() / 6u32), 1e-45);
        close(&zeta_int(3, &c).unwrap(), &Float::with_val(p, 3u32).zeta(), 1e-45);
        assert!(zeta_int(1, &c).is_err());
    }

    #[test]
    fn even_zeta_paths_agree_to_30() {
        let c = ctx();
        for k in (2..=30).step_by(2) {
            let exact = zeta_int(k, &c).unwrap();
            let series = zeta_series(k, &c).unwrap();
            let d = exact.abs_diff(&series).to_f64();
            assert!(d < tol(&c), "ζ({k}): {d:e}");
        }
    }

    #[test]
    fn odd_zeta_matches_mpfr() {
        let c = ctx();
        for k in [3u32, 5, 7, 9, 11] {
            close(&zeta_int(k, &c).unwrap(), &Float::with_val(400, k).zeta(), 1e-45);
        }
    }

    #[test]
    fn beta_values() {
        let c = ctx();
        let p = 400;
        let pi = Float::with_val(p, Constant::Pi);
        close(&dirichlet_beta(1, &c).unwrap(), &Float::with_val(p, &pi / 4u32), 1e-45);
        close(&dirichlet_beta(2, &c).unwrap(), &Float::with_val(p, Constant::Catalan), 1e-45);
        close(&dirichlet_beta(3, &c).unwrap(), &(Float::with_val(p, rug::ops::Pow::pow(&pi, 3u32)) / 32u32), 1e-45);
    }

    #[test]
    fn odd_beta_paths_agree() {
        let c = ctx();
        for m in 0..=5u32 {
            let k = 2 * m + 1;
            let exact = dirichlet_beta(k, &c).unwrap();
            let s = Summand { outer: Term::new(Rational::from((-1, 2)), k, true), factors: vec![] };
            let series =
                (-sum(&s, &c).unwrap().value).scale(&Rational::from((Integer::from(1), Integer::from(1) << k)));
            let d = exact.abs_diff(&series).to_f64();
            assert!(d < tol(&c), "β({k}): {d:e}");
        }
    }

    #[test]
    fn hurwitz_special_cases() {
        let c = ctx();
        let p = 400;
        let pi = Float::with_val(p, Constant::Pi);
        close(&hurwitz_zeta(2, &Rational::new(), &c).unwrap(), &(Float::with_val(p, pi.square_ref()) / 6u32), 1e-45);
        close(&hurwitz_zeta(2, &Rational::from((-1, 2)), &c).unwrap(), &(Float::with_val(p, pi.square_ref()) / 2u32), 1e-45);
        let z3m1 = Float::with_val(p, 3u32).zeta() - 1u32;
        close(&hurwitz_zeta(3, &Rational::from(1), &c).unwrap(), &z3m1, 1e-45);
        assert!(hurwitz_zeta(2, &Rational::from(-1), &c).is_err());
        assert!(hurwitz_zeta(1, &Rational::new(), &c).is_err());
    }

    #[test]
    fn primitive_values() {
        let c = ctx();
        let l2 = primitive_constant(Primitive::Log2, &c).unwrap();
        close(&l2, &Float::with_val(400, Constant::Log2), 1e-50);
        assert!(l2.error_bound() < 1e-50);
        // 60-digit reference from an independent arbitrary-precision library
        let li4 = Float::with_val(400, Float::parse("0.5174790616738993863307581618988629456223774751413792582443193479770").unwrap());
        close(&primitive_constant(Primitive::Li4Half, &c).unwrap(), &li4, 1e-50);
        let g = primitive_constant(Primitive::Catalan, &c).unwrap();
        assert_eq!(g.value(), dirichlet_beta(2, &c).unwrap().value());
    }

    #[test]
    fn deterministic_digit_strings() {
        let c = ctx();
        let a = zeta_int(5, &c).unwrap().to_decimal(40);
        let b = zeta_int(5, &c).unwrap().to_decimal(40);
        assert_eq!(a, b);
    }
}
