use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Round;
use rug::{Float, Rational};

/// Slack applied to every f64 bound update so that its own rounding never
/// makes a bound smaller than the quantity it tracks.
const BOUND_SLACK: f64 = 1.0 + 1e-12;

/// A multiprecision real together with an a priori error bound.
#[derive(Clone, Debug)]
pub struct NumericValue {
    value: Float,
    error: f64,
}

/// One unit in the last place of `x` at its own precision, as an f64.
pub(crate) fn ulp(x: &Float) -> f64 {
    abs_f64(x) * 2f64.powi(1 - x.prec() as i32)
}

/// |x| rounded up to an f64.
pub(crate) fn abs_f64(x: &Float) -> f64 {
    x.to_f64_round(Round::Up).abs()
}

impl NumericValue {
    pub fn new(value: Float, error_bound: f64) -> Self {
        assert!(error_bound.is_finite() && error_bound >= 0.0, "error bound must be finite");
        NumericValue { value, error: error_bound }
    }

    /// A value whose only error is its final rounding.
    pub fn rounded(value: Float) -> Self {
        let e = ulp(&value);
        NumericValue { value, error: e }
    }

    pub fn zero(prec: u32) -> Self {
        NumericValue { value: Float::new(prec), error: 0.0 }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self::rounded(Float::with_val(prec, r))
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn error_bound(&self) -> f64 {
        self.error
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Widen the bound by `extra`.
    pub fn widen(mut self, extra: f64) -> Self {
        self.error = (self.error + extra) * BOUND_SLACK;
        self
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.value.is_zero() {
            return "0".to_string();
        }
        self.value.to_string_radix(10, Some(digits))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let prec = self.prec();
        let v = Float::with_val(prec, &self.value * Float::with_val(prec, r));
        let rf = Float::with_val(53, r).to_f64().abs();
        let e = (self.error * rf + 2.0 * ulp(&v)) * BOUND_SLACK;
        NumericValue { value: v, error: e }
    }

    pub fn pow_u(&self, k: u32) -> Self {
        let mut acc = NumericValue::rounded(Float::with_val(self.prec(), 1));
        acc.error = 0.0;
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn abs_diff(&self, other: &NumericValue) -> Float {
        let prec = self.prec().max(other.prec());
        Float::with_val(prec, &self.value - &other.value).abs()
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.to_decimal(30), self.error)
    }
}

impl<'a> Add<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn add(self, rhs: &'a NumericValue) -> NumericValue {
        let prec = self.prec().max(rhs.prec());
        let v = Float::with_val(prec, &self.value + &rhs.value);
        let e = (self.error + rhs.error + ulp(&v)) * BOUND_SLACK;
        NumericValue { value: v, error: e }
    }
}

impl<'a> Sub<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn sub(self, rhs: &'a NumericValue) -> NumericValue {
        let prec = self.prec().max(rhs.prec());
        let v = Float::with_val(prec, &self.value - &rhs.value);
        let e = (self.error + rhs.error + ulp(&v)) * BOUND_SLACK;
        NumericValue { value: v, error: e }
    }
}

impl<'a> Mul<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn mul(self, rhs: &'a NumericValue) -> NumericValue {
        let prec = self.prec().max(rhs.prec());
        let v = Float::with_val(prec, &self.value * &rhs.value);
        let a = abs_f64(&self.value);
        let b = abs_f64(&rhs.value);
        let e = (a * rhs.error + b * self.error + self.error * rhs.error + ulp(&v)) * BOUND_SLACK;
        NumericValue { value: v, error: e }
    }
}

impl Neg for NumericValue {
    type Output = NumericValue;
    fn neg(self) -> NumericValue {
        NumericValue { value: -self.value, error: self.error }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nv(x: f64, e: f64) -> NumericValue {
        NumericValue::new(Float::with_val(200, x), e)
    }

    #[test]
    fn bounds_grow_under_arithmetic() {
        let a = nv(1.5, 1e-40);
        let b = nv(-2.25, 3e-40);
        let s = &a + &b;
        assert!(s.error_bound() >= 4e-40);
        let p = &a * &b;
        assert!(p.error_bound() >= 1.5 * 3e-40 + 2.25 * 1e-40);
        assert_eq!(p.to_f64(), -3.375);
    }

    #[test]
    fn scale_and_power() {
        let a = nv(2.0, 1e-30);
        let s = a.scale(&Rational::from((-3, 4)));
        assert_eq!(s.to_f64(), -1.5);
        assert!(s.error_bound() >= 0.75e-30);
        let c = a.pow_u(3);
        assert_eq!(c.to_f64(), 8.0);
        assert!(c.error_bound() >= 12e-30 * 0.999);
    }
}
