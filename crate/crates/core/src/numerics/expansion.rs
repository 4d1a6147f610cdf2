//! Truncated asymptotic expansions in x → ∞ of the shape
//! Σ c_{j,i} (ln x)^i x^{-j}, plus an oscillating companion multiplied by (-1)^n.

use rug::{Float, Rational};

use super::combinatorics::{bernoulli_over_factorial, binomial_signed};
use super::NumericsError;

#[derive(Clone, Debug)]
pub(crate) struct LogPoly {
    prec: u32,
    max_power: usize,
    // rows[j][i] is the coefficient of (ln x)^i x^{-j}
    rows: Vec<Vec<Float>>,
}

impl LogPoly {
    pub fn zero(prec: u32, max_power: usize) -> Self {
        LogPoly { prec, max_power, rows: vec![Vec::new(); max_power + 1] }
    }

    pub fn constant(prec: u32, max_power: usize, c: &Float) -> Self {
        let mut p = Self::zero(prec, max_power);
        p.add_at(0, 0, c);
        p
    }

    /// (x + a)^{-k}.
    pub fn inverse_power(prec: u32, max_power: usize, a: &Rational, k: u32) -> Self {
        let mut p = Self::zero(prec, max_power);
        let mut apow = Rational::from(1);
        let mut m = 0u32;
        while (k + m) as usize <= max_power {
            let c = Rational::from(binomial_signed(-(k as i64), m)) * &apow;
            if c != 0 {
                p.add_at((k + m) as usize, 0, &Float::with_val(prec, &c));
            }
            if *a == 0 {
                break;
            }
            apow *= a;
            m += 1;
        }
        p
    }

    fn add_at(&mut self, j: usize, i: usize, c: &Float) {
        if j > self.max_power {
            return;
        }
        let row = &mut self.rows[j];
        while row.len() <= i {
            row.push(Float::new(self.prec));
        }
        row[i] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    pub fn row_is_zero(&self, j: usize) -> bool {
        self.rows.get(j).is_none_or(|r| r.iter().all(|c| c.is_zero()))
    }

    pub fn add(&self, other: &LogPoly) -> LogPoly {
        let mut out = self.clone();
        for (j, row) in other.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                out.add_at(j, i, c);
            }
        }
        out
    }

    pub fn scaled(&self, s: &Float) -> LogPoly {
        let mut out = self.clone();
        for row in out.rows.iter_mut() {
            for c in row.iter_mut() {
                *c *= s;
            }
        }
        out
    }

    pub fn neg(&self) -> LogPoly {
        let mut out = self.clone();
        for row in out.rows.iter_mut() {
            for c in row.iter_mut() {
                rug::ops::NegAssign::neg_assign(c);
            }
        }
        out
    }

    pub fn mul(&self, other: &LogPoly) -> LogPoly {
        let mut out = LogPoly::zero(self.prec, self.max_power);
        for (j1, r1) in self.rows.iter().enumerate() {
            if r1.is_empty() {
                continue;
            }
            for (j2, r2) in other.rows.iter().enumerate() {
                let j = j1 + j2;
                if j > self.max_power {
                    break;
                }
                if r2.is_empty() {
                    continue;
                }
                let need = r1.len() + r2.len() - 1;
                let row = &mut out.rows[j];
                while row.len() < need {
                    row.push(Float::new(self.prec));
                }
                for (i1, a) in r1.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (i2, b) in r2.iter().enumerate() {
                        row[i1 + i2] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn derivative(&self) -> LogPoly {
        let mut out = LogPoly::zero(self.prec, self.max_power);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if i > 0 {
                    out.add_at(j + 1, i - 1, &Float::with_val(self.prec, c * i as u32));
                }
                if j > 0 {
                    out.add_at(j + 1, i, &(-Float::with_val(self.prec, c * j as u32)));
                }
            }
        }
        out
    }

    pub fn antiderivative(&self) -> Result<LogPoly, NumericsError> {
        let mut out = LogPoly::zero(self.prec, self.max_power);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match j {
                    0 => return Err(NumericsError::Divergent("summand does not decay".into())),
                    1 => out.add_at(0, i + 1, &Float::with_val(self.prec, c / (i as u32 + 1))),
                    _ => {
                        let base = Rational::from(1) / Rational::from(1 - j as i64);
                        let mut pow = base.clone();
                        let mut fall = Rational::from(1);
                        for r in 0..=i {
                            let mut coef = Rational::from(&fall * &pow);
                            if r % 2 == 1 {
                                coef = -coef;
                            }
                            let v = Float::with_val(self.prec, c * Float::with_val(self.prec, &coef));
                            out.add_at(j - 1, i - r, &v);
                            fall *= (i - r) as u32;
                            pow *= &base;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, inv_x: &Float, ln_x: &Float) -> Float {
        let mut acc = Float::new(self.prec);
        for row in self.rows.iter().rev() {
            acc *= inv_x;
            let mut r = Float::new(self.prec);
            for c in row.iter().rev() {
                r *= ln_x;
                r += c;
            }
            acc += &r;
        }
        acc
    }

    /// Σ |c_{j,i}| (ln x)^i x^{-j}, used for rounding estimates.
    pub fn eval_abs(&self, inv_x: &Float, ln_x: &Float) -> f64 {
        let ix = inv_x.to_f64();
        let lx = ln_x.to_f64();
        let mut acc = 0.0;
        for row in self.rows.iter().rev() {
            acc *= ix;
            let mut r = 0.0;
            for c in row.iter().rev() {
                r = r * lx + c.to_f64().abs();
            }
            acc += r;
        }
        acc
    }
}

/// A(x) + (-1)^n B(x).
#[derive(Clone, Debug)]
pub(crate) struct Expansion {
    pub smooth: LogPoly,
    pub oscillating: LogPoly,
}

impl Expansion {
    pub fn zero(prec: u32, max_power: usize) -> Self {
        Expansion { smooth: LogPoly::zero(prec, max_power), oscillating: LogPoly::zero(prec, max_power) }
    }

    pub fn one(prec: u32, max_power: usize) -> Self {
        let mut e = Self::zero(prec, max_power);
        e.smooth = LogPoly::constant(prec, max_power, &Float::with_val(prec, 1));
        e
    }

    pub fn sub(&self, o: &Expansion) -> Expansion {
        Expansion {
            smooth: self.smooth.add(&o.smooth.neg()),
            oscillating: self.oscillating.add(&o.oscillating.neg()),
        }
    }

    pub fn add_constant(&mut self, c: &Float) {
        self.smooth.add_at(0, 0, c);
    }

    pub fn mul(&self, o: &Expansion) -> Expansion {
        let smooth = self.smooth.mul(&o.smooth).add(&self.oscillating.mul(&o.oscillating));
        let oscillating = self.smooth.mul(&o.oscillating).add(&self.oscillating.mul(&o.smooth));
        Expansion { smooth, oscillating }
    }

    pub fn eval(&self, n: u64, inv_x: &Float, ln_x: &Float) -> Float {
        let mut v = self.smooth.eval(inv_x, ln_x);
        let b = self.oscillating.eval(inv_x, ln_x);
        if n.is_multiple_of(2) {
            v += &b;
        } else {
            v -= &b;
        }
        v
    }

    pub fn eval_abs(&self, inv_x: &Float, ln_x: &Float) -> f64 {
        self.smooth.eval_abs(inv_x, ln_x) + self.oscillating.eval_abs(inv_x, ln_x)
    }

    pub fn is_decaying(&self) -> bool {
        self.smooth.row_is_zero(0) && self.oscillating.row_is_zero(0)
    }

    /// Expansion P with Σ_{m≤n} f(m) = C + P(n), to Euler–Maclaurin order `order`
    /// on the smooth part and Boole order `order` on the oscillating part.
    pub fn indefinite_sum(&self, order: u32) -> Result<Expansion, NumericsError> {
        let prec = self.smooth.prec;
        let half = Float::with_val(prec, 0.5);
        let mut smooth = LogPoly::zero(prec, self.smooth.max_power);
        if !self.smooth.is_zero() {
            smooth = self.smooth.antiderivative()?.add(&self.smooth.scaled(&half));
            let mut d = self.smooth.derivative();
            for k in 1..=order {
                if d.is_zero() {
                    break;
                }
                let c = Float::with_val(prec, &bernoulli_over_factorial(2 * k));
                smooth = smooth.add(&d.scaled(&c));
                d = d.derivative().derivative();
            }
        }
        let mut osc = self.oscillating.scaled(&half);
        if !self.oscillating.is_zero() {
            let mut d = self.oscillating.derivative();
            for k in 1..=order {
                if d.is_zero() {
                    break;
                }
                // (2^{2k} - 1) B_{2k} / (2k)!
                let two = rug::Integer::from(1) << (2 * k);
                let r = bernoulli_over_factorial(2 * k) * Rational::from(two - 1u32);
                osc = osc.add(&d.scaled(&Float::with_val(prec, &r)));
                d = d.derivative().derivative();
            }
        }
        Ok(Expansion { smooth, oscillating: osc })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn at(n: u64) -> (Float, Float) {
        let x = Float::with_val(P, n);
        let inv = Float::with_val(P, 1) / &x;
        let ln = x.ln();
        (inv, ln)
    }

    #[test]
    fn inverse_power_matches_direct() {
        let a = Rational::from((-1, 2));
        let p = LogPoly::inverse_power(P, 40, &a, 3);
        let (inv, ln) = at(200);
        let direct = Float::with_val(P, rug::ops::Pow::pow(Float::with_val(P, 199.5), -3));
        let d = Float::with_val(P, p.eval(&inv, &ln) - direct).abs();
        assert!(d < 1e-95, "{d}");
    }

    #[test]
    fn antiderivative_differentiates_back() {
        let mut p = LogPoly::zero(P, 20);
        p.add_at(3, 2, &Float::with_val(P, 1.25));
        p.add_at(2, 1, &Float::with_val(P, -3));
        p.add_at(1, 0, &Float::with_val(P, 2));
        let back = p.antiderivative().unwrap().derivative();
        let (inv, ln) = at(7);
        let d = Float::with_val(P, back.eval(&inv, &ln) - p.eval(&inv, &ln)).abs();
        assert!(d < 1e-70);
    }

    #[test]
    fn harmonic_square_prefix_shape() {
        // Σ_{m≤n} m^{-2} = ζ(2) - 1/n + 1/(2n²) - 1/(6n³) + ...
        let f = Expansion {
            smooth: LogPoly::inverse_power(P, 30, &Rational::new(), 2),
            oscillating: LogPoly::zero(P, 30),
        };
        let s = f.indefinite_sum(12).unwrap();
        let n = 50u64;
        let (inv, ln) = at(n);
        let mut direct = Float::with_val(P, 0);
        for m in 1..=n {
            direct += Float::with_val(P, m * m).recip();
        }
        let pi2_6 = Float::with_val(P, rug::float::Constant::Pi).square() / 6u32;
        let c = Float::with_val(P, &direct - s.eval(n, &inv, &ln));
        let d = Float::with_val(P, c - pi2_6).abs();
        assert!(d < 1e-30, "{d}");
    }

    #[test]
    fn alternating_prefix_shape() {
        // Σ_{m≤n} (-1)^m / m  → -ln 2
        let f = Expansion {
            smooth: LogPoly::zero(P, 30),
            oscillating: LogPoly::inverse_power(P, 30, &Rational::new(), 1),
        };
        let s = f.indefinite_sum(12).unwrap();
        let n = 60u64;
        let (inv, ln) = at(n);
        let mut direct = Float::with_val(P, 0);
        for m in 1..=n {
            let t = Float::with_val(P, m).recip();
            if m % 2 == 0 {
                direct += t;
            } else {
                direct -= t;
            }
        }
        let c = Float::with_val(P, &direct - s.eval(n, &inv, &ln));
        let l2 = Float::with_val(P, rug::float::Constant::Log2);
        let d = Float::with_val(P, c + l2).abs();
        assert!(d < 1e-25, "{d}");
    }
}
