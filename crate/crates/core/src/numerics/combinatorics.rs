use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

use super::NumericsError;

static BERNOULLI: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
static EULER: OnceLock<Mutex<Vec<Integer>>> = OnceLock::new();

pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n, k))
}

/// C(n, k) for a possibly negative upper index.
pub fn binomial_signed(n: i64, k: u32) -> Integer {
    let mut num = Integer::from(1);
    for i in 0..k as i64 {
        num *= n - i;
    }
    let den = Integer::from(Integer::factorial(k));
    num / den
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// B_k with B_1 = -1/2.
pub fn bernoulli(k: u32) -> Rational {
    let table = BERNOULLI.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut t = table.lock().unwrap();
    while t.len() <= k as usize {
        let m = t.len() as u32;
        let mut acc = Rational::new();
        for (j, b) in t.iter().enumerate() {
            acc += Rational::from(binomial(m + 1, j as u32)) * b;
        }
        t.push(-acc / (m + 1));
    }
    t[k as usize].clone()
}

/// E_k from sec x = Σ (-1)^{k/2} E_k x^k / k! with E_2 = -1.
pub fn euler_number(k: u32) -> Result<Integer, NumericsError> {
    if k % 2 == 1 {
        return Err(NumericsError::Domain(format!("euler_number: odd index {k}")));
    }
    let table = EULER.get_or_init(|| Mutex::new(vec![Integer::from(1)]));
    let mut t = table.lock().unwrap();
    while t.len() <= (k / 2) as usize {
        let n = 2 * t.len() as u32;
        let mut acc = Integer::new();
        for (i, e) in t.iter().enumerate() {
            acc += binomial(n, 2 * i as u32) * e;
        }
        t.push(-acc);
    }
    Ok(t[(k / 2) as usize].clone())
}

/// B_{2k}/(2k)! as an exact rational.
pub fn bernoulli_over_factorial(two_k: u32) -> Rational {
    bernoulli(two_k) / Rational::from(factorial(two_k))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: B_n = Σ_k 1/(k+1) Σ_j (-1)^j C(k,j) j^n.
    fn bernoulli_oracle(n: u32) -> Rational {
        let mut s = Rational::new();
        for k in 0..=n {
            let mut inner = Integer::new();
            for j in 0..=k {
                let term = binomial(k, j) * rug::ops::Pow::pow(Integer::from(j), n);
                if j % 2 == 0 {
                    inner += term;
                } else {
                    inner -= term;
                }
            }
            s += Rational::from((inner, Integer::from(k + 1)));
        }
        s
    }

    // Independent oracle: coefficients of 1/cos x by power series division.
    fn sec_coefficients(n: usize) -> Vec<Rational> {
        let cos: Vec<Rational> = (0..=n)
            .map(|i| {
                if i % 2 == 1 {
                    Rational::new()
                } else {
                    let f = Rational::from(factorial(i as u32));
                    let s = if (i / 2) % 2 == 0 { 1 } else { -1 };
                    Rational::from(s) / f
                }
            })
            .collect();
        let mut inv = vec![Rational::new(); n + 1];
        inv[0] = Rational::from(1);
        for i in 1..=n {
            let mut acc = Rational::new();
            for j in 1..=i {
                acc += Rational::from(&cos[j] * &inv[i - j]);
            }
            inv[i] = -acc;
        }
        inv
    }

    #[test]
    fn bernoulli_known_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(13), 0);
    }

    #[test]
    fn bernoulli_matches_oracle_to_40() {
        for n in 0..=40 {
            assert_eq!(bernoulli(n), bernoulli_oracle(n), "B_{n}");
        }
    }

    #[test]
    fn euler_known_values() {
        assert_eq!(euler_number(0).unwrap(), 1);
        assert_eq!(euler_number(2).unwrap(), -1);
        assert_eq!(euler_number(8).unwrap(), 1385);
        assert!(euler_number(3).is_err());
    }

    #[test]
    fn euler_matches_sec_series_to_40() {
        let sec = sec_coefficients(40);
        for k in (0..=40).step_by(2) {
            let e = euler_number(k as u32).unwrap();
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            let expect = (&sec[k] * Rational::from(factorial(k as u32))) * sign;
            assert_eq!(Rational::from(e), expect, "E_{k}");
        }
    }

    #[test]
    fn signed_binomials() {
        assert_eq!(binomial_signed(-2, 3), -4);
        assert_eq!(binomial_signed(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
    }
}
