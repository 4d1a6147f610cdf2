use serde::{Deserialize, Serialize};

use super::NumericsError;

/// Guard digits carried on top of the requested precision.
pub const GUARD_DIGITS: u32 = 20;
pub const MIN_DIGITS: u32 = 15;
pub const MIN_TERMS: u64 = 100;
pub const MAX_TAIL_ORDER: u32 = 30;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Precision policy shared by every evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumericContext {
    digits: u32,
    max_terms: u64,
    tail_order: u32,
}

impl NumericContext {
    pub fn new(digits: u32, max_terms: u64, tail_order: u32) -> Result<Self, NumericsError> {
        if digits < MIN_DIGITS {
            return Err(NumericsError::Context(format!(
                "digits below minimum ({digits} < {MIN_DIGITS})"
            )));
        }
        if max_terms < MIN_TERMS {
            return Err(NumericsError::Context(format!(
                "max_terms below minimum ({max_terms} < {MIN_TERMS})"
            )));
        }
        if tail_order > MAX_TAIL_ORDER {
            return Err(NumericsError::Context(format!(
                "tail_order above maximum ({tail_order} > {MAX_TAIL_ORDER})"
            )));
        }
        Ok(NumericContext { digits, max_terms, tail_order })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    pub fn tail_order(&self) -> u32 {
        self.tail_order
    }

    /// Decimal digits actually carried internally.
    pub fn working_digits(&self) -> u32 {
        self.digits + GUARD_DIGITS
    }

    /// Working precision in bits.
    pub fn precision(&self) -> u32 {
        (self.working_digits() as f64 * LOG2_10).ceil() as u32 + 8
    }

    /// Same policy at a different number of digits.
    pub fn with_digits(&self, digits: u32) -> Result<Self, NumericsError> {
        Self::new(digits, self.max_terms, self.tail_order)
    }
}

impl Default for NumericContext {
    fn default() -> Self {
        NumericContext { digits: 40, max_terms: 1_000_000, tail_order: 12 }
    }
}

pub fn make_context(digits: u32, max_terms: u64, tail_order: u32) -> Result<NumericContext, NumericsError> {
    NumericContext::new(digits, max_terms, tail_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_boundaries() {
        let c = make_context(40, 1_000_000, 12).unwrap();
        assert_eq!((c.digits(), c.max_terms(), c.tail_order()), (40, 1_000_000, 12));
        assert!(make_context(15, 100, 0).is_ok());
        assert!(make_context(15, 100, 30).is_ok());
    }

    #[test]
    fn rejects_out_of_range() {
        let e = make_context(10, 1000, 4).unwrap_err();
        assert!(e.to_string().contains("digits below minimum"));
        assert!(make_context(20, 99, 4).is_err());
        assert!(make_context(20, 1000, 31).is_err());
    }

    #[test]
    fn guard_digits_padded() {
        let c = make_context(40, 1000, 4).unwrap();
        assert!(c.working_digits() >= 50);
        assert!(c.precision() as f64 >= 50.0 * LOG2_10);
    }
}
