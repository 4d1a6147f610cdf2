//! Extended-precision arithmetic context, exact Bernoulli/Euler numbers and
//! the primitive constants.

mod combinatorics;
mod constants;
mod context;
pub(crate) mod expansion;
pub mod summation;
mod value;

pub use combinatorics::{bernoulli, binomial, binomial_signed, euler_number, factorial};
pub use constants::{
    dirichlet_beta, hurwitz_zeta, primitive_constant, zeta_even_exact, zeta_int, zeta_series, Primitive,
};
pub use context::{make_context, NumericContext, GUARD_DIGITS, MAX_TAIL_ORDER, MIN_DIGITS, MIN_TERMS};
pub use summation::{SumResult, TailMethod};
pub use value::NumericValue;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NumericsError {
    #[error("invalid context: {0}")]
    Context(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divergent: {0}")]
    Divergent(String),
}
