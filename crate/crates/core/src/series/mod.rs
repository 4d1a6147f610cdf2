//! Infinite-sum families and their high-precision evaluation.

mod composition;
mod eval;
mod spec;

pub use composition::tsum_as_tvalues;
pub use eval::{eval_multiple, eval_multiple_detail, eval_series, eval_series_detail, eval_series_with_cutoff, Evaluator};
pub use spec::{
    harmonic_prefix, make_series_spec, Family, HarmonicKind, MultipleFamily, MultipleSpec, Offset, SeqFactor,
    SeriesSpec, SumRef, MAX_DEPTH,
};

use thiserror::Error;

use crate::numerics::NumericsError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("invalid spec: {0}")]
    Invalid(String),
    #[error("{0}")]
    Divergent(String),
    #[error("{0}")]
    Numerics(#[from] NumericsError),
    #[error("{0}")]
    Unsupported(String),
}
