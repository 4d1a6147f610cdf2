//! High-precision evaluation, closed-form reduction and residue rederivation of
//! Euler T-sums and related multiple t- and zeta-values.

pub mod algebra;
pub mod identities;
pub mod numerics;
pub mod residue;
pub mod series;
pub mod syntax;

pub use rug::{Integer, Rational};
