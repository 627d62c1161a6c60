//! Exact symbolic verification of Bochner-type integral identities on
//! 3-dimensional pseudohermitian manifolds, and numeric evaluation of the
//! pointwise rigidity conditions derived from them.

pub mod calculus;
pub mod cli;
pub mod error;
pub mod expr;
pub mod identities;
pub mod operators;
pub mod parse;
pub mod rigidity;
pub mod scalar;
pub mod symbol;

pub use error::{Error, Result};
pub use expr::{Expression, Monomial, Term};
pub use parse::parse;
pub use scalar::ScalarExact;
pub use symbol::{DerivIndex, Factor, Symbol};
