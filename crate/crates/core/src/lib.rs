//! Exact computation of Clifford-stringy Euler characteristics for the double
//! covers of ℙ^{n-1} attached to complete intersections of `n` quadrics in
//! ℙ^{2n-1}, together with the combinatorial identities behind them.

pub mod error;
pub mod contributions;
pub mod exact;
pub mod strata;
pub mod theorem;
pub mod toric;

pub use error::{Error, Result};
