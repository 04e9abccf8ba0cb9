//! Exact arithmetic over ℚ and the rational-function field ℚ(a).

mod modular;
mod polynomial;
mod ratfun;
mod rational;

pub(crate) use polynomial::int_mul;
pub use polynomial::Polynomial;
pub use ratfun::RationalFunction;
pub use rational::{binomial, factorial, ArithOp, Rational};
