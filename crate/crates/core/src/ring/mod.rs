//! Exact sparse arithmetic in the geometric variables `A`, `Q`, `T`.

mod poly;
mod rational;

pub use poly::{LaurentPoly, Monomial};
pub use rational::StructuredRational;

#[cfg(test)]
mod props;
