//! Exact computation of reduced colored HOMFLY Poincaré series of positive
//! torus links `T(m, n)` colored `(k, 1, …, 1)`.
//!
//! Everything here is pure computation over `alloc`; IO, file formats and
//! the command line live in the `tlh` crate.

#![no_std]

extern crate alloc;

pub mod conjectures;
pub mod error;
pub mod int;
pub mod perm;
pub mod recursion;
pub mod ring;
pub mod torus;

pub use error::{Error, Result};
pub use int::Int;
pub use perm::Perm;
pub use ring::{LaurentPoly, Monomial, StructuredRational};
