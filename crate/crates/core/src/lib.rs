//! Relator-replacement calculus for finite group presentations, with knot
//! group applications: Ma-Qiu index intervals, presentation distance bounds,
//! elementary-ideal lower bounds and rational tangle replacement.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod alexander;
pub mod knots;
pub mod laurent;
pub mod matrix;
pub mod mq;
pub mod polymatrix;
pub mod presentation;
pub mod word;

pub use laurent::LaurentPolynomial;
pub use matrix::{IntegerMatrix, SmithDecomposition};
pub use word::{Letter, Symbol, Word};
