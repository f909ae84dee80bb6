//! Exact arithmetic for norm-squares of matrices in SL(2, Z[i]).
//!
//! Every odd `n >= 3` is `|a|^2 + |b|^2 + |c|^2 + |d|^2` for some unimodular
//! Gaussian matrix `(a b; c d)`. This crate finds and verifies such matrices,
//! counts them exactly, and evaluates the local densities of the identity
//! form `I4` representing `diag(n+2, n-2)` whose product gives the exact
//! number of representations.
//!
//! Modules:
//! - [`arith`]: rationals, Kronecker symbols, factoring, four-square
//!   representations, class numbers.
//! - [`gaussian`]: Gaussian integers, 2x2 matrices, witness search and counts.
//! - [`coords`]: the y-coordinate system and global solution counts.
//! - [`densities`]: local densities by counting and by closed form.
//! - [`mass`]: the global product of local densities.

pub mod arith;
pub mod capacity;
pub mod coords;
pub mod densities;
pub mod error;
pub mod gaussian;
pub mod mass;

pub use arith::Rational;
pub use capacity::Capacity;
pub use error::{Error, Result};
pub use gaussian::{GaussianInt, MatGamma};
