//! Gaussian integers, 2x2 Gaussian matrices and the search for unimodular
//! matrices of prescribed norm-square.

mod count;
mod int;
mod matrix;
mod search;

pub use count::{count_gamma_exact, for_each_gamma};
pub use int::GaussianInt;
pub use matrix::MatGamma;
pub use search::{find_witness, sweep_table, verify_range, Strategy, WitnessReport};
