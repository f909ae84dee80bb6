//! Integer arithmetic used by the density and mass computations.

mod classnum;
mod factor;
mod rational;
mod squares;
mod symbol;

pub use classnum::{class_number, discriminant_of, is_fundamental, l_value, units_count};
pub use factor::{factorize, primes_up_to, valuation, Factorization};
pub use rational::Rational;
pub(crate) use rational::ratio_to_f64 as rational_ratio_to_f64;
pub use squares::{four_square_count, four_square_reps, QuadVector};
pub use symbol::kronecker;
