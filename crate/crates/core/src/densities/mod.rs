//! Local densities of `I4` representing `diag(n+2, n-2)`.
//!
//! At a finite prime the density is `p^(-5t)` times the number of `X` modulo
//! `p^t` with `X X^t = diag(n+2, n-2)`, for `t` large enough. [`oracle`]
//! counts that directly; [`closed`] has the closed forms at odd primes;
//! [`audit`] checks that nothing vanishes.

pub mod audit;
pub mod closed;
pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, Rational};
use crate::error::{Error, Result};

pub use audit::{assert_nonvanishing, NonvanishingReport};
pub use closed::{
    density_archimedean, density_closed_form, density_ramified_odd, density_unramified,
    ramification_datum, RamificationDatum,
};
pub use oracle::{
    default_level, density_counting_oracle, density_dyadic, OracleCount, OracleMode,
};

/// A place of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Prime(u64),
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityNumber {
    Exact(Rational),
    Real(f64),
}

/// A local density together with its place.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityValue {
    pub place: Place,
    pub value: DensityNumber,
}

impl DensityValue {
    pub fn is_positive(&self) -> bool {
        match &self.value {
            DensityNumber::Exact(r) => r.is_positive(),
            DensityNumber::Real(x) => *x > 0.0,
        }
    }
}

pub(crate) fn check_odd_n(n: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid("n must be odd and ≥ 3"));
    }
    Ok(())
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && factorize(p).is_ok_and(|f| f.factors == [(p, 1)])
}

/// Odd primes dividing `n^2 - 4`, ascending. `n - 2` and `n + 2` are
/// factored separately.
pub fn ramified_primes(n: u64) -> Result<Vec<u64>> {
    check_odd_n(n)?;
    let f = factorize(n - 2)?.merge(&factorize(n + 2)?);
    Ok(f.primes().filter(|&p| p != 2).collect())
}
