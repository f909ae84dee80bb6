//! The product of local densities over all places.
//!
//! The unramified factor `(1 - p^-2)(1 + chi(p)/p)` equals
//! `(1 - p^-2)^2 / (1 - chi(p)/p)` with `chi = chi_D`, `D` the discriminant of
//! `Q(sqrt(4 - n^2))`. Over all primes those products are `zeta(2)^-2` and
//! `L(1, chi_D)`, so the full unramified product is
//!
//! ```text
//! (36 / pi^4) * L(1, chi_D) * prod_{p | 2(n^2 - 4)} (1 - chi_D(p)/p) / (1 - p^-2)^2
//! ```
//!
//! with `L(1, chi_D) = 2 pi h(D) / (w sqrt|D|)`. Everything but the final
//! `sqrt((n^2 - 4) / |D|)` is rational.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    class_number, discriminant_of, kronecker, l_value, primes_up_to, units_count, Rational,
};
use crate::capacity::Capacity;
use crate::coords::count_xf_solutions;
use crate::densities::{
    check_odd_n, density_archimedean, density_dyadic, density_ramified_odd, ramified_primes,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassMethod {
    Truncated,
    Exact,
}

impl std::str::FromStr for MassMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "truncated" => Ok(MassMethod::Truncated),
            "exact" => Ok(MassMethod::Exact),
            other => Err(Error::invalid(format!("unknown mass method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassReport {
    pub n: u64,
    pub gamma_inf: f64,
    pub gamma_2: Rational,
    pub ramified_factors: Vec<(u64, Rational)>,
    /// Product of the unramified odd-prime factors (all of them for the
    /// exact method, those up to `prime_bound` for the truncated one).
    pub unramified_value: f64,
    pub total: f64,
    pub method: MassMethod,
    pub prime_bound: Option<u64>,
    /// Field discriminant of `Q(sqrt(4 - n^2))`; exact method only.
    pub discriminant: Option<i64>,
    pub class_number: Option<u64>,
    pub exact_count: Option<u64>,
    pub relative_error: Option<f64>,
}

struct SharedFactors {
    gamma_inf: f64,
    gamma_2: Rational,
    ramified: Vec<(u64, Rational)>,
}

impl SharedFactors {
    fn new(n: u64) -> Result<Self> {
        check_odd_n(n)?;
        let ramified = ramified_primes(n)?
            .into_iter()
            .map(|p| Ok((p, density_ramified_odd(p, n)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SharedFactors {
            gamma_inf: density_archimedean(n)?,
            gamma_2: density_dyadic(n)?.density,
            ramified,
        })
    }

    fn finite_part(&self) -> Rational {
        self.ramified
            .iter()
            .fold(self.gamma_2.clone(), |acc, (_, v)| acc * v.clone())
    }
}

/// `gamma_inf * gamma_2 * prod_{odd p <= prime_bound} gamma_p`, unramified
/// primes in increasing order. Ramified primes always contribute, whatever
/// the bound.
pub fn mass_truncated(n: u64, prime_bound: u64) -> Result<MassReport> {
    check_odd_n(n)?;
    if prime_bound < 3 {
        return Err(Error::invalid("prime_bound must be ≥ 3"));
    }
    let shared = SharedFactors::new(n)?;
    let disc = 4 - (n as i64) * (n as i64);

    let primes: Vec<u64> = primes_up_to(prime_bound)
        .into_iter()
        .skip(1)
        .filter(|p| !shared.ramified.iter().any(|(q, _)| q == p))
        .collect();
    let (num, den) = primes
        .par_iter()
        .map(|&p| {
            let chi = kronecker(disc, p as i64).expect("nonzero modulus") as i64;
            let p = BigInt::from(p);
            ((&p * &p - 1u32) * (&p + chi), &p * &p * &p)
        })
        .reduce(
            || (BigInt::one(), BigInt::one()),
            |(a, b), (c, d)| (a * c, b * d),
        );

    let unramified_value = crate::arith::rational_ratio_to_f64(&num, &den);
    let finite = shared.finite_part();
    let total = shared.gamma_inf
        * crate::arith::rational_ratio_to_f64(&(finite.numer() * &num), &(finite.denom() * &den));

    Ok(MassReport {
        n,
        gamma_inf: shared.gamma_inf,
        gamma_2: shared.gamma_2,
        ramified_factors: shared.ramified,
        unramified_value,
        total,
        method: MassMethod::Truncated,
        prime_bound: Some(prime_bound),
        discriminant: None,
        class_number: None,
        exact_count: None,
        relative_error: None,
    })
}

/// The full product, in closed form through `h(D)`.
pub fn mass_exact(n: u64) -> Result<MassReport> {
    let shared = SharedFactors::new(n)?;
    let disc = 4 - (n as i64) * (n as i64);
    let d = discriminant_of(disc)?;
    let h = class_number(d)?;
    let w = units_count(d);

    // prod over p | 2(n^2 - 4) of (1 - chi_D(p)/p) / (1 - p^-2)^2
    let correction: Rational = std::iter::once(2u64)
        .chain(shared.ramified.iter().map(|&(p, _)| p))
        .map(|p| {
            let chi = kronecker(d, p as i64).expect("nonzero modulus") as i64;
            let p = p as i64;
            let euler = Rational::new(p - chi, p);
            let zeta = Rational::new(p * p - 1, p * p);
            euler / (&zeta * &zeta)
        })
        .product();

    let pi = std::f64::consts::PI;
    let unramified_value = 36.0 / pi.powi(4) * l_value(d)? * correction.to_f64();

    // gamma_inf * (36/pi^4) * L = 2 pi^3 sqrt(n^2-4) * 36/pi^4 * 2 pi h / (w sqrt|D|)
    //                          = (144 h / w) * sqrt((n^2 - 4) / |D|)
    let rational = shared.finite_part() * correction * Rational::new(144 * h as i64, w as i64);
    let root = ((n * n - 4) as f64 / d.unsigned_abs() as f64).sqrt();
    let total = rational.to_f64() * root;

    Ok(MassReport {
        n,
        gamma_inf: shared.gamma_inf,
        gamma_2: shared.gamma_2,
        ramified_factors: shared.ramified,
        unramified_value,
        total,
        method: MassMethod::Exact,
        prime_bound: None,
        discriminant: Some(d),
        class_number: Some(h),
        exact_count: None,
        relative_error: None,
    })
}

/// [`mass_exact`] next to the exact count of integer solutions.
pub fn compare_mass_to_count(n: u64, capacity: &Capacity) -> Result<MassReport> {
    check_odd_n(n)?;
    let count = count_xf_solutions(n, capacity)?;
    let mut report = mass_exact(n)?;
    report.exact_count = Some(count);
    report.relative_error = Some((report.total - count as f64).abs() / count as f64);
    Ok(report)
}
