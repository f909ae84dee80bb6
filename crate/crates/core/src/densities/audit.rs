use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::closed::{density_archimedean, density_ramified_odd, density_unramified};
use super::oracle::density_dyadic;
use super::{check_odd_n, ramified_primes};
use crate::arith::{primes_up_to, Rational};
use crate::error::Result;

/// Odd unramified primes below this bound are checked individually.
const UNRAMIFIED_SAMPLE_BOUND: u64 = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonvanishingReport {
    pub n: u64,
    pub archimedean: f64,
    pub dyadic: Rational,
    pub ramified: Vec<(u64, Rational)>,
    /// Unramified closed forms at small odd primes, each checked against
    /// `(1 - p^-2)(1 - 1/p)`.
    pub unramified: Vec<(u64, Rational)>,
    pub violations: Vec<String>,
}

impl NonvanishingReport {
    pub fn all_positive(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The count modulo 8 only sees `n mod 8`, so one oracle run per odd residue.
fn dyadic_by_residue(n: u64) -> Result<Rational> {
    static TABLE: OnceLock<HashMap<u64, Rational>> = OnceLock::new();
    if let Some(table) = TABLE.get() {
        return Ok(table[&(n % 8)].clone());
    }
    let mut table = HashMap::new();
    for rep in [9u64, 3, 5, 7] {
        table.insert(rep % 8, density_dyadic(rep)?.density);
    }
    Ok(TABLE.get_or_init(|| table)[&(n % 8)].clone())
}

pub fn assert_nonvanishing(n: u64) -> Result<NonvanishingReport> {
    check_odd_n(n)?;
    let mut violations = Vec::new();

    let archimedean = density_archimedean(n)?;
    // A NaN must count as a violation too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(archimedean > 0.0) {
        violations.push(format!("gamma_inf = {archimedean}"));
    }
    let dyadic = dyadic_by_residue(n)?;
    if !dyadic.is_positive() {
        violations.push(format!("gamma_2 = {dyadic}"));
    }

    let ramified_list = ramified_primes(n)?;
    let mut ramified = Vec::with_capacity(ramified_list.len());
    for p in ramified_list.iter().copied() {
        let v = density_ramified_odd(p, n)?;
        if !v.is_positive() {
            violations.push(format!("gamma_{p} = {v}"));
        }
        ramified.push((p, v));
    }

    let mut unramified = Vec::new();
    for p in primes_up_to(UNRAMIFIED_SAMPLE_BOUND).into_iter().skip(1) {
        if ramified_list.contains(&p) {
            continue;
        }
        let v = density_unramified(p, n)?;
        let bound = (Rational::one() - Rational::new(1, p * p)) * (Rational::one() - Rational::new(1, p));
        if !v.is_positive() || v < bound {
            violations.push(format!("gamma_{p} = {v} below {bound}"));
        }
        unramified.push((p, v));
    }

    Ok(NonvanishingReport {
        n,
        archimedean,
        dyadic,
        ramified,
        unramified,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = assert_nonvanishing(3).unwrap();
        assert!(r.all_positive());
        assert_eq!(r.ramified.iter().map(|x| x.0).collect::<Vec<_>>(), vec![5]);
        assert_eq!(r.dyadic, Rational::new(3, 2));
        let r = assert_nonvanishing(9).unwrap();
        assert_eq!(r.ramified.iter().map(|x| x.0).collect::<Vec<_>>(), vec![7, 11]);
        assert!(r.ramified.iter().all(|(_, v)| v.is_positive()));
        let r = assert_nonvanishing(5).unwrap();
        assert_eq!(r.ramified.iter().map(|x| x.0).collect::<Vec<_>>(), vec![3, 7]);
        assert!(r.all_positive());
        assert!(assert_nonvanishing(6).is_err());
    }
}
