use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use super::{check_odd_n, is_prime};
use crate::arith::{kronecker, valuation, Rational};
use crate::error::{Error, Result};

/// Valuations of `n + 2` and `n - 2` at an odd prime, ordered so `a <= b`.
///
/// If `swapped` is false then `n + 2 = m p^a` and `n - 2 = k p^b`;
/// otherwise `n - 2 = m p^a` and `n + 2 = k p^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationDatum {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub m: i64,
    pub k: i64,
    pub swapped: bool,
}

impl RamificationDatum {
    pub fn is_ramified(&self) -> bool {
        self.a + self.b > 0
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::invalid("p = 2 is the dyadic place; use density_dyadic"));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(())
}

pub fn ramification_datum(p: u64, n: u64) -> Result<RamificationDatum> {
    check_odd_prime(p)?;
    check_odd_n(n)?;
    let (e_plus, m_plus) = valuation(n as i64 + 2, p);
    let (e_minus, m_minus) = valuation(n as i64 - 2, p);
    Ok(if e_plus <= e_minus {
        RamificationDatum { p, a: e_plus, b: e_minus, m: m_plus, k: m_minus, swapped: false }
    } else {
        RamificationDatum { p, a: e_minus, b: e_plus, m: m_minus, k: m_plus, swapped: true }
    })
}

/// `(1 - p^-2)(1 + chi_p(4 - n^2) / p)` for `p` not dividing `n^2 - 4`.
pub fn density_unramified(p: u64, n: u64) -> Result<Rational> {
    check_odd_prime(p)?;
    check_odd_n(n)?;
    let disc = 4 - (n as i64) * (n as i64);
    let chi = kronecker(disc, p as i64)?;
    if chi == 0 {
        return Err(Error::WrongBranch(format!("{p} divides {n}^2 - 4")));
    }
    let p = p as i64;
    Ok(Rational::new((p * p - 1) * (p + chi as i64), p * p * p))
}

/// Closed form at an odd prime dividing `n^2 - 4`.
pub fn density_ramified_odd(p: u64, n: u64) -> Result<Rational> {
    let datum = ramification_datum(p, n)?;
    if !datum.is_ramified() {
        return Err(Error::WrongBranch(format!("{p} does not divide {n}^2 - 4")));
    }
    let RamificationDatum { a, b, m, k, .. } = datum;
    let pb = BigInt::from(p);
    let pw = |e: u32| -> BigInt { Pow::pow(&pb, e) };
    let one = BigInt::from(1);
    let tail = pw(a + 1) - &one;
    let value = if (a + b) % 2 == 0 {
        let chi = kronecker(-(m * k), p as i64)?;
        let half = (a + b) / 2;
        let num = (&pb + &one)
            * (tail * BigInt::from(chi - 1)
                + BigInt::from(a + 1) * (&pb * &pb - &one) * pw(half));
        Rational::new(num, pw(3 + half))
    } else {
        let half = (a + b).div_ceil(2);
        let num = (&pb + &one) * (&pb + &one) * (BigInt::from(a + 1) * (&pb - &one) * pw(half) - tail);
        Rational::new(num, pw(3 + half))
    };
    Ok(value)
}

/// Unramified or ramified closed form, whichever applies at the odd prime `p`.
pub fn density_closed_form(p: u64, n: u64) -> Result<Rational> {
    if ramification_datum(p, n)?.is_ramified() {
        density_ramified_odd(p, n)
    } else {
        density_unramified(p, n)
    }
}

/// `2 pi^3 sqrt(n^2 - 4)`.
pub fn density_archimedean(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("archimedean density needs n ≥ 2"));
    }
    let n = n as f64;
    Ok(2.0 * PI.powi(3) * (n * n - 4.0).sqrt())
}
