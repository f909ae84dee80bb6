use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_odd_n, is_prime};
use crate::arith::{valuation, Rational};
use crate::capacity::Capacity;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Direct count over all `X` modulo `p^t`.
    Naive,
    /// Product of two square-sum counts; odd `p` only.
    Reduced,
}

impl std::str::FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(OracleMode::Naive),
            "reduced" => Ok(OracleMode::Reduced),
            other => Err(Error::invalid(format!("unknown oracle mode {other:?}"))),
        }
    }
}

/// Number of `X` modulo `p^t` with `X X^t = diag(n+2, n-2)`, and the
/// density `raw_count / p^(5t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCount {
    pub p: u64,
    pub n: u64,
    pub t: u32,
    pub mode: OracleMode,
    pub raw_count: u64,
    pub density: Rational,
}

/// `ord_p(n^2 - 4) + 1`, the level at which the count is taken by default.
pub fn default_level(p: u64, n: u64) -> Result<u32> {
    check_odd_n(n)?;
    let (e1, _) = valuation(n as i64 - 2, p);
    let (e2, _) = valuation(n as i64 + 2, p);
    Ok(e1 + e2 + 1)
}

fn modulus(p: u64, t: u32) -> Option<u64> {
    p.checked_pow(t)
}

fn capacity_error(what: &'static str, requested: Option<u128>, limit: u128) -> Error {
    Error::Capacity {
        what,
        requested: requested.unwrap_or(u128::MAX),
        limit,
    }
}

pub fn density_counting_oracle(
    p: u64,
    n: u64,
    t: u32,
    mode: OracleMode,
    capacity: &Capacity,
) -> Result<OracleCount> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    check_odd_n(n)?;
    if t == 0 {
        return Err(Error::invalid("t must be ≥ 1"));
    }
    let raw_count = match mode {
        OracleMode::Naive => {
            let work = (p as u128).checked_pow(8 * t);
            if work.is_none_or(|w| w > capacity.max_pt_naive) {
                return Err(capacity_error("p^(8t)", work, capacity.max_pt_naive));
            }
            count_naive(modulus(p, t).expect("within capacity"), n)
        }
        OracleMode::Reduced => {
            if p == 2 {
                return Err(Error::invalid("reduced oracle mode needs an odd prime"));
            }
            let work = (p as u128).checked_pow(2 * t);
            if work.is_none_or(|w| w > capacity.max_pt_reduced) {
                return Err(capacity_error("p^(2t)", work, capacity.max_pt_reduced));
            }
            count_reduced(p, modulus(p, t).expect("within capacity"), n)
        }
    };
    let scale = num_bigint::BigInt::from(p).pow(5 * t);
    Ok(OracleCount {
        p,
        n,
        t,
        mode,
        raw_count,
        density: Rational::new(raw_count, scale),
    })
}

/// Buckets all row vectors modulo `q` by norm and counts orthogonal pairs
/// between the `n + 2` and `n - 2` buckets.
fn count_naive(q: u64, n: u64) -> u64 {
    let q = q as usize;
    let target_u = (n as usize + 2) % q;
    let target_v = (n as usize - 2) % q;
    let mut us: Vec<[u32; 4]> = Vec::new();
    let mut vs: Vec<[u32; 4]> = Vec::new();
    for i in 0..q.pow(4) {
        let x = [i % q, (i / q) % q, (i / (q * q)) % q, i / (q * q * q)];
        let norm = x.iter().map(|v| v * v).sum::<usize>() % q;
        let x32 = x.map(|v| v as u32);
        if norm == target_u {
            us.push(x32);
        }
        if norm == target_v {
            vs.push(x32);
        }
    }
    let q = q as u64;
    us.par_iter()
        .map(|u| {
            vs.iter()
                .filter(|v| {
                    let dot: u64 = u.iter().zip(v.iter()).map(|(&a, &b)| a as u64 * b as u64).sum();
                    dot.is_multiple_of(q)
                })
                .count() as u64
        })
        .sum()
}

/// `#{x mod q : x^2 = r}` for every residue `r`.
fn square_counts(q: u64, scale: u64) -> Vec<u64> {
    let mut out = vec![0u64; q as usize];
    for x in 0..q {
        out[((x * x % q) * scale % q) as usize] += 1;
    }
    out
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let q = a.len();
    let mut out = vec![0u64; q];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[(i + j) % q] += x * y;
        }
    }
    out
}

fn at(dist: &[u64], other: &[u64], target: usize) -> u64 {
    let q = dist.len();
    (0..q).map(|r| dist[r] * other[(target + q - r) % q]).sum()
}

/// For odd `p` one of `n +- 2` is a unit; call it `A` and the other `B`.
/// The orthogonal group of `I4` modulo `p^t` is transitive on rows of norm
/// `A`, and the complement of `(x, y, 0, 0)` with `x^2 + y^2 = A` is
/// `<A, 1, 1>`, so the count is `N_{I4}(A) * N_{<A,1,1>}(B)`.
fn count_reduced(p: u64, q: u64, n: u64) -> u64 {
    let (a, b) = if !(n + 2).is_multiple_of(p) { (n + 2, n - 2) } else { (n - 2, n + 2) };
    let (a, b) = ((a % q) as usize, (b % q) as usize);
    let squares = square_counts(q, 1);
    let pairs = convolve(&squares, &squares);
    let rows = at(&pairs, &pairs, a);
    let scaled = square_counts(q, a as u64);
    let complement = at(&scaled, &pairs, b);
    rows * complement
}

/// Density at 2 from the count modulo 8.
pub fn density_dyadic(n: u64) -> Result<OracleCount> {
    if n.is_multiple_of(2) {
        return Err(Error::invalid("the dyadic density is defined here for odd n only"));
    }
    density_counting_oracle(2, n, 3, OracleMode::Naive, &Capacity::default())
}
