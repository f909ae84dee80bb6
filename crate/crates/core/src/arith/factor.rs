use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization of a positive integer; primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Factorization of the product of two coprime-or-not factorizations.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut factors = self.factors.clone();
        for &(p, e) in &other.factors {
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some((_, f)) => *f += e,
                None => factors.push((p, e)),
            }
        }
        factors.sort_unstable();
        Factorization {
            value: self.value.saturating_mul(other.value),
            factors,
        }
    }
}

/// Trial division up to `sqrt(m)`.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut rest = m;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut p = 5u64;
    while p.saturating_mul(p) <= rest {
        push(p, &mut rest);
        push(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { value: m, factors })
}

/// p-adic valuation and cofactor of a nonzero integer.
pub fn valuation(mut v: i64, p: u64) -> (u32, i64) {
    debug_assert!(v != 0 && p >= 2);
    let p = p as i64;
    let mut e = 0;
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    (e, v)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}
