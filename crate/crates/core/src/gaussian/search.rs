use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::count::for_each_gamma;
use super::{GaussianInt, MatGamma};
use crate::error::{Error, Result};

/// How a witness was (or was not) found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// `c = 1, a = 1, b = d - 1`; hits `n` when `2n - 5` is a sum of two squares.
    Family,
    /// `c = 1, b = ad - 1` over all `(a, d)`.
    CSweep,
    /// Full enumeration of SL(2, Z[i]) at norm-square `n`.
    Exhaustive,
    /// Family, then sweep, then exhaustive.
    Auto,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "family" => Ok(Strategy::Family),
            "c-sweep" | "sweep" => Ok(Strategy::CSweep),
            "exhaustive" => Ok(Strategy::Exhaustive),
            "auto" => Ok(Strategy::Auto),
            other => Err(Error::invalid(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub n: u64,
    pub witness: Option<MatGamma>,
    /// The strategy that produced the witness, or the last one tried.
    pub strategy: Strategy,
    pub elapsed: Duration,
}

impl WitnessReport {
    /// True iff a witness is present and it checks out.
    pub fn verified(&self) -> bool {
        self.witness
            .is_some_and(|m| m.is_unimodular() && m.norm_square() == self.n)
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid("n must be odd and ≥ 3"));
    }
    Ok(())
}

fn family(n: u64) -> Option<MatGamma> {
    // |d|^2 + |d - 1|^2 = n - 2 with d = x + iy  <=>  (2x - 1)^2 + (2y)^2 = 2n - 5
    let target = 2 * n as i64 - 5;
    let mut two_y = 0i64;
    while two_y * two_y <= target {
        let rest = target - two_y * two_y;
        let odd = (rest as f64).sqrt().round() as i64;
        if odd * odd == rest && odd % 2 == 1 {
            let d = GaussianInt::new((odd + 1) / 2, two_y / 2);
            return Some(MatGamma::new(1, d - GaussianInt::ONE, 1, d));
        }
        two_y += 2;
    }
    None
}

/// Gaussian integers with `|g|^2 <= bound`, by norm then coordinates.
fn gaussians_up_to(bound: i64) -> Vec<GaussianInt> {
    let r = (bound as f64).sqrt() as i64 + 1;
    let mut out: Vec<GaussianInt> = (-r..=r)
        .flat_map(|re| (-r..=r).map(move |im| GaussianInt::new(re, im)))
        .filter(|g| g.norm() <= bound)
        .collect();
    out.sort_by_key(|g| (g.norm(), g.re, g.im));
    out
}

/// Runs the `c = 1` sweep once and records, for every `n <= n_max`, the first
/// matrix `(a, ad - 1; 1, d)` met with norm-square `n`. Index `n` of the
/// result holds the witness for `n`.
pub fn sweep_table(n_max: u64) -> Vec<Option<MatGamma>> {
    let n_max = n_max as i64;
    let mut table = vec![None; n_max.max(0) as usize + 1];
    if n_max < 2 {
        return table;
    }
    let pool = gaussians_up_to(n_max - 1);
    for &a in &pool {
        let an = a.norm();
        for &d in &pool {
            if an + d.norm() + 1 > n_max {
                break;
            }
            let b = a * d - GaussianInt::ONE;
            let total = an + d.norm() + 1 + b.norm();
            if total <= n_max && table[total as usize].is_none() {
                table[total as usize] = Some(MatGamma::new(a, b, 1, d));
            }
        }
    }
    table
}

fn sweep(n: u64) -> Option<MatGamma> {
    let n = n as i64;
    let pool = gaussians_up_to(n - 1);
    for &a in &pool {
        for &d in &pool {
            if a.norm() + d.norm() + 1 > n {
                break;
            }
            let m = MatGamma::new(a, a * d - GaussianInt::ONE, 1, d);
            if m.norm_square() == n as u64 {
                return Some(m);
            }
        }
    }
    None
}

fn exhaustive(n: u64) -> Option<MatGamma> {
    let mut found = None;
    for_each_gamma(n, |m| {
        found = Some(m);
        ControlFlow::Break(())
    });
    found
}

/// Looks for `gamma` in SL(2, Z[i]) with `||gamma||^2 = n`.
///
/// A `None` witness means the chosen strategy exhausted its search space.
pub fn find_witness(n: u64, strategy: Strategy) -> Result<WitnessReport> {
    check_n(n)?;
    let start = Instant::now();
    let (witness, used) = match strategy {
        Strategy::Family => (family(n), Strategy::Family),
        Strategy::CSweep => (sweep(n), Strategy::CSweep),
        Strategy::Exhaustive => (exhaustive(n), Strategy::Exhaustive),
        Strategy::Auto => {
            if let Some(m) = family(n) {
                (Some(m), Strategy::Family)
            } else if let Some(m) = sweep(n) {
                (Some(m), Strategy::CSweep)
            } else {
                (exhaustive(n), Strategy::Exhaustive)
            }
        }
    };
    Ok(WitnessReport {
        n,
        witness,
        strategy: used,
        elapsed: start.elapsed(),
    })
}

/// One report per odd `n` in `[n_lo, n_hi]`, ascending.
///
/// The family is tried per `n`; whatever it misses is covered by a single
/// sweep pass up to the largest missed `n` (each report carries an equal
/// share of that pass's time), and the exhaustive search handles the rest.
/// Reports without a witness are failures.
pub fn verify_range(n_lo: u64, n_hi: u64, jobs: usize) -> Result<Vec<WitnessReport>> {
    if n_lo < 3 {
        return Err(Error::invalid("n_lo must be ≥ 3"));
    }
    if n_lo > n_hi {
        return Err(Error::invalid("n_lo must not exceed n_hi"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;

    pool.install(|| {
        let odd: Vec<u64> = (n_lo..=n_hi).filter(|n| n % 2 == 1).collect();
        let mut reports: Vec<WitnessReport> = odd
            .par_iter()
            .map(|&n| {
                let start = Instant::now();
                WitnessReport {
                    n,
                    witness: family(n),
                    strategy: Strategy::Family,
                    elapsed: start.elapsed(),
                }
            })
            .collect();

        let missed: Vec<usize> = (0..reports.len())
            .filter(|&i| reports[i].witness.is_none())
            .collect();
        if let Some(&last) = missed.last() {
            let start = Instant::now();
            let table = sweep_table(reports[last].n);
            let share = start.elapsed() / missed.len() as u32;
            for &i in &missed {
                let r = &mut reports[i];
                r.strategy = Strategy::CSweep;
                r.elapsed += share;
                r.witness = table[r.n as usize];
            }
        }

        reports
            .par_iter_mut()
            .filter(|r| r.witness.is_none())
            .for_each(|r| {
                let start = Instant::now();
                r.witness = exhaustive(r.n);
                r.strategy = Strategy::Exhaustive;
                r.elapsed += start.elapsed();
            });
        Ok(reports)
    })
}
