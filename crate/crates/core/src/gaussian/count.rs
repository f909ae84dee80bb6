use std::ops::ControlFlow;

use rayon::prelude::*;

use super::{GaussianInt, MatGamma};
use crate::arith::four_square_reps;
use crate::capacity::Capacity;
use crate::error::{Error, Result};

fn isqrt(m: i128) -> i128 {
    let mut r = (m as f64).sqrt() as i128;
    while r * r > m {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= m {
        r += 1;
    }
    r
}

/// Calls `f` on every unimodular `(a b; c d)` with norm-square `n` whose
/// top row is `(a, b)`.
///
/// With `(c0, d0)` one solution of `ad - bc = 1`, every solution is
/// `(c0, d0) + lambda (a, b)`, and by Lagrange's identity
/// `|c|^2 + |d|^2 = (|w + lambda s|^2 + 1) / s` where `s = |a|^2 + |b|^2`
/// and `w = conj(a) c0 + conj(b) d0`. So the candidates are exactly the
/// lattice points of `w + s Z[i]` on the circle of radius^2 `s (n - s) - 1`.
fn for_each_completion(
    a: GaussianInt,
    b: GaussianInt,
    n: i64,
    f: &mut impl FnMut(MatGamma) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let s = a.norm() + b.norm();
    if s == 0 || s >= n {
        return ControlFlow::Continue(());
    }
    let (g, x, y) = a.ext_gcd(b);
    if !g.is_unit() {
        return ControlFlow::Continue(());
    }
    let inv = g.conj();
    let d0 = x * inv;
    let c0 = -(y * inv);
    let w = a.conj() * c0 + b.conj() * d0;

    let radius2 = s as i128 * (n - s) as i128 - 1;
    let r = isqrt(radius2);
    let s128 = s as i128;
    // smallest X >= -r with X = w.re (mod s)
    let mut xs = -r + (w.re as i128 + r).rem_euclid(s128);
    while xs <= r {
        let y2 = radius2 - xs * xs;
        let yy = isqrt(y2);
        if yy * yy == y2 {
            let ys: &[i128] = if yy == 0 { &[0] } else { &[yy, -yy] };
            for &ys in ys {
                if (ys - w.im as i128).rem_euclid(s128) != 0 {
                    continue;
                }
                let lambda = GaussianInt::new(
                    ((xs - w.re as i128) / s128) as i64,
                    ((ys - w.im as i128) / s128) as i64,
                );
                let m = MatGamma::new(a, b, c0 + lambda * a, d0 + lambda * b);
                debug_assert!(m.is_unimodular() && m.norm_square() == n as u64);
                f(m)?;
            }
        }
        xs += s128;
    }
    ControlFlow::Continue(())
}

fn top_rows(n: u64) -> Vec<(GaussianInt, GaussianInt)> {
    (1..n)
        .flat_map(four_square_reps)
        .map(|v| {
            let [a1, a2, b1, b2] = v.0;
            (GaussianInt::new(a1, a2), GaussianInt::new(b1, b2))
        })
        .collect()
}

/// Visits every element of SL(2, Z[i]) with norm-square `n`, in a fixed
/// order, until `f` breaks.
pub fn for_each_gamma(n: u64, mut f: impl FnMut(MatGamma) -> ControlFlow<()>) {
    for (a, b) in top_rows(n) {
        if for_each_completion(a, b, n as i64, &mut f).is_break() {
            return;
        }
    }
}

/// Exact number of `gamma` in SL(2, Z[i]) with `||gamma||^2 = n`.
pub fn count_gamma_exact(n: u64, capacity: &Capacity) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("count_gamma_exact needs n >= 1"));
    }
    capacity.check_n(n)?;
    let count = top_rows(n)
        .into_par_iter()
        .map(|(a, b)| {
            let mut k = 0u64;
            let _ = for_each_completion(a, b, n as i64, &mut |_| {
                k += 1;
                ControlFlow::Continue(())
            });
            k
        })
        .sum();
    Ok(count)
}
