//! The y-coordinates of a Gaussian matrix and the global count of solutions
//! to `X X^t = diag(n+2, n-2)`.
//!
//! For `gamma = (a b; c d)` with `a = a1 + i a2` etc.,
//!
//! ```text
//! y1 = a1 + d1   y4 = a1 - d1   y3 = b1 + c1   y2 = b1 - c1
//! y5 = a2 + d2   y8 = a2 - d2   y7 = b2 + c2   y6 = b2 - c2
//! ```
//!
//! and `det = 1`, `||gamma||^2 = n` become
//!
//! ```text
//! y3^2 + y4^2 + y5^2 + y6^2 = n - 2
//! y1^2 + y2^2 + y7^2 + y8^2 = n + 2
//! y1 y5 + y2 y6 - y3 y7 - y4 y8 = 0
//! ```

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{four_square_reps, QuadVector};
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, MatGamma};

/// `(y1, .., y8)`, stored zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YVector(pub [i64; 8]);

impl YVector {
    /// One-based accessor matching the usual `y1..y8` labels.
    pub fn y(&self, k: usize) -> i64 {
        self.0[k - 1]
    }

    /// `y1 = y4`, `y2 = y3`, `y5 = y8`, `y6 = y7` (mod 2).
    pub fn has_integral_preimage(&self) -> bool {
        let y = |k| self.y(k);
        (y(1) - y(4)) % 2 == 0
            && (y(2) - y(3)) % 2 == 0
            && (y(5) - y(8)) % 2 == 0
            && (y(6) - y(7)) % 2 == 0
    }
}

/// `F = I4` and `G_n = diag(n+2, n-2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemForm {
    pub n: i64,
}

impl SystemForm {
    pub fn new(n: i64) -> Self {
        SystemForm { n }
    }

    pub fn f(&self) -> [[i64; 4]; 4] {
        let mut f = [[0; 4]; 4];
        for (i, row) in f.iter_mut().enumerate() {
            row[i] = 1;
        }
        f
    }

    pub fn g(&self) -> [[i64; 2]; 2] {
        [[self.n + 2, 0], [0, self.n - 2]]
    }

    /// `X F X^t == G`.
    pub fn is_solution(&self, x: &XMatrix) -> bool {
        x.gram() == self.g()
    }
}

/// The 2x4 matrix with rows `u = (y1, y2, -y7, -y8)` and `v = (y5, y6, y3, y4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XMatrix {
    pub u: QuadVector,
    pub v: QuadVector,
}

impl XMatrix {
    pub fn from_y(y: &YVector) -> Self {
        let y = |k| y.y(k);
        XMatrix {
            u: QuadVector([y(1), y(2), -y(7), -y(8)]),
            v: QuadVector([y(5), y(6), y(3), y(4)]),
        }
    }

    pub fn to_y(&self) -> YVector {
        let [u1, u2, u3, u4] = self.u.0;
        let [v1, v2, v3, v4] = self.v.0;
        YVector([u1, u2, v3, v4, v1, v2, -u3, -u4])
    }

    /// `X X^t`.
    pub fn gram(&self) -> [[i64; 2]; 2] {
        let uv = self.u.dot(&self.v);
        [[self.u.norm(), uv], [uv, self.v.norm()]]
    }

    /// The parity conditions of [`YVector::has_integral_preimage`] read off the rows.
    pub fn has_integral_preimage(&self) -> bool {
        let (u, v) = (self.u.0, self.v.0);
        (u[0] - v[3]) % 2 == 0
            && (u[1] - v[2]) % 2 == 0
            && (v[0] - u[3]) % 2 == 0
            && (v[1] - u[2]) % 2 == 0
    }
}

pub fn gamma_to_y(m: &MatGamma) -> YVector {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    YVector([
        a.re + d.re,
        b.re - c.re,
        b.re + c.re,
        a.re - d.re,
        a.im + d.im,
        b.im - c.im,
        b.im + c.im,
        a.im - d.im,
    ])
}

pub fn y_to_gamma(y: &YVector) -> Result<MatGamma> {
    if !y.has_integral_preimage() {
        return Err(Error::NonIntegralPreimage(format!("{:?}", y.0)));
    }
    let y = |k| y.y(k);
    let half = |s: i64| s / 2;
    Ok(MatGamma::new(
        GaussianInt::new(half(y(1) + y(4)), half(y(5) + y(8))),
        GaussianInt::new(half(y(3) + y(2)), half(y(7) + y(6))),
        GaussianInt::new(half(y(3) - y(2)), half(y(7) - y(6))),
        GaussianInt::new(half(y(1) - y(4)), half(y(5) - y(8))),
    ))
}

/// All three equations of the y-system hold for `(y, n)`.
pub fn check_y_system(y: &YVector, n: i64) -> bool {
    let y = |k| y.y(k);
    y(3) * y(3) + y(4) * y(4) + y(5) * y(5) + y(6) * y(6) == n - 2
        && y(1) * y(1) + y(2) * y(2) + y(7) * y(7) + y(8) * y(8) == n + 2
        && y(1) * y(5) + y(2) * y(6) - y(3) * y(7) - y(4) * y(8) == 0
}

fn row_sets(n: u64, capacity: &Capacity) -> Result<Option<(Vec<QuadVector>, Vec<QuadVector>)>> {
    if n < 2 {
        return Ok(None);
    }
    capacity.check_n(n)?;
    Ok(Some((four_square_reps(n + 2), four_square_reps(n - 2))))
}

fn count_pairs(n: u64, capacity: &Capacity, keep: impl Fn(&XMatrix) -> bool + Sync) -> Result<u64> {
    let Some((plus, minus)) = row_sets(n, capacity)? else {
        return Ok(0);
    };
    Ok(plus
        .par_iter()
        .map(|u| {
            minus
                .iter()
                .filter(|v| u.dot(v) == 0 && keep(&XMatrix { u: *u, v: **v }))
                .count() as u64
        })
        .sum())
}

/// Every integer `X` with `X X^t = diag(n+2, n-2)`; empty for `n < 2`.
pub fn enumerate_xf_solutions(n: u64, capacity: &Capacity) -> Result<Vec<XMatrix>> {
    let Some((plus, minus)) = row_sets(n, capacity)? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for u in &plus {
        for v in minus.iter().filter(|v| u.dot(v) == 0) {
            out.push(XMatrix { u: *u, v: *v });
        }
    }
    Ok(out)
}

/// Number of integer `X` with `X X^t = diag(n+2, n-2)`.
pub fn count_xf_solutions(n: u64, capacity: &Capacity) -> Result<u64> {
    count_pairs(n, capacity, |_| true)
}

/// Solutions that pull back to Gaussian matrices; equals the number of
/// elements of SL(2, Z[i]) with norm-square `n`.
pub fn count_parity_solutions(n: u64, capacity: &Capacity) -> Result<u64> {
    count_pairs(n, capacity, XMatrix::has_integral_preimage)
}

/// Both global counts at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParityGap {
    pub n: u64,
    pub xf_count: u64,
    pub parity_count: u64,
    /// `xf_count / parity_count`, absent when no solution pulls back.
    pub ratio: Option<f64>,
}

pub fn parity_gap(n: u64, capacity: &Capacity) -> Result<ParityGap> {
    let xf_count = count_xf_solutions(n, capacity)?;
    let parity_count = count_parity_solutions(n, capacity)?;
    Ok(ParityGap {
        n,
        xf_count,
        parity_count,
        ratio: (parity_count > 0).then(|| xf_count as f64 / parity_count as f64),
    })
}
