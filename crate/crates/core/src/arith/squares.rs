use serde::{Deserialize, Serialize};

/// Integer 4-vector; a row of the 2x4 matrix `X` in `X X^t = diag(n+2, n-2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadVector(pub [i64; 4]);

impl QuadVector {
    pub fn norm(&self) -> i64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn dot(&self, other: &QuadVector) -> i64 {
        self.0.iter().zip(other.0.iter()).map(|(x, y)| x * y).sum()
    }
}

fn isqrt(m: u64) -> u64 {
    let mut r = (m as f64).sqrt() as u64;
    while r * r > m {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= m {
        r += 1;
    }
    r
}

/// Walks every signed ordered 4-tuple with square sum `m`, first coordinate
/// descending, pruning on the remaining budget.
fn for_each_rep(m: u64, mut f: impl FnMut([i64; 4])) {
    let r0 = isqrt(m) as i64;
    for x0 in (-r0..=r0).rev() {
        let m1 = m - (x0 * x0) as u64;
        let r1 = isqrt(m1) as i64;
        for x1 in (-r1..=r1).rev() {
            let m2 = m1 - (x1 * x1) as u64;
            let r2 = isqrt(m2) as i64;
            for x2 in (-r2..=r2).rev() {
                let m3 = m2 - (x2 * x2) as u64;
                let x3 = isqrt(m3) as i64;
                if (x3 * x3) as u64 != m3 {
                    continue;
                }
                f([x0, x1, x2, x3]);
                if x3 != 0 {
                    f([x0, x1, x2, -x3]);
                }
            }
        }
    }
}

/// All signed, ordered integer 4-tuples whose squares sum to `m`.
pub fn four_square_reps(m: u64) -> Vec<QuadVector> {
    let mut out = Vec::new();
    for_each_rep(m, |v| out.push(QuadVector(v)));
    out
}

/// `r4(m)`, the length of [`four_square_reps`] without materializing it.
pub fn four_square_count(m: u64) -> u64 {
    let mut count = 0;
    for_each_rep(m, |_| count += 1);
    count
}
