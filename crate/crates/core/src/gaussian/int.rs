use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Element `re + im*i` of Z[i]. Serialized as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };
    pub const I: GaussianInt = GaussianInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub const fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    /// `|z|^2`.
    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// The four units `1, i, -1, -i`.
    pub fn units() -> [GaussianInt; 4] {
        [
            GaussianInt::ONE,
            GaussianInt::I,
            -GaussianInt::ONE,
            -GaussianInt::I,
        ]
    }

    /// Quotient rounded to the nearest Gaussian integer; `None` for zero divisor.
    pub fn div_round(self, rhs: GaussianInt) -> Option<GaussianInt> {
        let n = rhs.norm() as i128;
        if n == 0 {
            return None;
        }
        let num = wide_mul(self, rhs.conj());
        let round = |x: i128| -> i64 { (2 * x + n).div_euclid(2 * n) as i64 };
        Some(GaussianInt::new(round(num.0), round(num.1)))
    }

    /// Exact quotient if `rhs` divides `self`.
    pub fn div_exact(self, rhs: GaussianInt) -> Option<GaussianInt> {
        let n = rhs.norm() as i128;
        if n == 0 {
            return None;
        }
        let (re, im) = wide_mul(self, rhs.conj());
        (re % n == 0 && im % n == 0).then(|| GaussianInt::new((re / n) as i64, (im / n) as i64))
    }

    /// `(g, x, y)` with `self*x + other*y = g`, `g` a greatest common divisor.
    pub fn ext_gcd(self, other: GaussianInt) -> (GaussianInt, GaussianInt, GaussianInt) {
        let (mut r0, mut r1) = (self, other);
        let (mut x0, mut x1) = (GaussianInt::ONE, GaussianInt::ZERO);
        let (mut y0, mut y1) = (GaussianInt::ZERO, GaussianInt::ONE);
        while r1 != GaussianInt::ZERO {
            let q = r0.div_round(r1).expect("nonzero divisor");
            (r0, r1) = (r1, r0 - q * r1);
            (x0, x1) = (x1, x0 - q * x1);
            (y0, y1) = (y1, y0 - q * y1);
        }
        (r0, x0, y0)
    }
}

/// Product with 128-bit intermediates.
pub(crate) fn wide_mul(a: GaussianInt, b: GaussianInt) -> (i128, i128) {
    let (ar, ai, br, bi) = (a.re as i128, a.im as i128, b.re as i128, b.im as i128);
    (ar * br - ai * bi, ar * bi + ai * br)
}

impl From<[i64; 2]> for GaussianInt {
    fn from(v: [i64; 2]) -> Self {
        GaussianInt::new(v[0], v[1])
    }
}

impl From<GaussianInt> for [i64; 2] {
    fn from(g: GaussianInt) -> Self {
        [g.re, g.im]
    }
}

impl From<i64> for GaussianInt {
    fn from(re: i64) -> Self {
        GaussianInt::new(re, 0)
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}
