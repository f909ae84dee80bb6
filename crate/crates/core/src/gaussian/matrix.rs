use std::fmt;

use serde::{Deserialize, Serialize};

use super::int::{wide_mul, GaussianInt};

/// 2x2 matrix `(a b; c d)` over Z[i]. Serialized as `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[[GaussianInt; 2]; 2]", into = "[[GaussianInt; 2]; 2]")]
pub struct MatGamma {
    pub a: GaussianInt,
    pub b: GaussianInt,
    pub c: GaussianInt,
    pub d: GaussianInt,
}

impl MatGamma {
    pub const IDENTITY: MatGamma = MatGamma {
        a: GaussianInt::ONE,
        b: GaussianInt::ZERO,
        c: GaussianInt::ZERO,
        d: GaussianInt::ONE,
    };

    pub fn new(
        a: impl Into<GaussianInt>,
        b: impl Into<GaussianInt>,
        c: impl Into<GaussianInt>,
        d: impl Into<GaussianInt>,
    ) -> Self {
        MatGamma {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn entries(&self) -> [GaussianInt; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Sum of the squares of all eight integer coordinates.
    pub fn norm_square(&self) -> u64 {
        self.entries()
            .iter()
            .map(|g| {
                let (re, im) = (g.re as i128, g.im as i128);
                (re * re + im * im) as u128
            })
            .sum::<u128>() as u64
    }

    /// `ad - bc`, with 128-bit intermediate products.
    pub fn determinant(&self) -> GaussianInt {
        let ad = wide_mul(self.a, self.d);
        let bc = wide_mul(self.b, self.c);
        GaussianInt::new((ad.0 - bc.0) as i64, (ad.1 - bc.1) as i64)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant() == GaussianInt::ONE
    }

    /// Multiplies every entry by `u`; the determinant picks up `u^2`.
    pub fn scale(&self, u: GaussianInt) -> MatGamma {
        MatGamma::new(u * self.a, u * self.b, u * self.c, u * self.d)
    }
}

impl From<[[GaussianInt; 2]; 2]> for MatGamma {
    fn from(m: [[GaussianInt; 2]; 2]) -> Self {
        MatGamma::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<MatGamma> for [[GaussianInt; 2]; 2] {
    fn from(m: MatGamma) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

impl fmt::Display for MatGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
