use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational in lowest terms with a positive denominator.
///
/// Serialized as `{"num": .., "den": ..}`; components that do not fit in an
/// `i64` are written as decimal strings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn pow(&self, e: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, e))
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.numer(), self.denom())
    }
}

/// `num / den` rounded to double precision, also for operands far outside
/// the `f64` range.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if let (Some(a), Some(b)) = (num.to_f64(), den.to_f64()) {
        if a.is_finite() && b.is_finite() && a.abs() < 1e300 && b.abs() < 1e300
            && num.bits() <= 53 && den.bits() <= 53 {
                return a / b;
            }
    }
    // keep 64 significant bits of each operand and track the binary exponent
    let shift_of = |x: &BigInt| x.bits().saturating_sub(64);
    let (sn, sd) = (shift_of(num), shift_of(den));
    let a = (num >> sn).to_f64().unwrap_or(f64::NAN);
    let b = (den >> sd).to_f64().unwrap_or(f64::NAN);
    let exp = sn as i64 - sd as i64;
    a / b * 2f64.powi(exp.clamp(-2000, 2000) as i32)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn of(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntRepr::Small(x),
            None => IntRepr::Big(v.to_string()),
        }
    }

    fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(x) => Ok(BigInt::from(x)),
            IntRepr::Big(s) => s.parse().map_err(E::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: IntRepr,
    den: IntRepr,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: IntRepr::of(self.numer()),
            den: IntRepr::of(self.denom()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(d)?;
        let num = repr.num.into_bigint::<D::Error>()?;
        let den = repr.den.into_bigint::<D::Error>()?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn serde_shape() {
        let r = Rational::new(49152, 32768);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, r#"{"num":3,"den":2}"#);
        let big = Rational::new(BigInt::from(7).pow(80), 3);
        let js = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<Rational>(&js).unwrap(), big);
    }

    #[test]
    fn huge_ratio_to_f64() {
        let a = BigInt::from(3).pow(2000);
        let b = BigInt::from(3).pow(1999) * 2;
        assert!((ratio_to_f64(&a, &b) - 1.5).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn always_lowest_terms(a in -10_000i64..10_000, b in 1i64..10_000, c in -500i64..500, d in 1i64..500) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            for r in [&x + &y, &x - &y, &x * &y] {
                prop_assert!(r.denom() > &BigInt::zero());
                prop_assert!(r.numer().gcd(r.denom()).is_one());
            }
        }
    }
}
