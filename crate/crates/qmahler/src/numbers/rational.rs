//! Arbitrary-precision rational numbers.
//!
//! Thin newtype over `num_rational::BigRational`: always reduced, denominator
//! always positive, arithmetic exact. The string form is `p/q` (the `/q` part
//! omitted for integers on [`std::fmt::Display`]; always present in
//! [`Rational::json_str`], which is the bit-exact golden form).

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "Rational with zero denominator");
        Rational(BigRational::new(num.into(), den))
    }

    pub fn from_int<N: Into<BigInt>>(n: N) -> Self {
        Rational(BigRational::from_integer(n.into()))
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

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Exact integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Rational::one();
        }
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Rational::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // fall back through a 200-bit shift for extreme magnitudes
            let (n, d) = (self.numer(), self.denom());
            let shifted = (n << 200u32) / d;
            shifted.to_f64().unwrap_or(f64::NAN) / 2f64.powi(200)
        })
    }

    /// Canonical `p/q` string (denominator always present).
    pub fn json_str(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// Parse `p/q`, an integer string, or a plain decimal like `-1.25`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            return Some(Rational::new(n, d));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
            let int_part = BigInt::from_str(if int.is_empty() { "0" } else { int }).ok()?;
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let frac_digits = frac.len() as u32;
            let frac_part = BigInt::from_str(frac).ok()?;
            let den = BigInt::from(10u32).pow(frac_digits);
            let num = &int_part * &den + BigInt::from(sign) * frac_part;
            return Some(Rational::new(num, den));
        }
        BigInt::from_str(s).ok().map(Rational::from_integer_big)
    }

    fn from_integer_big(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer_big(n)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Rational {
    pub fn cmp_abs(&self, other: &Rational) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    pub fn sign(&self) -> Sign {
        self.numer().sign()
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.json_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        let r = Rational::new(6, -4);
        assert_eq!(r, Rational::new(-3, 2));
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.json_str(), "-3/2");
        assert_eq!(Rational::from_int(5).json_str(), "5/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Rational::parse("3/4"), Some(Rational::new(3, 4)));
        assert_eq!(Rational::parse("-1.25"), Some(Rational::new(-5, 4)));
        assert_eq!(Rational::parse("7"), Some(Rational::from_int(7)));
        assert_eq!(Rational::parse("1/0"), None);
        assert_eq!(Rational::parse("0.2"), Some(Rational::new(1, 5)));
    }

    #[test]
    fn pow_negative() {
        let r = Rational::new(2, 3);
        assert_eq!(r.pow(-2), Rational::new(9, 4));
        assert_eq!(r.pow(0), Rational::one());
        assert_eq!(Rational::from_int(2).pow(10), Rational::from_int(1024));
    }
}
