//! The real quadratic field Q(sqrt3).
//!
//! A value is stored as the ordered pair `(rat, root)` meaning
//! `rat + root*sqrt3`; both parts are exact rationals and there is no
//! floating surrogate anywhere. Division rationalises by the conjugate and is
//! exact; the field norm `rat^2 - 3*root^2` vanishes only at zero.

use super::{PrecisionContext, Rational, Real};
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SqrtThree {
    rat: Rational,
    root: Rational,
}

impl SqrtThree {
    pub fn new(rat: Rational, root: Rational) -> Self {
        SqrtThree { rat, root }
    }

    pub fn zero() -> Self {
        SqrtThree::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        SqrtThree::new(Rational::one(), Rational::zero())
    }

    /// The generator sqrt3 itself.
    pub fn sqrt3() -> Self {
        SqrtThree::new(Rational::zero(), Rational::one())
    }

    /// 1/sqrt3 = sqrt3/3.
    pub fn inv_sqrt3() -> Self {
        SqrtThree::new(Rational::zero(), Rational::new(1, 3))
    }

    pub fn from_rational(r: Rational) -> Self {
        SqrtThree::new(r, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        SqrtThree::from_rational(Rational::from_int(n))
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn root(&self) -> &Rational {
        &self.root
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.root.is_zero()
    }

    pub fn is_pure_root(&self) -> bool {
        self.rat.is_zero()
    }

    /// Multiplicative inverse: (p + q*sqrt3)^-1 = (p - q*sqrt3)/(p^2 - 3 q^2).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &(&self.rat * &self.rat) - &(&Rational::from_int(3) * &(&self.root * &self.root));
        Ok(SqrtThree::new(&self.rat / &norm, &(-&self.root) / &norm))
    }

    pub fn div(&self, rhs: &SqrtThree) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        SqrtThree::new(&self.rat * r, &self.root * r)
    }

    /// Numeric value `rat + root*sqrt3` at the context precision.
    pub fn eval(&self, ctx: &PrecisionContext) -> Real {
        let r = Real::from_rational(&self.rat, ctx.bits());
        if self.root.is_zero() {
            return r;
        }
        let s = Real::sqrt3(ctx.bits()).mul(&Real::from_rational(&self.root, ctx.bits()));
        r.add(&s)
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.root.to_f64() * 3f64.sqrt()
    }

    /// Bit-exact JSON object {"rat":"p/q","root":"r/s"}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "rat": self.rat.json_str(), "root": self.root.json_str() })
    }
}

impl fmt::Display for SqrtThree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.root.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let root_mag = self.root.abs();
        let root_str = if root_mag.is_one() {
            "sqrt3".to_string()
        } else if root_mag.is_integer() {
            format!("{}*sqrt3", root_mag)
        } else if root_mag.numer() == &num_bigint::BigInt::from(1) {
            format!("sqrt3/{}", root_mag.denom())
        } else {
            format!("{}*sqrt3/{}", root_mag.numer(), root_mag.denom())
        };
        if self.rat.is_zero() {
            return write!(f, "{}{}", if self.root.is_negative() { "-" } else { "" }, root_str);
        }
        write!(
            f,
            "{} {} {}",
            self.rat,
            if self.root.is_negative() { "-" } else { "+" },
            root_str
        )
    }
}

impl fmt::Debug for SqrtThree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&SqrtThree> for &SqrtThree {
    type Output = SqrtThree;
    fn add(self, rhs: &SqrtThree) -> SqrtThree {
        SqrtThree::new(&self.rat + &rhs.rat, &self.root + &rhs.root)
    }
}

impl Sub<&SqrtThree> for &SqrtThree {
    type Output = SqrtThree;
    fn sub(self, rhs: &SqrtThree) -> SqrtThree {
        SqrtThree::new(&self.rat - &rhs.rat, &self.root - &rhs.root)
    }
}

/// (p + q sqrt3)(r + s sqrt3) = (pr + 3qs) + (ps + qr) sqrt3.
impl Mul<&SqrtThree> for &SqrtThree {
    type Output = SqrtThree;
    fn mul(self, rhs: &SqrtThree) -> SqrtThree {
        let three = Rational::from_int(3);
        SqrtThree::new(
            &(&self.rat * &rhs.rat) + &(&three * &(&self.root * &rhs.root)),
            &(&self.rat * &rhs.root) + &(&self.root * &rhs.rat),
        )
    }
}

impl Neg for &SqrtThree {
    type Output = SqrtThree;
    fn neg(self) -> SqrtThree {
        SqrtThree::new(-&self.rat, -&self.root)
    }
}

impl AddAssign<&SqrtThree> for SqrtThree {
    fn add_assign(&mut self, rhs: &SqrtThree) {
        self.rat += &rhs.rat;
        self.root += &rhs.root;
    }
}

/// Free-function aliases matching the operation names used elsewhere.
pub fn sqrt3_add(a: &SqrtThree, b: &SqrtThree) -> SqrtThree {
    a + b
}

pub fn sqrt3_mul(a: &SqrtThree, b: &SqrtThree) -> SqrtThree {
    a * b
}

pub fn sqrt3_div(a: &SqrtThree, b: &SqrtThree) -> Result<SqrtThree> {
    a.div(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3(p: (i64, i64), q: (i64, i64)) -> SqrtThree {
        SqrtThree::new(Rational::new(p.0, p.1), Rational::new(q.0, q.1))
    }

    #[test]
    fn norm_of_one_plus_sqrt3() {
        let a = s3((1, 1), (1, 1));
        let b = s3((1, 1), (-1, 1));
        assert_eq!(&a * &b, SqrtThree::from_int(-2));
    }

    #[test]
    fn root_over_root() {
        let a = s3((0, 1), (2, 3));
        let b = SqrtThree::sqrt3();
        assert_eq!(a.div(&b).unwrap(), SqrtThree::from_rational(Rational::new(2, 3)));
    }

    #[test]
    fn two_over_sqrt3_times_sqrt3() {
        // 2/sqrt3 stored as (0, 2/3); multiplying by sqrt3 gives 2.
        let a = s3((0, 1), (2, 3));
        assert_eq!(&a * &SqrtThree::sqrt3(), SqrtThree::from_int(2));
    }

    #[test]
    fn division_by_zero_rejected() {
        let a = SqrtThree::one();
        assert!(matches!(a.div(&SqrtThree::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(s3((5, 4), (0, 1)).to_string(), "5/4");
        assert_eq!(s3((0, 1), (2, 3)).to_string(), "2*sqrt3/3");
        assert_eq!(s3((0, 1), (-1, 1)).to_string(), "-sqrt3");
        assert_eq!(s3((1, 2), (1, 3)).to_string(), "1/2 + sqrt3/3");
    }
}
