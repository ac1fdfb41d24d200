//! Parity-tagged polynomials over Q(sqrt3).
//!
//! Every polynomial family in this crate contains only even or only odd
//! powers of its variable, so the representation stores a parity tag and the
//! coefficients of the surviving powers: slot `j` holds the coefficient of
//! `x^(2j)` (even parity) or `x^(2j+1)` (odd parity). Mixing parities in
//! addition is a structural error, not a silent widening.

use super::{PrecisionContext, Rational, Real, SqrtThree};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ParityPolynomial {
    parity: Parity,
    coeffs: Vec<SqrtThree>, // slot j: x^{2j} (even) or x^{2j+1} (odd); trailing zeros trimmed
}

impl ParityPolynomial {
    pub fn zero(parity: Parity) -> Self {
        ParityPolynomial {
            parity,
            coeffs: Vec::new(),
        }
    }

    pub fn from_slots(parity: Parity, mut coeffs: Vec<SqrtThree>) -> Self {
        while coeffs.last().is_some_and(SqrtThree::is_zero) {
            coeffs.pop();
        }
        ParityPolynomial { parity, coeffs }
    }

    pub fn constant(c: SqrtThree) -> Self {
        ParityPolynomial::from_slots(Parity::Even, vec![c])
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn slots(&self) -> &[SqrtThree] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in x, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        if self.coeffs.is_empty() {
            return None;
        }
        let j = (self.coeffs.len() - 1) as u64;
        Some(match self.parity {
            Parity::Even => 2 * j,
            Parity::Odd => 2 * j + 1,
        })
    }

    /// Exponent carried by slot `j`.
    pub fn exponent_of_slot(&self, j: usize) -> u64 {
        match self.parity {
            Parity::Even => 2 * j as u64,
            Parity::Odd => 2 * j as u64 + 1,
        }
    }

    /// Coefficient of `x^e`; zero when the slot is absent or the exponent has
    /// the other parity.
    pub fn coeff_of_power(&self, e: u64) -> SqrtThree {
        let matches = match self.parity {
            Parity::Even => e % 2 == 0,
            Parity::Odd => e % 2 == 1,
        };
        if !matches {
            return SqrtThree::zero();
        }
        let j = match self.parity {
            Parity::Even => (e / 2) as usize,
            Parity::Odd => ((e - 1) / 2) as usize,
        };
        self.coeffs.get(j).cloned().unwrap_or_else(SqrtThree::zero)
    }

    /// Sum; errors if both operands are nonzero with different parities.
    pub fn add(&self, rhs: &ParityPolynomial) -> Result<ParityPolynomial> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.parity != rhs.parity {
            return Err(Error::ParityMismatch(self.parity, rhs.parity));
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let a = self.coeffs.get(j).cloned().unwrap_or_else(SqrtThree::zero);
            let b = rhs.coeffs.get(j).cloned().unwrap_or_else(SqrtThree::zero);
            out.push(&a + &b);
        }
        Ok(ParityPolynomial::from_slots(self.parity, out))
    }

    pub fn sub(&self, rhs: &ParityPolynomial) -> Result<ParityPolynomial> {
        self.add(&rhs.scale(&SqrtThree::from_int(-1)))
    }

    pub fn scale(&self, s: &SqrtThree) -> ParityPolynomial {
        if s.is_zero() {
            return ParityPolynomial::zero(self.parity);
        }
        ParityPolynomial::from_slots(self.parity, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> ParityPolynomial {
        self.scale(&SqrtThree::from_rational(r.clone()))
    }

    /// Product; the parity tag combines (odd*odd = even, even*odd = odd).
    pub fn mul(&self, rhs: &ParityPolynomial) -> ParityPolynomial {
        let parity = match (self.parity, rhs.parity) {
            (Parity::Even, Parity::Even) | (Parity::Odd, Parity::Odd) => Parity::Even,
            _ => Parity::Odd,
        };
        if self.is_zero() || rhs.is_zero() {
            return ParityPolynomial::zero(parity);
        }
        // exponents: self 2i+p1, rhs 2j+p2 -> 2(i+j) + p1 + p2; for odd*odd
        // the product exponent is 2(i+j+1), so the slot shifts by one.
        let shift = usize::from(self.parity == Parity::Odd && rhs.parity == Parity::Odd);
        let mut out = vec![SqrtThree::zero(); self.coeffs.len() + rhs.coeffs.len() - 1 + shift];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j + shift] = &out[i + j + shift] + &t;
            }
        }
        ParityPolynomial::from_slots(parity, out)
    }

    /// Exact Horner evaluation at a Q(sqrt3) point.
    pub fn eval_exact(&self, x: &SqrtThree) -> SqrtThree {
        if self.coeffs.is_empty() {
            return SqrtThree::zero();
        }
        let x2 = x * x;
        let mut acc = SqrtThree::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x2) + c;
        }
        if self.parity == Parity::Odd {
            acc = &acc * x;
        }
        acc
    }

    /// Correctly-rounded-per-operation Horner evaluation at a real point.
    pub fn eval_real(&self, x: &Real, ctx: &PrecisionContext) -> Real {
        let bits = ctx.bits();
        if self.coeffs.is_empty() {
            return Real::zero(bits);
        }
        let x2 = x.mul(x);
        let mut acc = Real::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x2).add(&c.eval(ctx));
        }
        if self.parity == Parity::Odd {
            acc = acc.mul(x);
        }
        acc
    }

    /// All coefficients rational (zero sqrt3-part)?
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(SqrtThree::is_rational)
    }

    /// Every coefficient individually in Q or in sqrt3*Q?
    pub fn coeffs_in_q_union_sqrt3q(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_rational() || c.is_pure_root())
    }

    /// Constant term (zero for odd parity).
    pub fn constant_term(&self) -> SqrtThree {
        self.coeff_of_power(0)
    }

    /// Nonzero only in the constant slot?
    pub fn is_constant(&self) -> bool {
        match self.parity {
            Parity::Even => self.coeffs.len() <= 1,
            Parity::Odd => self.is_zero(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "parity": self.parity.as_str(),
            "coeffs": self.coeffs.iter().map(SqrtThree::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ParityPolynomial {
    /// Descending powers, e.g. `x^4/4 + 3*x^2/4 - 73/8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for j in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let e = self.exponent_of_slot(j);
            let (neg, body) = term_string(c, e);
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParityPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Render one term `c * x^e` as (is_negative, magnitude-string).
fn term_string(c: &SqrtThree, e: u64) -> (bool, String) {
    let xs = match e {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{e}"),
    };
    if c.is_rational() || c.is_pure_root() {
        let (r, root) = if c.is_rational() {
            (c.rat().clone(), false)
        } else {
            (c.root().clone(), true)
        };
        let neg = r.is_negative();
        let mag = r.abs();
        let mut num = String::new();
        if !(mag.numer() == &num_bigint::BigInt::from(1) && (!xs.is_empty() || root)) {
            num.push_str(&mag.numer().to_string());
        }
        if root {
            if !num.is_empty() {
                num.push('*');
            }
            num.push_str("sqrt3");
        }
        if !xs.is_empty() {
            if !num.is_empty() {
                num.push('*');
            }
            num.push_str(&xs);
        }
        if num.is_empty() {
            num.push('1');
        }
        if !mag.is_integer() {
            num.push('/');
            num.push_str(&mag.denom().to_string());
        }
        (neg, num)
    } else {
        // mixed coefficient: parenthesise
        if xs.is_empty() {
            (false, format!("({c})"))
        } else {
            (false, format!("({c})*{xs}"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> SqrtThree {
        SqrtThree::from_rational(Rational::new(n, d))
    }

    #[test]
    fn display_matches_table_style() {
        // x^4/4 + 3x^2/4 - 73/8
        let p = ParityPolynomial::from_slots(
            Parity::Even,
            vec![rat(-73, 8), rat(3, 4), rat(1, 4)],
        );
        assert_eq!(p.to_string(), "x^4/4 + 3*x^2/4 - 73/8");
        // -x/2
        let q = ParityPolynomial::from_slots(Parity::Odd, vec![rat(-1, 2)]);
        assert_eq!(q.to_string(), "-x/2");
        // sqrt3 coefficient: -2*sqrt3*x^2/3 - sqrt3/3
        let b1 = ParityPolynomial::from_slots(
            Parity::Even,
            vec![
                SqrtThree::new(Rational::zero(), Rational::new(-1, 3)),
                SqrtThree::new(Rational::zero(), Rational::new(-2, 3)),
            ],
        );
        assert_eq!(b1.to_string(), "-2*sqrt3*x^2/3 - sqrt3/3");
    }

    #[test]
    fn parity_mismatch_is_error() {
        let p = ParityPolynomial::from_slots(Parity::Even, vec![rat(1, 1)]);
        let q = ParityPolynomial::from_slots(Parity::Odd, vec![rat(1, 1)]);
        assert!(p.add(&q).is_err());
        // zero in either parity is compatible with everything
        assert!(p.add(&ParityPolynomial::zero(Parity::Odd)).is_ok());
    }

    #[test]
    fn eval_exact_respects_parity() {
        // R1 = x^2/2 - 5/4 at 0 -> -5/4
        let r1 = ParityPolynomial::from_slots(Parity::Even, vec![rat(-5, 4), rat(1, 2)]);
        assert_eq!(r1.eval_exact(&SqrtThree::zero()), rat(-5, 4));
        // Y1 = -x^2 + 9/2 at 3 -> -9/2
        let y1 = ParityPolynomial::from_slots(Parity::Even, vec![rat(9, 2), rat(-1, 1)]);
        assert_eq!(y1.eval_exact(&SqrtThree::from_int(3)), rat(-9, 2));
        // odd: x^3 at sqrt3 -> 3 sqrt3
        let c = ParityPolynomial::from_slots(Parity::Odd, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(
            c.eval_exact(&SqrtThree::sqrt3()),
            SqrtThree::new(Rational::zero(), Rational::from_int(3))
        );
    }

    #[test]
    fn mul_parity_and_shift() {
        // x * x = x^2
        let x = ParityPolynomial::from_slots(Parity::Odd, vec![rat(1, 1)]);
        let x2 = x.mul(&x);
        assert_eq!(x2.parity(), Parity::Even);
        assert_eq!(x2.coeff_of_power(2), rat(1, 1));
        assert_eq!(x2.degree(), Some(2));
    }

    #[test]
    fn approx_eval_agrees_with_exact_to_70_digits() {
        let ctx = PrecisionContext::with_bits(256);
        // p(x) = 3x^2/7 - 11/5 at x = 22/7 (rational point, exact reference)
        let p = ParityPolynomial::from_slots(Parity::Even, vec![rat(-11, 5), rat(3, 7)]);
        let x = Rational::new(22, 7);
        let exact = p.eval_exact(&SqrtThree::from_rational(x.clone()));
        let approx = p.eval_real(&Real::from_rational(&x, ctx.bits()), &ctx);
        let exact_real = Real::from_rational(exact.rat(), ctx.bits());
        assert!(approx.sub(&exact_real).abs().to_f64() < 1e-70);
    }
}
