//! Binary multiprecision floating point.
//!
//! A [`Real`] is `mant * 2^exp` with a signed big-integer mantissa of at most
//! `prec` bits. All arithmetic computes the exact result and then rounds once
//! to `prec` bits, round-to-nearest ties-to-even, so individual operations are
//! correctly rounded. Transcendental constants (pi, ln 2, sqrt 3) and the
//! natural log of a positive rational are computed in fixed point with guard
//! bits and a truncation bound below half an ulp of the working precision.

use super::Rational;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl Real {
    pub fn zero(prec: u32) -> Self {
        Real {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Real::rounded(BigInt::from(n), 0, prec)
    }

    /// Exact value `mant * 2^exp` rounded once to `prec` bits.
    pub fn rounded(mant: BigInt, exp: i64, prec: u32) -> Self {
        let mut r = Real { mant, exp, prec };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = self.mant.magnitude().bits();
        if bits <= u64::from(self.prec) {
            return;
        }
        let shift = bits - u64::from(self.prec);
        let (sign, mag) = (self.mant.sign(), self.mant.magnitude().clone());
        let low_mask = (BigUint::one() << shift) - BigUint::one();
        let rem = &mag & &low_mask;
        let mut hi = mag >> shift;
        let half = BigUint::one() << (shift - 1);
        match rem.cmp(&half) {
            Ordering::Greater => hi += BigUint::one(),
            Ordering::Equal => {
                if hi.bit(0) {
                    hi += BigUint::one();
                }
            }
            Ordering::Less => {}
        }
        // rounding can carry into an extra bit
        if hi.bits() > u64::from(self.prec) {
            hi >>= 1;
            self.exp += 1 + shift as i64;
        } else {
            self.exp += shift as i64;
        }
        self.mant = BigInt::from_biguint(sign, hi);
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Real {
        Real {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Real {
        Real {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn add(&self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Real::rounded(rhs.mant.clone(), rhs.exp, prec);
        }
        if rhs.is_zero() {
            return Real::rounded(self.mant.clone(), self.exp, prec);
        }
        let exp = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &rhs.mant << (rhs.exp - exp) as u64;
        Real::rounded(a + b, exp, prec)
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        Real::rounded(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }

    pub fn div(&self, rhs: &Real) -> Real {
        assert!(!rhs.is_zero(), "Real division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Real::zero(prec);
        }
        // scale the numerator so the quotient carries prec + 2 significant
        // bits, append a sticky bit when the division is inexact
        let extra =
            i64::from(prec) + 2 + rhs.mant.magnitude().bits() as i64 - self.mant.magnitude().bits() as i64;
        let extra = extra.max(0) as u64;
        let num = &self.mant << extra;
        let (q, r) = num_integer::Integer::div_rem(&num, &rhs.mant);
        let exp = self.exp - rhs.exp - extra as i64;
        if r.is_zero() {
            Real::rounded(q, exp, prec)
        } else {
            // sticky: true value lies strictly between q and q +/- 1
            let bump = if (self.mant.sign() == Sign::Minus) != (rhs.mant.sign() == Sign::Minus) {
                -1
            } else {
                1
            };
            Real::rounded((q << 1u32) + bump, exp - 1, prec)
        }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Real {
        if r.is_zero() {
            return Real::zero(prec);
        }
        let (num, den) = (r.numer(), r.denom());
        let extra = i64::from(prec) + 2 + den.magnitude().bits() as i64
            - num.magnitude().bits() as i64;
        let extra = extra.max(0) as u64;
        let n = num << extra;
        let (q, rem) = num_integer::Integer::div_rem(&n, den);
        let exp = -(extra as i64);
        if rem.is_zero() {
            Real::rounded(q, exp, prec)
        } else {
            let bump = if num.is_negative() { -1 } else { 1 };
            Real::rounded((q << 1u32) + bump, exp - 1, prec)
        }
    }

    /// Exact rational value of this float.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.magnitude().bits() as i64;
        // keep ~64 bits for the conversion, fold the rest into the exponent
        let drop = (bits - 64).max(0);
        let m = (&self.mant >> drop as u64).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp + drop) as i32)
    }

    pub fn cmp_value(&self, rhs: &Real) -> Ordering {
        match (self.mant.sign(), rhs.mant.sign()) {
            (Sign::Minus, Sign::NoSign | Sign::Plus) => return Ordering::Less,
            (Sign::NoSign | Sign::Plus, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let exp = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &rhs.mant << (rhs.exp - exp) as u64;
        a.cmp(&b)
    }

    pub fn powi(&self, e: u32) -> Real {
        let mut acc = Real::from_i64(1, self.prec);
        let mut sq = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// |self - rhs| as an f64-magnitude estimate, handy in tests.
    pub fn abs_diff_f64(&self, rhs: &Real) -> f64 {
        self.sub(rhs).abs().to_f64()
    }

    // ---- constants and logarithms (fixed-point internals) ----

    const GUARD: u32 = 24;

    /// pi to `prec` bits (Machin: pi = 16 atan(1/5) - 4 atan(1/239)).
    pub fn pi(prec: u32) -> Real {
        let w = prec + Self::GUARD;
        let v = atan_inv_fp(5, w) * 16 - atan_inv_fp(239, w) * 4;
        Real::rounded(v, -i64::from(w), prec)
    }

    /// ln 2 to `prec` bits (2 atanh(1/3)).
    pub fn ln2(prec: u32) -> Real {
        let w = prec + Self::GUARD;
        Real::rounded(atanh_inv_fp(3, w) * 2, -i64::from(w), prec)
    }

    /// sqrt 3 to `prec` bits.
    pub fn sqrt3(prec: u32) -> Real {
        let w = prec + Self::GUARD;
        let n = BigUint::from(3u32) << (2 * w as u64);
        Real::rounded(BigInt::from(n.sqrt()), -i64::from(w), prec)
    }

    /// Natural log of a positive rational to `prec` bits.
    pub fn ln_rational(q: &Rational, prec: u32) -> Real {
        assert!(q.is_positive(), "ln of a non-positive rational");
        let w = prec + Self::GUARD;
        // q = m * 2^e with m in [1, 2)
        let e = q.numer().magnitude().bits() as i64 - q.denom().magnitude().bits() as i64;
        let mut m = if e >= 0 {
            Rational::new(q.numer().clone(), q.denom() << e as u64)
        } else {
            Rational::new(q.numer() << (-e) as u64, q.denom().clone())
        };
        let mut e = e;
        if m < Rational::one() {
            m = &m * &Rational::from_int(2);
            e -= 1;
        }
        debug_assert!(m >= Rational::one() && m < Rational::from_int(2));
        // ln m = 2 atanh(t), t = (m-1)/(m+1) in [0, 1/3)
        let t = &(&m - &Rational::one()) / &(&m + &Rational::one());
        let t_fp = (t.numer() << u64::from(w)) / t.denom();
        let t2_num = &t_fp * &t_fp; // scaled by 2^{2w}
        let mut acc = t_fp.clone();
        let mut pow = t_fp;
        let mut k = 1u64;
        loop {
            pow = (&pow * &t2_num) >> (2 * u64::from(w));
            if pow.is_zero() {
                break;
            }
            k += 2;
            acc += &pow / BigInt::from(k);
        }
        let ln_m = acc * 2;
        let total = ln_m + atanh_inv_fp(3, w) * 2 * BigInt::from(e);
        Real::rounded(total, -i64::from(w), prec)
    }

    /// Decimal rendering with `digits` significant digits, round-to-nearest.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1) as i64;
        let neg = self.is_negative();
        // first estimate of floor(log10 |v|)
        let bits = self.mant.magnitude().bits() as i64 + self.exp;
        let mut dec_exp = ((bits as f64 - 0.5) * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let k = digits - 1 - dec_exp;
            let n = scale_decimal(self.mant.magnitude(), self.exp, k);
            let ndigits = n.to_string().len() as i64;
            if ndigits == digits {
                return render_decimal(neg, &n, dec_exp);
            }
            // estimate was off by one (or rounding carried): adjust
            dec_exp += ndigits - digits;
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits =
            ((f64::from(self.prec) - 8.0).max(8.0) / std::f64::consts::LOG2_10) as u32;
        write!(f, "{}", self.to_decimal(digits))
    }
}

/// floor/round of |mant| * 2^exp * 10^k as a non-negative integer.
fn scale_decimal(mag: &BigUint, exp: i64, k: i64) -> BigUint {
    let mut n = mag.clone();
    let mut e2 = exp;
    if k >= 0 {
        n *= BigUint::from(10u32).pow(k as u32);
    } else {
        // divide by 10^(-k) late, after the binary shift, to keep rounding tight
    }
    if e2 >= 0 {
        n <<= e2 as u64;
        e2 = 0;
    }
    let mut den = BigUint::one() << (-e2) as u64;
    if k < 0 {
        den *= BigUint::from(10u32).pow((-k) as u32);
    }
    // round(n / den)
    (&n + (&den >> 1u32)) / den
}

fn render_decimal(neg: bool, n: &BigUint, dec_exp: i64) -> String {
    let s = n.to_string();
    let digits = s.len() as i64;
    let sign = if neg { "-" } else { "" };
    if dec_exp >= digits + 6 || dec_exp < -6 {
        // scientific
        let mantissa = if s.len() == 1 {
            s.clone()
        } else {
            format!("{}.{}", &s[..1], &s[1..])
        };
        return format!("{sign}{mantissa}e{dec_exp}");
    }
    if dec_exp >= 0 {
        let ip = (dec_exp + 1) as usize;
        if ip >= s.len() {
            let zeros = "0".repeat(ip - s.len());
            format!("{sign}{s}{zeros}")
        } else {
            format!("{sign}{}.{}", &s[..ip], &s[ip..])
        }
    } else {
        let zeros = "0".repeat((-dec_exp - 1) as usize);
        format!("{sign}0.{zeros}{s}")
    }
}

/// atan(1/n) in fixed point scaled by 2^w.
fn atan_inv_fp(n: u64, w: u32) -> BigInt {
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut term = (BigInt::one() << u64::from(w)) / BigInt::from(n);
    let mut acc = BigInt::zero();
    let mut k = 0u64;
    let mut sign_plus = true;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if sign_plus {
            acc += t;
        } else {
            acc -= t;
        }
        term /= &n2;
        sign_plus = !sign_plus;
        k += 1;
    }
    acc
}

/// atanh(1/n) in fixed point scaled by 2^w.
fn atanh_inv_fp(n: u64, w: u32) -> BigInt {
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut term = (BigInt::one() << u64::from(w)) / BigInt::from(n);
    let mut acc = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        acc += &term / BigInt::from(2 * k + 1);
        term /= &n2;
        k += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_80: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862090";
    const LN2_80: &str = "0.6931471805599453094172321214581765680755001343602552541206800094933936219696947";

    fn close_to(decimal: &str, value: &Real, digits: usize) {
        let got = value.to_decimal(digits as u32 + 2);
        assert_eq!(&got[..digits.min(got.len())], &decimal[..digits.min(got.len())], "got {got}");
    }

    #[test]
    fn pi_and_ln2_to_75_digits() {
        let pi = Real::pi(280);
        close_to(PI_80, &pi, 76);
        let ln2 = Real::ln2(280);
        close_to(LN2_80, &ln2, 76);
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = Real::sqrt3(256);
        let diff = s.mul(&s).sub(&Real::from_i64(3, 256)).abs();
        assert!(diff.to_f64() < 1e-70, "diff {}", diff.to_f64());
    }

    #[test]
    fn ln_rational_matches_ln2() {
        let l = Real::ln_rational(&Rational::from_int(2), 256);
        assert!(l.sub(&Real::ln2(256)).abs().to_f64() < 1e-70);
        // ln(1) = 0
        assert!(Real::ln_rational(&Rational::one(), 128).is_zero());
        // ln(8/27)= 3 ln2 - 3 ln3 ; cross-check against ln(2/3)*3
        let a = Real::ln_rational(&Rational::new(8, 27), 200);
        let b = Real::ln_rational(&Rational::new(2, 3), 200);
        assert!(a.sub(&b.mul(&Real::from_i64(3, 200))).abs().to_f64() < 1e-50);
    }

    #[test]
    fn rounding_ties_to_even() {
        // 0b101 at prec 2: 5 -> 4 (tie, round to even)
        let r = Real::rounded(BigInt::from(5), 0, 2);
        assert_eq!(r.to_rational(), Rational::from_int(4));
        // 0b111 at prec 2: 7 -> 8
        let r = Real::rounded(BigInt::from(7), 0, 2);
        assert_eq!(r.to_rational(), Rational::from_int(8));
    }

    #[test]
    fn division_correctly_rounded() {
        let a = Real::from_i64(1, 64);
        let b = Real::from_i64(3, 64);
        let q = a.div(&b);
        // |q - 1/3| <= 2^-66
        let err = (&q.to_rational() - &Rational::new(1, 3)).abs();
        assert!(err < Rational::new(1, i64::MAX), "err {err}");
    }

    #[test]
    fn decimal_rendering() {
        let r = Real::from_rational(&Rational::new(1, 8), 128);
        assert_eq!(r.to_decimal(3), "0.125");
        let r = Real::from_rational(&Rational::new(-1234, 1), 128);
        assert_eq!(r.to_decimal(4), "-1234");
        let r = Real::from_rational(&Rational::new(1, 3), 128);
        assert_eq!(r.to_decimal(5), "0.33333");
        let r = Real::from_rational(&Rational::new(999996, 10), 128);
        assert_eq!(r.to_decimal(5), "100000");  // rounding carries a digit
    }

    #[test]
    fn decimal_rendering_extremes() {
        // small magnitudes stay in plain notation down to 1e-6
        let r = Real::from_rational(&Rational::new(1, 400000), 128);
        assert_eq!(r.to_decimal(3), "0.00000250");
        // below that, scientific
        let r = Real::from_rational(&Rational::new(3, 1_000_000_000), 128);
        assert_eq!(r.to_decimal(3), "3.00e-9");
        // huge values go scientific once far beyond the digit count
        let r = Real::from_rational(&Rational::new(7, 1).pow(40), 192);
        let s = r.to_decimal(6);
        assert!(s.ends_with("e33"), "{s}");
        assert!(Real::zero(64).to_decimal(10) == "0");
    }
}
