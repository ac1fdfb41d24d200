//! Truncated Laurent series with parity-polynomial coefficients.
//!
//! A series is `sum_{m >= valuation} c_m T^m` truncated at T^order, with each
//! c_m a [`ParityPolynomial`] in the symbol x. The valuation never drops
//! below -1: the only singular factors that occur are simple csc/cot poles,
//! and the -1 slot is tracked but excluded from factorial-normalised
//! extraction. Trigonometric generators with a constant phase evaluate the
//! phase's sine/cosine exactly into Q(sqrt3).

use crate::error::{Error, Result};
use crate::numbers::{Parity, ParityPolynomial, Rational, SqrtThree};

#[derive(Clone, Debug)]
pub struct LaurentSeries {
    valuation: i64,
    order: i64,
    /// coeffs[i] is the coefficient of T^{valuation + i}; empty means zero.
    coeffs: Vec<ParityPolynomial>,
}

impl LaurentSeries {
    pub fn new(mut valuation: i64, mut coeffs: Vec<ParityPolynomial>, order: i64) -> Result<Self> {
        while coeffs.first().is_some_and(ParityPolynomial::is_zero) {
            coeffs.remove(0);
            valuation += 1;
        }
        while coeffs.len() as i64 > order - valuation + 1 {
            coeffs.pop();
        }
        if !coeffs.is_empty() && valuation < -1 {
            return Err(Error::Domain(format!(
                "Laurent valuation {valuation} below -1"
            )));
        }
        Ok(LaurentSeries {
            valuation,
            order,
            coeffs,
        })
    }

    pub fn zero(order: i64) -> Self {
        LaurentSeries {
            valuation: 0,
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of T^m; errors if m exceeds the truncation order.
    pub fn coeff(&self, m: i64) -> Result<ParityPolynomial> {
        if m > self.order {
            return Err(Error::TruncationOrder {
                order: self.order,
                needed: m,
            });
        }
        let i = m - self.valuation;
        if i < 0 || i >= self.coeffs.len() as i64 {
            return Ok(ParityPolynomial::zero(Parity::Even));
        }
        Ok(self.coeffs[i as usize].clone())
    }

    pub fn add(&self, rhs: &LaurentSeries) -> Result<LaurentSeries> {
        if self.is_zero() {
            let mut out = rhs.clone();
            out.order = out.order.min(self.order);
            return LaurentSeries::new(out.valuation, out.coeffs, out.order);
        }
        if rhs.is_zero() {
            let mut out = self.clone();
            out.order = out.order.min(rhs.order);
            return LaurentSeries::new(out.valuation, out.coeffs, out.order);
        }
        let val = self.valuation.min(rhs.valuation);
        let order = self.order.min(rhs.order);
        let n = (order - val + 1).max(0) as usize;
        let mut out = vec![ParityPolynomial::zero(Parity::Even); n];
        for (i, slot) in out.iter_mut().enumerate() {
            let m = val + i as i64;
            *slot = self.coeff(m)?.add(&rhs.coeff(m)?)?;
        }
        LaurentSeries::new(val, out, order)
    }

    pub fn scale(&self, s: &SqrtThree) -> LaurentSeries {
        LaurentSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Product, truncated to the tightest order either operand supports.
    pub fn mul(&self, rhs: &LaurentSeries) -> Result<LaurentSeries> {
        let order = (self.order + rhs.valuation).min(rhs.order + self.valuation);
        if self.is_zero() || rhs.is_zero() {
            return Ok(LaurentSeries::zero(order));
        }
        let val = self.valuation + rhs.valuation;
        let n = (order - val + 1).max(0) as usize;
        let mut out = vec![ParityPolynomial::zero(Parity::Even); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n || b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b))?;
            }
        }
        LaurentSeries::new(val, out, order)
    }

    /// Reciprocal; requires the leading coefficient to be a nonzero constant
    /// polynomial. Result valuation is the negation of the input valuation.
    pub fn recip(&self) -> Result<LaurentSeries> {
        let lead = self
            .coeffs
            .first()
            .ok_or(Error::NonConstantLeading)?;
        if !lead.is_constant() || lead.is_zero() {
            return Err(Error::NonConstantLeading);
        }
        let lead_inv = lead.constant_term().inv()?;
        let val = -self.valuation;
        let order = self.order - 2 * self.valuation;
        let n = (order - val + 1).max(0) as usize;
        let mut out: Vec<ParityPolynomial> = Vec::with_capacity(n);
        out.push(ParityPolynomial::constant(lead_inv.clone()));
        for m in 1..n {
            // c_m of the product must vanish: sum_{i=0..m} self[i] * out[m-i] = 0
            let mut s = ParityPolynomial::zero(Parity::Even);
            for i in 1..=m {
                if i >= self.coeffs.len() || self.coeffs[i].is_zero() {
                    continue;
                }
                s = s.add(&self.coeffs[i].mul(&out[m - i]))?;
            }
            out.push(s.scale(&(&SqrtThree::zero() - &lead_inv)));
        }
        LaurentSeries::new(val, out, order)
    }
}

/// Generator selector for [`trig_series`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
    Csc,
    Cot,
    Sinh,
    Cosh,
    Exp,
}

/// Exact cosine and sine of `phase * pi`. Only phases whose trigonometric
/// values lie in Q(sqrt3) are representable: denominators 1, 2, 3, 6.
pub fn phase_cos_sin(phase: &Rational) -> Result<(SqrtThree, SqrtThree)> {
    let den = phase.denom();
    let ok = [1u32, 2, 3, 6]
        .iter()
        .any(|d| den == &num_bigint::BigInt::from(*d));
    if !ok {
        return Err(Error::UnsupportedPhase(phase.clone()));
    }
    // reduce to k * pi/6 with k mod 12
    let sixths = phase * &Rational::from_int(6);
    debug_assert!(sixths.is_integer());
    let twelf = (sixths.numer() % &num_bigint::BigInt::from(12))
        .to_string()
        .parse::<i64>()
        .unwrap()
        .rem_euclid(12);
    let half = Rational::new(1, 2);
    let r3half = SqrtThree::new(Rational::zero(), half.clone());
    let table = |k: i64| -> SqrtThree {
        match k.rem_euclid(12) {
            0 => SqrtThree::one(),
            1 => r3half.clone(),
            2 => SqrtThree::from_rational(half.clone()),
            3 => SqrtThree::zero(),
            4 => SqrtThree::from_rational(-&half),
            5 => (&SqrtThree::zero() - &r3half).clone(),
            6 => SqrtThree::from_int(-1),
            7 => (&SqrtThree::zero() - &r3half).clone(),
            8 => SqrtThree::from_rational(-&half),
            9 => SqrtThree::zero(),
            10 => SqrtThree::from_rational(half.clone()),
            11 => r3half.clone(),
            _ => unreachable!(),
        }
    };
    let k = twelf;
    Ok((table(k), table(3 - k))) // cos(k pi/6), sin(k pi/6) = cos((3-k) pi/6)
}

/// Truncated expansion of the named generator.
///
/// For Sin/Cos/Csc/Cot the argument is `scale*T + shift*pi` with both
/// parameters rational; the phase's sine and cosine must lie in Q(sqrt3).
/// For Sinh/Cosh/Exp the argument is the symbolic `x*T` and `scale`/`shift`
/// are ignored (the x powers ride in the coefficients).
pub fn trig_series(
    kind: TrigKind,
    scale: &Rational,
    shift: &Rational,
    order: i64,
) -> Result<LaurentSeries> {
    match kind {
        TrigKind::Sin => sin_like(scale, shift, order, true),
        TrigKind::Cos => sin_like(scale, shift, order, false),
        TrigKind::Csc => sin_like(scale, shift, order + 2, true)?.recip(),
        TrigKind::Cot => {
            let s = sin_like(scale, shift, order + 2, true)?;
            let c = sin_like(scale, shift, order + 2, false)?;
            c.mul(&s.recip()?)
        }
        TrigKind::Sinh => symbolic_x(order, ExpParity::OddOnly),
        TrigKind::Cosh => symbolic_x(order, ExpParity::EvenOnly),
        TrigKind::Exp => symbolic_x(order, ExpParity::Both),
    }
}

fn sin_like(scale: &Rational, shift: &Rational, order: i64, sine: bool) -> Result<LaurentSeries> {
    let (cos_ph, sin_ph) = phase_cos_sin(shift)?;
    // sin(cT + ph) = sin(cT)cos(ph) + cos(cT)sin(ph)
    // cos(cT + ph) = cos(cT)cos(ph) - sin(cT)sin(ph)
    let n = (order + 1).max(0) as usize;
    let mut coeffs = Vec::with_capacity(n);
    let mut pow = Rational::one(); // scale^m / m!
    for m in 0..n {
        if m > 0 {
            pow = &(&pow * scale) / &Rational::from_int(m as i64);
        }
        let c = if m % 2 == 1 {
            // sin(cT) slot: (-1)^{(m-1)/2} c^m/m!
            let sgn = if ((m - 1) / 2) % 2 == 0 { 1 } else { -1 };
            let base = &pow * &Rational::from_int(sgn);
            if sine {
                cos_ph.scale(&base)
            } else {
                (&SqrtThree::zero() - &sin_ph).scale(&base)
            }
        } else {
            // cos(cT) slot: (-1)^{m/2} c^m/m!
            let sgn = if (m / 2) % 2 == 0 { 1 } else { -1 };
            let base = &pow * &Rational::from_int(sgn);
            if sine {
                sin_ph.scale(&base)
            } else {
                cos_ph.scale(&base)
            }
        };
        coeffs.push(ParityPolynomial::constant(c));
    }
    LaurentSeries::new(0, coeffs, order)
}

enum ExpParity {
    OddOnly,
    EvenOnly,
    Both,
}

fn symbolic_x(order: i64, which: ExpParity) -> Result<LaurentSeries> {
    let n = (order + 1).max(0) as usize;
    let mut coeffs = Vec::with_capacity(n);
    let mut inv_fact = Rational::one();
    for m in 0..n {
        if m > 0 {
            inv_fact = &inv_fact / &Rational::from_int(m as i64);
        }
        let keep = match which {
            ExpParity::OddOnly => m % 2 == 1,
            ExpParity::EvenOnly => m % 2 == 0,
            ExpParity::Both => true,
        };
        if !keep {
            coeffs.push(ParityPolynomial::zero(Parity::Even));
            continue;
        }
        let parity = if m % 2 == 0 { Parity::Even } else { Parity::Odd };
        let slot = m / 2;
        let mut slots = vec![SqrtThree::zero(); slot + 1];
        slots[slot] = SqrtThree::from_rational(inv_fact.clone());
        coeffs.push(ParityPolynomial::from_slots(parity, slots));
    }
    LaurentSeries::new(0, coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn csc_half_t_leading_terms() {
        // csc(T/2) = 2 T^-1 + T/12 + ...
        let s = trig_series(TrigKind::Csc, &r(1, 2), &Rational::zero(), 4).unwrap();
        assert_eq!(s.valuation(), -1);
        assert_eq!(
            s.coeff(-1).unwrap().constant_term(),
            SqrtThree::from_int(2)
        );
        assert!(s.coeff(0).unwrap().is_zero());
        assert_eq!(
            s.coeff(1).unwrap().constant_term(),
            SqrtThree::from_rational(r(1, 12))
        );
    }

    #[test]
    fn sinh_xt_terms() {
        let s = trig_series(TrigKind::Sinh, &Rational::one(), &Rational::zero(), 5).unwrap();
        // coefficient of T^3 is x^3/6
        let c3 = s.coeff(3).unwrap();
        assert_eq!(
            c3.coeff_of_power(3),
            SqrtThree::from_rational(r(1, 6))
        );
        assert!(s.coeff(2).unwrap().is_zero());
    }

    #[test]
    fn constant_phase_evaluated_exactly() {
        // cos(T/2 + theta) at T^0 is cos(2 pi/3) = -1/2
        let s = trig_series(TrigKind::Cos, &r(1, 2), &r(2, 3), 3).unwrap();
        assert_eq!(
            s.coeff(0).unwrap().constant_term(),
            SqrtThree::from_rational(r(-1, 2))
        );
        // sin(T/2 - theta/2) constant term is sin(-pi/3) = -sqrt3/2
        let s = trig_series(TrigKind::Sin, &r(1, 2), &r(-1, 3), 3).unwrap();
        assert_eq!(
            s.coeff(0).unwrap().constant_term(),
            SqrtThree::new(Rational::zero(), r(-1, 2))
        );
    }

    #[test]
    fn unsupported_phase_rejected() {
        assert!(matches!(
            trig_series(TrigKind::Cos, &Rational::one(), &r(1, 4), 3),
            Err(Error::UnsupportedPhase(_))
        ));
    }

    #[test]
    fn reciprocal_roundtrip() {
        // s * recip(s) = 1 + O(T^{order+1}) for an admissible series
        let s = trig_series(TrigKind::Sin, &r(3, 2), &r(1, 3), 12).unwrap();
        let p = s.mul(&s.recip().unwrap()).unwrap();
        assert_eq!(
            p.coeff(0).unwrap().constant_term(),
            SqrtThree::one()
        );
        for m in 1..=p.order() {
            assert!(p.coeff(m).unwrap().is_zero(), "T^{m} survived");
        }
    }

    #[test]
    fn add_aligns_valuations_and_orders() {
        let csc = trig_series(TrigKind::Csc, &r(1, 2), &Rational::zero(), 8).unwrap();
        let cos = trig_series(TrigKind::Cos, &r(1, 1), &Rational::zero(), 6).unwrap();
        let sum = csc.add(&cos).unwrap();
        assert_eq!(sum.valuation(), -1);
        assert_eq!(sum.order(), 6);
        // T^-1 slot comes solely from csc, T^0 solely from cos
        assert_eq!(sum.coeff(-1).unwrap().constant_term(), SqrtThree::from_int(2));
        assert_eq!(sum.coeff(0).unwrap().constant_term(), SqrtThree::one());
        // beyond the common order the coefficient is unavailable
        assert!(sum.coeff(7).is_err());
    }

    #[test]
    fn valuation_floor_enforced() {
        let csc = trig_series(TrigKind::Csc, &r(1, 2), &Rational::zero(), 6).unwrap();
        // csc * csc would have valuation -2
        assert!(csc.mul(&csc).is_err());
    }
}
