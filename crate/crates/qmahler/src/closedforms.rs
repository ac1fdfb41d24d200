//! Closed forms for the four log-power integrals over (0, infinity)
//!
//! ```text
//! f1(k) = int t log^k t / ((t^2+at+a^2)(t^2+bt+b^2)) dt
//! f2(k) = int t log^k t / ((t^2-at+a^2)(t^2-bt+b^2)) dt
//! g1(k) = int t(t+a) log^k t / ((t^3-a^3)(t^2+bt+b^2)) dt   (principal value)
//! g2(k) = int t(t-a) log^k t / ((t^3+a^3)(t^2-bt+b^2)) dt
//! ```
//!
//! and the sign-independent sums f1+f2, g1+g2 valid for nonzero real a, b.
//! Each value is kept exactly as a polynomial in log|a| and log|b| with
//! Q(sqrt3) coefficients times powers of pi: the angles theta = 2pi/3 and
//! delta = pi/3 enter only as the rational multiples 2/3 and 1/3 of pi, so a
//! term c * x_a^i * x_b^j of a family polynomial contributes
//! c * (2/3 or 1/3)^{k+1-i-j} * log^i|a| log^j|b| pi^{k+1-i-j}.

use crate::error::{Error, Result};
use crate::numbers::{PrecisionContext, Rational, Real, SqrtThree};
use crate::recpoly::{Family, PolynomialTables};
use std::collections::BTreeMap;

/// Parameters of one integral evaluation.
#[derive(Clone, Debug)]
pub struct IntegralParams {
    pub a: Rational,
    pub b: Rational,
    pub k: u32,
}

impl IntegralParams {
    pub fn new(a: Rational, b: Rational, k: u32) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::Domain("parameters a, b must be nonzero".to_string()));
        }
        if a.abs() == b.abs() {
            return Err(Error::DegenerateMagnitude);
        }
        Ok(IntegralParams { a, b, k })
    }

    fn require_positive(&self) -> Result<()> {
        if !self.a.is_positive() || !self.b.is_positive() {
            return Err(Error::Domain(
                "this integral requires a > 0 and b > 0 (use the sign-independent sums otherwise)"
                    .to_string(),
            ));
        }
        Ok(())
    }
}

/// Which log the slot belongs to.
#[derive(Clone, Copy)]
enum LogSlot {
    A,
    B,
}

/// Exact value: sum over (i, j) of `coeff * log^i|a| log^j|b| pi^{k+1-i-j}`.
#[derive(Clone, Debug)]
pub struct LogPiForm {
    k: u32,
    abs_a: Rational,
    abs_b: Rational,
    terms: BTreeMap<(u32, u32), SqrtThree>,
}

impl LogPiForm {
    fn new(k: u32, a: &Rational, b: &Rational) -> Self {
        LogPiForm {
            k,
            abs_a: a.abs(),
            abs_b: b.abs(),
            terms: BTreeMap::new(),
        }
    }

    fn push(&mut self, i: u32, j: u32, c: SqrtThree) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((i, j))
            .or_insert_with(SqrtThree::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Accumulate `prefactor * angle^{k+1} * p(log|y| / angle)` where
    /// angle = angle_over_pi * pi.
    fn add_poly(
        &mut self,
        poly: &crate::numbers::ParityPolynomial,
        slot: LogSlot,
        angle_over_pi: &Rational,
        prefactor: &SqrtThree,
    ) {
        for (s, c) in poly.slots().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = poly.exponent_of_slot(s) as u32;
            let scale = angle_over_pi.pow(i64::from(self.k) + 1 - i64::from(e));
            let coeff = &c.scale(&scale) * prefactor;
            match slot {
                LogSlot::A => self.push(e, 0, coeff),
                LogSlot::B => self.push(0, e, coeff),
            }
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), SqrtThree> {
        &self.terms
    }

    /// Numeric value at the context precision.
    pub fn eval(&self, ctx: &PrecisionContext) -> Real {
        let bits = ctx.bits();
        let ln_a = Real::ln_rational(&self.abs_a, bits);
        let ln_b = Real::ln_rational(&self.abs_b, bits);
        let pi = Real::pi(bits);
        let mut acc = Real::zero(bits);
        for (&(i, j), c) in &self.terms {
            let t = c
                .eval(ctx)
                .mul(&ln_a.powi(i))
                .mul(&ln_b.powi(j))
                .mul(&pi.powi(self.k + 1 - i - j));
            acc = acc.add(&t);
        }
        acc
    }

    /// Fast f64 evaluation, adequate for quadrature comparisons.
    pub fn eval_f64(&self) -> f64 {
        let ln_a = self.abs_a.to_f64().ln();
        let ln_b = self.abs_b.to_f64().ln();
        let pi = std::f64::consts::PI;
        let mut acc = 0.0;
        for (&(i, j), c) in &self.terms {
            acc += c.to_f64()
                * ln_a.powi(i as i32)
                * ln_b.powi(j as i32)
                * pi.powi((self.k + 1 - i - j) as i32);
        }
        acc
    }
}

const THETA_OVER_PI: (i64, i64) = (2, 3);
const DELTA_OVER_PI: (i64, i64) = (1, 3);

fn theta() -> Rational {
    Rational::new(THETA_OVER_PI.0, THETA_OVER_PI.1)
}

fn delta() -> Rational {
    Rational::new(DELTA_OVER_PI.0, DELTA_OVER_PI.1)
}

/// (a+b)/(a^3-b^3) and 1/(a^2+ab+b^2), shared by all four forms.
fn prefactors(a: &Rational, b: &Rational) -> (Rational, Rational) {
    let a3b3 = &a.pow(3) - &b.pow(3);
    let quad = &(&(a * a) + &(a * b)) + &(b * b);
    ((&(a + b) / &a3b3), quad.recip())
}

/// f1 contribution: theta^{k+1} [(a+b)/(a^3-b^3) (R_k(xa) - R_k(xb))
///                   + (1/(sqrt3 (a^2+ab+b^2))) (S_k(xa) + S_k(xb))]
fn f1_terms(polys: &PolynomialTables, p: &IntegralParams, out: &mut LogPiForm) {
    let (pre1, pre2) = prefactors(&p.a, &p.b);
    let r = polys.get_poly(Family::R, p.k);
    let s = polys.get_poly(Family::S, p.k);
    let pre1 = SqrtThree::from_rational(pre1);
    let pre2 = &SqrtThree::inv_sqrt3() * &SqrtThree::from_rational(pre2);
    out.add_poly(&r, LogSlot::A, &theta(), &pre1);
    out.add_poly(&r, LogSlot::B, &theta(), &(-&pre1));
    out.add_poly(&s, LogSlot::A, &theta(), &pre2);
    out.add_poly(&s, LogSlot::B, &theta(), &pre2);
}

fn f2_terms(polys: &PolynomialTables, p: &IntegralParams, out: &mut LogPiForm) {
    let (pre1, pre2) = prefactors(&p.a, &p.b);
    let pp = polys.get_poly(Family::P, p.k);
    let q = polys.get_poly(Family::Q, p.k);
    let pre1 = SqrtThree::from_rational(pre1);
    let pre2 = &SqrtThree::inv_sqrt3() * &SqrtThree::from_rational(pre2);
    out.add_poly(&pp, LogSlot::A, &delta(), &pre1);
    out.add_poly(&pp, LogSlot::B, &delta(), &(-&pre1));
    out.add_poly(&q, LogSlot::A, &delta(), &pre2);
    out.add_poly(&q, LogSlot::B, &delta(), &pre2);
}

/// g1 contribution: theta^{k+1} [ (1/(3(a^2+ab+b^2))) (-R_k(xa) + 3 R_k(xb) + Y_k(xa))
///                   + ((a+b)/(sqrt3(a^3-b^3))) (S_k(xa) - S_k(xb)) ]
fn g1_terms(polys: &PolynomialTables, p: &IntegralParams, out: &mut LogPiForm) {
    let (pre_ab, pre_quad) = prefactors(&p.a, &p.b);
    let r = polys.get_poly(Family::R, p.k);
    let s = polys.get_poly(Family::S, p.k);
    let y = polys.get_poly(Family::Y, p.k);
    let third = SqrtThree::from_rational(&pre_quad / &Rational::from_int(3));
    let pre2 = &SqrtThree::inv_sqrt3() * &SqrtThree::from_rational(pre_ab);
    out.add_poly(&r, LogSlot::A, &theta(), &(-&third));
    out.add_poly(&r, LogSlot::B, &theta(), &third.scale(&Rational::from_int(3)));
    out.add_poly(&y, LogSlot::A, &theta(), &third);
    out.add_poly(&s, LogSlot::A, &theta(), &pre2);
    out.add_poly(&s, LogSlot::B, &theta(), &(-&pre2));
}

fn g2_terms(polys: &PolynomialTables, p: &IntegralParams, out: &mut LogPiForm) {
    let (pre_ab, pre_quad) = prefactors(&p.a, &p.b);
    let pp = polys.get_poly(Family::P, p.k);
    let q = polys.get_poly(Family::Q, p.k);
    let z = polys.get_poly(Family::Z, p.k);
    let third = SqrtThree::from_rational(&pre_quad / &Rational::from_int(3));
    let pre2 = &SqrtThree::inv_sqrt3() * &SqrtThree::from_rational(pre_ab);
    out.add_poly(&pp, LogSlot::A, &delta(), &(-&third));
    out.add_poly(&pp, LogSlot::B, &delta(), &third.scale(&Rational::from_int(3)));
    out.add_poly(&z, LogSlot::A, &delta(), &third);
    out.add_poly(&q, LogSlot::A, &delta(), &pre2);
    out.add_poly(&q, LogSlot::B, &delta(), &(-&pre2));
}

pub fn f1(polys: &PolynomialTables, p: &IntegralParams) -> Result<LogPiForm> {
    p.require_positive()?;
    let mut out = LogPiForm::new(p.k, &p.a, &p.b);
    f1_terms(polys, p, &mut out);
    Ok(out)
}

pub fn f2(polys: &PolynomialTables, p: &IntegralParams) -> Result<LogPiForm> {
    p.require_positive()?;
    let mut out = LogPiForm::new(p.k, &p.a, &p.b);
    f2_terms(polys, p, &mut out);
    Ok(out)
}

/// For k = 0 (and generally log a != 0) the integral is a Cauchy principal
/// value through the simple pole at t = a.
pub fn g1(polys: &PolynomialTables, p: &IntegralParams) -> Result<LogPiForm> {
    p.require_positive()?;
    let mut out = LogPiForm::new(p.k, &p.a, &p.b);
    g1_terms(polys, p, &mut out);
    Ok(out)
}

pub fn g2(polys: &PolynomialTables, p: &IntegralParams) -> Result<LogPiForm> {
    p.require_positive()?;
    let mut out = LogPiForm::new(p.k, &p.a, &p.b);
    g2_terms(polys, p, &mut out);
    Ok(out)
}

/// f1(k) + f2(k), valid for any nonzero real a, b with |a| != |b|: the
/// prefactors use the signed parameters, the logs their absolute values.
pub fn f_sum(polys: &PolynomialTables, p: &IntegralParams) -> Result<LogPiForm> {
    let mut out = LogPiForm::new(p.k, &p.a, &p.b);
    f1_terms(polys, p, &mut out);
    f2_terms(polys, p, &mut out);
    Ok(out)
}

/// g1(k) + g2(k) under the same extended domain.
pub fn g_sum(polys: &PolynomialTables, p: &IntegralParams) -> Result<LogPiForm> {
    let mut out = LogPiForm::new(p.k, &p.a, &p.b);
    g1_terms(polys, p, &mut out);
    g2_terms(polys, p, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: (i64, i64), b: (i64, i64), k: u32) -> IntegralParams {
        IntegralParams::new(Rational::new(a.0, a.1), Rational::new(b.0, b.1), k).unwrap()
    }

    #[test]
    fn f1_base_case_value() {
        // f1(0; 1, 2) = 3 ln2/7 - 2 pi/(21 sqrt3) = 0.12432028078909867...
        let polys = PolynomialTables::new();
        let form = f1(&polys, &params((1, 1), (2, 1), 0)).unwrap();
        let v = form.eval_f64();
        let want = 3.0 * 2f64.ln() / 7.0 - 2.0 * std::f64::consts::PI / (21.0 * 3f64.sqrt());
        assert!((v - want).abs() < 1e-15, "{v} vs {want}");
        let ctx = PrecisionContext::new(30);
        let hi = form.eval(&ctx).to_decimal(20);
        assert_eq!(&hi[..18], "0.1243202807890986");
    }

    #[test]
    fn g1_base_case_is_log_ratio() {
        // g1(0; 1, 2) = ln2 / 7 (principal value)
        let polys = PolynomialTables::new();
        let form = g1(&polys, &params((1, 1), (2, 1), 0)).unwrap();
        assert!((form.eval_f64() - 2f64.ln() / 7.0).abs() < 1e-16);
    }

    #[test]
    fn f1_symmetric_in_a_b() {
        let polys = PolynomialTables::new();
        for k in 0..4 {
            let ab = f1(&polys, &params((1, 1), (2, 1), k)).unwrap();
            let ba = f1(&polys, &params((2, 1), (1, 1), k)).unwrap();
            for (&(i, j), c) in ab.terms() {
                assert_eq!(ba.terms().get(&(j, i)), Some(c), "k={k} term ({i},{j})");
            }
        }
    }

    #[test]
    fn sum_consistency_for_positive_parameters() {
        let polys = PolynomialTables::new();
        for k in 0..4 {
            let p = params((1, 1), (2, 1), k);
            let direct = f_sum(&polys, &p).unwrap().eval_f64();
            let split =
                f1(&polys, &p).unwrap().eval_f64() + f2(&polys, &p).unwrap().eval_f64();
            assert!((direct - split).abs() < 1e-14);
            let gd = g_sum(&polys, &p).unwrap().eval_f64();
            let gs = g1(&polys, &p).unwrap().eval_f64() + g2(&polys, &p).unwrap().eval_f64();
            assert!((gd - gs).abs() < 1e-14);
        }
    }

    #[test]
    fn negative_magnitude_symmetry() {
        // only |a|, |b| enter the logs; (-1, -2) gives the same f-sum as (1, 2)
        let polys = PolynomialTables::new();
        let pos = f_sum(&polys, &params((1, 1), (2, 1), 1)).unwrap();
        let neg = f_sum(&polys, &params((-1, 1), (-2, 1), 1)).unwrap();
        assert!((pos.eval_f64() - neg.eval_f64()).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let polys = PolynomialTables::new();
        assert!(matches!(
            IntegralParams::new(Rational::one(), Rational::one(), 0),
            Err(Error::DegenerateMagnitude)
        ));
        assert!(matches!(
            IntegralParams::new(Rational::new(-1, 1), Rational::one(), 0),
            Err(Error::DegenerateMagnitude)
        ));
        assert!(IntegralParams::new(Rational::zero(), Rational::one(), 0).is_err());
        // negative parameters rejected by the single integrals
        let p = params((-1, 1), (2, 1), 0);
        assert!(f1(&polys, &p).is_err());
        assert!(g2(&polys, &p).is_err());
        // but accepted by the sums
        assert!(f_sum(&polys, &p).is_ok());
    }
}
