//! Assembly of m(Q_n) as an exact linear combination of basis values, in the
//! critical basis {zeta(2h+1)/pi^{2h}, L(chi_-3,2h+2)/pi^{2h+1}} or the
//! derivative basis {zeta'(-2h), L'(chi_-3,-2h-1)}, plus numeric rendering.
//!
//! For even n = 2m the expression is
//! `(2/12^m) [ sum_h a_{m,h-1} 9^h C(h) zeta(2h+1)/pi^{2h}
//!           + 3 sum_h b_{m,h} 9^h D(h) L(chi_-3,2h+2)/pi^{2h+1} ]`
//! and for odd n = 2m+1 the same shape with (c, d) rows and an overall
//! 1/(12^m sqrt3), where C(h) = (2h)!(1-3^{-2h-1})(1-2^{-2h-1}) and
//! D(h) = (2h+1)!(1+2^{-2h-2}). The derivative basis is reached exactly by
//! dividing each coefficient by the functional-equation factor of its basis
//! value, which lands every coefficient in Q.

use crate::coeffs::CoefficientTable;
use crate::error::{Error, Result};
use crate::lvalues::{self, BasisTerm};
use crate::numbers::{PrecisionContext, Rational, Real, SqrtThree};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Critical,
    Derivative,
}

impl Basis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Basis::Critical => "critical",
            Basis::Derivative => "derivative",
        }
    }

    pub fn parse(s: &str) -> Option<Basis> {
        match s {
            "critical" => Some(Basis::Critical),
            "derivative" => Some(Basis::Derivative),
            _ => None,
        }
    }
}

/// m(Q_n) as an exact expression over basis terms. Terms are kept in a
/// BTreeMap so rendering order (kind, then h) is deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerExpression {
    pub n: u32,
    pub basis: Basis,
    pub terms: BTreeMap<BasisTerm, SqrtThree>,
}

impl MahlerExpression {
    pub fn coeff(&self, t: &BasisTerm) -> SqrtThree {
        self.terms.get(t).cloned().unwrap_or_else(SqrtThree::zero)
    }

    /// Convert between bases through the exact functional-equation factors.
    pub fn to_basis(&self, basis: Basis) -> Result<MahlerExpression> {
        if basis == self.basis {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (term, coeff) in &self.terms {
            let (new_term, new_coeff) = match (self.basis, term) {
                (Basis::Critical, BasisTerm::ZetaCritical(h)) => (
                    BasisTerm::ZetaDeriv(*h),
                    coeff.div(&SqrtThree::from_rational(lvalues::zeta_deriv_factor(*h)))?,
                ),
                (Basis::Critical, BasisTerm::LCritical(h)) => (
                    BasisTerm::LDeriv(*h),
                    coeff.div(&lvalues::l_deriv_factor(*h))?,
                ),
                (Basis::Derivative, BasisTerm::ZetaDeriv(h)) => (
                    BasisTerm::ZetaCritical(*h),
                    coeff * &SqrtThree::from_rational(lvalues::zeta_deriv_factor(*h)),
                ),
                (Basis::Derivative, BasisTerm::LDeriv(h)) => {
                    (BasisTerm::LCritical(*h), coeff * &lvalues::l_deriv_factor(*h))
                }
                (b, t) => {
                    return Err(Error::Inconsistent(format!(
                        "term {t:?} does not belong to basis {b:?}"
                    )))
                }
            };
            terms.insert(new_term, new_coeff);
        }
        Ok(MahlerExpression {
            n: self.n,
            basis,
            terms,
        })
    }

    /// Numeric value at the context precision.
    pub fn eval(&self, ctx: &PrecisionContext) -> Result<Real> {
        let bits = ctx.bits();
        let pi = Real::pi(bits);
        let mut acc = Real::zero(bits);
        for (term, coeff) in &self.terms {
            let basis_value = match term {
                BasisTerm::ZetaCritical(h) => lvalues::zeta_odd(2 * h + 1, ctx)?
                    .div(&pi.powi(2 * h)),
                BasisTerm::LCritical(h) => lvalues::l_chi3(2 * h + 2, ctx)?
                    .div(&pi.powi(2 * h + 1)),
                BasisTerm::ZetaDeriv(h) => {
                    lvalues::deriv_basis(*h, lvalues::DerivKind::Zeta, ctx)?.value
                }
                BasisTerm::LDeriv(h) => lvalues::deriv_basis(*h, lvalues::DerivKind::L, ctx)?.value,
            };
            acc = acc.add(&coeff.eval(ctx).mul(&basis_value));
        }
        Ok(acc)
    }

    /// Human-readable exact form, e.g.
    /// `91/18 * zeta(3)/pi^2 + 5/12*sqrt3 * L(chi_-3,2)/pi`.
    pub fn render_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (term, coeff) in &self.terms {
            let base = match term {
                BasisTerm::ZetaCritical(h) => {
                    if *h == 0 {
                        "zeta(1)".to_string() // unreachable by construction
                    } else {
                        format!("zeta({})/pi^{}", 2 * h + 1, 2 * h)
                    }
                }
                BasisTerm::LCritical(h) => format!("L(chi_-3,{})/pi^{}", 2 * h + 2, 2 * h + 1),
                BasisTerm::ZetaDeriv(h) => format!("zeta'(-{})", 2 * h),
                BasisTerm::LDeriv(h) => format!("L'(chi_-3,-{})", 2 * h + 1),
            };
            parts.push(format!("({coeff}) * {base}"));
        }
        parts.join(" + ")
    }

    pub fn to_json(&self, numeric: Option<String>) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(term, coeff)| {
                let (kind, h) = match term {
                    BasisTerm::ZetaCritical(h) => ("zeta", h),
                    BasisTerm::LCritical(h) => ("L", h),
                    BasisTerm::ZetaDeriv(h) => ("zeta-deriv", h),
                    BasisTerm::LDeriv(h) => ("L-deriv", h),
                };
                serde_json::json!({ "kind": kind, "h": h, "coeff": coeff.to_json() })
            })
            .collect();
        let mut obj = serde_json::json!({
            "n": self.n,
            "basis": self.basis.as_str(),
            "terms": terms,
        });
        if let Some(v) = numeric {
            obj["numeric"] = serde_json::Value::String(v);
        }
        obj
    }
}

/// C(h) without the zeta value: (2h)! (1 - 3^{-2h-1}) (1 - 2^{-2h-1}).
pub fn zeta_packet_factor(h: u32) -> Rational {
    let mut fact = Rational::one();
    for i in 2..=(2 * h) {
        fact = &fact * &Rational::from_int(i64::from(i));
    }
    let a = &Rational::one() - &Rational::from_int(3).pow(-(2 * i64::from(h) + 1));
    let b = &Rational::one() - &Rational::from_int(2).pow(-(2 * i64::from(h) + 1));
    &(&fact * &a) * &b
}

/// D(h) without the L value: (2h+1)! (1 + 2^{-2h-2}).
pub fn l_packet_factor(h: u32) -> Rational {
    let mut fact = Rational::one();
    for i in 2..=(2 * h + 1) {
        fact = &fact * &Rational::from_int(i64::from(i));
    }
    &fact * &(&Rational::one() + &Rational::from_int(2).pow(-(2 * i64::from(h) + 2)))
}

/// The exact expression for m(Q_n) in the requested basis. The coefficient
/// table must cover rows up to ceil(n/2).
pub fn measure_expression(
    table: &CoefficientTable,
    n: u32,
    basis: Basis,
) -> Result<MahlerExpression> {
    if n < 1 {
        return Err(Error::Domain("measure is defined for n >= 1".to_string()));
    }
    let m = n / 2;
    if table.max_n() < m.max(if n % 2 == 1 { m } else { 0 }) {
        return Err(Error::IndexOutOfRange(format!(
            "coefficient table depth {} insufficient for n = {n}",
            table.max_n()
        )));
    }
    let mut terms = BTreeMap::new();
    let twelve_pow = Rational::from_int(12).pow(i64::from(m));
    if n % 2 == 0 {
        // m(Q_{2m}) = (2/12^m) [sum a 9^h C(h) z_h + 3 sum b 9^h D(h) l_h]
        let overall = &Rational::from_int(2) / &twelve_pow;
        for h in 1..=m {
            let a = table.get(crate::coeffs::CoeffKind::A, m, h - 1)?;
            let w = &(&overall * &Rational::from_int(9).pow(i64::from(h)))
                * &zeta_packet_factor(h);
            insert_term(&mut terms, BasisTerm::ZetaCritical(h), a.scale(&w));
        }
        for h in 0..m {
            let b = table.get(crate::coeffs::CoeffKind::B, m, h)?;
            let w = &(&(&overall * &Rational::from_int(3))
                * &Rational::from_int(9).pow(i64::from(h)))
                * &l_packet_factor(h);
            insert_term(&mut terms, BasisTerm::LCritical(h), b.scale(&w));
        }
    } else {
        // m(Q_{2m+1}) = (1/(12^m sqrt3)) [sum c 9^h C(h) z_h + 3 sum d 9^h D(h) l_h]
        let inv_sqrt3 = SqrtThree::inv_sqrt3();
        for h in 1..=m {
            let c = table.get(crate::coeffs::CoeffKind::C, m, h - 1)?;
            let w = &(&Rational::from_int(9).pow(i64::from(h)) / &twelve_pow)
                * &zeta_packet_factor(h);
            insert_term(
                &mut terms,
                BasisTerm::ZetaCritical(h),
                &c.scale(&w) * &inv_sqrt3,
            );
        }
        for h in 0..=m {
            let d = table.get(crate::coeffs::CoeffKind::D, m, h)?;
            let w = &(&(&Rational::from_int(3) * &Rational::from_int(9).pow(i64::from(h)))
                / &twelve_pow)
                * &l_packet_factor(h);
            insert_term(
                &mut terms,
                BasisTerm::LCritical(h),
                &d.scale(&w) * &inv_sqrt3,
            );
        }
    }
    let expr = MahlerExpression {
        n,
        basis: Basis::Critical,
        terms,
    };
    expr.to_basis(basis)
}

fn insert_term(map: &mut BTreeMap<BasisTerm, SqrtThree>, t: BasisTerm, c: SqrtThree) {
    if !c.is_zero() {
        map.insert(t, c);
    }
}

/// Numeric m(Q_n): both basis renderings are evaluated and must agree to the
/// context budget; the critical rendering is returned.
pub fn measure_numeric(table: &CoefficientTable, n: u32, ctx: &PrecisionContext) -> Result<Real> {
    let crit = measure_expression(table, n, Basis::Critical)?;
    let deriv = crit.to_basis(Basis::Derivative)?;
    let v1 = crit.eval(ctx)?;
    let v2 = deriv.eval(ctx)?;
    let tol = Real::from_rational(
        &Rational::new(
            num_bigint::BigInt::from(1),
            num_bigint::BigInt::from(1) << (ctx.bits() - 16) as u64,
        ),
        ctx.bits(),
    );
    if v1.sub(&v2).abs().cmp_value(&tol) == std::cmp::Ordering::Greater {
        return Err(Error::Inconsistent(format!(
            "critical and derivative renderings of m(Q_{n}) disagree"
        )));
    }
    Ok(v1)
}

// ---------------------------------------------------------------------------
// the reduced single-integral form F(k)
// ---------------------------------------------------------------------------

/// One term of F(k): `coeff * (pi/3)^{pi3_power} * I(h)` against one of the
/// two canonical one-dimensional integral kinds.
#[derive(Clone, Debug)]
pub struct FFormTerm {
    pub h: u32,
    pub coeff: SqrtThree,
    pub pi3_power: u32,
}

/// F(k) as coefficient lists against the canonical integrals
/// I_zeta(h) = int m(P_y) (y+1)/(y^3-1) log^{2h-1}|y| dy and
/// I_L(h) = int m(P_y) log^{2h}|y|/(y^2+y+1) dy, with
/// m(Q_k) = (sqrt3/(2 pi))^k F(k).
#[derive(Clone, Debug)]
pub struct FForm {
    pub k: u32,
    pub zeta_terms: Vec<FFormTerm>,
    pub l_terms: Vec<FFormTerm>,
}

pub fn f_form(table: &CoefficientTable, k: u32) -> Result<FForm> {
    if k < 1 {
        return Err(Error::Domain("F(k) is defined for k >= 1".to_string()));
    }
    let mut zeta_terms = Vec::new();
    let mut l_terms = Vec::new();
    if k % 2 == 0 {
        let np1 = k / 2; // k = 2n+2 with n = np1 - 1
        for h in 1..=np1 {
            zeta_terms.push(FFormTerm {
                h,
                coeff: table.get(crate::coeffs::CoeffKind::A, np1, h - 1)?.clone(),
                pi3_power: k - 2 * h,
            });
        }
        for h in 0..np1 {
            l_terms.push(FFormTerm {
                h,
                coeff: table.get(crate::coeffs::CoeffKind::B, np1, h)?.clone(),
                pi3_power: k - 1 - 2 * h,
            });
        }
    } else {
        let n = (k - 1) / 2;
        for h in 1..=n {
            zeta_terms.push(FFormTerm {
                h,
                coeff: table.get(crate::coeffs::CoeffKind::C, n, h - 1)?.clone(),
                pi3_power: k - 2 * h,
            });
        }
        for h in 0..=n {
            l_terms.push(FFormTerm {
                h,
                coeff: table.get(crate::coeffs::CoeffKind::D, n, h)?.clone(),
                pi3_power: k - 1 - 2 * h,
            });
        }
    }
    Ok(FForm {
        k,
        zeta_terms,
        l_terms,
    })
}

impl FForm {
    /// Reduce to the critical-basis Mahler expression through the base
    /// integrals I_zeta(h) = 2 C(h) zeta(2h+1), I_L(h) = 2 D(h) L(chi_-3,2h+2)
    /// and the scaling m(Q_k) = (sqrt3/(2 pi))^k F(k). This is an independent
    /// bookkeeping path from `measure_expression` and must agree with it.
    pub fn reduce(&self) -> Result<MahlerExpression> {
        let k = self.k;
        // (sqrt3 / 2)^k = 3^{floor(k/2)} (sqrt3 if k odd) / 2^k
        let half_pow = Rational::from_int(3).pow(i64::from(k / 2));
        let scale = if k % 2 == 1 {
            SqrtThree::new(Rational::zero(), &half_pow / &Rational::from_int(2).pow(i64::from(k)))
        } else {
            SqrtThree::from_rational(&half_pow / &Rational::from_int(2).pow(i64::from(k)))
        };
        let mut terms = BTreeMap::new();
        for t in &self.zeta_terms {
            // coeff (pi/3)^e 2 C(h) zeta / (2pi)^k-part: pi power e - k = -2h
            debug_assert_eq!(t.pi3_power + 2 * t.h, k);
            let w = &(&Rational::from_int(2) * &zeta_packet_factor(t.h))
                / &Rational::from_int(3).pow(i64::from(t.pi3_power));
            insert_term(
                &mut terms,
                BasisTerm::ZetaCritical(t.h),
                &t.coeff.scale(&w) * &scale,
            );
        }
        for t in &self.l_terms {
            debug_assert_eq!(t.pi3_power + 2 * t.h + 1, k);
            let w = &(&Rational::from_int(2) * &l_packet_factor(t.h))
                / &Rational::from_int(3).pow(i64::from(t.pi3_power));
            insert_term(
                &mut terms,
                BasisTerm::LCritical(t.h),
                &t.coeff.scale(&w) * &scale,
            );
        }
        Ok(MahlerExpression {
            n: k,
            basis: Basis::Critical,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::build_tables;
    use crate::recpoly::PolynomialTables;

    fn table(n: u32) -> CoefficientTable {
        build_tables(&PolynomialTables::new(), n).unwrap()
    }

    fn rat(n: i64, d: i64) -> SqrtThree {
        SqrtThree::from_rational(Rational::new(n, d))
    }

    fn root(n: i64, d: i64) -> SqrtThree {
        SqrtThree::new(Rational::zero(), Rational::new(n, d))
    }

    #[test]
    fn first_four_rows_critical() {
        let t = table(2);
        let e1 = measure_expression(&t, 1, Basis::Critical).unwrap();
        assert_eq!(e1.coeff(&BasisTerm::LCritical(0)), root(5, 4));
        assert_eq!(e1.terms.len(), 1);

        let e2 = measure_expression(&t, 2, Basis::Critical).unwrap();
        assert_eq!(e2.coeff(&BasisTerm::ZetaCritical(1)), rat(91, 18));
        assert_eq!(e2.coeff(&BasisTerm::LCritical(0)), root(5, 12));

        let e3 = measure_expression(&t, 3, Basis::Critical).unwrap();
        assert_eq!(e3.coeff(&BasisTerm::ZetaCritical(1)), rat(91, 36));
        assert_eq!(e3.coeff(&BasisTerm::LCritical(0)), root(5, 12));
        assert_eq!(e3.coeff(&BasisTerm::LCritical(1)), root(153, 16));

        let e4 = measure_expression(&t, 4, Basis::Critical).unwrap();
        assert_eq!(e4.coeff(&BasisTerm::ZetaCritical(1)), rat(91, 36));
        assert_eq!(e4.coeff(&BasisTerm::ZetaCritical(2)), rat(3751, 108));
        assert_eq!(e4.coeff(&BasisTerm::LCritical(0)), root(35, 108));
        assert_eq!(e4.coeff(&BasisTerm::LCritical(1)), root(51, 8));
    }

    #[test]
    fn first_four_rows_derivative() {
        let t = table(2);
        let e1 = measure_expression(&t, 1, Basis::Derivative).unwrap();
        assert_eq!(e1.coeff(&BasisTerm::LDeriv(0)), rat(5, 3));

        let e2 = measure_expression(&t, 2, Basis::Derivative).unwrap();
        assert_eq!(e2.coeff(&BasisTerm::ZetaDeriv(1)), rat(-182, 9));
        assert_eq!(e2.coeff(&BasisTerm::LDeriv(0)), rat(5, 9));

        let e3 = measure_expression(&t, 3, Basis::Derivative).unwrap();
        assert_eq!(e3.coeff(&BasisTerm::ZetaDeriv(1)), rat(-91, 9));
        assert_eq!(e3.coeff(&BasisTerm::LDeriv(0)), rat(5, 9));
        assert_eq!(e3.coeff(&BasisTerm::LDeriv(1)), rat(-17, 18));

        let e4 = measure_expression(&t, 4, Basis::Derivative).unwrap();
        assert_eq!(e4.coeff(&BasisTerm::ZetaDeriv(1)), rat(-91, 9));
        assert_eq!(e4.coeff(&BasisTerm::ZetaDeriv(2)), rat(3751, 81));
        assert_eq!(e4.coeff(&BasisTerm::LDeriv(0)), rat(35, 81));
        assert_eq!(e4.coeff(&BasisTerm::LDeriv(1)), rat(-17, 27));
    }

    #[test]
    fn rows_five_through_eight() {
        // exact coefficients cross-computed with an independent
        // implementation of the recursion
        let t = table(4);
        let cases: Vec<(u32, BasisTerm, SqrtThree)> = vec![
            (5, BasisTerm::ZetaCritical(1), rat(455, 216)),
            (5, BasisTerm::ZetaCritical(2), rat(18755, 648)),
            (5, BasisTerm::LCritical(0), root(95, 324)),
            (5, BasisTerm::LCritical(1), root(425, 64)),
            (5, BasisTerm::LCritical(2), root(2925, 64)),
            (6, BasisTerm::ZetaCritical(1), rat(2093, 1080)),
            (6, BasisTerm::ZetaCritical(2), rat(41261, 1296)),
            (6, BasisTerm::ZetaCritical(3), rat(138811, 864)),
            (6, BasisTerm::LCritical(0), root(85, 324)),
            (6, BasisTerm::LCritical(1), root(1139, 192)),
            (6, BasisTerm::LCritical(2), root(2925, 64)),
            (7, BasisTerm::ZetaCritical(1), rat(637, 360)),
            (7, BasisTerm::ZetaCritical(2), rat(26257, 864)),
            (7, BasisTerm::ZetaCritical(3), rat(971677, 5184)),
            (7, BasisTerm::LCritical(0), root(235, 972)),
            (7, BasisTerm::LCritical(1), root(2023, 360)),
            (7, BasisTerm::LCritical(2), root(6825, 128)),
            (7, BasisTerm::LCritical(3), root(48573, 256)),
            (8, BasisTerm::ZetaCritical(1), rat(1781, 1080)),
            (8, BasisTerm::ZetaCritical(2), rat(386353, 12960)),
            (8, BasisTerm::ZetaCritical(3), rat(1804543, 7776)),
            (8, BasisTerm::ZetaCritical(4), rat(5028751, 7776)),
            (8, BasisTerm::LCritical(0), root(655, 2916)),
            (8, BasisTerm::LCritical(1), root(22763, 4320)),
            (8, BasisTerm::LCritical(2), root(325, 6)),
            (8, BasisTerm::LCritical(3), root(16191, 64)),
        ];
        for (n, term, want) in cases {
            let expr = measure_expression(&t, n, Basis::Critical).unwrap();
            assert_eq!(expr.coeff(&term), want, "n={n} {term:?}");
        }
    }

    #[test]
    fn basis_conversion_is_involutive() {
        let t = table(4);
        for n in 1..=8 {
            let crit = measure_expression(&t, n, Basis::Critical).unwrap();
            let back = crit
                .to_basis(Basis::Derivative)
                .unwrap()
                .to_basis(Basis::Critical)
                .unwrap();
            assert_eq!(crit, back, "n = {n}");
        }
    }

    #[test]
    fn coefficient_shape() {
        let t = table(4);
        for n in 1..=8u32 {
            let crit = measure_expression(&t, n, Basis::Critical).unwrap();
            for (term, c) in &crit.terms {
                match term {
                    BasisTerm::ZetaCritical(_) => assert!(c.is_rational(), "n={n} {term:?}"),
                    BasisTerm::LCritical(_) => assert!(c.is_pure_root(), "n={n} {term:?}"),
                    _ => unreachable!(),
                }
            }
            let deriv = crit.to_basis(Basis::Derivative).unwrap();
            for (term, c) in &deriv.terms {
                assert!(c.is_rational(), "n={n} {term:?} = {c}");
            }
        }
    }

    #[test]
    fn numeric_value_n1() {
        // m(Q_1) = 5 sqrt3 L(chi_-3, 2)/(4 pi) = 0.538443245365750856822727...
        let t = table(1);
        let ctx = PrecisionContext::new(30);
        let v = measure_numeric(&t, 1, &ctx).unwrap();
        let s = v.to_decimal(25);
        assert_eq!(&s[..22], "0.53844324536575085682");
    }

    #[test]
    fn f_form_shapes_and_reduction() {
        let t = table(2);
        // k = 1: single L-term d_{0,0} (pi/3)^0
        let f1 = f_form(&t, 1).unwrap();
        assert!(f1.zeta_terms.is_empty());
        assert_eq!(f1.l_terms.len(), 1);
        assert_eq!(f1.l_terms[0].coeff, SqrtThree::one());
        assert_eq!(f1.l_terms[0].pi3_power, 0);
        // k = 2: a_{1,0} and b_{1,0}
        let f2 = f_form(&t, 2).unwrap();
        assert_eq!(f2.zeta_terms.len(), 1);
        assert_eq!(f2.zeta_terms[0].coeff, rat(2, 1));
        assert_eq!(f2.l_terms[0].coeff, root(2, 3));
        // scaling identity: reduce(F(k)) = measure_expression(k)
        for k in 1..=4 {
            let reduced = f_form(&t, k).unwrap().reduce().unwrap();
            let direct = measure_expression(&t, k, Basis::Critical).unwrap();
            assert_eq!(reduced, direct, "k = {k}");
        }
    }
}
