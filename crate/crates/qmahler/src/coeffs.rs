//! The coefficient tables a_{n,j}, b_{n,j}, c_{n,j}, d_{n,j}, built exactly
//! in Q(sqrt3) from the initial value d_{0,0} = 1.
//!
//! The recursion interleaves: row (a_{n+1}, b_{n+1}) consumes (c_n, d_n), and
//! row (c_m, d_m) consumes (a_m, b_m). Each step combines named coefficients
//! of the recursive polynomial families at indices up to 2n, with summation
//! bounds taken literally (including the asymmetric l-ranges
//! between the c/d and a/b rows); slots addressed beyond a polynomial's
//! degree contribute zero, which is what makes the literal bounds close.
//! By construction a and d stay rational while b and c stay in sqrt3*Q.

use crate::error::{Error, Result};
use crate::numbers::{Rational, SqrtThree};
use crate::recpoly::{Family, PolynomialTables};
use std::collections::BTreeMap;

/// Which of the four coefficient families an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoeffKind {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Debug, Default)]
pub struct CoefficientTable {
    max_n: u32,
    a: BTreeMap<(u32, u32), SqrtThree>,
    b: BTreeMap<(u32, u32), SqrtThree>,
    c: BTreeMap<(u32, u32), SqrtThree>,
    d: BTreeMap<(u32, u32), SqrtThree>,
}

impl CoefficientTable {
    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn a(&self, n: u32, j: u32) -> Option<&SqrtThree> {
        self.a.get(&(n, j))
    }

    pub fn b(&self, n: u32, j: u32) -> Option<&SqrtThree> {
        self.b.get(&(n, j))
    }

    pub fn c(&self, n: u32, j: u32) -> Option<&SqrtThree> {
        self.c.get(&(n, j))
    }

    pub fn d(&self, n: u32, j: u32) -> Option<&SqrtThree> {
        self.d.get(&(n, j))
    }

    pub fn get(&self, kind: CoeffKind, n: u32, j: u32) -> Result<&SqrtThree> {
        self.rows(kind).get(&(n, j)).ok_or_else(|| {
            Error::IndexOutOfRange(format!(
                "{kind:?}[{n},{j}] not in table (max_n {})",
                self.max_n
            ))
        })
    }

    /// All entries of one family: (n, j) -> value.
    pub fn rows(&self, kind: CoeffKind) -> &BTreeMap<(u32, u32), SqrtThree> {
        match kind {
            CoeffKind::A => &self.a,
            CoeffKind::B => &self.b,
            CoeffKind::C => &self.c,
            CoeffKind::D => &self.d,
        }
    }
}

/// 2^e as an exact rational (negative exponents occur in the recursion).
fn pow2(e: i64) -> Rational {
    Rational::from_int(2).pow(e)
}

/// The bracket `2^{e} f_{k,h} + g_{k,h}` that every sum in the recursion
/// is built from.
fn delta(
    polys: &PolynomialTables,
    e: i64,
    f: Family,
    g: Family,
    k: u32,
    h: u32,
) -> Result<Rational> {
    Ok(&(&pow2(e) * &polys.named_coeff(f, k, h)?) + &polys.named_coeff(g, k, h)?)
}

/// The h = 0 bracket `2^{2l}(2 r_{2l-1,0} + y_{2l-1,0}) + 2 p_{2l-1,0} + z_{2l-1,0}`.
fn delta_zero(polys: &PolynomialTables, l: u32) -> Result<Rational> {
    let two = Rational::from_int(2);
    let r0 = polys.named_coeff(Family::R, 2 * l - 1, 0)?;
    let y0 = polys.named_coeff(Family::Y, 2 * l - 1, 0)?;
    let p0 = polys.named_coeff(Family::P, 2 * l - 1, 0)?;
    let z0 = polys.named_coeff(Family::Z, 2 * l - 1, 0)?;
    Ok(&(&(&pow2(2 * i64::from(l)) * &(&(&two * &r0) + &y0)) + &(&two * &p0)) + &z0)
}

/// Build all four tables up to row `max_n` in dependency order
/// d_0 -> (a_1, b_1) -> (c_1, d_1) -> (a_2, b_2) -> ...
pub fn build_tables(polys: &PolynomialTables, max_n: u32) -> Result<CoefficientTable> {
    let mut t = CoefficientTable {
        max_n,
        ..Default::default()
    };
    t.d.insert((0, 0), SqrtThree::one());
    let inv_sqrt3 = SqrtThree::inv_sqrt3();
    let el = |l: u32, h: u32, off: i64| 2 * i64::from(l) - 2 * i64::from(h) + off;

    for n in 0..max_n {
        // a_{n+1,h-1} = (1/sqrt3) sum_{l=h}^{n} c_{n,l-1} (2^{2l-2h+1} s_{2l-1,h} + q_{2l-1,h})
        //             + sum_{l=h-1}^{n} d_{n,l} (2^{2l-2h+2} r_{2l,h} + p_{2l,h})
        for h in 1..=(n + 1) {
            let mut acc = SqrtThree::zero();
            for l in h..=n {
                let w = delta(polys, el(l, h, 1), Family::S, Family::Q, 2 * l - 1, h)?;
                acc += &(&t.c[&(n, l - 1)].scale(&w) * &inv_sqrt3);
            }
            for l in (h - 1)..=n {
                let w = delta(polys, el(l, h, 2), Family::R, Family::P, 2 * l, h)?;
                acc += &t.d[&(n, l)].scale(&w);
            }
            t.a.insert((n + 1, h - 1), acc);
        }
        // b_{n+1,0} = (1/3) sum_{l=1}^{n} c_{n,l-1} delta_zero(l)
        //           + (2/sqrt3) sum_{l=0}^{n} d_{n,l} (2^{2l+1} s_{2l,0} + q_{2l,0})
        let mut acc = SqrtThree::zero();
        for l in 1..=n {
            let w = &delta_zero(polys, l)? / &Rational::from_int(3);
            acc += &t.c[&(n, l - 1)].scale(&w);
        }
        for l in 0..=n {
            let w = delta(polys, 2 * i64::from(l) + 1, Family::S, Family::Q, 2 * l, 0)?;
            acc += &(&t.d[&(n, l)].scale(&(&w * &Rational::from_int(2))) * &inv_sqrt3);
        }
        t.b.insert((n + 1, 0), acc);
        // b_{n+1,h} = sum_{l=h}^{n} c_{n,l-1} (2^{2l-2h} r_{2l-1,h} + p_{2l-1,h})
        //           + (1/sqrt3) sum_{l=h-1}^{n} d_{n,l} (2^{2l-2h+1} s_{2l,h} + q_{2l,h})
        for h in 1..=n {
            let mut acc = SqrtThree::zero();
            for l in h..=n {
                let w = delta(polys, el(l, h, 0), Family::R, Family::P, 2 * l - 1, h)?;
                acc += &t.c[&(n, l - 1)].scale(&w);
            }
            for l in (h - 1)..=n {
                let w = delta(polys, el(l, h, 1), Family::S, Family::Q, 2 * l, h)?;
                acc += &(&t.d[&(n, l)].scale(&w) * &inv_sqrt3);
            }
            t.b.insert((n + 1, h), acc);
        }

        // the mirrored step: c_m, d_m from a_m, b_m (m = n+1), with the
        // b-sums stopping at l = m-1
        let m = n + 1;
        for h in 1..=m {
            let mut acc = SqrtThree::zero();
            for l in h..=m {
                let w = delta(polys, el(l, h, 1), Family::S, Family::Q, 2 * l - 1, h)?;
                acc += &(&t.a[&(m, l - 1)].scale(&w) * &inv_sqrt3);
            }
            for l in (h - 1)..m {
                let w = delta(polys, el(l, h, 2), Family::R, Family::P, 2 * l, h)?;
                acc += &t.b[&(m, l)].scale(&w);
            }
            t.c.insert((m, h - 1), acc);
        }
        let mut acc = SqrtThree::zero();
        for l in 1..=m {
            let w = &delta_zero(polys, l)? / &Rational::from_int(3);
            acc += &t.a[&(m, l - 1)].scale(&w);
        }
        for l in 0..m {
            let w = delta(polys, 2 * i64::from(l) + 1, Family::S, Family::Q, 2 * l, 0)?;
            acc += &(&t.b[&(m, l)].scale(&(&w * &Rational::from_int(2))) * &inv_sqrt3);
        }
        t.d.insert((m, 0), acc);
        for h in 1..=m {
            let mut acc = SqrtThree::zero();
            for l in h..=m {
                let w = delta(polys, el(l, h, 0), Family::R, Family::P, 2 * l - 1, h)?;
                acc += &t.a[&(m, l - 1)].scale(&w);
            }
            for l in h..m {
                let w = delta(polys, el(l, h, 1), Family::S, Family::Q, 2 * l, h)?;
                acc += &(&t.b[&(m, l)].scale(&w) * &inv_sqrt3);
            }
            t.d.insert((m, h), acc);
        }
    }
    Ok(t)
}

/// One violation of the rationality structure.
#[derive(Clone, Debug)]
pub struct RationalityViolation {
    pub kind: CoeffKind,
    pub n: u32,
    pub j: u32,
    pub value: SqrtThree,
}

#[derive(Clone, Debug, Default)]
pub struct RationalityReport {
    pub checked: usize,
    pub violations: Vec<RationalityViolation>,
}

impl RationalityReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structural audit: a and d entries must have zero sqrt3-part, b and c
/// entries zero rational part.
pub fn rationality_audit(table: &CoefficientTable) -> RationalityReport {
    let mut report = RationalityReport::default();
    for (kind, want_rational) in [
        (CoeffKind::A, true),
        (CoeffKind::D, true),
        (CoeffKind::B, false),
        (CoeffKind::C, false),
    ] {
        for (&(n, j), v) in table.rows(kind) {
            report.checked += 1;
            let ok = if want_rational {
                v.is_rational()
            } else {
                v.is_pure_root()
            };
            if !ok {
                report.violations.push(RationalityViolation {
                    kind,
                    n,
                    j,
                    value: v.clone(),
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> SqrtThree {
        SqrtThree::from_rational(Rational::new(n, d))
    }

    fn root(n: i64, d: i64) -> SqrtThree {
        SqrtThree::new(Rational::zero(), Rational::new(n, d))
    }

    #[test]
    fn base_values() {
        let polys = PolynomialTables::new();
        let t = build_tables(&polys, 2).unwrap();
        assert_eq!(t.d(0, 0), Some(&SqrtThree::one()));
        assert_eq!(t.a(1, 0), Some(&rat(2, 1)));
        // b_{1,0} = 2/sqrt3 = (2/3) sqrt3
        assert_eq!(t.b(1, 0), Some(&root(2, 3)));
    }

    #[test]
    fn second_block_values() {
        let polys = PolynomialTables::new();
        let t = build_tables(&polys, 2).unwrap();
        assert_eq!(t.c(1, 0), Some(&root(2, 1)));
        assert_eq!(t.d(1, 0), Some(&rat(4, 1)));
        assert_eq!(t.d(1, 1), Some(&rat(2, 1)));
        assert_eq!(t.a(2, 0), Some(&rat(12, 1)));
        assert_eq!(t.a(2, 1), Some(&rat(4, 3)));
        assert_eq!(t.b(2, 0), Some(&root(56, 9)));
        assert_eq!(t.b(2, 1), Some(&root(8, 3)));
    }

    #[test]
    fn index_shapes() {
        let polys = PolynomialTables::new();
        let t = build_tables(&polys, 4).unwrap();
        for n in 1..=4u32 {
            for j in 0..n {
                assert!(t.a(n, j).is_some(), "a[{n},{j}]");
                assert!(t.b(n, j).is_some(), "b[{n},{j}]");
                assert!(t.c(n, j).is_some(), "c[{n},{j}]");
            }
            for j in 0..=n {
                assert!(t.d(n, j).is_some(), "d[{n},{j}]");
            }
            assert!(t.a(n, n).is_none());
            assert!(t.d(n, n + 1).is_none());
        }
        assert!(t.get(CoeffKind::A, 5, 0).is_err());
    }

    #[test]
    fn rebuild_preserves_lower_rows() {
        let polys = PolynomialTables::new();
        let small = build_tables(&polys, 3).unwrap();
        let large = build_tables(&polys, 6).unwrap();
        for (k, v) in small.rows(CoeffKind::A) {
            assert_eq!(large.rows(CoeffKind::A).get(k), Some(v));
        }
        for (k, v) in small.rows(CoeffKind::D) {
            assert_eq!(large.rows(CoeffKind::D).get(k), Some(v));
        }
    }

    #[test]
    fn rationality_audit_to_10() {
        let polys = PolynomialTables::new();
        let t = build_tables(&polys, 10).unwrap();
        let report = rationality_audit(&t);
        assert!(report.pass(), "violations: {:?}", report.violations);
        assert!(report.checked > 200);
    }
}
