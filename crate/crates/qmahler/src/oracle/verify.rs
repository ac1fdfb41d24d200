//! Verification batteries: each suite runs a battery of checks and reports
//! name, target tolerance, and achieved error per check. Exact checks report
//! achieved 0 (pass) or 1 (fail) against target 0.

use super::{quad_log_integral, torus_measure, Integrand, QuadratureSpec, TorusKernel};
use crate::closedforms::{self, IntegralParams};
use crate::coeffs::{build_tables, rationality_audit};
use crate::error::Result;
use crate::lvalues::{self, BasisTerm, Identity, IdentityCoeff};
use crate::measure::{measure_expression, measure_numeric, Basis};
use crate::numbers::{Parity, ParityPolynomial, PrecisionContext, Rational, Real, SqrtThree};
use crate::recpoly::{Family, PolynomialTables};
use crate::series::{extract_family, mu, relation_check, AltFamily};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Polys,
    Integrals,
    Identities,
    Measures,
    Torus,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Polys,
        Suite::Integrals,
        Suite::Identities,
        Suite::Measures,
        Suite::Torus,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Polys => "polys",
            Suite::Integrals => "integrals",
            Suite::Identities => "identities",
            Suite::Measures => "measures",
            Suite::Torus => "torus",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.as_str() == s)
    }
}

/// One verification check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub target: f64,
    pub achieved: f64,
    pub pass: bool,
}

impl Check {
    fn tolerance(name: impl Into<String>, target: f64, achieved: f64) -> Self {
        Check {
            name: name.into(),
            target,
            achieved,
            pass: achieved.is_finite() && achieved <= target,
        }
    }

    fn exact(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            target: 0.0,
            achieved: if ok { 0.0 } else { 1.0 },
            pass: ok,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "pass": self.pass(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "name": c.name,
                "target": c.target,
                "achieved": c.achieved,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Run one battery. `seed` fixes the random draws; `tol` is the baseline
/// relative tolerance for formula-vs-quadrature comparisons.
pub fn verify_suite(suite: Suite, seed: u64, tol: f64) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::Polys => polys_battery()?,
        Suite::Integrals => integrals_battery(seed, tol)?,
        Suite::Identities => identities_battery()?,
        Suite::Measures => measures_battery()?,
        Suite::Torus => torus_battery()?,
    };
    Ok(VerifyReport {
        suite: suite.as_str().to_string(),
        checks,
    })
}

// ---------------------------------------------------------------------------
// golden data: reference polynomial tables
// ---------------------------------------------------------------------------

fn rat(n: i64, d: i64) -> SqrtThree {
    SqrtThree::from_rational(Rational::new(n, d))
}

fn root3(n: i64, d: i64) -> SqrtThree {
    SqrtThree::new(Rational::zero(), Rational::new(n, d))
}

fn poly(parity: Parity, slots: &[SqrtThree]) -> ParityPolynomial {
    ParityPolynomial::from_slots(parity, slots.to_vec())
}

/// Reference values for the first four members of each recursive family.
/// Z_3's constant term is 567/2: the defining recursion produces it and
/// quadrature of the g2(3) integral confirms it (567/4 fails that check).
pub fn golden_recpoly_table() -> Vec<(Family, u32, ParityPolynomial)> {
    use Parity::{Even, Odd};
    vec![
        (Family::R, 0, poly(Odd, &[rat(1, 1)])),
        (Family::R, 1, poly(Even, &[rat(-5, 4), rat(1, 2)])),
        (Family::R, 2, poly(Odd, &[rat(1, 2), rat(1, 3)])),
        (Family::R, 3, poly(Even, &[rat(-73, 8), rat(3, 4), rat(1, 4)])),
        (Family::S, 0, poly(Even, &[rat(-1, 2)])),
        (Family::S, 1, poly(Odd, &[rat(-1, 2)])),
        (Family::S, 2, poly(Even, &[rat(-1, 3), rat(-1, 2)])),
        (Family::S, 3, poly(Odd, &[rat(-1, 1), rat(-1, 2)])),
        (Family::P, 0, poly(Odd, &[rat(1, 1)])),
        (Family::P, 1, poly(Even, &[rat(-13, 2), rat(1, 2)])),
        (Family::P, 2, poly(Odd, &[rat(-1, 1), rat(1, 3)])),
        (Family::P, 3, poly(Even, &[rat(-623, 4), rat(-3, 2), rat(1, 4)])),
        (Family::Q, 0, poly(Even, &[rat(2, 1)])),
        (Family::Q, 1, poly(Odd, &[rat(2, 1)])),
        (Family::Q, 2, poly(Even, &[rat(10, 3), rat(2, 1)])),
        (Family::Q, 3, poly(Odd, &[rat(10, 1), rat(2, 1)])),
        (Family::Y, 0, poly(Odd, &[rat(-2, 1)])),
        (Family::Y, 1, poly(Even, &[rat(9, 2), rat(-1, 1)])),
        (Family::Y, 2, poly(Odd, &[rat(3, 1), rat(-2, 3)])),
        (Family::Y, 3, poly(Even, &[rat(81, 4), rat(9, 2), rat(-1, 2)])),
        (Family::Z, 0, poly(Odd, &[rat(-2, 1)])),
        (Family::Z, 1, poly(Even, &[rat(9, 1), rat(-1, 1)])),
        (Family::Z, 2, poly(Odd, &[rat(-6, 1), rat(-2, 3)])),
        (Family::Z, 3, poly(Even, &[rat(567, 2), rat(-9, 1), rat(-1, 2)])),
    ]
}

/// Reference values for the first four members of the series families A, B.
pub fn golden_ab_table() -> Vec<(AltFamily, usize, ParityPolynomial)> {
    use Parity::{Even, Odd};
    vec![
        (AltFamily::A, 0, poly(Odd, &[root3(-4, 3)])),
        (AltFamily::A, 1, poly(Odd, &[rat(-2, 3)])),
        (AltFamily::A, 2, poly(Odd, &[root3(-2, 3), root3(-4, 9)])),
        (AltFamily::A, 3, poly(Odd, &[rat(-4, 3), rat(-2, 3)])),
        (AltFamily::B, 0, poly(Even, &[rat(-2, 3)])),
        (AltFamily::B, 1, poly(Even, &[root3(-1, 3), root3(-2, 3)])),
        (AltFamily::B, 2, poly(Even, &[rat(-4, 9), rat(-2, 3)])),
        (
            AltFamily::B,
            3,
            poly(Even, &[root3(-13, 30), root3(-1, 1), root3(-1, 3)]),
        ),
    ]
}

/// Expected Table rows n = 1..4 in both bases: (n, basis, term, coefficient).
pub fn golden_measure_rows() -> Vec<(u32, Basis, BasisTerm, SqrtThree)> {
    use Basis::{Critical, Derivative};
    use BasisTerm::{LCritical, LDeriv, ZetaCritical, ZetaDeriv};
    vec![
        (1, Critical, LCritical(0), root3(5, 4)),
        (2, Critical, ZetaCritical(1), rat(91, 18)),
        (2, Critical, LCritical(0), root3(5, 12)),
        (3, Critical, ZetaCritical(1), rat(91, 36)),
        (3, Critical, LCritical(0), root3(5, 12)),
        (3, Critical, LCritical(1), root3(153, 16)),
        (4, Critical, ZetaCritical(1), rat(91, 36)),
        (4, Critical, ZetaCritical(2), rat(3751, 108)),
        (4, Critical, LCritical(0), root3(35, 108)),
        (4, Critical, LCritical(1), root3(51, 8)),
        (1, Derivative, LDeriv(0), rat(5, 3)),
        (2, Derivative, ZetaDeriv(1), rat(-182, 9)),
        (2, Derivative, LDeriv(0), rat(5, 9)),
        (3, Derivative, ZetaDeriv(1), rat(-91, 9)),
        (3, Derivative, LDeriv(0), rat(5, 9)),
        (3, Derivative, LDeriv(1), rat(-17, 18)),
        (4, Derivative, ZetaDeriv(1), rat(-91, 9)),
        (4, Derivative, ZetaDeriv(2), rat(3751, 81)),
        (4, Derivative, LDeriv(0), rat(35, 81)),
        (4, Derivative, LDeriv(1), rat(-17, 27)),
    ]
}

/// Independently computed reference decimals for m(Q_n), 40 digits.
pub const MEASURE_REFERENCE: [(u32, &str); 8] = [
    (1, "0.5384432453657508568227275178730106567871"),
    (2, "0.7952165467472030947193290110410223689017"),
    (3, "0.9894857590759445543829449301534533813968"),
    (4, "1.151941558680212729716655416873943796777"),
    (5, "1.294346449266065228194842330134195812004"),
    (6, "1.422650197274767687624883761410709387909"),
    (7, "1.540347156151554110230871633247021079202"),
    (8, "1.649693594705066073997747686251396406356"),
];

// ---------------------------------------------------------------------------
// batteries
// ---------------------------------------------------------------------------

fn polys_battery() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let tables = PolynomialTables::new();

    let mut all = true;
    for (f, k, want) in golden_recpoly_table() {
        if tables.get_poly(f, k) != want {
            all = false;
        }
    }
    checks.push(Check::exact("recursive families match reference tables", all));

    let mut all = true;
    for (f, m, want) in golden_ab_table() {
        if extract_family(f, m)? != want {
            all = false;
        }
    }
    checks.push(Check::exact("series families A, B match reference tables", all));

    let mut all = true;
    for m in 0..=12 {
        // extract_family cross-checks the convolution route internally for A, B
        if extract_family(AltFamily::A, m).is_err() || extract_family(AltFamily::B, m).is_err() {
            all = false;
        }
    }
    checks.push(Check::exact(
        "A_m, B_m: convolution equals series extraction (m <= 12)",
        all,
    ));

    let mut all = true;
    for n in 0..=6 {
        if !relation_check(&tables, n)?.all_pass() {
            all = false;
        }
    }
    checks.push(Check::exact(
        "R/S/P/Q relate to A/B/C/D with predicted factors (indices <= 13)",
        all,
    ));

    let mut all = true;
    for n in 0..=14 {
        if mu(n).is_err() {
            all = false;
        }
    }
    checks.push(Check::exact(
        "mu_n: partition sum equals series reciprocal (n <= 14)",
        all,
    ));

    let mut all = true;
    for f in Family::ALL {
        for k in 0..=20 {
            let p = tables.get_poly(f, k);
            if p.parity() != f.parity_at(k)
                || p.degree() != Some(f.degree_at(k))
                || !p.is_rational()
            {
                all = false;
            }
        }
    }
    checks.push(Check::exact(
        "parity, degree, rationality of R..Z (k <= 20)",
        all,
    ));

    let mut all = true;
    for f in AltFamily::ALL {
        for m in 0..=12 {
            if !extract_family(f, m)?.coeffs_in_q_union_sqrt3q() {
                all = false;
            }
        }
    }
    checks.push(Check::exact(
        "A..O coefficients lie in Q union sqrt3*Q (m <= 12)",
        all,
    ));

    Ok(checks)
}

struct Drawn {
    a: Rational,
    b: Rational,
    k: u32,
}

fn draw_params(rng: &mut ChaCha8Rng, kmax: u32, allow_negative_b: bool) -> Drawn {
    loop {
        let an: i64 = rng.gen_range(20..=500);
        let bn: i64 = rng.gen_range(20..=500);
        if (an - bn).abs() <= 5 {
            continue;
        }
        let sign = if allow_negative_b { -1 } else { 1 };
        return Drawn {
            a: Rational::new(an, 100),
            b: Rational::new(sign * bn, 100),
            k: rng.gen_range(0..=kmax),
        };
    }
}

fn rel_err(formula: f64, quad: f64) -> f64 {
    let denom = formula.abs().max(quad.abs()).max(1e-4);
    (formula - quad).abs() / denom
}

fn integrals_battery(seed: u64, tol: f64) -> Result<Vec<Check>> {
    let polys = PolynomialTables::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let cases = 200usize;

    // the four families against quadrature
    for family in ["f1", "f2", "g1", "g2"] {
        let mut worst = 0.0f64;
        let mut worst_pv0 = 0.0f64;
        for _ in 0..cases {
            let d = draw_params(&mut rng, 4, false);
            let p = IntegralParams::new(d.a.clone(), d.b.clone(), d.k)?;
            let (a, b, k) = (d.a.to_f64(), d.b.to_f64(), d.k);
            let (form, integrand) = match family {
                "f1" => (closedforms::f1(&polys, &p)?, Integrand::F1 { a, b, k }),
                "f2" => (closedforms::f2(&polys, &p)?, Integrand::F2 { a, b, k }),
                "g1" => (closedforms::g1(&polys, &p)?, Integrand::G1 { a, b, k }),
                _ => (closedforms::g2(&polys, &p)?, Integrand::G2 { a, b, k }),
            };
            let q = quad_log_integral(&QuadratureSpec::new(integrand))?;
            let e = rel_err(form.eval_f64(), q.value);
            if family == "g1" && k == 0 {
                worst_pv0 = worst_pv0.max(e);
            } else {
                worst = worst.max(e);
            }
        }
        checks.push(Check::tolerance(
            format!("{family}: closed form vs quadrature, {cases} random cases"),
            tol,
            worst,
        ));
        if family == "g1" {
            checks.push(Check::tolerance(
                "g1 principal value at k = 0 (relaxed)",
                tol.max(1e-6),
                worst_pv0,
            ));
        }
    }

    // sign-independent sums with negative b
    let mut worst_f = 0.0f64;
    let mut worst_g = 0.0f64;
    for _ in 0..40 {
        let d = draw_params(&mut rng, 3, true);
        let p = IntegralParams::new(d.a.clone(), d.b.clone(), d.k)?;
        let (a, b, k) = (d.a.to_f64(), d.b.to_f64(), d.k);
        let fs = closedforms::f_sum(&polys, &p)?.eval_f64();
        let qf = quad_log_integral(&QuadratureSpec::new(Integrand::FSum { a, b, k }))?;
        worst_f = worst_f.max(rel_err(fs, qf.value));
        let gs = closedforms::g_sum(&polys, &p)?.eval_f64();
        let qg = quad_log_integral(&QuadratureSpec::new(Integrand::GSum { a, b, k }))?;
        worst_g = worst_g.max(rel_err(gs, qg.value));
    }
    checks.push(Check::tolerance(
        "f1+f2 with b < 0 vs quadrature (40 cases)",
        tol,
        worst_f,
    ));
    checks.push(Check::tolerance(
        "g1+g2 with b < 0 vs quadrature (40 cases)",
        tol,
        worst_g,
    ));

    // principal-value excision schedule extrapolates to the closed form
    {
        let p = IntegralParams::new(Rational::one(), Rational::from_int(2), 0)?;
        let form = closedforms::g1(&polys, &p)?.eval_f64();
        let mut vals = Vec::new();
        for rho in [1e-2, 1e-3, 1e-4] {
            let mut spec = QuadratureSpec::new(Integrand::G1 {
                a: 1.0,
                b: 2.0,
                k: 0,
            });
            spec.pv_excision = Some(rho);
            vals.push(quad_log_integral(&spec)?.value);
        }
        // the excised integral approaches the PV linearly in the radius
        let extrap = vals[2] + (vals[2] - vals[1]) / 9.0;
        checks.push(Check::tolerance(
            "g1(0) excision radii 1e-2..1e-4 extrapolate to the closed form",
            1e-8,
            (extrap - form).abs(),
        ));
    }

    // halving the tolerance moves results by less than the reported error
    {
        let f = Integrand::F1 {
            a: 0.7,
            b: 2.3,
            k: 3,
        };
        let mut lo = QuadratureSpec::new(f);
        lo.abs_tol = 1e-9;
        lo.rel_tol = 1e-9;
        let mut hi = QuadratureSpec::new(f);
        hi.abs_tol = 5e-10;
        hi.rel_tol = 5e-10;
        let rl = quad_log_integral(&lo)?;
        let rh = quad_log_integral(&hi)?;
        checks.push(Check::exact(
            "quadrature self-consistency under tolerance halving",
            (rl.value - rh.value).abs() <= rl.error + rh.error,
        ));
    }

    Ok(checks)
}

fn identities_battery() -> Result<Vec<Check>> {
    let ctx = PrecisionContext::new(30);
    let mut checks = Vec::new();

    for id in Identity::ALL {
        let hs: Vec<u32> = if id.is_zeta_kind() {
            (1..=4).collect()
        } else {
            (0..=3).collect()
        };
        let mut worst = 0.0f64;
        for h in hs {
            let weight = lvalues::identity_weight(id, h);
            let mut lhs_re = Real::zero(ctx.bits());
            let mut lhs_im = Real::zero(ctx.bits());
            for (sign, arg) in lvalues::identity_terms(id) {
                let (re, im) = lvalues::polylog(weight, &arg, &ctx)?;
                let s = Real::from_i64(sign, ctx.bits());
                lhs_re = lhs_re.add(&re.mul(&s));
                lhs_im = lhs_im.add(&im.mul(&s));
            }
            match lvalues::reduce_identity(id, h)? {
                IdentityCoeff::Zeta(c) => {
                    let rhs = lvalues::zeta_odd(weight, &ctx)?
                        .mul(&Real::from_rational(&c, ctx.bits()));
                    worst = worst.max(lhs_re.sub(&rhs).abs().to_f64());
                    worst = worst.max(lhs_im.abs().to_f64());
                }
                IdentityCoeff::LTimesI(c) => {
                    // combination = c * i * L: real part vanishes
                    let rhs = lvalues::l_chi3(weight, &ctx)?.mul(&c.eval(&ctx));
                    worst = worst.max(lhs_im.sub(&rhs).abs().to_f64());
                    worst = worst.max(lhs_re.abs().to_f64());
                }
            }
        }
        checks.push(Check::tolerance(
            format!("identity {}", id.name()),
            1e-12,
            worst,
        ));
    }

    // base integrals against their packet values
    let ctx = PrecisionContext::new(25);
    for h in 1..=2u32 {
        let q = quad_log_integral(&QuadratureSpec::new(Integrand::BaseZeta { h }))?;
        let packet = crate::measure::zeta_packet_factor(h);
        let want = Real::from_rational(&(&packet * &Rational::from_int(2)), ctx.bits())
            .mul(&lvalues::zeta_odd(2 * h + 1, &ctx)?)
            .to_f64();
        checks.push(Check::tolerance(
            format!("zeta-kind base integral h = {h}"),
            1e-10,
            (q.value - want).abs(),
        ));
    }
    for h in 0..=2u32 {
        let q = quad_log_integral(&QuadratureSpec::new(Integrand::BaseL { h }))?;
        let packet = crate::measure::l_packet_factor(h);
        let want = Real::from_rational(&(&packet * &Rational::from_int(2)), ctx.bits())
            .mul(&lvalues::l_chi3(2 * h + 2, &ctx)?)
            .to_f64();
        checks.push(Check::tolerance(
            format!("L-kind base integral h = {h}"),
            1e-10,
            (q.value - want).abs(),
        ));
    }

    Ok(checks)
}

fn measures_battery() -> Result<Vec<Check>> {
    let polys = PolynomialTables::new();
    let table = build_tables(&polys, 4)?;
    let mut checks = Vec::new();

    let mut all = true;
    for (n, basis, term, want) in golden_measure_rows() {
        let expr = measure_expression(&table, n, basis)?;
        if expr.coeff(&term) != want {
            all = false;
        }
    }
    // also require exactly the expected term counts (no stray terms)
    for (n, want_terms) in [(1u32, 1usize), (2, 2), (3, 3), (4, 4)] {
        let expr = measure_expression(&table, n, Basis::Critical)?;
        if expr.terms.len() != want_terms {
            all = false;
        }
    }
    checks.push(Check::exact(
        "exact measure rows n = 1..4 in both bases",
        all,
    ));

    let t10 = build_tables(&polys, 10)?;
    let audit = rationality_audit(&t10);
    checks.push(Check::exact(
        "rationality audit of coefficient tables to max_n = 10",
        audit.pass(),
    ));

    // numeric rendering against independently computed references
    let ctx = PrecisionContext::new(35);
    let mut worst = 0.0f64;
    for (n, want) in MEASURE_REFERENCE {
        let v = measure_numeric(&t10, n, &ctx)?;
        let want_real = Real::from_rational(&Rational::parse(want).unwrap(), ctx.bits());
        worst = worst.max(v.sub(&want_real).abs().to_f64());
    }
    checks.push(Check::tolerance(
        "measure numerics n = 1..8 vs reference decimals",
        1e-30,
        worst,
    ));

    // basis agreement at 30 digits: 10^-(digits-5)
    let ctx30 = PrecisionContext::new(30);
    let mut worst = 0.0f64;
    for n in 1..=8 {
        let crit = measure_expression(&t10, n, Basis::Critical)?;
        let v1 = crit.eval(&ctx30)?;
        let v2 = crit.to_basis(Basis::Derivative)?.eval(&ctx30)?;
        worst = worst.max(v1.sub(&v2).abs().to_f64());
    }
    checks.push(Check::tolerance(
        "critical vs derivative numeric rendering (n <= 8)",
        1e-25,
        worst,
    ));

    Ok(checks)
}

fn torus_battery() -> Result<Vec<Check>> {
    let polys = PolynomialTables::new();
    let table = build_tables(&polys, 1)?;
    let ctx = PrecisionContext::new(25);
    let mut checks = Vec::new();

    let m1 = measure_numeric(&table, 1, &ctx)?.to_f64();
    let t1 = torus_measure(1, TorusKernel::Primary, 1e-8)?;
    checks.push(Check::tolerance(
        "torus n = 1 vs exact-formula numeric",
        1e-4,
        (t1 - m1).abs(),
    ));

    // two independent integral representations: the trigonometric torus
    // kernel and the reduced rational-kernel line integral sqrt3/(2pi) F(1)
    let f1_line = quad_log_integral(&QuadratureSpec::new(Integrand::BaseL { h: 0 }))?;
    let reduced = 3f64.sqrt() / (2.0 * std::f64::consts::PI) * f1_line.value;
    checks.push(Check::tolerance(
        "torus n = 1 vs reduced line integral",
        1e-6,
        (t1 - reduced).abs(),
    ));

    // conjugation invariance at the measure level
    let t1c = torus_measure(1, TorusKernel::Conjugate, 1e-8)?;
    checks.push(Check::tolerance(
        "torus n = 1: conjugate kernel gives the same measure",
        1e-6,
        (t1 - t1c).abs(),
    ));

    let m2 = measure_numeric(&table, 2, &ctx)?.to_f64();
    let t2 = torus_measure(2, TorusKernel::Primary, 1e-3)?;
    checks.push(Check::tolerance(
        "torus n = 2 vs exact-formula numeric",
        1e-3,
        (t2 - m2).abs(),
    ));
    let t2c = torus_measure(2, TorusKernel::Conjugate, 1e-3)?;
    checks.push(Check::tolerance(
        "torus n = 2: conjugate kernel gives the same measure",
        1e-3,
        (t2 - t2c).abs(),
    ));

    Ok(checks)
}
