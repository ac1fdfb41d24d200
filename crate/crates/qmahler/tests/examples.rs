//! Spot checks pinning specific evaluation points of every closed form
//! against the quadrature oracle, including mixed-sign parameters.

use qmahler::closedforms::{self, IntegralParams};
use qmahler::numbers::Rational;
use qmahler::oracle::{quad_log_integral, Integrand, QuadratureSpec};
use qmahler::recpoly::PolynomialTables;

fn params(a: (i64, i64), b: (i64, i64), k: u32) -> IntegralParams {
    IntegralParams::new(Rational::new(a.0, a.1), Rational::new(b.0, b.1), k).unwrap()
}

fn check(formula: f64, quad: f64, tol: f64, what: &str) {
    let denom = formula.abs().max(quad.abs()).max(1e-4);
    let rel = (formula - quad).abs() / denom;
    assert!(rel < tol, "{what}: formula {formula} vs quadrature {quad} (rel {rel:.2e})");
}

#[test]
fn f1_spot_points() {
    let polys = PolynomialTables::new();
    for (a, b, k) in [((1, 1), (2, 1), 0), ((1, 1), (2, 1), 1), ((2, 1), (1, 1), 0)] {
        let p = params(a, b, k);
        let v = closedforms::f1(&polys, &p).unwrap().eval_f64();
        let q = quad_log_integral(&QuadratureSpec::new(Integrand::F1 {
            a: a.0 as f64 / a.1 as f64,
            b: b.0 as f64 / b.1 as f64,
            k,
        }))
        .unwrap();
        check(v, q.value, 1e-10, "f1");
    }
    // symmetry in (a, b)
    let ab = closedforms::f1(&polys, &params((1, 1), (2, 1), 0)).unwrap().eval_f64();
    let ba = closedforms::f1(&polys, &params((2, 1), (1, 1), 0)).unwrap().eval_f64();
    assert!((ab - ba).abs() < 1e-15);
}

#[test]
fn f2_spot_points() {
    let polys = PolynomialTables::new();
    for (a, b, k) in [((1, 1), (2, 1), 0), ((1, 2), (3, 1), 2)] {
        let p = params(a, b, k);
        let v = closedforms::f2(&polys, &p).unwrap().eval_f64();
        let q = quad_log_integral(&QuadratureSpec::new(Integrand::F2 {
            a: a.0 as f64 / a.1 as f64,
            b: b.0 as f64 / b.1 as f64,
            k,
        }))
        .unwrap();
        check(v, q.value, 1e-10, "f2");
    }
}

#[test]
fn g1_spot_points() {
    let polys = PolynomialTables::new();
    // k = 0 needs the principal value; k = 1 at a = 1 is regular because the
    // log factor kills the pole
    for (a, b, k, tol) in [
        ((1, 1), (2, 1), 0, 1e-6),
        ((1, 1), (2, 1), 1, 1e-10),
        ((2, 1), (3, 1), 0, 1e-6),
    ] {
        let p = params(a, b, k);
        let v = closedforms::g1(&polys, &p).unwrap().eval_f64();
        let q = quad_log_integral(&QuadratureSpec::new(Integrand::G1 {
            a: a.0 as f64 / a.1 as f64,
            b: b.0 as f64 / b.1 as f64,
            k,
        }))
        .unwrap();
        check(v, q.value, tol, "g1");
    }
    // a = b rejected
    assert!(IntegralParams::new(Rational::one(), Rational::one(), 0).is_err());
}

#[test]
fn g2_spot_points() {
    let polys = PolynomialTables::new();
    // no symmetry assertion here: a and b play different roles
    for (a, b, k) in [((1, 1), (2, 1), 0), ((2, 1), (1, 2), 3), ((1, 1), (2, 1), 3)] {
        let p = params(a, b, k);
        let v = closedforms::g2(&polys, &p).unwrap().eval_f64();
        let q = quad_log_integral(&QuadratureSpec::new(Integrand::G2 {
            a: a.0 as f64 / a.1 as f64,
            b: b.0 as f64 / b.1 as f64,
            k,
        }))
        .unwrap();
        check(v, q.value, 1e-10, "g2");
    }
}

#[test]
fn sum_spot_points_with_signs() {
    let polys = PolynomialTables::new();
    // positive parameters: sums equal the sum of the parts
    let p = params((1, 1), (2, 1), 0);
    let direct = closedforms::f_sum(&polys, &p).unwrap().eval_f64();
    let split = closedforms::f1(&polys, &p).unwrap().eval_f64()
        + closedforms::f2(&polys, &p).unwrap().eval_f64();
    assert!((direct - split).abs() < 1e-14);
    let gp = params((1, 1), (2, 1), 1);
    let gdirect = closedforms::g_sum(&polys, &gp).unwrap().eval_f64();
    let gsplit = closedforms::g1(&polys, &gp).unwrap().eval_f64()
        + closedforms::g2(&polys, &gp).unwrap().eval_f64();
    assert!((gdirect - gsplit).abs() < 1e-14);

    // negative b: only the sums are defined, validated by quadrature of the
    // combined integrands
    for (a, b, k) in [((1, 1), (-2, 1), 0), ((1, 1), (-2, 1), 1), ((1, 1), (-3, 1), 2)] {
        let p = params(a, b, k);
        let af = a.0 as f64 / a.1 as f64;
        let bf = b.0 as f64 / b.1 as f64;
        let fsv = closedforms::f_sum(&polys, &p).unwrap().eval_f64();
        let qf =
            quad_log_integral(&QuadratureSpec::new(Integrand::FSum { a: af, b: bf, k })).unwrap();
        check(fsv, qf.value, 1e-9, "fsum b<0");
        let gsv = closedforms::g_sum(&polys, &p).unwrap().eval_f64();
        let qg =
            quad_log_integral(&QuadratureSpec::new(Integrand::GSum { a: af, b: bf, k })).unwrap();
        check(gsv, qg.value, 1e-9, "gsum b<0");
    }

    // both parameters negative: equal to the all-positive value (only
    // magnitudes enter)
    let pos = closedforms::f_sum(&polys, &params((1, 1), (2, 1), 1)).unwrap().eval_f64();
    let neg = closedforms::f_sum(&polys, &params((-1, 1), (-2, 1), 1))
        .unwrap()
        .eval_f64();
    assert!((pos - neg).abs() < 1e-15);
}
