//! Adaptive Gauss-Kronrod quadrature in f64.
//!
//! A 15-point Kronrod rule nested over 7-point Gauss supplies per-interval
//! value and error estimates; adaptivity is plain bisection of the interval
//! with the largest estimated error. Node values never include interval
//! endpoints, so integrable endpoint singularities (log blowups) are safe to
//! hand to the engine directly.

use crate::error::{Error, Result};

// 15-point Kronrod nodes (positive half) and weights, with the embedded
// 7-point Gauss weights. Standard QUADPACK constants.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod pass over [a, b]: (kronrod value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut result_gauss = fc * WG[3];
    let mut result_kronrod = fc * WGK[7];
    let mut result_abs = fc.abs() * WGK[7];
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        result_kronrod += WGK[j] * (f1 + f2);
        result_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = result_kronrod * 0.5;
    let mut result_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        result_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }
    let result_kronrod = result_kronrod * half;
    let result_abs = result_abs * half.abs();
    let result_asc = result_asc * half.abs();
    let mut err = ((result_kronrod - result_gauss * half) * 1.0).abs();
    if result_asc != 0.0 && err != 0.0 {
        err = result_asc * 1.0f64.min((200.0 * err / result_asc).powf(1.5));
    }
    let min_err = 50.0 * f64::EPSILON * result_abs;
    if min_err > err {
        err = min_err;
    }
    (result_kronrod, err)
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-11,
            max_subdivisions: 4000,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

/// Adaptive integration of f over the finite interval [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opt: &QuadOptions) -> Result<QuadEstimate> {
    #[derive(Debug)]
    struct Seg {
        a: f64,
        b: f64,
        value: f64,
        error: f64,
    }
    let (v, e) = gk15(f, a, b);
    let mut segs = vec![Seg {
        a,
        b,
        value: v,
        error: e,
    }];
    let mut subdivisions = 0usize;
    loop {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.error).sum();
        if err <= opt.abs_tol + opt.rel_tol * total.abs() {
            // fixed accumulation order (by left endpoint) for reproducibility
            let mut ordered: Vec<&Seg> = segs.iter().collect();
            ordered.sort_by(|x, y| x.a.total_cmp(&y.a));
            let value = pairwise_sum(&ordered.iter().map(|s| s.value).collect::<Vec<_>>());
            return Ok(QuadEstimate {
                value,
                error: err,
                subdivisions,
            });
        }
        if subdivisions >= opt.max_subdivisions {
            return Err(Error::QuadratureNonConvergence(subdivisions));
        }
        // split the worst segment
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let Seg { a, b, .. } = segs.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(Error::QuadratureNonConvergence(subdivisions));
        }
        for (lo, hi) in [(a, mid), (mid, b)] {
            let (v, e) = gk15(f, lo, hi);
            segs.push(Seg {
                a: lo,
                b: hi,
                value: v,
                error: e,
            });
        }
        subdivisions += 1;
    }
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Integration over (0, infinity): the range is split at 1 and the tail is
/// mapped by t -> 1/t, giving int_0^1 [f(t) + f(1/t)/t^2] dt; the remaining
/// log singularity at 0 is removed by t = exp(-u).
pub fn integrate_zero_inf<F: Fn(f64) -> f64>(f: &F, opt: &QuadOptions) -> Result<QuadEstimate> {
    let g = |u: f64| {
        let t = (-u).exp();
        f(t) * t + f(1.0 / t) / t
    };
    // f decays at least like t^-3 log^k t upstream and vanishes like
    // t log^k t at 0, so the transformed integrand dies like e^{-2u} u^k
    integrate(&g, 0.0, 120.0, opt)
}

/// Principal value over (0, infinity) of an integrand with one simple pole
/// at t0 > 0: the symmetric window int_0^c [f(t0+s) + f(t0-s)] ds cancels the
/// odd pole part pointwise, the outside pieces are regular.
pub fn integrate_zero_inf_pv<F: Fn(f64) -> f64>(
    f: &F,
    t0: f64,
    opt: &QuadOptions,
) -> Result<QuadEstimate> {
    let c = 0.5 * t0;
    // (0, t0 - c): substitute t = e^{-u}, u in (ln(1/(t0-c)), U)
    let left = {
        let g = |u: f64| {
            let t = (-u).exp();
            f(t) * t
        };
        let lo = -(t0 - c).ln();
        integrate(&g, lo, lo.max(0.0) + 120.0, opt)?
    };
    let window = {
        let g = |s: f64| f(t0 + s) + f(t0 - s);
        integrate(&g, 0.0, c, opt)?
    };
    // (t0 + c, inf): substitute t = (t0 + c)/u, u in (0, 1)
    let right = {
        let edge = t0 + c;
        let g = |u: f64| f(edge / u) * edge / (u * u);
        integrate(&g, 0.0, 1.0, opt)?
    };
    Ok(QuadEstimate {
        value: left.value + window.value + right.value,
        error: left.error + window.error + right.error,
        subdivisions: left.subdivisions + window.subdivisions + right.subdivisions,
    })
}

/// Excised integral over (0, t0 - rho) + (t0 + rho, infinity).
pub fn integrate_zero_inf_excised<F: Fn(f64) -> f64>(
    f: &F,
    t0: f64,
    rho: f64,
    opt: &QuadOptions,
) -> Result<QuadEstimate> {
    let left = {
        let g = |u: f64| {
            let t = (-u).exp();
            f(t) * t
        };
        let lo = -(t0 - rho).ln();
        integrate(&g, lo, lo.max(0.0) + 120.0, opt)?
    };
    let right = {
        let edge = t0 + rho;
        let g = |u: f64| f(edge / u) * edge / (u * u);
        integrate(&g, 0.0, 1.0, opt)?
    };
    Ok(QuadEstimate {
        value: left.value + right.value,
        error: left.error + right.error,
        subdivisions: left.subdivisions + right.subdivisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(&|x: f64| x * x, 0.0, 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn log_endpoint_singularity() {
        // int_0^1 ln(x) dx = -1
        let r = integrate(&|x: f64| x.ln(), 0.0, 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value + 1.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn improper_transform() {
        // int_0^inf t/((t^2+t+1)(t^2+2t+4)) dt = f1-type integrand, k = 0,
        // a = 1, b = 2; known value 3 ln2/7 - 2 pi/(21 sqrt3)
        let f = |t: f64| t / ((t * t + t + 1.0) * (t * t + 2.0 * t + 4.0));
        let r = integrate_zero_inf(&f, &QuadOptions::default()).unwrap();
        let want = 3.0 * 2f64.ln() / 7.0 - 2.0 * std::f64::consts::PI / (21.0 * 3f64.sqrt());
        assert!((r.value - want).abs() < 1e-12, "{} vs {want}", r.value);
    }

    #[test]
    fn principal_value_window() {
        // PV int_0^inf t(t+1)/((t^3-1)(t^2+2t+4)) dt = ln2 / 7
        let f = |t: f64| t * (t + 1.0) / ((t * t * t - 1.0) * (t * t + 2.0 * t + 4.0));
        let r = integrate_zero_inf_pv(&f, 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value - 2f64.ln() / 7.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn halving_tolerance_is_consistent() {
        let f = |t: f64| {
            let l = t.ln();
            t * l * l / ((t * t + 0.49 * t + 0.49) * (t * t + 3.1 * t + 9.61))
        };
        let loose = integrate_zero_inf(
            &f,
            &QuadOptions {
                abs_tol: 1e-9,
                rel_tol: 1e-9,
                ..Default::default()
            },
        )
        .unwrap();
        let tight = integrate_zero_inf(
            &f,
            &QuadOptions {
                abs_tol: 5e-10,
                rel_tol: 5e-10,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((loose.value - tight.value).abs() <= loose.error + tight.error);
    }
}
