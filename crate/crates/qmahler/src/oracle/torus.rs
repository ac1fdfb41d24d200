//! Direct torus quadrature of the measure for one and two variables.
//!
//! After the y-variable is removed by Jensen's reduction, the measure is
//! `(1/2pi)^n int log+ prod |K(theta_j)| dtheta` over (-pi, pi)^n with the
//! kernel `|K(theta)| = |cos(theta/2 + pi/3)| / |cos(theta/2)|`. The
//! conjugate-coefficient family carries the mirrored kernel with -pi/3; both
//! must produce the same measure. The integrand has integrable log blowups
//! along theta_j = +/-pi, handled by panels graded geometrically into the
//! singular edges.

use super::quad::{integrate, QuadOptions};
use crate::error::Result;

/// Which of the two conjugate kernels to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusKernel {
    Primary,
    Conjugate,
}

fn kernel_abs(theta: f64, k: TorusKernel) -> f64 {
    let shift = match k {
        TorusKernel::Primary => std::f64::consts::FRAC_PI_3,
        TorusKernel::Conjugate => -std::f64::consts::FRAC_PI_3,
    };
    ((theta / 2.0) + shift).cos().abs() / (theta / 2.0).cos().abs()
}

/// One-variable measure by adaptive quadrature.
pub fn torus_measure_1d(kernel: TorusKernel, tol: f64) -> Result<f64> {
    let f = |theta: f64| {
        let v = kernel_abs(theta, kernel);
        if v > 1.0 {
            v.ln()
        } else {
            0.0
        }
    };
    let opt = QuadOptions {
        abs_tol: tol * 0.2,
        rel_tol: tol * 0.2,
        max_subdivisions: 20_000,
    };
    let pi = std::f64::consts::PI;
    // split at the kink candidates (|K| = 1 transitions) and the poles
    let mut total = 0.0;
    for (a, b) in [(-pi, -pi / 3.0), (-pi / 3.0, pi / 3.0), (pi / 3.0, pi)] {
        total += integrate(&f, a, b, &opt)?.value;
    }
    Ok(total / (2.0 * pi))
}

/// Gauss-Legendre 16-point nodes/weights on [-1, 1] (positive half).
#[allow(clippy::excessive_precision)]
const GL16_X: [f64; 8] = [
    0.0950125098376374401853193,
    0.2816035507792589132304605,
    0.4580167776572273863424194,
    0.6178762444026437484466718,
    0.7554044083550030338951012,
    0.8656312023878317438804679,
    0.9445750230732325760779884,
    0.9894009349916499325961542,
];
#[allow(clippy::excessive_precision)]
const GL16_W: [f64; 8] = [
    0.1894506104550684962853967,
    0.1826034150449235888667637,
    0.1691565193950025381893121,
    0.1495959888165767320815017,
    0.1246289712555338720524763,
    0.0951585116824927848099251,
    0.0622535239386478928628438,
    0.0271524594117540948517806,
];

/// Panel edges for one axis: uniform through the interior, geometrically
/// graded into the log singularities at +/- pi.
fn panel_edges(levels: u32) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    let mut pos = vec![0.0, pi / 3.0, pi * 0.5, pi * 0.7, pi - 0.5];
    for j in 1..=levels {
        pos.push(pi - 0.5 / f64::powi(2.0, j as i32));
    }
    pos.push(pi);
    let mut edges: Vec<f64> = pos.iter().rev().map(|x| -x).collect();
    edges.pop();
    edges.extend(pos);
    edges
}

/// Two-variable measure by tensor-product Gauss-Legendre panels with local
/// refinement near the theta_j = +/- pi singularities.
pub fn torus_measure_2d(kernel: TorusKernel, levels: u32) -> f64 {
    let edges = panel_edges(levels);
    // per-axis nodes and the kernel value at each node, precomputed
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut kvals = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        for j in 0..16 {
            let (x, wgt) = if j < 8 {
                (-GL16_X[7 - j], GL16_W[7 - j])
            } else {
                (GL16_X[j - 8], GL16_W[j - 8])
            };
            let t = c + h * x;
            nodes.push(t);
            weights.push(wgt * h);
            kvals.push(kernel_abs(t, kernel).ln());
        }
    }
    let n = nodes.len();
    let mut acc = 0.0f64;
    for i in 0..n {
        let li = kvals[i];
        let wi = weights[i];
        let mut row = 0.0f64;
        for j in 0..n {
            let s = li + kvals[j];
            if s > 0.0 {
                row += weights[j] * s;
            }
        }
        acc += wi * row;
    }
    let pi = std::f64::consts::PI;
    acc / (4.0 * pi * pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_give_equal_measure_1d() {
        let a = torus_measure_1d(TorusKernel::Primary, 1e-8).unwrap();
        let b = torus_measure_1d(TorusKernel::Conjugate, 1e-8).unwrap();
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
        // reference: 0.538443245365750856822...
        assert!((a - 0.5384432453657509).abs() < 1e-7, "{a}");
    }

    #[test]
    fn torus_2d_reference() {
        // m(Q_2) = 0.79521654674720309...
        let v = torus_measure_2d(TorusKernel::Primary, 16);
        assert!((v - 0.7952165467472031).abs() < 1e-3, "{v}");
    }
}
