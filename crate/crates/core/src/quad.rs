//! Quadrature rules shared by the kernel and Volterra modules.
//!
//! Two rules are provided: fixed Gauss-Legendre for smooth integrands and an
//! adaptive tanh-sinh rule for integrands with integrable endpoint
//! singularities. The tanh-sinh rule evaluates the integrand at `a + d` and
//! `b - d` with the endpoint distance `d` computed directly, so a singularity
//! sitting at `a = 0` is approached down to subnormal distances without ever
//! being evaluated.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Adaptive tanh-sinh quadrature of `f` over `[a, b]`.
///
/// The integrand may have integrable algebraic or logarithmic singularities
/// at either endpoint. Convergence is declared when two successive levels
/// agree to `tol` (absolute) or to `tol` relative to the integral.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if !(b > a) {
        if a == b {
            return Ok(QuadResult {
                value: 0.0,
                error_estimate: 0.0,
                evaluations: 0,
            });
        }
        return Err(Error::domain("tanh_sinh", format!("empty interval [{a}, {b}]")));
    }
    const MAX_LEVEL: usize = 10;
    const T_MAX: f64 = 6.5;
    let half = 0.5 * (b - a);
    let width = b - a;
    let mut evaluations = 0usize;

    // Contribution of abscissa parameter t (t != 0), both mirrored points.
    let pair = |t: f64, evals: &mut usize| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let e = (2.0 * u).exp();
        // distance of the node from the nearer endpoint
        let d = width / (e + 1.0);
        let ch = u.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (ch * ch);
        if d == 0.0 || w == 0.0 || !w.is_finite() {
            return 0.0;
        }
        let mut s = 0.0;
        let xl = a + d;
        if xl > a {
            *evals += 1;
            s += w * f(xl);
        }
        let xr = b - d;
        if xr < b {
            *evals += 1;
            s += w * f(xr);
        }
        s
    };

    let mut h = 1.0;
    evaluations += 1;
    let mut sum = half * FRAC_PI_2 * f(a + half);
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > T_MAX {
            break;
        }
        sum += pair(t, &mut evaluations);
        k += 1;
    }
    let mut estimate = h * sum;
    let mut error = f64::INFINITY;
    for _level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            sum += pair(t, &mut evaluations);
            k += 2;
        }
        let next = h * sum;
        error = (next - estimate).abs();
        estimate = next;
        if !estimate.is_finite() {
            return Err(Error::accuracy("tanh_sinh", "integrand produced a non-finite value"));
        }
        if error <= tol || error <= tol * estimate.abs() {
            return Ok(QuadResult {
                value: estimate,
                error_estimate: error,
                evaluations,
            });
        }
    }
    Err(Error::accuracy(
        "tanh_sinh",
        format!("no convergence on [{a}, {b}]: last change {error:e}, value {estimate}"),
    ))
}
