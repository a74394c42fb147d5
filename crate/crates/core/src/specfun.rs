//! Special functions needed by the kernel families: gamma, two-parameter and
//! multivariate Mittag-Leffler functions, and the exponential integral E1.
//!
//! Mittag-Leffler functions use the convention `E_{a,b}(z) = sum z^k / Gamma(a k + b)`.
//! On the negative real axis with `0 < a < 1` three branches are used. The
//! natural scale variable is `x^{1/a}` with `x = -z`: the power series loses
//! roughly `exp(x^{1/a})` to cancellation, and the asymptotic expansion has an
//! optimal-truncation remainder of order `exp(-x^{1/a})`.
//!
//! * `x^{1/a} <= series_limit`: power series with cached coefficients.
//! * `x^{1/a} >= asymptotic_start`: the algebraic expansion
//!   `E_{a,b}(-x) ~ sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(b - a k)`.
//! * otherwise: inversion of the Laplace transform `s^{a-b} / (s^a + x)` along
//!   a parabolic contour.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Gamma function for positive arguments.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("gamma_fn", format!("argument must be positive, got {x}")));
    }
    Ok(gamma_pos(x))
}

fn gamma_pos(x: f64) -> f64 {
    if x > 171.7 {
        return f64::INFINITY;
    }
    statrs::function::gamma::gamma(x)
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        (PI * (1.0 - r)).sin()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// Reciprocal gamma function `1/Gamma(x)`, an entire function of `x`.
pub fn rgamma(x: f64) -> f64 {
    if x > 0.0 {
        if x > 171.0 {
            return (-ln_gamma(x)).exp();
        }
        return 1.0 / gamma_pos(x);
    }
    // reflection: 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
    let s = sin_pi(x);
    if s == 0.0 {
        return 0.0;
    }
    let y = 1.0 - x;
    if y > 171.0 {
        let sign = s.signum();
        return sign * (ln_gamma(y) + s.abs().ln() - PI.ln()).exp();
    }
    gamma_pos(y) * s / PI
}

/// Power kernel `g_mu(t) = t^{mu-1} / Gamma(mu)` for `t > 0`.
pub fn power_kernel(mu: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return if mu < 1.0 {
            f64::INFINITY
        } else if mu == 1.0 {
            1.0
        } else {
            0.0
        };
    }
    if mu == 1.0 {
        return 1.0;
    }
    ((mu - 1.0) * t.ln()).exp() * rgamma(mu)
}

/// Orders of the two-parameter Mittag-Leffler function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MlOrder {
    pub alpha: f64,
    pub beta: f64,
}

impl MlOrder {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::validation("alpha", format!("must be > 0, got {alpha}")));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::validation("beta", format!("must be > 0, got {beta}")));
        }
        Ok(MlOrder { alpha, beta })
    }
}

/// Orders of the multivariate Mittag-Leffler function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MvMlOrder {
    pub alphas: Vec<f64>,
    pub beta: f64,
}

impl MvMlOrder {
    pub fn new(alphas: Vec<f64>, beta: f64) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::validation("alphas", "need at least one order"));
        }
        for (i, a) in alphas.iter().enumerate() {
            if !(*a > 0.0) || !a.is_finite() {
                return Err(Error::validation(
                    format!("alphas[{i}]"),
                    format!("must be > 0, got {a}"),
                ));
            }
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::validation("beta", format!("must be > 0, got {beta}")));
        }
        Ok(MvMlOrder { alphas, beta })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }
}

/// Branch thresholds, expressed in the scale variable `x^{1/alpha}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MlConfig {
    pub series_limit: f64,
    pub asymptotic_start: f64,
    pub contour_nodes: usize,
}

impl Default for MlConfig {
    fn default() -> Self {
        MlConfig {
            series_limit: 4.0,
            asymptotic_start: 40.0,
            contour_nodes: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlBranch {
    Series,
    Contour,
    Asymptotic,
}

/// Evaluator for one fixed order, caching the series and asymptotic
/// coefficients. Cheap to clone, `Send + Sync`.
#[derive(Debug, Clone)]
pub struct MittagLeffler {
    order: MlOrder,
    config: MlConfig,
    series_coeffs: Vec<f64>,
    series_radius: f64,
}

impl MittagLeffler {
    pub fn new(order: MlOrder) -> Self {
        Self::with_config(order, MlConfig::default())
    }

    pub fn with_config(order: MlOrder, config: MlConfig) -> Self {
        let MlOrder { alpha, beta } = order;
        // Cached series covers |z| up to the series limit (and at least 1).
        let radius = config.series_limit.powf(alpha).max(1.0);
        let ln_r = radius.ln();
        let mut coeffs = Vec::new();
        let mut k = 0usize;
        loop {
            let arg = alpha * k as f64 + beta;
            coeffs.push(rgamma(arg));
            let ln_mag = k as f64 * ln_r - ln_gamma(arg);
            if k > 4 && arg > 2.0 && ln_mag < -42.0 {
                break;
            }
            if k > 20_000 {
                break;
            }
            k += 1;
        }
        MittagLeffler {
            order,
            config,
            series_coeffs: coeffs,
            series_radius: radius,
        }
    }

    pub fn order(&self) -> MlOrder {
        self.order
    }

    /// Branch used for argument `z`.
    pub fn branch(&self, z: f64) -> MlBranch {
        let MlOrder { alpha, .. } = self.order;
        if z >= 0.0 || alpha >= 1.0 {
            return MlBranch::Series;
        }
        let scale = (-z).powf(1.0 / alpha);
        if scale <= self.config.series_limit {
            MlBranch::Series
        } else if scale >= self.config.asymptotic_start {
            MlBranch::Asymptotic
        } else {
            MlBranch::Contour
        }
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        let MlOrder { alpha, beta } = self.order;
        if z.is_nan() {
            return Err(Error::domain("mittag_leffler", "argument is NaN"));
        }
        if z == 0.0 {
            return Ok(rgamma(beta));
        }
        if alpha == 1.0 && beta == 1.0 {
            return Ok(z.exp());
        }
        if alpha >= 1.0 && z < 0.0 {
            return self.series_checked(z);
        }
        match self.branch(z) {
            MlBranch::Series => {
                if z.abs() <= self.series_radius {
                    Ok(self.series_cached(z))
                } else {
                    self.series_checked(z)
                }
            }
            MlBranch::Contour => Ok(self.contour(-z)),
            MlBranch::Asymptotic => ml_asymptotic(self.order, -z),
        }
    }

    /// Power series from the cached coefficients (|z| within the cached radius).
    pub fn series_cached(&self, z: f64) -> f64 {
        self.series_coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
    }

    /// Contour value of `E(-x)` for `x > 0`.
    pub fn contour(&self, x: f64) -> f64 {
        let MlOrder { alpha, beta } = self.order;
        laplace_inverse(
            |s| {
                let sa = s.powf(alpha);
                s.powf(alpha - beta) / (sa + x)
            },
            1.0,
            self.config.contour_nodes,
        )
    }

    /// Power series with running cancellation and overflow diagnostics.
    fn series_checked(&self, z: f64) -> Result<f64> {
        let s = ml_series(self.order, z, 200_000)?;
        let rel_noise = f64::EPSILON * s.abs_sum / s.value.abs().max(f64::MIN_POSITIVE);
        if rel_noise > 1e-8 {
            return Err(Error::accuracy(
                "mittag_leffler",
                format!(
                    "series cancellation for alpha={}, beta={}, z={z}: sum of |terms| = {:e}, value = {:e}",
                    self.order.alpha, self.order.beta, s.abs_sum, s.value
                ),
            ));
        }
        Ok(s.value)
    }
}

const TAB_DEGREE: usize = 32;
const TAB_PANELS: usize = 60;

/// `E_{alpha,beta}(-x)` for `x >= 0` from Chebyshev interpolants on the
/// panels `[0, 1]` and `[2^(j-1), 2^j]`, each built on first use from a
/// [`MittagLeffler`] evaluator. Clones share the panels.
#[derive(Debug, Clone)]
pub struct TabulatedMl {
    ml: MittagLeffler,
    panels: Arc<Vec<OnceLock<Result<Vec<f64>>>>>,
}

impl TabulatedMl {
    pub fn new(order: MlOrder) -> Self {
        TabulatedMl {
            ml: MittagLeffler::new(order),
            panels: Arc::new((0..TAB_PANELS).map(|_| OnceLock::new()).collect()),
        }
    }

    pub fn order(&self) -> MlOrder {
        self.ml.order()
    }

    fn bounds(j: usize) -> (f64, f64) {
        if j == 0 {
            (0.0, 1.0)
        } else {
            (2f64.powi(j as i32 - 1), 2f64.powi(j as i32))
        }
    }

    fn build(&self, j: usize) -> Result<Vec<f64>> {
        let (a, b) = Self::bounds(j);
        let n = TAB_DEGREE + 1;
        let mut f = Vec::with_capacity(n);
        for k in 0..n {
            let y = (PI * (k as f64 + 0.5) / n as f64).cos();
            f.push(self.ml.eval(-(0.5 * (a + b) + 0.5 * (b - a) * y))?);
        }
        Ok((0..n)
            .map(|m| {
                let s: f64 = (0..n)
                    .map(|k| f[k] * (PI * m as f64 * (k as f64 + 0.5) / n as f64).cos())
                    .sum();
                if m == 0 {
                    s / n as f64
                } else {
                    2.0 * s / n as f64
                }
            })
            .collect())
    }

    /// `E_{alpha,beta}(-x)`; falls back to direct evaluation past the last panel.
    pub fn eval_neg(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return self.ml.eval(-x);
        }
        let j = if x < 1.0 { 0 } else { x.log2().floor() as usize + 1 };
        if j >= TAB_PANELS {
            return self.ml.eval(-x);
        }
        let c = self.panels[j]
            .get_or_init(|| self.build(j))
            .as_ref()
            .map_err(Clone::clone)?;
        let (a, b) = Self::bounds(j);
        let y = ((2.0 * x - a - b) / (b - a)).clamp(-1.0, 1.0);
        // Clenshaw
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ck in c[1..].iter().rev() {
            let t = 2.0 * y * b1 - b2 + ck;
            b2 = b1;
            b1 = t;
        }
        Ok(y * b1 - b2 + c[0])
    }
}

/// Result of a directly summed power series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: f64,
    pub abs_sum: f64,
    pub terms: usize,
}

/// Direct power series `sum z^k / Gamma(alpha k + beta)` using log-gamma for
/// large arguments. Errors on overflow or if `max_terms` is not enough.
pub fn ml_series(order: MlOrder, z: f64, max_terms: usize) -> Result<SeriesValue> {
    let MlOrder { alpha, beta } = order;
    if z == 0.0 {
        return Ok(SeriesValue {
            value: rgamma(beta),
            abs_sum: rgamma(beta).abs(),
            terms: 1,
        });
    }
    let ln_z = z.abs().ln();
    let negative = z < 0.0;
    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut past_peak = false;
    let mut prev_mag = f64::NEG_INFINITY;
    for k in 0..max_terms {
        let arg = alpha * k as f64 + beta;
        let ln_mag = k as f64 * ln_z - ln_gamma(arg);
        if ln_mag > 709.0 {
            return Err(Error::Overflow {
                op: "mittag_leffler",
                detail: format!("series term {k} exceeds f64 range (alpha={alpha}, beta={beta}, z={z})"),
            });
        }
        let mag = ln_mag.exp();
        let term = if negative && k % 2 == 1 { -mag } else { mag };
        sum += term;
        abs_sum += mag;
        if !sum.is_finite() || !abs_sum.is_finite() {
            return Err(Error::Overflow {
                op: "mittag_leffler",
                detail: format!("series sum exceeds f64 range (alpha={alpha}, beta={beta}, z={z})"),
            });
        }
        if ln_mag < prev_mag && arg > 2.0 {
            past_peak = true;
        }
        prev_mag = ln_mag;
        if past_peak && mag <= 1e-17 * abs_sum.max(f64::MIN_POSITIVE) {
            return Ok(SeriesValue {
                value: sum,
                abs_sum,
                terms: k + 1,
            });
        }
    }
    Err(Error::accuracy(
        "mittag_leffler",
        format!("series did not converge in {max_terms} terms (alpha={alpha}, beta={beta}, z={z})"),
    ))
}

/// Negative-axis asymptotic expansion of `E_{a,b}(-x)`, summed to optimal
/// truncation. Errors if the smallest remainder envelope exceeds 1e-14
/// relative to the value.
pub fn ml_asymptotic(order: MlOrder, x: f64) -> Result<f64> {
    let MlOrder { alpha, beta } = order;
    if !(x > 0.0) {
        return Err(Error::domain("ml_asymptotic", format!("need x > 0, got {x}")));
    }
    let ln_x = x.ln();
    let mut sum = 0.0;
    let mut prev_env = f64::INFINITY;
    let mut last_env = f64::INFINITY;
    for k in 1..2000usize {
        let kf = k as f64;
        let c = rgamma(beta - alpha * kf);
        let xk = (-kf * ln_x).exp();
        let term = c * xk;
        // 1/Gamma(b - a k) oscillates; the reflection bound Gamma(1 - b + a k)/pi
        // is a smooth envelope for the remainder.
        let arg = 1.0 - beta + alpha * kf;
        if arg >= 1.5 {
            let env = (ln_gamma(arg) - kf * ln_x).exp() / PI;
            if env > prev_env {
                break;
            }
            prev_env = env;
            last_env = env;
        }
        sum += if k % 2 == 1 { term } else { -term };
        if last_env < 1e-17 * sum.abs() {
            return Ok(sum);
        }
    }
    if last_env <= 1e-14 * sum.abs().max(f64::MIN_POSITIVE) {
        return Ok(sum);
    }
    Err(Error::accuracy(
        "mittag_leffler",
        format!("asymptotic expansion of E_{{{alpha},{beta}}}(-{x}) stalls at remainder {last_env:e} (value {sum:e})"),
    ))
}

/// Two-parameter Mittag-Leffler function `E_{alpha,beta}(z)`.
pub fn mittag_leffler(order: MlOrder, z: f64) -> Result<f64> {
    MittagLeffler::new(order).eval(z)
}

/// Inverse Laplace transform at time `t` by trapezoidal quadrature along the
/// parabola `s = m (1 + i u)^2`. `transform` must be analytic off the negative
/// real axis and decay as `|s| -> infinity`.
pub fn laplace_inverse<F: Fn(Complex64) -> Complex64>(transform: F, t: f64, nodes: usize) -> f64 {
    let n = nodes as f64;
    let h = 3.0 / n;
    let m = 0.2 * n / t;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=nodes {
        let u = k as f64 * h;
        let w = Complex64::new(1.0, u);
        let s = m * w * w;
        let g = (s * t).exp() * transform(s) * w;
        acc += if k == 0 { g } else { 2.0 * g };
    }
    h * m / PI * acc.re
}

/// Result of a multivariate Mittag-Leffler evaluation.
#[derive(Debug, Clone, Copy)]
pub struct MvValue {
    pub value: f64,
    /// Magnitude of the last summed shell, used as the tail estimate.
    pub tail_estimate: f64,
    /// Sum of absolute term values, a measure of cancellation.
    pub abs_sum: f64,
    pub degree: usize,
}

/// Default truncation degree for the multivariate series.
pub const MV_DEFAULT_TRUNCATION: usize = 80;

/// Compositions of `k` into `m` nonnegative parts with their multinomial
/// coefficients `k! / (l_1! ... l_m!)`.
pub fn shell_terms(m: usize, k: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::new();
    let mut parts = vec![0usize; m];
    fn rec(idx: usize, remaining: usize, parts: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, f64)>, k: usize) {
        let m = parts.len();
        if idx == m - 1 {
            parts[idx] = remaining;
            let ln_coef = ln_factorial(k) - parts.iter().map(|&l| ln_factorial(l)).sum::<f64>();
            out.push((parts.clone(), ln_coef.exp().round()));
            return;
        }
        for l in 0..=remaining {
            parts[idx] = l;
            rec(idx + 1, remaining - l, parts, out, k);
        }
    }
    if m == 0 {
        return out;
    }
    rec(0, k, &mut parts, &mut out, k);
    out
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Multivariate Mittag-Leffler function by shell-ordered multinomial
/// summation up to total degree `truncation`.
///
/// With one variable it coincides with [`mittag_leffler`] and is evaluated by
/// the univariate routine.
pub fn mv_mittag_leffler(order: &MvMlOrder, z: &[f64], truncation: usize) -> Result<MvValue> {
    if z.len() != order.len() {
        return Err(Error::validation(
            "z",
            format!("expected {} arguments, got {}", order.len(), z.len()),
        ));
    }
    if order.len() == 1 {
        let v = mittag_leffler(MlOrder::new(order.alphas[0], order.beta)?, z[0])?;
        return Ok(MvValue {
            value: v,
            tail_estimate: 0.0,
            abs_sum: v.abs(),
            degree: 0,
        });
    }
    let m = order.len();
    let ln_abs: Vec<f64> = z.iter().map(|v| v.abs().ln()).collect();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut shell_mag = 0.0;
    let mut parts = vec![0usize; m];
    for k in 0..=truncation {
        let mut shell = 0.0;
        let mut shell_abs = 0.0;
        // enumerate compositions of k in place
        shell_walk(0, k, &mut parts, &mut |p| {
            let mut ln_mag = ln_factorial(k);
            let mut arg = order.beta;
            let mut negative = false;
            for j in 0..m {
                let l = p[j];
                ln_mag -= ln_factorial(l);
                arg += order.alphas[j] * l as f64;
                if l > 0 {
                    if z[j] == 0.0 {
                        return;
                    }
                    ln_mag += l as f64 * ln_abs[j];
                    if z[j] < 0.0 && l % 2 == 1 {
                        negative = !negative;
                    }
                }
            }
            let r = rgamma(arg);
            if r == 0.0 {
                return;
            }
            let mag = (ln_mag + r.abs().ln()).exp();
            let sign = if negative != (r < 0.0) { -1.0 } else { 1.0 };
            shell += sign * mag;
            shell_abs += mag;
        });
        sum += shell;
        abs_sum += shell_abs;
        shell_mag = shell_abs;
        if !abs_sum.is_finite() {
            return Err(Error::Overflow {
                op: "mv_mittag_leffler",
                detail: format!("shell {k} overflows"),
            });
        }
        if k > 2 && shell_abs <= 1e-16 * sum.abs().max(f64::MIN_POSITIVE) {
            return Ok(MvValue {
                value: sum,
                tail_estimate: shell_abs,
                abs_sum,
                degree: k,
            });
        }
    }
    Err(Error::accuracy(
        "mv_mittag_leffler",
        format!(
            "truncation degree {truncation} reached with last shell {shell_mag:e} (value {sum:e}); requested accuracy unreachable"
        ),
    ))
}

fn shell_walk(idx: usize, remaining: usize, parts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let m = parts.len();
    if idx == m - 1 {
        parts[idx] = remaining;
        f(parts);
        return;
    }
    for l in 0..=remaining {
        parts[idx] = l;
        shell_walk(idx + 1, remaining - l, parts, f);
    }
}

/// Exponential integral `E1(x) = int_x^inf e^{-t}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(
            "exp_integral_e1",
            format!("argument must be positive, got {x}"),
        ));
    }
    if x <= 1.0 {
        Ok(-EULER_GAMMA - x.ln() + ein(x))
    } else {
        Ok((-x).exp() * e1_continued_fraction(x))
    }
}

/// `e^x E1(x)`, finite for all `x > 0` (no overflow for large x).
pub fn scaled_exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(
            "scaled_exp_integral_e1",
            format!("argument must be positive, got {x}"),
        ));
    }
    if x <= 1.0 {
        Ok(x.exp() * (-EULER_GAMMA - x.ln() + ein(x)))
    } else {
        Ok(e1_continued_fraction(x))
    }
}

/// Entire part `Ein(x) = E1(x) + ln x + gamma = sum_{k>=1} (-1)^{k+1} x^k / (k k!)`.
pub fn ein(x: f64) -> f64 {
    if x.abs() > 1.0 {
        // direct sum still converges but loses accuracy; use the identity instead
        if x > 0.0 {
            return (-x).exp() * e1_continued_fraction(x) + x.ln() + EULER_GAMMA;
        }
    }
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -x / kf;
        let add = -term / kf;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Continued fraction for `e^x E1(x)`, accurate for `x > 1`.
fn e1_continued_fraction(x: f64) -> f64 {
    // modified Lentz on E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}
