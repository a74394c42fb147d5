//! Norms, decay bounds, predicted exponents and empirical rate fits.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::SoninePair;
use crate::spectral::{FieldState, OperatorSymbol};
use crate::volterra::fmt_num;

/// Least squares line `y = slope x + intercept`; returns the slope,
/// intercept and root-mean-square residual.
pub fn least_squares(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::validation("fit", "need at least two paired samples"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if !(sxx > 0.0) {
        return Err(Error::validation("fit", "abscissae are all equal"));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - (slope * a + intercept);
            r * r
        })
        .sum();
    Ok((slope, intercept, (ss / n).sqrt()))
}

/// Rectangle-rule `L^p` norm on the grid; `p = f64::INFINITY` gives the max modulus.
pub fn lp_norm(state: &FieldState, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::domain("lp_norm", format!("p must be >= 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(state.values.iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    let dv = state.grid.cell_volume();
    let sum: f64 = if p == 2.0 {
        state.values.iter().map(|v| v.norm_sqr()).sum()
    } else {
        state.values.iter().map(|v| v.norm().powf(p)).sum()
    };
    Ok((dv * sum).powf(1.0 / p))
}

/// Homogeneous Sobolev norm `(P^n sum_{xi != 0} sigma(xi)^{2s/nu} |c_xi|^2)^{1/2}`.
pub fn sobolev_norm(state: &FieldState, s: f64, symbol: &OperatorSymbol) -> Result<f64> {
    let sigma = state.grid.symbol_values(symbol)?;
    let c = state.coefficients();
    let e = 2.0 * s / symbol.nu;
    let sum: f64 = sigma
        .iter()
        .zip(&c)
        .filter(|(&sg, _)| sg > 0.0)
        .map(|(&sg, c)| sg.powf(e) * c.norm_sqr())
        .sum();
    let vol = state.grid.period.powi(state.grid.dim as i32);
    Ok((vol * sum).sqrt())
}

/// Closed-form supremum of `v^{lambda/r} / (1 + v L)` over `v > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupBound {
    pub value: f64,
    /// `None` when `r = lambda` and the supremum is approached as `v -> inf`.
    pub maximizer: Option<f64>,
    pub numeric_value: f64,
    pub relative_difference: f64,
}

/// [`sup_bound`] at `L = (1*l)(t)` of `pair`.
pub fn decay_sup_bound(lambda: f64, r: f64, pair: &SoninePair, t: f64) -> Result<SupBound> {
    if !(t > 0.0) {
        return Err(Error::domain("decay_sup_bound", format!("t must be positive, got {t}")));
    }
    sup_bound(lambda, r, pair.cumulative_l(t)?)
}

pub fn sup_bound(lambda: f64, r: f64, big_l: f64) -> Result<SupBound> {
    if !(lambda > 0.0) || !(r > 0.0) {
        return Err(Error::domain("decay_sup_bound", "lambda and r must be positive"));
    }
    if r < lambda {
        return Err(Error::domain(
            "decay_sup_bound",
            format!("r = {r} < lambda = {lambda}: requires nu/Q >= 1/p - 1/q"),
        ));
    }
    if !(big_l > 0.0) || !big_l.is_finite() {
        return Err(Error::domain(
            "decay_sup_bound",
            format!("L(t) must be positive, got {big_l}"),
        ));
    }
    let e = lambda / r;
    let f = |v: f64| v.powf(e) / (1.0 + v * big_l);
    if r == lambda {
        let value = 1.0 / big_l;
        // v / (1 + vL) increases toward 1/L
        let numeric = f(1e12 / big_l);
        return Ok(SupBound {
            value,
            maximizer: None,
            numeric_value: numeric,
            relative_difference: ((numeric - value) / value).abs(),
        });
    }
    let vstar = lambda / ((r - lambda) * big_l);
    let value = f(vstar);
    let numeric = numeric_sup(&f, vstar / big_l.max(1.0) * 1e-4, vstar * big_l.max(1.0) * 1e4);
    Ok(SupBound {
        value,
        maximizer: Some(vstar),
        numeric_value: numeric,
        relative_difference: ((numeric - value) / value).abs(),
    })
}

/// Scan `10^4` log-spaced points, then refine the best bracket by golden section.
fn numeric_sup(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    const SCAN: usize = 10_000;
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / (SCAN - 1) as f64;
    let g = |x: f64| f(x.exp());
    let best = (0..SCAN)
        .map(|i| (i, g(a + step * i as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let mut lo = a + step * best.0.saturating_sub(1) as f64;
    let mut hi = a + step * (best.0 + 1).min(SCAN - 1) as f64;
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let x1 = hi - phi * (hi - lo);
        let x2 = lo + phi * (hi - lo);
        if g(x1) < g(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    best.1.max(g(0.5 * (lo + hi)))
}

/// Predicted envelope `L(t)^{exponent}` with `exponent = -(Q/nu)(1/p - 1/q)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayPrediction {
    pub p: f64,
    pub q: f64,
    pub big_q: f64,
    pub nu: f64,
    pub exponent: f64,
    /// Exponent of `t` for fractional pairs, where `L(t) = t^alpha / Gamma(1 + alpha)`.
    pub pure_power: Option<f64>,
}

impl DecayPrediction {
    pub fn envelope(&self, pair: &SoninePair, t: f64) -> Result<f64> {
        Ok(pair.cumulative_l(t)?.powf(self.exponent))
    }
}

pub fn predict_decay_rate(p: f64, q: f64, big_q: f64, nu: f64, pair: &SoninePair) -> Result<DecayPrediction> {
    if !(1.0 < p && p <= 2.0) {
        return Err(Error::domain(
            "predict_decay_rate",
            format!("need 1 < p <= 2, got p = {p}"),
        ));
    }
    if !(2.0 <= q && q.is_finite()) {
        return Err(Error::domain(
            "predict_decay_rate",
            format!("need 2 <= q < inf, got q = {q}"),
        ));
    }
    if !(big_q > 0.0) || !(nu > 0.0) {
        return Err(Error::domain("predict_decay_rate", "Q and nu must be positive"));
    }
    let gap = 1.0 / p - 1.0 / q;
    if nu / big_q < gap - 1e-15 {
        return Err(Error::domain(
            "predict_decay_rate",
            format!("nu/Q = {} < 1/p - 1/q = {gap}", nu / big_q),
        ));
    }
    let exponent = -(big_q / nu) * gap;
    let pure_power = match pair.spec() {
        Some(crate::kernels::KernelSpec::Fractional { alpha }) => Some(alpha * exponent),
        _ => None,
    };
    Ok(DecayPrediction {
        p,
        q,
        big_q,
        nu,
        exponent,
        pure_power,
    })
}

/// Norm whose decay a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormSpec {
    Lp { p: f64, q: f64 },
    Sobolev { s: f64 },
}

/// Slope of `log norm` against `log L(t)` over a window.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayFit {
    pub window: (f64, f64),
    pub samples: usize,
    pub fitted_exponent: f64,
    pub intercept: f64,
    pub residual: f64,
}

pub const MIN_FIT_SAMPLES: usize = 8;

pub fn fit_decay_exponent(series: &[(f64, f64)], pair: &SoninePair, window: (f64, f64)) -> Result<DecayFit> {
    if !(window.0 > 0.0 && window.1 > window.0) {
        return Err(Error::validation(
            "window",
            format!("need 0 < t_lo < t_hi, got {window:?}"),
        ));
    }
    let inside: Vec<&(f64, f64)> = series
        .iter()
        .filter(|(t, _)| *t >= window.0 && *t <= window.1)
        .collect();
    if inside.len() < MIN_FIT_SAMPLES {
        return Err(Error::validation(
            "window",
            format!("{} samples in window, need at least {MIN_FIT_SAMPLES}", inside.len()),
        ));
    }
    if let Some((t, n)) = inside.iter().find(|(_, n)| !(*n > 0.0) || !n.is_finite()) {
        return Err(Error::Data(format!("norm at t = {t} is {n}, must be positive")));
    }
    let mut x = Vec::with_capacity(inside.len());
    for (t, _) in &inside {
        x.push(pair.cumulative_l(*t)?.ln());
    }
    let y: Vec<f64> = inside.iter().map(|(_, n)| n.ln()).collect();
    let (slope, intercept, residual) = least_squares(&x, &y)?;
    Ok(DecayFit {
        window,
        samples: inside.len(),
        fitted_exponent: slope,
        intercept,
        residual,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayReport {
    pub norm: NormSpec,
    pub predicted_exponent: f64,
    pub fitted_exponent: f64,
    pub residual: f64,
    pub window: (f64, f64),
    pub samples: usize,
    pub tolerance: f64,
    pub passed: bool,
}

impl DecayReport {
    /// Passes when `|fitted - predicted| <= tolerance`.
    pub fn new(fit: &DecayFit, predicted: f64, tolerance: f64, norm: NormSpec) -> Self {
        DecayReport {
            norm,
            predicted_exponent: predicted,
            fitted_exponent: fit.fitted_exponent,
            residual: fit.residual,
            window: fit.window,
            samples: fit.samples,
            tolerance,
            passed: (fit.fitted_exponent - predicted).abs() <= tolerance,
        }
    }
}

/// CSV `t,L,norm,envelope`; the envelope `L^exponent` is scaled to meet the
/// series at its first sample.
pub fn write_norm_series(path: &Path, series: &[(f64, f64)], pair: &SoninePair, exponent: f64) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "t,L,norm,envelope")?;
    let mut scale = None;
    for &(t, n) in series {
        let big_l = pair.cumulative_l(t)?;
        let c = *scale.get_or_insert(n / big_l.powf(exponent));
        writeln!(
            w,
            "{},{},{},{}",
            fmt_num(t),
            fmt_num(big_l),
            fmt_num(n),
            fmt_num(c * big_l.powf(exponent))
        )?;
    }
    w.flush()?;
    Ok(())
}
