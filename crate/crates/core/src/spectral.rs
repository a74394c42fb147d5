//! Frequency-by-frequency evolution on periodic grids and lattice counting.
//!
//! On the torus of period `P` every Fourier mode `e^{i xi x}`, `xi = (2 pi / P) kappa`
//! with `kappa` in `Z^n`, evolves independently: `u_hat(t) = s_{sigma(xi)}(t) u_hat(0)`
//! for the homogeneous problem. Relaxation solves are shared between all modes
//! with the same symbol value.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::SoninePair;
use crate::volterra::{fmt_num, TimeGrid, VolterraSolver};

/// Kind and parameters of a homogeneous elliptic symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolKind {
    /// `|xi|^2`
    Laplacian,
    /// `|xi|^{2m}`
    Polyharmonic { m: u32 },
    /// `sum_j a_j xi_j^{2m}`
    Anisotropic { a: Vec<f64>, m: u32 },
}

/// Frequency-domain symbol `sigma(xi)` with homogeneous order `nu` and
/// homogeneous dimension `Q = n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorSymbol {
    pub kind: SymbolKind,
    pub dim: usize,
    pub nu: f64,
    pub q: f64,
}

pub fn make_symbol(kind: SymbolKind, dim: usize) -> Result<OperatorSymbol> {
    if !(dim == 1 || dim == 2) {
        return Err(Error::validation("operator.dim", format!("must be 1 or 2, got {dim}")));
    }
    let nu = match &kind {
        SymbolKind::Laplacian => 2.0,
        SymbolKind::Polyharmonic { m } => {
            if *m < 1 {
                return Err(Error::validation("operator.m", "must be at least 1"));
            }
            2.0 * *m as f64
        }
        SymbolKind::Anisotropic { a, m } => {
            if *m < 1 {
                return Err(Error::validation("operator.m", "must be at least 1"));
            }
            if a.len() != dim {
                return Err(Error::validation(
                    "operator.a",
                    format!("need {dim} coefficients, got {}", a.len()),
                ));
            }
            if let Some(bad) = a.iter().find(|&&x| !(x > 0.0) || !x.is_finite()) {
                return Err(Error::validation(
                    "operator.a",
                    format!("coefficients must be positive, got {bad}"),
                ));
            }
            2.0 * *m as f64
        }
    };
    Ok(OperatorSymbol {
        kind,
        dim,
        nu,
        q: dim as f64,
    })
}

impl OperatorSymbol {
    /// `sigma(xi)` for a real frequency vector.
    pub fn eval(&self, xi: &[f64]) -> f64 {
        match &self.kind {
            SymbolKind::Laplacian => xi.iter().map(|x| x * x).sum(),
            SymbolKind::Polyharmonic { m } => xi.iter().map(|x| x * x).sum::<f64>().powi(*m as i32),
            SymbolKind::Anisotropic { a, m } => a.iter().zip(xi).map(|(a, x)| a * x.powi(2 * *m as i32)).sum(),
        }
    }

    /// `sigma(kappa)` on the integer lattice, exact in integer arithmetic for
    /// the isotropic symbols.
    pub fn eval_lattice(&self, kappa: &[i64]) -> f64 {
        match &self.kind {
            SymbolKind::Laplacian => kappa.iter().map(|k| k * k).sum::<i64>() as f64,
            SymbolKind::Polyharmonic { m } => {
                let r2: i64 = kappa.iter().map(|k| k * k).sum();
                (r2 as f64).powi(*m as i32)
            }
            SymbolKind::Anisotropic { a, m } => a
                .iter()
                .zip(kappa)
                .map(|(a, &k)| a * ((k * k) as f64).powi(*m as i32))
                .sum(),
        }
    }

    /// Constant `c` with `sigma(kappa) >= c max_j |kappa_j|^nu`.
    fn axis_growth(&self) -> f64 {
        match &self.kind {
            SymbolKind::Laplacian | SymbolKind::Polyharmonic { .. } => 1.0,
            SymbolKind::Anisotropic { a, .. } => a.iter().cloned().fold(f64::INFINITY, f64::min),
        }
    }
}

/// Homogeneous groups that only enter analytic rate predictions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupMetadata {
    Heisenberg { n: u32 },
    Engel,
}

impl GroupMetadata {
    /// Homogeneous dimension.
    pub fn q(&self) -> f64 {
        match self {
            GroupMetadata::Heisenberg { n } => 2.0 * *n as f64 + 2.0,
            GroupMetadata::Engel => 7.0,
        }
    }

    /// Rockland operators on these stratified groups have even positive
    /// homogeneous order.
    pub fn admits_nu(&self, nu: f64) -> bool {
        nu > 0.0 && nu.fract() == 0.0 && (nu as u64).is_multiple_of(2)
    }
}

/// Periodic lattice with `points` samples per axis on `[0, period)^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceGrid {
    pub dim: usize,
    pub points: usize,
    pub period: f64,
}

impl SpaceGrid {
    pub fn new(dim: usize, points: usize, period: f64) -> Result<Self> {
        if !(dim == 1 || dim == 2) {
            return Err(Error::validation("space.dim", format!("must be 1 or 2, got {dim}")));
        }
        if points < 2 || !points.is_power_of_two() {
            return Err(Error::validation(
                "space.points",
                format!("must be a power of two >= 2, got {points}"),
            ));
        }
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::validation(
                "space.period",
                format!("must be positive, got {period}"),
            ));
        }
        Ok(SpaceGrid { dim, points, period })
    }

    pub fn torus(dim: usize, points: usize) -> Result<Self> {
        Self::new(dim, points, 2.0 * std::f64::consts::PI)
    }

    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Volume of one grid cell.
    pub fn cell_volume(&self) -> f64 {
        (self.period / self.points as f64).powi(self.dim as i32)
    }

    /// Coordinates of flat index `idx` (last axis fastest).
    pub fn coords(&self, idx: usize) -> Vec<f64> {
        let h = self.period / self.points as f64;
        self.multi_index(idx).into_iter().map(|k| k as f64 * h).collect()
    }

    fn multi_index(&self, idx: usize) -> Vec<usize> {
        let m = self.points;
        match self.dim {
            1 => vec![idx],
            _ => vec![idx / m, idx % m],
        }
    }

    /// Integer frequency `kappa` of flat index `idx` in FFT ordering.
    pub fn frequency(&self, idx: usize) -> Vec<i64> {
        let m = self.points as i64;
        self.multi_index(idx)
            .into_iter()
            .map(|k| {
                let k = k as i64;
                if k < m / 2 {
                    k
                } else {
                    k - m
                }
            })
            .collect()
    }

    /// Flat index of integer frequency `kappa` (taken modulo the grid).
    pub fn index_of(&self, kappa: &[i64]) -> usize {
        let m = self.points as i64;
        kappa
            .iter()
            .fold(0usize, |acc, &k| acc * self.points + k.rem_euclid(m) as usize)
    }

    /// `2 pi / period`, the lattice spacing in frequency space.
    pub fn frequency_scale(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.period
    }

    /// Symbol values on all frequencies: `(2 pi / P)^nu sigma(kappa)`.
    pub fn symbol_values(&self, symbol: &OperatorSymbol) -> Result<Vec<f64>> {
        if symbol.dim != self.dim {
            return Err(Error::validation(
                "operator.dim",
                format!(
                    "symbol dimension {} does not match grid dimension {}",
                    symbol.dim, self.dim
                ),
            ));
        }
        let scale = self.frequency_scale().powf(symbol.nu);
        Ok((0..self.len())
            .map(|i| scale * symbol.eval_lattice(&self.frequency(i)))
            .collect())
    }
}

/// Complex samples of a field on a periodic grid at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldState {
    pub grid: SpaceGrid,
    pub time: f64,
    pub values: Vec<Complex64>,
}

impl FieldState {
    pub fn new(grid: SpaceGrid, time: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::validation(
                "field.values",
                format!("expected {} samples, got {}", grid.len(), values.len()),
            ));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::validation("field.values", format!("sample {i} is not finite")));
        }
        Ok(FieldState { grid, time, values })
    }

    pub fn from_fn(grid: SpaceGrid, time: f64, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(&grid.coords(i))).collect();
        Self::new(grid, time, values)
    }

    /// Fourier coefficients `c_kappa` with `u(x) = sum c_kappa e^{i xi x}`.
    pub fn coefficients(&self) -> Vec<Complex64> {
        let mut c = self.values.clone();
        fft_nd(&self.grid, &mut c, false);
        let norm = 1.0 / self.grid.len() as f64;
        c.iter_mut().for_each(|v| *v *= norm);
        c
    }

    pub fn from_coefficients(grid: SpaceGrid, time: f64, coeffs: &[Complex64]) -> Result<Self> {
        let mut v = coeffs.to_vec();
        fft_nd(&grid, &mut v, true);
        Self::new(grid, time, v)
    }

    /// Largest imaginary part of the samples.
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// CSV with columns `index,x[,y],real,imag`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        let coords = if self.grid.dim == 1 { "x" } else { "x,y" };
        writeln!(w, "index,{coords},real,imag")?;
        for (i, v) in self.values.iter().enumerate() {
            let x: Vec<String> = self.grid.coords(i).into_iter().map(fmt_num).collect();
            writeln!(w, "{i},{},{},{}", x.join(","), fmt_num(v.re), fmt_num(v.im))?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON header describing the grid of the CSV written by [`Self::write_csv`].
    pub fn header(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.grid.dim,
            "points_per_axis": self.grid.points,
            "period": self.grid.period,
            "time": self.time,
            "columns": if self.grid.dim == 1 {
                vec!["index", "x", "real", "imag"]
            } else {
                vec!["index", "x", "y", "real", "imag"]
            },
        })
    }
}

/// In-place unnormalized FFT along every axis.
fn fft_nd(grid: &SpaceGrid, data: &mut [Complex64], inverse: bool) {
    let m = grid.points;
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(m)
    } else {
        planner.plan_fft_forward(m)
    };
    match grid.dim {
        1 => fft.process(data),
        _ => {
            // rows are contiguous
            fft.process(data);
            let mut col = vec![Complex64::new(0.0, 0.0); m];
            for c in 0..m {
                for r in 0..m {
                    col[r] = data[r * m + c];
                }
                fft.process(&mut col);
                for r in 0..m {
                    data[r * m + c] = col[r];
                }
            }
        }
    }
}

/// Which equation a source term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceConvention {
    /// `d/dt (k * (u - u0)) + R u = f`, i.e. `u + l*(R u) = u0 + l*f`.
    KernelEq,
    /// `d/dt u + d/dt (l * R u) = f`, i.e. `u + l*(R u) = u0 + 1*f`.
    SubdiffusionEq,
}

/// Distinct symbol values on a grid and the frequencies sharing each one.
#[derive(Debug, Clone)]
pub struct SigmaLevels {
    pub values: Vec<f64>,
    pub members: Vec<Vec<usize>>,
}

impl SigmaLevels {
    pub fn new(sigma: &[f64], include: impl Fn(usize) -> bool) -> Self {
        let mut map: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, &s) in sigma.iter().enumerate() {
            if include(i) {
                map.entry(s.to_bits()).or_default().push(i);
            }
        }
        let (keys, members): (Vec<u64>, Vec<Vec<usize>>) = map.into_iter().unzip();
        SigmaLevels {
            values: keys.into_iter().map(f64::from_bits).collect(),
            members,
        }
    }
}

/// Evolution engine for one kernel pair, symbol and time grid. The Volterra
/// weight table is built once and shared by all evolutions.
#[derive(Debug, Clone)]
pub struct SpectralEvolver {
    symbol: OperatorSymbol,
    solver: VolterraSolver,
}

impl SpectralEvolver {
    pub fn new(pair: &SoninePair, symbol: &OperatorSymbol, time_grid: &TimeGrid) -> Result<Self> {
        Ok(SpectralEvolver {
            symbol: symbol.clone(),
            solver: VolterraSolver::new(pair, time_grid)?,
        })
    }

    pub fn solver(&self) -> &VolterraSolver {
        &self.solver
    }

    pub fn symbol(&self) -> &OperatorSymbol {
        &self.symbol
    }

    fn time_indices(&self, times: &[f64]) -> Result<Vec<usize>> {
        times
            .iter()
            .map(|&t| {
                self.solver.grid().node_index(t).ok_or_else(|| {
                    Error::validation("times", format!("output time {t} is not a node of the time grid"))
                })
            })
            .collect()
    }

    /// Homogeneous evolution `u_hat(t) = s_sigma(t) u_hat(0)` at `times`.
    pub fn evolve_homogeneous(&self, u0: &FieldState, times: &[f64]) -> Result<Vec<FieldState>> {
        let idx = self.time_indices(times)?;
        let coeffs = u0.coefficients();
        let sigma = u0.grid.symbol_values(&self.symbol)?;
        let levels = SigmaLevels::new(&sigma, |i| coeffs[i] != Complex64::new(0.0, 0.0));
        let factors = self.relaxation_factors(&levels, &idx, &u0.grid)?;
        let mut out = Vec::with_capacity(times.len());
        for (k, &t) in times.iter().enumerate() {
            let mut c = vec![Complex64::new(0.0, 0.0); coeffs.len()];
            for (lv, members) in levels.members.iter().enumerate() {
                let f = factors[lv][k];
                for &i in members {
                    c[i] = coeffs[i] * f;
                }
            }
            out.push(FieldState::from_coefficients(u0.grid.clone(), t, &c)?);
        }
        Ok(out)
    }

    /// `s_sigma(t_k)` for every level and requested time index.
    fn relaxation_factors(&self, levels: &SigmaLevels, idx: &[usize], grid: &SpaceGrid) -> Result<Vec<Vec<f64>>> {
        levels
            .values
            .par_iter()
            .zip(&levels.members)
            .map(|(&sigma, members)| {
                if sigma == 0.0 {
                    return Ok(vec![1.0; idx.len()]);
                }
                let s = self.solver.relaxation(sigma).map_err(|e| Error::Frequency {
                    frequency: grid.frequency(members[0]),
                    sigma,
                    source: Box::new(e),
                })?;
                Ok(idx.iter().map(|&i| s.values[i]).collect())
            })
            .collect()
    }

    /// Evolution with a source sampled at every node of the time grid.
    pub fn evolve_inhomogeneous(
        &self,
        u0: &FieldState,
        source: &[FieldState],
        times: &[f64],
        convention: SourceConvention,
    ) -> Result<Vec<FieldState>> {
        let idx = self.time_indices(times)?;
        let nodes = self.solver.grid().nodes();
        if source.len() != nodes.len() {
            return Err(Error::validation(
                "source",
                format!("need one sample per time node ({}), got {}", nodes.len(), source.len()),
            ));
        }
        for (i, (f, &t)) in source.iter().zip(nodes).enumerate() {
            if f.grid != u0.grid {
                return Err(Error::validation(
                    "source",
                    format!("sample {i} is on a different space grid"),
                ));
            }
            if (f.time - t).abs() > 1e-12 * self.solver.grid().t_end() {
                return Err(Error::validation(
                    "source",
                    format!("sample {i} has time {} but node {i} is {t}", f.time),
                ));
            }
        }
        let coeffs = u0.coefficients();
        let f_hat: Vec<Vec<Complex64>> = source.par_iter().map(|f| f.coefficients()).collect();
        let sigma = u0.grid.symbol_values(&self.symbol)?;
        let forced: Vec<bool> = (0..coeffs.len())
            .map(|i| f_hat.iter().any(|c| c[i] != Complex64::new(0.0, 0.0)))
            .collect();
        let levels = SigmaLevels::new(&sigma, |i| !forced[i] && coeffs[i] != Complex64::new(0.0, 0.0));
        let factors = self.relaxation_factors(&levels, &idx, &u0.grid)?;
        let forced_idx: Vec<usize> = (0..coeffs.len()).filter(|&i| forced[i]).collect();
        let forced_vals: Vec<Vec<Complex64>> = forced_idx
            .par_iter()
            .map(|&i| {
                let series: Vec<Complex64> = f_hat.iter().map(|c| c[i]).collect();
                self.forced_mode(sigma[i], coeffs[i], &series, convention)
                    .map(|v| idx.iter().map(|&k| v[k]).collect())
                    .map_err(|e| Error::Frequency {
                        frequency: u0.grid.frequency(i),
                        sigma: sigma[i],
                        source: Box::new(e),
                    })
            })
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(times.len());
        for (k, &t) in times.iter().enumerate() {
            let mut c = vec![Complex64::new(0.0, 0.0); coeffs.len()];
            for (lv, members) in levels.members.iter().enumerate() {
                for &i in members {
                    c[i] = coeffs[i] * factors[lv][k];
                }
            }
            for (n, &i) in forced_idx.iter().enumerate() {
                c[i] = forced_vals[n][k];
            }
            out.push(FieldState::from_coefficients(u0.grid.clone(), t, &c)?);
        }
        Ok(out)
    }

    /// Nodal values of one forced mode: solve `x + sigma (l*x) = u0 + F`
    /// with `F = l*f` or `1*f` depending on the convention.
    pub fn forced_mode(
        &self,
        sigma: f64,
        u0: Complex64,
        f: &[Complex64],
        convention: SourceConvention,
    ) -> Result<Vec<Complex64>> {
        let re: Vec<f64> = f.iter().map(|c| c.re).collect();
        let im: Vec<f64> = f.iter().map(|c| c.im).collect();
        let (fr, fi) = match convention {
            SourceConvention::KernelEq => (self.solver.convolve_l(&re), self.solver.convolve_l(&im)),
            SourceConvention::SubdiffusionEq => {
                let t = self.solver.grid().nodes();
                (trapezoid_cumulative(t, &re), trapezoid_cumulative(t, &im))
            }
        };
        let gr: Vec<f64> = fr.iter().map(|v| u0.re + v).collect();
        let gi: Vec<f64> = fi.iter().map(|v| u0.im + v).collect();
        let xr = self.solver.solve_forced(sigma, &gr)?;
        let xi = self.solver.solve_forced(sigma, &gi)?;
        Ok(xr.into_iter().zip(xi).map(|(a, b)| Complex64::new(a, b)).collect())
    }
}

fn trapezoid_cumulative(t: &[f64], f: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(t.len());
    let mut acc = 0.0;
    out.push(0.0);
    for j in 0..t.len() - 1 {
        acc += 0.5 * (t[j + 1] - t[j]) * (f[j] + f[j + 1]);
        out.push(acc);
    }
    out
}

/// Homogeneous evolution (builds a one-off [`SpectralEvolver`]).
pub fn evolve_homogeneous(
    u0: &FieldState,
    pair: &SoninePair,
    symbol: &OperatorSymbol,
    time_grid: &TimeGrid,
    times: &[f64],
) -> Result<Vec<FieldState>> {
    SpectralEvolver::new(pair, symbol, time_grid)?.evolve_homogeneous(u0, times)
}

/// Inhomogeneous evolution (builds a one-off [`SpectralEvolver`]).
pub fn evolve_inhomogeneous(
    u0: &FieldState,
    source: &[FieldState],
    pair: &SoninePair,
    symbol: &OperatorSymbol,
    time_grid: &TimeGrid,
    times: &[f64],
    convention: SourceConvention,
) -> Result<Vec<FieldState>> {
    SpectralEvolver::new(pair, symbol, time_grid)?.evolve_inhomogeneous(u0, source, times, convention)
}

/// `N(v) = #{kappa in Z^n, kappa != 0 : sigma(kappa) < v}` with
/// `|kappa_j| <= truncation`. Errors if the box could miss points below `v`.
pub fn spectral_counting(symbol: &OperatorSymbol, v: f64, truncation: u64) -> Result<u64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::validation("v", format!("must be positive, got {v}")));
    }
    let r = truncation as f64 + 1.0;
    if symbol.axis_growth() * r.powf(symbol.nu) < v {
        return Err(Error::validation(
            "truncation",
            format!("lattice radius {truncation} is too small to contain all frequencies with sigma < {v}"),
        ));
    }
    let t = truncation as i64;
    let count = match symbol.dim {
        1 => (1..=t).filter(|&k| symbol.eval_lattice(&[k]) < v).count() as u64 * 2,
        _ => {
            let mut c = 0u64;
            for a in -t..=t {
                for b in -t..=t {
                    if (a != 0 || b != 0) && symbol.eval_lattice(&[a, b]) < v {
                        c += 1;
                    }
                }
            }
            c
        }
    };
    Ok(count)
}

/// Smallest lattice radius that contains every frequency with `sigma < v`.
pub fn counting_radius(symbol: &OperatorSymbol, v: f64) -> u64 {
    ((v / symbol.axis_growth()).powf(1.0 / symbol.nu)).ceil() as u64
}

/// Least-squares fit of `log N(v) = slope log v + log prefactor`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountingFit {
    pub v: Vec<f64>,
    pub counts: Vec<u64>,
    pub slope: f64,
    pub prefactor: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    pub expected_slope: f64,
}

pub fn fit_counting_exponent(symbol: &OperatorSymbol, v_grid: &[f64]) -> Result<CountingFit> {
    if v_grid.len() < 3 {
        return Err(Error::validation("v_grid", "need at least 3 values"));
    }
    if v_grid.windows(2).any(|w| !(w[1] > w[0])) || !(v_grid[0] > 0.0) {
        return Err(Error::validation(
            "v_grid",
            "values must be positive and strictly increasing",
        ));
    }
    let decades = (v_grid[v_grid.len() - 1] / v_grid[0]).log10();
    if decades < 3.0 - 1e-9 {
        return Err(Error::validation(
            "v_grid",
            format!("spans {decades:.2} decades, need at least 3"),
        ));
    }
    let radius = counting_radius(symbol, v_grid[v_grid.len() - 1]);
    let counts = v_grid
        .par_iter()
        .map(|&v| spectral_counting(symbol, v, radius))
        .collect::<Result<Vec<u64>>>()?;
    if let Some(i) = counts.iter().position(|&c| c == 0) {
        return Err(Error::validation(
            "v_grid",
            format!(
                "N({}) = 0; the grid starts below the first nonzero eigenvalue",
                v_grid[i]
            ),
        ));
    }
    let x: Vec<f64> = v_grid.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let (slope, intercept, residual) = crate::analysis::least_squares(&x, &y)?;
    Ok(CountingFit {
        v: v_grid.to_vec(),
        counts,
        slope,
        prefactor: intercept.exp(),
        residual,
        expected_slope: symbol.q / symbol.nu,
    })
}
