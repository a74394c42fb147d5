//! Product-integration solvers for the scalar Volterra equations
//!
//! ```text
//! s + mu (l*s) = 1        (relaxation)
//! r + mu (l*r) = l        (resolvent)
//! ```
//!
//! on graded meshes `t_i = T (i/N)^g`, and a first-kind solver that recovers
//! `l` from `k` through `k*l = 1`.
//!
//! The unknown is piecewise linear. Cell weights of `l` against the two hat
//! functions come from `L` and `L2` in closed form, or from Gauss-Legendre on
//! cells that are narrow compared with their distance to the singularity
//! (where the closed-form difference would cancel). The resolvent is computed
//! through `R = 1*r`, which solves `R + mu (l*R) = L` with a continuous forcing.

use std::io::Write;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::SoninePair;
use crate::quad::GaussLegendre;

/// Graded time mesh `t_i = T (i/N)^grading`, `i = 0..=N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    t_end: f64,
    n: usize,
    grading: f64,
    nodes: Vec<f64>,
}

impl TimeGrid {
    pub fn graded(t_end: f64, n: usize, grading: f64) -> Result<Self> {
        if n < 8 {
            return Err(Error::validation(
                "grid.n",
                format!("need at least 8 intervals, got {n}"),
            ));
        }
        Self::build(t_end, n, grading)
    }

    /// Graded grid with exponent `max(3, 2/(1 - eta))` for a pair whose `l`
    /// behaves like `t^{-eta}` at 0, which keeps the local error near `t = 0`
    /// in line with the rest of the mesh. The floor of 3 covers logarithmic
    /// endpoint behavior such as the distributed-order `l ~ -ln t`.
    pub fn for_pair(t_end: f64, n: usize, pair: &SoninePair) -> Result<Self> {
        let g = (2.0 / (1.0 - pair.singularity_exponent())).max(3.0);
        Self::graded(t_end, n, g)
    }

    pub fn uniform(t_end: f64, n: usize) -> Result<Self> {
        Self::graded(t_end, n, 1.0)
    }

    fn build(t_end: f64, n: usize, grading: f64) -> Result<Self> {
        if !(t_end > 0.0) || !t_end.is_finite() {
            return Err(Error::validation(
                "grid.t_end",
                format!("must be positive, got {t_end}"),
            ));
        }
        if !(grading >= 1.0) || !grading.is_finite() {
            return Err(Error::validation(
                "grid.grading",
                format!("must be >= 1, got {grading}"),
            ));
        }
        let nodes = (0..=n)
            .map(|i| {
                if i == n {
                    t_end
                } else {
                    t_end * (i as f64 / n as f64).powf(grading)
                }
            })
            .collect();
        Ok(TimeGrid {
            t_end,
            n,
            grading,
            nodes,
        })
    }

    /// Grid with half the intervals and the same grading; its nodes are the
    /// even-indexed nodes of `self`.
    pub fn coarsen(&self) -> Result<Self> {
        if !self.n.is_multiple_of(2) || self.n < 4 {
            return Err(Error::validation(
                "grid.n",
                format!("cannot halve {} intervals", self.n),
            ));
        }
        Self::build(self.t_end, self.n / 2, self.grading)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn intervals(&self) -> usize {
        self.n
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    /// Index of the node equal to `t` (within 1e-12 relative), if any.
    pub fn node_index(&self, t: f64) -> Option<usize> {
        // relative tolerance: strongly graded grids have nodes far below 1e-12 T
        let tol = 1e-12 * t.abs();
        let i = self.nodes.partition_point(|&x| x < t - tol);
        (i < self.nodes.len() && (self.nodes[i] - t).abs() <= tol).then_some(i)
    }
}

/// Weights of `l` against the two hat functions on `[b, a]` (see
/// [`SoninePair::cell_weights`]). Narrow cells far from `u = 0` use
/// Gauss-Legendre, where the closed-form difference would cancel.
fn cell_weights(pair: &SoninePair, gl: &GaussLegendre, a: f64, b: f64, h: f64) -> Result<(f64, f64)> {
    if b > 64.0 * h {
        let wl = gl.integrate(b, a, |u| pair.l(u) * (u - b)) / h;
        let wr = gl.integrate(b, a, |u| pair.l(u) * (a - u)) / h;
        Ok((wl, wr))
    } else {
        pair.cell_weights(a, b)
    }
}

/// Lower-triangular table of cell weights for one pair on one grid.
///
/// Row `i` holds, for each cell `[t_j, t_{j+1}]` with `j < i`, the weights
/// of `s_j` and `s_{j+1}` in `int_0^{t_i} l(t_i - tau) s(tau) dtau`.
#[derive(Debug, Clone)]
pub struct WeightTable {
    n: usize,
    left: Vec<f64>,
    right: Vec<f64>,
}

impl WeightTable {
    pub fn build(pair: &SoninePair, grid: &TimeGrid) -> Result<Self> {
        let t = grid.nodes();
        let n = grid.intervals();
        let gl = GaussLegendre::new(4);
        let rows: Vec<Result<(Vec<f64>, Vec<f64>)>> = (1..=n)
            .into_par_iter()
            .map(|i| {
                let mut left = Vec::with_capacity(i);
                let mut right = Vec::with_capacity(i);
                for j in 0..i {
                    let a = t[i] - t[j];
                    let b = t[i] - t[j + 1];
                    let h = t[j + 1] - t[j];
                    let (wl, wr) = cell_weights(pair, &gl, a, if j + 1 == i { 0.0 } else { b }, h)?;
                    if !(wl.is_finite() && wr.is_finite()) {
                        return Err(Error::accuracy(
                            "weight_table",
                            format!("non-finite moment for cell [{}, {}] at t = {}", t[j], t[j + 1], t[i]),
                        ));
                    }
                    left.push(wl);
                    right.push(wr);
                }
                Ok((left, right))
            })
            .collect();
        let mut left = Vec::with_capacity(n * (n + 1) / 2);
        let mut right = Vec::with_capacity(n * (n + 1) / 2);
        for r in rows {
            let (l, rr) = r?;
            left.extend(l);
            right.extend(rr);
        }
        Ok(WeightTable { n, left, right })
    }

    #[inline]
    fn row(&self, i: usize) -> (&[f64], &[f64]) {
        let off = i * (i - 1) / 2;
        (&self.left[off..off + i], &self.right[off..off + i])
    }

    /// `(l*f)(t_i)` for the piecewise linear interpolant of nodal values `f`.
    pub fn convolve(&self, f: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n + 1];
        for (i, o) in out.iter_mut().enumerate().skip(1) {
            let (wl, wr) = self.row(i);
            let mut acc = 0.0;
            for j in 0..i {
                acc += wl[j] * f[j] + wr[j] * f[j + 1];
            }
            *o = acc;
        }
        out
    }

    /// Solve `x + mu (l*x) = g` at the nodes.
    pub fn solve(&self, mu: f64, g: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = vec![0.0; n + 1];
        x[0] = g[0];
        for i in 1..=n {
            let (wl, wr) = self.row(i);
            let mut hist = wl[i - 1] * x[i - 1];
            for j in 0..i - 1 {
                hist += wl[j] * x[j] + wr[j] * x[j + 1];
            }
            x[i] = (g[i] - mu * hist) / (1.0 + mu * wr[i - 1]);
        }
        x
    }

    /// Largest nodal residual of `x + mu (l*x) = g`.
    pub fn residual(&self, mu: f64, x: &[f64], g: &[f64]) -> f64 {
        let conv = self.convolve(x);
        (0..=self.n)
            .map(|i| (x[i] + mu * conv[i] - g[i]).abs())
            .fold(0.0, f64::max)
    }
}

/// Lower-triangular table of `int l(t_i - tau) l(tau) phi(tau) dtau` over each
/// cell for the two hat functions `phi`, used to solve the resolvent equation
/// for `rho = r/l`, which stays bounded where `r` is singular.
#[derive(Debug, Clone)]
struct ProductTable {
    left: Vec<f64>,
    right: Vec<f64>,
}

#[derive(Clone, Copy)]
enum Sub {
    // tau = v^p
    Left,
    // t_i - tau = v^p
    Right,
}

// cells closer than NEAR widths to a singular end get a substituted rule
const NEAR: f64 = 16.0;

impl ProductTable {
    fn build(pair: &SoninePair, grid: &TimeGrid) -> Result<Self> {
        let t = grid.nodes();
        let n = grid.intervals();
        let eta = pair.singularity_exponent();
        let p = (1.0 / (1.0 - eta)).max(2.0);
        let g4 = GaussLegendre::new(4);
        let g12 = GaussLegendre::new(12);
        // l at the plain nodes of every cell, shared by all rows
        let plain_l: Vec<[f64; 4]> = (0..n)
            .map(|j| {
                let (a, b) = (t[j], t[j + 1]);
                let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
                let mut v = [0.0; 4];
                for (q, x) in g4.nodes.iter().enumerate() {
                    v[q] = pair.l(mid + half * x);
                }
                v
            })
            .collect();
        let rows: Vec<(Vec<f64>, Vec<f64>)> = (1..=n)
            .into_par_iter()
            .map(|i| {
                let ti = t[i];
                let mut left = Vec::with_capacity(i);
                let mut right = Vec::with_capacity(i);
                for j in 0..i {
                    let (a, b) = (t[j], t[j + 1]);
                    let h = b - a;
                    let near_left = a < NEAR * h;
                    let near_right = ti - b < NEAR * h;
                    let (wl, wr) = if !near_left && !near_right {
                        let (mid, half) = (0.5 * (a + b), 0.5 * h);
                        let (mut wl, mut wr) = (0.0, 0.0);
                        for (q, (&x, &w)) in g4.nodes.iter().zip(&g4.weights).enumerate() {
                            let tau = mid + half * x;
                            let f = w * half * pair.l(ti - tau) * plain_l[j][q];
                            wl += f * (b - tau) / h;
                            wr += f * (tau - a) / h;
                        }
                        (wl, wr)
                    } else if near_left && near_right {
                        let m = 0.5 * (a + b);
                        let (l1, r1) = product_piece(pair, &g12, Sub::Left, p, ti, a, b, a, m);
                        let (l2, r2) = product_piece(pair, &g12, Sub::Right, p, ti, a, b, m, b);
                        (l1 + l2, r1 + r2)
                    } else if near_left {
                        product_piece(pair, &g12, Sub::Left, p, ti, a, b, a, b)
                    } else {
                        product_piece(pair, &g12, Sub::Right, p, ti, a, b, a, b)
                    };
                    left.push(wl);
                    right.push(wr);
                }
                (left, right)
            })
            .collect();
        let mut left = Vec::with_capacity(n * (n + 1) / 2);
        let mut right = Vec::with_capacity(n * (n + 1) / 2);
        for (l, r) in rows {
            left.extend(l);
            right.extend(r);
        }
        if left.iter().chain(&right).any(|v| !v.is_finite()) {
            return Err(Error::accuracy("resolvent", "non-finite product moment"));
        }
        Ok(ProductTable { left, right })
    }

    #[inline]
    fn row(&self, i: usize) -> (&[f64], &[f64]) {
        let off = i * (i - 1) / 2;
        (&self.left[off..off + i], &self.right[off..off + i])
    }
}

/// Hat-function moments of `l(t_i - tau) l(tau)` over `[x0, x1]`, a piece of
/// the cell `[a, b]`, with a power substitution at the singular end.
#[allow(clippy::too_many_arguments)]
fn product_piece(
    pair: &SoninePair,
    gl: &GaussLegendre,
    sub: Sub,
    p: f64,
    ti: f64,
    a: f64,
    b: f64,
    x0: f64,
    x1: f64,
) -> (f64, f64) {
    let h = b - a;
    let (v0, v1) = match sub {
        Sub::Left => (x0.powf(1.0 / p), x1.powf(1.0 / p)),
        Sub::Right => ((ti - x1).max(0.0).powf(1.0 / p), (ti - x0).powf(1.0 / p)),
    };
    let (mid, half) = (0.5 * (v0 + v1), 0.5 * (v1 - v0));
    let (mut wl, mut wr) = (0.0, 0.0);
    for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
        let v = mid + half * x;
        let (tau, u, jac) = match sub {
            Sub::Left => {
                let tau = v.powf(p);
                (tau, ti - tau, p * v.powf(p - 1.0))
            }
            Sub::Right => {
                let u = v.powf(p);
                (ti - u, u, p * v.powf(p - 1.0))
            }
        };
        let f = w * half * jac * pair.l(u) * pair.l(tau);
        wl += f * (b - tau) / h;
        wr += f * (tau - a) / h;
    }
    (wl, wr)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    Relaxation,
    Resolvent,
}

/// Nodal values of `s_mu` or `r_mu` on a time grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelaxationSolution {
    pub kind: SolutionKind,
    pub mu: f64,
    pub grid: TimeGrid,
    pub values: Vec<f64>,
    /// For the resolvent, `R = 1*r` at the nodes.
    pub cumulative: Option<Vec<f64>>,
    /// Largest nodal residual of the discrete equation.
    pub residual: f64,
}

/// Pair-specific solver holding the weight table of one grid. Reusable for
/// any number of `mu` values.
#[derive(Debug, Clone)]
pub struct VolterraSolver {
    pair: SoninePair,
    grid: TimeGrid,
    table: Arc<WeightTable>,
    product: OnceLock<Arc<ProductTable>>,
    cumulative_l: Vec<f64>,
}

impl VolterraSolver {
    pub fn new(pair: &SoninePair, grid: &TimeGrid) -> Result<Self> {
        let table = WeightTable::build(pair, grid)?;
        let cumulative_l = grid
            .nodes()
            .iter()
            .map(|&t| pair.cumulative_l(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(VolterraSolver {
            pair: pair.clone(),
            grid: grid.clone(),
            table: Arc::new(table),
            product: OnceLock::new(),
            cumulative_l,
        })
    }

    pub fn pair(&self) -> &SoninePair {
        &self.pair
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn table(&self) -> &WeightTable {
        &self.table
    }

    /// `L(t_i)` at the grid nodes.
    pub fn cumulative_l(&self) -> &[f64] {
        &self.cumulative_l
    }

    pub fn relaxation(&self, mu: f64) -> Result<RelaxationSolution> {
        check_mu(mu)?;
        let g = vec![1.0; self.grid.intervals() + 1];
        let values = self.table.solve(mu, &g);
        let residual = self.table.residual(mu, &values, &g);
        Ok(RelaxationSolution {
            kind: SolutionKind::Relaxation,
            mu,
            grid: self.grid.clone(),
            values,
            cumulative: None,
            residual,
        })
    }

    /// Resolvent `r_mu`, solved as `r = l rho` with `rho` piecewise linear:
    /// `l_i rho_i + mu int l(t_i - tau) l(tau) rho(tau) dtau = l_i`.
    pub fn resolvent(&self, mu: f64) -> Result<RelaxationSolution> {
        check_mu(mu)?;
        if self.product.get().is_none() {
            let built = Arc::new(ProductTable::build(&self.pair, &self.grid)?);
            let _ = self.product.set(built);
        }
        let prod = self.product.get().expect("product table initialized");
        let t = self.grid.nodes();
        let n = self.grid.intervals();
        let l: Vec<f64> = t.iter().map(|&x| self.pair.l(x)).collect();
        let mut rho = vec![0.0; n + 1];
        rho[0] = 1.0;
        let mut residual: f64 = 0.0;
        for i in 1..=n {
            let (pl, pr) = prod.row(i);
            let mut hist = pl[i - 1] * rho[i - 1];
            for j in 0..i - 1 {
                hist += pl[j] * rho[j] + pr[j] * rho[j + 1];
            }
            rho[i] = (l[i] - mu * hist) / (l[i] + mu * pr[i - 1]);
            let res = (l[i] * rho[i] + mu * (hist + pr[i - 1] * rho[i]) - l[i]).abs() / l[i];
            residual = residual.max(res);
        }
        let mut values: Vec<f64> = l.iter().zip(&rho).map(|(&l, &r)| l * r).collect();
        values[0] = l[0];
        let mut sol = RelaxationSolution {
            kind: SolutionKind::Resolvent,
            mu,
            grid: self.grid.clone(),
            values,
            cumulative: None,
            residual,
        };
        sol.cumulative = Some(integrate_resolvent(&self.pair, &sol)?);
        Ok(sol)
    }

    /// Relaxation solves for several `mu`, in parallel, in input order.
    pub fn relaxation_sweep(&self, mus: &[f64]) -> Result<Vec<RelaxationSolution>> {
        mus.par_iter().map(|&mu| self.relaxation(mu)).collect()
    }

    /// Solve `x + mu (l*x) = g` for a nodal forcing `g`.
    pub fn solve_forced(&self, mu: f64, g: &[f64]) -> Result<Vec<f64>> {
        check_mu(mu)?;
        if g.len() != self.grid.intervals() + 1 {
            return Err(Error::validation(
                "forcing",
                format!("expected {} nodal values, got {}", self.grid.intervals() + 1, g.len()),
            ));
        }
        Ok(self.table.solve(mu, g))
    }

    /// `(l*f)(t_i)` for piecewise linear `f` given at the nodes.
    pub fn convolve_l(&self, f: &[f64]) -> Vec<f64> {
        self.table.convolve(f)
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::domain("volterra", format!("mu must be >= 0, got {mu}")));
    }
    Ok(())
}

/// Relaxation function `s_mu` on `grid`.
pub fn solve_relaxation(pair: &SoninePair, mu: f64, grid: &TimeGrid) -> Result<RelaxationSolution> {
    check_mu(mu)?;
    VolterraSolver::new(pair, grid)?.relaxation(mu)
}

/// Resolvent `r_mu` on `grid`.
pub fn solve_resolvent(pair: &SoninePair, mu: f64, grid: &TimeGrid) -> Result<RelaxationSolution> {
    check_mu(mu)?;
    VolterraSolver::new(pair, grid)?.resolvent(mu)
}

/// Error estimate by comparison with the solve on the halved grid:
/// the largest nodal difference at shared nodes, per `mu`.
pub fn refinement_error(fine: &[RelaxationSolution], coarse: &[RelaxationSolution]) -> Vec<f64> {
    fine.iter()
        .zip(coarse)
        .map(|(f, c)| {
            c.values
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| (f.values[2 * i] - v).abs())
                .fold(0.0, f64::max)
        })
        .collect()
}

impl RelaxationSolution {
    /// Two-sided bounds at the nodes. For the relaxation function they are
    /// `1/(1 + mu/k(t))` and `1/(1 + mu L(t))`; for the resolvent `0` and
    /// `l(t)/(1 + mu L(t))`.
    pub fn bounds(&self, pair: &SoninePair) -> Result<(Vec<f64>, Vec<f64>)> {
        let t = self.grid.nodes();
        let mut lower = Vec::with_capacity(t.len());
        let mut upper = Vec::with_capacity(t.len());
        for &ti in t {
            let big_l = pair.cumulative_l(ti)?;
            match self.kind {
                SolutionKind::Relaxation => {
                    let k = pair.k(ti);
                    lower.push(if k.is_nan() {
                        f64::NAN
                    } else {
                        1.0 / (1.0 + self.mu / k)
                    });
                    upper.push(1.0 / (1.0 + self.mu * big_l));
                }
                SolutionKind::Resolvent => {
                    lower.push(0.0);
                    upper.push(pair.l(ti) / (1.0 + self.mu * big_l));
                }
            }
        }
        Ok((lower, upper))
    }

    /// Largest violation of the bounds (0 if all nodes lie inside), skipping `t = 0`.
    pub fn bound_violation(&self, pair: &SoninePair) -> Result<f64> {
        let (lo, hi) = self.bounds(pair)?;
        Ok(self
            .values
            .iter()
            .zip(lo.iter().zip(&hi))
            .skip(1)
            .map(|(&v, (&l, &h))| {
                let below = if l.is_nan() { 0.0 } else { l - v };
                below.max(v - h).max(0.0)
            })
            .fold(0.0, f64::max))
    }

    /// CSV with columns `t,value,lower_bound,upper_bound`.
    pub fn write_csv(&self, pair: &SoninePair, path: &Path) -> Result<()> {
        let (lo, hi) = self.bounds(pair)?;
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(w, "t,value,lower_bound,upper_bound")?;
        for (i, &t) in self.grid.nodes().iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{}",
                fmt_num(t),
                fmt_num(self.values[i]),
                fmt_num(lo[i]),
                fmt_num(hi[i])
            )?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Fixed-format number for CSV output: 15 significant digits.
pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.14e}")
    } else {
        format!("{v}")
    }
}

/// `int_0^{t_i} r` from nodal resolvent values, by product trapezoid with
/// weight `l`: `r = l rho` with `rho` linear on each cell.
pub fn integrate_resolvent(pair: &SoninePair, sol: &RelaxationSolution) -> Result<Vec<f64>> {
    let t = sol.grid.nodes();
    let gl = GaussLegendre::new(4);
    let rho: Vec<f64> = t
        .iter()
        .zip(&sol.values)
        .map(|(&ti, &r)| {
            let l = pair.l(ti);
            if l.is_infinite() {
                1.0
            } else {
                r / l
            }
        })
        .collect();
    let mut out = Vec::with_capacity(t.len());
    out.push(0.0);
    let mut acc = 0.0;
    for j in 0..t.len() - 1 {
        let h = t[j + 1] - t[j];
        let (w_next, w_here) = cell_weights(pair, &gl, t[j + 1], t[j], h)?;
        acc += w_next * rho[j + 1] + w_here * rho[j];
        out.push(acc);
    }
    Ok(out)
}

/// Piecewise-constant `l` recovered from `k`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SonineInversion {
    /// Cell midpoints where the recovered values are reported.
    pub midpoints: Vec<f64>,
    pub values: Vec<f64>,
    /// Points in the interior two-thirds `[T/6, 5T/6]` where `k*l` was checked.
    pub residual_points: Vec<f64>,
    /// `|(k*l)(t) - 1|` at `residual_points`.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

impl SonineInversion {
    /// Recovered `l` at `t`, linear between cell midpoints (constant beyond
    /// the first and last midpoint).
    pub fn value_at(&self, t: f64) -> f64 {
        let m = &self.midpoints;
        let j = m.partition_point(|&x| x < t);
        if j == 0 {
            return self.values[0];
        }
        if j == m.len() {
            return self.values[m.len() - 1];
        }
        let w = (t - m[j - 1]) / (m[j] - m[j - 1]);
        (1.0 - w) * self.values[j - 1] + w * self.values[j]
    }
}

/// `int_b^a k(u) du` for `k` with an integrable singularity `u^{-eta}` at 0.
fn k_moment(k: &(dyn Fn(f64) -> f64 + Sync), eta: f64, gl: &GaussLegendre, a: f64, b: f64) -> f64 {
    let h = a - b;
    let from_zero = |x: f64| {
        let p = (1.0 / (1.0 - eta)).max(1.0);
        gl.integrate(0.0, 1.0, |w| {
            let wp = w.powf(p - 1.0);
            k(x * wp * w) * x * p * wp
        })
    };
    if b <= 0.0 {
        from_zero(a)
    } else if b <= 2.0 * h {
        from_zero(a) - from_zero(b)
    } else {
        gl.integrate(b, a, k)
    }
}

/// Solve `k*l = 1` for piecewise-constant `l` by collocation at the right
/// cell endpoints. `singularity_exponent` is the exponent of `k` at 0.
///
/// Fails with an accuracy error if `|(k*l)(t) - 1|` exceeds `1e-4` anywhere on
/// the interior two-thirds of the grid.
pub fn invert_sonine(
    k: &(dyn Fn(f64) -> f64 + Sync),
    singularity_exponent: f64,
    grid: &TimeGrid,
) -> Result<SonineInversion> {
    invert_sonine_with_tol(k, singularity_exponent, grid, 1e-4)
}

pub fn invert_sonine_with_tol(
    k: &(dyn Fn(f64) -> f64 + Sync),
    singularity_exponent: f64,
    grid: &TimeGrid,
    tol: f64,
) -> Result<SonineInversion> {
    if !(0.0..1.0).contains(&singularity_exponent) {
        return Err(Error::validation(
            "singularity_exponent",
            format!("must lie in [0, 1), got {singularity_exponent}"),
        ));
    }
    let eta = singularity_exponent;
    let t = grid.nodes();
    let n = grid.intervals();
    let gl = GaussLegendre::new(16);
    let rows: Vec<Vec<f64>> = (1..=n)
        .into_par_iter()
        .map(|i| {
            (0..i)
                .map(|j| k_moment(k, eta, &gl, t[i] - t[j], t[i] - t[j + 1]))
                .collect()
        })
        .collect();
    let mut c = vec![0.0; n];
    for i in 1..=n {
        let row = &rows[i - 1];
        let hist: f64 = (0..i - 1).map(|j| row[j] * c[j]).sum();
        c[i - 1] = (1.0 - hist) / row[i - 1];
        if !c[i - 1].is_finite() {
            return Err(Error::accuracy(
                "invert_sonine",
                format!("non-finite value in cell {} (moment {:e})", i - 1, row[i - 1]),
            ));
        }
    }
    let midpoints: Vec<f64> = (0..n).map(|j| 0.5 * (t[j] + t[j + 1])).collect();
    let (lo, hi) = (grid.t_end() / 6.0, 5.0 * grid.t_end() / 6.0);
    let checked: Vec<usize> = (0..n).filter(|&m| midpoints[m] >= lo && midpoints[m] <= hi).collect();
    let residuals: Vec<f64> = checked
        .par_iter()
        .map(|&m| {
            let tau = midpoints[m];
            let mut acc: f64 = (0..m)
                .map(|j| c[j] * k_moment(k, eta, &gl, tau - t[j], tau - t[j + 1]))
                .sum();
            acc += c[m] * k_moment(k, eta, &gl, tau - t[m], 0.0);
            (acc - 1.0).abs()
        })
        .collect();
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    let residual_points: Vec<f64> = checked.iter().map(|&m| midpoints[m]).collect();
    if !(max_residual <= tol) {
        let trace: Vec<String> = residual_points
            .iter()
            .zip(&residuals)
            .step_by((residuals.len() / 12).max(1))
            .map(|(t, r)| format!("t={t:.4}: {r:.3e}"))
            .collect();
        return Err(Error::accuracy(
            "invert_sonine",
            format!(
                "residual {max_residual:e} exceeds {tol:e}; trace [{}]",
                trace.join(", ")
            ),
        ));
    }
    Ok(SonineInversion {
        midpoints,
        values: c,
        residual_points,
        residuals,
        max_residual,
    })
}
