//! Pipelines behind the subcommands.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Command, InitialData, OutputTimes, RunConfig, SourceConfig};
use crate::analysis::{
    fit_decay_exponent, lp_norm, predict_decay_rate, sobolev_norm, sup_bound, write_norm_series, DecayReport, NormSpec,
};
use crate::error::{Error, Result};
use crate::kernels::{log_grid, verify_sonine, SoninePair};
use crate::spectral::{fit_counting_exponent, FieldState, SpaceGrid, SpectralEvolver};
use crate::volterra::{fmt_num, refinement_error, TimeGrid, VolterraSolver};

/// One pass/fail verdict of a run.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `value <= tolerance`.
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
        }
    }
}

/// Files and verdicts produced by a pipeline.
#[derive(Debug, Default)]
pub struct Outcome {
    pub files: Vec<String>,
    pub checks: Vec<Check>,
    pub summary: Value,
}

struct Out<'a> {
    dir: &'a Path,
    outcome: Outcome,
}

impl Out<'_> {
    fn path(&mut self, name: impl Into<String>) -> PathBuf {
        let name = name.into();
        let p = self.dir.join(&name);
        self.outcome.files.push(name);
        p
    }

    fn json(&mut self, name: &str, value: &impl Serialize) -> Result<()> {
        let p = self.path(name);
        let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(p, text + "\n")?;
        Ok(())
    }

    fn csv(&mut self, name: &str, header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
        let p = self.path(name);
        let mut w = std::io::BufWriter::new(std::fs::File::create(p)?);
        writeln!(w, "{header}")?;
        for row in rows {
            let cells: Vec<String> = row.into_iter().map(fmt_num).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        w.flush()?;
        Ok(())
    }

    fn check(&mut self, c: Check) {
        self.outcome.checks.push(c);
    }
}

pub fn execute(command: Command, cfg: &RunConfig, dir: &Path) -> Result<Outcome> {
    let mut out = Out {
        dir,
        outcome: Outcome::default(),
    };
    match command {
        Command::KernelVerify => kernel_verify(cfg, &mut out)?,
        Command::Relax => relax(cfg, &mut out)?,
        Command::Resolvent => resolvent(cfg, &mut out)?,
        Command::Evolve => evolve(cfg, &mut out, false)?,
        Command::DecayFit => evolve(cfg, &mut out, true)?,
        Command::Count => count(cfg, &mut out)?,
        Command::Predict => predict(cfg, &mut out)?,
    }
    Ok(out.outcome)
}

fn kernel_verify(cfg: &RunConfig, out: &mut Out) -> Result<()> {
    let pair = cfg.pair()?;
    let report = verify_sonine(&pair, &pair.reference_grid(), cfg.checks.sonine)?;
    out.csv(
        "sonine.csv",
        "t,convolution,deviation",
        report
            .grid
            .iter()
            .zip(report.convolution.iter().zip(&report.deviations))
            .map(|(&t, (&c, &d))| vec![t, c, d]),
    )?;
    out.json("sonine_report.json", &report)?;
    out.check(Check::at_most("sonine_identity", report.max_abs_deviation, report.tol));
    out.outcome.summary = json!({"family": pair.name(), "max_abs_deviation": report.max_abs_deviation});
    Ok(())
}

fn relax(cfg: &RunConfig, out: &mut Out) -> Result<()> {
    let pair = cfg.pair()?;
    let grid = cfg.time_grid(&pair)?;
    let sols = VolterraSolver::new(&pair, &grid)?.relaxation_sweep(&cfg.mu)?;
    let coarse = VolterraSolver::new(&pair, &grid.coarsen()?)?.relaxation_sweep(&cfg.mu)?;
    let est = refinement_error(&sols, &coarse);
    let mut summary = Vec::new();
    for (i, (sol, &e)) in sols.iter().zip(&est).enumerate() {
        let p = out.path(format!("relax_{i}.csv"));
        sol.write_csv(&pair, &p)?;
        let violation = sol.bound_violation(&pair)?;
        let tol = cfg.checks.bounds.unwrap_or(e + 1e-12);
        out.check(Check::at_most(format!("sandwich_mu_{}", sol.mu), violation, tol));
        summary.push(json!({
            "mu": sol.mu, "file": format!("relax_{i}.csv"), "residual": sol.residual,
            "refinement_error": e, "bound_violation": violation,
        }));
    }
    out.json("relax_summary.json", &summary)?;
    out.outcome.summary = Value::Array(summary);
    Ok(())
}

fn resolvent(cfg: &RunConfig, out: &mut Out) -> Result<()> {
    let pair = cfg.pair()?;
    let grid = cfg.time_grid(&pair)?;
    let solver = VolterraSolver::new(&pair, &grid)?;
    let s_all = solver.relaxation_sweep(&cfg.mu)?;
    let mut summary = Vec::new();
    for (i, &mu) in cfg.mu.iter().enumerate() {
        let sol = solver.resolvent(mu)?;
        let big_r = sol.cumulative.clone().unwrap_or_default();
        let s = &s_all[i].values;
        let identity = big_r
            .iter()
            .zip(s)
            .map(|(r, s)| (s - (1.0 - mu * r)).abs())
            .fold(0.0, f64::max);
        sol.write_csv(&pair, &out.path(format!("resolvent_{i}.csv")))?;
        out.csv(
            &format!("resolvent_{i}_cumulative.csv"),
            "t,cumulative,one_minus_mu_cumulative,relaxation",
            grid.nodes()
                .iter()
                .zip(big_r.iter().zip(s))
                .map(|(&t, (&r, &s))| vec![t, r, 1.0 - mu * r, s]),
        )?;
        out.check(Check::at_most(
            format!("identity_mu_{mu}"),
            identity,
            cfg.checks.identity,
        ));
        summary.push(json!({"mu": mu, "residual": sol.residual, "identity_error": identity}));
    }
    out.json("resolvent_summary.json", &summary)?;
    out.outcome.summary = Value::Array(summary);
    Ok(())
}

fn count(cfg: &RunConfig, out: &mut Out) -> Result<()> {
    let symbol = cfg.symbol()?;
    let c = cfg.counting.as_ref().expect("validated");
    if !(c.v_min > 0.0 && c.v_max > c.v_min) || c.points < 3 {
        return Err(Error::validation("counting", "need 0 < v_min < v_max and points >= 3"));
    }
    let fit = fit_counting_exponent(&symbol, &log_grid(c.v_min, c.v_max, c.points))?;
    out.csv(
        "counts.csv",
        "v,count,fit",
        fit.v
            .iter()
            .zip(&fit.counts)
            .map(|(&v, &n)| vec![v, n as f64, fit.prefactor * v.powf(fit.slope)]),
    )?;
    out.json("count_fit.json", &fit)?;
    out.check(Check::at_most(
        "counting_slope",
        (fit.slope - fit.expected_slope).abs(),
        cfg.checks.slope,
    ));
    out.outcome.summary = json!({"slope": fit.slope, "expected": fit.expected_slope});
    Ok(())
}

fn predict(cfg: &RunConfig, out: &mut Out) -> Result<()> {
    let pair = cfg.pair()?;
    let symbol = cfg.symbol()?;
    let big_q = cfg.big_q()?;
    let grid = cfg.time_grid(&pair)?;
    let times = output_times(cfg, &grid)?;
    let mut preds = Vec::new();
    let mut sups = Vec::new();
    let mut worst: f64 = 0.0;
    for n in &cfg.norms {
        let NormSpec::Lp { p, q } = *n else { continue };
        let pred = predict_decay_rate(p, q, big_q, symbol.nu, &pair)?;
        let gap = 1.0 / p - 1.0 / q;
        if gap > 0.0 {
            let lambda = big_q / symbol.nu;
            let r = 1.0 / gap;
            for &t in times.iter().filter(|&&t| t > 0.0) {
                let b = sup_bound(lambda, r, pair.cumulative_l(t)?)?;
                worst = worst.max(b.relative_difference);
                sups.push(json!({"p": p, "q": q, "t": t, "bound": b}));
            }
        }
        preds.push(pred);
    }
    let mut rows = Vec::new();
    for &t in times.iter().filter(|&&t| t > 0.0) {
        let mut row = vec![t, pair.cumulative_l(t)?];
        for p in &preds {
            row.push(p.envelope(&pair, t)?);
        }
        rows.push(row);
    }
    let mut header = String::from("t,L");
    for p in &preds {
        header.push_str(&format!(",envelope_p{}_q{}", p.p, p.q));
    }
    out.csv("envelope.csv", &header, rows)?;
    out.json("prediction.json", &json!({"predictions": preds, "sup_bounds": sups}))?;
    out.check(Check::at_most("sup_bound_agreement", worst, cfg.checks.sup));
    out.outcome.summary = json!({"exponents": preds.iter().map(|p| p.exponent).collect::<Vec<_>>()});
    Ok(())
}

fn evolve(cfg: &RunConfig, out: &mut Out, fit: bool) -> Result<()> {
    let pair = cfg.pair()?;
    let symbol = cfg.symbol()?;
    let space = cfg.space_grid()?;
    let grid = cfg.time_grid(&pair)?;
    let times = output_times(cfg, &grid)?;
    let u0 = initial_state(cfg.initial.as_ref().expect("validated"), &space)?;
    let engine = SpectralEvolver::new(&pair, &symbol, &grid)?;
    let states = match &cfg.source {
        None => engine.evolve_homogeneous(&u0, &times)?,
        Some(src) => {
            let f = source_states(src, &space, &grid)?;
            engine.evolve_inhomogeneous(&u0, &f, &times, src.convention)?
        }
    };

    let mut headers = Vec::new();
    for (k, s) in states.iter().enumerate() {
        let name = format!("field_{k:04}.csv");
        s.write_csv(&out.path(name.clone()))?;
        let mut h = s.header();
        h["file"] = json!(name);
        headers.push(h);
    }
    out.json("fields.json", &headers)?;

    // norm table
    let u0_norms: Vec<f64> = cfg
        .norms
        .iter()
        .map(|n| norm_of(&u0, n, &symbol, true))
        .collect::<Result<_>>()?;
    let mut header = String::from("t,L");
    for n in &cfg.norms {
        header.push_str(&match n {
            NormSpec::Lp { q, .. } => format!(",lq_{q}"),
            NormSpec::Sobolev { s } => format!(",sobolev_{s}"),
        });
    }
    let mut table = Vec::new();
    for s in &states {
        let mut row = vec![s.time, pair.cumulative_l(s.time)?];
        for n in &cfg.norms {
            row.push(norm_of(s, n, &symbol, false)?);
        }
        table.push(row);
    }
    out.csv("norms.csv", &header, table.clone())?;

    let checks = evolve_checks(cfg, &pair, &u0, &states, &symbol)?;
    for c in checks {
        out.check(c);
    }

    let mut reports = Vec::new();
    if fit {
        let window = cfg.window.expect("validated");
        let big_q = cfg.big_q()?;
        for (i, n) in cfg.norms.iter().enumerate() {
            let series: Vec<(f64, f64)> = table
                .iter()
                .filter(|r| r[0] > 0.0)
                .map(|r| {
                    let v = match n {
                        NormSpec::Sobolev { .. } => r[2 + i] / u0_norms[i],
                        NormSpec::Lp { .. } => r[2 + i],
                    };
                    (r[0], v)
                })
                .collect();
            let predicted = match *n {
                NormSpec::Lp { p, q } => predict_decay_rate(p, q, big_q, symbol.nu, &pair)?.exponent,
                NormSpec::Sobolev { s } => {
                    if s < symbol.nu {
                        return Err(Error::validation(
                            format!("norms.{i}.s"),
                            format!("Sobolev decay needs s >= nu = {}, got {s}", symbol.nu),
                        ));
                    }
                    let worst = series
                        .iter()
                        .map(|&(t, v)| Ok(v * pair.cumulative_l(t)?))
                        .collect::<Result<Vec<f64>>>()?
                        .into_iter()
                        .fold(0.0, f64::max);
                    out.check(Check::at_most(
                        format!("sobolev_envelope_{i}"),
                        worst,
                        cfg.checks.envelope,
                    ));
                    -1.0
                }
            };
            let f = fit_decay_exponent(&series, &pair, window)?;
            let report = DecayReport::new(&f, predicted, cfg.checks.slope, *n);
            write_norm_series(&out.path(format!("norm_series_{i}.csv")), &series, &pair, predicted)?;
            out.json(&format!("decay_{i}.json"), &report)?;
            out.check(Check {
                name: format!("decay_slope_{i}"),
                value: (report.fitted_exponent - predicted).abs(),
                tolerance: cfg.checks.slope,
                passed: report.passed,
            });
            reports.push(report);
        }
    }
    out.outcome.summary = json!({"times": times, "reports": reports});
    Ok(())
}

/// For Sobolev norms of initial data the index is lowered by `nu`.
fn norm_of(state: &FieldState, n: &NormSpec, symbol: &crate::spectral::OperatorSymbol, initial: bool) -> Result<f64> {
    match *n {
        NormSpec::Lp { p, q } => lp_norm(state, if initial { p } else { q }),
        NormSpec::Sobolev { s } => sobolev_norm(state, if initial { s - symbol.nu } else { s }, symbol),
    }
}

/// Mean conservation, modal monotonicity, modal sandwich and real-input symmetry.
fn evolve_checks(
    cfg: &RunConfig,
    pair: &SoninePair,
    u0: &FieldState,
    states: &[FieldState],
    symbol: &crate::spectral::OperatorSymbol,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let real_input = u0.max_imag() == 0.0;
    let scale = u0.values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    if real_input {
        let worst = states.iter().map(|s| s.max_imag()).fold(0.0, f64::max) / scale;
        checks.push(Check::at_most("real_symmetry", worst, 1e-12));
    }
    if cfg.source.is_some() {
        return Ok(checks);
    }
    let c0 = u0.coefficients();
    let cmax = c0.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let coeffs: Vec<Vec<Complex64>> = states.iter().map(|s| s.coefficients()).collect();
    let mean = coeffs.iter().map(|c| (c[0] - c0[0]).norm()).fold(0.0, f64::max) / c0[0].norm().max(1.0);
    checks.push(Check::at_most("mean_conservation", mean, cfg.checks.mean));
    // roundoff of one transform pair
    let round = 1e-13 * cmax;
    let mut mono: f64 = 0.0;
    for w in coeffs.windows(2) {
        for (a, b) in w[0].iter().zip(&w[1]).skip(1) {
            mono = mono.max(b.norm() - a.norm() - round);
        }
    }
    checks.push(Check::at_most("modal_monotonicity", mono.max(0.0), 0.0));
    let sigma = u0.grid.symbol_values(symbol)?;
    let mut sandwich: f64 = 0.0;
    for (s, c) in states.iter().zip(&coeffs) {
        let big_l = pair.cumulative_l(s.time)?;
        for i in 1..c0.len() {
            let a = c0[i].norm();
            if a > 1e-12 * cmax {
                let bound = 1.0 / (1.0 + sigma[i] * big_l);
                sandwich = sandwich.max(c[i].norm() / a - bound);
            }
        }
    }
    checks.push(Check::at_most(
        "modal_sandwich",
        sandwich.max(0.0),
        cfg.checks.bounds.unwrap_or(1e-4),
    ));
    Ok(checks)
}

/// Output times snapped to grid nodes, increasing and without duplicates.
pub fn output_times(cfg: &RunConfig, grid: &TimeGrid) -> Result<Vec<f64>> {
    let nodes = grid.nodes();
    let spec = cfg.times.clone().unwrap_or(OutputTimes::Log {
        t_min: grid.t_end() * 1e-3,
        count: 32,
    });
    let mut idx: Vec<usize> = match spec {
        OutputTimes::Log { t_min, count } => {
            if !(t_min > 0.0 && t_min < grid.t_end()) || count < 2 {
                return Err(Error::validation("times", "need 0 < t_min < t_end and count >= 2"));
            }
            log_grid(t_min, grid.t_end(), count)
                .into_iter()
                .map(|t| nearest_node(nodes, t))
                .collect()
        }
        OutputTimes::Every { stride } => {
            if stride == 0 {
                return Err(Error::validation("times.stride", "must be positive"));
            }
            let mut v: Vec<usize> = (0..nodes.len()).step_by(stride).collect();
            v.push(nodes.len() - 1);
            v
        }
        OutputTimes::Nodes { at } => at
            .iter()
            .map(|&t| {
                grid.node_index(t)
                    .ok_or_else(|| Error::validation("times.at", format!("{t} is not a node of the time grid")))
            })
            .collect::<Result<_>>()?,
    };
    idx.sort_unstable();
    idx.dedup();
    Ok(idx.into_iter().map(|i| nodes[i]).collect())
}

fn nearest_node(nodes: &[f64], t: f64) -> usize {
    let i = nodes.partition_point(|&x| x < t).min(nodes.len() - 1);
    if i > 0 && (t - nodes[i - 1]) < (nodes[i] - t) {
        i - 1
    } else {
        i
    }
}

fn band_box(grid: &SpaceGrid, band: i64) -> Result<Vec<Vec<i64>>> {
    if band < 0 || band >= grid.points as i64 / 2 {
        return Err(Error::validation(
            "initial.band",
            format!("must be in [0, {}), got {band}", grid.points / 2),
        ));
    }
    let r: Vec<i64> = (-band..=band).collect();
    Ok(match grid.dim {
        1 => r.iter().map(|&a| vec![a]).collect(),
        _ => r.iter().flat_map(|&a| r.iter().map(move |&b| vec![a, b])).collect(),
    })
}

pub fn initial_state(init: &InitialData, grid: &SpaceGrid) -> Result<FieldState> {
    let zero = Complex64::new(0.0, 0.0);
    match init {
        InitialData::Constant { value } => FieldState::from_fn(grid.clone(), 0.0, |_| Complex64::new(*value, 0.0)),
        InitialData::Mode { frequency, amplitude } => {
            if frequency.len() != grid.dim {
                return Err(Error::validation(
                    "initial.frequency",
                    format!("need {} components", grid.dim),
                ));
            }
            if frequency.iter().any(|k| k.abs() >= grid.points as i64 / 2) {
                return Err(Error::validation("initial.frequency", "outside the resolved band"));
            }
            let mut c = vec![zero; grid.len()];
            c[grid.index_of(frequency)] = Complex64::new(*amplitude, 0.0);
            FieldState::from_coefficients(grid.clone(), 0.0, &c)
        }
        InitialData::PointMass { band } => {
            let mut c = vec![zero; grid.len()];
            for k in band_box(grid, *band)? {
                c[grid.index_of(&k)] = Complex64::new(1.0, 0.0);
            }
            FieldState::from_coefficients(grid.clone(), 0.0, &c)
        }
        InitialData::Random { seed, band, mean_zero } => {
            let seed = seed.ok_or_else(|| Error::validation("initial.seed", "required for random data"))?;
            random_state(grid, seed, *band, *mean_zero)
        }
        InitialData::Expression { expr } => {
            let e = Expr::parse(expr, "initial.expr")?;
            let mut vals = Vec::with_capacity(grid.len());
            for i in 0..grid.len() {
                vals.push(Complex64::new(e.eval(0.0, &grid.coords(i))?, 0.0));
            }
            FieldState::new(grid.clone(), 0.0, vals)
        }
        InitialData::Csv { path } => read_state_csv(path, grid),
    }
}

/// Real band-limited state with uniform random coefficients in `[-1, 1]`.
pub fn random_state(grid: &SpaceGrid, seed: u64, band: i64, mean_zero: bool) -> Result<FieldState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = vec![Complex64::new(0.0, 0.0); grid.len()];
    for k in band_box(grid, band)? {
        let first = k.iter().find(|&&x| x != 0).copied().unwrap_or(0);
        if first > 0 {
            let v = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
            c[grid.index_of(&k)] = v;
            let neg: Vec<i64> = k.iter().map(|x| -x).collect();
            c[grid.index_of(&neg)] = v.conj();
        } else if first == 0 && !mean_zero {
            c[0] = Complex64::new(rng.random_range(-1.0..=1.0), 0.0);
        }
    }
    let mut s = FieldState::from_coefficients(grid.clone(), 0.0, &c)?;
    // the samples are real up to roundoff
    s.values.iter_mut().for_each(|v| v.im = 0.0);
    Ok(s)
}

fn read_state_csv(path: &Path, grid: &SpaceGrid) -> Result<FieldState> {
    let text = std::fs::read_to_string(path)?;
    let mut vals = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut seen = vec![false; grid.len()];
    for (ln, line) in text.lines().enumerate().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != grid.dim + 3 {
            return Err(Error::Data(format!(
                "{}:{}: expected {} columns",
                path.display(),
                ln + 1,
                grid.dim + 3
            )));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Data(format!("{}:{}: {e}", path.display(), ln + 1)))
        };
        let i: usize = cells[0]
            .trim()
            .parse()
            .map_err(|e| Error::Data(format!("{}:{}: {e}", path.display(), ln + 1)))?;
        if i >= grid.len() {
            return Err(Error::Data(format!(
                "{}:{}: index {i} out of range",
                path.display(),
                ln + 1
            )));
        }
        vals[i] = Complex64::new(parse(cells[grid.dim + 1])?, parse(cells[grid.dim + 2])?);
        seen[i] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::Data(format!("{}: missing sample {i}", path.display())));
    }
    FieldState::new(grid.clone(), 0.0, vals)
}

fn source_states(src: &SourceConfig, space: &SpaceGrid, grid: &TimeGrid) -> Result<Vec<FieldState>> {
    let nodes = grid.nodes();
    if let Some(expr) = &src.expression {
        let e = Expr::parse(expr, "source.expression")?;
        let coords: Vec<Vec<f64>> = (0..space.len()).map(|i| space.coords(i)).collect();
        return nodes
            .iter()
            .map(|&t| {
                let vals = coords
                    .iter()
                    .map(|x| e.eval(t, x).map(|v| Complex64::new(v, 0.0)))
                    .collect::<Result<Vec<_>>>()?;
                FieldState::new(space.clone(), t, vals)
            })
            .collect();
    }
    let path = src.csv.as_ref().expect("validated");
    let text = std::fs::read_to_string(path)?;
    let mut vals = vec![vec![Complex64::new(0.0, 0.0); space.len()]; nodes.len()];
    let mut seen = 0usize;
    for (ln, line) in text.lines().enumerate().skip(1) {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = |d: String| Error::Data(format!("{}:{}: {d}", path.display(), ln + 1));
        if cells.len() != 4 {
            return Err(bad("expected columns node,index,real,imag".into()));
        }
        let node: usize = cells[0].parse().map_err(|e| bad(format!("{e}")))?;
        let idx: usize = cells[1].parse().map_err(|e| bad(format!("{e}")))?;
        if node >= nodes.len() || idx >= space.len() {
            return Err(bad("node or index out of range".into()));
        }
        let re: f64 = cells[2].parse().map_err(|e| bad(format!("{e}")))?;
        let im: f64 = cells[3].parse().map_err(|e| bad(format!("{e}")))?;
        vals[node][idx] = Complex64::new(re, im);
        seen += 1;
    }
    if seen != nodes.len() * space.len() {
        return Err(Error::validation(
            "source.csv",
            format!(
                "expected {} rows (every node and sample), got {seen}",
                nodes.len() * space.len()
            ),
        ));
    }
    vals.into_iter()
        .zip(nodes)
        .map(|(v, &t)| FieldState::new(space.clone(), t, v))
        .collect()
}

/// Real expression in `t`, `x`, `y`, `pi`; functions as `math::sin` etc.
struct Expr {
    tree: evalexpr::Node,
    field: &'static str,
}

impl Expr {
    fn parse(text: &str, field: &'static str) -> Result<Self> {
        let tree = evalexpr::build_operator_tree(text).map_err(|e| Error::validation(field, e.to_string()))?;
        Ok(Expr { tree, field })
    }

    fn eval(&self, t: f64, x: &[f64]) -> Result<f64> {
        use evalexpr::{ContextWithMutableVariables, HashMapContext, Value as V};
        let mut ctx = HashMapContext::new();
        let names = ["x", "y"];
        let set = |ctx: &mut HashMapContext, k: &str, v: f64| {
            ctx.set_value(k.into(), V::Float(v))
                .map_err(|e| Error::validation(self.field, e.to_string()))
        };
        set(&mut ctx, "t", t)?;
        set(&mut ctx, "pi", std::f64::consts::PI)?;
        for (n, v) in names.iter().zip(x) {
            set(&mut ctx, n, *v)?;
        }
        self.tree
            .eval_number_with_context(&ctx)
            .map_err(|e| Error::validation(self.field, e.to_string()))
    }
}

impl std::fmt::Debug for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Expr({})", self.field)
    }
}
