//! Run configuration: one JSON document, leaf fields overridable by dotted paths.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::NormSpec;
use crate::error::{Error, Result};
use crate::kernels::{make_pair, KernelSpec, SoninePair};
use crate::spectral::{make_symbol, GroupMetadata, OperatorSymbol, SourceConvention, SpaceGrid, SymbolKind};
use crate::volterra::TimeGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    KernelVerify,
    Relax,
    Resolvent,
    Evolve,
    DecayFit,
    Count,
    Predict,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::KernelVerify => "kernel-verify",
            Command::Relax => "relax",
            Command::Resolvent => "resolvent",
            Command::Evolve => "evolve",
            Command::DecayFit => "decay-fit",
            Command::Count => "count",
            Command::Predict => "predict",
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub kernel: Option<KernelSpec>,
    #[serde(default)]
    pub operator: Option<OperatorConfig>,
    #[serde(default)]
    pub grid: GridConfig,
    /// Relaxation parameters for `relax` and `resolvent`.
    #[serde(default)]
    pub mu: Vec<f64>,
    #[serde(default)]
    pub norms: Vec<NormSpec>,
    #[serde(default)]
    pub initial: Option<InitialData>,
    #[serde(default)]
    pub source: Option<SourceConfig>,
    #[serde(default)]
    pub times: Option<OutputTimes>,
    /// Fit window `[t_lo, t_hi]` for `decay-fit`; never chosen automatically.
    #[serde(default)]
    pub window: Option<(f64, f64)>,
    #[serde(default)]
    pub counting: Option<CountingConfig>,
    #[serde(default)]
    pub checks: CheckConfig,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorConfig {
    pub symbol: SymbolKind,
    pub dim: usize,
    /// Replaces the homogeneous dimension in rate predictions.
    #[serde(default)]
    pub group: Option<GroupMetadata>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default)]
    pub time: Option<TimeGridConfig>,
    #[serde(default)]
    pub space: Option<SpaceGridConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGridConfig {
    pub t_end: f64,
    pub n: usize,
    /// Defaults to `max(3, 2/(1 - eta))` for the kernel's singularity exponent `eta`.
    #[serde(default)]
    pub grading: Option<f64>,
}

impl Default for TimeGridConfig {
    fn default() -> Self {
        TimeGridConfig {
            t_end: 10.0,
            n: 1024,
            grading: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceGridConfig {
    pub points: usize,
    #[serde(default = "two_pi")]
    pub period: f64,
}

fn two_pi() -> f64 {
    2.0 * std::f64::consts::PI
}

/// Initial data families.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    Constant {
        value: f64,
    },
    /// `amplitude * e^{i xi x}` with integer frequency.
    Mode {
        frequency: Vec<i64>,
        #[serde(default = "one")]
        amplitude: f64,
    },
    /// Every frequency with `max |kappa_j| <= band` set to 1.
    PointMass {
        band: i64,
    },
    /// Real random coefficients in the band `max |kappa_j| <= band`.
    Random {
        #[serde(default)]
        seed: Option<u64>,
        band: i64,
        #[serde(default = "yes")]
        mean_zero: bool,
    },
    /// Real expression in `x`, `y` and `pi`.
    Expression {
        expr: String,
    },
    /// CSV as written for a field state (`index,x[,y],real,imag`).
    Csv {
        path: PathBuf,
    },
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

/// Source term, as an expression in `t`, `x`, `y`, `pi` or a CSV with
/// columns `node,index,real,imag` covering every time node.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceConfig {
    #[serde(default)]
    pub expression: Option<String>,
    #[serde(default)]
    pub csv: Option<PathBuf>,
    pub convention: SourceConvention,
}

/// Output times, always snapped to nodes of the time grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OutputTimes {
    /// `count` log-spaced times from `t_min` to the end of the grid.
    Log { t_min: f64, count: usize },
    /// Every `stride`-th node, starting at `t = 0`.
    Every { stride: usize },
    /// Explicit node times.
    Nodes { at: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountingConfig {
    pub v_min: f64,
    pub v_max: f64,
    #[serde(default = "default_count_points")]
    pub points: usize,
}

fn default_count_points() -> usize {
    31
}

/// Tolerances of the verdicts recorded in the manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    #[serde(default = "d_sonine")]
    pub sonine: f64,
    /// Fixed bound tolerance; defaults to the refinement error estimate.
    #[serde(default)]
    pub bounds: Option<f64>,
    #[serde(default = "d_identity")]
    pub identity: f64,
    #[serde(default = "d_slope")]
    pub slope: f64,
    #[serde(default = "d_sup")]
    pub sup: f64,
    /// Factor `C` in `norm(u(t)) <= C L(t)^{-1} norm(u0)` for Sobolev fits.
    #[serde(default = "d_envelope")]
    pub envelope: f64,
    #[serde(default = "d_mean")]
    pub mean: f64,
}

fn d_sonine() -> f64 {
    1e-8
}
fn d_identity() -> f64 {
    1e-5
}
fn d_slope() -> f64 {
    0.05
}
fn d_sup() -> f64 {
    1e-6
}
fn d_envelope() -> f64 {
    1.01
}
fn d_mean() -> f64 {
    1e-12
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            sonine: d_sonine(),
            bounds: None,
            identity: d_identity(),
            slope: d_slope(),
            sup: d_sup(),
            envelope: d_envelope(),
            mean: d_mean(),
        }
    }
}

/// Parse a config document, reporting the path of the offending field.
pub fn parse_config(doc: Value) -> Result<RunConfig> {
    serde_path_to_error::deserialize(doc).map_err(|e| Error::Validation {
        field: e.path().to_string(),
        detail: e.inner().to_string(),
    })
}

pub fn load_document(path: Option<&Path>) -> Result<Value> {
    match path {
        None => Ok(Value::Object(Default::default())),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::validation("--config", format!("{}: {e}", p.display())))?;
            let mut de = serde_json::Deserializer::from_str(&text);
            serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Validation {
                field: "--config".into(),
                detail: format!("{}: {}", p.display(), e.inner()),
            })
        }
    }
}

/// Apply `dotted.key=value`; the value is parsed as JSON, or taken as a string.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::validation("--set", format!("expected key=value, got {assignment:?}")))?;
    if key.is_empty() {
        return Err(Error::validation("--set", "empty key"));
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut cur = doc;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let last = i + 1 == parts.len();
        cur = match cur {
            Value::Object(map) => {
                if last {
                    map.insert(part.to_string(), value);
                    return Ok(());
                }
                map.entry(part.to_string())
                    .or_insert_with(|| Value::Object(Default::default()))
            }
            Value::Array(items) => {
                let idx: usize = part
                    .parse()
                    .map_err(|_| Error::validation(key, format!("{part:?} is not an array index")))?;
                let len = items.len();
                let slot = items
                    .get_mut(idx)
                    .ok_or_else(|| Error::validation(key, format!("index {idx} out of range (len {len})")))?;
                if last {
                    *slot = value;
                    return Ok(());
                }
                slot
            }
            _ => {
                return Err(Error::validation(
                    key,
                    format!("{part:?} is below a non-container value"),
                ))
            }
        };
    }
    Ok(())
}

impl RunConfig {
    pub fn pair(&self) -> Result<SoninePair> {
        make_pair(
            self.kernel
                .as_ref()
                .ok_or_else(|| Error::validation("kernel", "required"))?,
        )
    }

    pub fn symbol(&self) -> Result<OperatorSymbol> {
        let op = self.operator()?;
        make_symbol(op.symbol.clone(), op.dim)
    }

    pub fn operator(&self) -> Result<&OperatorConfig> {
        self.operator
            .as_ref()
            .ok_or_else(|| Error::validation("operator", "required"))
    }

    /// Homogeneous dimension used in predictions: the group's if given.
    pub fn big_q(&self) -> Result<f64> {
        let op = self.operator()?;
        let symbol = self.symbol()?;
        match op.group {
            Some(g) => {
                if !g.admits_nu(symbol.nu) {
                    return Err(Error::validation(
                        "operator.group",
                        format!("nu = {} is not admissible", symbol.nu),
                    ));
                }
                Ok(g.q())
            }
            None => Ok(symbol.q),
        }
    }

    pub fn time_grid(&self, pair: &SoninePair) -> Result<TimeGrid> {
        let tg = self.grid.time.clone().unwrap_or_default();
        match tg.grading {
            Some(g) => TimeGrid::graded(tg.t_end, tg.n, g),
            None => TimeGrid::for_pair(tg.t_end, tg.n, pair),
        }
    }

    pub fn space_grid(&self) -> Result<SpaceGrid> {
        let op = self.operator()?;
        let sg = self
            .grid
            .space
            .as_ref()
            .ok_or_else(|| Error::validation("grid.space", "required"))?;
        SpaceGrid::new(op.dim, sg.points, sg.period)
    }

    /// Check that referenced files exist and command-specific sections are present.
    pub fn validate(&self, command: Command) -> Result<()> {
        let need_kernel = !matches!(command, Command::Count);
        if need_kernel {
            self.pair()?;
        }
        match command {
            Command::Relax | Command::Resolvent => {
                if self.mu.is_empty() {
                    return Err(Error::validation("mu", "at least one value required"));
                }
            }
            Command::Evolve | Command::DecayFit => {
                self.symbol()?;
                self.space_grid()?;
                match &self.initial {
                    None => return Err(Error::validation("initial", "required")),
                    Some(InitialData::Random { seed: None, .. }) => {
                        return Err(Error::validation("initial.seed", "required for random data"))
                    }
                    Some(InitialData::Csv { path }) if !path.exists() => {
                        return Err(Error::validation(
                            "initial.path",
                            format!("{} does not exist", path.display()),
                        ))
                    }
                    _ => {}
                }
                if let Some(src) = &self.source {
                    match (&src.expression, &src.csv) {
                        (Some(_), None) => {}
                        (None, Some(p)) if p.exists() => {}
                        (None, Some(p)) => {
                            return Err(Error::validation(
                                "source.csv",
                                format!("{} does not exist", p.display()),
                            ))
                        }
                        _ => return Err(Error::validation("source", "give exactly one of expression or csv")),
                    }
                }
                if command == Command::DecayFit {
                    if self.window.is_none() {
                        return Err(Error::validation("window", "required for decay-fit"));
                    }
                    if self.norms.is_empty() {
                        return Err(Error::validation("norms", "at least one norm required"));
                    }
                }
            }
            Command::Count => {
                self.symbol()?;
                if self.counting.is_none() {
                    return Err(Error::validation("counting", "required"));
                }
            }
            Command::Predict => {
                self.symbol()?;
                self.big_q()?;
                if !self.norms.iter().any(|n| matches!(n, NormSpec::Lp { .. })) {
                    return Err(Error::validation("norms", "at least one (p, q) pair required"));
                }
            }
            Command::KernelVerify => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn overrides_create_and_replace() {
        let mut doc = json!({"kernel": {"family": "fractional", "alpha": 0.5}, "mu": [1.0, 2.0]});
        apply_override(&mut doc, "kernel.alpha=0.3").unwrap();
        apply_override(&mut doc, "mu.1=5").unwrap();
        apply_override(&mut doc, "grid.time.n=64").unwrap();
        apply_override(&mut doc, "output=runs/a").unwrap();
        assert_eq!(doc["kernel"]["alpha"], json!(0.3));
        assert_eq!(doc["mu"], json!([1.0, 5]));
        assert_eq!(doc["grid"]["time"]["n"], json!(64));
        assert_eq!(doc["output"], json!("runs/a"));
        assert!(apply_override(&mut doc, "mu.7=1").is_err());
        assert!(apply_override(&mut doc, "novalue").is_err());
    }

    #[test]
    fn schema_errors_name_the_field() {
        let doc = json!({"kernel": {"family": "fractional", "alfa": 0.5}});
        match parse_config(doc) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "kernel"),
            other => panic!("unexpected {other:?}"),
        }
        let doc = json!({"grid": {"time": {"t_end": "ten", "n": 8}}});
        match parse_config(doc) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "grid.time.t_end"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn random_data_needs_seed() {
        let doc = json!({
            "kernel": {"family": "fractional", "alpha": 0.5},
            "operator": {"symbol": {"kind": "laplacian"}, "dim": 2},
            "grid": {"space": {"points": 16}},
            "initial": {"kind": "random", "band": 4}
        });
        let cfg = parse_config(doc).unwrap();
        match cfg.validate(Command::Evolve) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "initial.seed"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
