//! Python bindings: `import sonine`.

use std::sync::Arc;

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sonine_core::analysis;
use sonine_core::kernels::{self, KernelSpec, SoninePair};
use sonine_core::specfun::{self, MlOrder, MvMlOrder};
use sonine_core::spectral::{self, FieldState, OperatorSymbol, SpaceGrid, SymbolKind};
use sonine_core::volterra::{self, TimeGrid};
use sonine_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain { .. } | Error::Validation { .. } | Error::Data(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn wrap<T>(r: sonine_core::Result<T>) -> PyResult<T> {
    r.map_err(py_err)
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    wrap(specfun::gamma_fn(x))
}

/// `E_{alpha,beta}(z)` for real `z`.
#[pyfunction]
#[pyo3(signature = (alpha, beta, z))]
fn mittag_leffler(alpha: f64, beta: f64, z: f64) -> PyResult<f64> {
    wrap(specfun::mittag_leffler(wrap(MlOrder::new(alpha, beta))?, z))
}

/// Returns `(value, tail_estimate)`.
#[pyfunction]
#[pyo3(signature = (alphas, beta, z, truncation=80))]
fn mv_mittag_leffler(alphas: Vec<f64>, beta: f64, z: Vec<f64>, truncation: usize) -> PyResult<(f64, f64)> {
    let order = wrap(MvMlOrder::new(alphas, beta))?;
    let v = wrap(specfun::mv_mittag_leffler(&order, &z, truncation))?;
    Ok((v.value, v.tail_estimate))
}

#[pyfunction]
fn exp_integral_e1(x: f64) -> PyResult<f64> {
    wrap(specfun::exp_integral_e1(x))
}

/// A Sonine kernel pair `(k, l)` with `k * l = 1`.
#[pyclass(name = "KernelPair", frozen)]
struct PyKernelPair {
    inner: SoninePair,
}

impl PyKernelPair {
    fn from_spec(spec: KernelSpec) -> PyResult<Self> {
        Ok(PyKernelPair {
            inner: wrap(kernels::make_pair(&spec))?,
        })
    }
}

#[pymethods]
impl PyKernelPair {
    #[staticmethod]
    fn fractional(alpha: f64) -> PyResult<Self> {
        Self::from_spec(KernelSpec::Fractional { alpha })
    }

    #[staticmethod]
    fn two_term(alpha: f64, beta: f64) -> PyResult<Self> {
        Self::from_spec(KernelSpec::TwoTerm { alpha, beta })
    }

    #[staticmethod]
    fn distributed_order() -> PyResult<Self> {
        Self::from_spec(KernelSpec::DistributedOrder)
    }

    #[staticmethod]
    #[pyo3(signature = (alphas, truncation=80))]
    fn multi_term(alphas: Vec<f64>, truncation: usize) -> PyResult<Self> {
        Self::from_spec(KernelSpec::MultiTerm { alphas, truncation })
    }

    #[staticmethod]
    fn tempered(alpha: f64, gamma: f64) -> PyResult<Self> {
        Self::from_spec(KernelSpec::Tempered { alpha, gamma })
    }

    /// Pair given by a Python callable `l`; `eta` is its singularity exponent at 0.
    #[staticmethod]
    #[pyo3(signature = (name, l, eta=0.0))]
    fn custom(name: String, l: Py<PyAny>, eta: f64) -> PyResult<Self> {
        let f = Arc::new(move |t: f64| {
            Python::attach(|py| l.call1(py, (t,)).and_then(|v| v.extract::<f64>(py)).unwrap_or(f64::NAN))
        });
        Ok(PyKernelPair {
            inner: wrap(SoninePair::custom(name, None, f, eta))?,
        })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family().as_str()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn singularity_exponent(&self) -> f64 {
        self.inner.singularity_exponent()
    }

    fn k(&self, t: f64) -> f64 {
        self.inner.k(t)
    }

    fn l(&self, t: f64) -> f64 {
        self.inner.l(t)
    }

    /// `L(t) = (1 * l)(t)`.
    fn cumulative_l(&self, t: f64) -> PyResult<f64> {
        wrap(self.inner.cumulative_l(t))
    }

    /// Returns `(max |k*l - 1|, passed)` on `grid`.
    #[pyo3(signature = (grid, tol=1e-6))]
    fn verify(&self, py: Python<'_>, grid: Vec<f64>, tol: f64) -> PyResult<(f64, bool)> {
        let r = wrap(py.detach(|| kernels::verify_sonine(&self.inner, &grid, tol)))?;
        Ok((r.max_abs_deviation, r.passed))
    }

    fn __repr__(&self) -> String {
        format!("KernelPair({})", self.inner.name())
    }
}

/// Graded time mesh `t_j = T (j/N)^r`.
#[pyclass(name = "TimeGrid", frozen)]
struct PyTimeGrid {
    inner: TimeGrid,
}

#[pymethods]
impl PyTimeGrid {
    #[new]
    #[pyo3(signature = (t_end, n, grading=1.0))]
    fn new(t_end: f64, n: usize, grading: f64) -> PyResult<Self> {
        Ok(PyTimeGrid {
            inner: wrap(TimeGrid::graded(t_end, n, grading))?,
        })
    }

    /// Grid graded for the singularity of `pair`.
    #[staticmethod]
    fn for_pair(t_end: f64, n: usize, pair: &PyKernelPair) -> PyResult<Self> {
        Ok(PyTimeGrid {
            inner: wrap(TimeGrid::for_pair(t_end, n, &pair.inner))?,
        })
    }

    #[getter]
    fn nodes(&self) -> Vec<f64> {
        self.inner.nodes().to_vec()
    }

    #[getter]
    fn grading(&self) -> f64 {
        self.inner.grading()
    }

    fn __len__(&self) -> usize {
        self.inner.nodes().len()
    }
}

/// Nodal values of `s + mu (l * s) = 1`.
#[pyfunction]
fn solve_relaxation(py: Python<'_>, pair: &PyKernelPair, mu: f64, grid: &PyTimeGrid) -> PyResult<Vec<f64>> {
    Ok(wrap(py.detach(|| volterra::solve_relaxation(&pair.inner, mu, &grid.inner)))?.values)
}

/// Nodal values of `r + mu (l * r) = l` and of `1 * r`.
#[pyfunction]
fn solve_resolvent(py: Python<'_>, pair: &PyKernelPair, mu: f64, grid: &PyTimeGrid) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let sol = wrap(py.detach(|| volterra::solve_resolvent(&pair.inner, mu, &grid.inner)))?;
    let cumulative = sol.cumulative.clone().unwrap_or_default();
    Ok((sol.values, cumulative))
}

/// Returns `(l at cell midpoints, midpoints)` recovered from `k`.
#[pyfunction]
fn invert_sonine(py: Python<'_>, k: Py<PyAny>, eta: f64, grid: &PyTimeGrid) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let f = move |t: f64| Python::attach(|py| k.call1(py, (t,)).and_then(|v| v.extract::<f64>(py)).unwrap_or(f64::NAN));
    let inv = wrap(py.detach(|| volterra::invert_sonine(&f, eta, &grid.inner)))?;
    Ok((inv.values, inv.midpoints))
}

/// Homogeneous elliptic symbol: `laplacian`, `polyharmonic` (needs `m`) or
/// `anisotropic` (needs `a` and `m`).
#[pyclass(name = "Symbol", frozen)]
struct PySymbol {
    inner: OperatorSymbol,
}

#[pymethods]
impl PySymbol {
    #[new]
    #[pyo3(signature = (kind, dim, m=None, a=None))]
    fn new(kind: &str, dim: usize, m: Option<u32>, a: Option<Vec<f64>>) -> PyResult<Self> {
        let kind = match (kind, m, a) {
            ("laplacian", None, None) => SymbolKind::Laplacian,
            ("polyharmonic", Some(m), None) => SymbolKind::Polyharmonic { m },
            ("anisotropic", Some(m), Some(a)) => SymbolKind::Anisotropic { a, m },
            (k, ..) => return Err(PyValueError::new_err(format!("bad parameters for symbol kind '{k}'"))),
        };
        Ok(PySymbol {
            inner: wrap(spectral::make_symbol(kind, dim))?,
        })
    }

    #[getter]
    fn nu(&self) -> f64 {
        self.inner.nu
    }

    #[getter]
    fn q(&self) -> f64 {
        self.inner.q
    }

    fn __call__(&self, xi: Vec<f64>) -> f64 {
        self.inner.eval(&xi)
    }
}

#[pyfunction]
fn spectral_counting(symbol: &PySymbol, v: f64, truncation: u64) -> PyResult<u64> {
    wrap(spectral::spectral_counting(&symbol.inner, v, truncation))
}

/// Returns `(slope, expected_slope, counts)`.
#[pyfunction]
fn fit_counting_exponent(symbol: &PySymbol, v: Vec<f64>) -> PyResult<(f64, f64, Vec<u64>)> {
    let f = wrap(spectral::fit_counting_exponent(&symbol.inner, &v))?;
    Ok((f.slope, f.expected_slope, f.counts))
}

/// Sampled field on the periodic grid `[0, period)^dim`, flattened row-major.
#[pyclass(name = "Field")]
struct PyField {
    inner: FieldState,
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (values, dim, points, period=std::f64::consts::TAU))]
    fn new(values: Vec<Complex64>, dim: usize, points: usize, period: f64) -> PyResult<Self> {
        let grid = wrap(SpaceGrid::new(dim, points, period))?;
        Ok(PyField {
            inner: wrap(FieldState::new(grid, 0.0, values))?,
        })
    }

    /// Real band-limited random state, reproducible from `seed`.
    #[staticmethod]
    #[pyo3(signature = (dim, points, seed, band, mean_zero=true, period=std::f64::consts::TAU))]
    fn random(dim: usize, points: usize, seed: u64, band: i64, mean_zero: bool, period: f64) -> PyResult<Self> {
        let grid = wrap(SpaceGrid::new(dim, points, period))?;
        Ok(PyField {
            inner: wrap(sonine_core::cli::commands::random_state(&grid, seed, band, mean_zero))?,
        })
    }

    #[getter]
    fn time(&self) -> f64 {
        self.inner.time
    }

    #[getter]
    fn values(&self) -> Vec<Complex64> {
        self.inner.values.clone()
    }

    /// Normalized Fourier coefficients in FFT order.
    fn coefficients(&self) -> Vec<Complex64> {
        self.inner.coefficients()
    }

    fn lp_norm(&self, p: f64) -> PyResult<f64> {
        wrap(analysis::lp_norm(&self.inner, p))
    }

    fn sobolev_norm(&self, s: f64, symbol: &PySymbol) -> PyResult<f64> {
        wrap(analysis::sobolev_norm(&self.inner, s, &symbol.inner))
    }
}

/// Homogeneous evolution at `times`, which must be nodes of `grid`.
#[pyfunction]
fn evolve(
    py: Python<'_>,
    u0: &PyField,
    pair: &PyKernelPair,
    symbol: &PySymbol,
    grid: &PyTimeGrid,
    times: Vec<f64>,
) -> PyResult<Vec<PyField>> {
    let out =
        wrap(py.detach(|| spectral::evolve_homogeneous(&u0.inner, &pair.inner, &symbol.inner, &grid.inner, &times)))?;
    Ok(out.into_iter().map(|inner| PyField { inner }).collect())
}

/// Returns `(value, maximizer)` of `sup_v v^{lambda/r} / (1 + v L)`.
#[pyfunction]
fn sup_bound(lam: f64, r: f64, big_l: f64) -> PyResult<(f64, Option<f64>)> {
    let b = wrap(analysis::sup_bound(lam, r, big_l))?;
    Ok((b.value, b.maximizer))
}

/// Exponent of `L(t)` in the `L^p -> L^q` decay estimate.
#[pyfunction]
fn predict_decay_rate(p: f64, q: f64, big_q: f64, nu: f64, pair: &PyKernelPair) -> PyResult<f64> {
    Ok(wrap(analysis::predict_decay_rate(p, q, big_q, nu, &pair.inner))?.exponent)
}

/// Returns `(slope, residual)` of `log norm` against `log L(t)` over `window`.
#[pyfunction]
fn fit_decay_exponent(series: Vec<(f64, f64)>, pair: &PyKernelPair, window: (f64, f64)) -> PyResult<(f64, f64)> {
    let f = wrap(analysis::fit_decay_exponent(&series, &pair.inner, window))?;
    Ok((f.fitted_exponent, f.residual))
}

/// Run the batch driver with command-line style arguments; returns the exit status.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> i32 {
    py.detach(|| sonine_core::cli::main_with_args(std::iter::once("sonine".to_string()).chain(args)))
}

#[pymodule]
fn sonine(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyKernelPair>()?;
    m.add_class::<PyTimeGrid>()?;
    m.add_class::<PySymbol>()?;
    m.add_class::<PyField>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(mv_mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(exp_integral_e1, m)?)?;
    m.add_function(wrap_pyfunction!(solve_relaxation, m)?)?;
    m.add_function(wrap_pyfunction!(solve_resolvent, m)?)?;
    m.add_function(wrap_pyfunction!(invert_sonine, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_counting, m)?)?;
    m.add_function(wrap_pyfunction!(fit_counting_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(sup_bound, m)?)?;
    m.add_function(wrap_pyfunction!(predict_decay_rate, m)?)?;
    m.add_function(wrap_pyfunction!(fit_decay_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
