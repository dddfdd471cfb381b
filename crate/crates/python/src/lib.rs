//! Python bindings: wavefunctions, Fisher information and the verification suite.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::qfisher as core;
use core::fisher::Space;
use core::verify::{Fault, VerifyOptions};

fn to_py(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "QuadratureConfig", module = "qfisher", skip_from_py_object)]
#[derive(Clone)]
struct PyQuadratureConfig {
    inner: core::QuadratureConfig,
}

#[pymethods]
impl PyQuadratureConfig {
    #[new]
    #[pyo3(signature = (abs_tol=1e-10, rel_tol=1e-10, panel_order=15, max_depth=30, max_subdivisions=2000))]
    fn new(
        abs_tol: f64,
        rel_tol: f64,
        panel_order: usize,
        max_depth: usize,
        max_subdivisions: usize,
    ) -> PyResult<Self> {
        let inner = core::QuadratureConfig {
            abs_tol,
            rel_tol,
            panel_order,
            max_depth,
            max_subdivisions,
        };
        inner.validate().map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn abs_tol(&self) -> f64 {
        self.inner.abs_tol
    }

    #[getter]
    fn rel_tol(&self) -> f64 {
        self.inner.rel_tol
    }

    #[getter]
    fn panel_order(&self) -> usize {
        self.inner.panel_order
    }

    #[getter]
    fn max_depth(&self) -> usize {
        self.inner.max_depth
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

fn config_or_default(config: Option<PyRef<'_, PyQuadratureConfig>>) -> core::QuadratureConfig {
    config.map(|c| c.inner).unwrap_or_default()
}

#[pyclass(name = "BoundState", module = "qfisher", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBoundState {
    inner: core::BoundState,
}

#[pymethods]
impl PyBoundState {
    #[staticmethod]
    fn hydrogen(n: u32) -> PyResult<Self> {
        Ok(Self {
            inner: core::BoundState::hydrogen(n).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn well(n: u32, width: f64) -> PyResult<Self> {
        Ok(Self {
            inner: core::BoundState::well(n, width).map_err(to_py)?,
        })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    #[getter]
    fn system(&self) -> &'static str {
        match self.inner.system {
            core::SystemKind::HydrogenHalfLine => "hydrogen",
            core::SystemKind::InfiniteWell => "well",
        }
    }

    #[getter]
    fn width(&self) -> f64 {
        self.inner.width
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy()
    }

    fn psi(&self, x: f64) -> f64 {
        self.inner.psi(x)
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundState({}, n={}, width={})",
            self.system(),
            self.inner.n,
            self.inner.width
        )
    }
}

#[pyclass(
    name = "IntegralResult",
    module = "qfisher",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyIntegralResult {
    value: f64,
    error_estimate: f64,
    converged: bool,
    panels_used: usize,
}

impl From<core::IntegralResult> for PyIntegralResult {
    fn from(r: core::IntegralResult) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
            converged: r.converged,
            panels_used: r.panels_used,
        }
    }
}

#[pymethods]
impl PyIntegralResult {
    fn __repr__(&self) -> String {
        format!(
            "IntegralResult(value={}, error_estimate={:e}, converged={})",
            self.value, self.error_estimate, self.converged
        )
    }
}

#[pyclass(
    name = "FisherReport",
    module = "qfisher",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyFisherReport {
    n: u32,
    system: &'static str,
    i_rho_numeric: f64,
    i_rho_closed: Option<f64>,
    i_gamma_numeric: f64,
    i_gamma_closed: Option<f64>,
    product: f64,
    max_abs_discrepancy: f64,
    converged: bool,
}

#[pymethods]
impl PyFisherReport {
    fn __repr__(&self) -> String {
        format!(
            "FisherReport({}, n={}, i_rho={}, i_gamma={}, product={})",
            self.system, self.n, self.i_rho_numeric, self.i_gamma_numeric, self.product
        )
    }
}

#[pyclass(
    name = "CheckResult",
    module = "qfisher",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyCheckResult {
    name: String,
    measured: f64,
    tolerance: f64,
    converged: bool,
    passed: bool,
    detail: String,
}

#[pyfunction]
fn laguerre(m: usize, beta: f64, x: f64) -> PyResult<f64> {
    core::laguerre(core::PolyIndex::new(m, beta).map_err(to_py)?, x).map_err(to_py)
}

#[pyfunction]
fn laguerre_derivative(m: usize, beta: f64, x: f64) -> PyResult<f64> {
    core::laguerre_derivative(core::PolyIndex::new(m, beta).map_err(to_py)?, x).map_err(to_py)
}

#[pyfunction]
fn laguerre_rodrigues_oracle(m: usize, beta: f64, x: f64) -> PyResult<f64> {
    core::laguerre_rodrigues_oracle(core::PolyIndex::new(m, beta).map_err(to_py)?, x).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (a, b, x, max_terms=500, series_tol=f64::EPSILON))]
fn kummer_m(a: f64, b: f64, x: f64, max_terms: usize, series_tol: f64) -> PyResult<f64> {
    core::kummer_m(core::KummerParams {
        a,
        b,
        x,
        max_terms,
        series_tol,
    })
    .map_err(to_py)
}

#[pyfunction]
fn hydrogen_energy(n: u32) -> PyResult<f64> {
    Ok(core::hydrogen_energy(n).map_err(to_py)?.value)
}

#[pyfunction]
fn hydrogen_psi(n: u32, x: f64) -> PyResult<f64> {
    core::hydrogen_psi(n, x).map_err(to_py)
}

#[pyfunction]
fn hydrogen_psi_derivative(n: u32, x: f64) -> PyResult<f64> {
    core::hydrogen_psi_derivative(n, x).map_err(to_py)
}

#[pyfunction]
fn hydrogen_phi(n: u32, p: f64) -> PyResult<Complex64> {
    core::hydrogen_phi(n, p).map_err(to_py)
}

#[pyfunction]
fn hydrogen_rho(n: u32, x: f64) -> PyResult<f64> {
    core::hydrogen_rho(n, x).map_err(to_py)
}

#[pyfunction]
fn hydrogen_gamma(n: u32, p: f64) -> PyResult<f64> {
    core::hydrogen_gamma(n, p).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, x, h=1e-4))]
fn schrodinger_residual(n: u32, x: f64, h: f64) -> PyResult<f64> {
    core::schrodinger_residual(n, x, h).map_err(to_py)
}

#[pyfunction]
fn well_psi(n: u32, width: f64, x: f64) -> PyResult<f64> {
    let state = core::BoundState::well(n, width).map_err(to_py)?;
    core::well_psi(&state, x).map_err(to_py)
}

/// Numerical Fourier transform of a hydrogen eigenfunction.
#[pyfunction]
#[pyo3(signature = (n, p, config=None))]
fn hydrogen_phi_numeric(
    n: u32,
    p: f64,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
) -> PyResult<Complex64> {
    let cfg = config_or_default(config);
    Ok(core::verify::hydrogen_phi_numeric(n, p, &cfg)
        .map_err(to_py)?
        .amplitude)
}

#[pyfunction]
#[pyo3(signature = (state, config=None))]
fn fisher_position(
    state: PyRef<'_, PyBoundState>,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
) -> PyResult<PyIntegralResult> {
    let cfg = config_or_default(config);
    Ok(core::fisher_position(&state.inner, &cfg)
        .map_err(to_py)?
        .into())
}

#[pyfunction]
#[pyo3(signature = (state, config=None))]
fn fisher_momentum(
    state: PyRef<'_, PyBoundState>,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
) -> PyResult<PyIntegralResult> {
    let cfg = config_or_default(config);
    Ok(core::fisher_momentum(&state.inner, &cfg)
        .map_err(to_py)?
        .into())
}

#[pyfunction]
fn fisher_closed_hydrogen(n: u32) -> PyResult<(f64, f64)> {
    core::fisher_closed_hydrogen(n).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, width, config=None))]
fn well_fisher_momentum_via_position(
    n: u32,
    width: f64,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
) -> PyResult<PyIntegralResult> {
    let cfg = config_or_default(config);
    Ok(core::well_fisher_momentum_via_position(n, width, &cfg)
        .map_err(to_py)?
        .into())
}

/// Returns `(real part, imaginary part)` of `<n'|n>`.
#[pyfunction]
#[pyo3(signature = (state, n_prime, space="position", config=None))]
fn orthonormality_check(
    state: PyRef<'_, PyBoundState>,
    n_prime: u32,
    space: &str,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
) -> PyResult<(f64, f64)> {
    let space = match space {
        "position" => Space::Position,
        "momentum" => Space::Momentum,
        other => {
            return Err(PyValueError::new_err(format!(
                "space must be 'position' or 'momentum', got {other:?}"
            )))
        }
    };
    let cfg = config_or_default(config);
    let o = core::orthonormality_check(&state.inner, n_prime, space, &cfg).map_err(to_py)?;
    Ok((o.value, o.imag))
}

#[pyfunction]
#[pyo3(signature = (state, config=None))]
fn build_report(
    state: PyRef<'_, PyBoundState>,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
) -> PyResult<PyFisherReport> {
    let cfg = config_or_default(config);
    let r = core::build_report(&state.inner, &cfg).map_err(to_py)?;
    Ok(PyFisherReport {
        n: r.state.n,
        system: state.system(),
        i_rho_numeric: r.i_rho_numeric,
        i_rho_closed: r.i_rho_closed,
        i_gamma_numeric: r.i_gamma_numeric,
        i_gamma_closed: r.i_gamma_closed,
        product: r.product,
        max_abs_discrepancy: r.max_abs_discrepancy,
        converged: r.converged,
    })
}

/// Runs the verification suite; returns `(passed, checks)`.
#[pyfunction]
#[pyo3(signature = (n_max=8, fault=None, config=None))]
fn verify(
    py: Python<'_>,
    n_max: u32,
    fault: Option<&str>,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
) -> PyResult<(bool, Vec<PyCheckResult>)> {
    let fault = match fault {
        None => None,
        Some("real-phi") => Some(Fault::RealPhi),
        Some(other) => return Err(PyValueError::new_err(format!("unknown fault {other:?}"))),
    };
    let opts = VerifyOptions {
        n_max,
        fault,
        config: config_or_default(config),
    };
    let report = py
        .detach(|| core::verify::run_suite(&opts))
        .map_err(to_py)?;
    let checks = report
        .checks
        .into_iter()
        .map(|c| PyCheckResult {
            name: c.name,
            measured: c.measured,
            tolerance: c.tolerance,
            converged: c.converged,
            passed: c.passed,
            detail: c.detail,
        })
        .collect();
    Ok((report.passed, checks))
}

/// Same as [`verify`] but returns the JSON document the CLI emits.
#[pyfunction]
#[pyo3(signature = (n_max=8))]
fn verify_json(py: Python<'_>, n_max: u32) -> PyResult<String> {
    let opts = VerifyOptions {
        n_max,
        ..Default::default()
    };
    let report = py
        .detach(|| core::verify::run_suite(&opts))
        .map_err(to_py)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn qfisher(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuadratureConfig>()?;
    m.add_class::<PyBoundState>()?;
    m.add_class::<PyIntegralResult>()?;
    m.add_class::<PyFisherReport>()?;
    m.add_class::<PyCheckResult>()?;
    m.add_function(wrap_pyfunction!(laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre_rodrigues_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(kummer_m, m)?)?;
    m.add_function(wrap_pyfunction!(hydrogen_energy, m)?)?;
    m.add_function(wrap_pyfunction!(hydrogen_psi, m)?)?;
    m.add_function(wrap_pyfunction!(hydrogen_psi_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(hydrogen_phi, m)?)?;
    m.add_function(wrap_pyfunction!(hydrogen_phi_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(hydrogen_rho, m)?)?;
    m.add_function(wrap_pyfunction!(hydrogen_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(schrodinger_residual, m)?)?;
    m.add_function(wrap_pyfunction!(well_psi, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_position, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_momentum, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_closed_hydrogen, m)?)?;
    m.add_function(wrap_pyfunction!(well_fisher_momentum_via_position, m)?)?;
    m.add_function(wrap_pyfunction!(orthonormality_check, m)?)?;
    m.add_function(wrap_pyfunction!(build_report, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    Ok(())
}
