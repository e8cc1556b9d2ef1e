//! Python bindings for `harmonic_schwarz`.
//!
//! Dimensions are plain integers. Verification reports and tables are
//! returned as JSON strings; decode them with `json.loads`.

use harmonic_schwarz::harmonic::{self, AxisPoint};
use harmonic_schwarz::phi as core_phi;
use harmonic_schwarz::quadrature::QuadratureSpec;
use harmonic_schwarz::{bounds, specfun, Dimension, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Divergent { .. } | Error::Pole { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn dim(n: u32) -> PyResult<Dimension> {
    Dimension::new(n).map_err(to_py)
}

fn json<T: Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[pyfunction]
fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> PyResult<f64> {
    specfun::hyp2f1(a, b, c, z).map_err(to_py)
}

#[pyfunction]
fn gegenbauer(lam: f64, degree: usize, x: f64) -> PyResult<f64> {
    specfun::gegenbauer(lam, degree, x).map_err(to_py)
}

#[pyfunction]
fn gamma(x: f64) -> f64 {
    specfun::gamma(x)
}

/// Φ(ρ) by `method`: "quad", "series" or "closed3".
#[pyfunction]
#[pyo3(signature = (n, rho, method = "quad", k_max = None))]
fn phi(n: u32, rho: f64, method: &str, k_max: Option<usize>) -> PyResult<f64> {
    let n = dim(n)?;
    let r = match method {
        "quad" => core_phi::phi_quad(n, rho, &spec()),
        "series" => core_phi::phi_series(
            n,
            rho,
            k_max.unwrap_or_else(|| core_phi::default_truncation(n, rho)),
        ),
        "closed3" if n.get() == 3 => return Ok(core_phi::phi3_closed(rho)),
        "closed3" => return Err(PyValueError::new_err("closed3 needs n = 3")),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    r.map(|e| e.value).map_err(to_py)
}

/// Φ''(ρ) by `method`: "auto", "closed", "series" or "fd".
#[pyfunction]
#[pyo3(signature = (n, rho, method = "auto"))]
fn phi_second(n: u32, rho: f64, method: &str) -> PyResult<f64> {
    let n = dim(n)?;
    let r = match method {
        "auto" => core_phi::phi_second(n, rho),
        "closed" => core_phi::phi_second_closed(n, rho),
        "series" => core_phi::phi_second_series(n, rho, core_phi::default_truncation(n, rho)),
        "fd" => core_phi::phi_second_fd(n, rho, &spec()),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    r.map(|e| e.value).map_err(to_py)
}

#[pyfunction]
fn psi(n: u32, t: f64) -> PyResult<f64> {
    core_phi::psi(dim(n)?, t).map_err(to_py)
}

#[pyfunction]
fn ball_volume(n: u32) -> f64 {
    bounds::ball_volume(n)
}

#[pyfunction]
fn schwarz_pick_constant(n: u32) -> PyResult<f64> {
    Ok(bounds::schwarz_pick_constant(dim(n)?))
}

#[pyfunction]
fn khavinson_sharp_constant_3d() -> f64 {
    bounds::khavinson_sharp_constant_3d()
}

#[pyfunction]
fn khavinson_radial_3d(t: f64) -> PyResult<f64> {
    bounds::khavinson_radial_3d(t).map_err(to_py)
}

#[pyfunction]
fn capital_c(n: u32, rho: f64) -> PyResult<f64> {
    bounds::capital_c(dim(n)?, rho, &spec()).map_err(to_py)
}

#[pyfunction]
fn gradient_bound(n: u32, rho: f64) -> PyResult<f64> {
    bounds::gradient_bound(dim(n)?, rho).map_err(to_py)
}

#[pyfunction]
fn pw_bound(n: u32, dist: f64, osc: f64) -> PyResult<f64> {
    bounds::pw_bound(dim(n)?, dist, osc).map_err(to_py)
}

#[pyfunction]
fn halfspace_constant(n: u32) -> PyResult<f64> {
    Ok(bounds::halfspace_constant(dim(n)?))
}

#[pyfunction]
fn bound_table(n: u32, rho_grid: Vec<f64>) -> PyResult<String> {
    json(&bounds::bound_table(dim(n)?, &rho_grid, &spec()).map_err(to_py)?)
}

/// Piecewise-constant boundary data depending only on the last coordinate.
#[pyclass(name = "ZonalBoundaryData", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyZonalData(harmonic::ZonalBoundaryData);

#[pymethods]
impl PyZonalData {
    #[new]
    fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        harmonic::ZonalBoundaryData::new(breakpoints, values)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn constant(value: f64) -> PyResult<Self> {
        harmonic::ZonalBoundaryData::constant(value)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn sign_at(threshold: f64) -> PyResult<Self> {
        harmonic::ZonalBoundaryData::sign_at(threshold)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn hemisphere() -> Self {
        Self(harmonic::ZonalBoundaryData::hemisphere())
    }

    #[staticmethod]
    fn random(seed: u64, pieces: usize) -> PyResult<Self> {
        harmonic::random_zonal_data(seed, pieces)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn breakpoints(&self) -> Vec<f64> {
        self.0.breakpoints().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    fn __call__(&self, t: f64) -> f64 {
        self.0.eval(t)
    }

    /// `u(ρ e_n)` for the Poisson extension in dimension `n`.
    fn value(&self, n: u32, rho: f64) -> PyResult<f64> {
        let p = AxisPoint::new(rho).map_err(to_py)?;
        harmonic::zonal_poisson_value(dim(n)?, &self.0, p, &spec()).map_err(to_py)
    }

    /// `∂u/∂ρ` at `ρ e_n`.
    fn radial_derivative(&self, n: u32, rho: f64) -> PyResult<f64> {
        let p = AxisPoint::new(rho).map_err(to_py)?;
        harmonic::radial_derivative(dim(n)?, &self.0, p, &spec()).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "ZonalBoundaryData(breakpoints={:?}, values={:?})",
            self.0.breakpoints(),
            self.0.values()
        )
    }
}

#[pyfunction]
fn poisson_kernel(n: u32, rho: f64, t: f64) -> PyResult<f64> {
    Ok(harmonic::poisson_kernel(dim(n)?, rho, t))
}

#[pyfunction]
fn kernel_sign_change(n: u32, rho: f64) -> PyResult<f64> {
    Ok(harmonic::kernel_sign_change(dim(n)?, rho))
}

#[pyfunction]
fn sharp_radial_sup(n: u32, rho: f64) -> PyResult<f64> {
    let p = AxisPoint::new(rho).map_err(to_py)?;
    harmonic::sharp_radial_sup(dim(n)?, p, &spec()).map_err(to_py)
}

#[pyfunction]
fn extremal_gradient_at_origin(n: u32) -> PyResult<f64> {
    harmonic::extremal_gradient_at_origin(dim(n)?, &spec()).map_err(to_py)
}

#[pyfunction]
fn extremal_sign_data(n: u32, rho: f64) -> PyResult<PyZonalData> {
    let p = AxisPoint::new(rho).map_err(to_py)?;
    harmonic::extremal_sign_data(dim(n)?, p)
        .map(PyZonalData)
        .map_err(to_py)
}

/// Runs a verification suite ("all", "monotone", "concavity", "technical",
/// "identities" or "theoremB") and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (n, suite = "all", grid = 1001))]
fn verify(py: Python<'_>, n: u32, suite: &str, grid: usize) -> PyResult<String> {
    use clap::ValueEnum;
    let suite =
        harmonic_schwarz::cli::Suite::from_str(suite, true).map_err(PyValueError::new_err)?;
    let n = dim(n)?;
    let report = py
        .detach(|| harmonic_schwarz::cli::run_suite(n, suite, grid))
        .map_err(to_py)?;
    json(&report)
}

/// Probes `|∇u| ≤ K_n/(1-ρ²)` on seeded random data; JSON with the report and
/// per-radius maxima.
#[pyfunction]
#[pyo3(signature = (n, samples = 200, seed = 0))]
fn probe(py: Python<'_>, n: u32, samples: usize, seed: u64) -> PyResult<String> {
    let n = dim(n)?;
    let grid = harmonic::default_probe_grid();
    let out = py
        .detach(|| harmonic::probe_schwarz_pick(n, samples, &grid, seed, &spec()))
        .map_err(to_py)?;
    json(&out)
}

#[pymodule]
fn harmonic_schwarz_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyZonalData>()?;
    m.add_function(wrap_pyfunction!(hyp2f1, m)?)?;
    m.add_function(wrap_pyfunction!(gegenbauer, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_second, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(ball_volume, m)?)?;
    m.add_function(wrap_pyfunction!(schwarz_pick_constant, m)?)?;
    m.add_function(wrap_pyfunction!(khavinson_sharp_constant_3d, m)?)?;
    m.add_function(wrap_pyfunction!(khavinson_radial_3d, m)?)?;
    m.add_function(wrap_pyfunction!(capital_c, m)?)?;
    m.add_function(wrap_pyfunction!(gradient_bound, m)?)?;
    m.add_function(wrap_pyfunction!(pw_bound, m)?)?;
    m.add_function(wrap_pyfunction!(halfspace_constant, m)?)?;
    m.add_function(wrap_pyfunction!(bound_table, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_sign_change, m)?)?;
    m.add_function(wrap_pyfunction!(sharp_radial_sup, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_gradient_at_origin, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_sign_data, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    Ok(())
}
