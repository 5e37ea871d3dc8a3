//! Python module `ccrit`: the lattice sums, gap solver and critical
//! temperatures of `ccrit-core`.

use ccrit_core::criticality as crit;
use ccrit_core::gap as gp;
use ccrit_core::lattice_sums as ls;
use ccrit_core::{specfun, verify, Error};
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(_) | Error::Domain { .. } => PyValueError::new_err(e.to_string()),
        Error::Pole { .. } | Error::Overflow { .. } | Error::Divergent { .. } => {
            PyArithmeticError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Truncation controls shared by every infinite sum.
#[pyclass(name = "TruncationPolicy", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Policy(ccrit_core::TruncationPolicy);

#[pymethods]
impl Policy {
    #[new]
    #[pyo3(signature = (rel_tol = 1e-14, abs_tol = 1e-16, max_index = 4096))]
    fn new(rel_tol: f64, abs_tol: f64, max_index: usize) -> PyResult<Self> {
        ccrit_core::TruncationPolicy::new(rel_tol, abs_tol, max_index)
            .map(Policy)
            .map_err(to_py)
    }

    #[getter]
    fn rel_tol(&self) -> f64 {
        self.0.rel_tol
    }

    #[getter]
    fn abs_tol(&self) -> f64 {
        self.0.abs_tol
    }

    #[getter]
    fn max_index(&self) -> usize {
        self.0.max_index
    }

    fn __repr__(&self) -> String {
        format!(
            "TruncationPolicy(rel_tol={}, abs_tol={}, max_index={})",
            self.0.rel_tol, self.0.abs_tol, self.0.max_index
        )
    }
}

fn policy(p: Option<PyRef<'_, Policy>>) -> ccrit_core::TruncationPolicy {
    p.map_or_else(Default::default, |p| p.0)
}

/// A truncated series: value, error bound and number of terms.
#[pyclass(name = "SeriesValue", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Series(ccrit_core::SeriesValue);

#[pymethods]
impl Series {
    #[getter]
    fn value(&self) -> f64 {
        self.0.value
    }

    #[getter]
    fn error_bound(&self) -> f64 {
        self.0.error_bound
    }

    #[getter]
    fn terms_used(&self) -> u64 {
        self.0.terms_used
    }

    fn __float__(&self) -> f64 {
        self.0.value
    }

    fn __repr__(&self) -> String {
        format!(
            "SeriesValue(value={}, error_bound={}, terms_used={})",
            self.0.value, self.0.error_bound, self.0.terms_used
        )
    }
}

fn series(r: ccrit_core::Result<ccrit_core::SeriesValue>) -> PyResult<Series> {
    r.map(Series).map_err(to_py)
}

/// Ginzburg-Landau parameters `alpha`, `coupling` (lambda) and `t0`.
#[pyclass(name = "GLParams", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Params(crit::GLParams);

#[pymethods]
impl Params {
    #[new]
    fn new(alpha: f64, coupling: f64, t0: f64) -> PyResult<Self> {
        crit::GLParams::new(alpha, coupling, t0)
            .map(Params)
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "GLParams(alpha={}, coupling={}, t0={})",
            self.0.alpha, self.0.coupling, self.0.t0
        )
    }
}

#[pyclass(name = "CriticalResult", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Critical {
    tc: f64,
    c_constant: f64,
    min_size: f64,
    linear_size: f64,
    transition_exists: bool,
}

#[pymethods]
impl Critical {
    fn __repr__(&self) -> String {
        format!(
            "CriticalResult(tc={}, c_constant={}, min_size={}, linear_size={}, transition_exists={})",
            self.tc,
            self.c_constant,
            self.min_size,
            self.linear_size,
            if self.transition_exists { "True" } else { "False" }
        )
    }
}

fn critical(r: ccrit_core::Result<crit::CriticalResult>) -> PyResult<Critical> {
    let r = r.map_err(to_py)?;
    Ok(Critical {
        tc: r.tc,
        c_constant: r.c_constant,
        min_size: r.min_size,
        linear_size: r.linear_size,
        transition_exists: r.transition_exists,
    })
}

#[pyclass(name = "GapSolution", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Gap {
    m_sq: f64,
    residual: f64,
    iterations: usize,
}

#[pymethods]
impl Gap {
    fn __repr__(&self) -> String {
        format!(
            "GapSolution(m_sq={}, residual={}, iterations={})",
            self.m_sq, self.residual, self.iterations
        )
    }
}

#[pyfunction]
fn bessel_k(nu: f64, z: f64) -> PyResult<f64> {
    specfun::bessel_k(nu, z).map_err(to_py)
}

#[pyfunction]
fn riemann_zeta(s: f64) -> PyResult<f64> {
    specfun::riemann_zeta(s).map_err(to_py)
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    specfun::gamma(x).map_err(to_py)
}

/// Full-lattice sum `A_d` by direct summation.
#[pyfunction]
#[pyo3(signature = (nu, b, c, policy = None))]
fn a_d_direct(nu: f64, b: Vec<f64>, c: f64, policy: Option<PyRef<'_, Policy>>) -> PyResult<Series> {
    let q = ls::LatticeQuery::new(nu, b, c).map_err(to_py)?;
    series(ls::a_d_direct(&q, &self::policy(policy)))
}

/// Full-lattice sum `A_d` through its Bessel representation.
#[pyfunction]
#[pyo3(signature = (nu, b, c, policy = None))]
fn a_d_bessel(nu: f64, b: Vec<f64>, c: f64, policy: Option<PyRef<'_, Policy>>) -> PyResult<Series> {
    let q = ls::LatticeQuery::new(nu, b, c).map_err(to_py)?;
    series(ls::a_d_bessel(&q, &self::policy(policy)))
}

#[pyfunction]
#[pyo3(signature = (nu, lengths, policy = None))]
fn epstein_direct(
    nu: f64,
    lengths: Vec<f64>,
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<Series> {
    series(ls::epstein_d_direct(nu, &lengths, &self::policy(policy)))
}

#[pyfunction]
#[pyo3(signature = (nu, lengths, policy = None))]
fn epstein_recurrence(
    nu: f64,
    lengths: Vec<f64>,
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<Series> {
    series(ls::epstein_d_recurrence(
        nu,
        &lengths,
        &self::policy(policy),
    ))
}

#[pyfunction]
#[pyo3(signature = (dim, l1, l2, policy = None))]
fn e2_continued(dim: f64, l1: f64, l2: f64, policy: Option<PyRef<'_, Policy>>) -> PyResult<Series> {
    series(ls::e2_continued(dim, l1, l2, &self::policy(policy)))
}

#[pyfunction]
#[pyo3(signature = (dim, lengths, policy = None))]
fn e3_continued(
    dim: f64,
    lengths: Vec<f64>,
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<Series> {
    series(ls::e3_continued(dim, &lengths, &self::policy(policy)))
}

#[pyfunction]
#[pyo3(signature = (eta, lengths, policy = None))]
fn w_d(eta: f64, lengths: Vec<f64>, policy: Option<PyRef<'_, Policy>>) -> PyResult<Series> {
    series(ls::w_d(eta, &lengths, &self::policy(policy)))
}

#[pyfunction]
fn c1_constant() -> f64 {
    crit::c1_constant()
}

#[pyfunction]
#[pyo3(signature = (policy = None))]
fn c2_constant(policy: Option<PyRef<'_, Policy>>) -> PyResult<Series> {
    series(crit::c2_constant(&self::policy(policy)))
}

#[pyfunction]
#[pyo3(signature = (policy = None))]
fn c3_constant(policy: Option<PyRef<'_, Policy>>) -> PyResult<Series> {
    series(crit::c3_constant(&self::policy(policy)))
}

#[pyfunction]
fn tc_film(g: PyRef<'_, Params>, thickness: f64) -> PyResult<Critical> {
    critical(crit::tc_film(&g.0, thickness))
}

#[pyfunction]
#[pyo3(signature = (g, area, policy = None))]
fn tc_wire_square(
    g: PyRef<'_, Params>,
    area: f64,
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<Critical> {
    critical(crit::tc_wire_square(&g.0, area, &self::policy(policy)))
}

#[pyfunction]
#[pyo3(signature = (g, volume, policy = None))]
fn tc_grain_cubic(
    g: PyRef<'_, Params>,
    volume: f64,
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<Critical> {
    critical(crit::tc_grain_cubic(&g.0, volume, &self::policy(policy)))
}

#[pyfunction]
#[pyo3(signature = (g, l1, l2, policy = None))]
fn tc_wire_general(
    g: PyRef<'_, Params>,
    l1: f64,
    l2: f64,
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<Critical> {
    critical(crit::tc_wire_general(&g.0, l1, l2, &self::policy(policy)))
}

#[pyfunction]
#[pyo3(signature = (g, edges, policy = None))]
fn tc_grain_general(
    g: PyRef<'_, Params>,
    edges: [f64; 3],
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<Critical> {
    critical(crit::tc_grain_general(&g.0, edges, &self::policy(policy)))
}

/// Solves the mass equation in `dim` dimensions with the given
/// compactified lengths.
#[pyfunction]
#[pyo3(signature = (dim, lengths, m0_sq, coupling, tol = 1e-12, policy = None))]
fn solve_gap(
    dim: f64,
    lengths: Vec<f64>,
    m0_sq: f64,
    coupling: f64,
    tol: f64,
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<Gap> {
    let p = gp::GapProblem::new(dim, lengths, m0_sq, coupling).map_err(to_py)?;
    let s = gp::solve_gap(&p, &self::policy(policy), tol).map_err(to_py)?;
    Ok(Gap {
        m_sq: s.m_sq,
        residual: s.residual,
        iterations: s.iterations,
    })
}

/// `(limit, residual_coarse, residual_fine)` of the pole-free wire bracket.
#[pyfunction]
#[pyo3(signature = (l1, l2, policy = None))]
fn pole_cancellation(
    l1: f64,
    l2: f64,
    policy: Option<PyRef<'_, Policy>>,
) -> PyResult<(f64, f64, f64)> {
    let pc = crit::extrapolate_pole_cancellation(l1, l2, &self::policy(policy)).map_err(to_py)?;
    Ok((pc.limit, pc.residual_coarse, pc.residual_fine))
}

/// Runs the built-in checks; returns `(name, passed, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (policy = None))]
fn run_checks(policy: Option<PyRef<'_, Policy>>) -> Vec<(String, bool, String)> {
    verify::run_all(Ok(self::policy(policy)))
        .into_iter()
        .map(|c| (c.name.to_string(), c.passed, c.detail))
        .collect()
}

#[pymodule]
fn ccrit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Policy>()?;
    m.add_class::<Series>()?;
    m.add_class::<Params>()?;
    m.add_class::<Critical>()?;
    m.add_class::<Gap>()?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(a_d_direct, m)?)?;
    m.add_function(wrap_pyfunction!(a_d_bessel, m)?)?;
    m.add_function(wrap_pyfunction!(epstein_direct, m)?)?;
    m.add_function(wrap_pyfunction!(epstein_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(e2_continued, m)?)?;
    m.add_function(wrap_pyfunction!(e3_continued, m)?)?;
    m.add_function(wrap_pyfunction!(w_d, m)?)?;
    m.add_function(wrap_pyfunction!(c1_constant, m)?)?;
    m.add_function(wrap_pyfunction!(c2_constant, m)?)?;
    m.add_function(wrap_pyfunction!(c3_constant, m)?)?;
    m.add_function(wrap_pyfunction!(tc_film, m)?)?;
    m.add_function(wrap_pyfunction!(tc_wire_square, m)?)?;
    m.add_function(wrap_pyfunction!(tc_grain_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(tc_wire_general, m)?)?;
    m.add_function(wrap_pyfunction!(tc_grain_general, m)?)?;
    m.add_function(wrap_pyfunction!(solve_gap, m)?)?;
    m.add_function(wrap_pyfunction!(pole_cancellation, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}
