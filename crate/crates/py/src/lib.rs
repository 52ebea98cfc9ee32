//! Python bindings: group elements, exact AKS solutions, trajectories and the
//! verification suites.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use tduality::aks;
use tduality::groups;
use tduality::oracle::{self, Method, PhasePoint, SystemId, Trajectory};
use tduality::phase::{self, R2Params, R2Pt, TBPt, TSU2Pt};
use tduality::verify::{self, Suite};
use tduality::{BCov, BEl, Mat2C, SU2El, Su2Cov, Su2Vec};

type Matrix = [[Complex64; 2]; 2];

fn value_error(e: tduality::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rows(m: &Mat2C) -> Matrix {
    [[m.m11, m.m12], [m.m21, m.m22]]
}

fn from_rows(m: Matrix) -> Mat2C {
    Mat2C::new(m[0][0], m[0][1], m[1][0], m[1][1])
}

/// Element `[[i a3, a2 + i a1], [-a2 + i a1, -i a3]]` of su(2).
#[pyclass(name = "Su2Vec", module = "tduality", frozen, from_py_object)]
#[derive(Clone)]
pub struct PySu2Vec(Su2Vec);

#[pymethods]
impl PySu2Vec {
    #[new]
    fn new(a1: f64, a2: f64, a3: f64) -> Self {
        Self(Su2Vec::new(a1, a2, a3))
    }

    /// `cos θ X1 + sin θ X2`.
    #[staticmethod]
    fn x_theta(theta: f64) -> Self {
        Self(Su2Vec::x_theta(theta))
    }

    #[getter]
    fn a1(&self) -> f64 {
        self.0.a1
    }

    #[getter]
    fn a2(&self) -> f64 {
        self.0.a2
    }

    #[getter]
    fn a3(&self) -> f64 {
        self.0.a3
    }

    fn det(&self) -> f64 {
        self.0.det()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn bracket(&self, other: &PySu2Vec) -> Self {
        Self(self.0.bracket(&other.0))
    }

    fn to_matrix(&self) -> Matrix {
        to_rows(&self.0.to_matrix())
    }

    fn to_list(&self) -> [f64; 3] {
        self.0.to_array()
    }

    /// `(θ, x, z)` with `X = x X_θ + z X3` and `x > 0`, or `None` on the X3 axis.
    fn orbit_coords(&self) -> Option<(f64, f64, f64)> {
        phase::orbit_coords(&self.0).map(|o| (o.theta, o.x, o.z))
    }

    fn __repr__(&self) -> String {
        format!("Su2Vec({}, {}, {})", self.0.a1, self.0.a2, self.0.a3)
    }

    fn __eq__(&self, other: &PySu2Vec) -> bool {
        self.0 == other.0
    }
}

/// Upper triangular `[[a, b + i c], [0, 1/a]]` with `a > 0`.
#[pyclass(name = "BEl", module = "tduality", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyBEl(BEl);

#[pymethods]
impl PyBEl {
    #[new]
    fn new(a: f64, b: f64, c: f64) -> PyResult<Self> {
        BEl::new(a, b, c).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn identity() -> Self {
        Self(BEl::identity())
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b
    }

    #[getter]
    fn c(&self) -> f64 {
        self.0.c
    }

    fn to_matrix(&self) -> Matrix {
        to_rows(&self.0.to_matrix())
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    /// Coadjoint action on su(2) ≅ b*.
    fn coadjoint(&self, x: &PySu2Vec) -> PySu2Vec {
        PySu2Vec(groups::coadjoint_b_on_su2(&self.0, &x.0))
    }

    fn __mul__(&self, other: &PyBEl) -> Self {
        Self(self.0 * other.0)
    }

    fn __repr__(&self) -> String {
        format!("BEl({}, {}, {})", self.0.a, self.0.b, self.0.c)
    }
}

/// `[[α, β], [-conj β, conj α]]` with `|α|² + |β|² = 1`.
#[pyclass(name = "SU2El", module = "tduality", frozen, from_py_object)]
#[derive(Clone)]
pub struct PySU2El(SU2El);

#[pymethods]
impl PySU2El {
    #[new]
    fn new(alpha: Complex64, beta: Complex64) -> PyResult<Self> {
        SU2El::new(alpha, beta).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn identity() -> Self {
        Self(SU2El::identity())
    }

    #[getter]
    fn alpha(&self) -> Complex64 {
        self.0.alpha
    }

    #[getter]
    fn beta(&self) -> Complex64 {
        self.0.beta
    }

    fn to_matrix(&self) -> Matrix {
        to_rows(&self.0.to_matrix())
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    /// Dressing action of `b`: the SU(2) factor of `b·g`.
    fn dressed_by(&self, b: &PyBEl) -> Self {
        Self(groups::dressing_pair(&b.0, &self.0).0)
    }

    fn __mul__(&self, other: &PySU2El) -> Self {
        Self(self.0 * other.0)
    }

    fn __repr__(&self) -> String {
        format!("SU2El({}, {})", self.0.alpha, self.0.beta)
    }
}

/// One of the dual systems, or the coadjoint orbit they share.
#[pyclass(name = "System", module = "tduality", frozen, from_py_object)]
#[derive(Clone)]
pub struct PySystem(SystemId);

#[pymethods]
impl PySystem {
    /// The line with `μ = 1/2`, `ε = √2`, `θ = 0`.
    #[staticmethod]
    fn toda() -> Self {
        Self(SystemId::R2(R2Params::toda()))
    }

    #[staticmethod]
    #[pyo3(signature = (mu, eps, theta = 0.0))]
    fn r2(mu: f64, eps: f64, theta: f64) -> PyResult<Self> {
        Ok(Self(SystemId::R2(R2Params::new(mu, eps, theta).map_err(value_error)?)))
    }

    #[staticmethod]
    fn tb() -> Self {
        Self(SystemId::TB)
    }

    #[staticmethod]
    fn tsu2(theta: f64) -> Self {
        Self(SystemId::TSU2 { theta })
    }

    #[staticmethod]
    #[pyo3(signature = (theta = 0.0))]
    fn orbit(theta: f64) -> Self {
        Self(SystemId::Orbit { theta })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.0.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Momentum image of a flat state.
    fn momentum(&self, state: Vec<f64>) -> PyResult<PySu2Vec> {
        let pt = PhasePoint::from_coords(&self.0, &state).map_err(value_error)?;
        oracle::momentum_image(&self.0, &pt).map(PySu2Vec).map_err(value_error)
    }

    /// The Hamiltonian vector field at a flat state.
    fn vector_field(&self, state: Vec<f64>) -> PyResult<Vec<f64>> {
        let pt = PhasePoint::from_coords(&self.0, &state).map_err(value_error)?;
        oracle::vector_field(&self.0, &pt).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("System({:?})", self.0)
    }
}

/// Sampled solution of a system.
#[pyclass(name = "Trajectory", module = "tduality", frozen)]
pub struct PyTrajectory(Trajectory);

#[pymethods]
impl PyTrajectory {
    #[getter]
    fn method(&self) -> &'static str {
        match self.0.method {
            Method::Exact => "exact",
            Method::Rk4 => "rk4",
        }
    }

    #[getter]
    fn times(&self) -> Vec<f64> {
        self.0.samples.iter().map(|s| s.t).collect()
    }

    /// Flat state coordinates per sample.
    #[getter]
    fn states(&self) -> Vec<Vec<f64>> {
        self.0.samples.iter().map(|s| s.state.coords()).collect()
    }

    #[getter]
    fn momentum(&self) -> Vec<[f64; 3]> {
        self.0.samples.iter().map(|s| s.momentum_image.to_array()).collect()
    }

    #[getter]
    fn energy(&self) -> Vec<f64> {
        self.0.samples.iter().map(|s| s.energy).collect()
    }

    fn __len__(&self) -> usize {
        self.0.samples.len()
    }

    /// Centered-difference residuals of the samples.
    fn residual_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = oracle::residual_report(&self.0, &self.0.system).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("samples", r.samples)?;
        d.set_item("step", r.step)?;
        d.set_item("max_hamilton_residual", r.max_hamilton_residual)?;
        d.set_item("max_energy_drift", r.max_energy_drift)?;
        d.set_item("max_equivariance_defect", r.max_equivariance_defect)?;
        d.set_item("max_lax_residual", r.max_lax_residual)?;
        d.set_item("max_b_factor_residual", r.max_b_factor_residual)?;
        Ok(d)
    }
}

/// `m = g·b` for a 2x2 complex matrix of determinant 1.
#[pyfunction]
fn iwasawa_factorize(m: Matrix) -> PyResult<(PySU2El, PyBEl)> {
    let (g, b) = groups::iwasawa_factorize(&from_rows(m)).map_err(value_error)?;
    Ok((PySU2El(g), PyBEl(b)))
}

/// `exp t L(X)` in closed form.
#[pyfunction]
fn exp_curve(x: &PySu2Vec, t: f64) -> Matrix {
    to_rows(&aks::exp_curve(&x.0, t))
}

/// Closed-form factors of `exp t L(X)` for `det X = 1`.
#[pyfunction]
fn aks_factors(x: &PySu2Vec, t: f64) -> PyResult<(PySU2El, PyBEl)> {
    let (g, b) = aks::aks_factors(&x.0, t).map_err(value_error)?;
    Ok((PySU2El(g), PyBEl(b)))
}

/// Factors of `exp t L(X)` through the Iwasawa factorization.
#[pyfunction]
fn aks_factors_generic(x: &PySu2Vec, t: f64) -> (PySU2El, PyBEl) {
    let (g, b) = aks::aks_factors_generic(&x.0, t);
    (PySU2El(g), PyBEl(b))
}

#[pyfunction]
fn orbit_curve(x0: &PySu2Vec, t: f64) -> PyResult<PySu2Vec> {
    aks::orbit_curve(&x0.0, t).map(PySu2Vec).map_err(value_error)
}

/// Exact `(q, p)` at time `t` on the line.
#[pyfunction]
#[pyo3(signature = (q0, p0, t, mu = 0.5, eps = std::f64::consts::SQRT_2, theta = 0.0))]
fn solve_r2(q0: f64, p0: f64, t: f64, mu: f64, eps: f64, theta: f64) -> PyResult<(f64, f64)> {
    let params = R2Params::new(mu, eps, theta).map_err(value_error)?;
    let pt = aks::solve_r2(&params, q0, p0, t).map_err(value_error)?;
    Ok((pt.q, pt.p))
}

/// Exact point of T*B at time `t`; `eta` holds the E, iE, H components.
#[pyfunction]
fn solve_tb(bel: &PyBEl, eta: [f64; 3], t: f64) -> PyResult<(PyBEl, [f64; 3])> {
    let pt = aks::solve_tb(&TBPt { bel: bel.0, eta: BCov::new(eta[0], eta[1], eta[2]) }, t).map_err(value_error)?;
    Ok((PyBEl(pt.bel), [pt.eta.ce, pt.eta.cet, pt.eta.ch]))
}

/// Exact point of T*SU(2) at time `t`; `eta` holds the X1, X2, X3 components.
#[pyfunction]
fn solve_tsu2(g: &PySU2El, eta: [f64; 3], t: f64) -> PyResult<(PySU2El, [f64; 3])> {
    let pt = aks::solve_tsu2(&TSU2Pt { g: g.0, eta: Su2Cov::new(eta[0], eta[1], eta[2]) }, t).map_err(value_error)?;
    Ok((PySU2El(pt.g), [pt.eta.c1, pt.eta.c2, pt.eta.c3]))
}

#[pyfunction]
#[pyo3(signature = (q, p, mu = 0.5, eps = std::f64::consts::SQRT_2, theta = 0.0))]
fn momentum_r2(q: f64, p: f64, mu: f64, eps: f64, theta: f64) -> PyResult<PySu2Vec> {
    let params = R2Params::new(mu, eps, theta).map_err(value_error)?;
    Ok(PySu2Vec(phase::momentum_r2(&params, &R2Pt::new(q, p))))
}

#[pyfunction]
fn momentum_tb(bel: &PyBEl, eta: [f64; 3]) -> PySu2Vec {
    PySu2Vec(phase::momentum_tb(&TBPt { bel: bel.0, eta: BCov::new(eta[0], eta[1], eta[2]) }))
}

#[pyfunction]
fn momentum_tsu2(g: &PySU2El, eta: [f64; 3]) -> PySu2Vec {
    PySu2Vec(phase::momentum_tsu2(&TSU2Pt { g: g.0, eta: Su2Cov::new(eta[0], eta[1], eta[2]) }))
}

/// Samples the exact solution (`method="exact"`) or RK4 with steps of at most
/// `h` (`method="rk4"`) at the given times, measured from the initial state.
#[pyfunction]
#[pyo3(signature = (system, state, times, method = "exact", h = 1e-3))]
fn simulate(system: &PySystem, state: Vec<f64>, times: Vec<f64>, method: &str, h: f64) -> PyResult<PyTrajectory> {
    let pt = PhasePoint::from_coords(&system.0, &state).map_err(value_error)?;
    let traj = match method {
        "exact" => oracle::exact_trajectory(&system.0, &pt, &times),
        "rk4" => oracle::rk4_sampled(&system.0, &pt, &times, h),
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    };
    traj.map(PyTrajectory).map_err(value_error)
}

/// Runs the property suites (all when `suites` is None) and returns the
/// report as JSON.
#[pyfunction]
#[pyo3(signature = (suites = None, seed = 0, samples = None))]
fn run_verify(suites: Option<Vec<String>>, seed: u64, samples: Option<usize>) -> PyResult<String> {
    let suites = suites
        .unwrap_or_default()
        .iter()
        .map(|s| s.parse::<Suite>())
        .collect::<tduality::Result<Vec<_>>>()
        .map_err(value_error)?;
    let report = verify::run(&suites, seed, samples);
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Ratio of RK4 endpoint errors under step halving for the Toda example.
#[pyfunction]
fn rk4_order_ratio() -> PyResult<f64> {
    verify::rk4_order_ratio().map_err(value_error)
}

#[pymodule(name = "tduality")]
fn tduality_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySu2Vec>()?;
    m.add_class::<PyBEl>()?;
    m.add_class::<PySU2El>()?;
    m.add_class::<PySystem>()?;
    m.add_class::<PyTrajectory>()?;
    m.add_function(wrap_pyfunction!(iwasawa_factorize, m)?)?;
    m.add_function(wrap_pyfunction!(exp_curve, m)?)?;
    m.add_function(wrap_pyfunction!(aks_factors, m)?)?;
    m.add_function(wrap_pyfunction!(aks_factors_generic, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_curve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_r2, m)?)?;
    m.add_function(wrap_pyfunction!(solve_tb, m)?)?;
    m.add_function(wrap_pyfunction!(solve_tsu2, m)?)?;
    m.add_function(wrap_pyfunction!(momentum_r2, m)?)?;
    m.add_function(wrap_pyfunction!(momentum_tb, m)?)?;
    m.add_function(wrap_pyfunction!(momentum_tsu2, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(rk4_order_ratio, m)?)?;
    Ok(())
}
