//! Independent numerical checks: energies, canonical Hamilton vector fields
//! in left-trivialized coordinates, a fixed-step RK4 integrator, residual
//! meters for sampled trajectories, and the Lagrangians of the three systems.
//!
//! Every energy is `f(J) = ½ det J` of the momentum image `J`.

use serde::{Deserialize, Serialize};

use crate::aks::{b_generator, flow_orbit, flow_r2, flow_tb, flow_tsu2};
use crate::algebra::{
    kappa_hat_su2, pair_sl2, project_unchecked, psi_inv, psi_star, BAlgVec, BCov, Mat2C, Su2Cov, Su2Vec, C64,
};
use crate::error::{Error, Result};
use crate::groups::{coadjoint_b_on_su2, dressing_inf_gen, BEl, SU2El};
use crate::phase::{
    momentum_r2, momentum_tb, momentum_tsu2, on_leaf, orbit_coords, pi_hat_v0, tsu2_on_leaf, R2Params, R2Pt, TBPt,
    TSU2Pt, SPHERE_ORBIT_TOL,
};

/// `g⁻¹ġ = TSU2_FIELD_CONSTANT · g⁻¹ g^{ψ̄*(κ̂(J))}` along T*SU(2) solutions.
pub const TSU2_FIELD_CONSTANT: f64 = -0.125;

/// Coordinate norm at which integration is aborted.
pub const BLOWUP_NORM: f64 = 1e9;

/// Angular tolerance for the leaf of an orbit-system state.
const ORBIT_LEAF_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SystemId {
    R2(R2Params),
    TB,
    TSU2 { theta: f64 },
    Orbit { theta: f64 },
}

impl SystemId {
    pub fn name(&self) -> &'static str {
        match self {
            SystemId::R2(_) => "r2",
            SystemId::TB => "tb",
            SystemId::TSU2 { .. } => "tsu2",
            SystemId::Orbit { .. } => "orbit",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SystemId::R2(_) => 2,
            SystemId::TB => 6,
            SystemId::TSU2 { .. } => 7,
            SystemId::Orbit { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PhasePoint {
    R2(R2Pt),
    TB(TBPt),
    TSU2(TSU2Pt),
    Orbit(Su2Vec),
}

impl PhasePoint {
    /// Flat coordinates: `(q, p)`, `(a, b, c, η̃_e, η̃_ẽ, η̃_h)`,
    /// `(Re α, Im α, Re β, Im β, η1, η2, η3)` or `(a1, a2, a3)`.
    pub fn coords(&self) -> Vec<f64> {
        match self {
            PhasePoint::R2(p) => vec![p.q, p.p],
            PhasePoint::TB(p) => vec![p.bel.a, p.bel.b, p.bel.c, p.eta.ce, p.eta.cet, p.eta.ch],
            PhasePoint::TSU2(p) => vec![
                p.g.alpha.re,
                p.g.alpha.im,
                p.g.beta.re,
                p.g.beta.im,
                p.eta.c1,
                p.eta.c2,
                p.eta.c3,
            ],
            PhasePoint::Orbit(x) => x.to_array().to_vec(),
        }
    }

    pub fn from_coords(system: &SystemId, v: &[f64]) -> Result<Self> {
        if v.len() != system.dim() {
            return Err(Error::InvalidInput(format!(
                "{} state needs {} coordinates, got {}",
                system.name(),
                system.dim(),
                v.len()
            )));
        }
        Ok(match system {
            SystemId::R2(_) => PhasePoint::R2(R2Pt::new(v[0], v[1])),
            SystemId::TB => PhasePoint::TB(TBPt {
                bel: BEl::new_unchecked(v[0], v[1], v[2]),
                eta: BCov::new(v[3], v[4], v[5]),
            }),
            SystemId::TSU2 { .. } => PhasePoint::TSU2(TSU2Pt {
                g: SU2El::new_unchecked(C64::new(v[0], v[1]), C64::new(v[2], v[3])),
                eta: Su2Cov::new(v[4], v[5], v[6]),
            }),
            SystemId::Orbit { .. } => PhasePoint::Orbit(Su2Vec::new(v[0], v[1], v[2])),
        })
    }

    fn matches(&self, system: &SystemId) -> bool {
        matches!(
            (self, system),
            (PhasePoint::R2(_), SystemId::R2(_))
                | (PhasePoint::TB(_), SystemId::TB)
                | (PhasePoint::TSU2(_), SystemId::TSU2 { .. })
                | (PhasePoint::Orbit(_), SystemId::Orbit { .. })
        )
    }
}

fn ensure_matches(system: &SystemId, state: &PhasePoint) -> Result<()> {
    if state.matches(system) {
        Ok(())
    } else {
        Err(Error::SystemMismatch { expected: system.name() })
    }
}

/// Momentum image of a state in su(2) ≅ b*.
pub fn momentum_image(system: &SystemId, state: &PhasePoint) -> Result<Su2Vec> {
    ensure_matches(system, state)?;
    Ok(match (system, state) {
        (SystemId::R2(params), PhasePoint::R2(p)) => momentum_r2(params, p),
        (_, PhasePoint::TB(p)) => momentum_tb(p),
        (_, PhasePoint::TSU2(p)) => momentum_tsu2(p),
        (_, PhasePoint::Orbit(x)) => *x,
        _ => unreachable!(),
    })
}

/// `½ det J(state)`.
pub fn energy(system: &SystemId, state: &PhasePoint) -> Result<f64> {
    Ok(0.5 * momentum_image(system, state)?.det())
}

/// Checks the structural invariants of a state and the leaf it must lie on.
pub fn validate_state(system: &SystemId, state: &PhasePoint) -> Result<()> {
    ensure_matches(system, state)?;
    if !state.coords().iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite("state"));
    }
    match (system, state) {
        (SystemId::TB, PhasePoint::TB(p)) => {
            BEl::new(p.bel.a, p.bel.b, p.bel.c)?;
        }
        (SystemId::TSU2 { theta }, PhasePoint::TSU2(p)) => {
            SU2El::new(p.g.alpha, p.g.beta)?;
            let beta_abs = p.g.beta.norm();
            if beta_abs <= SPHERE_ORBIT_TOL {
                return Err(Error::DegenerateOrbit { beta_abs });
            }
            if !tsu2_on_leaf(p, *theta) {
                return Err(Error::OffLeaf {
                    theta: *theta,
                    detail: "T*SU(2) constraints are violated".into(),
                });
            }
        }
        (SystemId::Orbit { theta }, PhasePoint::Orbit(x))
            if orbit_coords(x).is_some() && !on_leaf(x, *theta, ORBIT_LEAF_TOL) =>
        {
            return Err(Error::OffLeaf { theta: *theta, detail: format!("point {x:?}") });
        }
        _ => {}
    }
    Ok(())
}

/// `δH ∈ b` on T*B, defined by `<ζ, δH> = dH(ζ)` for `ζ ∈ b*`.
pub fn tb_delta_h(pt: &TBPt) -> BAlgVec {
    let j = momentum_tb(pt);
    let along = |eta: BCov| j.dot(&coadjoint_b_on_su2(&pt.bel, &psi_inv(&eta)));
    BAlgVec::new(
        along(BCov::new(1.0, 0.0, 0.0)),
        along(BCov::new(0.0, 1.0, 0.0)),
        along(BCov::new(0.0, 0.0, 1.0)),
    )
}

/// `δH ∈ su(2)` on T*SU(2), defined by `<ζ, δH> = dH(ζ)` for `ζ ∈ su(2)*`.
pub fn tsu2_delta_h(pt: &TSU2Pt) -> Su2Vec {
    let j = momentum_tsu2(pt);
    let along = |eta: Su2Cov| j.dot(&momentum_tsu2(&TSU2Pt { g: pt.g, eta }));
    Su2Vec::new(
        along(Su2Cov::new(1.0, 0.0, 0.0)),
        along(Su2Cov::new(0.0, 1.0, 0.0)),
        along(Su2Cov::new(0.0, 0.0, 1.0)),
    )
}

/// `g⁻¹ġ` on T*SU(2) from the dressing generator of `ψ̄*(κ̂(J))`.
pub fn tsu2_body_velocity_dressing(pt: &TSU2Pt) -> Su2Vec {
    let z = psi_star(&kappa_hat_su2(&momentum_tsu2(pt)));
    dressing_inf_gen(&pt.g, &z) * TSU2_FIELD_CONSTANT
}

fn b_basis() -> [BAlgVec; 3] {
    [BAlgVec::E, BAlgVec::IE, BAlgVec::H]
}

fn su2_basis() -> [Su2Vec; 3] {
    [Su2Vec::X1, Su2Vec::X2, Su2Vec::X3]
}

fn tb_field(pt: &TBPt) -> Vec<f64> {
    let xi = tb_delta_h(pt);
    let bdot = pt.bel.to_matrix() * xi.to_matrix();
    let j = momentum_tb(pt);
    let x = psi_inv(&pt.eta);
    let xi_m = xi.to_matrix();
    let eta_dot: Vec<f64> = b_basis()
        .iter()
        .map(|y| {
            let y_m = y.to_matrix();
            let ad = pt.eta.pair(&BAlgVec::from_matrix_unchecked(&xi_m.commutator(&y_m)));
            let moved = project_unchecked(&y_m.commutator(&x.to_matrix())).0;
            ad - j.dot(&coadjoint_b_on_su2(&pt.bel, &moved))
        })
        .collect();
    vec![bdot.m11.re, bdot.m12.re, bdot.m12.im, eta_dot[0], eta_dot[1], eta_dot[2]]
}

fn tsu2_field(pt: &TSU2Pt) -> Vec<f64> {
    let y = tsu2_delta_h(pt);
    let gdot = pt.g.to_matrix() * y.to_matrix();
    let j = momentum_tsu2(pt);
    let g = pt.g.to_matrix();
    let g_inv = pt.g.inverse().to_matrix();
    let p = psi_star(&pt.eta).to_matrix();
    let eta_dot: Vec<f64> = su2_basis()
        .iter()
        .map(|x| {
            let ad = pt.eta.pair(&y.bracket(x));
            let moved = project_unchecked(&(g * x.to_matrix().commutator(&p) * g_inv)).0;
            ad - j.dot(&moved)
        })
        .collect();
    vec![
        gdot.m11.re,
        gdot.m11.im,
        gdot.m12.re,
        gdot.m12.im,
        eta_dot[0],
        eta_dot[1],
        eta_dot[2],
    ]
}

/// `γ̇ = [Π_b L̃_f(γ), γ]`, which for `f = ½ det` is `(a1 a3, a2 a3, -(a1² + a2²))`.
pub fn orbit_field(x: &Su2Vec) -> Su2Vec {
    let m = b_generator(x).to_matrix().commutator(&x.to_matrix());
    project_unchecked(&m).0
}

/// Lie–Poisson vector field on su(2) ≅ b* of a function with gradient `grad`:
/// `V_g = ∂₃g (x1 ∂₁ + x2 ∂₂) - (x1 ∂₁g + x2 ∂₂g) ∂₃`.
pub fn lie_poisson_field(x: &Su2Vec, grad: &Su2Vec) -> Su2Vec {
    Su2Vec::new(grad.a3 * x.a1, grad.a3 * x.a2, -(x.a1 * grad.a1 + x.a2 * grad.a2))
}

/// Fields of the coordinate functions written as `X_{x1} = x1 X3`,
/// `X_{x2} = x2 X3`, `X_{x3} = -x1 X1 - x2 X2`.
pub fn coordinate_fields(x: &Su2Vec) -> [Su2Vec; 3] {
    [Su2Vec::X3 * x.a1, Su2Vec::X3 * x.a2, -(Su2Vec::X1 * x.a1 + Su2Vec::X2 * x.a2)]
}

/// `orbit_field(x) = COORDINATE_FIELD_SIGN · Σ ∂ₖh X_{xₖ}` for `h = ½|x|²`.
pub const COORDINATE_FIELD_SIGN: f64 = -1.0;

/// Canonical Hamilton equations in flat coordinates.
pub fn vector_field(system: &SystemId, state: &PhasePoint) -> Result<Vec<f64>> {
    ensure_matches(system, state)?;
    Ok(match (system, state) {
        (SystemId::R2(params), PhasePoint::R2(p)) => {
            let (mu, eps) = (params.mu, params.eps);
            vec![p.p / (4.0 * mu * mu), -2.0 * mu * eps * eps * (4.0 * mu * p.q).exp()]
        }
        (_, PhasePoint::TB(p)) => tb_field(p),
        (_, PhasePoint::TSU2(p)) => {
            let beta_abs = p.g.beta.norm();
            if beta_abs <= SPHERE_ORBIT_TOL {
                return Err(Error::DegenerateOrbit { beta_abs });
            }
            tsu2_field(p)
        }
        (_, PhasePoint::Orbit(x)) => orbit_field(x).to_array().to_vec(),
        _ => unreachable!(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub state: PhasePoint,
    pub momentum_image: Su2Vec,
    pub energy: f64,
}

impl Sample {
    pub fn new(system: &SystemId, t: f64, state: PhasePoint) -> Result<Self> {
        let momentum_image = momentum_image(system, &state)?;
        Ok(Self { t, state, momentum_image, energy: 0.5 * momentum_image.det() })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub system: SystemId,
    pub method: Method,
    pub step: f64,
    /// Largest correction applied when projecting back onto the group.
    pub projection_shift: f64,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn endpoint(&self) -> &Sample {
        self.samples.last().expect("trajectories are never empty")
    }
}

/// `n + 1` equally spaced times from `t0` to `t1`.
pub fn uniform_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n).map(|i| t0 + (t1 - t0) * (i as f64) / (n as f64)).collect()
}

/// Exact AKS solution sampled at the given times (measured from `state0`).
pub fn exact_trajectory(system: &SystemId, state0: &PhasePoint, times: &[f64]) -> Result<Trajectory> {
    validate_state(system, state0)?;
    let samples = times
        .iter()
        .map(|&t| Sample::new(system, t, exact_state(system, state0, t)?))
        .collect::<Result<Vec<_>>>()?;
    let step = if times.len() > 1 { times[1] - times[0] } else { 0.0 };
    Ok(Trajectory { system: *system, method: Method::Exact, step, projection_shift: 0.0, samples })
}

/// The exact flow for any nonzero momentum image.
pub fn exact_state(system: &SystemId, state0: &PhasePoint, t: f64) -> Result<PhasePoint> {
    ensure_matches(system, state0)?;
    Ok(match (system, state0) {
        (SystemId::R2(params), PhasePoint::R2(p)) => PhasePoint::R2(flow_r2(params, p, t)?),
        (_, PhasePoint::TB(p)) => PhasePoint::TB(flow_tb(p, t)?),
        (_, PhasePoint::TSU2(p)) => PhasePoint::TSU2(flow_tsu2(p, t)?),
        (_, PhasePoint::Orbit(x)) => PhasePoint::Orbit(flow_orbit(x, t)?),
        _ => unreachable!(),
    })
}

fn axpy(x: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    x.iter().zip(k).map(|(x, k)| x + a * k).collect()
}

fn rk4_step(system: &SystemId, y: &[f64], h: f64) -> Result<Vec<f64>> {
    let f = |v: &[f64]| vector_field(system, &PhasePoint::from_coords(system, v)?);
    let k1 = f(y)?;
    let k2 = f(&axpy(y, 0.5 * h, &k1))?;
    let k3 = f(&axpy(y, 0.5 * h, &k2))?;
    let k4 = f(&axpy(y, h, &k3))?;
    Ok((0..y.len())
        .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Projects group components back onto their manifold; returns the displacement.
fn project_to_group(system: &SystemId, y: &mut [f64], t: f64) -> Result<f64> {
    match system {
        SystemId::TSU2 { .. } => {
            let g = SU2El::new_unchecked(C64::new(y[0], y[1]), C64::new(y[2], y[3]));
            let (g, shift) = g.renormalized();
            y[..4].copy_from_slice(&[g.alpha.re, g.alpha.im, g.beta.re, g.beta.im]);
            Ok(shift)
        }
        SystemId::TB if !(y[0] > 0.0) => Err(Error::BlowUp { t, norm: y[0].abs() }),
        _ => Ok(0.0),
    }
}

fn check_blowup(y: &[f64], t: f64) -> Result<()> {
    let norm = y.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || norm > BLOWUP_NORM {
        return Err(Error::BlowUp { t, norm });
    }
    Ok(())
}

/// Number of steps of length at most `h` covering `span`, ignoring rounding
/// noise in `span / h`.
fn substeps(span: f64, h: f64) -> usize {
    (span.abs() / h * (1.0 - 1e-12)).ceil() as usize
}

/// RK4 from `times[0] = 0` through each of the (monotone) sample times, with
/// substeps no longer than `h`.
pub fn rk4_sampled(system: &SystemId, state0: &PhasePoint, times: &[f64], h: f64) -> Result<Trajectory> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::NonPositive { name: "h", value: h });
    }
    validate_state(system, state0)?;
    let mut y = state0.coords();
    let mut t_prev = 0.0;
    let mut shift: f64 = 0.0;
    let mut samples = Vec::with_capacity(times.len());
    for &t in times {
        let span = t - t_prev;
        let n = substeps(span, h);
        let dt = if n == 0 { 0.0 } else { span / n as f64 };
        for k in 0..n {
            y = rk4_step(system, &y, dt)?;
            let tk = t_prev + dt * (k + 1) as f64;
            shift = shift.max(project_to_group(system, &mut y, tk)?);
            check_blowup(&y, tk)?;
        }
        samples.push(Sample::new(system, t, PhasePoint::from_coords(system, &y)?)?);
        t_prev = t;
    }
    let step = if times.len() > 1 { times[1] - times[0] } else { 0.0 };
    Ok(Trajectory { system: *system, method: Method::Rk4, step, projection_shift: shift, samples })
}

/// Classical fixed-step RK4 from 0 to `t_end`; every step is recorded and the
/// samples are ordered by increasing `t` also when `t_end < 0`.
pub fn rk4_integrate(system: &SystemId, state0: &PhasePoint, t_end: f64, h: f64) -> Result<Trajectory> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::NonPositive { name: "h", value: h });
    }
    if t_end == 0.0 || !t_end.is_finite() {
        return Err(Error::InvalidInput("t_end must be finite and nonzero".into()));
    }
    let n = substeps(t_end, h);
    let times = uniform_grid(0.0, t_end, n);
    let mut traj = rk4_sampled(system, state0, &times, h)?;
    if t_end < 0.0 {
        traj.samples.reverse();
    }
    traj.step = t_end.abs() / n as f64;
    Ok(traj)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub samples: usize,
    pub step: f64,
    pub max_hamilton_residual: f64,
    pub hamilton_worst_index: usize,
    pub max_energy_drift: f64,
    pub energy_worst_index: usize,
    pub max_equivariance_defect: f64,
    pub max_lax_residual: f64,
    /// `‖ḃ b⁻¹ - Π_b L̃_f(γ)‖` for T*B trajectories, whose states carry `b̃(t)`.
    pub max_b_factor_residual: Option<f64>,
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Centered-difference residuals of a uniformly sampled trajectory.
pub fn residual_report(traj: &Trajectory, system: &SystemId) -> Result<ResidualReport> {
    let s = &traj.samples;
    if s.len() < 3 {
        return Err(Error::InvalidInput(format!("residual report needs at least 3 samples, got {}", s.len())));
    }
    let dt = s[1].t - s[0].t;
    if !(dt > 0.0) {
        return Err(Error::NonUniformGrid { index: 1 });
    }
    for i in 2..s.len() {
        let d = s[i].t - s[i - 1].t;
        if (d - dt).abs() > 1e-9 * dt.max(1.0) {
            return Err(Error::NonUniformGrid { index: i });
        }
    }
    for sample in s {
        ensure_matches(system, &sample.state)?;
    }

    let coords: Vec<Vec<f64>> = s.iter().map(|x| x.state.coords()).collect();
    let mut report = ResidualReport {
        samples: s.len(),
        step: dt,
        max_hamilton_residual: 0.0,
        hamilton_worst_index: 0,
        max_energy_drift: 0.0,
        energy_worst_index: 0,
        max_equivariance_defect: 0.0,
        max_lax_residual: 0.0,
        max_b_factor_residual: None,
    };
    let j0 = s[0].momentum_image;
    for (i, sample) in s.iter().enumerate() {
        let drift = (sample.energy - s[0].energy).abs();
        if drift > report.max_energy_drift {
            report.max_energy_drift = drift;
            report.energy_worst_index = i;
        }
        let expected = flow_orbit(&j0, sample.t - s[0].t)?;
        report.max_equivariance_defect = report.max_equivariance_defect.max(sample.momentum_image.max_abs_diff(&expected));
    }
    let mut b_res: f64 = 0.0;
    for i in 1..s.len() - 1 {
        let fd: Vec<f64> = (0..coords[i].len())
            .map(|k| (coords[i + 1][k] - coords[i - 1][k]) / (2.0 * dt))
            .collect();
        let residual = max_diff(&fd, &vector_field(system, &s[i].state)?);
        if residual > report.max_hamilton_residual {
            report.max_hamilton_residual = residual;
            report.hamilton_worst_index = i;
        }
        let jd = (s[i + 1].momentum_image - s[i - 1].momentum_image) * (0.5 / dt);
        report.max_lax_residual = report.max_lax_residual.max(jd.max_abs_diff(&orbit_field(&s[i].momentum_image)));
        if let (PhasePoint::TB(prev), PhasePoint::TB(cur), PhasePoint::TB(next)) =
            (&s[i - 1].state, &s[i].state, &s[i + 1].state)
        {
            let bdot = (next.bel.to_matrix() - prev.bel.to_matrix()).scale_re(0.5 / dt);
            let gen = BAlgVec::from_matrix_unchecked(&(bdot * cur.bel.inverse().to_matrix()));
            b_res = b_res.max(gen.max_abs_diff(&b_generator(&s[i].momentum_image)));
        }
    }
    if matches!(system, SystemId::TB) {
        report.max_b_factor_residual = Some(b_res);
    }
    Ok(report)
}

/// `L = 2μ² q̇² - ½ ε² exp(4μq)`; at `μ = ½, ε² = 2` this is `½q̇² - exp(2q)`.
pub fn lagrangian_r2(params: &R2Params, q: f64, qdot: f64) -> f64 {
    let mu = params.mu;
    2.0 * mu * mu * qdot * qdot - 0.5 * params.eps * params.eps * (4.0 * mu * q).exp()
}

/// Coordinate form `½(bȧ - aḃ)² + ½(cȧ - aċ)² + 2(ȧ/a)²`.
pub fn lagrangian_tb(bel: &BEl, vel: &BEl) -> f64 {
    let (a, b, c) = (bel.a, bel.b, bel.c);
    let (ad, bd, cd) = (vel.a, vel.b, vel.c);
    0.5 * (b * ad - a * bd).powi(2) + 0.5 * (c * ad - a * cd).powi(2) + 2.0 * (ad / a).powi(2)
}

/// The map 𝕂: b → su(2), `E ↦ X1/8`, `iE ↦ -X2/8`, `H ↦ X3/4`.
pub fn k_map(z: &BAlgVec) -> Su2Vec {
    Su2Vec::new(0.125 * z.u, -0.125 * z.v, 0.25 * z.w)
}

/// `ḃ b⁻¹` for a tangent vector with coordinates `vel = (ȧ, ḃ, ċ)` at `bel`.
pub fn right_velocity(bel: &BEl, vel: &BEl) -> BAlgVec {
    let bdot = Mat2C::new(C64::new(vel.a, 0.0), vel.upper(), C64::new(0.0, 0.0), C64::new(-vel.a / (bel.a * bel.a), 0.0));
    BAlgVec::from_matrix_unchecked(&(bdot * bel.inverse().to_matrix()))
}

/// Top form `-4 (𝕂 ḃb⁻¹, ḃb⁻¹)`.
pub fn lagrangian_tb_top(bel: &BEl, vel: &BEl) -> f64 {
    let z = right_velocity(bel, vel);
    let pairing = pair_sl2(&k_map(&z).to_matrix(), &z.to_matrix()).expect("both factors are traceless");
    -4.0 * pairing
}

/// `|Y|²/(2|β|²) + η3 <π̂, Y>` for the body velocity `Y = g⁻¹ġ`.
pub fn lagrangian_tsu2(g: &SU2El, body_velocity: &Su2Vec, eta3: f64) -> Result<f64> {
    let (pi_hat, _) = pi_hat_v0(g)?;
    Ok(body_velocity.dot(body_velocity) / (2.0 * g.beta.norm_sqr()) + eta3 * pi_hat.pair(body_velocity))
}
