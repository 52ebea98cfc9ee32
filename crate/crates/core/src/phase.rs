//! The three Hamiltonian B-spaces ℝ², T*B and T*SU(2), their B-actions and
//! equivariant momentum maps into su(2) ≅ b*, plus the description of the
//! symplectic leaves `O_θ` they are fibred over.
//!
//! All momentum maps satisfy `J(act(b̃, m)) = coadjoint_b_on_su2(b̃, J(m))`.

use serde::{Deserialize, Serialize};

use crate::algebra::{project_unchecked, psi_inv, psi_star, psi_star_inv, BAlgVec, BCov, Su2Cov, Su2Vec, C64};
use crate::error::{Error, Result};
use crate::groups::{angle_distance, coadjoint_b_on_su2, dressing_pair, normalize_angle, BEl, SU2El};

/// `|Re c| < MEMBERSHIP_TOL` for the first leaf constraint on T*SU(2).
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Squared distance to the X3 axis below which a point is a zero-dimensional leaf.
const AXIS_TOL_SQ: f64 = 1e-24;

/// Minimum `|β|` for the annihilator data of a dressing orbit.
pub const SPHERE_ORBIT_TOL: f64 = 1e-10;

/// Parameters `(μ, ε, θ)` of the ℝ² B-space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct R2Params {
    pub mu: f64,
    pub eps: f64,
    pub theta: f64,
}

impl R2Params {
    pub fn new(mu: f64, eps: f64, theta: f64) -> Result<Self> {
        if !(mu.is_finite() && eps.is_finite() && theta.is_finite()) {
            return Err(Error::NonFinite("R2 parameters"));
        }
        if mu <= 0.0 {
            return Err(Error::NonPositive { name: "mu", value: mu });
        }
        Ok(Self { mu, eps, theta })
    }

    /// `μ = 1/2`, `ε = √2`, `θ = 0`: the collective Hamiltonian is
    /// `p²/2 + exp(2q)`.
    pub fn toda() -> Self {
        Self { mu: 0.5, eps: std::f64::consts::SQRT_2, theta: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct R2Pt {
    pub q: f64,
    pub p: f64,
}

impl R2Pt {
    pub const fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }
}

/// A point of T*B = B × b* (left trivialized).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TBPt {
    pub bel: BEl,
    pub eta: BCov,
}

/// A point of T*SU(2) = SU(2) × su(2)* (left trivialized).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TSU2Pt {
    pub g: SU2El,
    pub eta: Su2Cov,
}

/// Coordinates `x X_θ + z X3`, `x > 0`, on a two-dimensional leaf.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitPt {
    pub theta: f64,
    pub x: f64,
    pub z: f64,
}

impl OrbitPt {
    pub fn to_su2vec(&self) -> Su2Vec {
        Su2Vec::x_theta(self.theta) * self.x + Su2Vec::X3 * self.z
    }
}

pub fn momentum_r2(params: &R2Params, pt: &R2Pt) -> Su2Vec {
    let radial = -params.eps * (2.0 * params.mu * pt.q).exp();
    Su2Vec::x_theta(params.theta) * radial + Su2Vec::X3 * (pt.p / (2.0 * params.mu))
}

/// Inverse of [`momentum_r2`] on its image.
pub fn r2_from_momentum(params: &R2Params, x: &Su2Vec) -> Result<R2Pt> {
    if params.eps == 0.0 {
        return Err(Error::InvalidInput("eps = 0 embeds R² onto the X3 axis".into()));
    }
    let dir = Su2Vec::x_theta(params.theta);
    let radial = x.a1 * dir.a1 + x.a2 * dir.a2;
    let transverse = -x.a1 * dir.a2 + x.a2 * dir.a1;
    let scale = x.norm().max(1.0);
    if transverse.abs() > 1e-12 * scale {
        return Err(Error::OffLeaf {
            theta: params.theta,
            detail: format!("transverse component {transverse:e}"),
        });
    }
    let ratio = -radial / params.eps;
    if ratio <= 0.0 {
        return Err(Error::OffLeaf {
            theta: params.theta,
            detail: format!("radial component {radial} has the wrong sign for eps = {}", params.eps),
        });
    }
    Ok(R2Pt::new(ratio.ln() / (2.0 * params.mu), 2.0 * params.mu * x.a3))
}

/// The transitive B-action on ℝ².
pub fn act_r2(params: &R2Params, bt: &BEl, pt: &R2Pt) -> R2Pt {
    let (mu, eps, th) = (params.mu, params.eps, params.theta);
    let q = pt.q - bt.a.ln() / mu;
    let p = pt.p - 2.0 * mu * (eps / bt.a) * (2.0 * mu * pt.q).exp() * (bt.b * th.cos() - bt.c * th.sin());
    R2Pt::new(q, p)
}

/// `μ̃(b̃, η̃) = ψ⁻¹(Ad*_{b̃⁻¹} η̃)`.
pub fn momentum_tb(pt: &TBPt) -> Su2Vec {
    let TBPt { bel, eta } = pt;
    let inv_a = 1.0 / bel.a;
    Su2Vec::new(
        -inv_a * inv_a * eta.ce,
        inv_a * inv_a * eta.cet,
        -(0.5 * eta.ch + (bel.b * eta.ce + bel.c * eta.cet) * inv_a),
    )
}

/// Left translation on the group factor.
pub fn act_tb(ht: &BEl, pt: &TBPt) -> TBPt {
    TBPt { bel: *ht * pt.bel, eta: pt.eta }
}

/// `φ̃(g, η) = Π_su(2)(g ψ̄*(η) g⁻¹)`.
pub fn momentum_tsu2(pt: &TSU2Pt) -> Su2Vec {
    let g = pt.g.to_matrix();
    let m = g * psi_star(&pt.eta).to_matrix() * pt.g.inverse().to_matrix();
    project_unchecked(&m).0
}

/// [`momentum_tsu2`] from the component formula in the rotated basis
/// `{X_θ, X_θ^*, X3}`; the result does not depend on `theta`.
pub fn momentum_tsu2_components(pt: &TSU2Pt, theta: f64) -> Su2Vec {
    let (al, be) = (pt.g.alpha, pt.g.beta);
    let Su2Cov { c1: e1, c2: e2, c3: e3 } = pt.eta;
    let (s, c) = theta.sin_cos();
    let beta_sq = be * be;
    let rot = al * be * C64::from_polar(1.0, theta);
    let e_cos = e1 * c - e2 * s;
    let e_sin = e1 * s + e2 * c;
    let along = -beta_sq.im * e_cos - beta_sq.re * e_sin - e3 * rot.im;
    let across = beta_sq.im * e_sin - beta_sq.re * e_cos - e3 * rot.re;
    // X3 part: Im(ᾱ β η₊), η₊ = η1 + iη2
    let vertical = (al.conj() * be * C64::new(e1, e2)).im;
    let x_across = Su2Vec::new(-s, c, 0.0);
    Su2Vec::x_theta(theta) * along + x_across * across + Su2Vec::X3 * vertical
}

/// Cotangent lift of the dressing action:
/// `(g, η) ↦ (g^{b̃}, ψ*(Ad_{b̃^g} ψ̄*(η)))`.
pub fn act_tsu2(bt: &BEl, pt: &TSU2Pt) -> TSU2Pt {
    let (g_dressed, residual) = dressing_pair(bt, &pt.g);
    let r = residual.to_matrix();
    let m = r * psi_star(&pt.eta).to_matrix() * residual.inverse().to_matrix();
    TSU2Pt { g: g_dressed, eta: psi_star_inv(&BAlgVec::from_matrix_unchecked(&m)) }
}

/// Leaf coordinates of `X`, or `None` on the zero-dimensional leaves (the X3 axis).
pub fn orbit_coords(x: &Su2Vec) -> Option<OrbitPt> {
    let r2 = x.a1 * x.a1 + x.a2 * x.a2;
    if r2 <= AXIS_TOL_SQ {
        return None;
    }
    Some(OrbitPt { theta: normalize_angle(x.a2.atan2(x.a1)), x: r2.sqrt(), z: x.a3 })
}

/// Whether `X` lies on `O_θ` up to `tol` in the angle.
pub fn on_leaf(x: &Su2Vec, theta: f64, tol: f64) -> bool {
    orbit_coords(x).is_some_and(|o| angle_distance(o.theta, theta) <= tol)
}

/// Both components of `(β² η₊ + η₃ α β) e^{iθ}`. The point lies on
/// `φ̃⁻¹(O_θ)` iff the real part vanishes and the imaginary part is negative.
pub fn tsu2_constraints(pt: &TSU2Pt, theta: f64) -> (f64, f64) {
    let (al, be) = (pt.g.alpha, pt.g.beta);
    let eta_plus = C64::new(pt.eta.c1, pt.eta.c2);
    let w = (be * be * eta_plus + al * be * pt.eta.c3) * C64::from_polar(1.0, theta);
    (w.re, w.im)
}

pub fn tsu2_on_leaf(pt: &TSU2Pt, theta: f64) -> bool {
    let (re, im) = tsu2_constraints(pt, theta);
    re.abs() < MEMBERSHIP_TOL && im < 0.0
}

/// A point of the gauge slice in `B × O_θ` with its canonical momenta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeSlicePoint {
    pub bel: BEl,
    pub x: Su2Vec,
    pub p_a: f64,
    pub p_t: f64,
}

/// `(t, a; v3, vθ) ↦ ([[a, -t e^{-iθ}], [0, 1/a]], -v3/2 X3 - vθ X_θ)` with
/// momenta `p_a = a⁻²(t vθ - v3)`, `p_t = a⁻¹ vθ`.
pub fn gauge_slice(theta: f64, t: f64, a: f64, v3: f64, vtheta: f64) -> Result<GaugeSlicePoint> {
    if !(a > 0.0) {
        return Err(Error::NonPositive { name: "a", value: a });
    }
    let upper = -C64::from_polar(t, -theta);
    let bel = BEl::new(a, upper.re, upper.im)?;
    let x = Su2Vec::X3 * (-0.5 * v3) - Su2Vec::x_theta(theta) * vtheta;
    Ok(GaugeSlicePoint { bel, x, p_a: (t * vtheta - v3) / (a * a), p_t: vtheta / a })
}

/// Inverse of the momentum map of the slice at fixed `(a, t)`: returns `(v3, vθ)`.
pub fn gauge_velocities(t: f64, a: f64, p_a: f64, p_t: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) {
        return Err(Error::NonPositive { name: "a", value: a });
    }
    let vtheta = a * p_t;
    Ok((t * vtheta - a * a * p_a, vtheta))
}

/// Annihilator `π̂` of the dressing orbit through `g` and the normal vector
/// `v0 = -g⁻¹ ∂g/∂ϑ`, normalized by `<π̂, v0> = 1`.
pub fn pi_hat_v0(g: &SU2El) -> Result<(Su2Cov, Su2Vec)> {
    let beta_abs = g.beta.norm();
    if beta_abs <= SPHERE_ORBIT_TOL {
        return Err(Error::DegenerateOrbit { beta_abs });
    }
    let b2 = g.beta.norm_sqr();
    let ab_bar = g.alpha * g.beta.conj();
    let pi_hat = Su2Cov::new(-ab_bar.re / b2, -ab_bar.im / b2, 1.0);
    let v0 = Su2Vec::new(-ab_bar.re, -ab_bar.im, b2);
    Ok((pi_hat, v0))
}

/// Element of B carrying `from` to `to` when both lie on the same
/// two-dimensional leaf.
pub fn leaf_transport(from: &Su2Vec, to: &Su2Vec) -> Result<BEl> {
    let (Some(f), Some(t)) = (orbit_coords(from), orbit_coords(to)) else {
        return Err(Error::InvalidInput("leaf transport needs two-dimensional leaves".into()));
    };
    if angle_distance(f.theta, t.theta) > 1e-12 {
        return Err(Error::OffLeaf {
            theta: f.theta,
            detail: format!("target lies on theta = {}", t.theta),
        });
    }
    let a = (f.x / t.x).sqrt();
    let shift = (t.z - f.z) * a / f.x;
    let (s, c) = f.theta.sin_cos();
    BEl::new(a, shift * c, -shift * s)
}

/// Conjugation by `diag(e^{iφ}, e^{-iφ})` rotates the leaves by `-2φ`; this
/// returns the torus element that rotates leaf `from` onto leaf `to`.
pub fn leaf_rotation(from_theta: f64, to_theta: f64) -> SU2El {
    let phi = -0.5 * normalize_angle(to_theta - from_theta);
    SU2El::new_unchecked(C64::from_polar(1.0, phi), C64::new(0.0, 0.0))
}

/// Momentum image of T*B as the abstract coadjoint action on `ψ⁻¹(η̃)`.
pub fn momentum_tb_abstract(pt: &TBPt) -> Su2Vec {
    coadjoint_b_on_su2(&pt.bel, &psi_inv(&pt.eta))
}
