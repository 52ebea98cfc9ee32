//! Exact solutions by factorizing the exponential curve `exp(t L̃_f(X0)) = g_t b_t`.
//!
//! For the collective Hamiltonian `f(X) = ½ det X` the Legendre map is
//! `L̃_f(X) = (i/2) X`, and each of the three systems is solved by acting with
//! the B-factor `b_t` on its initial point. The momentum images then all follow
//! the coadjoint curve `t ↦ coadjoint_b_on_su2(b_t, X0)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{project_unchecked, times_i, BAlgVec, Mat2C, Su2Vec, C64};
use crate::error::{Error, Result};
use crate::groups::{coadjoint_b_on_su2, iwasawa_unchecked, BEl, SU2El};
use crate::phase::{act_r2, act_tb, act_tsu2, momentum_r2, momentum_tb, momentum_tsu2, R2Params, R2Pt, TBPt, TSU2Pt, SPHERE_ORBIT_TOL};

/// `|det X - 1|` below which the closed-form factors apply.
pub const CLOSED_FORM_TOL: f64 = 1e-10;

/// `|det J - 1|` accepted at solver entry.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// The AKS datum `X0` together with whether the closed forms apply to it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AksCurve {
    pub x0: Su2Vec,
    pub closed_form_valid: bool,
}

impl AksCurve {
    pub fn new(x0: Su2Vec) -> Result<Self> {
        if !x0.is_finite() {
            return Err(Error::NonFinite("AKS datum"));
        }
        let det = x0.det();
        if det <= 0.0 {
            return Err(Error::NonPositive { name: "det X0", value: det });
        }
        Ok(Self { x0, closed_form_valid: (det - 1.0).abs() < CLOSED_FORM_TOL })
    }

    pub fn exp(&self, t: f64) -> Mat2C {
        exp_curve(&self.x0, t)
    }

    /// Closed-form factors when available, the generic factorization otherwise.
    pub fn factors(&self, t: f64) -> (SU2El, BEl) {
        if self.closed_form_valid {
            closed_form_factors(&self.x0, t)
        } else {
            aks_factors_generic(&self.x0, t)
        }
    }

    pub fn b_factor(&self, t: f64) -> BEl {
        self.factors(t).1
    }

    pub fn orbit(&self, t: f64) -> Su2Vec {
        coadjoint_b_on_su2(&self.b_factor(t), &self.x0)
    }
}

/// `L̃_f(X) = (i/2) X`.
pub fn legendre_f(x: &Su2Vec) -> Mat2C {
    times_i(&x.to_matrix()).scale_re(0.5)
}

/// `Π_b L̃_f(X)`, the generator of the B-factor: `ḃ b⁻¹ = Π_b L̃_f(γ(t))`.
pub fn b_generator(x: &Su2Vec) -> BAlgVec {
    project_unchecked(&legendre_f(x)).1
}

/// `exp(t L̃_f(X)) = cosh(t‖X‖/2) + (iX/‖X‖) sinh(t‖X‖/2)`.
pub fn exp_curve(x: &Su2Vec, t: f64) -> Mat2C {
    let norm = x.norm();
    if norm == 0.0 {
        return Mat2C::identity();
    }
    let half = 0.5 * t * norm;
    let ix = times_i(&x.to_matrix()).scale_re(half.sinh() / norm);
    Mat2C::identity().scale_re(half.cosh()) + ix
}

/// Closed-form Iwasawa factors of the exponential curve for `det X = 1`.
pub fn aks_factors(x: &Su2Vec, t: f64) -> Result<(SU2El, BEl)> {
    let defect = (x.det() - 1.0).abs();
    if !(defect < CLOSED_FORM_TOL) {
        return Err(Error::DeterminantNotOne { defect });
    }
    Ok(closed_form_factors(x, t))
}

fn closed_form_factors(x: &Su2Vec, t: f64) -> (SU2El, BEl) {
    let (sh, ch) = ((0.5 * t).sinh(), (0.5 * t).cosh());
    let n = (t.cosh() - x.a3 * t.sinh()).sqrt();
    let alpha = C64::new((ch - x.a3 * sh) / n, 0.0);
    let beta = C64::new(x.a1, -x.a2) * (sh / n);
    let scale = t.sinh() / n;
    (SU2El::new_unchecked(alpha, beta), BEl::new_unchecked(n, -x.a1 * scale, x.a2 * scale))
}

/// Factors of the exponential curve by the generic Iwasawa factorization;
/// valid for every `X`.
pub fn aks_factors_generic(x: &Su2Vec, t: f64) -> (SU2El, BEl) {
    iwasawa_unchecked(&exp_curve(x, t))
}

fn check_normalized(det: f64, constraint: &'static str) -> Result<()> {
    if !det.is_finite() {
        return Err(Error::NonFinite("momentum image"));
    }
    if (det - 1.0).abs() >= NORMALIZATION_TOL {
        return Err(Error::Normalization { constraint, det });
    }
    Ok(())
}

/// Exact Toda-type solution `ρ(b̃(t), (q0, p0))`.
pub fn solve_r2(params: &R2Params, q0: f64, p0: f64, t: f64) -> Result<R2Pt> {
    if params.eps == 0.0 {
        return Err(Error::InvalidInput("eps = 0 has no two-dimensional leaf".into()));
    }
    let x0 = momentum_r2(params, &R2Pt::new(q0, p0));
    check_normalized(x0.det(), "(p0/2mu)^2 + eps^2 exp(4 mu q0) = 1")?;
    flow_r2(params, &R2Pt::new(q0, p0), t)
}

/// Exact solution on T*B: `(b̃(t) b̃0, η̃0)`.
pub fn solve_tb(pt0: &TBPt, t: f64) -> Result<TBPt> {
    check_normalized(momentum_tb(pt0).det(), "det of the T*B momentum image = 1")?;
    flow_tb(pt0, t)
}

/// Exact solution on T*SU(2) by the lifted dressing action of `b̃(t)`.
pub fn solve_tsu2(pt0: &TSU2Pt, t: f64) -> Result<TSU2Pt> {
    let beta_abs = pt0.g.beta.norm();
    if beta_abs <= SPHERE_ORBIT_TOL {
        return Err(Error::DegenerateOrbit { beta_abs });
    }
    check_normalized(momentum_tsu2(pt0).det(), "det of the T*SU(2) momentum image = 1")?;
    flow_tsu2(pt0, t)
}

/// The coadjoint curve `γ(t) = coadjoint_b_on_su2(b̃(t), X0)`.
pub fn orbit_curve(x0: &Su2Vec, t: f64) -> Result<Su2Vec> {
    check_normalized(x0.det(), "det X0 = 1")?;
    flow_orbit(x0, t)
}

/// [`solve_r2`] for any positive determinant, through the generic factorization.
pub fn flow_r2(params: &R2Params, pt0: &R2Pt, t: f64) -> Result<R2Pt> {
    let curve = AksCurve::new(momentum_r2(params, pt0))?;
    Ok(act_r2(params, &curve.b_factor(t), pt0))
}

pub fn flow_tb(pt0: &TBPt, t: f64) -> Result<TBPt> {
    let curve = AksCurve::new(momentum_tb(pt0))?;
    Ok(act_tb(&curve.b_factor(t), pt0))
}

pub fn flow_tsu2(pt0: &TSU2Pt, t: f64) -> Result<TSU2Pt> {
    let curve = AksCurve::new(momentum_tsu2(pt0))?;
    Ok(act_tsu2(&curve.b_factor(t), pt0))
}

pub fn flow_orbit(x0: &Su2Vec, t: f64) -> Result<Su2Vec> {
    if x0.det() == 0.0 {
        return Ok(*x0);
    }
    Ok(AksCurve::new(*x0)?.orbit(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{psi_map, BCov, Su2Cov};
    use crate::phase::tsu2_on_leaf;
    use std::f64::consts::{LN_2, SQRT_2};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn unit(a1: f64, a2: f64, a3: f64) -> Su2Vec {
        let v = Su2Vec::new(a1, a2, a3);
        v * (1.0 / v.norm())
    }

    #[test]
    fn legendre_examples() {
        assert!(legendre_f(&Su2Vec::X3).max_abs_diff(&BAlgVec::H.to_matrix().scale_re(-0.5)) < 1e-15);
        assert_eq!(legendre_f(&Su2Vec::zero()).max_abs(), 0.0);
        let expected = Mat2C::from_real(0.0, -0.5, -0.5, 0.0);
        assert!(legendre_f(&Su2Vec::X1).max_abs_diff(&expected) < 1e-15);
        assert!(legendre_f(&Su2Vec::new(0.3, -1.0, 2.0)).trace().norm() < 1e-15);
    }

    #[test]
    fn b_generator_of_x1() {
        assert!(b_generator(&Su2Vec::X1).max_abs_diff(&-BAlgVec::E) < 1e-15);
        let j = Su2Vec::new(0.3, -1.0, 2.0);
        let expected = BAlgVec::new(-j.a1, j.a2, -0.5 * j.a3);
        assert!(b_generator(&j).max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn exp_curve_examples() {
        let t = 0.7;
        let e = exp_curve(&Su2Vec::X3, t);
        let expected = Mat2C::diag(c((-0.5 * t).exp(), 0.0), c((0.5 * t).exp(), 0.0));
        assert!(e.max_abs_diff(&expected) < 1e-15);
        let (sh, ch) = ((0.5 * t).sinh(), (0.5 * t).cosh());
        let expected = Mat2C::from_real(ch, -sh, -sh, ch);
        assert!(exp_curve(&Su2Vec::X1, t).max_abs_diff(&expected) < 1e-15);
        assert_eq!(exp_curve(&Su2Vec::new(0.2, 0.4, 0.1), 0.0), Mat2C::identity());
        let x = Su2Vec::new(0.2, -1.4, 0.8);
        assert!((exp_curve(&x, 2.3).det() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn factors_examples() {
        let t = 1.3;
        let (g, b) = aks_factors(&Su2Vec::X3, t).unwrap();
        assert!(g.max_abs_diff(&SU2El::identity()) < 1e-15);
        assert!(b.max_abs_diff(&BEl::diag((-0.5 * t).exp())) < 1e-15);

        let x = unit(0.3, -0.2, 0.9);
        let (g, b) = aks_factors(&x, 0.0).unwrap();
        assert!(g.max_abs_diff(&SU2El::identity()) < 1e-15);
        assert!(b.max_abs_diff(&BEl::identity()) < 1e-15);

        let (_, b) = aks_factors(&Su2Vec::X1, 1.0).unwrap();
        let n = 1f64.cosh().sqrt();
        assert!(b.max_abs_diff(&BEl::new_unchecked(n, -1f64.sinh() / n, 0.0)) < 1e-15);

        assert!(matches!(aks_factors(&Su2Vec::new(2.0, 0.0, 0.0), 1.0), Err(Error::DeterminantNotOne { .. })));
    }

    #[test]
    fn closed_form_agrees_with_generic() {
        for (x, t) in [(unit(0.3, -0.2, 0.9), 2.7), (unit(-1.0, 2.0, -0.5), -2.9), (Su2Vec::X2, 0.4)] {
            let (g, b) = aks_factors(&x, t).unwrap();
            let (gg, bg) = aks_factors_generic(&x, t);
            assert!(g.max_abs_diff(&gg) < 1e-11 && b.max_abs_diff(&bg) < 1e-11);
            assert!((g.to_matrix() * b.to_matrix()).max_abs_diff(&exp_curve(&x, t)) < 1e-12);
        }
    }

    #[test]
    fn toda_example() {
        let params = R2Params::new(0.5, SQRT_2, 0.0).unwrap();
        let q0 = -0.5 * LN_2;
        for t in [-1.5, 0.0, 0.8, 2.5] {
            let pt = solve_r2(&params, q0, 0.0, t).unwrap();
            assert!((pt.q - (q0 - t.cosh().ln())).abs() < 1e-13, "t = {t}");
            assert!((pt.p + t.tanh()).abs() < 1e-13);
            let energy = 0.5 * pt.p * pt.p + (2.0 * pt.q).exp();
            assert!((energy - 0.5).abs() < 1e-13);
        }
        assert!(matches!(solve_r2(&params, 0.0, 0.0, 1.0), Err(Error::Normalization { .. })));
    }

    #[test]
    fn r2_general_curve() {
        let params = R2Params::new(0.7, -0.9, 1.2).unwrap();
        // choose q0 so that the leaf point has x = 0.6, z = 0.8
        let q0 = (0.6f64 / 0.9).ln() / 1.4;
        let p0 = 2.0 * 0.7 * 0.8;
        for t in [-2.0, 0.5, 3.0] {
            let pt = solve_r2(&params, q0, p0, t).unwrap();
            let expected = q0 - (t.cosh() - 0.8 * t.sinh()).ln() / 1.4;
            assert!((pt.q - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn tb_example() {
        let pt0 = TBPt { bel: BEl::identity(), eta: BCov::new(0.0, 0.0, -2.0) };
        let t = 0.9;
        let pt = solve_tb(&pt0, t).unwrap();
        assert!(pt.bel.max_abs_diff(&BEl::diag((-0.5 * t).exp())) < 1e-15);
        assert_eq!(pt.eta, pt0.eta);
        assert_eq!(solve_tb(&pt0, 0.0).unwrap(), pt0);
    }

    #[test]
    fn tsu2_example() {
        let pt0 = TSU2Pt { g: SU2El::sigma(), eta: Su2Cov::new(1.0, 0.0, 0.0) };
        let t = 1.1;
        let pt = solve_tsu2(&pt0, t).unwrap();
        let b = aks_factors(&-Su2Vec::X2, t).unwrap().1;
        let expected = coadjoint_b_on_su2(&b, &-Su2Vec::X2);
        assert!(momentum_tsu2(&pt).max_abs_diff(&expected) < 1e-14);
        assert!((pt.g.beta.arg() - pt0.g.beta.arg()).abs() < 1e-12);
        let same = solve_tsu2(&pt0, 0.0).unwrap();
        assert!(same.g.max_abs_diff(&pt0.g) < 1e-15 && same.eta.max_abs_diff(&pt0.eta) < 1e-15);
        let at_id = TSU2Pt { g: SU2El::identity(), eta: Su2Cov::new(1.0, 0.0, 0.0) };
        assert!(matches!(solve_tsu2(&at_id, 1.0), Err(Error::DegenerateOrbit { .. })));
    }

    #[test]
    fn orbit_examples() {
        for t in [-2.0, 0.3, 4.0] {
            assert!(orbit_curve(&Su2Vec::X3, t).unwrap().max_abs_diff(&Su2Vec::X3) < 1e-15);
            let gamma = orbit_curve(&Su2Vec::X1, t).unwrap();
            let expected = Su2Vec::X1 * (1.0 / t.cosh()) - Su2Vec::X3 * t.tanh();
            assert!(gamma.max_abs_diff(&expected) < 1e-14);
        }
        let x = unit(0.4, 0.1, -0.3);
        assert!(orbit_curve(&x, 0.0).unwrap().max_abs_diff(&x) < 1e-15);
    }

    #[test]
    fn flow_is_a_one_parameter_group() {
        let params = R2Params::new(0.5, SQRT_2, 0.4).unwrap();
        let pt0 = R2Pt::new(-0.9, 0.7);
        let (t, s) = (0.8, -1.7);
        let direct = flow_r2(&params, &pt0, t + s).unwrap();
        let composed = flow_r2(&params, &flow_r2(&params, &pt0, t).unwrap(), s).unwrap();
        assert!((direct.q - composed.q).abs() < 1e-12 && (direct.p - composed.p).abs() < 1e-12);
    }

    #[test]
    fn tduality_agreement_for_one_triple() {
        let g = SU2El::new(c(0.36, -0.48), c(0.64, 0.48)).unwrap();
        let raw = TSU2Pt { g, eta: Su2Cov::new(0.7, -1.2, 0.4) };
        let scale = 1.0 / momentum_tsu2(&raw).norm();
        let tsu2 = TSU2Pt { g, eta: raw.eta.scale(scale) };
        let x0 = momentum_tsu2(&tsu2);
        let theta = x0.a2.atan2(x0.a1);
        assert!(tsu2_on_leaf(&tsu2, theta));
        let eps = -SQRT_2;
        let params = R2Params::new(0.5, eps, theta).unwrap();
        let radial = (x0.a1 * x0.a1 + x0.a2 * x0.a2).sqrt();
        let r2 = R2Pt::new((radial / eps.abs()).ln(), x0.a3);
        let bel = BEl::new(1.3, -0.4, 0.2).unwrap();
        let tb = TBPt { bel, eta: psi_map(&coadjoint_b_on_su2(&bel.inverse(), &x0)) };
        assert!(momentum_tb(&tb).max_abs_diff(&x0) < 1e-14);
        assert!(momentum_r2(&params, &r2).max_abs_diff(&x0) < 1e-14);
        for t in [-3.0, -0.4, 1.0, 3.0] {
            let gamma = orbit_curve(&x0, t).unwrap();
            let a = momentum_r2(&params, &solve_r2(&params, r2.q, r2.p, t).unwrap());
            let b = momentum_tb(&solve_tb(&tb, t).unwrap());
            let c = momentum_tsu2(&solve_tsu2(&tsu2, t).unwrap());
            assert!(a.max_abs_diff(&gamma) < 1e-9);
            assert!(b.max_abs_diff(&gamma) < 1e-9);
            assert!(c.max_abs_diff(&gamma) < 1e-9);
        }
    }
}
