//! Seeded random inputs: group elements, states of the three B-spaces and
//! matched initial data sharing one momentum image.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::algebra::{psi_map, Mat2C, Su2Cov, Su2Vec, C64};
use crate::groups::{coadjoint_b_on_su2, BEl, SU2El};
use crate::phase::{momentum_tsu2, orbit_coords, R2Params, R2Pt, TBPt, TSU2Pt};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// A matrix of determinant 1 with entries of order one.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Mat2C {
    loop {
        let m = Mat2C::new(complex_normal(rng), complex_normal(rng), complex_normal(rng), complex_normal(rng));
        let det = m.det();
        if det.norm() > 0.25 {
            return m.scale(det.sqrt().inv());
        }
    }
}

/// Uniformly distributed on SU(2) ≅ S³.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> SU2El {
    let alpha = complex_normal(rng);
    let beta = complex_normal(rng);
    let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    SU2El::new_unchecked(alpha / n, beta / n)
}

/// An element of SU(2) with `|β| ≥ min_beta`.
pub fn random_su2_sphere<R: Rng + ?Sized>(rng: &mut R, min_beta: f64) -> SU2El {
    loop {
        let g = random_su2(rng);
        if g.beta.norm() >= min_beta {
            return g;
        }
    }
}

/// `a = exp(N(0, 0.3²))`, `b, c ~ N(0, 1)`.
pub fn random_bel<R: Rng + ?Sized>(rng: &mut R) -> BEl {
    BEl::new_unchecked((0.3 * normal(rng)).exp(), normal(rng), normal(rng))
}

pub fn random_su2vec<R: Rng + ?Sized>(rng: &mut R) -> Su2Vec {
    Su2Vec::new(normal(rng), normal(rng), normal(rng))
}

/// A unit vector whose distance to the X3 axis is at least `min_radial`.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, min_radial: f64) -> Su2Vec {
    loop {
        let x = random_su2vec(rng);
        let n = x.norm();
        if n < 1e-3 {
            continue;
        }
        let u = x * (1.0 / n);
        if (u.a1 * u.a1 + u.a2 * u.a2).sqrt() >= min_radial {
            return u;
        }
    }
}

pub fn random_r2_params<R: Rng + ?Sized>(rng: &mut R) -> R2Params {
    let mu = rng.random_range(0.3..1.5);
    let eps = rng.random_range(0.5..2.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    R2Params { mu, eps, theta }
}

pub fn random_tb<R: Rng + ?Sized>(rng: &mut R) -> TBPt {
    TBPt { bel: random_bel(rng), eta: psi_map(&random_su2vec(rng)) }
}

pub fn random_tsu2<R: Rng + ?Sized>(rng: &mut R) -> TSU2Pt {
    TSU2Pt { g: random_su2_sphere(rng, 0.1), eta: Su2Cov::new(normal(rng), normal(rng), normal(rng)) }
}

/// Initial data on ℝ², T*B and T*SU(2) with one common unit momentum image
/// `x0` on the leaf `O_θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchedTriple {
    pub x0: Su2Vec,
    pub theta: f64,
    pub params: R2Params,
    pub r2: R2Pt,
    pub tb: TBPt,
    pub tsu2: TSU2Pt,
}

/// Builds a matched triple from a random T*SU(2) point rescaled to unit
/// momentum image.
pub fn matched_triple<R: Rng + ?Sized>(rng: &mut R) -> MatchedTriple {
    loop {
        let raw = random_tsu2(rng);
        let j = momentum_tsu2(&raw);
        let n = j.norm();
        if n < 1e-3 {
            continue;
        }
        let tsu2 = TSU2Pt { g: raw.g, eta: raw.eta.scale(1.0 / n) };
        let x0 = momentum_tsu2(&tsu2);
        let Some(orbit) = orbit_coords(&x0).filter(|o| o.x >= 0.05) else {
            continue;
        };
        let base = random_r2_params(rng);
        let params = R2Params { mu: base.mu, eps: -base.eps.abs(), theta: orbit.theta };
        let r2 = R2Pt::new(
            (orbit.x / params.eps.abs()).ln() / (2.0 * params.mu),
            2.0 * params.mu * orbit.z,
        );
        let bel = random_bel(rng);
        let tb = TBPt { bel, eta: psi_map(&coadjoint_b_on_su2(&bel.inverse(), &x0)) };
        return MatchedTriple { x0, theta: orbit.theta, params, r2, tb, tsu2 };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{momentum_r2, momentum_tb, tsu2_on_leaf};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_respect_their_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!((random_sl2(&mut rng).det() - C64::new(1.0, 0.0)).norm() < 1e-12);
            assert!(random_su2(&mut rng).unitarity_defect() < 1e-14);
            assert!(random_su2_sphere(&mut rng, 0.1).beta.norm() >= 0.1);
            assert!(random_bel(&mut rng).a > 0.0);
            let u = random_unit(&mut rng, 0.2);
            assert!((u.det() - 1.0).abs() < 1e-14 && u.a1.hypot(u.a2) >= 0.2);
        }
    }

    #[test]
    fn matched_triples_share_the_momentum_image() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = matched_triple(&mut rng);
            assert!((m.x0.det() - 1.0).abs() < 1e-12);
            assert!(momentum_r2(&m.params, &m.r2).max_abs_diff(&m.x0) < 1e-12);
            assert!(momentum_tb(&m.tb).max_abs_diff(&m.x0) < 1e-12);
            assert!(momentum_tsu2(&m.tsu2).max_abs_diff(&m.x0) < 1e-12);
            assert!(tsu2_on_leaf(&m.tsu2, m.theta));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = matched_triple(&mut ChaCha8Rng::seed_from_u64(3));
        let b = matched_triple(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}
