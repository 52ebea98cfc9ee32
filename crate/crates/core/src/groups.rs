//! Iwasawa factors of SL(2,C) and the actions they carry.
//!
//! Every `l ∈ SL(2,C)` factors uniquely as `l = g·b` with `g ∈ SU(2)` and `b`
//! upper triangular with positive diagonal. The dressing action of B on SU(2)
//! is `g ↦ Π_SU(2)(b̃ g)`, and B acts on su(2) ≅ b* by the coadjoint action
//! `X ↦ Π_su(2)(b̃ X b̃⁻¹)`, which is a left action.

use std::f64::consts::TAU;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::algebra::{project_unchecked, BAlgVec, Mat2C, Su2Vec, C64, INPUT_TOL};
use crate::error::{Error, Result};

/// Tolerance on `|det l - 1|` accepted by the factorization.
pub const DET_TOL: f64 = 1e-10;

/// Below this `|β|` an element of SU(2) sits on a point dressing orbit.
pub const POINT_ORBIT_TOL: f64 = 1e-12;

/// Wraps an angle into `[0, 2π)`.
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(x: f64, y: f64) -> f64 {
    let d = normalize_angle(x - y);
    d.min(TAU - d)
}

/// `[[α, β], [-β̄, ᾱ]]` with `|α|² + |β|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SU2El {
    pub alpha: C64,
    pub beta: C64,
}

impl SU2El {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let g = Self { alpha, beta };
        if !(alpha.re.is_finite() && alpha.im.is_finite() && beta.re.is_finite() && beta.im.is_finite()) {
            return Err(Error::NonFinite("SU(2) element"));
        }
        let defect = g.unitarity_defect();
        if defect > INPUT_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(g)
    }

    pub const fn new_unchecked(alpha: C64, beta: C64) -> Self {
        Self { alpha, beta }
    }

    pub const fn identity() -> Self {
        Self::new_unchecked(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    }

    /// The Weyl representative `[[0, 1], [-1, 0]]`.
    pub const fn sigma() -> Self {
        Self::new_unchecked(C64::new(0.0, 0.0), C64::new(1.0, 0.0))
    }

    pub fn unitarity_defect(&self) -> f64 {
        (self.alpha.norm_sqr() + self.beta.norm_sqr() - 1.0).abs()
    }

    /// Rescales `(α, β)` back onto the unit sphere; returns the element and
    /// the size of the correction.
    pub fn renormalized(&self) -> (Self, f64) {
        let n = (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt();
        let g = Self::new_unchecked(self.alpha / n, self.beta / n);
        let shift = (g.alpha - self.alpha).norm().max((g.beta - self.beta).norm());
        (g, shift)
    }

    pub fn to_matrix(&self) -> Mat2C {
        Mat2C::new(self.alpha, self.beta, -self.beta.conj(), self.alpha.conj())
    }

    pub fn inverse(&self) -> Self {
        Self::new_unchecked(self.alpha.conj(), -self.beta)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.alpha - other.alpha).norm().max((self.beta - other.beta).norm())
    }
}

impl Mul for SU2El {
    type Output = SU2El;
    fn mul(self, o: SU2El) -> SU2El {
        // first row of the product determines the element
        let alpha = self.alpha * o.alpha - self.beta * o.beta.conj();
        let beta = self.alpha * o.beta + self.beta * o.alpha.conj();
        SU2El::new_unchecked(alpha, beta)
    }
}

/// `[[a, b + ic], [0, 1/a]]` with `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BEl {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BEl {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite("B element"));
        }
        if a <= 0.0 {
            return Err(Error::NonPositive { name: "a", value: a });
        }
        Ok(Self { a, b, c })
    }

    pub const fn new_unchecked(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub const fn identity() -> Self {
        Self::new_unchecked(1.0, 0.0, 0.0)
    }

    pub const fn diag(a: f64) -> Self {
        Self::new_unchecked(a, 0.0, 0.0)
    }

    pub fn upper(&self) -> C64 {
        C64::new(self.b, self.c)
    }

    fn from_upper(a: f64, z: C64) -> Self {
        Self::new_unchecked(a, z.re, z.im)
    }

    pub fn to_matrix(&self) -> Mat2C {
        Mat2C::new(
            C64::new(self.a, 0.0),
            self.upper(),
            C64::new(0.0, 0.0),
            C64::new(1.0 / self.a, 0.0),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::from_upper(1.0 / self.a, -self.upper())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a - other.a).abs().max((self.upper() - other.upper()).norm())
    }
}

impl Mul for BEl {
    type Output = BEl;
    fn mul(self, o: BEl) -> BEl {
        BEl::from_upper(self.a * o.a, o.upper() * self.a + self.upper() / o.a)
    }
}

/// Dressing orbit of an element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OrbitClass {
    /// Fixed point `diag(e^{iχ}, e^{-iχ})`.
    PointOrbit { chi: f64 },
    /// Two-sphere of elements with `arg β = ϑ`.
    SphereOrbit { vartheta: f64 },
}

/// `l = g·b` by Gram–Schmidt on the first column of `l`.
pub fn iwasawa_factorize(l: &Mat2C) -> Result<(SU2El, BEl)> {
    if !l.is_finite() {
        return Err(Error::NonFinite("matrix"));
    }
    let defect = (l.det() - C64::new(1.0, 0.0)).norm();
    if defect > DET_TOL {
        return Err(Error::DeterminantNotOne { defect });
    }
    Ok(iwasawa_unchecked(l))
}

pub(crate) fn iwasawa_unchecked(l: &Mat2C) -> (SU2El, BEl) {
    let n = (l.m11.norm_sqr() + l.m21.norm_sqr()).sqrt();
    let alpha = l.m11 / n;
    let beta = -(l.m21 / n).conj();
    let g = SU2El::new_unchecked(alpha, beta);
    // b = g† l; only the first row is needed
    let upper = alpha.conj() * l.m12 - beta * l.m22;
    (g, BEl::from_upper(n, upper))
}

/// Factorizes `b̃·g = g^{b̃} · b̃^g` and returns both factors.
pub fn dressing_pair(bt: &BEl, g: &SU2El) -> (SU2El, BEl) {
    iwasawa_unchecked(&(bt.to_matrix() * g.to_matrix()))
}

/// Coadjoint action of B on su(2) ≅ b*:
///
/// ```text
/// X1 ↦ a⁻² X1 + (b/a) X3
/// X2 ↦ a⁻² X2 - (c/a) X3
/// X3 ↦ X3
/// ```
pub fn coadjoint_b_on_su2(bt: &BEl, x: &Su2Vec) -> Su2Vec {
    let inv_a = 1.0 / bt.a;
    Su2Vec::new(
        x.a1 * inv_a * inv_a,
        x.a2 * inv_a * inv_a,
        x.a3 + (bt.b * x.a1 - bt.c * x.a2) * inv_a,
    )
}

/// Which dressing orbit `g` lies on.
pub fn classify_dressing_orbit(g: &SU2El) -> OrbitClass {
    if g.beta.norm() <= POINT_ORBIT_TOL {
        OrbitClass::PointOrbit { chi: normalize_angle(g.alpha.arg()) }
    } else {
        OrbitClass::SphereOrbit { vartheta: normalize_angle(g.beta.arg()) }
    }
}

/// Body form `g⁻¹ g^Z` of the dressing generator of `Z ∈ b` at `g`.
pub fn dressing_inf_gen(g: &SU2El, z: &BAlgVec) -> Su2Vec {
    let (al, be) = (g.alpha, g.beta);
    let ab_bar = al * be.conj();
    let beta_sq = be * be;
    let alpha_beta = al * be;
    // g⁻¹ g^H
    let gen_h = Su2Vec::new(2.0 * ab_bar.im, -2.0 * ab_bar.re, 0.0);
    // g⁻¹ g^{iE}
    let gen_ie = Su2Vec::new(-beta_sq.re, beta_sq.im, -alpha_beta.re);
    // g⁻¹ g^E
    let gen_e = Su2Vec::new(beta_sq.im, beta_sq.re, alpha_beta.im);
    gen_e * z.u + gen_ie * z.v + gen_h * z.w
}

/// Same generator computed as `Π_su(2)(g⁻¹ Z g)`.
pub fn dressing_inf_gen_projected(g: &SU2El, z: &BAlgVec) -> Su2Vec {
    let m = g.inverse().to_matrix() * z.to_matrix() * g.to_matrix();
    project_unchecked(&m).0
}

/// Element of the stabilizer `B_θ` of the leaf `O_θ`: `[[1, d(sin θ + i cos θ)], [0, 1]]`.
pub fn stabilizer_element(theta: f64, d: f64) -> BEl {
    BEl::new_unchecked(1.0, d * theta.sin(), d * theta.cos())
}
