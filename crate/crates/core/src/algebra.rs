//! The real Lie algebra sl(2,C) split as su(2) ⊕ b.
//!
//! Elements of su(2) are stored as coordinates in the basis
//!
//! ```text
//! X1 = [[0, i], [i, 0]]   X2 = [[0, 1], [-1, 0]]   X3 = [[i, 0], [0, -i]]
//! ```
//!
//! and elements of b (upper triangular, real traceless diagonal) in the basis
//! `E = [[0,1],[0,0]]`, `iE = [[0,i],[0,0]]`, `H = diag(1,-1)`. The two halves
//! are isotropic for `(X, Y) = -1/4 Im κ(X, Y)` and dual to each other through
//! it, which is what identifies su(2) with b*.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance on structural input checks (tracelessness, unit determinant).
pub const INPUT_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// A 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2C {
    pub m11: C64,
    pub m12: C64,
    pub m21: C64,
    pub m22: C64,
}

impl Mat2C {
    pub const fn new(m11: C64, m12: C64, m21: C64, m22: C64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn from_real(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self::new(m11.into(), m12.into(), m21.into(), m22.into())
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn diag(d1: C64, d2: C64) -> Self {
        Self::new(d1, ZERO, ZERO, d2)
    }

    pub fn trace(&self) -> C64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> C64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(self.m11.conj(), self.m21.conj(), self.m12.conj(), self.m22.conj())
    }

    /// Inverse through the adjugate. Callers guarantee a nonzero determinant.
    pub fn inverse(&self) -> Self {
        let d = self.det();
        Self::new(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// `g X g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        *g * *self * g.inverse()
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn ensure_traceless(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite("matrix"));
        }
        let trace = self.trace().norm();
        if trace > INPUT_TOL {
            return Err(Error::NotTraceless { trace });
        }
        Ok(())
    }
}

impl Add for Mat2C {
    type Output = Mat2C;
    fn add(self, o: Mat2C) -> Mat2C {
        Mat2C::new(self.m11 + o.m11, self.m12 + o.m12, self.m21 + o.m21, self.m22 + o.m22)
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;
    fn sub(self, o: Mat2C) -> Mat2C {
        Mat2C::new(self.m11 - o.m11, self.m12 - o.m12, self.m21 - o.m21, self.m22 - o.m22)
    }
}

impl Neg for Mat2C {
    type Output = Mat2C;
    fn neg(self) -> Mat2C {
        self.scale_re(-1.0)
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, o: Mat2C) -> Mat2C {
        Mat2C::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}

macro_rules! real_triple {
    ($name:ident, $a:ident, $b:ident, $c:ident) => {
        impl $name {
            pub const fn new($a: f64, $b: f64, $c: f64) -> Self {
                Self { $a, $b, $c }
            }

            pub const fn zero() -> Self {
                Self::new(0.0, 0.0, 0.0)
            }

            pub fn from_array(v: [f64; 3]) -> Self {
                Self::new(v[0], v[1], v[2])
            }

            pub fn to_array(&self) -> [f64; 3] {
                [self.$a, self.$b, self.$c]
            }

            pub fn scale(&self, s: f64) -> Self {
                Self::new(self.$a * s, self.$b * s, self.$c * s)
            }

            /// Largest absolute coordinate.
            pub fn max_abs(&self) -> f64 {
                self.$a.abs().max(self.$b.abs()).max(self.$c.abs())
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                (*self - *other).max_abs()
            }

            pub fn is_finite(&self) -> bool {
                self.to_array().iter().all(|x| x.is_finite())
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, o: $name) -> $name {
                $name::new(self.$a + o.$a, self.$b + o.$b, self.$c + o.$c)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, o: $name) {
                *self = *self + o;
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, o: $name) -> $name {
                $name::new(self.$a - o.$a, self.$b - o.$b, self.$c - o.$c)
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scale(-1.0)
            }
        }

        impl Mul<f64> for $name {
            type Output = $name;
            fn mul(self, s: f64) -> $name {
                self.scale(s)
            }
        }

        impl Mul<$name> for f64 {
            type Output = $name;
            fn mul(self, v: $name) -> $name {
                v.scale(self)
            }
        }
    };
}

/// Coordinates of an element of su(2) in the basis {X1, X2, X3}.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Su2Vec {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}
real_triple!(Su2Vec, a1, a2, a3);

impl Su2Vec {
    pub const X1: Su2Vec = Su2Vec::new(1.0, 0.0, 0.0);
    pub const X2: Su2Vec = Su2Vec::new(0.0, 1.0, 0.0);
    pub const X3: Su2Vec = Su2Vec::new(0.0, 0.0, 1.0);

    /// `cos θ X1 + sin θ X2`.
    pub fn x_theta(theta: f64) -> Su2Vec {
        Su2Vec::new(theta.cos(), theta.sin(), 0.0)
    }

    pub fn to_matrix(&self) -> Mat2C {
        Mat2C::new(
            C64::new(0.0, self.a3),
            C64::new(self.a2, self.a1),
            C64::new(-self.a2, self.a1),
            C64::new(0.0, -self.a3),
        )
    }

    /// Reads the su(2) coordinates of a matrix assumed antihermitian traceless.
    pub fn from_matrix_unchecked(m: &Mat2C) -> Su2Vec {
        Su2Vec::new(m.m21.im, -m.m21.re, m.m11.im)
    }

    /// Determinant of the matrix form, `a1² + a2² + a3²`.
    pub fn det(&self) -> f64 {
        self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    pub fn norm(&self) -> f64 {
        self.det().sqrt()
    }

    pub fn dot(&self, o: &Su2Vec) -> f64 {
        self.a1 * o.a1 + self.a2 * o.a2 + self.a3 * o.a3
    }

    /// Matrix commutator, which closes on su(2): `[X1, X2] = -2 X3` and cyclic.
    pub fn bracket(&self, o: &Su2Vec) -> Su2Vec {
        let c = Su2Vec::new(
            self.a2 * o.a3 - self.a3 * o.a2,
            self.a3 * o.a1 - self.a1 * o.a3,
            self.a1 * o.a2 - self.a2 * o.a1,
        );
        c * -2.0
    }
}

/// Coordinates of an element of b in the basis {E, iE, H}.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BAlgVec {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}
real_triple!(BAlgVec, u, v, w);

impl BAlgVec {
    pub const E: BAlgVec = BAlgVec::new(1.0, 0.0, 0.0);
    pub const IE: BAlgVec = BAlgVec::new(0.0, 1.0, 0.0);
    pub const H: BAlgVec = BAlgVec::new(0.0, 0.0, 1.0);

    pub fn to_matrix(&self) -> Mat2C {
        Mat2C::new(
            C64::new(self.w, 0.0),
            C64::new(self.u, self.v),
            ZERO,
            C64::new(-self.w, 0.0),
        )
    }

    /// Reads the b coordinates of a matrix assumed upper triangular with real
    /// traceless diagonal.
    pub fn from_matrix_unchecked(m: &Mat2C) -> BAlgVec {
        BAlgVec::new(m.m12.re, m.m12.im, m.m11.re)
    }
}

/// Coordinates in the dual basis {x1, x2, x3} of su(2)*.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Su2Cov {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}
real_triple!(Su2Cov, c1, c2, c3);

impl Su2Cov {
    pub fn pair(&self, x: &Su2Vec) -> f64 {
        self.c1 * x.a1 + self.c2 * x.a2 + self.c3 * x.a3
    }
}

/// Coordinates in the dual basis {e, ẽ, h} of b*.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BCov {
    pub ce: f64,
    pub cet: f64,
    pub ch: f64,
}
real_triple!(BCov, ce, cet, ch);

impl BCov {
    pub fn pair(&self, z: &BAlgVec) -> f64 {
        self.ce * z.u + self.cet * z.v + self.ch * z.w
    }
}

/// Killing form of sl(2,C), `κ(X, Y) = 4 tr(XY)`.
pub fn killing(x: &Mat2C, y: &Mat2C) -> Result<C64> {
    x.ensure_traceless()?;
    y.ensure_traceless()?;
    Ok((*x * *y).trace() * 4.0)
}

/// The invariant form `(X, Y) = -1/4 Im κ(X, Y)` for which su(2) and b are
/// isotropic.
pub fn pair_sl2(x: &Mat2C, y: &Mat2C) -> Result<f64> {
    Ok(-0.25 * killing(x, y)?.im)
}

/// `(X, Z)` for `X ∈ su(2)`, `Z ∈ b`, from the basis table.
pub fn pair_su2_b(x: &Su2Vec, z: &BAlgVec) -> f64 {
    -x.a1 * z.u + x.a2 * z.v - 2.0 * x.a3 * z.w
}

/// ψ: su(2) → b*, `ψ(X1) = -e`, `ψ(X2) = ẽ`, `ψ(X3) = -2h`.
pub fn psi_map(x: &Su2Vec) -> BCov {
    BCov::new(-x.a1, x.a2, -2.0 * x.a3)
}

pub fn psi_inv(eta: &BCov) -> Su2Vec {
    Su2Vec::new(-eta.ce, eta.cet, -0.5 * eta.ch)
}

/// ψ̄*: su(2)* → b, `x1 ↦ -E`, `x2 ↦ iE`, `x3 ↦ -H/2`.
pub fn psi_star(eta: &Su2Cov) -> BAlgVec {
    BAlgVec::new(-eta.c1, eta.c2, -0.5 * eta.c3)
}

pub fn psi_star_inv(z: &BAlgVec) -> Su2Cov {
    Su2Cov::new(-z.u, z.v, -2.0 * z.w)
}

/// Splits a traceless matrix into its su(2) and b components.
pub fn project_sl2(z: &Mat2C) -> Result<(Su2Vec, BAlgVec)> {
    z.ensure_traceless()?;
    Ok(project_unchecked(z))
}

pub(crate) fn project_unchecked(z: &Mat2C) -> (Su2Vec, BAlgVec) {
    let k = Su2Vec::from_matrix_unchecked(z);
    let b = BAlgVec::from_matrix_unchecked(&(*z - k.to_matrix()));
    (k, b)
}

/// Metric lowering of κ restricted to su(2): `κ(X_i, X_j) = -8 δ_ij`.
pub fn kappa_hat_su2(x: &Su2Vec) -> Su2Cov {
    Su2Cov::new(-8.0 * x.a1, -8.0 * x.a2, -8.0 * x.a3)
}

/// Multiplication by `i` carries su(2) onto the hermitian traceless matrices.
pub(crate) fn times_i(m: &Mat2C) -> Mat2C {
    m.scale(I)
}
