//! Poisson-Lie T-duality on SL(2,ℂ) = SU(2)·B.
//!
//! The crate provides the Lie algebra bases and pairings, the Iwasawa
//! factorization and dressing actions, three dual Hamiltonian B-spaces with
//! their momentum maps, exact AKS solutions and an independent RK4 oracle.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod error;
pub mod groups;
pub mod phase;
pub mod sampling;
pub mod verify;
pub mod aks;
pub mod oracle;

pub use algebra::{BAlgVec, BCov, Mat2C, Su2Cov, Su2Vec, C64};
pub use error::{Error, Result};
pub use groups::{BEl, OrbitClass, SU2El};
