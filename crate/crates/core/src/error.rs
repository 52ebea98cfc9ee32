use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not traceless: |trace| = {trace:e}")]
    NotTraceless { trace: f64 },

    #[error("determinant must be 1: |det - 1| = {defect:e}")]
    DeterminantNotOne { defect: f64 },

    #[error("SU(2) element is not unitary: |alpha|^2 + |beta|^2 - 1 = {defect:e}")]
    NotUnitary { defect: f64 },

    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("normalization violated: {constraint} (det of momentum image = {det})")]
    Normalization { constraint: &'static str, det: f64 },

    #[error("point lies on a zero-dimensional dressing orbit (|beta| = {beta_abs:e})")]
    DegenerateOrbit { beta_abs: f64 },

    #[error("state is not on the symplectic leaf theta = {theta}: {detail}")]
    OffLeaf { theta: f64, detail: String },

    #[error("state does not match system {expected}")]
    SystemMismatch { expected: &'static str },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sample grid is not uniform at index {index}")]
    NonUniformGrid { index: usize },

    #[error("integration blew up at t = {t}: |state| = {norm:e}")]
    BlowUp { t: f64, norm: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
