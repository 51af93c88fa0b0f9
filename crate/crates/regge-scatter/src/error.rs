use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    GammaPole(f64),
    #[error("argument out of working range: {0}")]
    Range(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("near a Regge pole: |beta/beta0| = {0:e}")]
    NearPole(f64),
    #[error("phase-shift branch tracking failed at nu = {0}")]
    Branch(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("contour passes through a zero after {0} perturbations")]
    ContourZero(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
