//! Fixed-energy radial scattering in the complex angular-momentum plane.
//!
//! The radial equation at energy k² is
//!
//! ```text
//! -u'' + ((nu^2 - 1/4)/r^2 + q(r)) u = k^2 u,   r > 0,
//! ```
//!
//! with `nu` an arbitrary complex number. This crate computes the regular
//! solution `phi ~ r^(nu+1/2)` at the origin, the Jost solutions
//! `f± ~ e^(±ikr)` at infinity, the Jost functions
//! `alpha = (i/2) W(phi, f-)` and `beta = -(i/2) W(phi, f+)`, the Regge
//! interpolation `sigma = e^(i pi (nu+1/2)) alpha/beta`, phase shifts, and the
//! Regge poles (zeros of `beta` in the first quadrant).
//!
//! Modules:
//! - [`specfun`]: gamma, Bessel/Hankel of complex order, K0, Legendre Q, Lambert W.
//! - [`potentials`]: potential models with decay/support/analyticity metadata.
//! - [`radial`]: regular and Jost solutions with log-scaled storage.
//! - [`scattering`]: Jost functions, phase shifts, difference functionals.
//! - [`regge`]: argument-principle pole search and the compact-support predictor.

pub mod error;
pub mod identities;
pub mod ode;
mod par;
pub mod potentials;
pub mod quad;
pub mod radial;
pub mod regge;
pub mod scattering;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex angular momentum.
pub type ComplexOrder = Complex64;
