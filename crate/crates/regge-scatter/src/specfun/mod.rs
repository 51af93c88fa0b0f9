//! Special functions of complex order at positive real argument.

mod bessel;
mod dd;
mod free;
mod gamma;
mod lambert;
mod legendre;
mod macdonald;
mod scaled;

pub use bessel::{
    bessel_j_with_deriv_scaled, hankel_with_deriv_scaled,
    bessel_j, bessel_j_scaled, hankel, hankel_asymptotic, hankel_deriv, hankel_scaled, modified_i, HankelKind,
    SeriesResult, MAX_SERIES_X,
};
pub use free::{free_jost_functions, free_jost_solution, free_solutions, free_u_scaled, FreeJost, FreeSolutions};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use lambert::lambert_w0;
pub use legendre::legendre_q0;
pub use macdonald::macdonald_k0;
pub use scaled::Scaled;

use num_complex::Complex64;

/// `sin(pi x)` with exact argument reduction.
pub fn sin_pi_re(x: f64) -> f64 {
    let y = x.rem_euclid(2.0);
    let pi = std::f64::consts::PI;
    if y < 0.25 {
        (pi * y).sin()
    } else if y < 0.75 {
        (pi * (y - 0.5)).cos()
    } else if y < 1.25 {
        -(pi * (y - 1.0)).sin()
    } else if y < 1.75 {
        -(pi * (y - 1.5)).cos()
    } else {
        (pi * (y - 2.0)).sin()
    }
}

/// `cos(pi x)` with exact argument reduction.
pub fn cos_pi_re(x: f64) -> f64 {
    let y = x.rem_euclid(2.0);
    let pi = std::f64::consts::PI;
    if y < 0.25 {
        (pi * y).cos()
    } else if y < 0.75 {
        -(pi * (y - 0.5)).sin()
    } else if y < 1.25 {
        -(pi * (y - 1.0)).cos()
    } else if y < 1.75 {
        (pi * (y - 1.5)).sin()
    } else {
        (pi * (y - 2.0)).cos()
    }
}

/// `sin(pi z)` for complex `z`.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let py = std::f64::consts::PI * z.im;
    Complex64::new(sin_pi_re(z.re) * py.cosh(), cos_pi_re(z.re) * py.sinh())
}

/// `cos(pi z)` for complex `z`.
pub fn cos_pi(z: Complex64) -> Complex64 {
    let py = std::f64::consts::PI * z.im;
    Complex64::new(cos_pi_re(z.re) * py.cosh(), -sin_pi_re(z.re) * py.sinh())
}

/// `e^{i pi z}` for complex `z`, with exact reduction of the real part.
pub fn exp_i_pi(z: Complex64) -> Complex64 {
    let m = (-std::f64::consts::PI * z.im).exp();
    Complex64::new(m * cos_pi_re(z.re), m * sin_pi_re(z.re))
}
