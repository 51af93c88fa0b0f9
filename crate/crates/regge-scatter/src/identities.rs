//! Integral identities and bounds for Bessel-type functions, each evaluated
//! two independent ways.

use crate::error::Result;
use crate::quad::{adaptive, integrate};
use crate::specfun::{
    bessel_j, gamma, hankel, hankel_asymptotic, legendre_q0, ln_gamma, macdonald_k0, modified_i, sin_pi, HankelKind,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Two evaluations of the same quantity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sides {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl Sides {
    /// `|lhs - rhs| / max(|lhs|, |rhs|)`.
    pub fn residual(&self) -> f64 {
        let d = (self.lhs - self.rhs).norm();
        let s = self.lhs.norm().max(self.rhs.norm());
        if s == 0.0 {
            d
        } else {
            d / s
        }
    }
}

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `|H1_{iy}(r)|^2 = (8 e^{pi y}/pi^2) int_0^inf K0(2 r sinh t) cos(2 t y) dt`.
pub fn nicholson(y: f64, r: f64) -> Result<Sides> {
    let h = hankel(HankelKind::First, Complex64::new(0.0, y), r)?;
    // K0(x) < e^{-x}: stop where 2 r sinh t = 50
    let t_max = (25.0 / r).asinh();
    let f = |t: f64| cr(if t == 0.0 { 0.0 } else { macdonald_k0(2.0 * r * t.sinh()) * (2.0 * t * y).cos() });
    let q = adaptive(f, 0.0, t_max, &[], 1e-15, 1e-13, 4000);
    Ok(Sides { lhs: cr(h.norm_sqr()), rhs: q.value * (8.0 * (PI * y).exp() / (PI * PI)) })
}

/// `K_nu(R)` for `0 < Re nu < 1`, non-integer, from `I_{±nu}`.
fn macdonald_k(nu: Complex64, x: f64) -> Result<Complex64> {
    let ip = modified_i(nu, x)?.value;
    let im = modified_i(-nu, x)?.value;
    Ok((im - ip) * (PI / 2.0) / sin_pi(nu))
}

/// `J_nu(ir) H1_nu(iR) = -(2i/pi) I_nu(r) K_nu(R)
///   = -(2i/pi) int_0^inf e^{-(r+R) cosh x} I_{2 nu}(2 sqrt(rR) sinh x) dx`,
/// for `0 < Re nu < 1` and `0 < r < R`.
pub fn buchholz(nu: Complex64, r: f64, big_r: f64) -> Result<Sides> {
    let lhs = Complex64::new(0.0, -2.0 / PI) * modified_i(nu, r)?.value * macdonald_k(nu, big_r)?;
    let g = 2.0 * (r * big_r).sqrt();
    // beyond the series range of I the integrand is below e^{-(r+R) cosh x + z}
    let x_max = (30.0 / g).asinh();
    let f = |x: f64| {
        let z = g * x.sinh();
        if z <= 0.0 {
            return cr(0.0);
        }
        modified_i(2.0 * nu, z).map(|v| v.value).unwrap_or(cr(0.0)) * (-(r + big_r) * x.cosh()).exp()
    };
    let rhs = integrate(f, 0.0, x_max, 1e-16, 1e-12)? * Complex64::new(0.0, -2.0 / PI);
    Ok(Sides { lhs, rhs })
}

/// `J_nu(x)` for any `x > 0` (series up to 30, large-argument expansion beyond).
fn bessel_j_any(nu: Complex64, x: f64) -> Result<Complex64> {
    if x <= 30.0 {
        Ok(bessel_j(nu, x)?.value)
    } else {
        Ok(0.5 * (hankel_asymptotic(HankelKind::First, nu, x) + hankel_asymptotic(HankelKind::Second, nu, x)))
    }
}

/// `int_0^inf |J_nu(t)|^2 t^{-delta} dt` in closed form:
/// `Gamma(delta) Gamma(Re nu + (1-delta)/2) /
///  (2^delta |Gamma((delta+1)/2 + i Im nu)|^2 Gamma(Re nu + (1+delta)/2))`.
pub fn bessel_square_moment_closed(nu: Complex64, delta: f64) -> Result<f64> {
    let l = ln_gamma(cr(delta))? + ln_gamma(cr(nu.re + 0.5 * (1.0 - delta)))?
        - delta * 2f64.ln()
        - 2.0 * ln_gamma(Complex64::new(0.5 * (delta + 1.0), nu.im))?.re
        - ln_gamma(cr(nu.re + 0.5 * (1.0 + delta)))?;
    Ok(l.re.exp())
}

/// Quadrature against the closed form, for `0 < delta < 1`.
pub fn bessel_square_moment(nu: Complex64, delta: f64) -> Result<Sides> {
    let rhs = bessel_square_moment_closed(nu, delta)?;
    let t_far = 4000.0;
    let mut breaks: Vec<f64> = (1..(t_far as usize)).map(|k| k as f64).collect();
    breaks.insert(0, 1e-3);
    let f = |t: f64| cr(bessel_j_any(nu, t).map(|j| j.norm_sqr()).unwrap_or(f64::NAN) * t.powf(-delta));
    let body = adaptive(f, 0.0, t_far, &breaks, 1e-14, 1e-12, 40_000).value;
    // |J|^2 ~ (cosh(pi Im nu) + cos(2t - ...))/(pi t); the oscillating part is O(t_far^{-1-delta})
    let tail = (PI * nu.im).cosh() / (PI * delta * t_far.powf(delta));
    Ok(Sides { lhs: body + tail, rhs: cr(rhs) })
}

/// Bound ratios (value / bound, all `<= 1` when the bounds hold) for
/// `|H1_{iy}(r)| <= 2^{3/4} e^{pi y/2} / sqrt(pi r)`,
/// `|H2_{iy}(r)| <= 2^{3/4} e^{-pi y/2} / sqrt(r)`,
/// `|H^{(1,2)}_{iy}(r)| <= (2/sqrt(pi)) (r|y|)^{-1/4} e^{±pi y/2}`.
pub fn hankel_imaginary_order_bounds(y: f64, r: f64) -> Result<[f64; 4]> {
    let nu = Complex64::new(0.0, y);
    let h1 = hankel(HankelKind::First, nu, r)?.norm();
    let h2 = hankel(HankelKind::Second, nu, r)?.norm();
    let e = (PI * y / 2.0).exp();
    let c = 2f64.powf(0.75);
    let s = 2.0 / PI.sqrt() * (r * y.abs()).powf(-0.25);
    Ok([h1 / (c * e / (PI * r).sqrt()), h2 / (c / (e * r.sqrt())), h1 / (s * e), h2 / (s / e)])
}

/// `|J_nu(r) H1_nu(R)|` divided by the explicit Cauchy-Schwarz bound
/// `(1/(pi sqrt(rR))) sqrt(M(2 nu, delta)) sqrt((4rR)^{(delta+1)/2} pi / (2 cos(pi delta/2)))`
/// with `M` the closed-form square moment; `<= 1` when the bound holds.
pub fn bessel_product_bound(nu: Complex64, r: f64, big_r: f64, delta: f64) -> Result<f64> {
    let v = (bessel_j(nu, r)?.value * hankel(HankelKind::First, nu, big_r)?).norm();
    let m = bessel_square_moment_closed(2.0 * nu, delta)?;
    let s = (4.0 * r * big_r).powf(0.5 * (delta + 1.0)) * PI / (2.0 * (PI * delta / 2.0).cos());
    Ok(v / ((m * s).sqrt() / (PI * (r * big_r).sqrt())))
}

/// `int_0^inf e^{-B r} J_nu(r)^2 dr = (1/pi) Q_{nu-1/2}(1 + B^2/2)` for real `nu > -1/2`.
pub fn laplace_bessel_square(nu: f64, b: f64) -> Result<Sides> {
    let r_max = (45.0 / b).min(40.0);
    let f = |r: f64| {
        if r == 0.0 {
            return cr(0.0);
        }
        let j = if r <= 30.0 { bessel_j(cr(nu), r).map(|v| v.value).unwrap_or(cr(f64::NAN)) } else { bessel_j_any(cr(nu), r).unwrap_or(cr(f64::NAN)) };
        j * j * (-b * r).exp()
    };
    let breaks: Vec<f64> = (1..(r_max as usize)).map(|k| k as f64).collect();
    let lhs = adaptive(f, 0.0, r_max, &breaks, 1e-15, 1e-12, 4000).value;
    let rhs = legendre_q0(cr(nu - 0.5), 1.0 + 0.5 * b * b)? / PI;
    Ok(Sides { lhs, rhs })
}

/// Lower bound `|Gamma(x + iy)| >= Gamma(x)/sqrt(cosh(pi y))` for `x >= 1/2`,
/// returned as bound / value (`<= 1` when it holds).
pub fn gamma_modulus_bound(x: f64, y: f64) -> Result<f64> {
    let v = gamma(Complex64::new(x, y))?.norm();
    let b = gamma(cr(x))?.re / (PI * y).cosh().sqrt();
    Ok(b / v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nicholson_identity() {
        for (y, r) in [(0.5, 1.0), (2.0, 0.5), (-1.0, 3.0)] {
            let s = nicholson(y, r).unwrap();
            assert!(s.residual() < 1e-8, "{y} {r}: {s:?}");
        }
    }

    #[test]
    fn buchholz_identity() {
        for (nu, r, rr) in [(cr(0.3), 0.1, 3.0), (Complex64::new(0.6, 0.4), 0.2, 4.0)] {
            let s = buchholz(nu, r, rr).unwrap();
            assert!(s.residual() < 1e-9, "{nu}: {s:?}");
        }
    }

    #[test]
    fn square_moment() {
        let s = bessel_square_moment(Complex64::new(1.0, 0.5), 0.5).unwrap();
        assert!(s.residual() < 1e-5, "{s:?}");
    }

    #[test]
    fn laplace_identity() {
        for nu in [0.5, 2.0, 5.0] {
            let s = laplace_bessel_square(nu, 0.9).unwrap();
            assert!(s.residual() < 1e-9, "{nu}: {s:?}");
        }
    }

    #[test]
    fn bounds_hold() {
        for y in [-4.0, -1.0, 0.5, 2.0] {
            for r in [0.1, 1.0, 5.0, 20.0] {
                for b in hankel_imaginary_order_bounds(y, r).unwrap() {
                    assert!(b <= 1.0, "{y} {r} {b}");
                }
            }
        }
        assert!(bessel_product_bound(Complex64::new(1.5, 1.0), 0.5, 2.0, 0.5).unwrap() <= 1.0);
        assert!(gamma_modulus_bound(0.7, 3.0).unwrap() <= 1.0);
    }
}
