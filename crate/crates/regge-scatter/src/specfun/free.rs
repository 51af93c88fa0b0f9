use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

use super::bessel::{bessel_j_with_deriv_scaled, hankel_with_deriv_scaled};
use super::{exp_i_pi, ln_gamma, HankelKind, Scaled};

/// Free solutions `u = sqrt(pi r/2) J_nu(r)`, `v = -i sqrt(pi r/2) H1_nu(r)`
/// and their derivatives; `W(u, v) = 1`.
#[derive(Clone, Copy, Debug)]
pub struct FreeSolutions {
    pub u: Complex64,
    pub du: Complex64,
    pub v: Complex64,
    pub dv: Complex64,
}

/// `sqrt(pi x/2) C(x)` and its derivative from `(C, C')`.
fn riccati(c: Scaled, dc: Scaled, x: f64) -> (Scaled, Scaled) {
    let s = (PI * x / 2.0).sqrt();
    let f = c.mul_c(Complex64::new(s, 0.0));
    let df = c.mul_c(Complex64::new(s / (2.0 * x), 0.0)) + dc.mul_c(Complex64::new(s, 0.0));
    (f, df)
}

/// `(u, u')` in scaled form at argument `x`.
pub fn free_u_scaled(nu: Complex64, x: f64) -> Result<(Scaled, Scaled)> {
    let (j, dj) = bessel_j_with_deriv_scaled(nu, x)?;
    Ok(riccati(j, dj, x))
}

/// Free solutions at radius `r`.
pub fn free_solutions(nu: Complex64, r: f64) -> Result<FreeSolutions> {
    let (u, du) = free_u_scaled(nu, r)?;
    let (h, dh) = hankel_with_deriv_scaled(HankelKind::First, nu, r)?;
    let (v, dv) = riccati(h, dh, r);
    let mi = Complex64::new(0.0, -1.0);
    Ok(FreeSolutions { u: u.to_c(), du: du.to_c(), v: v.mul_c(mi).to_c(), dv: dv.mul_c(mi).to_c() })
}

/// Free Jost solution `f0±(kr, nu)` and its `r`-derivative in scaled form,
/// `f0± = e^{±i(nu+1/2)pi/2} sqrt(pi x/2) H^(1,2)_nu(x)` with `x = k r`.
/// `sign > 0` selects `f0+`.
pub fn free_jost_solution(sign: i32, nu: Complex64, k: f64, r: f64) -> Result<(Scaled, Scaled)> {
    let x = k * r;
    let kind = if sign > 0 { HankelKind::First } else { HankelKind::Second };
    let (h, dh) = hankel_with_deriv_scaled(kind, nu, x)?;
    let (f, df) = riccati(h, dh, x);
    let ph = exp_i_pi((nu + 0.5) * (0.5 * sign.signum() as f64));
    Ok((f.mul_c(ph), df.mul_c(ph * k)))
}

/// Free-case closed forms.
#[derive(Clone, Copy, Debug)]
pub struct FreeJost {
    /// `A(nu) = sqrt(2/pi) 2^nu Gamma(nu+1)`.
    pub a: Scaled,
    pub alpha0: Scaled,
    pub beta0: Scaled,
}

impl FreeJost {
    pub fn ln_a(&self) -> Complex64 {
        self.a.ln()
    }
    pub fn ln_alpha0(&self) -> Complex64 {
        self.alpha0.ln()
    }
    pub fn ln_beta0(&self) -> Complex64 {
        self.beta0.ln()
    }
}

/// `A(nu)`, `alpha0(nu) = A e^{-i(nu+1/2)pi/2}/2`, `beta0(nu) = A e^{i(nu+1/2)pi/2}/2`.
pub fn free_jost_functions(nu: Complex64) -> Result<FreeJost> {
    if nu.re <= -1.0 {
        return Err(Error::Domain(format!("free Jost functions need Re nu > -1, got {nu}")));
    }
    let ln_a = 0.5 * (2.0 / PI).ln() + nu * 2f64.ln() + ln_gamma(nu + 1.0)?;
    let a = Scaled::from_log(ln_a);
    let half = Complex64::new(0.5, 0.0);
    let alpha0 = a.mul_c(exp_i_pi(-(nu + 0.5) * 0.5) * half);
    let beta0 = a.mul_c(exp_i_pi((nu + 0.5) * 0.5) * half);
    Ok(FreeJost { a, alpha0, beta0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_wronskian() {
        for r in [0.5, 2.0, 10.0] {
            let s = free_solutions(c(1.0, 1.0), r).unwrap();
            let w = s.u * s.dv - s.du * s.v;
            assert!((w - 1.0).norm() < 1e-9, "r = {r}: {w}");
        }
    }

    #[test]
    fn small_r_behaviour_of_u() {
        let nu = c(2.0, 0.0);
        let r = 1e-3;
        let s = free_solutions(nu, r).unwrap();
        let a = free_jost_functions(nu).unwrap().a.to_c();
        let want = r.powf(2.5) / a;
        assert!((s.u - want).norm() < 1e-5 * want.norm());
    }

    #[test]
    fn jost_solution_at_large_r() {
        let (f, _) = free_jost_solution(1, c(0.5, 0.0), 1.0, 25.0).unwrap();
        let want = Complex64::new(0.0, 25.0).exp();
        assert!((f.to_c() - want).norm() < 1e-2);
        // order 1/2 is exact: f0+ = e^{ir}
        assert!((f.to_c() - want).norm() < 1e-12);
    }

    #[test]
    fn jost_solution_wronskian_and_symmetries() {
        for nu in [c(0.3, 0.0), c(2.0, 1.0), c(1.5, -3.0)] {
            for r in [0.7, 4.0] {
                let (fp, dfp) = free_jost_solution(1, nu, 1.0, r).unwrap();
                let (fm, dfm) = free_jost_solution(-1, nu, 1.0, r).unwrap();
                let w = (fp * dfm - dfp * fm).to_c();
                assert!((w - c(0.0, -2.0)).norm() < 1e-9, "nu = {nu}, r = {r}: {w}");
                // f0- (r, nu) = conj f0+ (r, conj nu)
                let (fpc, _) = free_jost_solution(1, nu.conj(), 1.0, r).unwrap();
                assert!((fm.to_c() - fpc.to_c().conj()).norm() < 1e-12 * fm.abs());
                // evenness in nu
                let (fpn, _) = free_jost_solution(1, -nu, 1.0, r).unwrap();
                assert!((fpn.to_c() - fp.to_c()).norm() < 1e-9 * fp.abs());
            }
        }
    }

    #[test]
    fn free_jost_closed_forms() {
        let fj = free_jost_functions(c(0.5, 0.0)).unwrap();
        assert!((fj.a.to_c() - 1.0).norm() < 1e-14);
        assert!((fj.beta0.to_c() - c(0.0, 0.5)).norm() < 1e-14);
        assert!((fj.alpha0.to_c() - c(0.0, -0.5)).norm() < 1e-14);
        for nu in [c(0.5, 0.0), c(2.0, 0.0), c(1.0, 1.0)] {
            let fj = free_jost_functions(nu).unwrap();
            let sigma = exp_i_pi(nu + 0.5) * (fj.alpha0 / fj.beta0).to_c();
            assert!((sigma - 1.0).norm() < 1e-13);
        }
        assert!(free_jost_functions(c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn beta0_never_vanishes() {
        use proptest::prelude::*;
        use proptest::test_runner::TestRunner;
        let mut runner = TestRunner::deterministic();
        runner
            .run(&((-0.99f64..40.0), (-30.0f64..30.0)), |(re, im)| {
                let b = free_jost_functions(c(re, im)).unwrap().beta0;
                prop_assert!(b.abs() > 0.0 || b.ln_abs().is_finite());
                Ok(())
            })
            .unwrap();
    }
}
