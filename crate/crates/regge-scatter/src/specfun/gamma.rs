use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

use super::sin_pi;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Lanczos log-gamma, valid for Re z >= 1/2.
fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, &ck) in LANCZOS.iter().enumerate().skip(1) {
        a += ck / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// `ln Gamma(z)`. For Re z > 0 this is the branch continuous from the
/// positive real axis; elsewhere it is a logarithm of Gamma(z) with
/// unspecified imaginary part modulo 2 pi.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::GammaPole(z.re));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_lanczos(z))
    } else if z.re > 0.0 {
        Ok(ln_gamma_lanczos(z + 1.0) - z.ln())
    } else {
        let s = sin_pi(z);
        Ok(PI.ln() - s.ln() - ln_gamma_lanczos(1.0 - z))
    }
}

/// Complex gamma function.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::GammaPole(z.re));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_lanczos(z).exp())
    } else {
        Ok(PI / (sin_pi(z) * ln_gamma_lanczos(1.0 - z).exp()))
    }
}

/// `1/Gamma(z)`, entire (zero at the non-positive integers).
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        (-ln_gamma_lanczos(z)).exp()
    } else {
        sin_pi(z) * ln_gamma_lanczos(1.0 - z).exp() / PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: Stirling series at z + 30 and downward recurrence.
    fn ln_gamma_stirling(z: Complex64) -> Complex64 {
        let n = 30 + (-z.re).max(0.0).ceil() as usize;
        let w = z + n as f64;
        // Bernoulli B_{2k} / (2k (2k-1))
        let coef = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360360.0,
            1.0 / 156.0,
            -3617.0 / 122400.0,
        ];
        let mut s = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
        let w2 = w * w;
        let mut p = w;
        for c in coef {
            s += c / p;
            p *= w2;
        }
        let mut shift = Complex64::new(0.0, 0.0);
        for k in 0..n {
            shift += (z + k as f64).ln();
        }
        s - shift
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn trivial_values() {
        assert!(close(gamma(Complex64::new(1.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0), 1e-14));
        assert!(close(
            gamma(Complex64::new(0.5, 0.0)).unwrap(),
            Complex64::new(PI.sqrt(), 0.0),
            1e-14
        ));
        assert!(close(gamma(Complex64::new(4.0, 0.0)).unwrap(), Complex64::new(6.0, 0.0), 1e-14));
    }

    #[test]
    fn poles_are_errors() {
        for n in [0.0, -1.0, -7.0] {
            assert_eq!(gamma(Complex64::new(n, 0.0)), Err(Error::GammaPole(n)));
            assert_eq!(rgamma(Complex64::new(n, 0.0)), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn matches_stirling_oracle_up_to_200() {
        let pts = [
            Complex64::new(0.7, 0.2),
            Complex64::new(3.0, 2.0),
            Complex64::new(12.5, -30.0),
            Complex64::new(150.3, 40.0),
            Complex64::new(1.0, 120.0),
            Complex64::new(-3.3, 4.1),
            Complex64::new(-40.5, 0.25),
        ];
        for z in pts {
            let want = ln_gamma_stirling(z).exp();
            let got = gamma(z).unwrap();
            assert!(close(got, want, 1e-12), "z = {z}: {got} vs {want}");
        }
        for z in &pts[..5] {
            let d = ln_gamma(*z).unwrap() - ln_gamma_stirling(*z);
            assert!(d.norm() < 1e-12 * (1.0 + ln_gamma_stirling(*z).norm()), "z = {z}");
        }
    }

    #[test]
    fn ln_gamma_is_continuous_near_small_real_part() {
        let a = ln_gamma(Complex64::new(0.4999999, 7.0)).unwrap();
        let b = ln_gamma(Complex64::new(0.5000001, 7.0)).unwrap();
        assert!((a - b).norm() < 1e-5);
    }

    proptest! {
        #[test]
        fn recurrence(re in -20.0f64..20.0, im in -20.0f64..20.0) {
            let z = Complex64::new(re, im);
            prop_assume!((z - z.re.round()).norm() > 1e-3 || z.re > 0.5);
            let g = gamma(z).unwrap();
            let g1 = gamma(z + 1.0).unwrap();
            prop_assert!(close(g1, z * g, 1e-11));
            prop_assert!(close(rgamma(z) * g, Complex64::new(1.0, 0.0), 1e-12));
        }

        #[test]
        fn reflection(re in -5.0f64..5.0, im in -5.0f64..5.0) {
            let z = Complex64::new(re, im);
            prop_assume!((z - z.re.round()).norm() > 1e-3);
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
            prop_assert!(close(lhs, PI / sin_pi(z), 1e-12));
        }
    }
}
