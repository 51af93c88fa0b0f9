use crate::error::{Error, Result};
use num_complex::Complex64;

/// Principal branch of the Lambert W function, `W e^W = z`, by Halley
/// iteration.
pub fn lambert_w0(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let e = std::f64::consts::E;
    let bp = z * e + 1.0;
    let mut w = if z.norm() > 3.0 {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    } else if bp.norm() < 0.3 {
        let p = (bp * 2.0).sqrt();
        -1.0 + p - p * p / 3.0 + p * p * p * (11.0 / 72.0)
    } else {
        (z + 1.0).ln()
    };
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (wp1 * 2.0);
        let dw = f / denom;
        w -= dw;
        if dw.norm() <= 4.0 * f64::EPSILON * w.norm().max(1e-300) {
            return Ok(w);
        }
    }
    Err(Error::NoConvergence(format!("Lambert W0 at z = {z}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_points() {
        assert_eq!(lambert_w0(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        let w = lambert_w0(Complex64::new(std::f64::consts::E, 0.0)).unwrap();
        assert!((w - 1.0).norm() < 1e-15);
        let w = lambert_w0(Complex64::new(-1.0 / std::f64::consts::E + 1e-12, 0.0)).unwrap();
        assert!((w + 1.0).norm() < 1e-5);
    }

    #[test]
    fn residual_at_predictor_argument() {
        // alpha_p for a = 2 (A = 1), q(a-0) = 1, p = 10
        let p = 10.0;
        let alpha = Complex64::new(0.0, (2.0 * p + 0.5) * std::f64::consts::PI) / (2.0 * std::f64::consts::E);
        let w = lambert_w0(alpha).unwrap();
        assert!((w * w.exp() - alpha).norm() <= 1e-13);
        assert!(w.im.abs() < std::f64::consts::PI);
    }

    proptest! {
        #[test]
        fn defining_equation(re in -50.0f64..1e4, im in -1e4f64..1e4) {
            let z = Complex64::new(re, im);
            prop_assume!(!(im == 0.0 && re < -1.0 / std::f64::consts::E));
            let w = lambert_w0(z).unwrap();
            prop_assert!((w * w.exp() - z).norm() <= 1e-14 * z.norm().max(1.0));
            // principal branch: Im W in (-pi, pi), Re W > -1 away from the cut
            prop_assert!(w.im.abs() < std::f64::consts::PI);
        }
    }
}
