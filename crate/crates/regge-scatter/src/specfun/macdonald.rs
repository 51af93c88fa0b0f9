use crate::quad::integrate_real;

/// Macdonald function `K_0(x) = int_0^inf e^{-x cosh t} dt`, `x > 0`.
///
/// The integral is truncated where `e^{-x (cosh t - 1)} < 1e-18`.
pub fn macdonald_k0(x: f64) -> f64 {
    assert!(x > 0.0, "macdonald_k0 requires x > 0");
    let t_max = (1.0 + 41.5 / x).acosh();
    let v = integrate_real(|t| (-x * (t.cosh() - 1.0)).exp(), 0.0, t_max, 1e-300, 1e-15)
        .expect("smooth integrand");
    v * (-x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Power series oracle: K0 = -(ln(x/2) + gamma) I0 + sum (x^2/4)^k H_k / (k!)^2.
    fn k0_series(x: f64) -> f64 {
        let euler = 0.577_215_664_901_532_9;
        let q = x * x / 4.0;
        let (mut t, mut i0, mut s, mut h) = (1.0, 1.0, 0.0, 0.0);
        for k in 1..60 {
            let kf = k as f64;
            t *= q / (kf * kf);
            h += 1.0 / kf;
            i0 += t;
            s += t * h;
        }
        -((x / 2.0).ln() + euler) * i0 + s
    }

    #[test]
    fn value_at_one() {
        assert!((macdonald_k0(1.0) - 0.421_024_438_2).abs() < 1e-10);
        for x in [0.05, 0.5, 1.0, 3.0, 6.0] {
            let want = k0_series(x);
            // the series oracle itself loses about e^{2x} relative digits
            assert!((macdonald_k0(x) - want).abs() < 1e-15 * (2.0 * x).exp() * want, "x = {x}");
        }
    }

    #[test]
    fn bound_and_monotonicity() {
        for x in [0.1, 0.5, 1.0, 2.0, 4.0, 20.0] {
            assert!(macdonald_k0(x) <= (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp());
        }
        let v: Vec<f64> = [0.5, 1.0, 2.0, 4.0].iter().map(|&x| macdonald_k0(x)).collect();
        assert!(v.windows(2).all(|w| w[1] < w[0]));
        assert!(v.iter().all(|&k| k > 0.0));
    }
}
