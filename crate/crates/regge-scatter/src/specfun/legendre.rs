use crate::error::{Error, Result};
use crate::quad::integrate;
use num_complex::Complex64;

/// Legendre function of the second kind `Q_mu(x)`, `x > 1`, `Re mu > -1`,
/// from `Q_mu(x) = int_0^inf (x + sqrt(x^2-1) cosh t)^{-mu-1} dt`.
pub fn legendre_q0(mu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("legendre_q0 needs x > 1, got {x}")));
    }
    if mu.re <= -1.0 {
        return Err(Error::Domain(format!("legendre_q0 needs Re mu > -1, got {mu}")));
    }
    let s = (x * x - 1.0).sqrt();
    let e = mu + 1.0;
    let ln_b0 = (x + s).ln();
    // truncate where the integrand has fallen by e^{-45} relative to t = 0
    let target = ln_b0 + 45.0 / e.re;
    let t_max = ((target.exp() - x) / s).max(1.0).acosh();
    let f = |t: f64| (-e * ((x + s * t.cosh()).ln() - ln_b0)).exp();
    let v = integrate(f, 0.0, t_max, 0.0, 1e-13)?;
    Ok(v * (-e * ln_b0).exp())
}
