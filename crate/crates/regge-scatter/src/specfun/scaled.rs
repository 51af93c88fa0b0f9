use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A complex number stored as `mant * e^scale`, for quantities whose
/// magnitude leaves the double range (Gamma(nu+1), r^(nu+1/2), beta(nu)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    pub mant: Complex64,
    pub scale: f64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { mant: Complex64::new(0.0, 0.0), scale: 0.0 };
    pub const ONE: Scaled = Scaled { mant: Complex64::new(1.0, 0.0), scale: 0.0 };

    pub fn new(mant: Complex64, scale: f64) -> Self {
        Scaled { mant, scale }.normalized()
    }

    pub fn from_c(z: Complex64) -> Self {
        Scaled { mant: z, scale: 0.0 }
    }

    /// `e^l` for a complex logarithm `l`.
    pub fn from_log(l: Complex64) -> Self {
        Scaled { mant: Complex64::from_polar(1.0, l.im), scale: l.re }
    }

    fn normalized(self) -> Self {
        let n = self.mant.norm();
        if n == 0.0 || !n.is_finite() {
            return if n == 0.0 { Scaled::ZERO } else { self };
        }
        if (1e-8..1e8).contains(&n) {
            return self;
        }
        let l = n.ln();
        Scaled { mant: self.mant / n, scale: self.scale + l }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.norm() == 0.0
    }

    /// Natural log (principal phase).
    pub fn ln(&self) -> Complex64 {
        self.mant.ln() + self.scale
    }

    pub fn ln_abs(&self) -> f64 {
        self.mant.norm().ln() + self.scale
    }

    pub fn abs(&self) -> f64 {
        self.mant.norm() * self.scale.exp()
    }

    /// Convert to an ordinary complex number (may overflow or underflow).
    pub fn to_c(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let n = self.mant.norm();
        let l = n.ln() + self.scale;
        (self.mant / n) * l.exp()
    }

    pub fn conj(&self) -> Self {
        Scaled { mant: self.mant.conj(), scale: self.scale }
    }

    pub fn mul_c(self, z: Complex64) -> Self {
        Scaled::new(self.mant * z, self.scale)
    }

    pub fn mul_exp(self, l: f64) -> Self {
        Scaled { mant: self.mant, scale: self.scale + l }
    }

    pub fn is_finite(&self) -> bool {
        self.mant.re.is_finite() && self.mant.im.is_finite() && self.scale.is_finite()
    }
}

impl From<Complex64> for Scaled {
    fn from(z: Complex64) -> Self {
        Scaled::from_c(z)
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, o: Scaled) -> Scaled {
        Scaled::new(self.mant * o.mant, self.scale + o.scale)
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, o: Scaled) -> Scaled {
        Scaled::new(self.mant / o.mant, self.scale - o.scale)
    }
}

impl Add for Scaled {
    type Output = Scaled;
    fn add(self, o: Scaled) -> Scaled {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let s = self.scale.max(o.scale);
        let m = self.mant * (self.scale - s).exp() + o.mant * (o.scale - s).exp();
        Scaled::new(m, s)
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        Scaled { mant: -self.mant, scale: self.scale }
    }
}

impl Sub for Scaled {
    type Output = Scaled;
    fn sub(self, o: Scaled) -> Scaled {
        self + (-o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survives_overflow_range() {
        let big = Scaled::from_log(Complex64::new(800.0, 0.3));
        let small = Scaled::from_log(Complex64::new(-790.0, -0.3));
        let p = (big * small).to_c();
        let want = Complex64::new(10.0, 0.0).exp();
        assert!((p - want).norm() < 1e-10 * want.norm());
        let q = big / big;
        assert!((q.to_c() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn addition_aligns_scales() {
        let a = Scaled::new(Complex64::new(1.0, 0.0), 700.0);
        let b = Scaled::new(Complex64::new(2.0, 0.0), 700.0);
        let s = a + b;
        assert!((s.ln_abs() - (700.0 + 3f64.ln())).abs() < 1e-12);
        assert!((a - a).is_zero());
    }
}
