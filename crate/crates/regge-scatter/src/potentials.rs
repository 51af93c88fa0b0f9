//! Radial potential models with the metadata the solvers need: support,
//! decay exponent, analyticity in the right half-plane, and the singularity
//! exponent at the origin.

use crate::error::{Error, Result};
use crate::quad::{adaptive, integrate_real};
use num_complex::Complex64;

/// Shape of the cutoff of a [`PotentialKind::SmoothCompact`] model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// C² quintic smoothstep from 1 at `0.8 a` to 0 at `a`.
    Bump,
    /// No cutoff: `q(a-0) = P(a)`, a jump at the edge.
    Sharp,
}

/// Sampled potential with monotone cubic (Fritsch–Carlson) interpolation.
///
/// Zero beyond the last sample; below the first sample it is extended as
/// `q(r0) (r/r0)^(-s)` with `s` the singularity exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct Tabulated {
    r: Vec<f64>,
    q: Vec<f64>,
    m: Vec<f64>,
    singularity: f64,
}

impl Tabulated {
    pub fn new(r: Vec<f64>, q: Vec<f64>, singularity_exponent: f64) -> Result<Self> {
        if r.len() < 2 || r.len() != q.len() {
            return Err(Error::Domain("tabulated potential needs >= 2 matching samples".into()));
        }
        if r[0] <= 0.0 || r.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("tabulated radii must be positive and increasing".into()));
        }
        if q.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("tabulated values must be finite".into()));
        }
        let n = r.len();
        let d: Vec<f64> = (0..n - 1).map(|i| (q[i + 1] - q[i]) / (r[i + 1] - r[i])).collect();
        let mut m = vec![0.0; n];
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for i in 1..n - 1 {
            m[i] = if d[i - 1] * d[i] <= 0.0 { 0.0 } else { 0.5 * (d[i - 1] + d[i]) };
        }
        for i in 0..n - 1 {
            if d[i] == 0.0 {
                m[i] = 0.0;
                m[i + 1] = 0.0;
                continue;
            }
            let a = m[i] / d[i];
            let b = m[i + 1] / d[i];
            let s = a * a + b * b;
            if s > 9.0 {
                let t = 3.0 / s.sqrt();
                m[i] = t * a * d[i];
                m[i + 1] = t * b * d[i];
            }
        }
        Ok(Tabulated { r, q, m, singularity: singularity_exponent })
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.q
    }

    pub fn singularity_exponent(&self) -> f64 {
        self.singularity
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.r.len();
        if x > self.r[n - 1] {
            return 0.0;
        }
        if x < self.r[0] {
            return self.q[0] * (x / self.r[0]).powf(-self.singularity);
        }
        let i = match self.r.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(i) => return self.q[i],
            Err(i) => i - 1,
        };
        let h = self.r[i + 1] - self.r[i];
        let t = (x - self.r[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * self.q[i]
            + (t3 - 2.0 * t2 + t) * h * self.m[i]
            + (-2.0 * t3 + 3.0 * t2) * self.q[i + 1]
            + (t3 - t2) * h * self.m[i + 1]
    }
}

/// The model families.
#[derive(Clone, Debug, PartialEq)]
pub enum PotentialKind {
    Zero,
    /// `q0` on `(0, a)`, zero beyond.
    SquareWell { q0: f64, a: f64 },
    /// `P(r) chi(r/a)` on `(0, a)` with `P(r) = sum coeffs[i] r^i`.
    SmoothCompact { coeffs: Vec<f64>, a: f64, edge: EdgeKind },
    /// `amp e^{-c r} (1+r)^{-p}`.
    AnalyticDecay { amp: f64, c: f64, p: f64 },
    Sum(Vec<Potential>),
    Tabulated(Tabulated),
}

/// A radial potential and its metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub kind: PotentialKind,
    /// `q(r) = 0` for `r >= support_radius`.
    pub support_radius: Option<f64>,
    /// Decay exponent `rho` in `|q(r)| <= C (1+r)^{-rho}`; infinite for
    /// compact support or exponential decay.
    pub decay_exponent: f64,
    /// Extends analytically to `Re z >= 0` with the same decay.
    pub analytic_in_right_half_plane: bool,
    /// `s` in `q(r) ~ r^{-s}` as `r -> 0`.
    pub singularity_exponent: f64,
}

fn smoothstep_down(t: f64) -> f64 {
    if t <= 0.8 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        let s = (t - 0.8) / 0.2;
        1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)
    }
}

fn horner(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c)
}

impl Potential {
    pub fn zero() -> Self {
        Potential {
            kind: PotentialKind::Zero,
            support_radius: None,
            decay_exponent: f64::INFINITY,
            analytic_in_right_half_plane: true,
            singularity_exponent: 0.0,
        }
    }

    pub fn square_well(q0: f64, a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite() && q0.is_finite()) {
            return Err(Error::Domain(format!("square well needs a > 0, got a = {a}, q0 = {q0}")));
        }
        Ok(Potential {
            kind: PotentialKind::SquareWell { q0, a },
            support_radius: Some(a),
            decay_exponent: f64::INFINITY,
            analytic_in_right_half_plane: false,
            singularity_exponent: 0.0,
        })
    }

    pub fn smooth_compact(coeffs: Vec<f64>, a: f64, edge: EdgeKind) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("smooth compact model needs a > 0 and finite coefficients".into()));
        }
        Ok(Potential {
            kind: PotentialKind::SmoothCompact { coeffs, a, edge },
            support_radius: Some(a),
            decay_exponent: f64::INFINITY,
            analytic_in_right_half_plane: false,
            singularity_exponent: 0.0,
        })
    }

    pub fn analytic_decay(amp: f64, c: f64, p: f64) -> Result<Self> {
        if !(c >= 0.0 && amp.is_finite() && p.is_finite() && c.is_finite()) {
            return Err(Error::Domain(format!("analytic decay needs c >= 0, got c = {c}")));
        }
        Ok(Potential {
            kind: PotentialKind::AnalyticDecay { amp, c, p },
            support_radius: None,
            decay_exponent: if c > 0.0 { f64::INFINITY } else { p },
            analytic_in_right_half_plane: true,
            singularity_exponent: 0.0,
        })
    }

    pub fn sum(parts: Vec<Potential>) -> Self {
        let support_radius = parts
            .iter()
            .map(|p| p.support_radius)
            .try_fold(0.0f64, |acc, s| s.map(|s| acc.max(s)));
        let decay_exponent = parts.iter().map(|p| p.decay_exponent).fold(f64::INFINITY, f64::min);
        let analytic = parts.iter().all(|p| p.analytic_in_right_half_plane);
        let sing = parts.iter().map(|p| p.singularity_exponent).fold(0.0, f64::max);
        Potential {
            kind: PotentialKind::Sum(parts),
            support_radius: support_radius.filter(|&s| s > 0.0),
            decay_exponent,
            analytic_in_right_half_plane: analytic,
            singularity_exponent: sing,
        }
    }

    pub fn tabulated(t: Tabulated) -> Self {
        let support = *t.r.last().expect("validated");
        let s = t.singularity;
        Potential {
            kind: PotentialKind::Tabulated(t),
            support_radius: Some(support),
            decay_exponent: f64::INFINITY,
            analytic_in_right_half_plane: false,
            singularity_exponent: s,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.kind {
            PotentialKind::Zero => true,
            PotentialKind::SquareWell { q0, .. } => *q0 == 0.0,
            PotentialKind::AnalyticDecay { amp, .. } => *amp == 0.0,
            PotentialKind::SmoothCompact { coeffs, .. } => coeffs.iter().all(|&c| c == 0.0),
            PotentialKind::Sum(ps) => ps.iter().all(|p| p.is_zero()),
            PotentialKind::Tabulated(t) => t.q.iter().all(|&v| v == 0.0),
        }
    }

    /// `q(r)` for `r > 0`.
    pub fn value(&self, r: f64) -> f64 {
        match &self.kind {
            PotentialKind::Zero => 0.0,
            PotentialKind::SquareWell { q0, a } => {
                if r < *a {
                    *q0
                } else {
                    0.0
                }
            }
            PotentialKind::SmoothCompact { coeffs, a, edge } => {
                if r >= *a {
                    return 0.0;
                }
                let chi = match edge {
                    EdgeKind::Bump => smoothstep_down(r / a),
                    EdgeKind::Sharp => 1.0,
                };
                horner(coeffs, r) * chi
            }
            PotentialKind::AnalyticDecay { amp, c, p } => amp * (-c * r).exp() * (1.0 + r).powf(-p),
            PotentialKind::Sum(ps) => ps.iter().map(|p| p.value(r)).sum(),
            PotentialKind::Tabulated(t) => t.eval(r),
        }
    }

    /// Checked evaluation.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Domain(format!("potential evaluated at r = {r}")));
        }
        Ok(self.value(r))
    }

    /// Analytic continuation `q(z)`, available when the model is analytic.
    pub fn value_complex(&self, z: Complex64) -> Option<Complex64> {
        match &self.kind {
            PotentialKind::Zero => Some(Complex64::new(0.0, 0.0)),
            PotentialKind::AnalyticDecay { amp, c, p } => Some((-c * z).exp() * (1.0 + z).powf(-p) * *amp),
            PotentialKind::Sum(ps) => ps.iter().map(|p| p.value_complex(z)).sum(),
            _ => None,
        }
    }

    /// `q(a-0)` at the support radius of the compactly supported part.
    pub fn edge_value(&self) -> Option<f64> {
        match &self.kind {
            PotentialKind::SquareWell { q0, .. } => Some(*q0),
            PotentialKind::SmoothCompact { coeffs, a, edge } => Some(match edge {
                EdgeKind::Bump => 0.0,
                EdgeKind::Sharp => horner(coeffs, *a),
            }),
            PotentialKind::Tabulated(t) => t.q.last().copied(),
            PotentialKind::Sum(ps) => {
                let a = ps.iter().filter_map(|p| p.support_radius).fold(0.0, f64::max);
                if a == 0.0 {
                    return None;
                }
                let jump: f64 = ps
                    .iter()
                    .filter(|p| p.support_radius == Some(a))
                    .filter_map(|p| p.edge_value())
                    .sum();
                Some(jump + ps.iter().filter(|p| p.support_radius.is_none()).map(|p| p.value(a)).sum::<f64>())
            }
            _ => None,
        }
    }

    /// Radius of the compactly supported part, if any (for class C sums).
    pub fn compact_part_radius(&self) -> Option<f64> {
        match &self.kind {
            PotentialKind::Sum(ps) => {
                let a = ps.iter().filter_map(|p| p.compact_part_radius()).fold(0.0, f64::max);
                (a > 0.0).then_some(a)
            }
            _ => self.support_radius,
        }
    }

    /// Radii where `q` or its low derivatives jump.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = match &self.kind {
            PotentialKind::SquareWell { a, .. } => vec![*a],
            PotentialKind::SmoothCompact { a, edge, .. } => match edge {
                EdgeKind::Bump => vec![0.8 * a, *a],
                EdgeKind::Sharp => vec![*a],
            },
            PotentialKind::Sum(ps) => ps.iter().flat_map(|p| p.breakpoints()).collect(),
            PotentialKind::Tabulated(t) => vec![t.r[0], *t.r.last().expect("validated")],
            _ => vec![],
        };
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// Upper bound on `int_R^inf |q|` in closed form.
    pub fn tail_bound(&self, r: f64) -> f64 {
        match &self.kind {
            PotentialKind::Zero => 0.0,
            PotentialKind::SquareWell { q0, a } => q0.abs() * (a - r).max(0.0),
            PotentialKind::SmoothCompact { coeffs, a, .. } => {
                let m: f64 = coeffs.iter().enumerate().map(|(i, c)| c.abs() * a.powi(i as i32)).sum();
                m * (a - r).max(0.0)
            }
            PotentialKind::AnalyticDecay { amp, c, p } => {
                let base = amp.abs() * (-c * r).exp() * (1.0 + r).powf(-p);
                let mut best = f64::INFINITY;
                if *c > 0.0 {
                    best = best.min(base / c);
                }
                if *p > 1.0 {
                    best = best.min(base * (1.0 + r) / (p - 1.0));
                }
                best
            }
            PotentialKind::Sum(ps) => ps.iter().map(|p| p.tail_bound(r)).sum(),
            PotentialKind::Tabulated(t) => {
                let end = *t.r.last().expect("validated");
                if r >= end {
                    0.0
                } else {
                    integrate_real(|s| t.eval(s).abs(), r.max(t.r[0]), end, 1e-14, 1e-10).unwrap_or(f64::INFINITY)
                }
            }
        }
    }

    /// Smallest `R` with `tail_bound(R) < tol`, searched up to `r_cap`.
    pub fn tail_radius(&self, tol: f64, r_cap: f64) -> Result<f64> {
        if let Some(a) = self.support_radius {
            return Ok(a);
        }
        if self.tail_bound(r_cap) >= tol {
            return Err(Error::Precondition(format!(
                "tail integral of |q| beyond r = {r_cap} exceeds {tol:e}"
            )));
        }
        let (mut lo, mut hi) = (0.0f64, r_cap);
        if self.tail_bound(lo) < tol {
            return Ok(self.compact_part_radius().unwrap_or(0.0).max(1.0));
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.tail_bound(mid) < tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi.max(self.compact_part_radius().unwrap_or(0.0)))
    }

    /// `int_r^inf |q(s)| ds` by quadrature plus closed-form tail.
    pub fn abs_tail_integral(&self, r: f64) -> f64 {
        let end = match self.support_radius {
            Some(a) => a,
            None => self.tail_radius(1e-14, 200.0).unwrap_or(200.0),
        };
        if r >= end {
            return self.tail_bound(r);
        }
        let q = adaptive(
            |s| Complex64::new(self.value(s).abs(), 0.0),
            r,
            end,
            &self.breakpoints(),
            1e-15,
            1e-12,
            2000,
        );
        q.value.re + if self.support_radius.is_none() { self.tail_bound(end) } else { 0.0 }
    }

    /// Class A (`rho > 3/2`) or class C membership for analytic parts.
    pub fn in_hypothesis(&self) -> bool {
        match &self.kind {
            PotentialKind::Sum(ps) => ps.iter().all(|p| p.in_hypothesis()),
            PotentialKind::AnalyticDecay { .. } => self.decay_exponent > 1.5,
            _ => true,
        }
    }
}

/// A finite-or-divergent integral estimate from dyadic shells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShellEstimate {
    pub value: f64,
    pub finite: bool,
}

/// Result of [`check_hypotheses`].
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    /// `int_0^1 r^{1-2 eps} |q| dr`.
    pub h1: ShellEstimate,
    /// `int_1^inf |q| dr`.
    pub h2: ShellEstimate,
    /// `int_1^inf r^{(1+delta)/2} |q| dr`.
    pub moment: ShellEstimate,
    /// Decay exponent in `(1, 3/2]`: admitted for exploration only.
    pub out_of_hypothesis: bool,
    pub violations: Vec<String>,
}

impl HypothesisReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sum of shell integrals `int_{x_j}^{x_{j+1}} f` with geometric-ratio
/// divergence detection. `shells` yields the shell endpoints in the
/// direction of the singular end.
fn shell_sum<F: Fn(f64) -> f64>(f: F, shells: &[(f64, f64)], breaks: &[f64]) -> ShellEstimate {
    let mut total = 0.0;
    let mut vals = Vec::with_capacity(shells.len());
    for &(a, b) in shells {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let v = adaptive(|s| Complex64::new(f(s), 0.0), lo, hi, breaks, 1e-300, 1e-10, 500).value.re;
        vals.push(v);
        total += v;
    }
    let n = vals.len();
    let last = vals[n - 1];
    let prev = vals[n - 2];
    if last <= 1e-300 || last <= 1e-16 * total {
        return ShellEstimate { value: total, finite: true };
    }
    let ratio = last / prev;
    // power-law shells shrink by 2^{-eta}; eta below 0.02 counts as divergent
    if !ratio.is_finite() || ratio >= 2f64.powf(-0.02) {
        return ShellEstimate { value: f64::INFINITY, finite: false };
    }
    ShellEstimate { value: total + last * ratio / (1.0 - ratio), finite: true }
}

/// Estimate the integrability conditions near 0 and at infinity.
pub fn check_hypotheses(p: &Potential, eps: f64, delta: f64) -> HypothesisReport {
    let breaks = p.breakpoints();
    let near: Vec<(f64, f64)> = (0..60).map(|j| (2f64.powi(-j), 2f64.powi(-j - 1))).collect();
    let far: Vec<(f64, f64)> = (0..40).map(|j| (2f64.powi(j), 2f64.powi(j + 1))).collect();
    let h1 = shell_sum(|r| r.powf(1.0 - 2.0 * eps) * p.value(r).abs(), &near, &breaks);
    let h2 = shell_sum(|r| p.value(r).abs(), &far, &breaks);
    let moment = shell_sum(|r| r.powf(0.5 * (1.0 + delta)) * p.value(r).abs(), &far, &breaks);
    let mut violations = Vec::new();
    if !h1.finite {
        violations.push(format!("(H1) fails: int_0^1 r^(1-2eps)|q| diverges for eps = {eps}"));
    }
    if !h2.finite {
        violations.push("(H2) fails: int_1^inf |q| diverges".to_string());
    }
    if !moment.finite {
        violations.push(format!("moment int_1^inf r^((1+delta)/2)|q| diverges for delta = {delta}"));
    }
    let rho = p.decay_exponent;
    HypothesisReport { h1, h2, moment, out_of_hypothesis: rho > 1.0 && rho <= 1.5, violations }
}

/// Complex-scaled potential `q_theta(r) = e^{2 theta} q(e^theta r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledPotential {
    pub base: Potential,
    pub theta: Complex64,
}

/// Build `q_theta`; complex `theta` needs an analytic base and `|Im theta| < pi/2`.
pub fn scale(p: &Potential, theta: Complex64) -> Result<ScaledPotential> {
    if theta.im != 0.0 {
        if !p.analytic_in_right_half_plane {
            return Err(Error::Domain("complex scaling needs a potential analytic in Re z >= 0".into()));
        }
        if theta.im.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::Domain(format!("|Im theta| must be < pi/2, got {theta}")));
        }
    }
    Ok(ScaledPotential { base: p.clone(), theta })
}

impl ScaledPotential {
    pub fn evaluate(&self, r: f64) -> Complex64 {
        if self.theta.im == 0.0 {
            let t = self.theta.re;
            return Complex64::new((2.0 * t).exp() * self.base.value(t.exp() * r), 0.0);
        }
        let z = self.theta.exp() * r;
        (2.0 * self.theta).exp() * self.base.value_complex(z).expect("analytic base")
    }

    pub fn real_theta(&self) -> Option<f64> {
        (self.theta.im == 0.0).then_some(self.theta.re)
    }
}

/// What the radial solvers need from a potential.
pub trait RadialPotential: Sync {
    fn q(&self, r: f64) -> f64;
    fn support_radius(&self) -> Option<f64>;
    fn breakpoints(&self) -> Vec<f64>;
    fn tail_bound(&self, r: f64) -> f64;
    fn tail_radius(&self, tol: f64, r_cap: f64) -> Result<f64>;
    fn is_zero(&self) -> bool;
}

impl RadialPotential for Potential {
    fn q(&self, r: f64) -> f64 {
        self.value(r)
    }
    fn support_radius(&self) -> Option<f64> {
        self.support_radius
    }
    fn breakpoints(&self) -> Vec<f64> {
        Potential::breakpoints(self)
    }
    fn tail_bound(&self, r: f64) -> f64 {
        Potential::tail_bound(self, r)
    }
    fn tail_radius(&self, tol: f64, r_cap: f64) -> Result<f64> {
        Potential::tail_radius(self, tol, r_cap)
    }
    fn is_zero(&self) -> bool {
        Potential::is_zero(self)
    }
}

/// Real-theta scaled potential as a solver input.
impl RadialPotential for ScaledPotential {
    fn q(&self, r: f64) -> f64 {
        self.evaluate(r).re
    }
    fn support_radius(&self) -> Option<f64> {
        self.base.support_radius.map(|a| a * (-self.theta.re).exp())
    }
    fn breakpoints(&self) -> Vec<f64> {
        let s = (-self.theta.re).exp();
        self.base.breakpoints().into_iter().map(|b| b * s).collect()
    }
    fn tail_bound(&self, r: f64) -> f64 {
        // int_R^inf e^{2t}|q(e^t s)| ds = e^t int_{e^t R}^inf |q|
        let t = self.theta.re;
        t.exp() * self.base.tail_bound(t.exp() * r)
    }
    fn tail_radius(&self, tol: f64, r_cap: f64) -> Result<f64> {
        let t = self.theta.re;
        Ok(self.base.tail_radius(tol * (-t).exp(), r_cap * t.exp())? * (-t).exp())
    }
    fn is_zero(&self) -> bool {
        self.base.is_zero()
    }
}
