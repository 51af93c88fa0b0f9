//! Regular and Jost solutions of
//! `-w'' + ((nu^2 - 1/4)/r^2 + q(r)) w = k^2 w`.
//!
//! Both are integrated for the scaled unknown `y = r^{-kappa} w` with
//! `kappa = 1/2 + nu` (regular) or `kappa = 1/2 - nu` (Jost), which removes
//! the centrifugal term:
//!
//! ```text
//! y'' + (2 kappa / r) y' = (q - k^2) y.
//! ```
//!
//! Node values carry a real log scale, so growth like `r^{nu+1/2}` or
//! `Gamma(nu)` never overflows.

use crate::error::{Error, Result};
use crate::ode::{integrate, OdeOptions, State};
use crate::potentials::RadialPotential;
use crate::quad::gl8;
use crate::specfun::{free_jost_solution, free_u_scaled, Scaled};
use num_complex::Complex64;

/// Solver tolerances and the energy `k` (`k = 1` unless scaling).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Relative tolerance of the ODE integrator.
    pub rtol: f64,
    /// Bound on `int_{r_max}^inf |q|` for non-compact potentials.
    pub tail_tol: f64,
    /// Bound on the neglected `|q - k^2| r^2 / |2 nu + 2|` at the seed radius.
    pub seed_tol: f64,
    /// Largest admissible `r_max` (Bessel boundary data is limited to `k r <= 40`).
    pub r_cap: f64,
    pub k: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { rtol: 1e-10, tail_tol: 1e-12, seed_tol: 1e-10, r_cap: 40.0, k: 1.0 }
    }
}

/// Radial grid: geometric nodes on `[r_min, 1]`, uniform on `[1, r_max]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_match: f64,
    pub r_max: f64,
    pub nodes: Vec<f64>,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_match: f64, r_max: f64, n_geo: usize, n_uni: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_min <= r_match && r_match <= r_max) {
            return Err(Error::Domain(format!(
                "grid needs 0 < r_min <= r_match <= r_max, got {r_min}, {r_match}, {r_max}"
            )));
        }
        let mut nodes = Vec::new();
        let top = r_max.min(1.0);
        if r_min < top {
            let ratio = (top / r_min).ln();
            for i in 0..=n_geo {
                nodes.push(r_min * (ratio * i as f64 / n_geo.max(1) as f64).exp());
            }
        } else {
            nodes.push(r_min);
        }
        if r_max > 1.0 {
            let lo = r_min.max(1.0);
            for i in 1..=n_uni {
                nodes.push(lo + (r_max - lo) * i as f64 / n_uni.max(1) as f64);
            }
        }
        nodes.push(r_match);
        nodes.sort_by(f64::total_cmp);
        nodes.dedup();
        *nodes.last_mut().expect("non-empty") = r_max;
        *nodes.first_mut().expect("non-empty") = r_min;
        Ok(RadialGrid { r_min, r_match, r_max, nodes })
    }

    /// Default grid: `r_match` at the support radius (or 1), `r_max` at
    /// `max(support, 1.5 r_match)` or where the tail of `|q|` drops below
    /// `tail_tol`.
    pub fn for_potential<P: RadialPotential + ?Sized>(q: &P, opts: &SolverOptions) -> Result<Self> {
        let (r_match, r_max) = match q.support_radius() {
            Some(a) => (a, 1.5 * a),
            None => {
                let r_top = q.tail_radius(opts.tail_tol, opts.r_cap)?;
                (1.0, r_top.max(1.5))
            }
        };
        let r_max = r_max.max(1.5 * r_match);
        if r_max * opts.k > opts.r_cap {
            return Err(Error::Precondition(format!("r_max = {r_max} exceeds r_cap = {}", opts.r_cap)));
        }
        RadialGrid::new(1e-3_f64.min(r_match), r_match, r_max, 24, (4.0 * r_max).ceil() as usize)
    }

    /// Matching radii `r_match * {1, 1.2, 1.5}`.
    pub fn match_radii(&self) -> [f64; 3] {
        [self.r_match, 1.2 * self.r_match, 1.5 * self.r_match]
    }
}

/// Which solution a [`SolutionField`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Regular,
    JostPlus,
    JostMinus,
}

/// Sampled solution `w(r) = r^kappa y(r) e^{offset + log_scale}` with
/// quintic Hermite interpolation between accepted steps.
///
/// Jost fields may also carry a radius beyond which `w` is the free Jost
/// solution, evaluated in closed form.
#[derive(Clone, Debug)]
pub struct SolutionField {
    pub kind: FieldKind,
    pub nu: Complex64,
    pub k: f64,
    kappa: Complex64,
    offset: Complex64,
    r: Vec<f64>,
    y: Vec<State>,
    log_scale: Vec<f64>,
    d2_left: Vec<Complex64>,
    d2_right: Vec<Complex64>,
    free_from: Option<f64>,
    /// Order used for the free continuation (`nu` or `-nu`).
    nu_eff: Complex64,
}

fn hermite5(t: f64, h: f64, y0: Complex64, d0: Complex64, s0: Complex64, y1: Complex64, d1: Complex64, s1: Complex64) -> (Complex64, Complex64) {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    let h3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 0.5 * (t3 - 2.0 * t4 + t5);
    let g0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    let g1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    let g2 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
    let g3 = -g0;
    let g4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    let g5 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
    let v = y0 * h0 + d0 * (h * h1) + s0 * (h * h * h2) + y1 * h3 + d1 * (h * h4) + s1 * (h * h * h5);
    let dv = (y0 * g0 + y1 * g3) / h + d0 * g1 + s0 * (h * g2) + d1 * g4 + s1 * (h * g5);
    (v, dv)
}

impl SolutionField {
    /// Radii of the stored nodes, increasing.
    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn r_range(&self) -> (f64, f64) {
        (self.r[0], *self.r.last().expect("non-empty"))
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    /// Radius beyond which the field is the free Jost solution.
    pub fn free_from(&self) -> Option<f64> {
        self.free_from
    }

    fn sign(&self) -> i32 {
        if self.kind == FieldKind::JostMinus {
            -1
        } else {
            1
        }
    }

    /// Scaled unknown `y` and `y'` at `r`, plus the real scale exponent.
    fn y_at(&self, r: f64) -> Result<(Complex64, Complex64, f64)> {
        let n = self.r.len();
        let (lo, hi) = self.r_range();
        if !(r >= lo * (1.0 - 1e-14) && r <= hi * (1.0 + 1e-14)) {
            return Err(Error::Range(format!("r = {r} outside solution range [{lo}, {hi}]")));
        }
        if n == 1 {
            return Ok((self.y[0][0], self.y[0][1], self.log_scale[0]));
        }
        let i = match self.r.binary_search_by(|v| v.total_cmp(&r)) {
            Ok(i) => return Ok((self.y[i][0], self.y[i][1], self.log_scale[i])),
            Err(0) => 0,
            Err(i) if i >= n => n - 2,
            Err(i) => i - 1,
        };
        let (l0, l1) = (self.log_scale[i], self.log_scale[i + 1]);
        let lc = l0.max(l1);
        let (f0, f1) = ((l0 - lc).exp(), (l1 - lc).exp());
        let h = self.r[i + 1] - self.r[i];
        let t = ((r - self.r[i]) / h).clamp(0.0, 1.0);
        let (v, dv) = hermite5(
            t,
            h,
            self.y[i][0] * f0,
            self.y[i][1] * f0,
            self.d2_left[i] * f0,
            self.y[i + 1][0] * f1,
            self.y[i + 1][1] * f1,
            self.d2_right[i] * f1,
        );
        Ok((v, dv, lc))
    }

    /// `(w(r), w'(r))` in scaled form.
    pub fn eval(&self, r: f64) -> Result<(Scaled, Scaled)> {
        if let Some(rf) = self.free_from {
            if r >= rf {
                return free_jost_solution(self.sign(), self.nu_eff, self.k, r);
            }
        }
        let (y, dy, l) = self.y_at(r)?;
        let pre = Scaled::from_log(self.kappa * r.ln() + self.offset + l);
        Ok((pre.mul_c(y), pre.mul_c(dy + self.kappa * y / r)))
    }

    /// Value only.
    pub fn value(&self, r: f64) -> Result<Scaled> {
        Ok(self.eval(r)?.0)
    }

    /// Node values `(r, w, w')` on the stored radii.
    pub fn nodes(&self) -> Vec<(f64, Scaled, Scaled)> {
        self.r.iter().map(|&r| (r, self.eval(r).expect("node in range"))).map(|(r, (a, b))| (r, a, b)).collect()
    }

    /// Node values as `(mantissa, log_scale)` with `w = mantissa e^{log_scale}`.
    pub fn log_scaled_values(&self) -> Vec<(f64, Complex64, f64)> {
        self.nodes().into_iter().map(|(r, w, _)| (r, w.mant, w.scale)).collect()
    }

    /// Multiply the stored value at the node nearest to `r` by `1 + eps`
    /// (used to exercise residual checks).
    pub fn perturb_node(&mut self, r: f64, eps: f64) {
        let i = self
            .r
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - r).abs().total_cmp(&(b.1 - r).abs()))
            .map(|(i, _)| i)
            .expect("non-empty");
        self.y[i][0] *= 1.0 + eps;
    }

    /// Interior quadrature panels between `lo` and `hi` following the
    /// integrator's steps, with `extra` breakpoints inserted.
    pub fn panels(&self, lo: f64, hi: f64, extra: &[f64]) -> Vec<f64> {
        let mut p: Vec<f64> = self.r.iter().copied().filter(|&x| x > lo && x < hi).collect();
        p.extend(extra.iter().copied().filter(|&x| x > lo && x < hi));
        p.push(lo);
        p.push(hi);
        p.sort_by(f64::total_cmp);
        p.dedup();
        p
    }
}

/// Seed radius so that the neglected `|q - k^2| r^2 / |2 nu + 2|` is tiny.
fn seed_radius<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, start: f64, opts: &SolverOptions) -> f64 {
    let k2 = opts.k * opts.k;
    let d = (2.0 * nu + 2.0).norm();
    let mut r = start;
    for _ in 0..40 {
        let qv = [r, 0.5 * r, 0.1 * r].iter().map(|&s| (q.q(s) - k2).abs()).fold(0.0, f64::max);
        if qv * r * r / d < opts.seed_tol {
            return r;
        }
        r = 0.9 * (opts.seed_tol * d / qv.max(1e-300)).sqrt().min(r);
    }
    r
}

fn rhs<'a, P: RadialPotential + ?Sized>(q: &'a P, kappa: Complex64, k2: f64) -> impl Fn(f64, &State) -> State + 'a {
    move |r: f64, y: &State| [y[1], y[0] * (q.q(r) - k2) - y[1] * (2.0 * kappa / r)]
}

fn collect_stops<P: RadialPotential + ?Sized>(q: &P, grid: &RadialGrid) -> Vec<f64> {
    let mut s: Vec<f64> = grid.nodes.clone();
    s.extend(q.breakpoints());
    s.extend(grid.match_radii());
    s
}

fn h_start(r0: f64, r1: f64) -> f64 {
    (0.1 * r0).min(0.01 * (r1 - r0).abs()).max(1e-6 * (r1 - r0).abs().min(r0.max(1e-3)))
}

/// Regular solution `phi ~ r^{nu+1/2}` from the seed radius to `grid.r_max`.
pub fn solve_regular<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<SolutionField> {
    if nu.re < 0.0 {
        return Err(Error::Precondition(format!("regular solution needs Re nu >= 0, got {nu}")));
    }
    let k2 = opts.k * opts.k;
    let r0 = seed_radius(q, nu, grid.r_min, opts);
    let kappa = nu + 0.5;
    let c = (q.q(r0) - k2) / (4.0 * (nu + 1.0));
    let y0 = [1.0 + c * r0 * r0, c * (2.0 * r0)];
    let stops = collect_stops(q, grid);
    let tr = integrate(
        rhs(q, kappa, k2),
        r0,
        grid.r_max,
        y0,
        &stops,
        h_start(r0, grid.r_max),
        OdeOptions { rtol: opts.rtol, ..Default::default() },
    )?;
    Ok(SolutionField {
        kind: FieldKind::Regular,
        nu,
        k: opts.k,
        kappa,
        offset: Complex64::new(0.0, 0.0),
        r: tr.r,
        y: tr.y,
        log_scale: tr.log_scale,
        d2_left: tr.d2_start,
        d2_right: tr.d2_end,
        free_from: None,
        nu_eff: nu,
    })
}

/// Radius where the Jost boundary data is imposed.
pub fn jost_top<P: RadialPotential + ?Sized>(q: &P, grid: &RadialGrid, opts: &SolverOptions) -> Result<f64> {
    let top = match q.support_radius() {
        Some(a) => a,
        None => q.tail_radius(opts.tail_tol, opts.r_cap)?.max(grid.r_max),
    };
    if top * opts.k > opts.r_cap {
        return Err(Error::Precondition(format!(
            "Jost boundary radius {top} beyond r_cap = {}: tail tolerance unreachable",
            opts.r_cap
        )));
    }
    Ok(top)
}

/// Jost solution `f^{sign}` (`sign = +1` or `-1`), `f ~ e^{±ikr}` at infinity,
/// integrated inward from free boundary data down to `grid.r_min`.
pub fn solve_jost<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, sign: i32, opts: &SolverOptions) -> Result<SolutionField> {
    solve_jost_down_to(q, nu, grid, sign, opts, grid.r_min)
}

/// As [`solve_jost`], stopping the inward integration at `r_stop`.
pub fn solve_jost_down_to<P: RadialPotential + ?Sized>(
    q: &P,
    nu: Complex64,
    grid: &RadialGrid,
    sign: i32,
    opts: &SolverOptions,
    r_stop: f64,
) -> Result<SolutionField> {
    let kind = if sign > 0 { FieldKind::JostPlus } else { FieldKind::JostMinus };
    // f± are even in nu; integrate with Re nu_eff >= 0
    let nu_eff = if nu.re < 0.0 || (nu.re == 0.0 && nu.im < 0.0) { -nu } else { nu };
    let kappa = 0.5 - nu_eff;
    let k2 = opts.k * opts.k;
    let top = if q.is_zero() { r_stop } else { jost_top(q, grid, opts)? };
    let (f0, df0) = free_jost_solution(sign, nu_eff, opts.k, top)?;
    let ml = f0.ln_abs().max((df0.mul_c(Complex64::new(top, 0.0))).ln_abs());
    let y0 = f0.mul_exp(-ml).to_c();
    let dy0 = df0.mul_exp(-ml).to_c() - kappa * y0 / top;
    let offset = ml - kappa * top.ln();
    let empty = |r: f64, y: State| SolutionField {
        kind,
        nu,
        k: opts.k,
        kappa,
        offset,
        r: vec![r],
        y: vec![y],
        log_scale: vec![0.0],
        d2_left: vec![],
        d2_right: vec![],
        free_from: Some(if q.is_zero() { 0.0 } else { top }),
        nu_eff,
    };
    if top <= r_stop {
        return Ok(empty(top, [y0, dy0]));
    }
    let stops = collect_stops(q, grid);
    let tr = integrate(
        rhs(q, kappa, k2),
        top,
        r_stop,
        [y0, dy0],
        &stops,
        h_start(r_stop, top).max(0.01 * top),
        OdeOptions { rtol: opts.rtol, ..Default::default() },
    )?;
    let mut f = empty(top, [y0, dy0]);
    f.r = tr.r.into_iter().rev().collect();
    f.y = tr.y.into_iter().rev().collect();
    f.log_scale = tr.log_scale.into_iter().rev().collect();
    f.d2_left = tr.d2_end.into_iter().rev().collect();
    f.d2_right = tr.d2_start.into_iter().rev().collect();
    Ok(f)
}

/// `W(a, b)(r) = a b' - a' b`.
pub fn wronskian(a: &SolutionField, b: &SolutionField, r: f64) -> Result<Scaled> {
    if a.nu != b.nu && a.nu != -b.nu {
        return Err(Error::Domain(format!("Wronskian of fields with nu = {} and {}", a.nu, b.nu)));
    }
    let (wa, da) = a.eval(r)?;
    let (wb, db) = b.eval(r)?;
    Ok(wa * db - da * wb)
}

/// `W` of a field against explicit `(w, w')` data.
pub fn wronskian_with(a: &SolutionField, b: (Scaled, Scaled), r: f64) -> Result<Scaled> {
    let (wa, da) = a.eval(r)?;
    Ok(wa * b.1 - da * b.0)
}

fn cexpm1(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)))
    } else {
        z.exp() - 1.0
    }
}

/// Max-norm residual of the defining integral equation, relative to the
/// local magnitude of the solution at each node.
///
/// Regular: `y(r) = 1 + int_0^r s (1 - (s/r)^{2 nu})/(2 nu) (q - k^2) y ds`
/// with `y = r^{-nu-1/2} phi`. Jost:
/// `f(r) = f0(r) + (1/k) int_r^inf N(r,s) q(s) f(s) ds`,
/// `N(r,s) = u(kr) v(ks) - u(ks) v(kr)`.
pub fn volterra_residual<P: RadialPotential + ?Sized>(field: &SolutionField, q: &P) -> Result<f64> {
    match field.kind {
        FieldKind::Regular => regular_residual(field, q),
        _ => jost_residual(field, q),
    }
}

fn true_y(field: &SolutionField, s: f64) -> Result<Complex64> {
    let (y, _, l) = field.y_at(s)?;
    Ok(y * l.exp())
}

fn regular_residual<P: RadialPotential + ?Sized>(field: &SolutionField, q: &P) -> Result<f64> {
    let nu = field.nu;
    let k2 = field.k * field.k;
    let (x, w) = gl8();
    let r0 = field.r[0];
    let y0 = true_y(field, r0)?;
    let breaks = q.breakpoints();
    let mut worst = 0.0f64;
    for (j, &rj) in field.r.iter().enumerate().skip(1) {
        let kern = |s: f64| -> Complex64 {
            let l = (s / rj).ln();
            if nu.norm() < 1e-12 {
                Complex64::new(-l * s, 0.0)
            } else {
                -cexpm1(2.0 * nu * l) / (2.0 * nu) * s
            }
        };
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pts: Vec<f64> = field.r[..=j].to_vec();
        pts.extend(breaks.iter().copied().filter(|&b| b > r0 && b < rj));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        for p in pts.windows(2) {
            let c = 0.5 * (p[0] + p[1]);
            let h = 0.5 * (p[1] - p[0]);
            for (xi, wi) in x.iter().zip(w) {
                let s = c + h * xi;
                acc += kern(s) * (q.q(s) - k2) * true_y(field, s)? * (h * wi);
            }
        }
        // [0, r0] with y = 1 and q frozen at r0
        let seed = if nu.norm() < 1e-12 {
            Complex64::new(r0 * r0 * (0.5 * (rj / r0).ln() + 0.25), 0.0)
        } else {
            let t = (2.0 * nu * (r0 / rj).ln()).exp();
            (r0 * r0 / 2.0 - t * r0 * r0 / (2.0 * nu + 2.0)) / (2.0 * nu)
        };
        let rhs = 1.0 + seed * (q.q(r0) - k2) + acc;
        let yj = true_y(field, rj)?;
        let res = (yj - rhs).norm() / yj.norm().max(1e-300);
        worst = worst.max(res);
        let _ = y0;
    }
    Ok(worst)
}

fn jost_residual<P: RadialPotential + ?Sized>(field: &SolutionField, q: &P) -> Result<f64> {
    let k = field.k;
    let nu = field.nu_eff;
    let top = field.free_from.unwrap_or(*field.r.last().expect("non-empty"));
    let (x, w) = gl8();
    let mi = Complex64::new(0.0, -1.0);
    let uv = |s: f64| -> Result<(Scaled, Scaled)> {
        let (u, _) = free_u_scaled(nu, k * s)?;
        let h = crate::specfun::hankel_scaled(crate::specfun::HankelKind::First, nu, k * s)?;
        let v = h.mul_c(mi * (std::f64::consts::PI * k * s / 2.0).sqrt());
        Ok((u, v))
    };
    // cumulative integrals from the top down, per node
    let mut pts: Vec<f64> = field.r.iter().copied().filter(|&r| r <= top).collect();
    let lo = pts[0];
    pts.extend(q.breakpoints().into_iter().filter(|&b| b > lo && b < top));
    pts.push(top);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut iu = Scaled::ZERO;
    let mut iv = Scaled::ZERO;
    let mut worst = 0.0f64;
    let node_set: std::collections::HashSet<u64> = field.r.iter().map(|r| r.to_bits()).collect();
    for i in (0..pts.len()).rev() {
        let r = pts[i];
        if i + 1 < pts.len() {
            let (a, b) = (r, pts[i + 1]);
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            for (xi, wi) in x.iter().zip(w) {
                let s = c + h * xi;
                let qs = q.q(s);
                if qs == 0.0 {
                    continue;
                }
                let f = field.value(s)?.mul_c(Complex64::new(qs * h * wi, 0.0));
                let (u, v) = uv(s)?;
                iu = iu + u * f;
                iv = iv + v * f;
            }
        }
        if !node_set.contains(&r.to_bits()) {
            continue;
        }
        let (u, v) = uv(r)?;
        let (f0, _) = free_jost_solution(field.sign(), nu, k, r)?;
        let f = field.value(r)?;
        let rhs = f0 + (u * iv - v * iu).mul_c(Complex64::new(1.0 / k, 0.0));
        let res = (f - rhs).abs() / f.abs().max(1e-300);
        worst = worst.max(res);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Potential;
    use crate::specfun::free_jost_functions;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_shape() {
        let g = RadialGrid::new(1e-3, 2.0, 3.0, 10, 8).unwrap();
        assert!(g.nodes.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(g.nodes[0], 1e-3);
        assert_eq!(*g.nodes.last().unwrap(), 3.0);
        assert!(g.nodes.contains(&2.0));
        assert!(RadialGrid::new(1.0, 0.5, 3.0, 4, 4).is_err());
    }

    #[test]
    fn free_regular_solution_matches_bessel() {
        let q = Potential::zero();
        let opts = SolverOptions::default();
        let grid = RadialGrid::new(1e-3, 1.0, 3.0, 20, 10).unwrap();
        let nu = c(1.5, 0.0);
        let phi = solve_regular(&q, nu, &grid, &opts).unwrap();
        let a = free_jost_functions(nu).unwrap().a;
        let (u, _) = free_u_scaled(nu, 2.0).unwrap();
        let want = (a * u).to_c();
        let got = phi.value(2.0).unwrap().to_c();
        assert!((got - want).norm() < 1e-8 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn free_jost_is_exact() {
        let q = Potential::zero();
        let grid = RadialGrid::new(1e-2, 1.0, 3.0, 10, 10).unwrap();
        let f = solve_jost(&q, c(2.0, 1.0), &grid, 1, &SolverOptions::default()).unwrap();
        for r in [0.05, 0.7, 2.9] {
            let want = free_jost_solution(1, c(2.0, 1.0), 1.0, r).unwrap().0.to_c();
            assert!((f.value(r).unwrap().to_c() - want).norm() < 1e-9 * want.norm());
        }
    }

    #[test]
    fn jost_wronskian_square_well() {
        let q = Potential::square_well(2.0, 1.5).unwrap();
        let opts = SolverOptions::default();
        let grid = RadialGrid::for_potential(&q, &opts).unwrap();
        let nu = c(2.0, 1.0);
        let fp = solve_jost(&q, nu, &grid, 1, &opts).unwrap();
        let fm = solve_jost(&q, nu, &grid, -1, &opts).unwrap();
        for &r in &grid.nodes {
            let w = wronskian(&fp, &fm, r).unwrap().to_c();
            let (f, df) = fp.eval(r).unwrap();
            let scale = (f.abs() * df.abs()).max(1.0);
            assert!((w - c(0.0, -2.0)).norm() < 1e-9 * scale, "r = {r}: {w}");
        }
    }

    #[test]
    fn volterra_certifies_and_detects_corruption() {
        let q = Potential::square_well(1.0, 1.0).unwrap();
        let opts = SolverOptions::default();
        let grid = RadialGrid::for_potential(&q, &opts).unwrap();
        let mut phi = solve_regular(&q, c(3.0, 0.0), &grid, &opts).unwrap();
        let res = volterra_residual(&phi, &q).unwrap();
        assert!(res < 1e-6, "{res}");
        phi.perturb_node(0.7, 1e-3);
        assert!(volterra_residual(&phi, &q).unwrap() > 1e-4);

        let f = solve_jost(&q, c(1.5, 0.5), &grid, 1, &opts).unwrap();
        let res = volterra_residual(&f, &q).unwrap();
        assert!(res < 1e-6, "{res}");
    }

    #[test]
    fn free_fields_have_small_residual() {
        let q = Potential::zero();
        let opts = SolverOptions::default();
        let grid = RadialGrid::new(1e-3, 1.0, 3.0, 20, 10).unwrap();
        let phi = solve_regular(&q, c(2.0, 0.5), &grid, &opts).unwrap();
        assert!(volterra_residual(&phi, &q).unwrap() < 1e-8);
    }
}
