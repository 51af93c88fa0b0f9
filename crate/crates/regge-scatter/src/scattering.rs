//! Jost functions, the Regge interpolation, phase shifts and difference
//! functionals at fixed energy.

use crate::error::{Error, Result};
use crate::par;
use crate::potentials::{scale, Potential, RadialPotential};
use crate::quad::gl8;
use crate::radial::{solve_jost_down_to, solve_regular, RadialGrid, SolutionField, SolverOptions};
use crate::specfun::{exp_i_pi, free_jost_functions, free_jost_solution, free_u_scaled, hankel_asymptotic, HankelKind, Scaled};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Jost functions in log form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JostData {
    pub nu: Complex64,
    pub log_alpha: Complex64,
    pub log_beta: Complex64,
    pub match_radius: f64,
    /// Largest relative change of `alpha` or `beta` over the three matching radii.
    pub r_independence_residual: f64,
}

impl JostData {
    pub fn alpha(&self) -> Scaled {
        Scaled::from_log(self.log_alpha)
    }

    pub fn beta(&self) -> Scaled {
        Scaled::from_log(self.log_beta)
    }

    /// `sigma = e^{i pi (nu+1/2)} alpha / beta`.
    pub fn sigma(&self) -> Complex64 {
        (I * PI * (self.nu + 0.5) + self.log_alpha - self.log_beta).exp()
    }
}

/// Regular solution plus the Jost solutions of one potential at one order.
///
/// For compactly supported potentials without inner Jost fields, `f±` are
/// the free solutions beyond the support radius.
#[derive(Clone, Debug)]
pub struct Solutions {
    pub nu: Complex64,
    pub k: f64,
    pub phi: SolutionField,
    pub f_plus: Option<SolutionField>,
    pub f_minus: Option<SolutionField>,
    support: Option<f64>,
    match_radii: [f64; 3],
}

impl Solutions {
    /// Solve for `phi` and, when needed, `f±` down to `jost_down_to`
    /// (defaults to the matching radius).
    pub fn new<P: RadialPotential + ?Sized>(
        q: &P,
        nu: Complex64,
        grid: &RadialGrid,
        opts: &SolverOptions,
        jost_down_to: Option<f64>,
    ) -> Result<Self> {
        if nu.re < 0.0 {
            return Err(Error::Precondition(format!("Jost functions need Re nu >= 0, got {nu}")));
        }
        let phi = solve_regular(q, nu, grid, opts)?;
        let support = if q.is_zero() { Some(0.0) } else { q.support_radius() };
        let (f_plus, f_minus) = match (support, jost_down_to) {
            (Some(a), Some(r)) if r >= a => (None, None),
            (Some(_), None) => (None, None),
            (_, stop) => {
                let stop = stop.unwrap_or(grid.r_match).max(grid.r_min);
                (
                    Some(solve_jost_down_to(q, nu, grid, 1, opts, stop)?),
                    Some(solve_jost_down_to(q, nu, grid, -1, opts, stop)?),
                )
            }
        };
        Ok(Solutions { nu, k: opts.k, phi, f_plus, f_minus, support, match_radii: grid.match_radii() })
    }

    /// `(f, f')` for `sign = ±1` at `r`.
    pub fn jost(&self, sign: i32, r: f64) -> Result<(Scaled, Scaled)> {
        let field = if sign > 0 { &self.f_plus } else { &self.f_minus };
        match (field, self.support) {
            (Some(f), _) => f.eval(r),
            (None, Some(a)) if r >= a => free_jost_solution(sign, self.nu, self.k, r),
            _ => Err(Error::Range(format!("Jost solution not available at r = {r}"))),
        }
    }

    /// `(alpha, beta)` from Wronskians at `r`.
    pub fn alpha_beta_at(&self, r: f64) -> Result<(Scaled, Scaled)> {
        let (p, dp) = self.phi.eval(r)?;
        let (fm, dfm) = self.jost(-1, r)?;
        let (fp, dfp) = self.jost(1, r)?;
        let half_i = Complex64::new(0.0, 0.5);
        let a = (p * dfm - dp * fm).mul_c(half_i);
        let b = (p * dfp - dp * fp).mul_c(-half_i);
        Ok((a, b))
    }

    pub fn jost_data(&self) -> Result<JostData> {
        let [r0, r1, r2] = self.match_radii;
        let (a0, b0) = self.alpha_beta_at(r0)?;
        let mut res = 0.0f64;
        for r in [r1, r2] {
            let (a, b) = self.alpha_beta_at(r)?;
            res = res.max(rel(a, a0)).max(rel(b, b0));
        }
        Ok(JostData { nu: self.nu, log_alpha: a0.ln(), log_beta: b0.ln(), match_radius: r0, r_independence_residual: res })
    }
}

fn rel(a: Scaled, b: Scaled) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// `alpha = (i/2) W(phi, f-)`, `beta = -(i/2) W(phi, f+)` at the matching
/// radius, re-checked at `1.2` and `1.5` times it.
pub fn jost_functions<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<JostData> {
    Solutions::new(q, nu, grid, opts, None)?.jost_data()
}

/// `beta` at the matching radius only.
pub fn beta<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<Scaled> {
    let s = Solutions::new(q, nu, grid, opts, None)?;
    Ok(s.alpha_beta_at(grid.r_match)?.1)
}

/// Regge interpolation `sigma(nu) = e^{i pi (nu+1/2)} alpha/beta`.
pub fn regge_sigma<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<Complex64> {
    let j = jost_functions(q, nu, grid, opts)?;
    let b0 = free_jost_functions(nu)?.beta0;
    let h = (j.beta() / b0).abs();
    if h < 1e-10 {
        return Err(Error::NearPole(h));
    }
    Ok(j.sigma())
}

/// How a phase shift was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseMethod {
    ArgTracked,
    SmallPhase,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseShift {
    pub nu: Complex64,
    pub delta: Complex64,
    /// Order where branch tracking started (the order itself for the small-phase route).
    pub branch_anchor: f64,
    pub method: PhaseMethod,
}

/// Branch-tracking controls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrackOptions {
    /// Anchor at `nu(l) + anchor_offset`.
    pub anchor_offset: f64,
    pub step: f64,
    /// Use the small-phase route when the Born estimate is below this.
    pub small_threshold: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions { anchor_offset: 40.0, step: 0.25, small_threshold: 1e-8 }
    }
}

/// `nu(l) = l + (n-2)/2`.
pub fn nu_of_l(l: u32, n: u32) -> f64 {
    l as f64 + (n as f64 - 2.0) / 2.0
}

/// Composite 8-point Gauss-Legendre sum of a scaled integrand over panels.
fn gl_scaled(panels: &[f64], mut f: impl FnMut(f64) -> Result<Scaled>) -> Result<Scaled> {
    let (x, w) = gl8();
    let mut acc = Scaled::ZERO;
    for p in panels.windows(2) {
        let c = 0.5 * (p[0] + p[1]);
        let h = 0.5 * (p[1] - p[0]);
        for (xi, wi) in x.iter().zip(w) {
            let v = f(c + h * xi)?;
            if !v.is_zero() {
                acc = acc + v.mul_c(cr(h * wi));
            }
        }
    }
    Ok(acc)
}

fn uniform_panels(lo: f64, hi: f64, n: usize, breaks: &[f64]) -> Vec<f64> {
    let mut p: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    p.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    p.sort_by(f64::total_cmp);
    p.dedup();
    p
}

/// Upper end of the region where `q` is not negligible.
fn q_top<P: RadialPotential + ?Sized>(q: &P, grid: &RadialGrid) -> f64 {
    q.support_radius().unwrap_or(grid.r_max).min(grid.r_max)
}

/// Born estimate `-int_0^inf u(r)^2 q(r) dr` (real `nu`, `k = 1`).
pub fn born_phase<P: RadialPotential + ?Sized>(q: &P, nu: f64, grid: &RadialGrid) -> Result<f64> {
    if q.is_zero() {
        return Ok(0.0);
    }
    let top = q_top(q, grid);
    let panels = uniform_panels(0.0, top, 64, &q.breakpoints());
    let s = gl_scaled(&panels, |r| {
        let qr = q.q(r);
        if qr == 0.0 || r == 0.0 {
            return Ok(Scaled::ZERO);
        }
        let (u, _) = free_u_scaled(cr(nu), r)?;
        Ok((u * u).mul_c(cr(-qr)))
    })?;
    Ok(s.to_c().re)
}

/// `X = int_0^inf u q phi dr`; satisfies
/// `alpha e^{i pi (nu-1/2)/2} + beta e^{-i pi (nu-1/2)/2} = -X`.
pub fn u_q_phi_integral<P: RadialPotential + ?Sized>(q: &P, sol: &Solutions, grid: &RadialGrid) -> Result<Scaled> {
    if q.is_zero() {
        return Ok(Scaled::ZERO);
    }
    let nu = sol.nu;
    let (r0, _) = sol.phi.r_range();
    let top = q_top(q, grid);
    let panels = sol.phi.panels(r0, top, &q.breakpoints());
    let body = gl_scaled(&panels, |r| {
        let qr = q.q(r);
        if qr == 0.0 {
            return Ok(Scaled::ZERO);
        }
        let (u, _) = free_u_scaled(nu, r)?;
        Ok((u * sol.phi.value(r)?).mul_c(cr(qr)))
    })?;
    // [0, r0]: u ~ phi ~ r^{nu+1/2} up to A(nu)
    let (u0, _) = free_u_scaled(nu, r0)?;
    let seed = (u0 * sol.phi.value(r0)?).mul_c(cr(q.q(r0) * r0) / (2.0 * nu + 2.0));
    Ok(body + seed)
}

/// Both sides of `alpha e^{i pi(nu-1/2)/2} + beta e^{-i pi(nu-1/2)/2} = -int u q phi`,
/// plus `beta` (the left side is a cancellation on the scale of `|beta|`).
pub fn newrep2_sides<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<(Scaled, Scaled, Scaled)> {
    let sol = Solutions::new(q, nu, grid, opts, None)?;
    let j = sol.jost_data()?;
    let th = (nu - 0.5) * 0.5;
    let lhs = j.alpha().mul_c(exp_i_pi(th)) + j.beta().mul_c(exp_i_pi(-th));
    let rhs = -u_q_phi_integral(q, &sol, grid)?;
    Ok((lhs, rhs, j.beta()))
}

/// `e^{2 i delta} - 1 = X / (beta e^{-i pi (nu-1/2)/2})` without cancellation,
/// `delta = log1p(.)/(2i)`.
pub fn phase_shift_small<P: RadialPotential + ?Sized>(q: &P, nu: f64, grid: &RadialGrid, opts: &SolverOptions) -> Result<PhaseShift> {
    let nuc = cr(nu);
    let out = |d: Complex64| PhaseShift { nu: nuc, delta: d, branch_anchor: nu, method: PhaseMethod::SmallPhase };
    if q.is_zero() {
        return Ok(out(Complex64::new(0.0, 0.0)));
    }
    let sol = Solutions::new(q, nuc, grid, opts, None)?;
    let (_, b) = sol.alpha_beta_at(grid.r_match)?;
    let x = u_q_phi_integral(q, &sol, grid)?;
    let s1 = (x / b.mul_c(exp_i_pi(-(nuc - 0.5) * 0.5))).to_c();
    if s1.norm() >= 0.2 {
        return Err(Error::Precondition(format!("phase shift at nu = {nu} too large for the small-phase route")));
    }
    let delta = log1p(s1) / (2.0 * I);
    if delta.norm() >= 0.1 {
        return Err(Error::Precondition(format!("|delta| = {} >= 0.1 at nu = {nu}", delta.norm())));
    }
    Ok(out(Complex64::new(delta.re, if nu.is_finite() { delta.im } else { 0.0 })))
}

fn log1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        // z - z^2/2 + z^3/3 - z^4/4
        z * (1.0 - z * (0.5 - z * (1.0 / 3.0 - z * 0.25)))
    } else {
        (1.0 + z).ln()
    }
}

fn wrap(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

/// Physical phase shift `delta_l = arg(sigma(nu(l)))/2` in dimension `n`.
pub fn phase_shift<P: RadialPotential + ?Sized>(q: &P, l: u32, n: u32, grid: &RadialGrid, opts: &SolverOptions) -> Result<PhaseShift> {
    Ok(phase_shifts(q, &[l], n, grid, opts, &TrackOptions::default())?.remove(0))
}

/// Phase shifts for several `l`, sharing one branch track.
///
/// Orders whose Born estimate is below `track.small_threshold` use the
/// small-phase route; the rest are tracked along real `nu` from the anchor
/// down, unwrapping `arg sigma` by nearest continuation.
pub fn phase_shifts<P: RadialPotential + ?Sized>(
    q: &P,
    ls: &[u32],
    n: u32,
    grid: &RadialGrid,
    opts: &SolverOptions,
    track: &TrackOptions,
) -> Result<Vec<PhaseShift>> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension n = {n} must be >= 2")));
    }
    let mut out: Vec<Option<PhaseShift>> = vec![None; ls.len()];
    let mut tracked = Vec::new();
    for (i, &l) in ls.iter().enumerate() {
        let nu = nu_of_l(l, n);
        if q.is_zero() {
            out[i] = Some(PhaseShift { nu: cr(nu), delta: cr(0.0), branch_anchor: nu, method: PhaseMethod::SmallPhase });
            continue;
        }
        if born_phase(q, nu, grid)?.abs() < track.small_threshold {
            if let Ok(p) = phase_shift_small(q, nu, grid, opts) {
                out[i] = Some(p);
                continue;
            }
        }
        tracked.push(i);
    }
    if !tracked.is_empty() {
        let lo = tracked.iter().map(|&i| nu_of_l(ls[i], n)).fold(f64::INFINITY, f64::min);
        let hi = tracked.iter().map(|&i| nu_of_l(ls[i], n)).fold(f64::NEG_INFINITY, f64::max);
        let anchor = hi + track.anchor_offset;
        let theta = track_arg_sigma(q, lo, anchor, grid, opts, track.step)?;
        for &i in &tracked {
            let nu = nu_of_l(ls[i], n);
            let j = ((nu - lo) / track.step).round() as usize;
            let th = theta.iter().find(|(v, _)| (v - nu).abs() < 1e-9).map(|t| t.1).unwrap_or(theta[j].1);
            out[i] = Some(PhaseShift { nu: cr(nu), delta: cr(0.5 * th), branch_anchor: anchor, method: PhaseMethod::ArgTracked });
        }
    }
    Ok(out.into_iter().map(|p| p.expect("filled")).collect())
}

/// Continuous `arg sigma` on `[lo, anchor]`, pinned to the principal value at the anchor.
fn track_arg_sigma<P: RadialPotential + ?Sized>(
    q: &P,
    lo: f64,
    anchor: f64,
    grid: &RadialGrid,
    opts: &SolverOptions,
    step: f64,
) -> Result<Vec<(f64, f64)>> {
    let m = ((anchor - lo) / step).round() as usize;
    let nus: Vec<f64> = (0..=m).map(|j| lo + j as f64 * step).collect();
    let arg = |v: f64| -> Result<f64> {
        let j = jost_functions(q, cr(v), grid, opts)?;
        Ok(wrap((I * PI * (v + 0.5) + j.log_alpha - j.log_beta).im))
    };
    let args: Vec<Result<f64>> = par::map(&nus, |&v| arg(v));
    let args: Vec<f64> = args.into_iter().collect::<Result<_>>()?;
    let mut out = vec![(0.0, 0.0); m + 1];
    out[m] = (nus[m], args[m]);
    for j in (0..m).rev() {
        let th = follow(&arg, nus[j + 1], out[j + 1].1, nus[j], args[j], 0)?;
        out[j] = (nus[j], th);
    }
    Ok(out)
}

/// Unwrap `a_to` (principal arg at `to`) against the continuous value at `from`,
/// bisecting when the step exceeds `pi/2`.
fn follow(arg: &dyn Fn(f64) -> Result<f64>, from: f64, th_from: f64, to: f64, a_to: f64, depth: u32) -> Result<f64> {
    let d = wrap(a_to - th_from);
    if d.abs() <= 0.5 * PI {
        return Ok(th_from + d);
    }
    if depth >= 10 {
        return Err(Error::Branch(to));
    }
    let mid = 0.5 * (from + to);
    let th_mid = follow(arg, from, th_from, mid, arg(mid)?, depth + 1)?;
    follow(arg, mid, th_mid, to, a_to, depth + 1)
}

/// Difference of two phase shifts at a common real order from
/// `alpha beta~ - alpha~ beta = (1/2i) int (q - q~) phi phi~ dr`:
/// `sigma - sigma~ = e^{i pi (nu+1/2)} (alpha beta~ - alpha~ beta)/(beta beta~)`.
pub fn phase_shift_difference<P: RadialPotential + ?Sized, Q: RadialPotential + ?Sized>(
    q: &P,
    qt: &Q,
    nu: f64,
    grid: &RadialGrid,
    opts: &SolverOptions,
) -> Result<f64> {
    let d = jost_difference(q, qt, cr(nu), grid, opts)?;
    let s = Solutions::new(qt, cr(nu), grid, opts, None)?;
    let (at, bt) = s.alpha_beta_at(grid.r_match)?;
    let b = d.beta_tilde + d.d_beta;
    let ds = (d.cross / (b * bt)).mul_c(exp_i_pi(cr(nu + 0.5)));
    let sigma_t = (at / bt).mul_c(exp_i_pi(cr(nu + 0.5))).to_c();
    Ok((log1p(ds.to_c() / sigma_t) / (2.0 * I)).re)
}

/// Quadrature and direct forms of the Jost-function differences.
#[derive(Clone, Copy, Debug)]
pub struct JostDifference {
    /// `alpha - alpha~ = (1/2i) int (q - q~) f- phi~`.
    pub d_alpha: Scaled,
    /// `beta - beta~ = -(1/2i) int (q - q~) f+ phi~`.
    pub d_beta: Scaled,
    /// `alpha beta~ - alpha~ beta = (1/2i) int (q - q~) phi phi~`.
    pub cross: Scaled,
    /// Direct subtraction of separately computed Jost functions.
    pub direct_d_alpha: Scaled,
    pub direct_d_beta: Scaled,
    pub direct_cross: Scaled,
    pub beta_tilde: Scaled,
}

/// Grid covering both potentials.
pub fn common_grid<P: RadialPotential + ?Sized, Q: RadialPotential + ?Sized>(q: &P, qt: &Q, opts: &SolverOptions) -> Result<RadialGrid> {
    let g1 = RadialGrid::for_potential(q, opts)?;
    let g2 = RadialGrid::for_potential(qt, opts)?;
    if g1.r_max >= g2.r_max && g1.r_match >= g2.r_match {
        Ok(g1)
    } else if g2.r_max >= g1.r_max && g2.r_match >= g1.r_match {
        Ok(g2)
    } else {
        let rm = g1.r_match.max(g2.r_match);
        RadialGrid::new(g1.r_min.min(g2.r_min), rm, g1.r_max.max(g2.r_max).max(1.5 * rm), 24, (4.0 * g1.r_max.max(g2.r_max)).ceil() as usize)
    }
}

pub fn jost_difference<P: RadialPotential + ?Sized, Q: RadialPotential + ?Sized>(
    q: &P,
    qt: &Q,
    nu: Complex64,
    grid: &RadialGrid,
    opts: &SolverOptions,
) -> Result<JostDifference> {
    let s = Solutions::new(q, nu, grid, opts, Some(grid.r_min))?;
    let st = Solutions::new(qt, nu, grid, opts, None)?;
    let (a, b) = s.alpha_beta_at(grid.r_match)?;
    let (at, bt) = st.alpha_beta_at(grid.r_match)?;
    let lo = s.phi.r_range().0.max(st.phi.r_range().0).max(grid.r_min);
    let mut breaks = q.breakpoints();
    breaks.extend(qt.breakpoints());
    let top = match (q.support_radius(), qt.support_radius()) {
        (Some(x), Some(y)) => x.max(y),
        _ => grid.r_max,
    };
    let mut panels = st.phi.panels(lo, top, &breaks);
    let extra = s.phi.panels(lo, top, &[]);
    panels.extend(extra);
    panels.sort_by(f64::total_cmp);
    panels.dedup();
    let half_over_i = Complex64::new(0.0, -0.5);
    let (mut ia, mut ib, mut ic) = (Scaled::ZERO, Scaled::ZERO, Scaled::ZERO);
    let (x, w) = gl8();
    let mut add = |r: f64, wt: f64| -> Result<()> {
        let dq = q.q(r) - qt.q(r);
        if dq == 0.0 {
            return Ok(());
        }
        let pt = st.phi.value(r)?.mul_c(cr(dq * wt));
        ia = ia + s.jost(-1, r)?.0 * pt;
        ib = ib + s.jost(1, r)?.0 * pt;
        ic = ic + s.phi.value(r)? * pt;
        Ok(())
    };
    for p in panels.windows(2) {
        let c = 0.5 * (p[0] + p[1]);
        let h = 0.5 * (p[1] - p[0]);
        for (xi, wi) in x.iter().zip(w) {
            add(c + h * xi, h * wi)?;
        }
    }
    // [0, lo]: integrands ~ r^{1} (f phi~) and r^{2 nu + 1} (phi phi~)
    add(lo, 0.5 * lo)?;
    Ok(JostDifference {
        d_alpha: ia.mul_c(half_over_i),
        d_beta: ib.mul_c(-half_over_i),
        cross: ic.mul_c(half_over_i),
        direct_d_alpha: a - at,
        direct_d_beta: b - bt,
        direct_cross: a * bt - at * b,
        beta_tilde: bt,
    })
}

/// `F(r, nu) = f+ f~- - f- f~+` and the two parts of its decomposition
/// `F = (Phi~ f+ - Phi f~+) + (alpha/beta - alpha~/beta~) f+ f~+`,
/// `Phi = phi/beta`.
#[derive(Clone, Copy, Debug)]
pub struct BorgGap {
    pub f: Scaled,
    pub p1: Scaled,
    pub p2: Scaled,
}

pub fn borg_functional<P: RadialPotential + ?Sized, Q: RadialPotential + ?Sized>(
    q: &P,
    qt: &Q,
    r: f64,
    nu: Complex64,
    grid: &RadialGrid,
    opts: &SolverOptions,
) -> Result<BorgGap> {
    let s = Solutions::new(q, nu, grid, opts, Some(r.min(grid.r_match)))?;
    let st = Solutions::new(qt, nu, grid, opts, Some(r.min(grid.r_match)))?;
    let fp = s.jost(1, r)?.0;
    let fm = s.jost(-1, r)?.0;
    let tfp = st.jost(1, r)?.0;
    let tfm = st.jost(-1, r)?.0;
    let f = fp * tfm - fm * tfp;
    let (a, b) = s.alpha_beta_at(grid.r_match)?;
    let (at, bt) = st.alpha_beta_at(grid.r_match)?;
    let p1 = st.phi.value(r)? / bt * fp - s.phi.value(r)? / b * tfp;
    // alpha/beta - alpha~/beta~ cancels badly for large nu: use the cross integral
    let _ = (a, at);
    let cross = jost_difference(q, qt, nu, grid, opts)?.cross;
    let p2 = cross / (b * bt) * fp * tfp;
    Ok(BorgGap { f, p1, p2 })
}

/// Partial-wave amplitude in three dimensions.
#[derive(Clone, Debug)]
pub struct Amplitude {
    pub value: Complex64,
    pub tail_estimate: f64,
    pub phase_shifts: Vec<f64>,
}

/// `-(1/pi^2) sum_{l <= l_max} (2l+1) (e^{2 i delta_l} - 1)/(2i) P_l(cos theta)`.
pub fn amplitude_n3<P: RadialPotential + ?Sized>(q: &P, theta: f64, l_max: u32, grid: &RadialGrid, opts: &SolverOptions) -> Result<Amplitude> {
    let ls: Vec<u32> = (0..=l_max).collect();
    let deltas: Vec<f64> = phase_shifts(q, &ls, 3, grid, opts, &TrackOptions::default())?.iter().map(|p| p.delta.re).collect();
    Ok(amplitude_from_phases(&deltas, theta))
}

/// Amplitude partial sum from given phase shifts `delta_0..delta_L`.
pub fn amplitude_from_phases(deltas: &[f64], theta: f64) -> Amplitude {
    let x = theta.cos();
    let (mut p0, mut p1) = (1.0, x);
    let mut sum = Complex64::new(0.0, 0.0);
    for (l, &d) in deltas.iter().enumerate() {
        let pl = if l == 0 { p0 } else { p1 };
        let t = ((2.0 * I * d).exp() - 1.0) / (2.0 * I);
        sum += t * ((2 * l + 1) as f64 * pl);
        if l >= 1 {
            let lf = l as f64;
            let p2 = ((2.0 * lf + 1.0) * x * p1 - lf * p0) / (lf + 1.0);
            p0 = p1;
            p1 = p2;
        }
    }
    let nl = deltas.len();
    let tail = if nl >= 2 {
        let (d1, d0) = (deltas[nl - 1].abs(), deltas[nl - 2].abs());
        let rho = if d0 > 0.0 { (d1 / d0).min(0.9) } else { 0.9 };
        let lf = nl as f64;
        2.0 * (2.0 * lf + 1.0) * d1 * rho / (1.0 - rho) / (PI * PI)
    } else {
        f64::INFINITY
    };
    Amplitude { value: -sum / (PI * PI), tail_estimate: tail, phase_shifts: deltas.to_vec() }
}

/// `log beta(nu; e^theta, q_theta)` for real `theta`: the Jost function at
/// energy `k = e^theta` for `q_theta(r) = e^{2 theta} q(e^theta r)`.
/// Dilation gives `beta(nu; 1, q) = e^{theta (nu - 1/2)} beta(nu; e^theta, q_theta)`.
pub fn scaled_beta(q: &Potential, nu: Complex64, theta: Complex64, opts: &SolverOptions) -> Result<Complex64> {
    if theta.im != 0.0 {
        return Err(Error::Precondition("complex scaling angles are not supported by the real-radius solver".into()));
    }
    let qs = scale(q, theta)?;
    let o = SolverOptions { k: theta.re.exp(), ..*opts };
    let grid = RadialGrid::for_potential(&qs, &o)?;
    Ok(jost_functions(&qs, nu, &grid, &o)?.log_beta)
}

/// `|e^{theta(nu-1/2)} beta_theta / beta - 1|`.
pub fn scaling_identity_residual(q: &Potential, nu: Complex64, theta: f64, opts: &SolverOptions) -> Result<f64> {
    let lb_t = scaled_beta(q, nu, cr(theta), opts)?;
    let grid = RadialGrid::for_potential(q, opts)?;
    let lb = jost_functions(q, nu, &grid, opts)?.log_beta;
    Ok((((nu - 0.5) * theta + lb_t - lb).exp() - 1.0).norm())
}

/// `f0±(x)` from the large-argument Hankel expansion.
fn free_jost_asymptotic(sign: i32, nu: Complex64, x: f64) -> Complex64 {
    let kind = if sign > 0 { HankelKind::First } else { HankelKind::Second };
    let ph = exp_i_pi((nu + 0.5) * (0.5 * sign.signum() as f64));
    ph * (PI * x / 2.0).sqrt() * hankel_asymptotic(kind, nu, x)
}

/// Both sides of `|alpha|^2 - |beta|^2 = 2 Re nu Im nu int_0^inf |phi|^2 / r^2 dr`
/// for compactly supported `q`, normalized by `|beta|^2`.
pub fn link_identity_sides<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<(f64, f64)> {
    let a_supp = if q.is_zero() { grid.r_max } else { q.support_radius().ok_or_else(|| Error::Precondition("link identity needs compact support".into()))? };
    let sol = Solutions::new(q, nu, grid, opts, None)?;
    let (a, b) = sol.alpha_beta_at(grid.r_match)?;
    let nb = b.abs();
    let an = (a / Scaled::from_c(cr(nb))).to_c();
    let bn = (b / Scaled::from_c(cr(nb))).to_c();
    let lhs = an.norm_sqr() - bn.norm_sqr();
    let inv = Scaled::from_c(cr(1.0 / nb));
    let (r0, r_top) = sol.phi.r_range();
    let r_in = r_top.min(grid.r_max);
    // interior from the solution field
    let panels = sol.phi.panels(r0, r_in, &q.breakpoints());
    let mut integral = gl_scaled(&panels, |r| {
        let p = sol.phi.value(r)? * inv;
        Ok(Scaled::from_c(cr(p.to_c().norm_sqr() / (r * r))))
    })?
    .to_c()
    .re;
    // [0, r0]: |phi|^2 ~ r^{2 Re nu + 1}
    let p0 = (sol.phi.value(r0)? * inv).to_c().norm_sqr();
    integral += p0 / (r0 * 2.0 * nu.re.max(1e-300));
    let _ = a_supp;
    // exterior: phi = alpha f0+ + beta f0-
    let r_asym = 25.0;
    let ext = |r: f64| -> Result<Scaled> {
        let fp = free_jost_solution(1, nu, 1.0, r)?.0;
        let fm = free_jost_solution(-1, nu, 1.0, r)?.0;
        let p = (fp.mul_c(an) + fm.mul_c(bn)).to_c();
        Ok(Scaled::from_c(cr(p.norm_sqr() / (r * r))))
    };
    let mid_panels = uniform_panels(r_in, r_asym, ((r_asym - r_in) * 2.0).ceil() as usize, &[]);
    integral += gl_scaled(&mid_panels, ext)?.to_c().re;
    let r_far = 4000.0;
    let far_panels = uniform_panels(r_asym, r_far, ((r_far - r_asym) * 2.0) as usize, &[]);
    integral += gl_scaled(&far_panels, |r| {
        let p = an * free_jost_asymptotic(1, nu, r) + bn * free_jost_asymptotic(-1, nu, r);
        Ok(Scaled::from_c(cr(p.norm_sqr() / (r * r))))
    })?
    .to_c()
    .re;
    integral += (an.norm_sqr() + bn.norm_sqr()) / r_far;
    let rhs = 2.0 * nu.re * nu.im * integral;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Potential;
    use crate::specfun::free_jost_functions;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sw() -> Potential {
        Potential::square_well(1.0, 1.0).unwrap()
    }

    #[test]
    fn free_jost_functions_match_closed_forms() {
        let q = Potential::zero();
        let opts = SolverOptions::default();
        let grid = RadialGrid::new(1e-3, 1.0, 1.5, 20, 4).unwrap();
        for nu in [c(0.5, 0.0), c(2.0, 0.0), c(1.0, 2.0)] {
            let j = jost_functions(&q, nu, &grid, &opts).unwrap();
            let f = free_jost_functions(nu).unwrap();
            assert!(rel(j.alpha(), f.alpha0) < 1e-8, "{nu}");
            assert!(rel(j.beta(), f.beta0) < 1e-8, "{nu}");
            assert!((j.sigma() - 1.0).norm() < 1e-8);
        }
    }

    #[test]
    fn unitarity_and_matching() {
        let q = sw();
        let opts = SolverOptions::default();
        let grid = RadialGrid::for_potential(&q, &opts).unwrap();
        let j = jost_functions(&q, c(2.3, 0.0), &grid, &opts).unwrap();
        assert!((j.sigma().norm() - 1.0).abs() < 1e-8);
        assert!(j.r_independence_residual < 1e-8);
        let s = regge_sigma(&q, c(3.0, -1.0), &grid, &opts).unwrap();
        let ab = (s * exp_i_pi(-c(3.5, -1.0))).norm();
        assert!(ab < 1.0);
    }

    #[test]
    fn small_phase_agrees_with_tracking() {
        let q = sw();
        let opts = SolverOptions::default();
        let grid = RadialGrid::for_potential(&q, &opts).unwrap();
        let small = phase_shift_small(&q, 3.5, &grid, &opts).unwrap().delta.re;
        let tracked = phase_shifts(&q, &[3], 3, &grid, &opts, &TrackOptions { small_threshold: 0.0, ..Default::default() }).unwrap()[0];
        assert_eq!(tracked.method, PhaseMethod::ArgTracked);
        assert!((small - tracked.delta.re).abs() < 1e-4 * small.abs(), "{small} {}", tracked.delta.re);
    }

    #[test]
    fn s_wave_square_well() {
        // l = 0, n = 3: tan(K a + ...) textbook formula with K^2 = 1 - q0
        for q0 in [0.5, -2.0] {
            let q = Potential::square_well(q0, 1.0).unwrap();
            let opts = SolverOptions::default();
            let grid = RadialGrid::for_potential(&q, &opts).unwrap();
            let d = phase_shift(&q, 0, 3, &grid, &opts).unwrap().delta.re;
            let kk = (1.0 - q0).sqrt();
            let want = (kk.tan().recip() * kk).recip().atan() - 1.0;
            let want = want + (PI * ((d - want) / PI).round());
            assert!((d - want).abs() < 1e-8, "{d} {want}");
        }
    }

    #[test]
    fn newrep2_holds() {
        let q = sw();
        let opts = SolverOptions::default();
        let grid = RadialGrid::for_potential(&q, &opts).unwrap();
        for nu in [2.0, 5.0, 10.0] {
            let (l, r, b) = newrep2_sides(&q, c(nu, 0.0), &grid, &opts).unwrap();
            assert!(rel(l, r) < 1e-6 || (l - r).abs() < 1e-12 * b.abs(), "{nu}: {} {}", l.to_c(), r.to_c());
        }
    }

    #[test]
    fn jost_difference_matches_direct() {
        let q = Potential::square_well(1.0, 2.0).unwrap();
        let qt = Potential::sum(vec![q.clone(), Potential::square_well(-0.5, 1.5).unwrap()]);
        let opts = SolverOptions::default();
        let grid = common_grid(&q, &qt, &opts).unwrap();
        let d = jost_difference(&q, &qt, c(2.0, 0.5), &grid, &opts).unwrap();
        assert!(rel(d.d_alpha, d.direct_d_alpha) < 1e-6, "{} {}", d.d_alpha.to_c(), d.direct_d_alpha.to_c());
        assert!(rel(d.d_beta, d.direct_d_beta) < 1e-6, "{} {}", d.d_beta.to_c(), d.direct_d_beta.to_c());
        assert!(rel(d.cross, d.direct_cross) < 1e-6, "{} {}", d.cross.to_c(), d.direct_cross.to_c());
        let same = jost_difference(&q, &q, c(2.0, 0.5), &grid, &opts).unwrap();
        assert!(same.d_alpha.is_zero() && same.cross.is_zero());
    }

    #[test]
    fn link_identity() {
        let q = sw();
        let opts = SolverOptions::default();
        let grid = RadialGrid::for_potential(&q, &opts).unwrap();
        let (l, r) = link_identity_sides(&q, c(1.0, 1.0), &grid, &opts).unwrap();
        assert!((l - r).abs() < 1e-5 * l.abs(), "{l} {r}");
    }

    #[test]
    fn asymptotic_hankel_matches_series() {
        for nu in [c(0.7, 0.0), c(2.0, 0.5)] {
            let a = free_jost_asymptotic(1, nu, 30.0);
            let b = free_jost_solution(1, nu, 1.0, 30.0).unwrap().0.to_c();
            assert!((a - b).norm() < 1e-10, "{a} {b}");
        }
    }

    #[test]
    fn amplitude_vanishes_for_zero_potential() {
        let a = amplitude_from_phases(&[0.0; 6], 0.4);
        assert_eq!(a.value, c(0.0, 0.0));
    }
}
