//! Regge poles: zeros of `beta(nu)` in the first quadrant, located by the
//! argument principle on `h = beta/beta0` and refined by Newton iteration.

use crate::error::{Error, Result};
use crate::par;
use crate::potentials::{Potential, RadialPotential};
use crate::radial::{RadialGrid, SolverOptions};
use crate::scattering::beta;
use crate::specfun::{free_jost_functions, lambert_w0, ln_gamma, Scaled};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `h(nu) = beta(nu)/beta0(nu)`; same zeros as `beta`, `O(1)` where the free
/// part dominates.
pub fn normalized_beta<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<Complex64> {
    let b = beta(q, nu, grid, opts)?;
    Ok((b / free_jost_functions(nu)?.beta0).to_c())
}

/// `alpha(nu)/alpha0(nu) = conj h(conj nu)`.
pub fn normalized_alpha<P: RadialPotential + ?Sized>(q: &P, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<Complex64> {
    Ok(normalized_beta(q, nu.conj(), grid, opts)?.conj())
}

/// Axis-aligned rectangle `[re_lo, re_hi] x [im_lo, im_hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl Rect {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Self {
        Rect { re_lo, re_hi, im_lo, im_hi }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_lo && z.re <= self.re_hi && z.im >= self.im_lo && z.im <= self.im_hi
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.re_lo + self.re_hi), 0.5 * (self.im_lo + self.im_hi))
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_lo, self.im_lo),
            Complex64::new(self.re_hi, self.im_lo),
            Complex64::new(self.re_hi, self.im_hi),
            Complex64::new(self.re_lo, self.im_hi),
        ]
    }

    /// Four equal children.
    pub fn quarters(&self) -> [Rect; 4] {
        let c = self.center();
        [
            Rect::new(self.re_lo, c.re, self.im_lo, c.im),
            Rect::new(c.re, self.re_hi, self.im_lo, c.im),
            Rect::new(self.re_lo, c.re, c.im, self.im_hi),
            Rect::new(c.re, self.re_hi, c.im, self.im_hi),
        ]
    }

    fn size(&self) -> f64 {
        (self.re_hi - self.re_lo).max(self.im_hi - self.im_lo)
    }
}

/// Search rectangle in the first quadrant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchRegion {
    pub rect: Rect,
    pub max_depth: u32,
    /// Contour samples with `|h|` below this are treated as passing through a zero.
    pub boundary_margin: f64,
}

impl SearchRegion {
    pub fn new(rect: Rect) -> Result<Self> {
        if rect.re_lo < 0.0 || rect.im_lo < 0.0 || rect.re_hi <= rect.re_lo || rect.im_hi <= rect.im_lo {
            return Err(Error::Domain(format!("search rectangle {rect:?} must be non-empty and in the first quadrant")));
        }
        Ok(SearchRegion { rect, max_depth: 10, boundary_margin: 1e-6 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReggePole {
    pub nu: Complex64,
    /// `|h|` at the returned root.
    pub newton_residual: f64,
    pub winding_cell: Rect,
    /// Winding number of the isolating cell (> 1 marks an unresolved cluster).
    pub multiplicity: i64,
}

/// Memoized evaluation of `h` on contour points.
pub struct Evaluator<'a> {
    f: Box<dyn Fn(Complex64) -> Result<Complex64> + Sync + 'a>,
    cache: Mutex<HashMap<(u64, u64), Complex64>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(f: impl Fn(Complex64) -> Result<Complex64> + Sync + 'a) -> Self {
        Evaluator { f: Box::new(f), cache: Mutex::new(HashMap::new()) }
    }

    /// `h = beta/beta0` for a potential.
    pub fn beta<P: RadialPotential + ?Sized>(q: &'a P, grid: &'a RadialGrid, opts: &'a SolverOptions) -> Self {
        Evaluator::new(move |nu| normalized_beta(q, nu, grid, opts))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let key = (z.re.to_bits(), z.im.to_bits());
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = (self.f)(z)?;
        self.cache.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    fn eval_many(&self, zs: &[Complex64]) -> Result<Vec<Complex64>> {
        par::map(zs, |&z| self.eval(z)).into_iter().collect()
    }
}

const SAMPLE_SPACING: f64 = 0.2;

fn wrap(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

/// Winding number of `f` around the rectangle, by adaptive refinement of the
/// boundary until every phase step is below `pi/2`.
pub fn winding(ev: &Evaluator, rect: &Rect, margin: f64) -> Result<i64> {
    let c = rect.corners();
    let mut pts = Vec::new();
    for e in 0..4 {
        let (a, b) = (c[e], c[(e + 1) % 4]);
        // sample spacing well below the pole spacing guards against aliasing
        let n0 = ((b - a).norm() / SAMPLE_SPACING).ceil().max(8.0) as usize;
        for i in 0..n0 {
            pts.push(a + (b - a) * (i as f64 / n0 as f64));
        }
    }
    pts.push(c[0]);
    let mut vals = ev.eval_many(&pts)?;
    for _ in 0..24 {
        if let Some(v) = vals.iter().find(|v| v.norm() < margin) {
            return Err(Error::ContourZero(v.norm().to_bits() as usize));
        }
        let bad: Vec<usize> = (0..pts.len() - 1)
            .filter(|&i| wrap(vals[i + 1].arg() - vals[i].arg()).abs() >= 0.5 * PI)
            .collect();
        if bad.is_empty() {
            let total: f64 = (0..pts.len() - 1).map(|i| wrap(vals[i + 1].arg() - vals[i].arg())).sum();
            return Ok((total / (2.0 * PI)).round() as i64);
        }
        let mids: Vec<Complex64> = bad.iter().map(|&i| 0.5 * (pts[i] + pts[i + 1])).collect();
        let mv = ev.eval_many(&mids)?;
        let mut np = Vec::with_capacity(pts.len() + mids.len());
        let mut nv = Vec::with_capacity(pts.len() + mids.len());
        let mut k = 0;
        for i in 0..pts.len() {
            np.push(pts[i]);
            nv.push(vals[i]);
            if k < bad.len() && bad[k] == i {
                np.push(mids[k]);
                nv.push(mv[k]);
                k += 1;
            }
        }
        pts = np;
        vals = nv;
    }
    Err(Error::NoConvergence(format!("contour refinement did not resolve the phase of {rect:?}")))
}

/// Winding with the contour nudged off near-zeros.
fn robust_winding(ev: &Evaluator, rect: &Rect, margin: f64) -> Result<(i64, Rect)> {
    let mut r = *rect;
    for attempt in 0..4 {
        match winding(ev, &r, margin) {
            Err(Error::ContourZero(_)) => {
                let d = 1e-3 * rect.size() * (attempt + 1) as f64;
                r = Rect::new(rect.re_lo - d, rect.re_hi + d, (rect.im_lo - d).max(0.0), rect.im_hi + d);
            }
            other => return other.map(|w| (w, r)),
        }
    }
    Err(Error::ContourZero(4))
}

/// Number of zeros of `beta` in the region.
pub fn count_zeros<P: RadialPotential + ?Sized>(q: &P, region: &SearchRegion, grid: &RadialGrid, opts: &SolverOptions) -> Result<i64> {
    let ev = Evaluator::beta(q, grid, opts);
    Ok(robust_winding(&ev, &region.rect, region.boundary_margin)?.0)
}

/// Number of zeros of `alpha` in the region (zero for Re, Im > 0).
pub fn count_alpha_zeros<P: RadialPotential + ?Sized>(q: &P, region: &SearchRegion, grid: &RadialGrid, opts: &SolverOptions) -> Result<i64> {
    let ev = Evaluator::new(|nu| normalized_alpha(q, nu, grid, opts));
    Ok(robust_winding(&ev, &region.rect, region.boundary_margin)?.0)
}

/// Newton iteration with a central-difference derivative.
pub fn newton(ev: &dyn Fn(Complex64) -> Result<Complex64>, z0: Complex64, tol: f64, max_iter: usize) -> Result<(Complex64, f64)> {
    newton_within(ev, z0, tol, max_iter, None)
}

/// Newton iteration that gives up once an iterate leaves `bound`.
pub fn newton_within(
    ev: &dyn Fn(Complex64) -> Result<Complex64>,
    z0: Complex64,
    tol: f64,
    max_iter: usize,
    bound: Option<&Rect>,
) -> Result<(Complex64, f64)> {
    let mut z = z0;
    for _ in 0..max_iter {
        if bound.is_some_and(|b| !b.contains(z)) {
            return Err(Error::NoConvergence(format!("Newton left the search cell from {z0}")));
        }
        let h = ev(z)?;
        let d = 1e-6 * (1.0 + z.norm());
        let dh = (ev(z + d)? - ev(z - d)?) / (2.0 * d);
        if dh.norm() == 0.0 {
            return Err(Error::NoConvergence(format!("zero derivative at {z}")));
        }
        let step = h / dh;
        z -= step;
        if step.norm() < tol {
            return Ok((z, ev(z)?.norm()));
        }
    }
    Err(Error::NoConvergence(format!("Newton did not converge from {z0}")))
}

/// Subdivide until each cell winds at most once, then refine by Newton.
pub fn find_poles_with(ev: &Evaluator, region: &SearchRegion, tol: f64) -> Result<Vec<ReggePole>> {
    let mut poles = Vec::new();
    let mut level: Vec<(Rect, u32)> = vec![(region.rect, 0)];
    while !level.is_empty() {
        let counted: Vec<Result<(i64, Rect)>> = par::map(&level, |(r, _)| robust_winding(ev, r, region.boundary_margin));
        let mut next = Vec::new();
        let mut singles = Vec::new();
        for ((rect, depth), w) in level.iter().zip(counted) {
            let (w, contour) = w?;
            if w < 0 {
                return Err(Error::NoConvergence(format!("negative winding {w} on {rect:?}")));
            }
            if w == 0 {
                continue;
            }
            if w == 1 {
                singles.push((*rect, contour, *depth));
            } else if *depth >= region.max_depth {
                let z = rect.center();
                poles.push(ReggePole { nu: z, newton_residual: ev.eval(z)?.norm(), winding_cell: contour, multiplicity: w });
            } else {
                next.extend(rect.quarters().into_iter().map(|r| (r, depth + 1)));
            }
        }
        let refined: Vec<Result<Option<(Complex64, f64)>>> = par::map(&singles, |(rect, contour, _)| {
            let f = |z: Complex64| ev.eval(z);
            let w = rect.re_hi - rect.re_lo;
            let h = rect.im_hi - rect.im_lo;
            let bound = Rect { re_lo: (rect.re_lo - w).max(0.0), re_hi: rect.re_hi + w, im_lo: rect.im_lo - h, im_hi: rect.im_hi + h };
            match newton_within(&f, rect.center(), tol, 60, Some(&bound)) {
                Ok((z, res)) if contour.contains(z) => Ok(Some((z, res))),
                Ok(_) | Err(Error::NoConvergence(_)) => Ok(None),
                Err(e) => Err(e),
            }
        });
        for ((rect, contour, depth), r) in singles.into_iter().zip(refined) {
            match r? {
                Some((z, res)) => poles.push(ReggePole { nu: z, newton_residual: res, winding_cell: contour, multiplicity: 1 }),
                None if depth < region.max_depth => next.extend(rect.quarters().into_iter().map(|r| (r, depth + 1))),
                None => {
                    let z = rect.center();
                    poles.push(ReggePole { nu: z, newton_residual: ev.eval(z)?.norm(), winding_cell: contour, multiplicity: 1 });
                }
            }
        }
        level = next;
    }
    poles.sort_by(|a, b| a.nu.norm().total_cmp(&b.nu.norm()));
    Ok(poles)
}

/// Regge poles of `q` in the region.
pub fn find_poles<P: RadialPotential + ?Sized>(q: &P, region: &SearchRegion, grid: &RadialGrid, opts: &SolverOptions, tol: f64) -> Result<Vec<ReggePole>> {
    if q.is_zero() {
        return Ok(Vec::new());
    }
    let ev = Evaluator::beta(q, grid, opts);
    find_poles_with(&ev, region, tol)
}

/// Compact-support pole prediction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolePrediction {
    pub p: u32,
    pub nu_predicted: Complex64,
    /// `|z log z - alpha_p|`.
    pub lambert_residual: f64,
}

/// `nu_p = e^A exp(W(alpha_p)) - 1`, `A = 1 + log(a/2)`,
/// `alpha_p = (log(-q(a-0)) + i(2p + 1/2) pi) / (2 e^A)` (principal log).
/// Zeros of `h` sit where the edge term equals `-1`; with `h - 1 ~ +i q(a-0) (...)`
/// that puts `-q(a-0)` under the logarithm.
pub fn predict_poles_compact(a: f64, q_edge: f64, ps: impl IntoIterator<Item = u32>) -> Result<Vec<PolePrediction>> {
    if q_edge == 0.0 || !(a > 0.0) {
        return Err(Error::Domain(format!("predictor needs a > 0 and q(a-0) != 0, got a = {a}, q = {q_edge}")));
    }
    let big_a = 1.0 + (a / 2.0).ln();
    let ea = big_a.exp();
    let lq = Complex64::new(-q_edge, 0.0).ln();
    ps.into_iter()
        .map(|p| {
            let alpha = (lq + I * ((2 * p) as f64 + 0.5) * PI) / (2.0 * ea);
            let w = lambert_w0(alpha)?;
            let z = w.exp();
            Ok(PolePrediction { p, nu_predicted: ea * z - 1.0, lambert_residual: (z * z.ln() - alpha).norm() })
        })
        .collect()
}

/// Computed `h - 1` against the edge term
/// `(2 i pi / ((nu+1) Gamma(nu+1)^2)) (a/2)^{2 nu + 2} q(a-0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeCheck {
    pub nu: Complex64,
    pub h_minus_one: Complex64,
    pub leading: Complex64,
    /// `|h - 1| / |leading|`.
    pub ratio: f64,
    /// Phase difference of `h - 1` and the leading term, in `[0, pi]`.
    pub phase_gap: f64,
}

pub fn edge_formula_check(q: &Potential, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<EdgeCheck> {
    let h1 = normalized_beta(q, nu, grid, opts)? - 1.0;
    let (a, qe) = match (q.compact_part_radius(), q.edge_value()) {
        (Some(a), Some(e)) => (a, e),
        _ if q.is_zero() => (1.0, 0.0),
        _ => return Err(Error::Precondition("edge check needs a compactly supported potential".into())),
    };
    let lead = if qe == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        let l = (2.0 * PI).ln() + (2.0 * nu + 2.0) * (a / 2.0).ln() - 2.0 * ln_gamma(nu + 1.0)? - (nu + 1.0).ln();
        Scaled::from_log(l).mul_c(I * qe).to_c()
    };
    let ratio = if lead.norm() > 0.0 { h1.norm() / lead.norm() } else { h1.norm() };
    let phase_gap = if lead.norm() > 0.0 && h1.norm() > 0.0 { wrap(h1.arg() - lead.arg()).abs() } else { 0.0 };
    Ok(EdgeCheck { nu, h_minus_one: h1, leading: lead, ratio, phase_gap })
}

/// Rows of `(im_hi, max Re nu over poles, count)` for rectangles growing in `Im`.
#[derive(Clone, Debug, PartialEq)]
pub struct StripReport {
    pub rows: Vec<(f64, f64, usize)>,
}

impl StripReport {
    /// True when the largest real part stops growing after the first rows.
    pub fn bounded(&self) -> bool {
        let m: Vec<f64> = self.rows.iter().map(|r| r.1).collect();
        if m.len() < 3 {
            return true;
        }
        let early = m[..m.len() / 2].iter().copied().fold(0.0, f64::max);
        m.iter().all(|&x| x <= early + 1e-6 * (1.0 + early))
    }
}

pub fn strip_check_analytic<P: RadialPotential + ?Sized>(
    q: &P,
    re_hi: f64,
    im_tops: &[f64],
    grid: &RadialGrid,
    opts: &SolverOptions,
) -> Result<StripReport> {
    let ev = Evaluator::beta(q, grid, opts);
    let mut rows = Vec::new();
    for &t in im_tops {
        let region = SearchRegion::new(Rect::new(0.0, re_hi, 0.0, t))?;
        let poles = if q.is_zero() { Vec::new() } else { find_poles_with(&ev, &region, 1e-8)? };
        let m = poles.iter().map(|p| p.nu.re).fold(0.0, f64::max);
        rows.push((t, m, poles.len()));
    }
    Ok(StripReport { rows })
}
