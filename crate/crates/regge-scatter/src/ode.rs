//! Dormand–Prince 5(4) for the second-order linear radial equation written
//! as a complex first-order system `(y, y')`, with forced stops and
//! magnitude renormalization.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub type State = [Complex64; 2];

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Step-control settings.
#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub rtol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { rtol: 1e-10, max_steps: 200_000 }
    }
}

/// Accepted steps in integration order.
#[derive(Clone, Debug, Default)]
pub struct Trajectory {
    pub r: Vec<f64>,
    pub y: Vec<State>,
    /// Log of the factor divided out of `y` at each node.
    pub log_scale: Vec<f64>,
    /// `y''` at the start and end of each interval, evaluated with the
    /// coefficients from inside the interval.
    pub d2_start: Vec<Complex64>,
    pub d2_end: Vec<Complex64>,
}

/// Point just inside the step, so one-sided coefficients are picked up at
/// breakpoints.
fn inside(r: f64, toward: f64) -> f64 {
    let d = (toward - r) * 1e-12;
    let m = 4.0 * f64::EPSILON * r.abs().max(f64::MIN_POSITIVE);
    if d.abs() < m {
        r + m.copysign(d)
    } else {
        r + d
    }
}

fn axpy(y: &State, h: f64, ks: &[State], coef: &[f64]) -> State {
    let mut out = *y;
    for (k, &c) in ks.iter().zip(coef) {
        if c != 0.0 {
            out[0] += k[0] * (h * c);
            out[1] += k[1] * (h * c);
        }
    }
    out
}

fn mag(y: &State, r: f64) -> f64 {
    y[0].norm() + r.abs() * y[1].norm()
}

/// Integrate `y' = f(r_eval, y)` from `r0` to `r1` through the ordered stops.
///
/// `f` receives the evaluation radius already nudged into the current step.
pub fn integrate<F>(f: F, r0: f64, r1: f64, y0: State, stops: &[f64], h0: f64, opts: OdeOptions) -> Result<Trajectory>
where
    F: Fn(f64, &State) -> State,
{
    let dir = if r1 >= r0 { 1.0 } else { -1.0 };
    let mut targets: Vec<f64> = stops
        .iter()
        .copied()
        .filter(|&s| (s - r0) * dir > 0.0 && (r1 - s) * dir > 0.0)
        .collect();
    targets.push(r1);
    targets.sort_by(|a, b| (a * dir).total_cmp(&(b * dir)));
    targets.dedup();

    let mut tr = Trajectory::default();
    let mut r = r0;
    let mut y = y0;
    let mut ls = 0.0;
    tr.r.push(r);
    tr.y.push(y);
    tr.log_scale.push(ls);
    let mut h = h0.abs().max(1e-14 * r0.abs().max(1e-300)) * dir;
    let mut steps = 0usize;

    for &t in &targets {
        while (t - r) * dir > 0.0 {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::Integration(format!("step limit reached at r = {r}")));
            }
            let last = (r + h - t) * dir >= 0.0 || ((t - r - h) * dir).abs() < 1e-12 * t.abs().max(1.0);
            let hh = if last { t - r } else { h };
            let mid = r + 0.5 * hh;
            let mut ks: [State; 7] = [[Complex64::new(0.0, 0.0); 2]; 7];
            ks[0] = f(inside(r, mid), &y);
            for s in 1..7 {
                let ys = axpy(&y, hh, &ks[..s], &A[s][..s]);
                let rs = if s >= 5 { r + hh } else { r + C[s] * hh };
                ks[s] = f(inside(rs, mid), &ys);
            }
            let ynew = axpy(&y, hh, &ks[..6], &A[6][..6]);
            let mut err = [Complex64::new(0.0, 0.0); 2];
            for (k, &e) in ks.iter().zip(E.iter()) {
                err[0] += k[0] * (hh * e);
                err[1] += k[1] * (hh * e);
            }
            let rn = r + hh;
            let scale = opts.rtol * mag(&y, rn).max(mag(&ynew, rn)).max(1e-300);
            let en = mag(&err, rn) / scale;
            if !en.is_finite() {
                h *= 0.2;
                if h.abs() < 1e-15 * r.abs().max(1e-300) {
                    return Err(Error::Integration(format!("non-finite state near r = {r}")));
                }
                continue;
            }
            let fac = if en == 0.0 { 5.0 } else { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) };
            if en <= 1.0 {
                tr.d2_start.push(ks[0][1]);
                tr.d2_end.push(ks[6][1]);
                r = if last { t } else { rn };
                y = ynew;
                let m = mag(&y, r);
                if m > 1e100 || (m < 1e-100 && m > 0.0) {
                    y[0] /= m;
                    y[1] /= m;
                    // d2_end of this interval must match the stored node scale
                    let n = tr.d2_end.len() - 1;
                    tr.d2_end[n] /= m;
                    ls += m.ln();
                }
                tr.r.push(r);
                tr.y.push(y);
                tr.log_scale.push(ls);
                if !last {
                    h = hh * fac;
                }
            } else {
                h = hh * fac;
                if h.abs() < 1e-15 * r.abs().max(1e-300) {
                    return Err(Error::Integration(format!("step size underflow at r = {r}")));
                }
            }
        }
    }
    Ok(tr)
}
