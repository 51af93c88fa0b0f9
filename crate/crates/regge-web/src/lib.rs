//! Browser bindings: three JSON-in, JSON-out operations for the demo page.

use num_complex::Complex64;
use regge_scatter::potentials::Potential;
use regge_scatter::radial::{RadialGrid, SolverOptions};
use regge_scatter::regge::{find_poles, normalized_beta, predict_poles_compact, Rect, SearchRegion};
use regge_scatter::scattering::{nu_of_l, phase_shifts, PhaseMethod, TrackOptions};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

/// Potentials the page can describe.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    SquareWell { q0: f64, a: f64 },
    AnalyticDecay { amp: f64, c: f64, p: f64 },
    Sum { parts: Vec<PotentialSpec> },
}

impl PotentialSpec {
    fn build(&self) -> Result<Potential, String> {
        match self {
            PotentialSpec::SquareWell { q0, a } => Potential::square_well(*q0, *a).map_err(|e| e.to_string()),
            PotentialSpec::AnalyticDecay { amp, c, p } => Potential::analytic_decay(*amp, *c, *p).map_err(|e| e.to_string()),
            PotentialSpec::Sum { parts } => Ok(Potential::sum(parts.iter().map(|p| p.build()).collect::<Result<_, _>>()?)),
        }
    }
}

fn parse(potential: &str) -> Result<(Potential, RadialGrid, SolverOptions), String> {
    let spec: PotentialSpec = serde_json::from_str(potential).map_err(|e| format!("potential: {e}"))?;
    let q = spec.build()?;
    let opts = SolverOptions::default();
    let grid = RadialGrid::for_potential(&q, &opts).map_err(|e| e.to_string())?;
    Ok((q, grid, opts))
}

#[derive(Serialize)]
pub struct PhaseRow {
    pub l: u32,
    pub nu: f64,
    pub delta: f64,
    pub small_route: bool,
}

/// Three-dimensional phase shifts for `l = 0..=l_max`.
pub fn phase_shift_rows(potential: &str, l_max: u32) -> Result<Vec<PhaseRow>, String> {
    let (q, grid, opts) = parse(potential)?;
    let ls: Vec<u32> = (0..=l_max.min(60)).collect();
    let ps = phase_shifts(&q, &ls, 3, &grid, &opts, &TrackOptions::default()).map_err(|e| e.to_string())?;
    Ok(ls
        .iter()
        .zip(ps)
        .map(|(&l, p)| PhaseRow { l, nu: nu_of_l(l, 3), delta: p.delta.re, small_route: p.method == PhaseMethod::SmallPhase })
        .collect())
}

#[derive(Serialize)]
pub struct PoleScatter {
    pub located: Vec<[f64; 2]>,
    pub predicted: Vec<[f64; 2]>,
}

/// Regge poles in `[0, re_max] x [0, im_max]`, with the Lambert-W
/// prediction when the potential has a jump at the edge of its support.
pub fn pole_scatter(potential: &str, re_max: f64, im_max: f64) -> Result<PoleScatter, String> {
    let (q, grid, opts) = parse(potential)?;
    let region = SearchRegion::new(Rect::new(0.0, re_max.min(40.0), 0.0, im_max.min(40.0))).map_err(|e| e.to_string())?;
    let poles = find_poles(&q, &region, &grid, &opts, 1e-10).map_err(|e| e.to_string())?;
    let mut predicted = Vec::new();
    if let (Some(a), Some(qe), Some(_)) = (q.compact_part_radius(), q.edge_value(), q.support_radius) {
        if qe != 0.0 {
            let far = Complex64::new(re_max, im_max).norm() * 1.5;
            for p in 0..10_000 {
                let z = predict_poles_compact(a, qe, [p]).map_err(|e| e.to_string())?[0].nu_predicted;
                predicted.push([z.re, z.im]);
                if z.norm() > far {
                    break;
                }
            }
        }
    }
    Ok(PoleScatter { located: poles.iter().map(|p| [p.nu.re, p.nu.im]).collect(), predicted })
}

#[derive(Serialize)]
pub struct RayPoint {
    pub modulus: f64,
    pub re: f64,
    pub im: f64,
    pub log10_abs_h: f64,
}

/// `log10 |beta/beta0|` along `nu = t e^{i angle}`, `t in [0, t_max]`.
pub fn jost_ray(potential: &str, angle: f64, t_max: f64, n: usize) -> Result<Vec<RayPoint>, String> {
    let (q, grid, opts) = parse(potential)?;
    let n = n.clamp(2, 400);
    let dir = Complex64::from_polar(1.0, angle.clamp(-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2));
    (0..n)
        .map(|k| {
            let t = t_max.min(40.0) * k as f64 / (n - 1) as f64;
            let nu = dir * t;
            let h = normalized_beta(&q, nu, &grid, &opts).map_err(|e| e.to_string())?;
            Ok(RayPoint { modulus: t, re: nu.re, im: nu.im, log10_abs_h: h.norm().log10() })
        })
        .collect()
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = phaseShifts)]
pub fn phase_shifts_js(potential: &str, l_max: u32) -> Result<String, JsError> {
    to_js(phase_shift_rows(potential, l_max))
}

#[wasm_bindgen(js_name = reggePoles)]
pub fn regge_poles_js(potential: &str, re_max: f64, im_max: f64) -> Result<String, JsError> {
    to_js(pole_scatter(potential, re_max, im_max))
}

#[wasm_bindgen(js_name = jostRay)]
pub fn jost_ray_js(potential: &str, angle: f64, t_max: f64, n: usize) -> Result<String, JsError> {
    to_js(jost_ray(potential, angle, t_max, n))
}
