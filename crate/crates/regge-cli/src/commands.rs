//! Subcommand bodies. Each returns a table; the caller emits it.

use num_complex::Complex64;
use regge_scatter::potentials::Potential;
use regge_scatter::radial::SolverOptions;
use regge_scatter::regge::{find_poles, predict_poles_compact, Rect, SearchRegion};
use regge_scatter::scattering::{
    borg_functional, common_grid, nu_of_l, phase_shift, phase_shift_difference, phase_shifts, PhaseMethod, PhaseShift,
};
use regge_scatter::specfun::{
    bessel_j, gamma, hankel, lambert_w0, legendre_q0, ln_gamma, macdonald_k0, HankelKind,
};
use regge_scatter::identities::hankel_imaginary_order_bounds;
use std::f64::consts::{E, PI};

use crate::config::RunConfig;
use crate::output::{Cell, Provenance, Table};
use crate::CliError;

pub struct Context {
    pub config: RunConfig,
    pub potential: Potential,
    pub comparison: Option<Potential>,
    pub opts: SolverOptions,
    /// `--tol` from the command line.
    pub tol: Option<f64>,
}

impl Context {
    pub fn new(config: RunConfig, tol: Option<f64>) -> Result<Self, CliError> {
        let potential = config.potential.build().map_err(|e| CliError::Config(format!("potential: {e}")))?;
        let comparison = match &config.comparison {
            Some(c) => Some(c.build().map_err(|e| CliError::Config(format!("comparison: {e}")))?),
            None => None,
        };
        let opts = config.solver.options();
        Ok(Context { config, potential, comparison, opts, tol })
    }

    fn provenance(&self, command: &str, tol: Option<f64>) -> Provenance {
        Provenance::new(command, &self.config, tol)
    }
}

fn method_name(m: PhaseMethod) -> &'static str {
    match m {
        PhaseMethod::ArgTracked => "tracked",
        PhaseMethod::SmallPhase => "small",
    }
}

/// `-(q(a-0)/2) (a/2l)^3 (ae/2l)^{2l}` for three-dimensional compact potentials.
pub fn edge_envelope(q: &Potential, l: u32) -> Option<f64> {
    let (a, qe) = (q.compact_part_radius()?, q.edge_value()?);
    if l == 0 || qe == 0.0 || q.support_radius.is_none() {
        return None;
    }
    let lf = l as f64;
    let ln = 3.0 * (a / (2.0 * lf)).ln() + 2.0 * lf * (a * E / (2.0 * lf)).ln();
    Some(-(qe / 2.0) * ln.exp())
}

pub fn cmd_phase_shifts(ctx: &Context) -> Result<Table, CliError> {
    let sec = &ctx.config.phase_shifts;
    let n = ctx.config.dimension;
    let q = &ctx.potential;
    let two = ctx.comparison.as_ref();
    let mut cols = vec!["l", "nu", "delta", "method", "envelope_ratio"];
    if two.is_some() {
        cols.extend(["delta_difference", "scaled_difference"]);
    }
    cols.push("error");
    let mut t = Table::new(&cols, ctx.provenance("phase-shifts", None));
    let ls: Vec<u32> = (sec.l_min..=sec.l_max).collect();
    let grid = match two {
        Some(qt) => common_grid(q, qt, &ctx.opts),
        None => ctx.config.grid_for(q, &ctx.opts),
    }
    .map_err(CliError::Numerical)?;
    let track = ctx.config.track.options();
    let rows: Vec<Result<PhaseShift, String>> = match phase_shifts(q, &ls, n, &grid, &ctx.opts, &track) {
        Ok(v) => v.into_iter().map(Ok).collect(),
        Err(_) => ls.iter().map(|&l| phase_shift(q, l, n, &grid, &ctx.opts).map_err(|e| e.to_string())).collect(),
    };
    if two.is_some() && sec.equal_beyond.is_none() {
        return Err(CliError::Config("two-potential mode needs phase_shifts.equal_beyond".into()));
    }
    for (&l, r) in ls.iter().zip(rows) {
        let nu = nu_of_l(l, n);
        let mut row: Vec<Cell> = vec![l.into(), nu.into()];
        let mut err = None;
        match r {
            Ok(p) => {
                let env = if n == 3 { edge_envelope(q, l) } else { None };
                row.push(p.delta.re.into());
                row.push(method_name(p.method).into());
                row.push(env.map(|e| p.delta.re / e).into());
            }
            Err(e) => {
                row.extend([Cell::Null, Cell::Null, Cell::Null]);
                err = Some(e);
            }
        }
        if let Some(qt) = two {
            let a = sec.equal_beyond.unwrap_or(f64::NAN);
            match phase_shift_difference(q, qt, nu, &grid, &ctx.opts) {
                Ok(d) => {
                    let lg = 2.0 * ln_gamma(Complex64::new(nu + 1.0, 0.0)).map_err(CliError::Numerical)?.re + 2.0 * nu * (2.0 / a).ln();
                    row.push(d.into());
                    row.push((d.abs() * (l as f64 + 1.0) * lg.exp()).into());
                }
                Err(e) => {
                    row.extend([Cell::Null, Cell::Null]);
                    err.get_or_insert(e.to_string());
                }
            }
        }
        row.push(err.into());
        t.push(row);
    }
    Ok(t)
}

fn predictions_up_to(q: &Potential, radius: f64, p_cap: u32) -> Option<Vec<Complex64>> {
    let (a, qe) = (q.compact_part_radius()?, q.edge_value()?);
    if qe == 0.0 || q.support_radius.is_none() {
        return None;
    }
    let mut out = Vec::new();
    for p in 0..p_cap {
        let z = predict_poles_compact(a, qe, [p]).ok()?[0].nu_predicted;
        out.push(z);
        if z.norm() > radius {
            break;
        }
    }
    Some(out)
}

pub fn cmd_poles(ctx: &Context) -> Result<(Table, String), CliError> {
    let sec = &ctx.config.poles;
    let q = &ctx.potential;
    let grid = ctx.config.grid_for(q, &ctx.opts).map_err(CliError::Numerical)?;
    let rect = Rect::new(sec.re[0], sec.re[1], sec.im[0], sec.im[1]);
    let mut region = SearchRegion::new(rect).map_err(|e| CliError::Config(format!("poles: {e}")))?;
    region.max_depth = sec.max_depth;
    region.boundary_margin = sec.boundary_margin;
    let tol = ctx.tol.unwrap_or(sec.newton_tol);
    let poles = find_poles(q, &region, &grid, &ctx.opts, tol).map_err(CliError::Numerical)?;
    let far = Complex64::new(sec.re[1], sec.im[1]).norm() * 1.5;
    let pred = predictions_up_to(q, far, 100_000);
    let mut t = Table::new(
        &["index", "nu_re", "nu_im", "abs_nu", "im_over_re", "newton_residual", "multiplicity", "predicted_re", "predicted_im"],
        ctx.provenance("poles", Some(tol)),
    );
    for (i, p) in poles.iter().enumerate() {
        let near = pred.as_ref().and_then(|v| v.iter().min_by(|a, b| (*a - p.nu).norm().total_cmp(&(*b - p.nu).norm())).copied());
        t.push(vec![
            i.into(),
            p.nu.re.into(),
            p.nu.im.into(),
            p.nu.norm().into(),
            (p.nu.im / p.nu.re).into(),
            p.newton_residual.into(),
            p.multiplicity.into(),
            near.map(|z| z.re).into(),
            near.map(|z| z.im).into(),
        ]);
    }
    let located: Vec<(f64, f64)> = poles.iter().map(|p| (p.nu.re, p.nu.im)).collect();
    let predicted: Vec<(f64, f64)> = pred.unwrap_or_default().iter().map(|z| (z.re, z.im)).collect();
    let svg = crate::svg::pole_scatter(sec.re, sec.im, &located, &predicted);
    Ok((t, svg))
}

pub fn cmd_predict_poles(ctx: &Context) -> Result<Table, CliError> {
    let sec = &ctx.config.predict;
    let q = &ctx.potential;
    let a = sec.a.or_else(|| q.compact_part_radius());
    let qe = sec.q_edge.or_else(|| q.edge_value());
    let (Some(a), Some(qe)) = (a, qe) else {
        return Err(CliError::Config("predict-poles needs a compact potential or predict.a and predict.q_edge".into()));
    };
    let preds = predict_poles_compact(a, qe, sec.p_min..=sec.p_max).map_err(|e| CliError::Config(e.to_string()))?;
    let mut t = Table::new(
        &["p", "nu_re", "nu_im", "im_over_re", "lambert_residual", "leading_re", "leading_im"],
        ctx.provenance("predict-poles", None),
    );
    for p in preds {
        // nu_p ~ p pi^2 / (2 log^2 p) + i p pi / log p
        let (lr, li) = if p.p >= 2 {
            let (pf, lp) = (p.p as f64, (p.p as f64).ln());
            (Some(pf * PI * PI / (2.0 * lp * lp)), Some(pf * PI / lp))
        } else {
            (None, None)
        };
        t.push(vec![
            p.p.into(),
            p.nu_predicted.re.into(),
            p.nu_predicted.im.into(),
            (p.nu_predicted.im / p.nu_predicted.re).into(),
            p.lambert_residual.into(),
            lr.into(),
            li.into(),
        ]);
    }
    Ok(t)
}

pub fn cmd_uniqueness_gap(ctx: &Context) -> Result<Table, CliError> {
    let q = &ctx.potential;
    let Some(qt) = ctx.comparison.as_ref() else {
        return Err(CliError::Config("uniqueness-gap needs a [comparison] potential".into()));
    };
    let Some(r) = ctx.config.gap.radius else {
        return Err(CliError::Config("uniqueness-gap needs gap.radius".into()));
    };
    let grid = common_grid(q, qt, &ctx.opts).map_err(CliError::Numerical)?;
    let mut t = Table::new(&["nu", "f_re", "f_im", "abs_f", "abs_p1", "abs_p2"], ctx.provenance("uniqueness-gap", None));
    for &nu in &ctx.config.gap.nu {
        let g = borg_functional(q, qt, r, Complex64::new(nu, 0.0), &grid, &ctx.opts).map_err(CliError::Numerical)?;
        let f = g.f.to_c();
        t.push(vec![nu.into(), f.re.into(), f.im.into(), g.f.abs().into(), g.p1.abs().into(), g.p2.abs().into()]);
    }
    Ok(t)
}

pub fn cmd_specfun_table(ctx: &Context) -> Result<Table, CliError> {
    let sec = &ctx.config.specfun;
    let mut t = Table::new(&["function", "order_re", "order_im", "x", "value_re", "value_im", "flag"], ctx.provenance("specfun-table", None));
    let zs: Vec<Complex64> = sec.orders.iter().map(|o| Complex64::new(o[0], o[1])).collect();
    let num = |r: regge_scatter::Result<Complex64>| r.map_err(CliError::Numerical);
    let f = sec.function.as_str();
    let mut push = |z: Option<Complex64>, x: Option<f64>, v: Complex64, flag: Cell| {
        t.push(vec![f.into(), z.map(|z| z.re).into(), z.map(|z| z.im).into(), x.into(), v.re.into(), v.im.into(), flag]);
    };
    match f {
        "gamma" | "ln_gamma" | "lambert_w" => {
            for &z in &zs {
                let v = match f {
                    "gamma" => num(gamma(z))?,
                    "ln_gamma" => num(ln_gamma(z))?,
                    _ => num(lambert_w0(z))?,
                };
                push(Some(z), None, v, Cell::Null);
            }
        }
        "bessel_j" | "hankel1" | "hankel2" | "legendre_q0" => {
            for &z in &zs {
                for &x in &sec.x {
                    let v = match f {
                        "bessel_j" => num(bessel_j(z, x).map(|s| s.value))?,
                        "hankel1" => num(hankel(HankelKind::First, z, x))?,
                        "hankel2" => num(hankel(HankelKind::Second, z, x))?,
                        _ => num(legendre_q0(z, x))?,
                    };
                    push(Some(z), Some(x), v, Cell::Null);
                }
            }
        }
        "hankel_imaginary" => {
            // order i y with y = Im of each order; flag says whether all four bounds hold
            for &z in &zs {
                for &x in &sec.x {
                    let nu = Complex64::new(0.0, z.im);
                    let v = num(hankel(HankelKind::First, nu, x))?;
                    let ratios = hankel_imaginary_order_bounds(z.im, x).map_err(CliError::Numerical)?;
                    push(Some(nu), Some(x), v, ratios.iter().all(|&r| r <= 1.0).into());
                }
            }
        }
        "macdonald_k0" => {
            for &x in &sec.x {
                push(None, Some(x), Complex64::new(macdonald_k0(x), 0.0), Cell::Null);
            }
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown specfun.function {other:?}; expected gamma, ln_gamma, lambert_w, bessel_j, hankel1, hankel2, legendre_q0, hankel_imaginary or macdonald_k0"
            )))
        }
    }
    Ok(t)
}
