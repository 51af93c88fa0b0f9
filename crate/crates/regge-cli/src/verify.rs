//! Named invariant suites for `regge verify`.

use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};
use regge_scatter::identities::{bessel_square_moment, buchholz, nicholson};
use regge_scatter::potentials::Potential;
use regge_scatter::radial::{solve_jost, solve_regular, wronskian, RadialGrid, SolverOptions};
use regge_scatter::scattering::{
    borg_functional, common_grid, jost_functions, link_identity_sides, newrep2_sides, phase_shifts, scaling_identity_residual,
};
use regge_scatter::specfun::{free_jost_functions, free_solutions};

use crate::commands::Context;
use crate::output::{Cell, Table};
use crate::CliError;

pub const SUITES: [&str; 11] = [
    "free-exactness",
    "wronskian",
    "conjugation",
    "jost-imaginary",
    "link",
    "newrep2",
    "nicholson",
    "buchholz",
    "intmodule",
    "scaling",
    "borg-gap",
];

struct Check {
    name: String,
    residual: f64,
    tol: f64,
    /// Pass/fail checks encoded as 0/1 ignore tolerance overrides.
    boolean: bool,
}

type Checks = Result<Vec<Check>, regge_scatter::Error>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check(name: impl Into<String>, residual: f64, tol: f64) -> Check {
    Check { name: name.into(), residual, tol, boolean: false }
}

fn free_exactness(opts: &SolverOptions, ctx: &Context) -> Checks {
    let q = Potential::zero();
    let grid = RadialGrid::new(1e-3, 1.0, 1.5, 20, 4)?;
    let mut out = Vec::new();
    for nu in [c(0.0, 0.0), c(0.5, 0.0), c(2.0, 0.0), c(1.0, 2.0), c(3.0, -1.0), c(6.0, 0.5), c(10.0, 2.0)] {
        let j = jost_functions(&q, nu, &grid, opts)?;
        let b0 = free_jost_functions(nu)?.beta0;
        out.push(check(format!("beta/beta0 - 1 at nu={nu}"), (j.beta() - b0).abs() / b0.abs(), 1e-8));
    }
    let ls: Vec<u32> = (0..10).collect();
    for p in phase_shifts(&q, &ls, ctx.config.dimension, &grid, opts, &ctx.config.track.options())? {
        out.push(check(format!("delta at nu={}", p.nu.re), p.delta.norm(), 1e-10));
    }
    Ok(out)
}

fn samples(ctx: &Context, grid: &RadialGrid) -> Vec<(Complex64, f64)> {
    let mut rng = StdRng::seed_from_u64(ctx.config.verify.seed);
    (0..ctx.config.verify.samples)
        .map(|_| (c(rng.gen_range(0.0..4.0), rng.gen_range(-3.0..3.0)), rng.gen_range(grid.r_match..grid.r_max)))
        .collect()
}

fn wronskians(ctx: &Context, grid: &RadialGrid) -> Checks {
    let q = &ctx.potential;
    let mut out = Vec::new();
    for (nu, r) in samples(ctx, grid) {
        let fp = solve_jost(q, nu, grid, 1, &ctx.opts)?;
        let fm = solve_jost(q, nu, grid, -1, &ctx.opts)?;
        let w = wronskian(&fp, &fm, r)?.to_c();
        out.push(check(format!("W(f+,f-)+2i at nu={nu:.4}, r={r:.4}"), (w + c(0.0, 2.0)).norm() / 2.0, 1e-7));
        let fs = free_solutions(nu, r)?;
        out.push(check(format!("W(u,v)-1 at nu={nu:.4}, r={r:.4}"), (fs.u * fs.dv - fs.du * fs.v - 1.0).norm(), 1e-7));
    }
    Ok(out)
}

fn conjugation(ctx: &Context, grid: &RadialGrid) -> Checks {
    let q = &ctx.potential;
    let mut out = Vec::new();
    for (nu, r) in samples(ctx, grid) {
        let p = solve_regular(q, nu, grid, &ctx.opts)?.value(r)?;
        let pc = solve_regular(q, nu.conj(), grid, &ctx.opts)?.value(r)?;
        out.push(check(format!("phi(conj nu) - conj phi(nu) at nu={nu:.4}, r={r:.4}"), (pc - p.conj()).abs() / p.abs(), 1e-7));
        let a = jost_functions(q, nu, grid, &ctx.opts)?;
        let b = jost_functions(q, nu.conj(), grid, &ctx.opts)?;
        out.push(check(format!("beta(conj nu) - conj alpha(nu) at nu={nu:.4}"), (b.beta() - a.alpha().conj()).abs() / a.alpha().abs(), 1e-7));
    }
    Ok(out)
}

fn jost_imaginary(ctx: &Context, grid: &RadialGrid) -> Checks {
    let mut out = Vec::new();
    for y in [0.5, -0.5, 2.0, -2.0, 5.0, -5.0] {
        let j = jost_functions(&ctx.potential, c(0.0, y), grid, &ctx.opts)?;
        let d = j.alpha().abs().powi(2) - j.beta().abs().powi(2);
        out.push(check(format!("|alpha|^2-|beta|^2-y at y={y}"), (d - y).abs() / y.abs(), 1e-6));
    }
    Ok(out)
}

fn link(ctx: &Context, grid: &RadialGrid) -> Checks {
    let mut out = Vec::new();
    for nu in [c(1.0, 1.0), c(2.0, 0.5)] {
        let (l, r) = link_identity_sides(&ctx.potential, nu, grid, &ctx.opts)?;
        out.push(check(format!("link identity at nu={nu}"), (l - r).abs() / l.abs().max(r.abs()), 1e-5));
    }
    Ok(out)
}

fn newrep2(ctx: &Context, grid: &RadialGrid) -> Checks {
    let mut out = Vec::new();
    for nu in [c(0.5, 0.0), c(2.0, 0.0), c(1.0, 1.0), c(4.0, -0.5)] {
        let (l, r, b) = newrep2_sides(&ctx.potential, nu, grid, &ctx.opts)?;
        out.push(check(format!("newrep2 relative to |beta| at nu={nu}"), (l - r).abs() / b.abs(), 1e-8));
    }
    Ok(out)
}

fn nicholson_suite() -> Checks {
    let mut out = Vec::new();
    for (y, r) in [(0.5, 1.0), (2.0, 0.5), (-1.0, 3.0), (4.0, 2.0)] {
        out.push(check(format!("Nicholson at y={y}, r={r}"), nicholson(y, r)?.residual(), 1e-8));
    }
    Ok(out)
}

fn buchholz_suite() -> Checks {
    let mut out = Vec::new();
    for (nu, r, rr) in [(c(0.3, 0.0), 0.1, 3.0), (c(0.6, 0.4), 0.2, 4.0), (c(0.8, -0.5), 0.15, 3.5)] {
        out.push(check(format!("Buchholz at nu={nu}, r={r}, R={rr}"), buchholz(nu, r, rr)?.residual(), 1e-8));
    }
    Ok(out)
}

fn intmodule() -> Checks {
    let mut out = Vec::new();
    for (nu, d) in [(c(1.0, 0.5), 0.5), (c(2.0, 0.0), 0.3)] {
        out.push(check(format!("square moment at nu={nu}, delta={d}"), bessel_square_moment(nu, d)?.residual(), 1e-5));
    }
    Ok(out)
}

fn scaling(ctx: &Context) -> Checks {
    let mut out = Vec::new();
    for theta in [0.1, 0.15, 0.2] {
        for nu in [c(2.0, 0.0), c(1.0, 0.5)] {
            let r = scaling_identity_residual(&ctx.potential, nu, theta, &ctx.opts)?;
            out.push(check(format!("scaling at theta={theta}, nu={nu}"), r, 1e-5));
        }
    }
    Ok(out)
}

fn borg_gap(ctx: &Context) -> Result<Vec<Check>, CliError> {
    let q = &ctx.potential;
    let qt = ctx.comparison.as_ref().unwrap_or(q);
    let r = ctx.config.gap.radius.or(q.support_radius).unwrap_or(1.0);
    let grid = common_grid(q, qt, &ctx.opts).map_err(CliError::Numerical)?;
    let nus = &ctx.config.gap.nu;
    let mut out = Vec::new();
    let mut parts = Vec::new();
    for &nu in nus {
        let g = borg_functional(q, qt, r, c(nu, 0.0), &grid, &ctx.opts).map_err(CliError::Numerical)?;
        let same = borg_functional(q, q, r, c(nu, 0.0), &grid, &ctx.opts).map_err(CliError::Numerical)?;
        out.push(check(format!("|F| for identical potentials at nu={nu}"), same.f.abs(), 1e-8));
        out.push(check(format!("|F(r,nu)| at nu={nu}"), g.f.abs(), 1e-3));
        parts.push((g.p1.abs(), g.p2.abs()));
    }
    if ctx.comparison.is_some() {
        // strict decrease of both parts, reported as a 0/1 residual
        let dec = parts.windows(2).all(|w| w[1].0 < w[0].0 && w[1].1 < w[0].1);
        out.push(Check { boolean: true, ..check("decomposition parts strictly decreasing in nu", if dec { 0.0 } else { 1.0 }, 0.5) });
        if let Some(&(p1, p2)) = parts.last() {
            out.push(check("largest part at the last nu", p1.max(p2), 1e-3));
        }
    }
    Ok(out)
}

pub fn run(ctx: &Context, suites: &[String]) -> Result<Table, CliError> {
    let mut names: Vec<&str> = if suites.is_empty() { SUITES.to_vec() } else { suites.iter().map(String::as_str).collect() };
    if names.contains(&"all") {
        names = SUITES.to_vec();
    }
    for n in &names {
        if !SUITES.contains(n) {
            return Err(CliError::Config(format!("unknown suite {n:?}; known suites: {}", SUITES.join(", "))));
        }
    }
    let tol = ctx.tol.or(ctx.config.verify.tol);
    let grid = ctx.config.grid_for(&ctx.potential, &ctx.opts).map_err(CliError::Numerical)?;
    let mut t = Table::new(&["suite", "check", "residual", "tolerance", "pass"], crate::output::Provenance::new("verify", &ctx.config, tol));
    let mut all = true;
    for name in names {
        let checks = match name {
            "free-exactness" => free_exactness(&ctx.opts, ctx),
            "wronskian" => wronskians(ctx, &grid),
            "conjugation" => conjugation(ctx, &grid),
            "jost-imaginary" => jost_imaginary(ctx, &grid),
            "link" => link(ctx, &grid),
            "newrep2" => newrep2(ctx, &grid),
            "nicholson" => nicholson_suite(),
            "buchholz" => buchholz_suite(),
            "intmodule" => intmodule(),
            "scaling" => scaling(ctx),
            _ => Ok(borg_gap(ctx)?),
        };
        let checks = match checks {
            Ok(v) => v,
            // a suite that does not apply to this potential is reported, not failed
            Err(regge_scatter::Error::Precondition(m)) => {
                t.push(vec![name.into(), format!("skipped: {m}").into(), Cell::Null, Cell::Null, Cell::Null]);
                continue;
            }
            Err(e) => return Err(CliError::Numerical(e)),
        };
        for ch in checks {
            let tol = if ch.boolean { ch.tol } else { tol.unwrap_or(ch.tol) };
            let pass = ch.residual <= tol;
            all &= pass;
            t.push(vec![name.into(), ch.name.into(), ch.residual.into(), tol.into(), pass.into()]);
        }
    }
    t.passed = Some(all);
    Ok(t)
}
