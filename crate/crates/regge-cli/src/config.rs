//! Run configuration (TOML), parsed strictly.

use regge_scatter::potentials::{EdgeKind, Potential, Tabulated};
use regge_scatter::radial::{RadialGrid, SolverOptions};
use regge_scatter::scattering::TrackOptions;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Space dimension `n`; `nu(l) = l + (n-2)/2`.
    #[serde(default = "default_dimension")]
    pub dimension: u32,
    #[serde(default)]
    pub potential: PotentialSpec,
    /// Second potential for two-potential modes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<PotentialSpec>,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
    #[serde(default)]
    pub track: TrackSection,
    #[serde(default)]
    pub phase_shifts: PhaseShiftSection,
    #[serde(default)]
    pub poles: PoleSection,
    #[serde(default)]
    pub predict: PredictSection,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default)]
    pub gap: GapSection,
    #[serde(default)]
    pub specfun: SpecfunSection,
}

fn default_dimension() -> u32 {
    3
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    #[default]
    Zero,
    SquareWell {
        q0: f64,
        a: f64,
    },
    SmoothCompact {
        coeffs: Vec<f64>,
        a: f64,
        #[serde(default)]
        sharp_edge: bool,
    },
    AnalyticDecay {
        amp: f64,
        c: f64,
        p: f64,
    },
    Sum {
        parts: Vec<PotentialSpec>,
    },
    Tabulated {
        r: Vec<f64>,
        q: Vec<f64>,
        #[serde(default)]
        singularity_exponent: f64,
    },
}

impl PotentialSpec {
    pub fn build(&self) -> regge_scatter::Result<Potential> {
        Ok(match self {
            PotentialSpec::Zero => Potential::zero(),
            PotentialSpec::SquareWell { q0, a } => Potential::square_well(*q0, *a)?,
            PotentialSpec::SmoothCompact { coeffs, a, sharp_edge } => {
                Potential::smooth_compact(coeffs.clone(), *a, if *sharp_edge { EdgeKind::Sharp } else { EdgeKind::Bump })?
            }
            PotentialSpec::AnalyticDecay { amp, c, p } => Potential::analytic_decay(*amp, *c, *p)?,
            PotentialSpec::Sum { parts } => Potential::sum(parts.iter().map(|p| p.build()).collect::<regge_scatter::Result<_>>()?),
            PotentialSpec::Tabulated { r, q, singularity_exponent } => {
                Potential::tabulated(Tabulated::new(r.clone(), q.clone(), *singularity_exponent)?)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub rtol: f64,
    pub tail_tol: f64,
    pub seed_tol: f64,
    pub r_cap: f64,
    pub k: f64,
}

impl Default for SolverSection {
    fn default() -> Self {
        let o = SolverOptions::default();
        SolverSection { rtol: o.rtol, tail_tol: o.tail_tol, seed_tol: o.seed_tol, r_cap: o.r_cap, k: o.k }
    }
}

impl SolverSection {
    pub fn options(&self) -> SolverOptions {
        SolverOptions { rtol: self.rtol, tail_tol: self.tail_tol, seed_tol: self.seed_tol, r_cap: self.r_cap, k: self.k }
    }
}

/// Grid overrides; unset fields come from the automatic grid.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub r_min: Option<f64>,
    pub r_match: Option<f64>,
    pub r_max: Option<f64>,
    pub n_geo: Option<usize>,
    pub n_uni: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrackSection {
    pub anchor_offset: f64,
    pub step: f64,
    pub small_threshold: f64,
}

impl Default for TrackSection {
    fn default() -> Self {
        let t = TrackOptions::default();
        TrackSection { anchor_offset: t.anchor_offset, step: t.step, small_threshold: t.small_threshold }
    }
}

impl TrackSection {
    pub fn options(&self) -> TrackOptions {
        TrackOptions { anchor_offset: self.anchor_offset, step: self.step, small_threshold: self.small_threshold }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhaseShiftSection {
    pub l_min: u32,
    pub l_max: u32,
    /// Radius beyond which `potential` and `comparison` agree.
    pub equal_beyond: Option<f64>,
}

impl Default for PhaseShiftSection {
    fn default() -> Self {
        PhaseShiftSection { l_min: 0, l_max: 12, equal_beyond: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PoleSection {
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub max_depth: u32,
    pub boundary_margin: f64,
    pub newton_tol: f64,
}

impl Default for PoleSection {
    fn default() -> Self {
        PoleSection { re: [0.0, 10.0], im: [0.0, 10.0], max_depth: 10, boundary_margin: 1e-6, newton_tol: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PredictSection {
    pub p_min: u32,
    pub p_max: u32,
    /// Overrides the support radius of the potential.
    pub a: Option<f64>,
    /// Overrides `q(a-0)` of the potential.
    pub q_edge: Option<f64>,
}

impl Default for PredictSection {
    fn default() -> Self {
        PredictSection { p_min: 0, p_max: 20, a: None, q_edge: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    pub suites: Vec<String>,
    /// Replaces every suite's own tolerance.
    pub tol: Option<f64>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifySection {
    fn default() -> Self {
        VerifySection { suites: Vec::new(), tol: None, seed: 1, samples: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GapSection {
    pub radius: Option<f64>,
    pub nu: Vec<f64>,
}

impl Default for GapSection {
    fn default() -> Self {
        GapSection { radius: None, nu: vec![5.0, 10.0, 20.0, 40.0] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpecfunSection {
    pub function: String,
    /// Orders or complex arguments as `[re, im]`.
    pub orders: Vec<[f64; 2]>,
    /// Real arguments.
    pub x: Vec<f64>,
}

impl Default for SpecfunSection {
    fn default() -> Self {
        SpecfunSection { function: "gamma".into(), orders: vec![[1.0, 0.0], [2.0, 0.0], [3.0, 0.0], [4.0, 0.0], [5.0, 0.0]], x: vec![1.0] }
    }
}

impl RunConfig {
    pub fn defaults() -> Self {
        RunConfig { dimension: 3, ..Default::default() }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let c: RunConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        c.validate()?;
        Ok(c)
    }

    #[cfg(test)]
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn validate(&self) -> Result<(), String> {
        if self.dimension < 2 {
            return Err(format!("dimension must be >= 2, got {}", self.dimension));
        }
        if self.phase_shifts.l_min > self.phase_shifts.l_max {
            return Err("phase_shifts.l_min exceeds l_max".into());
        }
        if self.predict.p_min > self.predict.p_max {
            return Err("predict.p_min exceeds p_max".into());
        }
        let [a, b] = self.poles.re;
        let [c, d] = self.poles.im;
        if !(a < b && c < d) {
            return Err("poles.re and poles.im must be increasing pairs".into());
        }
        Ok(())
    }

    /// Canonical JSON of the parsed configuration; hashing this makes the
    /// hash independent of TOML formatting.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn grid_for(&self, q: &Potential, opts: &SolverOptions) -> regge_scatter::Result<RadialGrid> {
        let auto = RadialGrid::for_potential(q, opts)?;
        match &self.grid {
            None => Ok(auto),
            Some(g) => {
                let r_max = g.r_max.unwrap_or(auto.r_max);
                RadialGrid::new(
                    g.r_min.unwrap_or(auto.r_min),
                    g.r_match.unwrap_or(auto.r_match),
                    r_max,
                    g.n_geo.unwrap_or(24),
                    g.n_uni.unwrap_or((4.0 * r_max).ceil() as usize),
                )
            }
        }
    }
}
