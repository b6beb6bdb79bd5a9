//! Scenario files.
//!
//! Scenarios are TOML documents. Unknown keys are rejected. Momentum-like
//! parameters may be given either in absolute units or as multiples of the
//! grid's `dp` (`*_quanta` keys), which keeps kicks commensurate by
//! construction.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{FrameTransform, TransformKind};
use crate::hamiltonian::{invariance_chi, AffineHamiltonian};
use crate::numerics::{gaussian_packet, make_grid, plane_wave, GaussianSpec, Grid1D, WaveFunction};
use crate::poly::Cubic;
use crate::propagator::{step_count, DEFAULT_DT};

pub const DEFAULT_CHECKPOINTS: usize = 10;
pub const DEFAULT_COVARIANCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Covariance,
    MomentumConsistency,
    Order,
}

impl CheckName {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::Covariance => "covariance",
            CheckName::MomentumConsistency => "momentum_consistency",
            CheckName::Order => "order",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_n")]
    pub n_points: usize,
    #[serde(default = "default_length")]
    pub length: f64,
    #[serde(default = "default_x_min")]
    pub x_min: f64,
    #[serde(default = "one")]
    pub hbar: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            n_points: default_n(),
            length: default_length(),
            x_min: default_x_min(),
            hbar: 1.0,
        }
    }
}

fn default_n() -> usize {
    1024
}
fn default_length() -> f64 {
    40.0
}
fn default_x_min() -> f64 {
    -20.0
}
fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    Gaussian,
    PlaneWave,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    pub kind: InitialKind,
    pub x0: Option<f64>,
    pub p0: Option<f64>,
    pub p0_quanta: Option<f64>,
    pub sigma: Option<f64>,
    pub index: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformName {
    SpatialTranslation,
    MomentumTranslation,
    GalileanBoost,
    ConstantAcceleration,
}

/// `chi = [c0, c1, c2, c3]` or `chi = "auto"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChiConfig {
    Coefficients([f64; 4]),
    Keyword(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformConfig {
    pub kind: TransformName,
    pub a: Option<f64>,
    pub a_cells: Option<f64>,
    pub b: Option<f64>,
    pub b_quanta: Option<f64>,
    pub velocity: Option<f64>,
    pub velocity_quanta: Option<f64>,
    pub acceleration: Option<f64>,
    /// `m a t_end = acceleration_quanta * dp`
    pub acceleration_quanta: Option<f64>,
    pub mass: Option<f64>,
    pub chi: Option<ChiConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub t_end: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_checkpoints")]
    pub checkpoints: usize,
    #[serde(default = "default_tol")]
    pub tolerance: f64,
    pub checks: Vec<CheckName>,
    #[serde(default)]
    pub grid: GridConfig,
    pub initial: InitialConfig,
    pub hamiltonian: AffineHamiltonian,
    pub transform: TransformConfig,
}

fn default_dt() -> f64 {
    DEFAULT_DT
}
fn default_checkpoints() -> usize {
    DEFAULT_CHECKPOINTS
}
fn default_tol() -> f64 {
    DEFAULT_COVARIANCE_TOL
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Gaussian(GaussianSpec),
    PlaneWave { index: i64 },
}

impl InitialState {
    pub fn build(&self, grid: &Grid1D) -> Result<WaveFunction> {
        match self {
            InitialState::Gaussian(spec) => gaussian_packet(grid, spec),
            InitialState::PlaneWave { index } => Ok(plane_wave(grid, *index, 0.0)),
        }
    }
}

/// A validated, fully resolved scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub grid: Grid1D,
    pub initial: InitialState,
    pub hamiltonian: AffineHamiltonian,
    pub transform: FrameTransform,
    pub chi_auto: bool,
    pub t_end: f64,
    pub dt: f64,
    pub checkpoints: usize,
    pub tolerance: f64,
    pub checks: Vec<CheckName>,
}

fn cfg(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn exactly_one(name: &str, abs: Option<f64>, quanta: Option<f64>, unit: f64) -> Result<f64> {
    match (abs, quanta) {
        (Some(v), None) => Ok(v),
        (None, Some(q)) => Ok(q * unit),
        (Some(_), Some(_)) => Err(cfg(format!(
            "give either `{name}` or its quanta form, not both"
        ))),
        (None, None) => Err(cfg(format!("missing `{name}`"))),
    }
}

fn forbid(kind: &str, fields: &[(&str, bool)]) -> Result<()> {
    for (name, present) in fields {
        if *present {
            return Err(cfg(format!("`{name}` is not a parameter of {kind}")));
        }
    }
    Ok(())
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| cfg(e.to_string()))
    }

    pub fn resolve(&self) -> Result<Scenario> {
        let g = &self.grid;
        let grid =
            make_grid(g.n_points, g.length, g.x_min, g.hbar).map_err(|e| cfg(e.to_string()))?;
        let h = AffineHamiltonian::new(
            self.hamiltonian.mass,
            self.hamiltonian.momentum_offset,
            self.hamiltonian.force,
            self.hamiltonian.scalar,
        )
        .map_err(|e| cfg(e.to_string()))?;
        if self.t_end <= 0.0 || !self.t_end.is_finite() {
            return Err(cfg("t_end must be > 0"));
        }
        if self.checkpoints == 0 {
            return Err(cfg("checkpoints must be >= 1"));
        }
        if self.checks.is_empty() {
            return Err(cfg("no checks listed"));
        }
        step_count(0.0, self.t_end / self.checkpoints as f64, self.dt)
            .map_err(|e| cfg(format!("checkpoint spacing: {e}")))?;

        let initial = self.resolve_initial(&grid)?;
        let (transform, chi_auto) = self.resolve_transform(&grid, &h)?;
        Ok(Scenario {
            name: self.name.clone(),
            seed: self.seed,
            grid,
            initial,
            hamiltonian: h,
            transform,
            chi_auto,
            t_end: self.t_end,
            dt: self.dt,
            checkpoints: self.checkpoints,
            tolerance: self.tolerance,
            checks: self.checks.clone(),
        })
    }

    fn resolve_initial(&self, grid: &Grid1D) -> Result<InitialState> {
        let i = &self.initial;
        match i.kind {
            InitialKind::Gaussian => {
                if i.index.is_some() {
                    return Err(cfg("`index` is only valid for plane_wave"));
                }
                let p0 = match (i.p0, i.p0_quanta) {
                    (None, None) => 0.0,
                    (a, q) => exactly_one("p0", a, q, grid.dp())?,
                };
                let spec = GaussianSpec::new(i.x0.unwrap_or(0.0), p0, i.sigma.unwrap_or(1.0))
                    .map_err(|e| cfg(e.to_string()))?;
                Ok(InitialState::Gaussian(spec))
            }
            InitialKind::PlaneWave => {
                forbid(
                    "plane_wave",
                    &[
                        ("x0", i.x0.is_some()),
                        ("p0", i.p0.is_some()),
                        ("p0_quanta", i.p0_quanta.is_some()),
                        ("sigma", i.sigma.is_some()),
                    ],
                )?;
                let index = i.index.ok_or_else(|| cfg("plane_wave needs `index`"))?;
                Ok(InitialState::PlaneWave { index })
            }
        }
    }

    fn resolve_transform(
        &self,
        grid: &Grid1D,
        h: &AffineHamiltonian,
    ) -> Result<(FrameTransform, bool)> {
        let t = &self.transform;
        let mass = || t.mass.unwrap_or(h.mass);
        let kind = match t.kind {
            TransformName::SpatialTranslation => {
                forbid(
                    "spatial_translation",
                    &[
                        ("b", t.b.is_some()),
                        ("b_quanta", t.b_quanta.is_some()),
                        ("velocity", t.velocity.is_some()),
                        ("velocity_quanta", t.velocity_quanta.is_some()),
                        ("acceleration", t.acceleration.is_some()),
                        ("acceleration_quanta", t.acceleration_quanta.is_some()),
                        ("mass", t.mass.is_some()),
                    ],
                )?;
                TransformKind::SpatialTranslation {
                    a: exactly_one("a", t.a, t.a_cells, grid.dx())?,
                }
            }
            TransformName::MomentumTranslation => {
                forbid(
                    "momentum_translation",
                    &[
                        ("a", t.a.is_some()),
                        ("a_cells", t.a_cells.is_some()),
                        ("velocity", t.velocity.is_some()),
                        ("velocity_quanta", t.velocity_quanta.is_some()),
                        ("acceleration", t.acceleration.is_some()),
                        ("acceleration_quanta", t.acceleration_quanta.is_some()),
                        ("mass", t.mass.is_some()),
                    ],
                )?;
                TransformKind::MomentumTranslation {
                    b: exactly_one("b", t.b, t.b_quanta, grid.dp())?,
                }
            }
            TransformName::GalileanBoost => {
                forbid(
                    "galilean_boost",
                    &[
                        ("a", t.a.is_some()),
                        ("a_cells", t.a_cells.is_some()),
                        ("b", t.b.is_some()),
                        ("b_quanta", t.b_quanta.is_some()),
                        ("acceleration", t.acceleration.is_some()),
                        ("acceleration_quanta", t.acceleration_quanta.is_some()),
                    ],
                )?;
                let m = mass();
                TransformKind::GalileanBoost {
                    velocity: exactly_one(
                        "velocity",
                        t.velocity,
                        t.velocity_quanta,
                        grid.dp() / m,
                    )?,
                    mass: m,
                }
            }
            TransformName::ConstantAcceleration => {
                forbid(
                    "constant_acceleration",
                    &[
                        ("a", t.a.is_some()),
                        ("a_cells", t.a_cells.is_some()),
                        ("b", t.b.is_some()),
                        ("b_quanta", t.b_quanta.is_some()),
                        ("velocity", t.velocity.is_some()),
                        ("velocity_quanta", t.velocity_quanta.is_some()),
                    ],
                )?;
                let m = mass();
                TransformKind::ConstantAcceleration {
                    acceleration: exactly_one(
                        "acceleration",
                        t.acceleration,
                        t.acceleration_quanta,
                        grid.dp() / (m * self.t_end),
                    )?,
                    mass: m,
                }
            }
        };
        let bare = FrameTransform::new(kind, Cubic::ZERO).map_err(|e| cfg(e.to_string()))?;
        match &t.chi {
            None => Ok((bare, false)),
            Some(ChiConfig::Coefficients(c)) => Ok((
                FrameTransform::new(kind, Cubic(*c)).map_err(|e| cfg(e.to_string()))?,
                false,
            )),
            Some(ChiConfig::Keyword(k)) if k == "auto" => {
                let chi = invariance_chi(&bare, h)?.ok_or_else(|| {
                    cfg(format!(
                        "chi = \"auto\": no time-only phase makes {} leave this Hamiltonian invariant",
                        kind.name()
                    ))
                })?;
                Ok((bare.with_chi(chi), true))
            }
            Some(ChiConfig::Keyword(k)) => Err(cfg(format!(
                "chi must be four coefficients or \"auto\", got {k:?}"
            ))),
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text =
        std::fs::read_to_string(path).map_err(|e| cfg(format!("{}: {e}", path.display())))?;
    ScenarioConfig::from_toml(&text)
        .and_then(|c| c.resolve())
        .map_err(|e| match e {
            Error::Config(m) => cfg(format!("{}: {m}", path.display())),
            other => other,
        })
}

/// Scenario files under `path` (a file, or every `*.toml` in a directory, sorted).
pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>> {
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)
            .map_err(|e| cfg(format!("{}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "toml"))
            .collect();
        files.sort();
        files.iter().map(|p| load_scenario(p)).collect()
    } else {
        Ok(vec![load_scenario(path)?])
    }
}
