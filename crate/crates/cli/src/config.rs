//! Experiment configuration: a TOML document with one section per concern.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use robinscat::forward_born::{BornQuadrature, SmallRegionSet};
use robinscat::forward_sov::{MeasurementSetup, ScattererConfig, Truncation};
use robinscat::geometry::{make_curve, CurveKind, Point2};
use robinscat::imaging::{NoiseModel, NoiseNorm, SamplingGrid};
use robinscat::tev::{ContourSpec, DiskTevParams, TevProblem};
use robinscat::{Curve64, C64};
use serde::{Deserialize, Serialize};

/// A rejected configuration field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// A complex number written either as a plain real or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexValue {
    pub fn value(&self) -> C64 {
        match *self {
            ComplexValue::Real(r) => C64::new(r, 0.0),
            ComplexValue::Pair([re, im]) => C64::new(re, im),
        }
    }

    fn is_real(&self) -> bool {
        self.value().im == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Sov,
    Born,
    Bie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Circle,
    Ellipse,
    Kite,
    /// Union of small disks (Born solver only).
    Regions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScattererSection {
    pub geometry: Geometry,
    /// Curve parameters: circle `[R]` or `[cx, cy, R]`, ellipse `[a, b]` or
    /// `[a, b, cx, cy]`, kite `[]` or `[cx, cy]`.
    #[serde(default)]
    pub params: Vec<f64>,
    /// Region centers (geometry = "regions").
    #[serde(default)]
    pub centers: Vec<[f64; 2]>,
    /// Common region radius (geometry = "regions").
    #[serde(default)]
    pub r0: Option<f64>,
    pub n: ComplexValue,
    pub mu: ComplexValue,
    pub gamma: ComplexValue,
    #[serde(default = "yes")]
    pub enforce_signs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementSection {
    pub radius_omega: f64,
    pub j: usize,
}

impl Default for MeasurementSection {
    fn default() -> Self {
        Self { radius_omega: 1.0, j: 32 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseNormKind {
    #[default]
    Frobenius,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub norm: NoiseNormKind,
}

/// Disk used for the inside/outside mass ratio in reconstruction summaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceDisk {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImagingSection {
    /// `[x_lo, x_hi, y_lo, y_hi]`.
    #[serde(default = "default_window")]
    pub window: [f64; 4],
    /// `[nx, ny]`.
    #[serde(default = "default_resolution")]
    pub resolution: [usize; 2],
    #[serde(default = "default_rho")]
    pub rho: f64,
    /// Use only `u^s` with `∂_r u^s ≈ i k u^s`.
    #[serde(default)]
    pub far_variant: bool,
    #[serde(default)]
    pub reference: Option<ReferenceDisk>,
}

impl Default for ImagingSection {
    fn default() -> Self {
        Self { window: default_window(), resolution: default_resolution(), rho: default_rho(), far_variant: false, reference: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SovSection {
    /// Highest angular order `P`; adaptive truncation when absent.
    #[serde(default)]
    pub order: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BieSection {
    /// Faces; the solver uses `3 n_f` collocation nodes.
    #[serde(default = "default_n_f")]
    pub n_f: usize,
    /// Finite-difference step of the tangential operator.
    #[serde(default = "default_h")]
    pub h: f64,
}

impl Default for BieSection {
    fn default() -> Self {
        Self { n_f: default_n_f(), h: default_h() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BornSection {
    #[serde(default = "default_radial")]
    pub radial: usize,
    #[serde(default = "default_angular")]
    pub angular: usize,
    #[serde(default = "default_boundary")]
    pub boundary: usize,
}

impl Default for BornSection {
    fn default() -> Self {
        let q = BornQuadrature::default();
        Self { radial: q.radial, angular: q.angular, boundary: q.boundary }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TevSection {
    /// Contour center `[re, im]`.
    #[serde(default = "default_tev_center")]
    pub center: [f64; 2],
    #[serde(default = "default_tev_radius")]
    pub radius: f64,
    #[serde(default = "default_n_quad")]
    pub n_quad: usize,
    #[serde(default = "default_ell")]
    pub ell: usize,
    #[serde(default = "default_n_c")]
    pub n_c: usize,
    #[serde(default = "default_h")]
    pub h: f64,
    /// Highest angular order for the disk determinant search.
    #[serde(default = "default_p_max")]
    pub p_max: usize,
    #[serde(default = "default_rank_tol")]
    pub rank_tol: f64,
    #[serde(default = "default_moments")]
    pub moments: usize,
    #[serde(default = "default_tev_seed")]
    pub seed: u64,
}

impl Default for TevSection {
    fn default() -> Self {
        Self {
            center: default_tev_center(),
            radius: default_tev_radius(),
            n_quad: default_n_quad(),
            ell: default_ell(),
            n_c: default_n_c(),
            h: default_h(),
            p_max: default_p_max(),
            rank_tol: default_rank_tol(),
            moments: default_moments(),
            seed: default_tev_seed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_prefix")]
    pub prefix: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: default_dir(), prefix: default_prefix() }
    }
}

/// One experiment. `k` may be given directly or as a multiple of π (`k_over_pi`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub solver: SolverKind,
    #[serde(default)]
    pub k: Option<f64>,
    #[serde(default)]
    pub k_over_pi: Option<f64>,
    pub scatterer: ScattererSection,
    #[serde(default)]
    pub measurement: MeasurementSection,
    #[serde(default)]
    pub noise: NoiseSection,
    #[serde(default)]
    pub imaging: ImagingSection,
    #[serde(default)]
    pub sov: SovSection,
    #[serde(default)]
    pub bie: BieSection,
    #[serde(default)]
    pub born: BornSection,
    #[serde(default)]
    pub tev: TevSection,
    #[serde(default)]
    pub output: OutputSection,
}

fn yes() -> bool {
    true
}
fn default_window() -> [f64; 4] {
    [-1.0, 1.0, -1.0, 1.0]
}
fn default_resolution() -> [usize; 2] {
    [150, 150]
}
fn default_rho() -> f64 {
    4.0
}
fn default_n_f() -> usize {
    80
}
fn default_h() -> f64 {
    robinscat::forward_bie::DEFAULT_FD_STEP
}
fn default_radial() -> usize {
    BornQuadrature::default().radial
}
fn default_angular() -> usize {
    BornQuadrature::default().angular
}
fn default_boundary() -> usize {
    BornQuadrature::default().boundary
}
fn default_tev_center() -> [f64; 2] {
    [1.25, 0.0]
}
fn default_tev_radius() -> f64 {
    0.35
}
fn default_n_quad() -> usize {
    24
}
fn default_ell() -> usize {
    20
}
fn default_n_c() -> usize {
    60
}
fn default_p_max() -> usize {
    10
}
fn default_rank_tol() -> f64 {
    1e-8
}
fn default_moments() -> usize {
    1
}
fn default_tev_seed() -> u64 {
    0x5eed
}
fn default_dir() -> PathBuf {
    PathBuf::from("out")
}
fn default_prefix() -> String {
    "run".into()
}

impl ExperimentConfig {
    /// Parses TOML text.
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::new("config", e.to_string()))
    }

    /// Reads a TOML config, or the `config` member of a JSON run manifest.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| ConfigError::new("manifest", e.to_string()))?;
            let cfg = v.get("config").ok_or_else(|| ConfigError::new("manifest", "missing `config` member"))?;
            return serde_json::from_value(cfg.clone()).map_err(|e| ConfigError::new("manifest.config", e.to_string()));
        }
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn wavenumber(&self) -> Result<f64, ConfigError> {
        let k = match (self.k, self.k_over_pi) {
            (Some(k), None) => k,
            (None, Some(m)) => m * PI,
            (None, None) => return Err(ConfigError::new("k", "set either `k` or `k_over_pi`")),
            (Some(_), Some(_)) => return Err(ConfigError::new("k", "`k` and `k_over_pi` are mutually exclusive")),
        };
        if !(k.is_finite() && k > 0.0) {
            return Err(ConfigError::new("k", format!("wavenumber must be positive and finite, got {k}")));
        }
        Ok(k)
    }

    pub fn curve(&self) -> Result<Curve64, ConfigError> {
        let kind = match self.scatterer.geometry {
            Geometry::Circle => CurveKind::Circle,
            Geometry::Ellipse => CurveKind::Ellipse,
            Geometry::Kite => CurveKind::Kite,
            Geometry::Regions => {
                return Err(ConfigError::new("scatterer.geometry", "region unions have no single boundary curve"));
            }
        };
        make_curve(kind, &self.scatterer.params).map_err(|e| ConfigError::new("scatterer.params", e.to_string()))
    }

    pub fn scatterer_config(&self) -> Result<ScattererConfig<f64>, ConfigError> {
        let s = &self.scatterer;
        let mut cfg = ScattererConfig::new(self.wavenumber()?, s.n.value(), s.mu.value(), s.gamma.value(), self.curve()?);
        cfg.enforce_signs = s.enforce_signs;
        cfg.validate().map_err(|e| ConfigError::new("scatterer", e.to_string()))?;
        Ok(cfg)
    }

    pub fn regions(&self) -> Result<SmallRegionSet<f64>, ConfigError> {
        let s = &self.scatterer;
        if s.geometry != Geometry::Regions {
            return Err(ConfigError::new("scatterer.geometry", "the Born solver needs geometry = \"regions\""));
        }
        let r0 = s.r0.ok_or_else(|| ConfigError::new("scatterer.r0", "region radius is required"))?;
        let set = SmallRegionSet {
            centers: s.centers.iter().map(|c| Point2::new(c[0], c[1])).collect(),
            r0,
            n: s.n.value(),
            mu: s.mu.value(),
            gamma: s.gamma.value(),
        };
        set.validate().map_err(|e| ConfigError::new("scatterer.centers", e.to_string()))?;
        Ok(set)
    }

    pub fn setup(&self) -> MeasurementSetup<f64> {
        MeasurementSetup::new(self.measurement.radius_omega, self.measurement.j)
    }

    pub fn truncation(&self) -> Truncation {
        self.sov.order.map_or_else(Truncation::default, Truncation::Fixed)
    }

    pub fn born_quadrature(&self) -> BornQuadrature {
        BornQuadrature { radial: self.born.radial, angular: self.born.angular, boundary: self.born.boundary }
    }

    pub fn noise_model(&self) -> NoiseModel<f64> {
        let norm = match self.noise.norm {
            NoiseNormKind::Frobenius => NoiseNorm::Frobenius,
            NoiseNormKind::Spectral => NoiseNorm::Spectral,
        };
        NoiseModel { delta: self.noise.delta, seed: self.noise.seed, norm }
    }

    pub fn grid(&self) -> Result<SamplingGrid<f64>, ConfigError> {
        let [x0, x1, y0, y1] = self.imaging.window;
        let [nx, ny] = self.imaging.resolution;
        SamplingGrid::rect([x0, x1], [y0, y1], nx, ny).map_err(|e| ConfigError::new("imaging.resolution", e.to_string()))
    }

    pub fn contour(&self) -> ContourSpec<f64> {
        let t = &self.tev;
        let mut c = ContourSpec::new(C64::new(t.center[0], t.center[1]), t.radius);
        c.n_quad = t.n_quad;
        c.ell = t.ell;
        c.rank_tol = t.rank_tol;
        c.moments = t.moments;
        c.seed = t.seed;
        c
    }

    fn real_coefficients(&self) -> Result<(f64, f64, f64), ConfigError> {
        let s = &self.scatterer;
        for (name, v) in [("n", s.n), ("mu", s.mu), ("gamma", s.gamma)] {
            if !v.is_real() {
                return Err(ConfigError::new(format!("scatterer.{name}"), "transmission eigenvalues need real coefficients"));
            }
        }
        Ok((s.n.value().re, s.mu.value().re, s.gamma.value().re))
    }

    pub fn disk_tev_params(&self) -> Result<DiskTevParams<f64>, ConfigError> {
        let (n, mu, gamma) = self.real_coefficients()?;
        let radius = self
            .curve()?
            .centered_disk_radius()
            .ok_or_else(|| ConfigError::new("scatterer.geometry", "the determinant route needs a disk centered at the origin"))?;
        let d = DiskTevParams { radius, n, mu, gamma };
        d.validate().map_err(|e| ConfigError::new("scatterer", e.to_string()))?;
        Ok(d)
    }

    pub fn tev_problem(&self) -> Result<TevProblem<f64>, ConfigError> {
        let (n, mu, gamma) = self.real_coefficients()?;
        let mut p = TevProblem::new(self.curve()?, n, mu, gamma, self.tev.n_c);
        p.h = self.tev.h;
        p.validate().map_err(|e| ConfigError::new("tev", e.to_string()))?;
        Ok(p)
    }

    /// Checks the fields used by the forward and imaging runs.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.wavenumber()?;
        let m = &self.measurement;
        if m.j == 0 {
            return Err(ConfigError::new("measurement.j", "need at least one direction"));
        }
        if !(m.radius_omega.is_finite() && m.radius_omega > 0.0) {
            return Err(ConfigError::new("measurement.radius_omega", "must be positive"));
        }
        match self.solver {
            SolverKind::Born => {
                self.regions()?;
                let s = &self.scatterer;
                let reach = s.centers.iter().map(|c| c[0].hypot(c[1])).fold(0.0, f64::max) + s.r0.unwrap_or(0.0);
                if reach >= m.radius_omega {
                    return Err(ConfigError::new("measurement.radius_omega", "regions must lie inside the measurement circle"));
                }
            }
            SolverKind::Sov | SolverKind::Bie => {
                let cfg = self.scatterer_config()?;
                if self.solver == SolverKind::Sov && cfg.curve.centered_disk_radius().is_none() {
                    return Err(ConfigError::new(
                        "solver",
                        "the series solver needs a circle centered at the origin; use solver = \"bie\"",
                    ));
                }
                self.setup().validate(&cfg.curve).map_err(|e| ConfigError::new("measurement.radius_omega", e.to_string()))?;
            }
        }
        if self.solver == SolverKind::Bie {
            if self.bie.n_f < 2 {
                return Err(ConfigError::new("bie.n_f", "need at least 2 faces"));
            }
            if !(self.bie.h > 0.0) {
                return Err(ConfigError::new("bie.h", "finite-difference step must be positive"));
            }
        }
        self.noise_model().validate().map_err(|e| ConfigError::new("noise.delta", e.to_string()))?;
        let [x0, x1, y0, y1] = self.imaging.window;
        if !(x0 < x1 && y0 < y1) {
            return Err(ConfigError::new("imaging.window", "expected [x_lo, x_hi, y_lo, y_hi] with lo < hi"));
        }
        self.grid()?;
        if !(self.imaging.rho > 0.0) {
            return Err(ConfigError::new("imaging.rho", "must be positive"));
        }
        if let Some(r) = self.imaging.reference {
            if !(r.radius > 0.0) {
                return Err(ConfigError::new("imaging.reference.radius", "must be positive"));
            }
        }
        self.contour().validate().map_err(|e| ConfigError::new("tev", e.to_string()))?;
        Ok(())
    }

    /// Whether `z` lies in the scatterer.
    pub fn inside_scatterer(&self, z: Point2<f64>) -> bool {
        match self.scatterer.geometry {
            Geometry::Regions => {
                let r0 = self.scatterer.r0.unwrap_or(0.0);
                self.scatterer.centers.iter().any(|c| (z - Point2::new(c[0], c[1])).norm() <= r0)
            }
            _ => self.curve().is_ok_and(|c| c.contains(z)),
        }
    }

    /// Built-in configurations of the numbered experiments.
    pub fn preset(name: &str) -> Option<Self> {
        let toml = PRESETS.iter().find(|(n, _)| *n == name)?.1;
        Some(Self::from_toml(toml).expect("presets parse"))
    }
}

/// `(name, TOML)` for each shipped experiment; the same files live in `crates/cli/configs/`.
pub const PRESETS: &[(&str, &str)] = &[
    ("example1a", include_str!("../configs/example1a.toml")),
    ("example1b", include_str!("../configs/example1b.toml")),
    ("example2a", include_str!("../configs/example2a.toml")),
    ("example2b", include_str!("../configs/example2b.toml")),
    ("example3a", include_str!("../configs/example3a.toml")),
    ("example3b", include_str!("../configs/example3b.toml")),
    ("example6", include_str!("../configs/example6.toml")),
    ("example7", include_str!("../configs/example7.toml")),
    ("example8", include_str!("../configs/example8.toml")),
    ("table1", include_str!("../configs/table1.toml")),
];
