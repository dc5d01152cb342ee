//! Forward, reconstruction and eigenvalue runs driven by an [`ExperimentConfig`].

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use robinscat::forward_bie::{bie_cauchy_data, BieSolver};
use robinscat::forward_born::born_cauchy_data_with;
use robinscat::forward_sov::{sov_cauchy_data, CauchyData};
use robinscat::geometry::Point2;
use robinscat::imaging::{add_noise, dsm_indicator, dsm_indicator_far, normalize, IndicatorGrid};
use robinscat::tev::{beyn_bie, find_disk_tevs, TevResult};
use serde::Serialize;

use crate::config::{ConfigError, ExperimentConfig, SolverKind};
use crate::io;

/// Noise-free Cauchy data from the configured solver.
pub fn compute_cauchy(cfg: &ExperimentConfig) -> Result<CauchyData<f64>> {
    cfg.validate()?;
    let setup = cfg.setup();
    let data = match cfg.solver {
        SolverKind::Sov => sov_cauchy_data(&cfg.scatterer_config()?, &setup, cfg.truncation())?,
        SolverKind::Born => born_cauchy_data_with(&cfg.regions()?, &setup, cfg.wavenumber()?, cfg.born_quadrature())?,
        SolverKind::Bie => bie_cauchy_data(&cfg.scatterer_config()?, &setup, cfg.bie.n_f, cfg.bie.h)?,
    };
    Ok(data)
}

fn out_path(dir: &Path, prefix: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{prefix}_{suffix}"))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

/// Writes `<prefix>_us.csv`, `<prefix>_dus.csv` and `<prefix>_forward.json`.
/// With `densities`, BIE runs also dump the layer densities of the first
/// incident direction.
pub fn run_forward(cfg: &ExperimentConfig, dir: &Path, densities: bool) -> Result<Vec<PathBuf>> {
    let data = compute_cauchy(cfg)?;
    ensure_dir(dir)?;
    let prefix = &cfg.output.prefix;
    let us = out_path(dir, prefix, "us.csv");
    let dus = out_path(dir, prefix, "dus.csv");
    io::write_complex_matrix(&us, &data.us)?;
    io::write_complex_matrix(&dus, &data.dus)?;
    let mut files = vec![us, dus];
    if densities && cfg.solver == SolverKind::Bie {
        let solver = BieSolver::new(&cfg.scatterer_config()?, cfg.bie.n_f, cfg.bie.h)?;
        let angle = cfg.setup().angles()[0];
        let d = solver.solve(&[angle])?.remove(0);
        let p = out_path(dir, prefix, "densities.csv");
        io::write_densities(&p, &d)?;
        files.push(p);
    }
    let manifest = out_path(dir, prefix, "forward.json");
    io::Manifest::new("forward", cfg, &files).write(&manifest)?;
    files.push(manifest);
    Ok(files)
}

/// Reads the CSV pair written by [`run_forward`] and checks it against the configured `J`.
pub fn load_cauchy(cfg: &ExperimentConfig, us: &Path, dus: &Path) -> Result<CauchyData<f64>> {
    let j = cfg.measurement.j;
    let mut data = CauchyData::zeros(cfg.setup(), cfg.wavenumber()?);
    data.us = io::read_complex_matrix(us)?;
    data.dus = io::read_complex_matrix(dus)?;
    for (name, m) in [("us", &data.us), ("dus", &data.dus)] {
        if m.shape() != (j, j) {
            return Err(ConfigError::new(
                "measurement.j",
                format!("{name} data is {}x{} but the config expects {j}x{j}", m.nrows(), m.ncols()),
            )
            .into());
        }
    }
    Ok(data)
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub argmax: [f64; 2],
    pub peak: f64,
    /// Whether the argmax lies in the configured scatterer.
    pub argmax_inside: bool,
    /// `Σ W_nor` inside the reference disk divided by `Σ W_nor` outside it.
    pub reference_mass_ratio: Option<f64>,
    pub noise_delta: f64,
    pub far_variant: bool,
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub indicator: IndicatorGrid<f64>,
    pub summary: Summary,
}

/// Adds the configured noise and evaluates the normalized indicator.
pub fn reconstruct(cfg: &ExperimentConfig, data: &CauchyData<f64>) -> Result<Reconstruction> {
    cfg.validate()?;
    let noisy = add_noise(data, &cfg.noise_model())?;
    let grid = cfg.grid()?;
    let raw = if cfg.imaging.far_variant {
        dsm_indicator_far(&noisy.us, &noisy.setup, noisy.k, &grid)?
    } else {
        dsm_indicator(&noisy, &grid)?
    };
    let indicator = normalize(&raw, cfg.imaging.rho)?;
    let am = indicator.argmax();
    let reference_mass_ratio = cfg.imaging.reference.map(|r| {
        let c = Point2::new(r.center[0], r.center[1]);
        let (mut inside, mut outside) = (0.0, 0.0);
        for (iy, &y) in indicator.ys.iter().enumerate() {
            for (ix, &x) in indicator.xs.iter().enumerate() {
                let w = indicator.normalized[(iy, ix)];
                if (Point2::new(x, y) - c).norm() <= r.radius {
                    inside += w;
                } else {
                    outside += w;
                }
            }
        }
        if outside > 0.0 {
            inside / outside
        } else {
            f64::INFINITY
        }
    });
    let summary = Summary {
        argmax: [am.x, am.y],
        peak: indicator.max(),
        argmax_inside: cfg.inside_scatterer(am),
        reference_mass_ratio,
        noise_delta: cfg.noise.delta,
        far_variant: cfg.imaging.far_variant,
    };
    Ok(Reconstruction { indicator, summary })
}

/// Writes `<prefix>_indicator.csv`, `<prefix>_indicator.pgm`, `<prefix>_summary.json`
/// and `<prefix>_reconstruct.json`. Without `data`, the forward problem is solved first.
pub fn run_reconstruct(cfg: &ExperimentConfig, data: Option<(&Path, &Path)>, dir: &Path) -> Result<(Reconstruction, Vec<PathBuf>)> {
    cfg.validate()?;
    let cauchy = match data {
        Some((us, dus)) => load_cauchy(cfg, us, dus)?,
        None => compute_cauchy(cfg)?,
    };
    let rec = reconstruct(cfg, &cauchy)?;
    ensure_dir(dir)?;
    let prefix = &cfg.output.prefix;
    let csv = out_path(dir, prefix, "indicator.csv");
    let pgm = out_path(dir, prefix, "indicator.pgm");
    let summary = out_path(dir, prefix, "summary.json");
    io::write_indicator_csv(&csv, &rec.indicator)?;
    io::write_pgm(&pgm, &rec.indicator)?;
    std::fs::write(&summary, serde_json::to_string_pretty(&rec.summary)? + "\n")?;
    let mut files = vec![csv, pgm, summary];
    let manifest = out_path(dir, prefix, "reconstruct.json");
    io::Manifest::new("reconstruct", cfg, &files).write(&manifest)?;
    files.push(manifest);
    Ok((rec, files))
}

/// Disk eigenvalues from the series determinant inside the configured contour.
pub fn tev_disk(cfg: &ExperimentConfig) -> Result<TevResult<f64>> {
    let contour = cfg.contour();
    contour.validate().map_err(|e| ConfigError::new("tev", e.to_string()))?;
    Ok(find_disk_tevs(&cfg.disk_tev_params()?, &contour, cfg.tev.p_max)?)
}

/// Boundary-integral eigenvalues inside the configured contour.
pub fn tev_bie(cfg: &ExperimentConfig) -> Result<TevResult<f64>> {
    let contour = cfg.contour();
    contour.validate().map_err(|e| ConfigError::new("tev", e.to_string()))?;
    Ok(beyn_bie(&cfg.tev_problem()?, &contour)?)
}

/// Writes `<prefix>_<command>.csv` and its manifest.
pub fn write_tev(cfg: &ExperimentConfig, command: &str, res: &TevResult<f64>, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let csv = out_path(dir, &cfg.output.prefix, &format!("{command}.csv"));
    io::write_tev_csv(&csv, res)?;
    let mut files = vec![csv];
    let manifest = out_path(dir, &cfg.output.prefix, &format!("{command}.json"));
    io::Manifest::new(command, cfg, &files).write(&manifest)?;
    files.push(manifest);
    Ok(files)
}
