//! CSV, PGM and manifest files.
//!
//! Numbers are written with 17 significant digits (`{:.16e}`) so that a
//! round trip through text is exact for `f64`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use nalgebra::DMatrix;
use robinscat::forward_bie::LayerDensities;
use robinscat::imaging::IndicatorGrid;
use robinscat::tev::TevResult;
use robinscat::C64;
use serde::Serialize;

use crate::config::ExperimentConfig;

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(csv::Writer::from_writer(BufWriter::new(f)))
}

/// Long format: `row,col,re,im` with zero-based indices.
pub fn write_complex_matrix(path: &Path, m: &DMatrix<C64>) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["row", "col", "re", "im"])?;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let v = m[(i, j)];
            w.write_record([i.to_string(), j.to_string(), num(v.re), num(v.im)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_complex_matrix(path: &Path) -> Result<DMatrix<C64>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["row", "col", "re", "im"] {
        bail!("{}: expected header row,col,re,im", path.display());
    }
    let mut entries = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |c: usize| rec.get(c).with_context(|| format!("{}: record {} is short", path.display(), line + 2));
        let i: usize = field(0)?.parse()?;
        let j: usize = field(1)?.parse()?;
        let re: f64 = field(2)?.parse()?;
        let im: f64 = field(3)?.parse()?;
        entries.push((i, j, C64::new(re, im)));
    }
    let rows = entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
    let cols = entries.iter().map(|e| e.1 + 1).max().unwrap_or(0);
    if entries.len() != rows * cols {
        bail!("{}: {} entries do not fill a {rows}x{cols} matrix", path.display(), entries.len());
    }
    let mut m = DMatrix::from_element(rows, cols, C64::new(0.0, 0.0));
    for (i, j, v) in entries {
        m[(i, j)] = v;
    }
    Ok(m)
}

/// `x,y,W,W_nor`, rows ordered by `y` then `x`.
pub fn write_indicator_csv(path: &Path, g: &IndicatorGrid<f64>) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["x", "y", "W", "W_nor"])?;
    for (iy, &y) in g.ys.iter().enumerate() {
        for (ix, &x) in g.xs.iter().enumerate() {
            w.write_record([num(x), num(y), num(g.values[(iy, ix)]), num(g.normalized[(iy, ix)])])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// 8-bit pixel values `round(255 W_nor)`, top row at the largest `y`.
pub fn pgm_bytes(g: &IndicatorGrid<f64>) -> Vec<u8> {
    let (ny, nx) = g.normalized.shape();
    let mut out = format!("P5\n{nx} {ny}\n255\n").into_bytes();
    for iy in (0..ny).rev() {
        for ix in 0..nx {
            out.push((255.0 * g.normalized[(iy, ix)].clamp(0.0, 1.0)).round() as u8);
        }
    }
    out
}

pub fn write_pgm(path: &Path, g: &IndicatorGrid<f64>) -> Result<()> {
    std::fs::write(path, pgm_bytes(g)).with_context(|| format!("writing {}", path.display()))
}

/// `re,im,residual,method,multiplicity`.
pub fn write_tev_csv(path: &Path, res: &TevResult<f64>) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["re", "im", "residual", "method", "multiplicity"])?;
    for e in &res.entries {
        w.write_record([num(e.k.re), num(e.k.im), num(e.residual), res.method.to_string(), e.multiplicity.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `t,phi_re,phi_im,psi_re,psi_im` for one incident direction.
pub fn write_densities(path: &Path, d: &LayerDensities<f64>) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["t", "phi_re", "phi_im", "psi_re", "psi_im"])?;
    for ((t, phi), psi) in d.nodes.iter().zip(&d.phi).zip(&d.psi) {
        w.write_record([num(*t), num(phi.re), num(phi.im), num(psi.re), num(psi.im)])?;
    }
    w.flush()?;
    Ok(())
}

/// Parameter echo written next to every output.
#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a ExperimentConfig,
    pub outputs: Vec<String>,
}

impl<'a> Manifest<'a> {
    pub fn new(command: &'a str, config: &'a ExperimentConfig, outputs: &[PathBuf]) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            outputs: outputs.iter().filter_map(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned()).collect(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut f = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        serde_json::to_writer_pretty(&mut f, self)?;
        writeln!(f)?;
        Ok(())
    }
}
