use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use robinscat::specfun::validation_lattice;
use robinscat::tev::TevResult;
use robinscat_cli::config::{ConfigError, ExperimentConfig, SolverKind, PRESETS};
use robinscat_cli::tables::{run_table, TableKind};
use robinscat_cli::{exit, exit_code, run};

#[derive(Parser)]
#[command(name = "robinscat", version, about = "Scattering, direct sampling and transmission eigenvalue experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the forward problem and write the Cauchy data as CSV.
    Forward {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        over: Overrides,
        /// Also dump the layer densities of the first direction (bie solver).
        #[arg(long)]
        densities: bool,
    },
    /// Evaluate the sampling indicator from Cauchy data (computed on the fly without --us/--dus).
    Reconstruct {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        over: Overrides,
        #[arg(long, requires = "dus")]
        us: Option<PathBuf>,
        #[arg(long, requires = "us")]
        dus: Option<PathBuf>,
    },
    /// Disk transmission eigenvalues from the series determinant.
    TevDisk {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        over: Overrides,
        #[command(flatten)]
        tev: TevOverrides,
    },
    /// Transmission eigenvalues of the boundary-integral family by contour integration.
    TevBie {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        over: Overrides,
        #[command(flatten)]
        tev: TevOverrides,
    },
    /// Reproduce a table; exits with 3 if a tolerance check fails.
    Tables {
        #[arg(value_enum)]
        which: Vec<TableKind>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check a configuration (and optionally the special-function identities).
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        over: Overrides,
        #[arg(long)]
        kernels: bool,
    },
    /// List the built-in presets.
    Presets,
}

#[derive(Args)]
struct Source {
    /// TOML config, or a JSON manifest from an earlier run.
    #[arg(long, short, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,
    /// Built-in configuration (see `robinscat presets`).
    #[arg(long)]
    preset: Option<String>,
}

impl Source {
    fn load(&self) -> Result<ExperimentConfig> {
        match (&self.config, &self.preset) {
            (Some(p), _) => Ok(ExperimentConfig::load(p)?),
            (None, Some(name)) => {
                ExperimentConfig::preset(name).ok_or_else(|| ConfigError::new("preset", format!("unknown preset `{name}`")).into())
            }
            (None, None) => bail!(ConfigError::new("config", "pass --config or --preset")),
        }
    }
}

#[derive(Args)]
struct Overrides {
    #[arg(long, conflicts_with = "k_over_pi")]
    k: Option<f64>,
    #[arg(long)]
    k_over_pi: Option<f64>,
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    radius_omega: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    rho: Option<f64>,
    /// Square grid resolution.
    #[arg(long)]
    resolution: Option<usize>,
    #[arg(long)]
    far_variant: Option<bool>,
    #[arg(long)]
    n_f: Option<usize>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    prefix: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<()> {
        if let Some(k) = self.k {
            cfg.k = Some(k);
            cfg.k_over_pi = None;
        }
        if let Some(m) = self.k_over_pi {
            cfg.k_over_pi = Some(m);
            cfg.k = None;
        }
        if let Some(s) = &self.solver {
            cfg.solver = match s.as_str() {
                "sov" => SolverKind::Sov,
                "born" => SolverKind::Born,
                "bie" => SolverKind::Bie,
                other => bail!(ConfigError::new("solver", format!("unknown solver `{other}`"))),
            };
        }
        if let Some(j) = self.j {
            cfg.measurement.j = j;
        }
        if let Some(r) = self.radius_omega {
            cfg.measurement.radius_omega = r;
        }
        if let Some(d) = self.delta {
            cfg.noise.delta = d;
        }
        if let Some(s) = self.seed {
            cfg.noise.seed = s;
        }
        if let Some(r) = self.rho {
            cfg.imaging.rho = r;
        }
        if let Some(n) = self.resolution {
            cfg.imaging.resolution = [n, n];
        }
        if let Some(f) = self.far_variant {
            cfg.imaging.far_variant = f;
        }
        if let Some(n) = self.n_f {
            cfg.bie.n_f = n;
        }
        if let Some(h) = self.h {
            cfg.bie.h = h;
            cfg.tev.h = h;
        }
        if let Some(p) = &self.prefix {
            cfg.output.prefix = p.clone();
        }
        if let Some(o) = &self.out {
            cfg.output.dir = o.clone();
        }
        Ok(())
    }
}

#[derive(Args)]
struct TevOverrides {
    /// Contour center as `re,im`.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    center: Option<Vec<f64>>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    n_quad: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    n_c: Option<usize>,
    #[arg(long)]
    p_max: Option<usize>,
}

impl TevOverrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        let t = &mut cfg.tev;
        if let Some(c) = &self.center {
            t.center = [c[0], c[1]];
        }
        if let Some(r) = self.radius {
            t.radius = r;
        }
        if let Some(n) = self.n_quad {
            t.n_quad = n;
        }
        if let Some(l) = self.ell {
            t.ell = l;
        }
        if let Some(n) = self.n_c {
            t.n_c = n;
        }
        if let Some(p) = self.p_max {
            t.p_max = p;
        }
    }
}

fn configured(source: &Source, over: &Overrides) -> Result<ExperimentConfig> {
    let mut cfg = source.load()?;
    over.apply(&mut cfg)?;
    Ok(cfg)
}

fn list(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn print_tev(res: &TevResult<f64>) {
    println!("{} eigenvalue(s), {} candidate(s) rejected", res.total_multiplicity(), res.rejected);
    for e in &res.entries {
        println!("  {:.12} {:+.12}i  x{}  residual {:.2e}", e.k.re, e.k.im, e.multiplicity, e.residual);
    }
}

fn write_table(out: &Path, name: &str, text: &str, csv: &str) -> Result<()> {
    std::fs::create_dir_all(out)?;
    std::fs::write(out.join(format!("{name}.txt")), text)?;
    std::fs::write(out.join(format!("{name}.csv")), csv)?;
    Ok(())
}

fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Forward { source, over, densities } => {
            let cfg = configured(&source, &over)?;
            list(&run::run_forward(&cfg, &cfg.output.dir, densities)?);
        }
        Command::Reconstruct { source, over, us, dus } => {
            let cfg = configured(&source, &over)?;
            let data = us.as_deref().zip(dus.as_deref());
            let (rec, files) = run::run_reconstruct(&cfg, data, &cfg.output.dir)?;
            list(&files);
            println!("{}", serde_json::to_string_pretty(&rec.summary)?);
        }
        Command::TevDisk { source, over, tev } => {
            let mut cfg = configured(&source, &over)?;
            tev.apply(&mut cfg);
            let res = run::tev_disk(&cfg)?;
            print_tev(&res);
            list(&run::write_tev(&cfg, "tev_disk", &res, &cfg.output.dir)?);
        }
        Command::TevBie { source, over, tev } => {
            let mut cfg = configured(&source, &over)?;
            tev.apply(&mut cfg);
            let res = run::tev_bie(&cfg)?;
            print_tev(&res);
            list(&run::write_tev(&cfg, "tev_bie", &res, &cfg.output.dir)?);
        }
        Command::Tables { which, out } => {
            let which = if which.is_empty() { vec![TableKind::Table1, TableKind::Table2, TableKind::Table3] } else { which };
            let mut ok = true;
            for kind in which {
                let rep = run_table(kind)?;
                println!("{}", rep.text);
                write_table(&out, &rep.name, &rep.text, &rep.csv)?;
                ok &= rep.passed();
            }
            if !ok {
                return Ok(exit::ACCEPTANCE);
            }
        }
        Command::Validate { source, over, kernels } => {
            let cfg = configured(&source, &over)?;
            let is_tev_only = cfg.k.is_none() && cfg.k_over_pi.is_none();
            if is_tev_only {
                cfg.contour().validate().map_err(|e| ConfigError::new("tev", e.to_string()))?;
                if cfg.curve()?.centered_disk_radius().is_some() {
                    cfg.disk_tev_params()?;
                }
                cfg.tev_problem()?;
            } else {
                cfg.validate()?;
            }
            println!("config ok");
            if kernels {
                let rep = validation_lattice(25, 9, 20)?;
                let pass = rep.max_residual() <= 1e-10;
                println!("{} special-function lattice: {} points, max residual {:.2e}", if pass { "PASS" } else { "FAIL" }, rep.points, rep.max_residual());
                if !pass {
                    return Ok(exit::ACCEPTANCE);
                }
            }
        }
        Command::Presets => {
            for (name, text) in PRESETS {
                let first = text.lines().next().unwrap_or("").trim_start_matches("# ");
                println!("{name:10} {first}");
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
