//! The `cubsc` command-line tool: validation, small-cancellation
//! certification, triangle classification, cone-off audits and fixtures.

use std::fs;
use std::path::{Path as FsPath, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cubsc_core::json::parse_alpha;
use cubsc_core::{CubeComplex, CubicalPresentation, Dart};

pub mod commands;
pub mod fixtures;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Invalid input: a failed validation, a bad flag or an unreadable file.
    pub const INVALID: i32 = 1;
    pub const REFUTED: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const STRUCTURE_VIOLATION: i32 = 5;
}

#[derive(Parser, Debug, Clone)]
#[command(name = "cubsc", version, about = "Cubical small-cancellation toolkit")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for report files.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check faces, nonpositive curvature and local isometries.
    Validate { path: PathBuf },
    /// Certify the small-cancellation condition inside a ball.
    Certify {
        path: PathBuf,
        /// Exact rational, e.g. 1/144. Defaults to the value in the file.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Host-partner elevation pairs to examine.
        #[arg(long, default_value_t = 50_000_000, value_parser = positive)]
        budget: usize,
        #[arg(long, default_value_t = 2_000_000, value_parser = positive)]
        max_vertices: usize,
        #[arg(long, default_value_t = 512, value_parser = positive)]
        systole_maxlen: usize,
    },
    /// Classify a geodesic triangle.
    Classify(ClassifyArgs),
    /// Cone off a ball and audit it.
    Coneoff(ConeoffArgs),
    /// Write the bundled fixture files, or one built from an Artin matrix.
    Fixtures {
        /// JSON Artin matrix; `null` entries are infinite.
        #[arg(long)]
        artin: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    pub path: PathBuf,
    /// Corners as words from the basepoint; `1` is the basepoint.
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], conflicts_with = "sides")]
    pub points: Option<Vec<String>>,
    /// Sides as words, taken to be geodesic.
    #[arg(long, num_args = 3, value_names = ["ALPHA", "BETA", "GAMMA"])]
    pub sides: Option<Vec<String>>,
    /// Ball radius for `--points`; defaults to twice the longest word plus one.
    #[arg(long)]
    pub radius: Option<usize>,
    /// Rewrite steps per reduction.
    #[arg(long, default_value_t = 100_000, value_parser = positive)]
    pub steps: usize,
    /// Search nodes for diagram improvement.
    #[arg(long, default_value_t = 2_000, value_parser = positive)]
    pub area: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ConeoffArgs {
    pub path: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub radius: usize,
    /// Points sampled for the four-point condition; exhaustive below this.
    #[arg(long, default_value_t = 120, value_parser = positive)]
    pub delta_sample: usize,
    /// Longest square bigon side audited.
    #[arg(long)]
    pub bigon_len: Option<usize>,
    /// Largest neighbourhood radius in the overlap table.
    #[arg(long, default_value_t = 2)]
    pub overlap_radius: u32,
    #[arg(long, default_value_t = 100_000, value_parser = positive)]
    pub steps: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Caps the rayon pool at `CUBSC_THREADS` when set.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("CUBSC_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("CUBSC_THREADS=`{v}`"))?;
        if n == 0 {
            bail!("CUBSC_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

pub fn run(cfg: &RunConfig) -> Result<i32> {
    match &cfg.command {
        Command::Validate { path } => commands::validate(path),
        Command::Certify {
            path,
            alpha,
            radius,
            budget,
            max_vertices,
            systole_maxlen,
        } => {
            let budgets = cubsc_core::pieces::Budgets {
                systole_maxlen: *systole_maxlen,
                max_ball_vertices: *max_vertices,
                max_pairs: *budget,
            };
            commands::certify(path, alpha.as_deref(), *radius, &budgets, &cfg.out)
        }
        Command::Classify(args) => commands::classify(args, &cfg.out),
        Command::Coneoff(args) => commands::coneoff(args, cfg.seed, &cfg.out),
        Command::Fixtures { artin } => fixtures::write_fixtures(&cfg.out, artin.as_deref()),
    }
}

pub fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load(path: &FsPath) -> Result<CubicalPresentation> {
    let text = read(path)?;
    CubicalPresentation::parse(&text).with_context(|| format!("loading {}", path.display()))
}

pub fn load_with_alpha(path: &FsPath, alpha: Option<&str>) -> Result<CubicalPresentation> {
    let p = load(path)?;
    Ok(match alpha {
        Some(a) => p.with_alpha(parse_alpha(a)?),
        None => p,
    })
}

/// Writes `name` under `dir`, creating the directory.
pub fn write_out(dir: &FsPath, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let p = dir.join(name);
    fs::write(&p, contents).with_context(|| format!("writing {}", p.display()))?;
    Ok(p)
}

/// Darts of a word over a one-vertex complex; upper case inverts, `1` is
/// the empty word.
pub fn parse_word(x: &CubeComplex, w: &str) -> Result<Vec<Dart>> {
    if w == "1" {
        return Ok(Vec::new());
    }
    if x.vertex_count() != 1 {
        bail!("words need a one-vertex base complex");
    }
    Ok(cubsc_core::families::word_darts(x, w)?)
}

/// Inverse of `parse_word`.
pub fn word_of(x: &CubeComplex, darts: &[Dart]) -> String {
    if darts.is_empty() {
        return "1".into();
    }
    darts
        .iter()
        .map(|d| {
            let l = x.edge_label(d.edge);
            if d.rev {
                if l.chars().count() == 1 {
                    l.to_uppercase()
                } else {
                    format!("{l}^-1")
                }
            } else {
                l.to_string()
            }
        })
        .collect()
}
