use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "trigfit",
    version,
    about = "Adaptive trigonometric least-squares fitting of nonuniform samples"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit complex samples on [0,1) and emit coefficients and a grid evaluation
    Fit1d(Fit1dArgs),
    /// Fit a closed planar contour from ordered boundary points
    Curve(CurveArgs),
    /// Recover missing lines of a line-sampled 2-D sequence
    Seq(SeqArgs),
    /// Report conditioning diagnostics for a sample set at a fixed degree
    Diag(DiagArgs),
}

#[derive(Debug, Args)]
pub struct Fit1dArgs {
    /// Input CSV with header x,re[,im]
    #[arg(long)]
    pub input: PathBuf,
    /// Relative noise level in [0,1)
    #[arg(long)]
    pub epsilon: f64,
    /// Weight mode: voronoi, uniform, or file:PATH (one weight per line)
    #[arg(long, default_value = "voronoi")]
    pub weights: String,
    /// Largest degree to try: an integer or "auto" for floor((r-1)/2)
    #[arg(long, default_value = "auto")]
    pub max_degree: String,
    /// Evaluation grid size (default: power of two >= max(64, 4*degree+1))
    #[arg(long)]
    pub grid: Option<usize>,
    /// Map sampling points affinely into [0,1) instead of rejecting them
    #[arg(long)]
    pub normalize: bool,
    /// Coefficient report destination
    #[arg(long)]
    pub out_json: PathBuf,
    /// Grid evaluation destination
    #[arg(long)]
    pub out_grid: PathBuf,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Input CSV with header x,y: boundary points ordered along the contour
    #[arg(long)]
    pub input: PathBuf,
    /// Relative noise level in [0,1)
    #[arg(long)]
    pub epsilon: f64,
    /// Largest degree to try: an integer or "auto"
    #[arg(long, default_value = "auto")]
    pub max_degree: String,
    /// Contour grid size
    #[arg(long)]
    pub grid: Option<usize>,
    /// Coefficient report destination
    #[arg(long)]
    pub out_json: PathBuf,
    /// Contour evaluation destination (columns x,y)
    #[arg(long)]
    pub out_grid: PathBuf,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// Directory of per-line CSVs named <tau>.csv with header u,x,y
    #[arg(long)]
    pub input_dir: PathBuf,
    /// Comma-separated line positions to recover, each in [0,1)
    #[arg(long)]
    pub targets: String,
    /// Relative noise level for the per-line fits
    #[arg(long)]
    pub epsilon: f64,
    /// Degree of the cross-line fit (default: floor((lines-1)/2) capped at
    /// the largest per-line degree)
    #[arg(long)]
    pub cross_degree: Option<usize>,
    /// Shared evaluation grid size along the in-line coordinate
    #[arg(long)]
    pub grid: Option<usize>,
    /// Directory for the recovered per-target CSVs
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Summary report destination (default: <out-dir>/summary.json)
    #[arg(long)]
    pub out_json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagArgs {
    /// Input CSV with header x[,re[,im]]
    #[arg(long)]
    pub input: PathBuf,
    /// Degree of the analyzed system
    #[arg(long)]
    pub degree: usize,
    /// Report destination (default: stdout)
    #[arg(long)]
    pub out_json: Option<PathBuf>,
}

/// Weight selection for fit1d.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightsMode {
    Voronoi,
    Uniform,
    File(PathBuf),
}

impl WeightsMode {
    pub fn parse(raw: &str) -> Result<Self> {
        match raw {
            "voronoi" => Ok(Self::Voronoi),
            "uniform" => Ok(Self::Uniform),
            other => {
                if let Some(path) = other.strip_prefix("file:") {
                    if path.is_empty() {
                        bail!("weights mode 'file:' needs a path");
                    }
                    Ok(Self::File(PathBuf::from(path)))
                } else {
                    bail!("unknown weights mode '{other}' (expected voronoi, uniform or file:PATH)")
                }
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Voronoi => "voronoi",
            Self::Uniform => "uniform",
            Self::File(_) => "file",
        }
    }
}

/// "auto" or a nonnegative integer.
pub fn parse_max_degree(raw: &str) -> Result<Option<usize>> {
    if raw == "auto" {
        return Ok(None);
    }
    match raw.parse::<usize>() {
        Ok(v) => Ok(Some(v)),
        Err(_) => bail!("--max-degree must be an integer or 'auto', got '{raw}'"),
    }
}

/// Comma-separated floats.
pub fn parse_targets(raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|piece| {
            let piece = piece.trim();
            piece
                .parse::<f64>()
                .map_err(|_| anyhow::anyhow!("invalid target value '{piece}'"))
        })
        .collect()
}
