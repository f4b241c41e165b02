//! JSON report schemas. Field names and order are stable for downstream
//! tooling; no timestamps, so identical inputs give identical bytes.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use trigfit_core::{Complex64, FitResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub k: i64,
    pub re: f64,
    pub im: f64,
}

/// Coefficient report of one fit. `residual_history` entries are
/// `[degree, squared relative residual]` per completed degree;
/// `achieved_eps` is the unsquared relative residual at the accepted
/// degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitReport {
    pub degree: usize,
    pub converged: bool,
    pub achieved_eps: f64,
    pub coefficients: Vec<CoefficientEntry>,
    pub residual_history: Vec<(usize, f64)>,
    pub weights_mode: String,
}

impl FitReport {
    pub fn new(fit: &FitResult, weights_mode: &str) -> Self {
        let n = fit.degree() as i64;
        Self {
            degree: fit.degree(),
            converged: fit.converged(),
            achieved_eps: fit.achieved_eps(),
            coefficients: fit
                .coefficients()
                .iter()
                .enumerate()
                .map(|(i, c)| CoefficientEntry {
                    k: i as i64 - n,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
            residual_history: fit.residual_history().to_vec(),
            weights_mode: weights_mode.to_string(),
        }
    }

    /// Coefficient vector `c_{-N}..c_N` rebuilt from the report.
    pub fn coefficient_vector(&self) -> Result<Vec<Complex64>> {
        let n = self.degree as i64;
        let mut out = vec![Complex64::new(0.0, 0.0); 2 * self.degree + 1];
        let mut seen = vec![false; out.len()];
        for entry in &self.coefficients {
            if entry.k < -n || entry.k > n {
                bail!("coefficient index {} outside degree {}", entry.k, self.degree);
            }
            let slot = (entry.k + n) as usize;
            out[slot] = Complex64::new(entry.re, entry.im);
            seen[slot] = true;
        }
        if seen.iter().any(|s| !s) {
            bail!("coefficient report is missing entries");
        }
        Ok(out)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing report")?;
    text.push('\n');
    crate::csvio::write_text(path, &text)
}

pub fn read_fit_report(path: &Path) -> Result<FitReport> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Sequence recovery summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeqReport {
    pub epsilon: f64,
    pub cross_degree: usize,
    pub grid: usize,
    pub lines: Vec<SeqLineReport>,
    pub dropped: Vec<SeqDroppedLine>,
    pub targets: Vec<SeqTargetReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeqLineReport {
    pub tau: f64,
    pub file: String,
    pub degree: usize,
    pub converged: bool,
    pub achieved_eps: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeqDroppedLine {
    pub file: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeqTargetReport {
    pub tau: f64,
    pub output: String,
}

/// Conditioning diagnostics at a fixed degree. `condition_bound` holds the
/// mesh-norm bound value or the string "inapplicable" when the hypothesis
/// `gamma < 1/(2M)` fails.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagReport {
    pub degree: usize,
    pub samples: usize,
    pub mesh_norm: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub cond: f64,
    pub condition_bound: serde_json::Value,
    pub frobenius_objective: FrobeniusReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrobeniusReport {
    pub voronoi: f64,
    pub uniform: f64,
}
