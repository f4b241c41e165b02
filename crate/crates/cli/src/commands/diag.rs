use anyhow::{Context, Result};
use trigfit_core::oracle::{condition_bound_1d, frobenius_objective, spectrum, DenseSystem};
use trigfit_core::sampling::mesh_norm;
use trigfit_core::SampleSet1D;

use crate::args::DiagArgs;
use crate::csvio;
use crate::report::{write_json, DiagReport, FrobeniusReport};

pub fn run(args: &DiagArgs) -> Result<i32> {
    let rows = csvio::read_samples(&args.input, true)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let rows = super::sort_rows(rows);
    let points: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let values: Vec<trigfit_core::Complex64> = rows.iter().map(|r| r.1).collect();

    // validates the domain and yields the Voronoi weights
    let samples = SampleSet1D::with_voronoi_weights(points, values)?;
    let gamma = samples.mesh_norm();
    debug_assert_eq!(gamma, mesh_norm(samples.points()));

    let dense = DenseSystem::new(&samples, args.degree)?;
    let spec = spectrum(&dense);
    let bound = match condition_bound_1d(gamma, args.degree) {
        Some(b) => serde_json::Value::from(b),
        None => serde_json::Value::from("inapplicable"),
    };

    let r = samples.len();
    let uniform = vec![1.0 / r as f64; r];
    let report = DiagReport {
        degree: args.degree,
        samples: r,
        mesh_norm: gamma,
        lambda_min: spec.lambda_min,
        lambda_max: spec.lambda_max,
        cond: spec.cond,
        condition_bound: bound,
        frobenius_objective: FrobeniusReport {
            voronoi: frobenius_objective(samples.points(), samples.weights(), args.degree)?,
            uniform: frobenius_objective(samples.points(), &uniform, args.degree)?,
        },
    };

    match &args.out_json {
        Some(path) => write_json(path, &report)?,
        None => {
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            print!("{text}");
        }
    }
    Ok(0)
}
