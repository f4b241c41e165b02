use anyhow::{bail, Context, Result};
use trigfit_core::levinson;
use trigfit_core::{Complex64, NoiseSpec, SampleSet1D};

use crate::args::{parse_max_degree, Fit1dArgs, WeightsMode};
use crate::csvio;
use crate::report::{write_json, FitReport};

struct Row {
    x: f64,
    value: Complex64,
    weight: f64,
}

pub fn run(args: &Fit1dArgs) -> Result<i32> {
    let mode = WeightsMode::parse(&args.weights)?;
    let max_degree = parse_max_degree(&args.max_degree)?;
    let noise = NoiseSpec::new(args.epsilon).context("invalid --epsilon")?;
    if let (Some(grid), Some(deg)) = (args.grid, max_degree) {
        if grid < 2 * deg + 1 {
            bail!(
                "--grid {grid} is smaller than 2 * max degree + 1 = {}",
                2 * deg + 1
            );
        }
    }

    let parsed = csvio::read_samples(&args.input, false)
        .with_context(|| format!("reading {}", args.input.display()))?;

    // attach file weights before any reordering so each stays with its row
    let file_weights = match &mode {
        WeightsMode::File(path) => {
            let w = csvio::read_weights(path)?;
            if w.len() != parsed.len() {
                bail!(
                    "weights file has {} entries for {} samples",
                    w.len(),
                    parsed.len()
                );
            }
            Some(w)
        }
        _ => None,
    };
    let mut rows: Vec<Row> = parsed
        .iter()
        .enumerate()
        .map(|(i, &(x, value))| Row {
            x,
            value,
            weight: file_weights.as_ref().map_or(0.0, |w| w[i]),
        })
        .collect();
    if args.normalize {
        let mut points: Vec<f64> = rows.iter().map(|r| r.x).collect();
        super::normalize_points(&mut points)?;
        for (row, x) in rows.iter_mut().zip(points) {
            row.x = x;
        }
    }
    rows.sort_by(|a, b| a.x.partial_cmp(&b.x).expect("finite abscissas"));
    let points: Vec<f64> = rows.iter().map(|r| r.x).collect();
    let values: Vec<Complex64> = rows.iter().map(|r| r.value).collect();

    let samples = match &mode {
        WeightsMode::Voronoi => SampleSet1D::with_voronoi_weights(points, values)?,
        WeightsMode::Uniform => SampleSet1D::with_uniform_weights(points, values)?,
        WeightsMode::File(_) => {
            let weights: Vec<f64> = rows.iter().map(|r| r.weight).collect();
            SampleSet1D::new(points, values, weights)?
        }
    };

    let fit = levinson::fit(&samples, noise, max_degree)?;
    let grid_size = args.grid.unwrap_or_else(|| super::default_grid(fit.degree()));
    let grid = levinson::evaluate_on_grid(fit.coefficients(), grid_size)?;

    write_json(&args.out_json, &FitReport::new(&fit, mode.label()))?;
    csvio::write_text(&args.out_grid, &csvio::format_complex_grid(&grid))?;

    if fit.converged() {
        Ok(0)
    } else {
        eprintln!(
            "trigfit: fit did not reach epsilon = {} (achieved {:.3e} at degree {}); \
             best-effort result written",
            args.epsilon,
            fit.achieved_eps(),
            fit.degree()
        );
        Ok(3)
    }
}
