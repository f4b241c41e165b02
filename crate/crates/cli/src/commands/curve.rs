use anyhow::{Context, Result};
use trigfit_core::curve::{as_samples, BoundaryPoints};
use trigfit_core::{levinson, NoiseSpec};

use crate::args::{parse_max_degree, CurveArgs};
use crate::csvio;
use crate::report::{write_json, FitReport};

pub fn run(args: &CurveArgs) -> Result<i32> {
    let max_degree = parse_max_degree(&args.max_degree)?;
    let noise = NoiseSpec::new(args.epsilon).context("invalid --epsilon")?;
    if let (Some(grid), Some(deg)) = (args.grid, max_degree) {
        if grid < 2 * deg + 1 {
            anyhow::bail!(
                "--grid {grid} is smaller than 2 * max degree + 1 = {}",
                2 * deg + 1
            );
        }
    }
    let xy = csvio::read_boundary(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let boundary = BoundaryPoints::new(xy)?;
    let (_, samples) = as_samples(&boundary)?;
    let fit = levinson::fit(&samples, noise, max_degree)?;

    let grid_size = args.grid.unwrap_or_else(|| super::default_grid(fit.degree()));
    let values = levinson::evaluate_on_grid(fit.coefficients(), grid_size)?;
    let contour: Vec<(f64, f64)> = values.iter().map(|v| (v.re, v.im)).collect();

    write_json(&args.out_json, &FitReport::new(&fit, "voronoi"))?;
    csvio::write_text(&args.out_grid, &csvio::format_contour_grid(&contour))?;

    if fit.converged() {
        Ok(0)
    } else {
        eprintln!(
            "trigfit: contour fit did not reach epsilon = {} (achieved {:.3e} at degree {}); \
             best-effort result written",
            args.epsilon,
            fit.achieved_eps(),
            fit.degree()
        );
        Ok(3)
    }
}
