use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use trigfit_core::sequence2d::{recover_cross, LineFits, LineSampleGrid};
use trigfit_core::{levinson, NoiseSpec, SampleSet1D};

use crate::args::{parse_targets, SeqArgs};
use crate::csvio;
use crate::report::{write_json, SeqDroppedLine, SeqLineReport, SeqReport, SeqTargetReport};
use crate::threads;

struct LineInput {
    tau: f64,
    file: String,
    samples: SampleSet1D,
}

pub fn run(args: &SeqArgs) -> Result<i32> {
    let noise = NoiseSpec::new(args.epsilon).context("invalid --epsilon")?;
    let targets = parse_targets(&args.targets)?;

    let mut lines: Vec<LineInput> = Vec::new();
    let mut dropped: Vec<SeqDroppedLine> = Vec::new();
    let mut entries: Vec<PathBuf> = std::fs::read_dir(&args.input_dir)
        .with_context(|| format!("reading directory {}", args.input_dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "csv"))
        .collect();
    entries.sort();
    if entries.is_empty() {
        bail!("no .csv line files in {}", args.input_dir.display());
    }

    for path in entries {
        let file = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        match read_line(&path) {
            Ok((tau, samples)) => lines.push(LineInput { tau, file, samples }),
            Err(err) => {
                eprintln!("trigfit: warning: dropping line file {file}: {err:#}");
                dropped.push(SeqDroppedLine {
                    file,
                    reason: format!("{err:#}"),
                });
            }
        }
    }
    if lines.is_empty() {
        bail!("every line file was dropped");
    }
    lines.sort_by(|a, b| a.tau.partial_cmp(&b.tau).expect("finite tau"));

    // independent per-line fits, parallel across a capped worker pool
    let workers = threads::worker_count();
    let outcomes = threads::parallel_map(&lines, workers, |line| {
        levinson::fit(&line.samples, noise, None)
    });
    let fits = LineFits::from_outcomes(outcomes);

    let taus: Vec<f64> = lines.iter().map(|l| l.tau).collect();
    let sets: Vec<SampleSet1D> = lines.iter().map(|l| l.samples.clone()).collect();
    let grid = LineSampleGrid::new(taus, sets, targets.clone())?;

    let cross_degree = args.cross_degree.unwrap_or_else(|| fits.default_cross_degree());
    let grid_size = args.grid.unwrap_or_else(|| fits.default_grid_size());
    let result = recover_cross(&grid, &fits, cross_degree, grid_size)?;

    for &idx in result.dropped() {
        let reason = match &fits.outcomes()[idx] {
            Err(e) => format!("fit failed: {e}"),
            Ok(_) => "dropped".to_string(),
        };
        eprintln!(
            "trigfit: warning: line {} dropped from cross recovery: {reason}",
            lines[idx].file
        );
        dropped.push(SeqDroppedLine {
            file: lines[idx].file.clone(),
            reason,
        });
    }

    let mut target_reports = Vec::new();
    for (t, signal) in result.recovered_lines().iter().enumerate() {
        let name = format!("target_{t}.csv");
        csvio::write_text(&args.out_dir.join(&name), &csvio::format_line_grid(signal))?;
        target_reports.push(SeqTargetReport {
            tau: targets[t],
            output: name,
        });
    }

    let line_reports: Vec<SeqLineReport> = lines
        .iter()
        .zip(fits.outcomes())
        .filter_map(|(line, outcome)| {
            outcome.as_ref().ok().map(|fit| SeqLineReport {
                tau: line.tau,
                file: line.file.clone(),
                degree: fit.degree(),
                converged: fit.converged(),
                achieved_eps: fit.achieved_eps(),
            })
        })
        .collect();

    let summary = SeqReport {
        epsilon: args.epsilon,
        cross_degree,
        grid: grid_size,
        lines: line_reports,
        dropped,
        targets: target_reports,
    };
    let summary_path = args
        .out_json
        .clone()
        .unwrap_or_else(|| args.out_dir.join("summary.json"));
    write_json(&summary_path, &summary)?;
    Ok(0)
}

/// Line position from the file stem, samples from the `u,x,y` rows.
fn read_line(path: &std::path::Path) -> Result<(f64, SampleSet1D)> {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tau: f64 = stem
        .parse()
        .map_err(|_| anyhow::anyhow!("file stem '{stem}' is not a line position"))?;
    if !(0.0..1.0).contains(&tau) {
        bail!("line position {tau} outside [0, 1)");
    }
    let rows = csvio::read_line_samples(path)?;
    let rows = super::sort_rows(rows);
    let points: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let values: Vec<trigfit_core::Complex64> = rows.iter().map(|r| r.1).collect();
    let samples = SampleSet1D::with_voronoi_weights(points, values)?;
    Ok((tau, samples))
}
