//! Line-type 2-D recovery: data given on a subset of lines is fitted line by
//! line in 1-D, then the missing lines are recovered coordinate-wise. All
//! cross-line solves share one Toeplitz matrix (the line geometry does not
//! depend on the in-line coordinate), so the matrix is factorized once in
//! Gohberg-Semencul form and applied to one right-hand side per grid column.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;
use crate::fft::next_pow2;
use crate::levinson::{self, FitResult};
use crate::oracle::{spectrum, DenseSystem};
use crate::sampling::{voronoi_weights, NoiseSpec, SampleSet1D};
use crate::toeplitz::{gs_factorize, ToeplitzSystem};

/// Samples along a set of lines: for every line position `tau_j` one 1-D
/// sample set in the `u` coordinate, plus the positions where recovery is
/// requested.
#[derive(Debug, Clone)]
pub struct LineSampleGrid {
    line_positions: Vec<f64>,
    per_line_samples: Vec<SampleSet1D>,
    target_lines: Vec<f64>,
}

impl LineSampleGrid {
    pub fn new(
        line_positions: Vec<f64>,
        per_line_samples: Vec<SampleSet1D>,
        target_lines: Vec<f64>,
    ) -> Result<Self, Error> {
        if line_positions.is_empty() {
            return Err(Error::DegenerateSet);
        }
        if line_positions.len() != per_line_samples.len() {
            return Err(Error::LengthMismatch {
                points: line_positions.len(),
                other: per_line_samples.len(),
            });
        }
        for (index, &tau) in line_positions.iter().enumerate() {
            if !(0.0..1.0).contains(&tau) {
                return Err(Error::OutOfDomain { index, value: tau });
            }
            if index > 0 && tau <= line_positions[index - 1] {
                return Err(Error::NonMonotonePoints { index });
            }
        }
        for (index, &tau) in target_lines.iter().enumerate() {
            if !(0.0..1.0).contains(&tau) {
                return Err(Error::OutOfDomain { index, value: tau });
            }
        }
        Ok(Self {
            line_positions,
            per_line_samples,
            target_lines,
        })
    }

    pub fn line_positions(&self) -> &[f64] {
        &self.line_positions
    }

    pub fn per_line_samples(&self) -> &[SampleSet1D] {
        &self.per_line_samples
    }

    pub fn target_lines(&self) -> &[f64] {
        &self.target_lines
    }
}

/// Per-line fit outcomes; failed lines are kept with their error so callers
/// can report them as dropped instead of aborting the whole sequence.
#[derive(Debug, Clone)]
pub struct LineFits {
    outcomes: Vec<Result<FitResult, Error>>,
}

impl LineFits {
    pub fn from_outcomes(outcomes: Vec<Result<FitResult, Error>>) -> Self {
        Self { outcomes }
    }

    pub fn outcomes(&self) -> &[Result<FitResult, Error>] {
        &self.outcomes
    }

    /// Indices of the lines that fitted successfully.
    pub fn usable_indices(&self) -> Vec<usize> {
        self.outcomes
            .iter()
            .enumerate()
            .filter_map(|(i, o)| o.is_ok().then_some(i))
            .collect()
    }

    /// Largest degree among the usable fits.
    pub fn max_degree(&self) -> Option<usize> {
        self.outcomes
            .iter()
            .filter_map(|o| o.as_ref().ok().map(|f| f.degree()))
            .max()
    }

    /// Default cross degree: `floor((usable - 1) / 2)` capped at the largest
    /// per-line degree.
    pub fn default_cross_degree(&self) -> usize {
        let usable = self.usable_indices().len();
        if usable == 0 {
            return 0;
        }
        ((usable - 1) / 2).min(self.max_degree().unwrap_or(0))
    }

    /// Default evaluation grid: next power of two at or above four times the
    /// largest per-line degree plus one.
    pub fn default_grid_size(&self) -> usize {
        next_pow2(4 * self.max_degree().unwrap_or(0) + 1)
    }
}

/// Fits every line independently; failures are collected, not fatal.
pub fn fit_lines(grid: &LineSampleGrid, noise: NoiseSpec) -> LineFits {
    LineFits {
        outcomes: grid
            .per_line_samples
            .iter()
            .map(|samples| levinson::fit(samples, noise, None))
            .collect(),
    }
}

/// Recovered sequence: fits of the usable lines, and for every target line
/// the recovered signal on the shared regular `u` grid.
#[derive(Debug, Clone)]
pub struct SequenceResult {
    usable_positions: Vec<f64>,
    per_line_fits: Vec<FitResult>,
    dropped: Vec<usize>,
    cross_degree: usize,
    grid_size: usize,
    recovered_lines: Vec<Vec<Complex64>>,
}

impl SequenceResult {
    /// Line positions that entered the cross solve.
    pub fn usable_positions(&self) -> &[f64] {
        &self.usable_positions
    }

    /// Fits aligned with [`Self::usable_positions`].
    pub fn per_line_fits(&self) -> &[FitResult] {
        &self.per_line_fits
    }

    /// Indices of the dropped input lines.
    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    pub fn cross_degree(&self) -> usize {
        self.cross_degree
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// One signal per target line, evaluated at `u = j / grid_size`.
    pub fn recovered_lines(&self) -> &[Vec<Complex64>] {
        &self.recovered_lines
    }
}

/// Recovers the target lines from the per-line fits. Builds one Toeplitz
/// system from the usable line positions (Voronoi weights on the tau
/// circle), factorizes it once, then solves one system per `u` grid column
/// and evaluates the resulting tau polynomials at every target.
pub fn recover_cross(
    grid: &LineSampleGrid,
    fits: &LineFits,
    cross_degree: usize,
    grid_size: usize,
) -> Result<SequenceResult, Error> {
    let usable = fits.usable_indices();
    let dropped: Vec<usize> = (0..grid.line_positions.len())
        .filter(|i| !usable.contains(i))
        .collect();
    if 2 * cross_degree + 1 > usable.len() {
        return Err(Error::DegreeTooLarge {
            degree: cross_degree,
            max: if usable.is_empty() {
                0
            } else {
                (usable.len() - 1) / 2
            },
        });
    }
    let positions: Vec<f64> = usable.iter().map(|&i| grid.line_positions[i]).collect();
    let per_line_fits: Vec<FitResult> = usable
        .iter()
        .map(|&i| fits.outcomes[i].as_ref().unwrap().clone())
        .collect();

    // resample every usable line onto the common regular u grid
    let mut line_values: Vec<Vec<Complex64>> = Vec::with_capacity(per_line_fits.len());
    for fit in &per_line_fits {
        line_values.push(levinson::evaluate_on_grid(fit.coefficients(), grid_size)?);
    }

    // one shared system for all grid columns
    let weights = voronoi_weights(&positions)?;
    let tau_samples = SampleSet1D::new(
        positions.clone(),
        alloc::vec![Complex64::new(0.0, 0.0); positions.len()],
        weights.clone(),
    )?;
    let mut shared = ToeplitzSystem::new(&tau_samples);
    let factor = gs_factorize(&mut shared, cross_degree)?;

    let m = cross_degree as i64;
    let mut recovered =
        alloc::vec![alloc::vec![Complex64::new(0.0, 0.0); grid_size]; grid.target_lines.len()];
    let mut column_rhs = Vec::with_capacity(2 * cross_degree + 1);
    for col in 0..grid_size {
        // normal-equation rhs: the row paired with tau frequency k holds
        // sum_j w_j p_j(u) e^{-2 pi i k tau_j}, |k| <= cross degree
        column_rhs.clear();
        for k in -m..=m {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &tau) in positions.iter().enumerate() {
                acc += line_values[j][col]
                    * weights[j]
                    * crate::fft::unit_phase(-k as f64 * tau);
            }
            column_rhs.push(acc);
        }
        let coeffs = factor.apply(&column_rhs)?;
        for (t, &tau) in grid.target_lines.iter().enumerate() {
            recovered[t][col] = levinson::evaluate_at(&coeffs, tau);
        }
    }

    Ok(SequenceResult {
        usable_positions: positions,
        per_line_fits,
        dropped,
        cross_degree,
        grid_size,
        recovered_lines: recovered,
    })
}

/// Frame bound estimate for degree-`M` tensor polynomials on the grid: the
/// product of the per-coordinate spectral extremes of the weighted Gram
/// matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Product of the per-coordinate dense-spectrum bounds: the weighted sampled
/// energy of any `p` of degree `M` in both coordinates lies within
/// `[lower, upper]` times `||p||^2`.
pub fn frame_bounds_check(grid: &LineSampleGrid, degree: usize) -> Result<FrameBounds, Error> {
    let weights = voronoi_weights(&grid.line_positions)?;
    let tau_spec = spectrum(&DenseSystem::from_parts(
        &grid.line_positions,
        &weights,
        degree,
    )?);
    let mut u_min = f64::INFINITY;
    let mut u_max = f64::NEG_INFINITY;
    for samples in &grid.per_line_samples {
        let spec = spectrum(&DenseSystem::from_parts(
            samples.points(),
            samples.weights(),
            degree,
        )?);
        u_min = u_min.min(spec.lambda_min);
        u_max = u_max.max(spec.lambda_max);
    }
    Ok(FrameBounds {
        lower: tau_spec.lambda_min * u_min,
        upper: tau_spec.lambda_max * u_max,
    })
}

/// Weighted sampled energy ratio of a tensor polynomial with coefficients
/// `c[(2M+1) * (m + M) + (k + M)]` for tau frequency `m` and u frequency
/// `k`: `sum_j w_j sum_k w_{j,k} |p(tau_j, u_{j,k})|^2 / ||c||^2`.
pub fn sampled_energy_ratio(
    grid: &LineSampleGrid,
    coeffs: &[Complex64],
    degree: usize,
) -> Result<f64, Error> {
    let n = 2 * degree + 1;
    if coeffs.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            got: coeffs.len(),
        });
    }
    let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Ok(0.0);
    }
    let tau_weights = voronoi_weights(&grid.line_positions)?;
    let mut energy = 0.0;
    for (j, samples) in grid.per_line_samples.iter().enumerate() {
        let tau = grid.line_positions[j];
        // coefficients of u -> p(tau_j, u)
        let u_coeffs: Vec<Complex64> = (0..n)
            .map(|kc| {
                (0..n)
                    .map(|mc| {
                        coeffs[mc * n + kc]
                            * crate::fft::unit_phase((mc as f64 - degree as f64) * tau)
                    })
                    .sum()
            })
            .collect();
        let line_energy: f64 = samples
            .points()
            .iter()
            .zip(samples.weights())
            .map(|(&u, &w)| levinson::evaluate_at(&u_coeffs, u).norm_sqr() * w)
            .sum();
        energy += tau_weights[j] * line_energy;
    }
    Ok(energy / norm_sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fft::unit_phase;

    fn jittered(r: usize, seed: u64) -> Vec<f64> {
        // deterministic low-discrepancy jitter, no RNG needed here
        (0..r)
            .map(|j| {
                let frac = ((j as u64 * 2654435761 + seed) % 1000) as f64 / 1000.0;
                (j as f64 + 0.3 + 0.4 * frac) / r as f64
            })
            .collect()
    }

    fn grid_for_poly(
        tau_count: usize,
        u_count: usize,
        value: impl Fn(f64, f64) -> Complex64,
        targets: Vec<f64>,
    ) -> LineSampleGrid {
        let taus = jittered(tau_count, 11);
        let sets: Vec<SampleSet1D> = taus
            .iter()
            .enumerate()
            .map(|(j, &tau)| {
                let us = jittered(u_count, 100 + j as u64);
                let values: Vec<Complex64> = us.iter().map(|&u| value(tau, u)).collect();
                SampleSet1D::with_voronoi_weights(us, values).unwrap()
            })
            .collect();
        LineSampleGrid::new(taus, sets, targets).unwrap()
    }

    #[test]
    fn identical_lines_give_identical_fits() {
        let grid = grid_for_poly(5, 13, |_, u| unit_phase(u) * 2.0, alloc::vec![]);
        let fits = fit_lines(&grid, NoiseSpec::new(1e-8).unwrap());
        let firsts: Vec<&FitResult> = fits
            .outcomes()
            .iter()
            .map(|o| o.as_ref().unwrap())
            .collect();
        for f in &firsts {
            assert_eq!(f.degree(), firsts[0].degree());
            for (a, b) in f.coefficients().iter().zip(firsts[0].coefficients()) {
                assert!((a - b).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn separable_product_line_fits() {
        // p(tau, u) = e^{2 pi i tau} e^{2 pi i u}: every line fit is a single
        // harmonic with coefficient e^{2 pi i tau_j}
        let grid = grid_for_poly(6, 13, |tau, u| unit_phase(tau) * unit_phase(u), alloc::vec![]);
        let fits = fit_lines(&grid, NoiseSpec::new(1e-8).unwrap());
        for (j, outcome) in fits.outcomes().iter().enumerate() {
            let fit = outcome.as_ref().unwrap();
            assert_eq!(fit.degree(), 1);
            let expect = unit_phase(grid.line_positions()[j]);
            assert!((fit.coefficient(1) - expect).norm() < 1e-8);
        }
    }

    #[test]
    fn failed_line_is_dropped_not_fatal() {
        let taus = alloc::vec![0.1, 0.25, 0.4, 0.55, 0.7, 0.85];
        let mut sets = Vec::new();
        let mut outcomes = Vec::new();
        for (j, &tau) in taus.iter().enumerate() {
            let us = jittered(11, j as u64);
            let values: Vec<Complex64> =
                us.iter().map(|&u| unit_phase(u) * unit_phase(tau)).collect();
            let set = SampleSet1D::with_voronoi_weights(us, values).unwrap();
            outcomes.push(if j == 1 {
                Err(Error::Breakdown {
                    level: 3,
                    history: alloc::vec![],
                })
            } else {
                crate::levinson::fit(&set, NoiseSpec::new(1e-8).unwrap(), None)
            });
            sets.push(set);
        }
        let targets = alloc::vec![0.5];
        let grid = LineSampleGrid::new(taus.clone(), sets, targets).unwrap();
        let fits = LineFits::from_outcomes(outcomes);
        assert_eq!(fits.usable_indices(), alloc::vec![0, 2, 3, 4, 5]);
        let result = recover_cross(&grid, &fits, 1, 16).unwrap();
        assert_eq!(result.dropped(), &[1]);
        assert_eq!(result.usable_positions().len(), 5);
        // recovery still exact: p is separable with degree 1 in tau
        for (col, got) in result.recovered_lines()[0].iter().enumerate() {
            let expect = unit_phase(col as f64 / 16.0) * unit_phase(0.5);
            assert!((got - expect).norm() < 1e-7);
        }
    }

    #[test]
    fn cross_recovery_reproduces_separable_product() {
        let degree = 1;
        let targets = alloc::vec![0.05, 0.52, 0.9];
        let q = |tau: f64| unit_phase(tau) * 0.8 + 1.5; // degree-1 tau polynomial
        let grid = grid_for_poly(9, 13, |tau, u| q(tau) * unit_phase(u), targets.clone());
        let fits = fit_lines(&grid, NoiseSpec::new(1e-8).unwrap());
        let result = recover_cross(&grid, &fits, degree, 16).unwrap();
        assert!(result.dropped().is_empty());
        for (t, &tau) in targets.iter().enumerate() {
            for (col, got) in result.recovered_lines()[t].iter().enumerate() {
                let u = col as f64 / 16.0;
                let expect = q(tau) * unit_phase(u);
                assert!((got - expect).norm() < 1e-7, "target {tau}, u {u}");
            }
        }
    }

    #[test]
    fn targets_on_known_lines_reproduce_line_fits() {
        let targets = alloc::vec![];
        let grid0 = grid_for_poly(7, 13, |tau, u| unit_phase(u + 2.0 * tau), targets);
        let taus = grid0.line_positions().to_vec();
        let grid = LineSampleGrid::new(
            taus.clone(),
            grid0.per_line_samples().to_vec(),
            alloc::vec![taus[2], taus[5]],
        )
        .unwrap();
        let fits = fit_lines(&grid, NoiseSpec::new(1e-8).unwrap());
        let result = recover_cross(&grid, &fits, 2, 16).unwrap();
        for (t, &line_idx) in [2usize, 5].iter().enumerate() {
            let direct =
                levinson::evaluate_on_grid(result.per_line_fits()[line_idx].coefficients(), 16)
                    .unwrap();
            for (a, b) in result.recovered_lines()[t].iter().zip(&direct) {
                assert!((a - b).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn constant_column_recovers_weighted_mean() {
        let targets = alloc::vec![0.33];
        let grid = grid_for_poly(5, 9, |_, _| Complex64::new(2.0, -1.0), targets);
        let fits = fit_lines(&grid, NoiseSpec::new(1e-8).unwrap());
        let result = recover_cross(&grid, &fits, 0, 16).unwrap();
        for v in &result.recovered_lines()[0] {
            assert!((v - Complex64::new(2.0, -1.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn shared_factor_matches_fresh_levinson_per_column() {
        // solving one u-column with a fresh recursion must agree with the
        // shared-factor path used for all columns
        let cross_degree = 2;
        let target = 0.37;
        let grid = grid_for_poly(
            11,
            13,
            |tau, u| unit_phase(2.0 * tau + u) + unit_phase(tau) * 0.4,
            alloc::vec![target],
        );
        let fits = fit_lines(&grid, NoiseSpec::new(1e-8).unwrap());
        let grid_size = 8;
        let result = recover_cross(&grid, &fits, cross_degree, grid_size).unwrap();

        for col in 0..grid_size {
            let u = col as f64 / grid_size as f64;
            // fresh per-column solve: tau samples carrying this column
            let column_values: Vec<Complex64> = fits
                .outcomes()
                .iter()
                .map(|o| {
                    crate::levinson::evaluate_at(o.as_ref().unwrap().coefficients(), u)
                })
                .collect();
            let tau_samples = SampleSet1D::with_voronoi_weights(
                grid.line_positions().to_vec(),
                column_values,
            )
            .unwrap();
            let coeffs =
                crate::levinson::solve_fixed_degree(&tau_samples, cross_degree).unwrap();
            let fresh = crate::levinson::evaluate_at(&coeffs, target);
            let shared = result.recovered_lines()[0][col];
            assert!(
                (fresh - shared).norm() <= 1e-8,
                "column {col}: {:?} vs {:?}",
                fresh,
                shared
            );
        }
    }

    #[test]
    fn too_few_lines_for_cross_degree() {
        let grid = grid_for_poly(3, 9, |_, u| unit_phase(u), alloc::vec![0.5]);
        let fits = fit_lines(&grid, NoiseSpec::new(1e-8).unwrap());
        assert!(matches!(
            recover_cross(&grid, &fits, 2, 16),
            Err(Error::DegreeTooLarge { degree: 2, max: 1 })
        ));
    }

    #[test]
    fn frame_ratio_uniform_case_is_exact() {
        // uniform lines and uniform per-line points with uniform weights
        let taus: Vec<f64> = (0..7).map(|j| j as f64 / 7.0).collect();
        let sets: Vec<SampleSet1D> = (0..7)
            .map(|_| {
                let us: Vec<f64> = (0..9).map(|k| k as f64 / 9.0).collect();
                SampleSet1D::with_uniform_weights(
                    us,
                    alloc::vec![Complex64::new(0.0, 0.0); 9],
                )
                .unwrap()
            })
            .collect();
        let grid = LineSampleGrid::new(taus, sets, alloc::vec![]).unwrap();
        let bounds = frame_bounds_check(&grid, 2).unwrap();
        assert!((bounds.lower - 1.0).abs() < 1e-10);
        assert!((bounds.upper - 1.0).abs() < 1e-10);

        let mut coeffs = alloc::vec![Complex64::new(0.0, 0.0); 25];
        coeffs[7] = Complex64::new(0.5, -1.0);
        coeffs[13] = Complex64::new(-0.2, 0.4);
        let ratio = sampled_energy_ratio(&grid, &coeffs, 2).unwrap();
        assert!((ratio - 1.0).abs() < 1e-10);

        let zero = alloc::vec![Complex64::new(0.0, 0.0); 25];
        assert_eq!(sampled_energy_ratio(&grid, &zero, 2).unwrap(), 0.0);
    }

    #[test]
    fn frame_ratio_within_bounds_on_nonuniform_grid() {
        let grid = grid_for_poly(11, 13, |_, _| Complex64::new(0.0, 0.0), alloc::vec![]);
        let degree = 2;
        let bounds = frame_bounds_check(&grid, degree).unwrap();
        let n = 2 * degree + 1;
        let coeffs: Vec<Complex64> = (0..n * n)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.73).cos()))
            .collect();
        let ratio = sampled_energy_ratio(&grid, &coeffs, degree).unwrap();
        assert!(ratio >= bounds.lower * (1.0 - 1e-10));
        assert!(ratio <= bounds.upper * (1.0 + 1e-10));
    }
}
