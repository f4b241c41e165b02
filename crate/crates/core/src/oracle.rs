//! Slow, independent dense reference implementations: weighted Vandermonde
//! least squares, spectra of the Gram matrix, analytic condition bounds and
//! the Frobenius preconditioning diagnostic.
//!
//! Everything here is deliberately written the obvious way (explicit matrix
//! assembly, pivoted elimination, cyclic Jacobi sweeps) so it can serve as
//! the trusted side of every cross-check against the fast recursion. Dense
//! solves are capped at degree [`MAX_ORACLE_DEGREE`].

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;
use crate::fft::unit_phase;
use crate::sampling::SampleSet1D;

/// Largest degree the dense paths accept.
pub const MAX_ORACLE_DEGREE: usize = 64;

/// Dense weighted Vandermonde system at a fixed degree: row `j`, column `k`
/// holds `e^{2 pi i k x_j}` for `k = -M..M` (unweighted; weights kept as a
/// separate diagonal).
#[derive(Debug, Clone)]
pub struct DenseSystem {
    vandermonde: Vec<Complex64>, // row-major, r x (2M+1)
    weights: Vec<f64>,
    degree: usize,
    rows: usize,
}

impl DenseSystem {
    pub fn new(samples: &SampleSet1D, degree: usize) -> Result<Self, Error> {
        Self::from_parts(samples.points(), samples.weights(), degree)
    }

    pub fn from_parts(points: &[f64], weights: &[f64], degree: usize) -> Result<Self, Error> {
        let r = points.len();
        let cols = 2 * degree + 1;
        if cols > r {
            return Err(Error::DegreeTooLarge {
                degree,
                max: (r.max(1) - 1) / 2,
            });
        }
        if degree > MAX_ORACLE_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                max: MAX_ORACLE_DEGREE,
            });
        }
        let mut vandermonde = Vec::with_capacity(r * cols);
        for &x in points {
            for col in 0..cols {
                let k = col as f64 - degree as f64;
                vandermonde.push(unit_phase(k * x));
            }
        }
        Ok(Self {
            vandermonde,
            weights: weights.to_vec(),
            degree,
            rows: r,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        2 * self.degree + 1
    }

    fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.vandermonde[row * self.cols() + col]
    }

    /// Gram matrix `V* W V` (row-major, `(2M+1)^2`), entrywise equal to the
    /// Toeplitz moment matrix.
    pub fn gram(&self) -> Vec<Complex64> {
        let n = self.cols();
        let mut gram = vec![Complex64::new(0.0, 0.0); n * n];
        for row in 0..self.rows {
            let w = self.weights[row];
            for k in 0..n {
                let vk = self.entry(row, k).conj() * w;
                for l in 0..n {
                    gram[k * n + l] += vk * self.entry(row, l);
                }
            }
        }
        gram
    }

    /// Weighted right-hand side `V* W s`.
    pub fn weighted_rhs(&self, values: &[Complex64]) -> Result<Vec<Complex64>, Error> {
        if values.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: values.len(),
            });
        }
        let n = self.cols();
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        for (row, value) in values.iter().enumerate() {
            let ws = value * self.weights[row];
            for (k, slot) in rhs.iter_mut().enumerate() {
                *slot += self.entry(row, k).conj() * ws;
            }
        }
        Ok(rhs)
    }

    /// `p(x_j)` for every sample point, given coefficients `c_{-M}..c_M`.
    pub fn evaluate(&self, coeffs: &[Complex64]) -> Result<Vec<Complex64>, Error> {
        let n = self.cols();
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: coeffs.len(),
            });
        }
        Ok((0..self.rows)
            .map(|row| {
                (0..n)
                    .map(|k| self.entry(row, k) * coeffs[k])
                    .sum::<Complex64>()
            })
            .collect())
    }
}

/// Weighted least-squares solution of `W V c = W s` through the normal
/// equations with a pivoted dense factorization. The normative test oracle.
pub fn dense_lsq(system: &DenseSystem, values: &[Complex64]) -> Result<Vec<Complex64>, Error> {
    let gram = system.gram();
    let rhs = system.weighted_rhs(values)?;
    lu_solve(gram, &rhs)
}

/// Solution of the dense Toeplitz system `T c = b` for an arbitrary right
/// hand side (test helper for the multi-solve path).
pub fn dense_toeplitz_solve(system: &DenseSystem, b: &[Complex64]) -> Result<Vec<Complex64>, Error> {
    if b.len() != system.cols() {
        return Err(Error::DimensionMismatch {
            expected: system.cols(),
            got: b.len(),
        });
    }
    lu_solve(system.gram(), b)
}

/// Eigenvalue extremes of the Gram matrix and their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub cond: f64,
}

/// Dense spectrum of `T_M` via cyclic Jacobi sweeps.
pub fn spectrum(system: &DenseSystem) -> Spectrum {
    let eigs = hermitian_eigenvalues(system.gram(), system.cols());
    let mut lambda_min = f64::INFINITY;
    let mut lambda_max = f64::NEG_INFINITY;
    for &l in &eigs {
        lambda_min = lambda_min.min(l);
        lambda_max = lambda_max.max(l);
    }
    Spectrum {
        lambda_min,
        lambda_max,
        cond: lambda_max / lambda_min,
    }
}

/// Mesh-norm condition bound `((1 + gamma) / (1 - gamma))^2`, valid only for
/// `gamma < 1 / (2M)`; `None` when the hypothesis fails.
pub fn condition_bound_1d(gamma: f64, degree: usize) -> Option<f64> {
    if gamma < 0.0 || (degree > 0 && gamma >= 1.0 / (2.0 * degree as f64)) || gamma >= 1.0 {
        return None;
    }
    let ratio = (1.0 + gamma) / (1.0 - gamma);
    Some(ratio * ratio)
}

/// Product bound for line-type 2-D sampling with per-coordinate mesh norms
/// `delta_1`, `delta_2`, both required below `1 / (2M)`.
pub fn condition_bound_line(delta1: f64, delta2: f64, degree: usize) -> Option<f64> {
    Some(condition_bound_1d(delta1, degree)? * condition_bound_1d(delta2, degree)?)
}

/// `||I - T_M||_F` for the given weights; a diagnostic for comparing weight
/// choices, not an optimizer.
pub fn frobenius_objective(points: &[f64], weights: &[f64], degree: usize) -> Result<f64, Error> {
    let system = DenseSystem::from_parts(points, weights, degree)?;
    let gram = system.gram();
    let n = system.cols();
    let mut sum = 0.0;
    for k in 0..n {
        for l in 0..n {
            let mut d = gram[k * n + l];
            if k == l {
                d -= 1.0;
            }
            sum += d.norm_sqr();
        }
    }
    Ok(libm::sqrt(sum))
}

/// LU with partial pivoting on a row-major square matrix; consumes the
/// matrix buffer.
fn lu_solve(mut a: Vec<Complex64>, b: &[Complex64]) -> Result<Vec<Complex64>, Error> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let scale = a.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let (pivot_row, pivot_mag) = (col..n)
            .map(|row| (row, a[row * n + col].norm()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pivot_mag <= scale * 1e-14 {
            return Err(Error::RankDeficient);
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            perm.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            a[row * n + col] = factor;
            for j in col + 1..n {
                let sub = factor * a[col * n + j];
                a[row * n + j] -= sub;
            }
        }
    }
    // forward substitution on the permuted rhs
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for row in 0..n {
        let mut acc = b[perm[row]];
        for j in 0..row {
            acc -= a[row * n + j] * y[j];
        }
        y[row] = acc;
    }
    // back substitution
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = y[row];
        for j in row + 1..n {
            acc -= a[row * n + j] * x[j];
        }
        x[row] = acc / a[row * n + row];
    }
    Ok(x)
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
fn hermitian_eigenvalues(mut a: Vec<Complex64>, n: usize) -> Vec<f64> {
    debug_assert_eq!(a.len(), n * n);
    if n == 1 {
        return vec![a[0].re];
    }
    let fro: f64 = libm::sqrt(a.iter().map(|z| z.norm_sqr()).sum::<f64>());
    let tol = fro * 1e-15;
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if libm::sqrt(off) <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let g = apq.norm();
                if g <= tol / n as f64 {
                    continue;
                }
                let phase = apq / g; // e^{i phi}
                let d = a[p * n + p].re - a[q * n + q].re;
                let t = if d == 0.0 {
                    1.0
                } else {
                    let sgn = if d > 0.0 { 1.0 } else { -1.0 };
                    2.0 * g / (d + sgn * libm::sqrt(d * d + 4.0 * g * g))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                // columns: col_p' = c col_p + s conj(phase) col_q,
                //          col_q' = -s phase col_p + c col_q
                for row in 0..n {
                    let vp = a[row * n + p];
                    let vq = a[row * n + q];
                    a[row * n + p] = vp * c + vq * s * phase.conj();
                    a[row * n + q] = vp * (-s) * phase + vq * c;
                }
                // rows: row_p' = c row_p + s phase row_q,
                //       row_q' = -s conj(phase) row_p + c row_q
                for col in 0..n {
                    let vp = a[p * n + col];
                    let vq = a[q * n + col];
                    a[p * n + col] = vp * c + vq * s * phase;
                    a[q * n + col] = vp * (-s) * phase.conj() + vq * c;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i].re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::voronoi_weights;

    fn uniform_samples(r: usize) -> SampleSet1D {
        let points: Vec<f64> = (0..r).map(|j| j as f64 / r as f64).collect();
        let values: Vec<Complex64> = (0..r)
            .map(|j| Complex64::new((j as f64 * 0.31).sin(), (j as f64 * 0.17).cos()))
            .collect();
        SampleSet1D::with_uniform_weights(points, values).unwrap()
    }

    #[test]
    fn uniform_gram_is_identity() {
        let samples = uniform_samples(11);
        let system = DenseSystem::new(&samples, 4).unwrap();
        let gram = system.gram();
        let n = 9;
        for k in 0..n {
            for l in 0..n {
                let expect = if k == l { 1.0 } else { 0.0 };
                assert!((gram[k * n + l] - expect).norm() < 1e-13);
            }
        }
        let spec = spectrum(&system);
        assert!((spec.lambda_min - 1.0).abs() < 1e-12);
        assert!((spec.lambda_max - 1.0).abs() < 1e-12);
        assert!((spec.cond - 1.0).abs() < 1e-11);
    }

    #[test]
    fn uniform_lsq_recovers_fourier_coefficients() {
        let samples = uniform_samples(11);
        let system = DenseSystem::new(&samples, 5).unwrap();
        let c = dense_lsq(&system, samples.values()).unwrap();
        // unitary case: coefficients are plain discrete Fourier sums
        for (col, ck) in c.iter().enumerate() {
            let k = col as f64 - 5.0;
            let direct: Complex64 = samples
                .points()
                .iter()
                .zip(samples.values())
                .map(|(&x, &s)| s * unit_phase(-k * x) / 11.0)
                .sum();
            assert!((ck - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn interpolation_residual_vanishes() {
        let points = alloc::vec![0.02, 0.2, 0.45, 0.6, 0.83];
        let weights = voronoi_weights(&points).unwrap();
        let values: Vec<Complex64> = (0..5).map(|j| Complex64::new(j as f64, -1.0)).collect();
        let samples = SampleSet1D::new(points, values, weights).unwrap();
        let system = DenseSystem::new(&samples, 2).unwrap();
        let c = dense_lsq(&system, samples.values()).unwrap();
        let fitted = system.evaluate(&c).unwrap();
        for (f, s) in fitted.iter().zip(samples.values()) {
            assert!((f - s).norm() < 1e-9);
        }
    }

    #[test]
    fn lsq_residual_is_orthogonal_to_fit() {
        let points = alloc::vec![0.05, 0.1, 0.32, 0.4, 0.55, 0.61, 0.8, 0.93];
        let weights = voronoi_weights(&points).unwrap();
        let values: Vec<Complex64> = (0..8)
            .map(|j| Complex64::new((j as f64).sin(), (2.0 * j as f64).cos()))
            .collect();
        let samples = SampleSet1D::new(points, values, weights).unwrap();
        let system = DenseSystem::new(&samples, 2).unwrap();
        let c = dense_lsq(&system, samples.values()).unwrap();
        let fitted = system.evaluate(&c).unwrap();
        let mut inner = Complex64::new(0.0, 0.0);
        let mut sigma = 0.0;
        for ((f, s), &w) in fitted.iter().zip(samples.values()).zip(samples.weights()) {
            inner += (f - s) * f.conj() * w;
            sigma += s.norm_sqr() * w;
        }
        assert!(inner.norm() <= 1e-10 * sigma);
    }

    #[test]
    fn condition_bounds() {
        let b = condition_bound_1d(0.01, 10).unwrap();
        assert!((b - (1.01f64 / 0.99).powi(2)).abs() < 1e-12);
        assert_eq!(condition_bound_1d(0.05, 10), None);
        assert_eq!(condition_bound_1d(0.0, 7), Some(1.0));

        let bl = condition_bound_line(0.01, 0.02, 10).unwrap();
        assert!((bl - ((1.01 * 1.02) / (0.99f64 * 0.98)).powi(2)).abs() < 1e-12);
        assert_eq!(condition_bound_line(0.01, 0.05, 10), None);
        assert_eq!(condition_bound_line(0.0, 0.0, 3), Some(1.0));
    }

    #[test]
    fn frobenius_objective_cases() {
        let points: Vec<f64> = (0..9).map(|j| j as f64 / 9.0).collect();
        let w = alloc::vec![1.0 / 9.0; 9];
        assert!(frobenius_objective(&points, &w, 3).unwrap() < 1e-12);

        // M = 0 reduces to |1 - sum w|
        let obj = frobenius_objective(&[0.1, 0.4, 0.9], &[0.2, 0.2, 0.2], 0).unwrap();
        assert!((obj - 0.4).abs() < 1e-14);

        // clustered points: Voronoi weights beat scaled unit weights
        let clustered = alloc::vec![0.0, 0.01, 0.02, 0.03, 0.04, 0.3, 0.55, 0.8, 0.9];
        let vor = voronoi_weights(&clustered).unwrap();
        let unit = alloc::vec![1.0 / 9.0; 9];
        let via_voronoi = frobenius_objective(&clustered, &vor, 2).unwrap();
        let via_unit = frobenius_objective(&clustered, &unit, 2).unwrap();
        assert!(via_voronoi < via_unit);
    }

    #[test]
    fn jacobi_matches_analytic_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let a = alloc::vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        ];
        let mut eigs = hermitian_eigenvalues(a, 2);
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        assert!((eigs[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_preserves_trace_on_gram() {
        let points = alloc::vec![0.0, 0.07, 0.21, 0.33, 0.46, 0.52, 0.68, 0.79, 0.95];
        let weights = voronoi_weights(&points).unwrap();
        let system = DenseSystem::from_parts(&points, &weights, 3).unwrap();
        let gram = system.gram();
        let n = 7;
        let trace: f64 = (0..n).map(|i| gram[i * n + i].re).sum();
        let eigs = hermitian_eigenvalues(gram, n);
        let sum: f64 = eigs.iter().sum();
        assert!((trace - sum).abs() < 1e-10 * trace.abs());
        assert!(eigs.iter().all(|&l| l > 0.0));
    }

    #[test]
    fn oracle_refuses_past_degree_cap() {
        let points: Vec<f64> = (0..400).map(|j| j as f64 / 400.0).collect();
        let w = alloc::vec![1.0 / 400.0; 400];
        assert!(matches!(
            DenseSystem::from_parts(&points, &w, 65),
            Err(Error::DegreeTooLarge { degree: 65, max: 64 })
        ));
    }

    #[test]
    fn rank_deficient_reported() {
        // duplicate rows via a 1-point "system" against degree 0 is fine;
        // force singularity with an explicitly zero matrix instead
        let a = alloc::vec![Complex64::new(0.0, 0.0); 4];
        assert_eq!(
            lu_solve(a, &[Complex64::new(1.0, 0.0); 2]).unwrap_err(),
            Error::RankDeficient
        );
    }
}
