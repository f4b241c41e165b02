//! Moment sequence and right-hand sides of the nested Toeplitz normal
//! equations, plus the Gohberg-Semencul representation of a fixed-degree
//! inverse for fast repeated solves.
//!
//! Everything is built from the moments `t_k = sum_j w_j e^{2 pi i k x_j}`
//! and the data sums `b_k = sum_j s_j w_j e^{2 pi i k x_j}`. The degree-`M`
//! normal equations `T_M c = b` are Toeplitz because the entry coupling the
//! test frequency `k` (row) with the coefficient frequency `l` (column) is
//! `t_{l-k}`; the matching right-hand side row carries `b_{-k}`. Only
//! `k >= 0` moments are stored; `t_{-k} = conj(t_k)` by construction, which
//! is what makes every `T_M` Hermitian.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;
use crate::fft::{fft_pow2, next_pow2, spectrum_mul, unit_phase, Radix2Plan};
use crate::levinson;
use crate::sampling::SampleSet1D;

/// Weighted exponential moment `t_k = sum_j w_j e^{2 pi i k x_j}` by direct
/// summation. `moment(samples, -k) == conj(moment(samples, k))`.
pub fn moment(samples: &SampleSet1D, k: i64) -> Complex64 {
    let kk = k.unsigned_abs() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in samples.points().iter().zip(samples.weights()) {
        acc += unit_phase(kk * x) * w;
    }
    if k < 0 {
        acc.conj()
    } else {
        acc
    }
}

/// Right-hand side entry `b_k = sum_j s_j w_j e^{2 pi i k x_j}` by direct
/// summation. No conjugate symmetry in general: the values are complex.
pub fn rhs_entry(samples: &SampleSet1D, k: i64) -> Complex64 {
    let kf = k as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for ((&x, &w), &s) in samples
        .points()
        .iter()
        .zip(samples.weights())
        .zip(samples.values())
    {
        acc += s * w * unit_phase(kf * x);
    }
    acc
}

/// Moment sequence and right-hand sides of one sample set, grown on demand
/// as the recursion climbs levels. Each fresh entry costs one `O(r)` sum;
/// everything already computed is served from the cache.
#[derive(Debug, Clone)]
pub struct ToeplitzSystem {
    samples: SampleSet1D,
    moments: Vec<Complex64>,    // t_0, t_1, ...
    rhs_pos: Vec<Complex64>,    // b_0, b_1, ...
    rhs_neg: Vec<Complex64>,    // b_{-1}, b_{-2}, ...
    sigma: f64,
    summation_ops: u64,
}

impl ToeplitzSystem {
    pub fn new(samples: &SampleSet1D) -> Self {
        let sigma = samples
            .values()
            .iter()
            .zip(samples.weights())
            .map(|(s, &w)| s.norm_sqr() * w)
            .sum();
        let mut sys = Self {
            samples: samples.clone(),
            moments: Vec::new(),
            rhs_pos: Vec::new(),
            rhs_neg: Vec::new(),
            sigma,
            summation_ops: 0,
        };
        sys.moment(0);
        sys
    }

    pub fn samples(&self) -> &SampleSet1D {
        &self.samples
    }

    /// Weighted data energy `sigma = sum_j |s_j|^2 w_j`.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `t_0 = sum_j w_j`, always real and positive.
    pub fn t0(&mut self) -> f64 {
        self.moment(0).re
    }

    /// Largest degree `M` with `2M + 1 <= r`.
    pub fn max_level(&self) -> usize {
        self.samples.max_degree()
    }

    /// Cached moment for `k >= 0`.
    pub fn moment(&mut self, k: usize) -> Complex64 {
        while self.moments.len() <= k {
            let next = self.moments.len() as i64;
            self.moments.push(moment(&self.samples, next));
            self.summation_ops += self.samples.len() as u64;
        }
        self.moments[k]
    }

    /// Cached moment for any sign of `k`.
    pub fn moment_signed(&mut self, k: i64) -> Complex64 {
        let t = self.moment(k.unsigned_abs() as usize);
        if k < 0 {
            t.conj()
        } else {
            t
        }
    }

    /// Cached right-hand side entry for any sign of `k`.
    pub fn rhs(&mut self, k: i64) -> Complex64 {
        if k >= 0 {
            let k = k as usize;
            while self.rhs_pos.len() <= k {
                let next = self.rhs_pos.len() as i64;
                self.rhs_pos.push(rhs_entry(&self.samples, next));
                self.summation_ops += self.samples.len() as u64;
            }
            self.rhs_pos[k]
        } else {
            let idx = (-k) as usize - 1;
            while self.rhs_neg.len() <= idx {
                let next = -(self.rhs_neg.len() as i64) - 1;
                self.rhs_neg.push(rhs_entry(&self.samples, next));
                self.summation_ops += self.samples.len() as u64;
            }
            self.rhs_neg[idx]
        }
    }

    /// The raw entry sequence `[b_{-M}, ..., b_M]`. Note the normal-equation
    /// row paired with coefficient frequency `k` carries `b_{-k}`, i.e. this
    /// vector reversed.
    pub fn rhs_vector(&mut self, degree: usize) -> Vec<Complex64> {
        let m = degree as i64;
        (-m..=m).map(|k| self.rhs(k)).collect()
    }

    /// Number of `O(r)` summations performed so far, in units of sample
    /// count (one fresh moment or right-hand side entry adds `r`).
    pub fn summation_ops(&self) -> u64 {
        self.summation_ops
    }
}

/// First column of `(T_M)^{-1}` with precomputed circulant spectra of the
/// four triangular Toeplitz factors, enabling `O(M log M)` repeated solves
/// against the same matrix.
#[derive(Debug, Clone)]
pub struct GsFactor {
    degree: usize,
    z: Vec<Complex64>,
    plan: Radix2Plan,
    spec_low: Vec<Complex64>,      // L: lower triangular, first column z
    spec_low_adj: Vec<Complex64>,  // L*
    spec_tail: Vec<Complex64>,     // C: lower triangular, first column (0, conj z_{2M}, ..., conj z_1)
    spec_tail_adj: Vec<Complex64>, // C*
}

impl GsFactor {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// First column of the inverse; `z[0]` is real and positive for a
    /// positive definite system.
    pub fn z(&self) -> &[Complex64] {
        &self.z
    }

    /// Applies `(T_M)^{-1}` to `b` as `(L (L* b) - C (C* b)) / z_0`, each
    /// triangular product carried out by circulant embedding and the FFT.
    /// The two branches share the input spectrum and the final inverse
    /// transform: six transforms of the embedding size per call.
    pub fn apply(&self, b: &[Complex64]) -> Result<Vec<Complex64>, Error> {
        let n = 2 * self.degree + 1;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        if self.z[0].norm() == 0.0 {
            return Err(Error::ZeroPivot);
        }
        let m = self.plan.len();
        let mut b_hat = vec![Complex64::new(0.0, 0.0); m];
        b_hat[..n].copy_from_slice(b);
        self.plan.process(&mut b_hat, false);

        let low = self.adjoint_product(&b_hat, &self.spec_low_adj, n);
        let tail = self.adjoint_product(&b_hat, &self.spec_tail_adj, n);
        let mut combined: Vec<Complex64> = low
            .iter()
            .zip(&self.spec_low)
            .zip(tail.iter().zip(&self.spec_tail))
            .map(|((lv, ls), (tv, ts))| lv * ls - tv * ts)
            .collect();
        self.plan.process(&mut combined, true);
        combined.truncate(n);
        let scale = self.z[0] * (m * m) as f64;
        for v in combined.iter_mut() {
            *v /= scale;
        }
        Ok(combined)
    }

    /// Spectrum of the (zero-padded) product `A* b`, given `b_hat` and the
    /// circulant spectrum of `A*`; truncates the circulant wrap-around
    /// before transforming back. The `1/m` normalization of the inner
    /// inverse transform is deferred to the caller.
    fn adjoint_product(&self, b_hat: &[Complex64], spec_adj: &[Complex64], n: usize) -> Vec<Complex64> {
        let mut mid = spectrum_mul(b_hat, spec_adj);
        self.plan.process(&mut mid, true);
        for v in mid.iter_mut().skip(n) {
            *v = Complex64::new(0.0, 0.0);
        }
        self.plan.process(&mut mid, false);
        mid
    }
}

/// Circulant spectrum embedding a lower triangular Toeplitz matrix with
/// first column `col` into size `m`.
fn lower_triangular_spectrum(col: &[Complex64], m: usize) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); m];
    c[..col.len()].copy_from_slice(col);
    fft_pow2(&mut c, false);
    c
}

/// Circulant spectrum embedding an upper triangular Toeplitz matrix with
/// first row `row` into size `m`.
fn upper_triangular_spectrum(row: &[Complex64], m: usize) -> Vec<Complex64> {
    let n = row.len();
    let mut c = vec![Complex64::new(0.0, 0.0); m];
    c[0] = row[0];
    for d in 1..n {
        c[m - d] = row[d];
    }
    fft_pow2(&mut c, false);
    c
}

/// Solves `T_M z = e_1` (first standard basis vector) with one extra run of
/// the Levinson recursion and packages the triangular factor spectra.
pub fn gs_factorize(system: &mut ToeplitzSystem, degree: usize) -> Result<GsFactor, Error> {
    let z = levinson::solve_unit_rhs(system, degree).map_err(|e| match e {
        Error::Breakdown { level, .. } => Error::SingularSystem { level },
        other => other,
    })?;
    Ok(build_factor(degree, z))
}

fn build_factor(degree: usize, z: Vec<Complex64>) -> GsFactor {
    let n = 2 * degree + 1;
    let fft_len = next_pow2(2 * n);
    let spec_low = lower_triangular_spectrum(&z, fft_len);
    // L* is upper triangular with first row conj(z)
    let adj: Vec<Complex64> = z.iter().map(|v| v.conj()).collect();
    let spec_low_adj = upper_triangular_spectrum(&adj, fft_len);
    // tail factor: first column (0, conj z_{n-1}, ..., conj z_1)
    let mut tail = Vec::with_capacity(n);
    tail.push(Complex64::new(0.0, 0.0));
    for i in (1..n).rev() {
        tail.push(z[i].conj());
    }
    let spec_tail = lower_triangular_spectrum(&tail, fft_len);
    let tail_adj: Vec<Complex64> = tail.iter().map(|v| v.conj()).collect();
    let spec_tail_adj = upper_triangular_spectrum(&tail_adj, fft_len);
    GsFactor {
        degree,
        z,
        plan: Radix2Plan::new(fft_len),
        spec_low,
        spec_low_adj,
        spec_tail,
        spec_tail_adj,
    }
}

/// Free-function alias for [`GsFactor::apply`].
pub fn gs_apply(factor: &GsFactor, b: &[Complex64]) -> Result<Vec<Complex64>, Error> {
    factor.apply(b)
}
