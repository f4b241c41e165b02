//! The Levinson-Galerkin engine: a two-step recursion over the nested
//! Toeplitz normal equations that raises the polynomial degree one level at
//! a time and stops at the first degree compatible with the declared noise.
//!
//! Levels are indexed by the system dimension `l`. A completed degree `M`
//! corresponds to odd `l = 2M + 1` with coefficient frequencies `-M..M`,
//! stored lowest frequency first. Moving to degree `M + 1` takes two border
//! steps: the odd step appends the new top frequency `M + 1` below, the
//! even step the new bottom frequency `-(M + 1)` on top. Neither is a plain
//! leading-submatrix extension, which is why the textbook recursion does not
//! apply directly; both steps reuse the running Yule-Walker solution
//! `T_l y = -(g_1, ..., g_l)` instead.
//!
//! In this ordering the normal-equation matrix has `g_k = conj(t_k)` down
//! its first column (the entry coupling frequencies `k` and `l` is
//! `t_{l-k}`), and the right-hand side entry paired with frequency `k` is
//! `b_{-k}`. The drivers below feed the recursion accordingly; getting this
//! orientation wrong solves the normal equations for the reversed
//! coefficient vector instead.
//!
//! The stopping test checks the squared relative residual `eps_l` against
//! `epsilon^2`, i.e. the criterion `||residual||_w <= epsilon ||data||_w` on
//! the unsquared scale, and `eps_l` itself comes from the `O(l)` identity
//! `sum_j |s_j - p(x_j)|^2 w_j = sigma - <b, c>` rather than from evaluating
//! the polynomial at the sampling points.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;
use crate::fft::{fft_pow2, unit_phase};
use crate::sampling::{NoiseSpec, SampleSet1D};
use crate::toeplitz::ToeplitzSystem;

/// Relative floor under which the Schur complement counts as a breakdown.
const BREAKDOWN_REL_TOL: f64 = 1e-13;

/// Identity residuals at or below this are indistinguishable from zero: the
/// `sigma - <b, c>` cancellation cannot resolve relative residuals near the
/// summation roundoff. For stop decisions in that zone the criterion is
/// confirmed against the directly evaluated residual, which squares the
/// pointwise differences and therefore resolves far smaller values.
const IDENTITY_FLOOR: f64 = 1e-12;

/// All recursion carry at one level: the current solution, the Yule-Walker
/// solution driving the border updates, the Schur complement `beta`, the
/// latest reflection coefficient `alpha` and the consumed prefix of the
/// generator (the first column `g_0, g_1, ...` of the Hermitian Toeplitz
/// matrix being bordered; for the normal equations `g_k = conj(t_k)`).
#[derive(Debug, Clone)]
pub struct LevinsonState {
    level: usize,
    sol: Vec<Complex64>,
    yw: Vec<Complex64>,
    rhs: Vec<Complex64>,
    moments: Vec<Complex64>, // generator entries g_1, ..., g_level
    t0: f64,
    beta: f64,
    alpha: Complex64,
    sigma: f64,
    recursion_ops: u64,
}

impl LevinsonState {
    /// Level-1 state: `c = b_0 / g_0`, `y = -g_1 / g_0`,
    /// `beta_1 = (1 - |alpha_0|^2) g_0`.
    pub fn init(t0: f64, t1: Complex64, b0: Complex64, sigma: f64) -> Self {
        let alpha = -t1 / t0;
        Self {
            level: 1,
            sol: vec![b0 / t0],
            yw: vec![alpha],
            rhs: vec![b0],
            moments: vec![t1],
            t0,
            beta: (1.0 - alpha.norm_sqr()) * t0,
            alpha,
            sigma,
            recursion_ops: 0,
        }
    }

    /// Current system dimension `l`.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Completed degree when the dimension is odd.
    pub fn completed_degree(&self) -> Option<usize> {
        (self.level % 2 == 1).then(|| (self.level - 1) / 2)
    }

    /// Current solution vector, lowest frequency first.
    pub fn solution(&self) -> &[Complex64] {
        &self.sol
    }

    /// Yule-Walker solution at the current dimension.
    pub fn yule_walker(&self) -> &[Complex64] {
        &self.yw
    }

    /// Right-hand side assembled so far, lowest frequency first.
    pub fn rhs(&self) -> &[Complex64] {
        &self.rhs
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Count of inner-loop complex multiply-adds spent in border updates.
    pub fn recursion_ops(&self) -> u64 {
        self.recursion_ops
    }

    /// Squared relative residual `eps_l = |sigma - Re<b, c>| / sigma` of the
    /// current solution, valid at completed degrees.
    pub fn residual_sq(&self) -> Result<f64, Error> {
        if self.sigma == 0.0 {
            return Err(Error::ZeroData);
        }
        let inner: f64 = self
            .rhs
            .iter()
            .zip(&self.sol)
            .map(|(b, c)| (b * c.conj()).re)
            .sum();
        Ok((self.sigma - inner).abs() / self.sigma)
    }

    fn check_carry(&self) -> Result<(), Error> {
        // a NaN beta (possible after operating on a degenerate carry) must
        // also trip the breakdown path
        let beta_ok = self.beta > BREAKDOWN_REL_TOL * self.t0;
        if !beta_ok || self.alpha.norm() >= 1.0 - BREAKDOWN_REL_TOL {
            return Err(Error::Breakdown {
                level: self.level,
                history: Vec::new(),
            });
        }
        Ok(())
    }

    /// Odd border step `l -> l + 1`: appends the new unknown at the top
    /// frequency end, the right-hand side extended below. Consumes the next
    /// generator entry and the new right-hand side entry.
    pub fn step_odd(&mut self, t_next: Complex64, b_next: Complex64) -> Result<(), Error> {
        debug_assert!(self.level % 2 == 1, "odd step at even level");
        self.check_carry()?;
        let l = self.level;

        // v = (b_next - t^T E c) / beta
        let inner: Complex64 = self
            .moments
            .iter()
            .zip(self.sol.iter().rev())
            .map(|(t, c)| t * c)
            .sum();
        let v = (b_next - inner) / self.beta;

        // c' = [c + v E conj(y); v]
        for i in 0..l {
            let update = v * self.yw[l - 1 - i].conj();
            self.sol[i] += update;
        }
        self.sol.push(v);
        self.rhs.push(b_next);
        self.recursion_ops += 2 * l as u64;

        self.advance_yule_walker(t_next);
        Ok(())
    }

    /// Even border step `l -> l + 1`: appends the new unknown at the bottom
    /// frequency end, the right-hand side extended on top, completing a
    /// degree. Uses the identity `t_0 + t^* y = beta`, which holds because
    /// `t^* y` is real for a Hermitian system.
    pub fn step_even(&mut self, t_next: Complex64, b_next: Complex64) -> Result<(), Error> {
        debug_assert!(self.level.is_multiple_of(2), "even step at odd level");
        self.check_carry()?;
        let l = self.level;

        // v = (b_next - t^* c) / beta
        let inner: Complex64 = self
            .moments
            .iter()
            .zip(&self.sol)
            .map(|(t, c)| t.conj() * c)
            .sum();
        let v = (b_next - inner) / self.beta;

        // c' = [v; c + v y]
        for i in 0..l {
            let update = v * self.yw[i];
            self.sol[i] += update;
        }
        self.sol.insert(0, v);
        self.rhs.insert(0, b_next);
        self.recursion_ops += 2 * l as u64;

        self.advance_yule_walker(t_next);
        Ok(())
    }

    /// Advances `y` to the next dimension through the reflection
    /// coefficient, then updates `beta_{l+1} = (1 - |alpha_l|^2) beta_l`.
    /// Loss of positive definiteness (`|alpha| -> 1`, `beta -> 0`) is not an
    /// error here: the advanced carry is only consumed by a following step,
    /// whose entry check reports the breakdown. A run that stops at the
    /// current dimension stays valid.
    fn advance_yule_walker(&mut self, t_next: Complex64) {
        let l = self.level;
        let inner: Complex64 = self
            .moments
            .iter()
            .zip(self.yw.iter().rev())
            .map(|(t, y)| t * y)
            .sum();
        let alpha = -(t_next + inner) / self.beta;

        // z = y + alpha E conj(y), updated pairwise in place
        let mut i = 0;
        let mut j = l - 1;
        while i < j {
            let (a, b) = (self.yw[i], self.yw[j]);
            self.yw[i] = a + alpha * b.conj();
            self.yw[j] = b + alpha * a.conj();
            i += 1;
            j -= 1;
        }
        if i == j {
            let a = self.yw[i];
            self.yw[i] = a + alpha * a.conj();
        }
        self.yw.push(alpha);
        self.moments.push(t_next);
        self.recursion_ops += 2 * l as u64;

        self.beta *= 1.0 - alpha.norm_sqr();
        self.alpha = alpha;
        self.level += 1;
    }
}

/// Minimal-degree fit: the accepted degree, its coefficients (lowest
/// frequency first), the achieved relative residual on the unsquared scale
/// and the per-degree residual history.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    degree: usize,
    coefficients: Vec<Complex64>,
    achieved_eps: f64,
    converged: bool,
    history: Vec<(usize, f64)>,
}

impl FitResult {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients `c_{-N}, ..., c_N`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Coefficient of frequency `k`; zero outside `-N..N`.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        let n = self.degree as i64;
        if k < -n || k > n {
            return Complex64::new(0.0, 0.0);
        }
        self.coefficients[(k + n) as usize]
    }

    /// Final relative residual, reported as `sqrt(eps_l)` to match the
    /// stopping criterion's norm scale.
    pub fn achieved_eps(&self) -> f64 {
        self.achieved_eps
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// `(degree, squared relative residual)` for every completed degree.
    pub fn residual_history(&self) -> &[(usize, f64)] {
        &self.history
    }

    /// Cosine/sine form for fits of real-valued data:
    /// `p(x) = a_0 + sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x)` with
    /// `a` indexed `0..=N` and `b` indexed `1..=N` (returned with a leading
    /// zero). `None` when the coefficients are not conjugate-symmetric,
    /// i.e. the fitted data was genuinely complex.
    pub fn cosine_sine_form(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let n = self.degree;
        let scale = self
            .coefficients
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        let mut a = Vec::with_capacity(n + 1);
        let mut b = Vec::with_capacity(n + 1);
        a.push(self.coefficient(0).re);
        b.push(0.0);
        if self.coefficient(0).im.abs() > 1e-10 * scale.max(1e-300) {
            return None;
        }
        for k in 1..=n as i64 {
            let plus = self.coefficient(k);
            let minus = self.coefficient(-k);
            if (minus - plus.conj()).norm() > 1e-10 * scale.max(1e-300) {
                return None;
            }
            a.push(2.0 * plus.re);
            b.push(-2.0 * plus.im);
        }
        Some((a, b))
    }
}

/// Operation counters of one instrumented run: `summation_ops` counts the
/// `O(r)` moment and right-hand-side sums in units of sample count,
/// `recursion_ops` the complex multiply-adds of the border updates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCount {
    pub summation_ops: u64,
    pub recursion_ops: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.summation_ops + self.recursion_ops
    }
}

/// Runs levels `M = 0, 1, 2, ...`, testing the discrepancy criterion at each
/// completed degree, and returns the first fit with
/// `sqrt(eps_l) <= epsilon`. Reaching `max_degree` (default `(r-1)/2`)
/// without passing the test returns the deepest solution with
/// `converged = false`, except at the full interpolation dimension
/// `2M + 1 = r` where the residual vanishes identically and the fit counts
/// as converged.
pub fn fit(
    samples: &SampleSet1D,
    noise: NoiseSpec,
    max_degree: Option<usize>,
) -> Result<FitResult, Error> {
    let r = samples.len();
    let hard_max = (r - 1) / 2;
    let max_degree = max_degree.unwrap_or(hard_max);
    if max_degree > hard_max {
        return Err(Error::DegreeTooLarge {
            degree: max_degree,
            max: hard_max,
        });
    }

    let mut sys = ToeplitzSystem::new(samples);
    if sys.sigma() == 0.0 {
        // the zero polynomial fits zero data exactly
        return Ok(FitResult {
            degree: 0,
            coefficients: vec![Complex64::new(0.0, 0.0)],
            achieved_eps: 0.0,
            converged: true,
            history: vec![(0, 0.0)],
        });
    }

    let eps_sq = noise.epsilon() * noise.epsilon();
    let t0 = sys.t0();
    let g1 = sys.moment(1).conj();
    let b0 = sys.rhs(0);
    let mut state = LevinsonState::init(t0, g1, b0, sys.sigma());
    let mut history: Vec<(usize, f64)> = Vec::new();

    for m in 0..=max_degree {
        let mut eps_l = state.residual_sq()?;
        if eps_l > eps_sq && eps_l <= IDENTITY_FLOOR {
            eps_l = direct_residual_sq(samples, state.solution(), sys.sigma());
        }
        history.push((m, eps_l));
        if eps_l <= eps_sq {
            return Ok(finish(state, m, eps_l, true, history));
        }
        if m == max_degree {
            // criterion satisfied analytically at the interpolation
            // dimension even when roundoff keeps eps_l slightly positive
            let converged = 2 * m + 1 == r;
            return Ok(finish(state, m, eps_l, converged, history));
        }
        step_degree(&mut sys, &mut state, m).map_err(|e| attach_history(e, &history))?;
    }
    unreachable!("loop returns at max_degree");
}

/// Definitional relative squared residual
/// `sum_j |p(x_j) - s_j|^2 w_j / sigma` by direct evaluation.
fn direct_residual_sq(samples: &SampleSet1D, coeffs: &[Complex64], sigma: f64) -> f64 {
    let num: f64 = samples
        .points()
        .iter()
        .zip(samples.values())
        .zip(samples.weights())
        .map(|((&x, &s), &w)| (evaluate_at(coeffs, x) - s).norm_sqr() * w)
        .sum();
    num / sigma
}

/// Both border steps taking degree `m` to `m + 1`: the odd step introduces
/// coefficient `m + 1` (rhs entry `b_{-(m+1)}`), the even step coefficient
/// `-(m + 1)` (rhs entry `b_{m+1}`).
fn step_degree(
    sys: &mut ToeplitzSystem,
    state: &mut LevinsonState,
    m: usize,
) -> Result<(), Error> {
    let g = sys.moment(2 * m + 2).conj();
    let b = sys.rhs(-(m as i64) - 1);
    state.step_odd(g, b)?;
    let g = sys.moment(2 * m + 3).conj();
    let b = sys.rhs(m as i64 + 1);
    state.step_even(g, b)
}

fn finish(
    state: LevinsonState,
    degree: usize,
    eps_l: f64,
    converged: bool,
    history: Vec<(usize, f64)>,
) -> FitResult {
    FitResult {
        degree,
        coefficients: state.sol,
        achieved_eps: libm::sqrt(eps_l),
        converged,
        history,
    }
}

fn attach_history(e: Error, history: &[(usize, f64)]) -> Error {
    match e {
        Error::Breakdown { level, .. } => Error::Breakdown {
            level,
            history: history.to_vec(),
        },
        other => other,
    }
}

/// Runs the recursion to the requested degree, ignoring the stopping
/// criterion, and returns `c^{(M)}`.
pub fn solve_fixed_degree(samples: &SampleSet1D, degree: usize) -> Result<Vec<Complex64>, Error> {
    let mut sys = ToeplitzSystem::new(samples);
    run_to_degree(&mut sys, degree, Rhs::FromSamples).map(|state| state.sol)
}

/// Same as [`solve_fixed_degree`] with the arithmetic counters of the run.
pub fn solve_fixed_degree_with_ops(
    samples: &SampleSet1D,
    degree: usize,
) -> Result<(Vec<Complex64>, OpCount), Error> {
    let mut sys = ToeplitzSystem::new(samples);
    let state = run_to_degree(&mut sys, degree, Rhs::FromSamples)?;
    let ops = OpCount {
        summation_ops: sys.summation_ops(),
        recursion_ops: state.recursion_ops(),
    };
    Ok((state.sol, ops))
}

/// Right-hand side fed to a recursion run, addressed by the coefficient
/// frequency the entry is paired with.
enum Rhs {
    /// Weighted data sums of the sample set.
    FromSamples,
    /// Standard basis vector: 1 at the row paired with frequency `k0`.
    UnitAt(i64),
}

impl Rhs {
    fn entry(&self, sys: &mut ToeplitzSystem, k: i64) -> Complex64 {
        match self {
            // the row paired with coefficient frequency k carries b_{-k}
            Rhs::FromSamples => sys.rhs(-k),
            Rhs::UnitAt(k0) => {
                if k == *k0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }
}

fn run_to_degree(
    sys: &mut ToeplitzSystem,
    degree: usize,
    rhs: Rhs,
) -> Result<LevinsonState, Error> {
    if 2 * degree + 1 > sys.samples().len() {
        return Err(Error::DegreeTooLarge {
            degree,
            max: sys.max_level(),
        });
    }
    let t0 = sys.t0();
    let g1 = sys.moment(1).conj();
    let b0 = rhs.entry(sys, 0);
    let sigma = sys.sigma();
    let mut state = LevinsonState::init(t0, g1, b0, sigma);
    for m in 0..degree {
        let g = sys.moment(2 * m + 2).conj();
        let b = rhs.entry(sys, m as i64 + 1);
        state.step_odd(g, b)?;
        let g = sys.moment(2 * m + 3).conj();
        let b = rhs.entry(sys, -(m as i64) - 1);
        state.step_even(g, b)?;
    }
    Ok(state)
}

/// Levinson solve of `T_M z = e_1` (first standard basis vector, i.e. the
/// row of frequency `-M`), used to build the Gohberg-Semencul factor.
pub(crate) fn solve_unit_rhs(
    sys: &mut ToeplitzSystem,
    degree: usize,
) -> Result<Vec<Complex64>, Error> {
    run_to_degree(sys, degree, Rhs::UnitAt(-(degree as i64))).map(|state| state.sol)
}

/// `p(x) = sum_k c_k e^{2 pi i k x}` for coefficients `c_{-N}, ..., c_N`.
pub fn evaluate_at(coeffs: &[Complex64], x: f64) -> Complex64 {
    debug_assert!(coeffs.len() % 2 == 1);
    let n = (coeffs.len() / 2) as i64;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * unit_phase((i as i64 - n) as f64 * x))
        .sum()
}

/// Evaluates the polynomial at `x = j / n, j = 0..n-1`. Power-of-two grids
/// go through a zero-padded inverse FFT, other sizes through direct
/// summation.
pub fn evaluate_on_grid(coeffs: &[Complex64], n: usize) -> Result<Vec<Complex64>, Error> {
    debug_assert!(coeffs.len() % 2 == 1);
    if n < coeffs.len() {
        return Err(Error::GridTooSmall {
            grid: n,
            needed: coeffs.len(),
        });
    }
    let deg = coeffs.len() / 2;
    if n.is_power_of_two() {
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (i, &c) in coeffs.iter().enumerate() {
            let k = i as i64 - deg as i64;
            let slot = k.rem_euclid(n as i64) as usize;
            buf[slot] = c;
        }
        fft_pow2(&mut buf, true);
        Ok(buf)
    } else {
        Ok((0..n)
            .map(|j| evaluate_at(coeffs, j as f64 / n as f64))
            .collect())
    }
}
