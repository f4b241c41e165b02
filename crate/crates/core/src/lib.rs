//! Adaptive trigonometric least-squares approximation of noisy, nonuniformly
//! sampled data.
//!
//! Given samples `(x_j, s_j)` on the periodic unit interval, the library finds
//! the trigonometric polynomial `p(x) = sum_{k=-M..M} c_k e^{2 pi i k x}` of
//! *minimal* degree whose weighted residual is compatible with the declared
//! relative noise level: the degree is raised one level at a time and the
//! first level passing the discrepancy test is accepted. Each level reuses
//! the previous one through a two-step Levinson recursion over the nested
//! Toeplitz normal equations, so a fit of final degree `N` costs
//! `O(r N + N^2)` instead of one dense solve per candidate degree.
//!
//! The crate is `no_std` (with `alloc`); everything here is pure computation.
//! File formats and the `trigfit` command line tool live in the companion
//! `trigfit-cli` crate.
//!
//! ```
//! use trigfit_core::{NoiseSpec, SampleSet1D, levinson};
//!
//! // noise-free samples of e^{2 pi i x} at 7 uniform points
//! let points: Vec<f64> = (0..7).map(|j| j as f64 / 7.0).collect();
//! let values = points
//!     .iter()
//!     .map(|&x| num_complex::Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI * x))
//!     .collect();
//! let samples = SampleSet1D::with_voronoi_weights(points, values).unwrap();
//! let fit = levinson::fit(&samples, NoiseSpec::new(1e-6).unwrap(), None).unwrap();
//! assert_eq!(fit.degree(), 1);
//! assert!((fit.coefficient(1).re - 1.0).abs() < 1e-10);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod curve;
mod error;
pub(crate) mod fft;
pub mod levinson;
pub mod oracle;
pub mod sampling;
pub mod sequence2d;
pub mod toeplitz;

pub use error::Error;
pub use levinson::{FitResult, LevinsonState, OpCount};
pub use sampling::{NoiseSpec, SampleSet1D};
pub use toeplitz::{GsFactor, ToeplitzSystem};

pub type Complex64 = num_complex::Complex64;
