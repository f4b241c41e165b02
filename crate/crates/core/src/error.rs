use alloc::vec::Vec;
use core::fmt;

/// Errors reported by the fitting pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Sampling points are not strictly increasing at the given index.
    NonMonotonePoints { index: usize },
    /// A sampling point lies outside `[0, 1)`.
    OutOfDomain { index: usize, value: f64 },
    /// A weight is zero, negative or not finite.
    NonPositiveWeight { index: usize },
    /// Point/value/weight sequences have different lengths.
    LengthMismatch { points: usize, other: usize },
    /// Empty sample set where at least one point is required.
    DegenerateSet,
    /// Relative noise level outside `[0, 1)`.
    InvalidEpsilon(f64),
    /// The Levinson recursion lost positive definiteness. Carries the level
    /// (system dimension) at which it occurred and the residual history of
    /// the completed degrees so far as `(degree, squared relative residual)`.
    Breakdown {
        level: usize,
        history: Vec<(usize, f64)>,
    },
    /// All sample values are zero, so relative residuals are undefined.
    ZeroData,
    /// Requested degree needs more samples than available (`2M + 1 > r`),
    /// or exceeds a documented limit of the dense oracle.
    DegreeTooLarge { degree: usize, max: usize },
    /// Evaluation grid too small to hold all coefficients.
    GridTooSmall { grid: usize, needed: usize },
    /// Vector length does not match the system dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Leading entry of a Gohberg-Semencul factor vanished.
    ZeroPivot,
    /// The shared Toeplitz system of a multi-solve is singular.
    SingularSystem { level: usize },
    /// Dense factorization met a negligible pivot.
    RankDeficient,
    /// Two consecutive boundary points coincide.
    ZeroChord { index: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonMonotonePoints { index } => {
                write!(f, "sampling points not strictly increasing at index {index}")
            }
            Error::OutOfDomain { index, value } => {
                write!(f, "sampling point {value} at index {index} outside [0, 1)")
            }
            Error::NonPositiveWeight { index } => {
                write!(f, "weight at index {index} is not positive and finite")
            }
            Error::LengthMismatch { points, other } => {
                write!(f, "sequence length {other} does not match {points} points")
            }
            Error::DegenerateSet => write!(f, "sample set is empty"),
            Error::InvalidEpsilon(eps) => {
                write!(f, "noise level {eps} outside [0, 1)")
            }
            Error::Breakdown { level, .. } => {
                write!(f, "Levinson recursion breakdown at level {level}")
            }
            Error::ZeroData => write!(f, "all sample values are zero"),
            Error::DegreeTooLarge { degree, max } => {
                write!(f, "degree {degree} too large (maximum {max})")
            }
            Error::GridTooSmall { grid, needed } => {
                write!(f, "grid size {grid} smaller than required {needed}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected vector of length {expected}, got {got}")
            }
            Error::ZeroPivot => write!(f, "leading inverse entry is zero"),
            Error::SingularSystem { level } => {
                write!(f, "shared Toeplitz system singular at level {level}")
            }
            Error::RankDeficient => write!(f, "dense system is rank deficient"),
            Error::ZeroChord { index } => {
                write!(f, "coincident consecutive boundary points at index {index}")
            }
        }
    }
}

impl core::error::Error for Error {}
