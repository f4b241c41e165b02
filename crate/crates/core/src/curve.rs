//! Closed planar curve recovery: ordered boundary points become a complex
//! periodic signal through chord-length parameterization and are fitted with
//! the adaptive engine. The real part of the fitted polynomial traces the x
//! coordinate, the imaginary part the y coordinate.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;
use crate::levinson::{self, FitResult};
use crate::sampling::{NoiseSpec, SampleSet1D};

/// Detected boundary points, assumed ordered along the contour.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoints {
    xy: Vec<(f64, f64)>,
}

impl BoundaryPoints {
    /// At least three points; consecutive points (including the closing
    /// pair last-to-first) must not coincide.
    pub fn new(xy: Vec<(f64, f64)>) -> Result<Self, Error> {
        if xy.len() < 3 {
            return Err(Error::DegenerateSet);
        }
        for index in 1..xy.len() {
            if chord(xy[index - 1], xy[index]) == 0.0 {
                return Err(Error::ZeroChord { index });
            }
        }
        if chord(xy[xy.len() - 1], xy[0]) == 0.0 {
            return Err(Error::ZeroChord { index: 0 });
        }
        Ok(Self { xy })
    }

    pub fn len(&self) -> usize {
        self.xy.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xy.is_empty()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.xy
    }
}

/// Normalized chord-length parameters `u_j` in `[0, 1)` and the total chord
/// length of the closed contour.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveParam {
    u: Vec<f64>,
    total_length: f64,
}

impl CurveParam {
    pub fn parameters(&self) -> &[f64] {
        &self.u
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }
}

fn chord(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = b.0 - a.0;
    let dy = b.1 - a.1;
    libm::sqrt(dx * dx + dy * dy)
}

/// Cumulative chord lengths `u_1 = 0`, `u_j = u_{j-1} + d_j`, normalized by
/// the total length including the closing chord back to the first point, so
/// every parameter lands in `[0, 1)` and the parameterization is periodic.
pub fn parameterize(points: &BoundaryPoints) -> Result<CurveParam, Error> {
    let xy = points.points();
    let mut u = Vec::with_capacity(xy.len());
    u.push(0.0);
    for j in 1..xy.len() {
        let d = chord(xy[j - 1], xy[j]);
        u.push(u[j - 1] + d);
    }
    let closing = chord(xy[xy.len() - 1], xy[0]);
    let total = u[xy.len() - 1] + closing;
    for v in u.iter_mut() {
        *v /= total;
    }
    Ok(CurveParam {
        u,
        total_length: total,
    })
}

/// A fitted closed contour.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFit {
    param: CurveParam,
    fit: FitResult,
}

impl CurveFit {
    pub fn param(&self) -> &CurveParam {
        &self.param
    }

    pub fn fit(&self) -> &FitResult {
        &self.fit
    }

    /// The recovered closed curve on a regular parameter grid of `n` points.
    pub fn contour(&self, n: usize) -> Result<Vec<(f64, f64)>, Error> {
        let values = levinson::evaluate_on_grid(self.fit.coefficients(), n)?;
        Ok(values.iter().map(|v| (v.re, v.im)).collect())
    }
}

/// Builds the complex sample set (`x_j = u_j`, value `x + i y`, Voronoi
/// weights) and runs the adaptive fit.
pub fn fit_curve(points: &BoundaryPoints, noise: NoiseSpec) -> Result<CurveFit, Error> {
    let (param, samples) = as_samples(points)?;
    let fit = levinson::fit(&samples, noise, None)?;
    Ok(CurveFit { param, fit })
}

/// The parameterized sample set behind [`fit_curve`], for callers that want
/// a fixed degree or custom processing.
pub fn as_samples(points: &BoundaryPoints) -> Result<(CurveParam, SampleSet1D), Error> {
    let param = parameterize(points)?;
    let values: Vec<Complex64> = points
        .points()
        .iter()
        .map(|&(x, y)| Complex64::new(x, y))
        .collect();
    let samples = SampleSet1D::with_voronoi_weights(param.u.clone(), values)?;
    Ok((param, samples))
}
