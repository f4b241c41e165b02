//! Sample sets on the periodic unit interval and their quadrature weights.
//!
//! Weights compensate the local sampling density; the default is the size of
//! each point's periodic Voronoi cell, `w_j = (x_{j+1} - x_{j-1}) / 2` with
//! the neighbors wrapped around the circle.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;

/// Nonuniform samples: strictly increasing points in `[0, 1)`, complex
/// values, positive weights. Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet1D {
    points: Vec<f64>,
    values: Vec<Complex64>,
    weights: Vec<f64>,
}

impl SampleSet1D {
    /// Validates points, values and explicit weights.
    pub fn new(
        points: Vec<f64>,
        values: Vec<Complex64>,
        weights: Vec<f64>,
    ) -> Result<Self, Error> {
        validate_points(&points)?;
        if values.len() != points.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                other: values.len(),
            });
        }
        if weights.len() != points.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                other: weights.len(),
            });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::NonPositiveWeight { index });
            }
        }
        Ok(Self {
            points,
            values,
            weights,
        })
    }

    /// Validates points and values and fills in Voronoi weights.
    pub fn with_voronoi_weights(points: Vec<f64>, values: Vec<Complex64>) -> Result<Self, Error> {
        validate_points(&points)?;
        let weights = voronoi_weights(&points)?;
        Self::new(points, values, weights)
    }

    /// Uniform weights `w_j = 1/r`.
    pub fn with_uniform_weights(points: Vec<f64>, values: Vec<Complex64>) -> Result<Self, Error> {
        validate_points(&points)?;
        let r = points.len();
        let weights = alloc::vec![1.0 / r as f64; r];
        Self::new(points, values, weights)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Largest gap between periodically consecutive points.
    pub fn mesh_norm(&self) -> f64 {
        mesh_norm(&self.points)
    }

    /// Largest degree `M` with `2M + 1 <= r`.
    pub fn max_degree(&self) -> usize {
        (self.len() - 1) / 2
    }

    /// Same points and weights, different values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self, Error> {
        Self::new(self.points.clone(), values, self.weights.clone())
    }
}

/// Declared relative noise fraction: `||s^eps - s|| <= eps ||s^eps||` in the
/// weighted norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    epsilon: f64,
}

impl NoiseSpec {
    pub fn new(epsilon: f64) -> Result<Self, Error> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        Ok(Self { epsilon })
    }

    /// Exact data.
    pub fn noise_free() -> Self {
        Self { epsilon: 0.0 }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

fn validate_points(points: &[f64]) -> Result<(), Error> {
    if points.is_empty() {
        return Err(Error::DegenerateSet);
    }
    for (index, &x) in points.iter().enumerate() {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::OutOfDomain { index, value: x });
        }
        // the domain check above already rejected NaN
        if index > 0 && x <= points[index - 1] {
            return Err(Error::NonMonotonePoints { index });
        }
    }
    Ok(())
}

/// Periodic Voronoi weights `w_j = (x_{j+1} - x_{j-1}) / 2`, the endpoints
/// wrapped as `x_0 = x_r - 1` and `x_{r+1} = x_1 + 1`. Sums to one.
pub fn voronoi_weights(points: &[f64]) -> Result<Vec<f64>, Error> {
    validate_points(points)?;
    let r = points.len();
    if r == 1 {
        return Ok(alloc::vec![1.0]);
    }
    let mut weights = Vec::with_capacity(r);
    for j in 0..r {
        let prev = if j == 0 { points[r - 1] - 1.0 } else { points[j - 1] };
        let next = if j == r - 1 { points[0] + 1.0 } else { points[j + 1] };
        weights.push((next - prev) / 2.0);
    }
    Ok(weights)
}

/// Largest gap between periodically consecutive points, including the wrap
/// gap `x_1 + 1 - x_r`.
pub fn mesh_norm(points: &[f64]) -> f64 {
    let r = points.len();
    if r == 0 {
        return f64::NAN;
    }
    if r == 1 {
        return 1.0;
    }
    let mut gamma = points[0] + 1.0 - points[r - 1];
    for j in 1..r {
        let gap = points[j] - points[j - 1];
        if gap > gamma {
            gamma = gap;
        }
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn uniform_points_get_uniform_voronoi_weights() {
        let pts = [0.0, 0.25, 0.5, 0.75];
        let w = voronoi_weights(&pts).unwrap();
        for wj in w {
            assert!((wj - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn voronoi_weights_hand_example() {
        let w = voronoi_weights(&[0.0, 0.1, 0.5]).unwrap();
        assert!((w[0] - 0.3).abs() < 1e-15);
        assert!((w[1] - 0.25).abs() < 1e-15);
        assert!((w[2] - 0.45).abs() < 1e-15);
    }

    #[test]
    fn single_point_owns_the_circle() {
        assert_eq!(voronoi_weights(&[0.3]).unwrap(), alloc::vec![1.0]);
        assert_eq!(mesh_norm(&[0.5]), 1.0);
    }

    #[test]
    fn validate_fills_voronoi_weights() {
        let set = SampleSet1D::with_voronoi_weights(
            alloc::vec![0.0, 0.1, 0.5],
            alloc::vec![c(1.0), c(2.0), c(3.0)],
        )
        .unwrap();
        assert!((set.weights()[0] - 0.3).abs() < 1e-15);
        assert!((set.weights()[2] - 0.45).abs() < 1e-15);
    }

    #[test]
    fn rejects_unsorted_points() {
        let err = SampleSet1D::with_voronoi_weights(alloc::vec![0.5, 0.25], alloc::vec![c(1.0); 2])
            .unwrap_err();
        assert_eq!(err, Error::NonMonotonePoints { index: 1 });
    }

    #[test]
    fn rejects_duplicates_and_out_of_domain() {
        assert_eq!(
            validate_points(&[0.1, 0.1]).unwrap_err(),
            Error::NonMonotonePoints { index: 1 }
        );
        assert!(matches!(
            validate_points(&[0.0, 1.0]).unwrap_err(),
            Error::OutOfDomain { index: 1, .. }
        ));
        assert!(matches!(
            validate_points(&[-0.2]).unwrap_err(),
            Error::OutOfDomain { index: 0, .. }
        ));
        assert_eq!(validate_points(&[]).unwrap_err(), Error::DegenerateSet);
    }

    #[test]
    fn rejects_bad_weights() {
        let err = SampleSet1D::new(
            alloc::vec![0.0, 0.5],
            alloc::vec![c(1.0); 2],
            alloc::vec![0.5, 0.0],
        )
        .unwrap_err();
        assert_eq!(err, Error::NonPositiveWeight { index: 1 });
    }

    #[test]
    fn mesh_norm_counts_wrap_gap() {
        assert!((mesh_norm(&[0.0, 0.25, 0.5, 0.75]) - 0.25).abs() < 1e-15);
        assert!((mesh_norm(&[0.0, 0.1, 0.5]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn noise_spec_bounds() {
        assert!(NoiseSpec::new(0.0).is_ok());
        assert!(NoiseSpec::new(0.999).is_ok());
        assert_eq!(NoiseSpec::new(1.0).unwrap_err(), Error::InvalidEpsilon(1.0));
        assert!(NoiseSpec::new(-0.1).is_err());
    }

    prop_compose! {
        fn sorted_points(max_len: usize)(raw in prop::collection::vec(0.0f64..1.0, 1..max_len)) -> Vec<f64> {
            let mut pts = raw;
            pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            pts.dedup_by(|a, b| *a <= *b + 1e-9);
            pts
        }
    }

    proptest! {
        #[test]
        fn weights_sum_to_one(pts in sorted_points(60)) {
            let w = voronoi_weights(&pts).unwrap();
            let sum: f64 = w.iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-14 * pts.len() as f64);
            prop_assert!(w.iter().all(|&wj| wj > 0.0));
        }

        #[test]
        fn weights_rotation_equivariant(pts in sorted_points(40), shift in 0.0f64..1.0) {
            let w = voronoi_weights(&pts).unwrap();
            let mut shifted: Vec<f64> = pts.iter().map(|x| (x + shift).fract()).collect();
            shifted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            shifted.dedup_by(|a, b| *a <= *b + 1e-12);
            prop_assume!(shifted.len() == pts.len());
            let mut wr = voronoi_weights(&shifted).unwrap();
            let mut ws = w.clone();
            ws.sort_by(|a, b| a.partial_cmp(b).unwrap());
            wr.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in ws.iter().zip(&wr) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn mesh_norm_at_least_mean_gap(pts in sorted_points(60)) {
            prop_assert!(mesh_norm(&pts) >= 1.0 / pts.len() as f64 - 1e-15);
        }
    }
}
