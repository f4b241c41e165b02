pub mod curve;
pub mod diag;
pub mod fit1d;
pub mod seq;

use anyhow::{bail, Result};

/// Default evaluation grid: a power of two at or above `4 * degree + 1`,
/// never below 64.
pub fn default_grid(degree: usize) -> usize {
    (4 * degree + 1).max(64).next_power_of_two()
}

/// Sorts sample rows by abscissa, carrying the attached payload along.
pub fn sort_rows<T: Clone>(rows: Vec<(f64, T)>) -> Vec<(f64, T)> {
    let mut rows = rows;
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite abscissas"));
    rows
}

/// Affine map of the abscissas onto `[0, (r-1)/r]`, giving the periodic
/// wrap a gap equal to the mean spacing.
pub fn normalize_points(points: &mut [f64]) -> Result<()> {
    let r = points.len();
    if r == 1 {
        points[0] = 0.0;
        return Ok(());
    }
    let min = points.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = points.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    if span <= 0.0 {
        bail!("cannot normalize: all sampling points coincide");
    }
    let scale = span * r as f64 / (r as f64 - 1.0);
    for x in points.iter_mut() {
        *x = (*x - min) / scale;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_lands_in_unit_interval() {
        let mut points = vec![-3.0, 1.0, 5.0, 9.0];
        normalize_points(&mut points).unwrap();
        assert_eq!(points[0], 0.0);
        assert!((points[3] - 0.75).abs() < 1e-15);
        assert!(points.iter().all(|&x| (0.0..1.0).contains(&x)));
    }

    #[test]
    fn default_grid_sizes() {
        assert_eq!(default_grid(0), 64);
        assert_eq!(default_grid(20), 128);
    }
}
