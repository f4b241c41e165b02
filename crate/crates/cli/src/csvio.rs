//! Hand-rolled readers and writers for the tool's small CSV dialects. Parse
//! errors carry 1-based line numbers. Output numbers use the shortest
//! round-trippable decimal form, so identical data always produces
//! byte-identical files.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use trigfit_core::Complex64;

/// One parsed numeric row.
fn parse_row(line: &str, lineno: usize, min: usize, max: usize) -> Result<Vec<f64>> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    if fields.len() < min || fields.len() > max {
        bail!(
            "line {lineno}: expected {min}..{max} comma-separated values, found {}",
            fields.len()
        );
    }
    fields
        .iter()
        .map(|f| {
            let v: f64 = f
                .parse()
                .map_err(|_| anyhow::anyhow!("line {lineno}: invalid number '{f}'"))?;
            if !v.is_finite() {
                bail!("line {lineno}: non-finite number '{f}'");
            }
            Ok(v)
        })
        .collect()
}

/// Reads a CSV whose header starts with the given column names and whose
/// rows carry `min..=max` floats.
fn read_table(path: &Path, header_prefix: &str, min: usize, max: usize) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut rows = Vec::new();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim().starts_with(header_prefix) => {}
        Some((_, header)) => bail!(
            "line 1: expected header starting with '{header_prefix}', found '{}'",
            header.trim()
        ),
        None => bail!("empty file"),
    }
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        rows.push(parse_row(line, idx + 1, min, max)?);
    }
    if rows.is_empty() {
        bail!("no data rows");
    }
    Ok(rows)
}

/// `x,re[,im]` rows; a missing imaginary column reads as zero. Used by
/// fit1d; diag accepts a bare `x` column as well.
pub fn read_samples(path: &Path, allow_bare_points: bool) -> Result<Vec<(f64, Complex64)>> {
    let min = if allow_bare_points { 1 } else { 2 };
    let rows = read_table(path, "x", min, 3)?;
    Ok(rows
        .into_iter()
        .map(|row| {
            let re = row.get(1).copied().unwrap_or(0.0);
            let im = row.get(2).copied().unwrap_or(0.0);
            (row[0], Complex64::new(re, im))
        })
        .collect())
}

/// `x,y` boundary rows.
pub fn read_boundary(path: &Path) -> Result<Vec<(f64, f64)>> {
    let rows = read_table(path, "x,y", 2, 2)?;
    Ok(rows.into_iter().map(|row| (row[0], row[1])).collect())
}

/// `u,x,y` rows of one sequence line.
pub fn read_line_samples(path: &Path) -> Result<Vec<(f64, Complex64)>> {
    let rows = read_table(path, "u,x,y", 3, 3)?;
    Ok(rows
        .into_iter()
        .map(|row| (row[0], Complex64::new(row[1], row[2])))
        .collect())
}

/// One positive float per line, no header.
pub fn read_weights(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut weights = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let w: f64 = line
            .parse()
            .map_err(|_| anyhow::anyhow!("line {}: invalid weight '{line}'", idx + 1))?;
        weights.push(w);
    }
    if weights.is_empty() {
        bail!("no weights in file");
    }
    Ok(weights)
}

/// Complex grid evaluation as `x,re,im` rows at `x = j / n`.
pub fn format_complex_grid(values: &[Complex64]) -> String {
    let n = values.len();
    let mut out = String::from("x,re,im\n");
    for (j, v) in values.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", j as f64 / n as f64, v.re, v.im));
    }
    out
}

/// Planar contour as `x,y` rows.
pub fn format_contour_grid(points: &[(f64, f64)]) -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in points {
        out.push_str(&format!("{x},{y}\n"));
    }
    out
}

/// Recovered sequence line as `u,x,y` rows at `u = j / n`.
pub fn format_line_grid(values: &[Complex64]) -> String {
    let n = values.len();
    let mut out = String::from("u,x,y\n");
    for (j, v) in values.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", j as f64 / n as f64, v.re, v.im));
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp_file(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_samples_with_optional_imaginary() {
        let f = temp_file("x,re,im\n0.0,1.0,2.0\n0.5,3.0\n");
        let rows = read_samples(f.path(), false).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].1, Complex64::new(1.0, 2.0));
        assert_eq!(rows[1].1, Complex64::new(3.0, 0.0));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let f = temp_file("x,re,im\n0.0,1.0\nbad,row\n");
        let err = read_samples(f.path(), false).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");

        let f = temp_file("wrong,header\n0,0\n");
        let err = read_samples(f.path(), false).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn rejects_non_finite() {
        let f = temp_file("x,re\n0.0,inf\n");
        assert!(read_samples(f.path(), false).is_err());
    }

    #[test]
    fn grid_formatting_is_stable() {
        let grid = format_complex_grid(&[Complex64::new(1.0, -0.5), Complex64::new(0.25, 2.0)]);
        assert_eq!(grid, "x,re,im\n0,1,-0.5\n0.5,0.25,2\n");
    }
}
