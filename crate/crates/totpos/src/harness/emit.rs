//! Matrix dumps: CSV with 17 significant decimal digits, or JSON where
//! exact rational entries render as "num/den" strings.

use crate::error::Result;
use crate::kernels::{sample_matrix, IncreasingTuple, KernelSpec};
use crate::numerics::Matrix;

/// Renders a float with 17 significant digits, enough to round-trip f64.
fn fmt17(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        // Integral values print plainly so exact samples stay readable.
        format!("{v}")
    } else {
        format!("{v:.16e}")
    }
}

pub fn matrix_to_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for j in 0..m.nrows {
        let row: Vec<String> = (0..m.ncols).map(|k| fmt17(m.get(j, k).to_f64())).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_to_json(m: &Matrix) -> Result<String> {
    let rows: Vec<Vec<&crate::numerics::Scalar>> =
        (0..m.nrows).map(|j| (0..m.ncols).map(|k| m.get(j, k)).collect()).collect();
    Ok(serde_json::to_string_pretty(&rows)?)
}

/// Samples the kernel at the given tuples and renders it in the requested
/// format ("csv" or "json").
pub fn emit_matrix(
    spec: &KernelSpec,
    xs: &IncreasingTuple,
    ys: &IncreasingTuple,
    format: super::OutputFormat,
) -> Result<String> {
    let m = sample_matrix(spec, xs, ys)?;
    match format {
        super::OutputFormat::Csv => Ok(matrix_to_csv(&m)),
        super::OutputFormat::Json => matrix_to_json(&m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelVariant;
    use crate::numerics::Scalar;

    #[test]
    fn hinge_sample_renders_integer_csv() {
        let spec = KernelSpec::new(KernelVariant::Jks).unwrap();
        let xs = IncreasingTuple::from_ratios(&[(-1, 1), (-1, 2), (1, 2), (1, 1)]).unwrap();
        let ys = IncreasingTuple::from_ints(&[-2, -1, 1, 2]).unwrap();
        let csv = emit_matrix(&spec, &xs, &ys, crate::harness::OutputFormat::Csv).unwrap();
        let first = csv.lines().next().unwrap();
        assert_eq!(first, "3,2,0,0");
    }

    #[test]
    fn exact_entries_render_as_fractions_in_json() {
        let spec = KernelSpec::new(KernelVariant::Heaviside { d: Scalar::ratio(1, 2) }).unwrap();
        let xs = IncreasingTuple::from_ints(&[0, 1]).unwrap();
        let ys = IncreasingTuple::from_ints(&[0, 1]).unwrap();
        let json = emit_matrix(&spec, &xs, &ys, crate::harness::OutputFormat::Json).unwrap();
        assert!(json.contains("\"1/2\""), "{json}");
    }

    #[test]
    fn float_csv_has_full_precision() {
        let spec = KernelSpec::new(KernelVariant::Gaussian).unwrap();
        let xs = IncreasingTuple::from_f64s(&[0.0, 0.5, 1.0]).unwrap();
        let ys = xs.clone();
        let csv = emit_matrix(&spec, &xs, &ys, crate::harness::OutputFormat::Csv).unwrap();
        let cell = csv.lines().next().unwrap().split(',').nth(1).unwrap();
        let back: f64 = cell.parse().unwrap();
        assert_eq!(back, (-0.25f64).exp());
    }
}
