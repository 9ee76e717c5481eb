//! Total-nonnegativity / total-positivity testers: brute-force minor scans,
//! the contiguous-minor (Fekete) shortcut for full matrices, the truncation
//! criterion for Hankel matrices, per-order sign signatures with the
//! predicted sign table for powered hinge-kernel samples, and the
//! log-concavity characterization of order-2 nonnegativity.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Matrix, Sign3, ToleranceProfile};

#[derive(Clone, Debug, Serialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: crate::numerics::Scalar,
    pub sign: Sign3,
    /// True when a float value landed inside the zero band, so the verdict
    /// may need an exact- or extended-mode re-run.
    pub tolerance_limited: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TPStatus {
    /// All minors of order ≤ p strictly positive.
    TP,
    /// All nonnegative, at least one zero.
    TNNotTP,
    /// Some minor negative.
    NotTN,
}

#[derive(Clone, Debug, Serialize)]
pub struct TPClassification {
    pub status: TPStatus,
    pub order: usize,
    pub witness: Option<MinorWitness>,
    pub tolerance_limited: bool,
}

impl TPClassification {
    pub fn is_tn(&self) -> bool {
        self.status != TPStatus::NotTN
    }
}

/// Per-order common minor signs, entries in {−1, 0, +1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignSignature(pub Vec<i8>);

/// Two same-order minors with strictly opposite signs: the matrix is not
/// sign regular.
#[derive(Clone, Debug, Serialize)]
pub struct SignConflict {
    pub order: usize,
    pub first: MinorWitness,
    pub second: MinorWitness,
}

impl From<SignConflict> for Error {
    fn from(c: SignConflict) -> Error {
        Error::numeric(format!(
            "sign-regularity violation at order {}: minors {:?}/{:?} vs {:?}/{:?}",
            c.order, c.first.rows, c.first.cols, c.second.rows, c.second.cols
        ))
    }
}

fn minor_witness(
    matrix: &Matrix,
    rows: &[usize],
    cols: &[usize],
    profile: &ToleranceProfile,
) -> Result<MinorWitness> {
    let det = matrix.submatrix(rows, cols).det()?;
    let sign = profile.sign3(&det.value, det.magnitude);
    let tolerance_limited = !det.value.is_exact()
        && sign == Sign3::Zero
        && det.value.to_f64() != 0.0;
    Ok(MinorWitness {
        rows: rows.to_vec(),
        cols: cols.to_vec(),
        value: det.value,
        sign,
        tolerance_limited,
    })
}

/// Scans every minor of order 1..=p in lexicographic (order, rows, cols)
/// order. Returns the first negative witness if any minor is negative,
/// otherwise the first zero witness, otherwise a TP verdict.
pub fn minor_scan(matrix: &Matrix, p: usize, profile: &ToleranceProfile) -> Result<TPClassification> {
    if p == 0 || p > matrix.nrows.min(matrix.ncols) {
        return Err(Error::structural(format!(
            "order {p} out of range for a {}x{} matrix",
            matrix.nrows, matrix.ncols
        )));
    }
    let mut first_zero: Option<MinorWitness> = None;
    let mut tolerance_limited = false;
    for r in 1..=p {
        for rows in (0..matrix.nrows).combinations(r) {
            for cols in (0..matrix.ncols).combinations(r) {
                let w = minor_witness(matrix, &rows, &cols, profile)?;
                tolerance_limited |= w.tolerance_limited;
                match w.sign {
                    Sign3::Negative => {
                        return Ok(TPClassification {
                            status: TPStatus::NotTN,
                            order: p,
                            tolerance_limited: w.tolerance_limited,
                            witness: Some(w),
                        })
                    }
                    Sign3::Zero if first_zero.is_none() => first_zero = Some(w),
                    _ => {}
                }
            }
        }
    }
    Ok(match first_zero {
        Some(w) => TPClassification {
            status: TPStatus::TNNotTP,
            order: p,
            witness: Some(w),
            tolerance_limited,
        },
        None => TPClassification { status: TPStatus::TP, order: p, witness: None, tolerance_limited },
    })
}

/// Fekete's criterion: a full matrix is TP_p iff every *contiguous* minor
/// of order ≤ p is positive — O(n²·p) minors instead of exponentially many.
/// Only the TP verdict is decided; a failing contiguous minor is returned
/// as the witness.
pub fn fekete_tp(matrix: &Matrix, p: usize, profile: &ToleranceProfile) -> Result<TPClassification> {
    if p == 0 || p > matrix.nrows.min(matrix.ncols) {
        return Err(Error::structural("order out of range"));
    }
    for r in 1..=p {
        for i in 0..=matrix.nrows - r {
            for j in 0..=matrix.ncols - r {
                let rows: Vec<usize> = (i..i + r).collect();
                let cols: Vec<usize> = (j..j + r).collect();
                let w = minor_witness(matrix, &rows, &cols, profile)?;
                if w.sign != Sign3::Positive {
                    return Ok(TPClassification {
                        status: if w.sign == Sign3::Negative { TPStatus::NotTN } else { TPStatus::TNNotTP },
                        order: p,
                        tolerance_limited: w.tolerance_limited,
                        witness: Some(w),
                    });
                }
            }
        }
    }
    Ok(TPClassification { status: TPStatus::TP, order: p, witness: None, tolerance_limited: false })
}

fn validate_hankel(matrix: &Matrix, profile: &ToleranceProfile) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::structural("Hankel test requires a square matrix"));
    }
    let n = matrix.nrows;
    let scale = matrix.max_abs().max(1.0);
    for i in 0..n {
        for j in 0..n {
            if i + 1 < n && j > 0 {
                let a = matrix.get(i, j);
                let b = matrix.get(i + 1, j - 1);
                let ok = if a.is_exact() && b.is_exact() {
                    a.sub(b).is_zero()
                } else {
                    (a.to_f64() - b.to_f64()).abs() <= profile.rel_eps * scale
                };
                if !ok {
                    return Err(Error::structural("matrix is not Hankel (entries must depend on row+col)"));
                }
            }
        }
    }
    Ok(())
}

/// Hankel truncation criterion: a Hankel matrix A is TN_p (resp. TP_p) iff
/// every contiguous *principal* minor of order ≤ p of A, and of the
/// truncation A^(1) (A with first row and last column removed), is ≥ 0
/// (resp. > 0). The A^(1) windows are the (rows j+1..j+r, cols j..j+r)
/// blocks of A.
pub fn hankel_tn(matrix: &Matrix, p: usize, profile: &ToleranceProfile) -> Result<TPClassification> {
    validate_hankel(matrix, profile)?;
    let n = matrix.nrows;
    if p == 0 || p > n {
        return Err(Error::structural("order out of range"));
    }
    let mut first_zero: Option<MinorWitness> = None;
    let mut tolerance_limited = false;
    for r in 1..=p {
        for j in 0..=n - r {
            let rows: Vec<usize> = (j..j + r).collect();
            let w = minor_witness(matrix, &rows, &rows, profile)?;
            tolerance_limited |= w.tolerance_limited;
            match w.sign {
                Sign3::Negative => {
                    return Ok(TPClassification {
                        status: TPStatus::NotTN,
                        order: p,
                        tolerance_limited: w.tolerance_limited,
                        witness: Some(w),
                    })
                }
                Sign3::Zero if first_zero.is_none() => first_zero = Some(w),
                _ => {}
            }
            // Same window one row down: principal minor of the truncation.
            if j + r < n {
                let shifted: Vec<usize> = (j + 1..j + r + 1).collect();
                let cols: Vec<usize> = (j..j + r).collect();
                let w = minor_witness(matrix, &shifted, &cols, profile)?;
                tolerance_limited |= w.tolerance_limited;
                match w.sign {
                    Sign3::Negative => {
                        return Ok(TPClassification {
                            status: TPStatus::NotTN,
                            order: p,
                            tolerance_limited: w.tolerance_limited,
                            witness: Some(w),
                        })
                    }
                    Sign3::Zero if first_zero.is_none() => first_zero = Some(w),
                    _ => {}
                }
            }
        }
    }
    Ok(match first_zero {
        Some(w) => TPClassification {
            status: TPStatus::TNNotTP,
            order: p,
            witness: Some(w),
            tolerance_limited,
        },
        None => TPClassification { status: TPStatus::TP, order: p, witness: None, tolerance_limited },
    })
}

/// Predicted per-order minor signs for the α-th entrywise power of an
/// admissible sample (1 + x_j y_k): order p gets
///   0                     if α ∈ {0, …, p−2}        (rank α+1 collapse),
///   +1                    if α > p−2,
///   (−1)^{⌊p/2⌋}·ε_{p,α}  otherwise, where for non-integer α < p−2 with
///   α ∈ (2s, 2s+1): ε = (−1)^{p−s+1}; α ∈ (2s+1, 2s+2): ε = (−1)^{s+1}.
pub fn predicted_signature(n: usize, alpha: f64) -> SignSignature {
    let is_int = alpha.fract() == 0.0;
    let signs = (1..=n)
        .map(|p| {
            let pm2 = p as f64 - 2.0;
            if is_int && alpha <= pm2 {
                0i8
            } else if alpha > pm2 {
                1
            } else {
                let s = (alpha / 2.0).floor() as i32;
                let eps: i32 = if alpha < 2.0 * s as f64 + 1.0 {
                    // α ∈ (2s, 2s+1)
                    if (p as i32 - s + 1) % 2 == 0 { 1 } else { -1 }
                } else {
                    // α ∈ (2s+1, 2s+2)
                    if (s + 1) % 2 == 0 { 1 } else { -1 }
                };
                let prefactor: i32 = if (p / 2) % 2 == 0 { 1 } else { -1 };
                (prefactor * eps) as i8
            }
        })
        .collect();
    SignSignature(signs)
}

/// Classifies every p×p minor for each order p of a square matrix and
/// reports the common sign per order. Orders whose minors carry both
/// strict signs yield a [`SignConflict`].
pub fn observed_signature(
    matrix: &Matrix,
    profile: &ToleranceProfile,
) -> std::result::Result<SignSignature, Box<SignConflict>> {
    assert!(matrix.is_square(), "observed_signature requires a square matrix");
    let n = matrix.nrows;
    let mut signs = Vec::with_capacity(n);
    for p in 1..=n {
        let mut pos: Option<MinorWitness> = None;
        let mut neg: Option<MinorWitness> = None;
        for rows in (0..n).combinations(p) {
            for cols in (0..n).combinations(p) {
                let w = minor_witness(matrix, &rows, &cols, &profile.clone())
                    .expect("square submatrix determinant");
                match w.sign {
                    Sign3::Positive if pos.is_none() => pos = Some(w),
                    Sign3::Negative if neg.is_none() => neg = Some(w),
                    _ => {}
                }
                if let (Some(a), Some(b)) = (&pos, &neg) {
                    return Err(Box::new(SignConflict {
                        order: p,
                        first: a.clone(),
                        second: b.clone(),
                    }));
                }
            }
        }
        signs.push(if pos.is_some() {
            1
        } else if neg.is_some() {
            -1
        } else {
            0
        });
    }
    Ok(SignSignature(signs))
}

#[derive(Clone, Debug, Serialize)]
pub enum LogConcavityVerdict {
    Consistent,
    /// Positivity set of the sample is not an interval of indices.
    SupportGap { index: usize },
    /// Λ(x_j)² < Λ(x_{j−1})·Λ(x_{j+1}) on an equispaced triple.
    ConcavityViolation { index: usize, lhs: f64, rhs: f64 },
}

/// Order-2 nonnegativity of a translation kernel is equivalent to the
/// profile being positive on an interval with log-concave values; this
/// checks both on a sorted sample, using only equispaced triples for the
/// midpoint-concavity test.
pub fn tn2_logconcavity(samples: &[(f64, f64)]) -> Result<LogConcavityVerdict> {
    if samples.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::structural("samples must be sorted by x with distinct abscissas"));
    }
    if samples.iter().any(|&(_, v)| v < 0.0) {
        return Err(Error::domain("sample values must be nonnegative"));
    }
    let first_pos = samples.iter().position(|&(_, v)| v > 0.0);
    let last_pos = samples.iter().rposition(|&(_, v)| v > 0.0);
    if let (Some(a), Some(b)) = (first_pos, last_pos) {
        if let Some(gap) = (a..=b).find(|&i| samples[i].1 == 0.0) {
            return Ok(LogConcavityVerdict::SupportGap { index: gap });
        }
    }
    for j in 1..samples.len().saturating_sub(1) {
        let (x0, v0) = samples[j - 1];
        let (x1, v1) = samples[j];
        let (x2, v2) = samples[j + 1];
        let h1 = x1 - x0;
        let h2 = x2 - x1;
        if (h1 - h2).abs() > 1e-9 * h1.max(h2) {
            continue;
        }
        let lhs = v1 * v1;
        let rhs = v0 * v2;
        if lhs < rhs * (1.0 - 1e-12) - 1e-300 {
            return Ok(LogConcavityVerdict::ConcavityViolation { index: j, lhs, rhs });
        }
    }
    Ok(LogConcavityVerdict::Consistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{sample_matrix, IncreasingTuple, KernelSpec, KernelVariant};
    use crate::numerics::{Mode, Scalar};

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn ones(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |_, _| Scalar::from_int(1))
    }

    #[test]
    fn minor_scan_small_cases() {
        let c = minor_scan(&ones(2), 2, &tol()).unwrap();
        assert_eq!(c.status, TPStatus::TNNotTP);
        assert!(c.witness.unwrap().value.is_zero());

        let m = Matrix::from_fn(2, 2, |i, j| Scalar::from_int([[1, 1], [1, 2]][i][j]));
        assert_eq!(minor_scan(&m, 2, &tol()).unwrap().status, TPStatus::TP);
        assert_eq!(fekete_tp(&m, 2, &tol()).unwrap().status, TPStatus::TP);
    }

    #[test]
    fn hinge_sample_fails_order_four() {
        let xs = IncreasingTuple::from_ratios(&[(-1, 1), (-1, 2), (1, 2), (1, 1)]).unwrap();
        let ys = IncreasingTuple::from_ints(&[-2, -1, 1, 2]).unwrap();
        let m = sample_matrix(&KernelSpec::new(KernelVariant::Jks).unwrap(), &xs, &ys).unwrap();
        let c = minor_scan(&m, 4, &tol()).unwrap();
        assert_eq!(c.status, TPStatus::NotTN);
        assert_eq!(c.witness.unwrap().value.to_f64(), -2.0);
        let f = fekete_tp(&m, 4, &tol()).unwrap();
        assert_ne!(f.status, TPStatus::TP);
    }

    #[test]
    fn gaussian_sample_is_tp() {
        let t = IncreasingTuple::from_ints(&[0, 1, 2]).unwrap();
        let m = sample_matrix(&KernelSpec::new(KernelVariant::Gaussian).unwrap(), &t, &t).unwrap();
        assert_eq!(minor_scan(&m, 3, &tol()).unwrap().status, TPStatus::TP);
        assert_eq!(fekete_tp(&m, 3, &tol()).unwrap().status, TPStatus::TP);
    }

    #[test]
    fn hankel_truncation_criterion() {
        // Moment matrix of δ₁ + δ₂ at powers 0..4: rank 2, TN₃ but not TP₃.
        let mom = |k: usize| Scalar::from_int((1i64 << k as u32) + 1); // 1^k + 2^k
        let m = Matrix::from_fn(3, 3, |i, j| mom(i + j));
        let c = hankel_tn(&m, 3, &tol()).unwrap();
        assert_eq!(c.status, TPStatus::TNNotTP);
        assert_eq!(minor_scan(&m, 3, &tol()).unwrap().status, TPStatus::TNNotTP);

        let o = hankel_tn(&ones(3), 3, &tol()).unwrap();
        assert_eq!(o.status, TPStatus::TNNotTP);

        assert!(hankel_tn(&Matrix::from_fn(2, 2, |i, _| Scalar::from_int(i as i64)), 2, &tol()).is_err());
    }

    #[test]
    fn hankel_rank_two_kernel_is_tp2() {
        let spec = KernelSpec::new(KernelVariant::HankelRankTwo { a0: 1.0, c0: 1.0, u0: 2.0 }).unwrap();
        let t = IncreasingTuple::from_ints(&[0, 1, 2]).unwrap();
        let m = sample_matrix(&spec, &t, &t).unwrap();
        assert_eq!(hankel_tn(&m, 2, &tol()).unwrap().status, TPStatus::TP);
    }

    #[test]
    fn predicted_signature_table() {
        assert_eq!(predicted_signature(3, 4.0).0, vec![1, 1, 1]);
        assert_eq!(predicted_signature(3, 1.0).0, vec![1, 1, 0]);
        assert_eq!(predicted_signature(3, 0.5).0, vec![1, 1, -1]);
        assert_eq!(predicted_signature(4, 0.0).0, vec![1, 0, 0, 0]);
    }

    #[test]
    fn observed_matches_predicted_on_small_sample() {
        let xs = IncreasingTuple::from_f64s(&[0.1, 0.2, 0.3]).unwrap();
        let spec = KernelSpec::powered(KernelVariant::Jks, 0.5).unwrap();
        let m = sample_matrix(&spec, &xs, &xs).unwrap();
        let sig = observed_signature(&m, &tol()).unwrap();
        assert_eq!(sig, predicted_signature(3, 0.5));

        let sig1 = observed_signature(&ones(3), &tol()).unwrap();
        assert_eq!(sig1.0, vec![1, 0, 0]);
    }

    #[test]
    fn signature_exact_mode_on_integer_power() {
        let xs = IncreasingTuple::from_ratios(&[(1, 10), (2, 10), (3, 10), (4, 10)]).unwrap();
        let spec = KernelSpec::powered(KernelVariant::Jks, 3.0).unwrap();
        let m = sample_matrix(&spec, &xs, &xs).unwrap();
        assert!(m.is_exact());
        let sig = observed_signature(&m, &tol()).unwrap();
        assert_eq!(sig, predicted_signature(4, 3.0));
        let f = m.in_mode(Mode::Float).unwrap();
        assert_eq!(observed_signature(&f, &tol()).unwrap(), sig);
    }

    #[test]
    fn logconcavity_checks() {
        let omega: Vec<(f64, f64)> = (1..=10).map(|k| {
            let x = 0.5 * k as f64;
            (x, x * (-x).exp())
        }).collect();
        assert!(matches!(tn2_logconcavity(&omega).unwrap(), LogConcavityVerdict::Consistent));

        let m: Vec<(f64, f64)> = (-8..=8).map(|k| {
            let x = 0.25 * k as f64;
            (x, 2.0 * (-x.abs()).exp() - (-2.0 * x.abs()).exp())
        }).collect();
        assert!(matches!(tn2_logconcavity(&m).unwrap(), LogConcavityVerdict::Consistent));

        let gap = [(-2.0, 1.0), (-1.0, 1.0), (0.0, 0.0), (1.0, 1.0), (2.0, 1.0)];
        assert!(matches!(
            tn2_logconcavity(&gap).unwrap(),
            LogConcavityVerdict::SupportGap { index: 2 }
        ));
    }
}
