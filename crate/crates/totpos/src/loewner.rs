//! Matrix-order tests for entrywise powers on the encoder pair
//! A = (1 + x_j x_k), B = all-ones: Loewner positivity, monotonicity and
//! convexity sweeps with their integer-or-threshold laws, the perturbation
//! construction that produces an explicit negative quadratic form below the
//! positivity threshold, and entrywise preserver checks on Hankel samples.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{sample_matrix, IncreasingTuple, KernelSpec};
use crate::numerics::{Matrix, Mode, Scalar, ToleranceProfile, Wide};
use crate::tptest::{hankel_tn, TPStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LoewnerProperty {
    Positivity,
    Monotonicity,
    Convexity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Preserved,
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct LoewnerWitness {
    /// The matrix whose smallest eigenvalue went negative.
    pub matrix: Vec<Vec<f64>>,
    /// Convexity combination parameter, when applicable.
    pub lambda: Option<f64>,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LoewnerReport {
    pub property: LoewnerProperty,
    pub n: usize,
    pub alpha: f64,
    pub verdict: Verdict,
    /// What the threshold law (integers always, otherwise α ≥ n−2 / n−1 / n)
    /// says the verdict should be.
    pub predicted: Verdict,
    pub witness: Option<LoewnerWitness>,
}

impl LoewnerReport {
    pub fn agrees(&self) -> bool {
        self.verdict == self.predicted
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    /// True when the float eigenvalue landed inside the zero band and the
    /// verdict came from the extended-precision principal-minor re-run.
    pub refined: bool,
}

fn is_int(alpha: f64) -> bool {
    (alpha - alpha.round()).abs() < 1e-9
}

/// Smallest-eigenvalue PSD test. Verdicts whose smallest eigenvalue falls
/// inside the zero band are re-decided by checking every principal minor in
/// 192-bit arithmetic, so boundary cases (integer powers, rank drops) don't
/// flip on rounding.
pub fn psd_check(matrix: &Matrix, profile: &ToleranceProfile) -> Result<PsdVerdict> {
    if !matrix.is_square() {
        return Err(Error::structural("PSD test requires a square matrix"));
    }
    let m = matrix.to_f64_matrix();
    let norm = m.amax().max(1e-300);
    if (&m - m.transpose()).amax() > profile.rel_eps * norm {
        return Err(Error::structural("PSD test requires a symmetric matrix"));
    }
    let sym = nalgebra::SymmetricEigen::new(m);
    let min_eig = sym.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let band = profile.zero_band * norm * matrix.nrows as f64;
    if min_eig.abs() <= band {
        let psd = wide_psd(matrix);
        return Ok(PsdVerdict { is_psd: psd, min_eigenvalue: min_eig, refined: true });
    }
    Ok(PsdVerdict { is_psd: min_eig >= 0.0, min_eigenvalue: min_eig, refined: false })
}

/// A symmetric matrix is PSD iff all principal minors are nonnegative;
/// checked exhaustively in extended precision (orders here are ≤ 6).
fn wide_psd(matrix: &Matrix) -> bool {
    let n = matrix.nrows;
    let wide = matrix.in_mode(Mode::Extended).expect("extended conversion");
    let scale = matrix.max_abs().max(1.0);
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let det = wide.submatrix(&idx, &idx).det().expect("square minor");
        // 192-bit arithmetic leaves ~1e-50 residue on true zeros.
        if det.value.to_f64() < -1e-30 * scale.powi(idx.len() as i32) {
            return false;
        }
    }
    true
}

fn check_admissible(xs: &[f64]) -> Result<()> {
    let n = xs.len();
    for j in 0..n {
        for k in j + 1..n {
            if xs[j] == xs[k] {
                return Err(Error::domain("coordinates must be pairwise distinct"));
            }
        }
    }
    for j in 0..n {
        for k in 0..n {
            if 1.0 + xs[j] * xs[k] <= 0.0 {
                return Err(Error::domain("need 1 + x_j·x_k > 0 for all pairs"));
            }
        }
    }
    Ok(())
}

/// Build (1 + x_j x_k)^∘α in extended precision. Computing the entries in
/// f64 perturbs rank-deficient PSD matrices by ~1e−16, which is enough to
/// make their smallest eigenvalue genuinely negative; sampling in 192-bit
/// keeps boundary cases (integer powers, α at the threshold) decidable.
fn encoder_power(xs: &[f64], alpha: f64) -> Result<Matrix> {
    let n = xs.len();
    let w = |v: f64| Scalar::Wide(Wide::from_f64(v));
    let mut entries = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let base = w(xs[j]).mul(&w(xs[k])).add(&w(1.0));
            entries.push(base.powf(alpha)?);
        }
    }
    Ok(Matrix::from_fn(n, n, |j, k| entries[j * n + k].clone()))
}

fn to_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows)
        .map(|i| (0..m.ncols).map(|j| m.get(i, j).to_f64()).collect())
        .collect()
}

fn report(
    property: LoewnerProperty,
    n: usize,
    alpha: f64,
    threshold: f64,
    tested: &Matrix,
    lambda: Option<f64>,
    psd: &PsdVerdict,
) -> LoewnerReport {
    let predicted = if is_int(alpha) || alpha >= threshold - 1e-12 {
        Verdict::Preserved
    } else {
        Verdict::Violated
    };
    LoewnerReport {
        property,
        n,
        alpha,
        verdict: if psd.is_psd { Verdict::Preserved } else { Verdict::Violated },
        predicted,
        witness: (!psd.is_psd).then(|| LoewnerWitness {
            matrix: to_rows(tested),
            lambda,
            min_eigenvalue: psd.min_eigenvalue,
        }),
    }
}

/// Is (1 + x_j x_k)^∘α positive semidefinite? Law: yes iff α is a
/// nonnegative integer or α ≥ n−2.
pub fn jain_positivity_test(xs: &[f64], alpha: f64, profile: &ToleranceProfile) -> Result<LoewnerReport> {
    check_admissible(xs)?;
    let a = encoder_power(xs, alpha)?;
    let psd = psd_check(&a, profile)?;
    Ok(report(LoewnerProperty::Positivity, xs.len(), alpha, xs.len() as f64 - 2.0, &a, None, &psd))
}

/// Is A^∘α ≥ B^∘α in the Loewner order for the encoder pair (B = all-ones)?
/// Tests A^∘α − 1_{n×n}; law: α integer or α ≥ n−1.
pub fn jain_monotonicity_test(xs: &[f64], alpha: f64, profile: &ToleranceProfile) -> Result<LoewnerReport> {
    check_admissible(xs)?;
    if xs.iter().any(|&x| x == 0.0) {
        return Err(Error::domain("monotonicity test requires nonzero coordinates"));
    }
    let n = xs.len();
    let a = encoder_power(xs, alpha)?;
    let diff = Matrix::from_fn(n, n, |j, k| {
        let e = a.get(j, k);
        e.sub(&e.one_like())
    });
    let psd = psd_check(&diff, profile)?;
    Ok(report(LoewnerProperty::Monotonicity, n, alpha, n as f64 - 1.0, &diff, None, &psd))
}

/// Midpoint-convexity of x ↦ x^α on the segment [B, A]: checks
/// λ·A^∘α + (1−λ)·B^∘α − (λA + (1−λ)B)^∘α for PSD over the λ grid
/// (default k/16). Law: α integer or α ≥ n.
pub fn jain_convexity_test(
    xs: &[f64],
    alpha: f64,
    lambda_grid: Option<&[f64]>,
    profile: &ToleranceProfile,
) -> Result<LoewnerReport> {
    check_admissible(xs)?;
    if xs.iter().any(|&x| x == 0.0) {
        return Err(Error::domain("convexity test requires nonzero coordinates"));
    }
    let n = xs.len();
    let default_grid: Vec<f64> = (0..=16).map(|k| k as f64 / 16.0).collect();
    let grid = lambda_grid.unwrap_or(&default_grid);
    let mut worst: Option<(f64, Matrix, PsdVerdict)> = None;
    let w = |v: f64| Scalar::Wide(Wide::from_f64(v));
    for &lam in grid {
        // λ·A^∘α + (1−λ)·1 − (λA + (1−λ)·1)^∘α, entry by entry, in
        // extended precision: the entries are small differences of O(1)
        // terms and cancel catastrophically in f64.
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let base = w(xs[j]).mul(&w(xs[k])).add(&w(1.0));
                let mixed = w(lam).mul(&base).add(&w(1.0 - lam));
                entries.push(
                    w(lam)
                        .mul(&base.powf(alpha)?)
                        .add(&w(1.0 - lam))
                        .sub(&mixed.powf(alpha)?),
                );
            }
        }
        let gap = Matrix::from_fn(n, n, |j, k| entries[j * n + k].clone());
        let psd = psd_check(&gap, profile)?;
        let replace = match &worst {
            None => true,
            Some((_, _, w)) => psd.min_eigenvalue < w.min_eigenvalue,
        };
        if replace {
            worst = Some((lam, gap, psd));
        }
    }
    let (lam, gap, psd) = worst.expect("nonempty lambda grid");
    Ok(report(LoewnerProperty::Convexity, n, alpha, n as f64, &gap, Some(lam), &psd))
}

#[derive(Clone, Debug, Serialize)]
pub struct HornWitness {
    pub epsilon: f64,
    pub v: Vec<f64>,
    pub quadratic_form: f64,
}

/// Constructs the explicit negative direction below the positivity
/// threshold: with x = ε(1, …, n) and v orthogonal to the moment vectors
/// 1, x, …, x^∘(⌊α⌋+1) but not to x^∘(⌊α⌋+2), the form
/// vᵀ(1 + x xᵀ)^∘α v goes negative as ε shrinks (its leading term carries
/// the sign of the (⌊α⌋+2)-th binomial coefficient of (1+t)^α).
pub fn horn_counterexample(n: usize, alpha: f64, epsilon: f64) -> Result<HornWitness> {
    if alpha < 0.0 || is_int(alpha) {
        return Err(Error::domain("power must be non-integer and positive"));
    }
    let k = alpha.floor() as usize + 2;
    if k > n - 1 {
        return Err(Error::domain(format!(
            "need floor(alpha)+2 ≤ n−1 (got {} > {})",
            k,
            n - 1
        )));
    }
    let base: Vec<f64> = (1..=n).map(|j| j as f64).collect();
    // Null direction of the moment vectors base^∘0 .. base^∘(k−1); scaling
    // x by ε rescales each moment vector, so v works for every ε.
    // Pad to square so the SVD carries the full right singular basis, then
    // pick the null-space row with the largest overlap with base^∘k.
    let moments = DMatrix::from_fn(n, n, |r, c| if r < k { base[c].powi(r as i32) } else { 0.0 });
    let svd = moments.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors");
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let mut v: Vec<f64> = Vec::new();
    let mut dot_next = 0.0f64;
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > 1e-10 * smax {
            continue;
        }
        let cand: Vec<f64> = v_t.row(i).iter().cloned().collect();
        let dot: f64 = (0..n).map(|j| cand[j] * base[j].powi(k as i32)).sum();
        if dot.abs() > dot_next.abs() {
            v = cand;
            dot_next = dot;
        }
    }
    if dot_next.abs() < 1e-9 {
        return Err(Error::numeric("degenerate null direction"));
    }
    let mut eps = epsilon;
    for _ in 0..200 {
        let x: Vec<f64> = base.iter().map(|b| eps * b).collect();
        let form: f64 = (0..n)
            .flat_map(|j| (0..n).map(move |l| (j, l)))
            .map(|(j, l)| v[j] * v[l] * (1.0 + x[j] * x[l]).powf(alpha))
            .sum();
        if form < 0.0 {
            return Ok(HornWitness { epsilon: eps, v, quadratic_form: form });
        }
        eps /= 2.0;
    }
    Err(Error::numeric("quadratic form did not turn negative within the iteration cap"))
}

#[derive(Clone, Debug, Serialize)]
pub struct HankelPreserverReport {
    pub preserved: bool,
    /// (grid index, order-p classification) of the first failing sample.
    pub violation: Option<(usize, TPStatus)>,
    /// For coefficient patterns with exactly one negative slot: the largest
    /// magnitude of that coefficient that still preserved every sampled
    /// test (bisection against the Hankel criterion).
    pub critical_coefficient: Option<f64>,
}

/// Arithmetic-progression sample grid for Hankel preserver tests.
#[derive(Clone, Copy, Debug)]
pub struct ProgressionGrid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

fn apply_poly_entrywise(m: &Matrix, coeffs: &[f64]) -> Matrix {
    Matrix::from_fn(m.nrows, m.ncols, |i, j| {
        let x = m.get(i, j).to_f64();
        let mut acc = 0.0;
        for &c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        Scalar::Float(acc)
    })
}

fn preserved_on_grids(
    coeffs: &[f64],
    p: usize,
    kernel: &KernelSpec,
    grids: &[ProgressionGrid],
    profile: &ToleranceProfile,
) -> Result<Option<(usize, TPStatus)>> {
    for (gi, g) in grids.iter().enumerate() {
        let pts: Vec<f64> = (0..g.len).map(|j| g.start + g.step * j as f64).collect();
        let t = IncreasingTuple::from_f64s(&pts)?;
        let h = sample_matrix(kernel, &t, &t)?;
        let fh = apply_poly_entrywise(&h, coeffs);
        let c = hankel_tn(&fh, p.min(g.len), profile)?;
        if c.status == TPStatus::NotTN {
            return Ok(Some((gi, c.status)));
        }
    }
    Ok(None)
}

/// Applies a polynomial entrywise to Hankel kernel samples on
/// arithmetic-progression tuples and tests order-p nonnegativity. When the
/// coefficient list has exactly one negative entry, additionally bisects
/// for the largest magnitude of that entry that keeps every sampled test
/// nonnegative.
pub fn hankel_preserver_test(
    coeffs: &[f64],
    p: usize,
    kernel: &KernelSpec,
    grids: &[ProgressionGrid],
    profile: &ToleranceProfile,
) -> Result<HankelPreserverReport> {
    if coeffs.is_empty() {
        return Err(Error::usage("empty coefficient list"));
    }
    let violation = preserved_on_grids(coeffs, p, kernel, grids, profile)?;

    let neg_slots: Vec<usize> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c < 0.0)
        .map(|(i, _)| i)
        .collect();
    let critical_coefficient = if neg_slots.len() == 1 {
        let m = neg_slots[0];
        let ok = |mag: f64| -> Result<bool> {
            let mut cs = coeffs.to_vec();
            cs[m] = -mag;
            Ok(preserved_on_grids(&cs, p, kernel, grids, profile)?.is_none())
        };
        // Grow an upper bracket that fails, then bisect.
        let mut lo = 0.0f64;
        let mut hi = coeffs[m].abs().max(1e-6);
        let mut grew = 0;
        while ok(hi)? && grew < 60 {
            lo = hi;
            hi *= 2.0;
            grew += 1;
        }
        if grew == 60 {
            None // preserved at every magnitude we tried
        } else {
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if ok(mid)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(lo)
        }
    } else {
        None
    };

    Ok(HankelPreserverReport {
        preserved: violation.is_none(),
        violation,
        critical_coefficient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelVariant;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn psd_basics() {
        let id = Matrix::from_fn(3, 3, |i, j| Scalar::from_int((i == j) as i64));
        assert!(psd_check(&id, &tol()).unwrap().is_psd);
        let m = Matrix::from_fn(2, 2, |i, j| Scalar::from_int(if i == j { 1 } else { 2 }));
        let v = psd_check(&m, &tol()).unwrap();
        assert!(!v.is_psd);
        assert!((v.min_eigenvalue + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_two_boundary_is_refined_to_psd() {
        // (1 + x_j x_k) is rank two: two zero eigenvalues land in the band.
        let xs = [1.0, 2.0, 3.0];
        let a = encoder_power(&xs, 1.0).unwrap();
        let v = psd_check(&a, &tol()).unwrap();
        assert!(v.is_psd);
    }

    #[test]
    fn positivity_threshold_examples() {
        let r = jain_positivity_test(&[0.1, 0.2, 0.3], 0.5, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.agrees());
        let r = jain_positivity_test(&[1.0, 2.0, 3.0, 4.0], 2.5, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Preserved);
        assert!(r.agrees());
        let r = jain_positivity_test(&[1.0, 2.0, 3.0], 1.0, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Preserved);
    }

    #[test]
    fn monotonicity_and_convexity_examples() {
        let r = jain_monotonicity_test(&[0.1, 0.2, 0.3], 1.5, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.agrees());
        let r = jain_monotonicity_test(&[0.1, 0.2, 0.3], 2.5, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Preserved);

        let r = jain_convexity_test(&[1.0, 2.0], 2.0, None, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Preserved);
        let r = jain_convexity_test(&[0.1, 0.2], 1.5, None, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.witness.unwrap().lambda.is_some());
    }

    #[test]
    fn horn_direction_goes_negative() {
        let w = horn_counterexample(3, 0.5, 1.0).unwrap();
        assert!(w.quadratic_form < 0.0);
        let w = horn_counterexample(4, 1.5, 1.0).unwrap();
        assert!(w.quadratic_form < 0.0);
        assert!(horn_counterexample(3, 1.0, 1.0).is_err());
        assert!(horn_counterexample(3, 1.5, 1.0).is_err()); // needs n ≥ 4
    }

    #[test]
    fn nonneg_coefficients_preserve_hankel_tn() {
        let kernel = KernelSpec::new(KernelVariant::HankelRankTwo { a0: 1.0, c0: 1.0, u0: 2.0 }).unwrap();
        let grids = [
            ProgressionGrid { start: 0.0, step: 0.5, len: 4 },
            ProgressionGrid { start: -1.0, step: 1.0, len: 4 },
        ];
        let r = hankel_preserver_test(&[1.0, 1.0, 1.0], 3, &kernel, &grids, &tol()).unwrap();
        assert!(r.preserved);
        assert!(r.critical_coefficient.is_none());
    }

    #[test]
    fn single_negative_slot_has_finite_critical_magnitude() {
        let kernel = KernelSpec::new(KernelVariant::HankelRankTwo { a0: 1.0, c0: 1.0, u0: 2.0 }).unwrap();
        let grids = [ProgressionGrid { start: 0.0, step: 0.5, len: 3 }];
        // 1 + x − c·x² + x³ + x⁴ pattern: some magnitude must break order 2.
        let r = hankel_preserver_test(&[1.0, 1.0, -1e6, 1.0, 1.0], 2, &kernel, &grids, &tol()).unwrap();
        assert!(!r.preserved);
        let c = r.critical_coefficient.expect("bisection ran");
        assert!(c > 0.0 && c < 1e6);
        // Just inside the critical magnitude the tests pass again.
        let r2 = hankel_preserver_test(&[1.0, 1.0, -c * 0.99, 1.0, 1.0], 2, &kernel, &grids, &tol()).unwrap();
        assert!(r2.preserved);
    }
}
