//! Randomized invariants, checked with exact rational arithmetic wherever a
//! statement is exact: determinant algebra, oracle equivalence between the
//! contiguous-minor shortcut and the full minor scan, translation invariance
//! of difference kernels, and symmetry transformations that preserve total
//! positivity.

use proptest::collection::vec;
use proptest::prelude::*;

use totpos::kernels::{sample_matrix, IncreasingTuple, KernelSpec, KernelVariant};
use totpos::numerics::{Matrix, Scalar, ToleranceProfile};
use totpos::tptest::{fekete_tp, hankel_tn, minor_scan, observed_signature, predicted_signature, TPStatus};

fn profile() -> ToleranceProfile {
    ToleranceProfile::default()
}

/// Strategy: an n×n matrix of small exact rationals k/4, k ∈ [-24, 24].
fn rational_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    vec(-24i64..=24, n * n)
        .prop_map(move |nums| Matrix::from_fn(n, n, |i, j| Scalar::ratio(nums[i * n + j], 4)))
}

/// Strategy: a strictly increasing tuple of distinct rationals k/8.
fn rational_tuple(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IncreasingTuple> {
    vec(lo..=hi, 4 * n)
        .prop_filter_map("need n distinct values", move |ks| {
            let mut seen: Vec<i64> = Vec::new();
            for k in ks {
                if !seen.contains(&k) {
                    seen.push(k);
                }
                if seen.len() == n {
                    seen.sort_unstable();
                    let pairs: Vec<(i64, i64)> = seen.iter().map(|&k| (k, 8)).collect();
                    return IncreasingTuple::from_ratios(&pairs).ok();
                }
            }
            None
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// det Aᵀ = det A, exactly.
    #[test]
    fn determinant_is_transpose_invariant(m in (2usize..=5).prop_flat_map(rational_matrix)) {
        let d = m.det().unwrap().value;
        let dt = m.transpose().det().unwrap().value;
        prop_assert!(d.sub(&dt).is_zero());
    }

    /// Scaling one row by a positive rational scales the determinant by it.
    #[test]
    fn determinant_scales_with_a_row(
        m in (2usize..=4).prop_flat_map(rational_matrix),
        row in 0usize..4,
        num in 1i64..=9,
    ) {
        let row = row % m.nrows;
        let c = Scalar::ratio(num, 3);
        let scaled = Matrix::from_fn(m.nrows, m.ncols, |i, j| {
            if i == row { m.get(i, j).mul(&c) } else { m.get(i, j).clone() }
        });
        let lhs = scaled.det().unwrap().value;
        let rhs = m.det().unwrap().value.mul(&c);
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    /// The contiguous-minor criterion and the full minor scan give the same
    /// total-positivity verdict on arbitrary exact matrices.
    #[test]
    fn contiguous_minors_decide_total_positivity(m in (2usize..=4).prop_flat_map(rational_matrix)) {
        let p = m.nrows;
        let fast = fekete_tp(&m, p, &profile()).unwrap();
        let full = minor_scan(&m, p, &profile()).unwrap();
        prop_assert_eq!(fast.status == TPStatus::TP, full.status == TPStatus::TP);
    }

    /// Moment matrices of finitely-atomic nonnegative measures pass the
    /// Hankel nonnegativity oracle and the full scan alike.
    #[test]
    fn moment_matrices_are_totally_nonnegative(
        atoms in vec((1i64..=16, 0i64..=8), 1..=3),
        n in 2usize..=4,
    ) {
        let moment = |j: usize| -> Scalar {
            let mut acc = Scalar::from_int(0);
            for &(u, w) in &atoms {
                acc = acc.add(&Scalar::ratio(w, 4).mul(&Scalar::ratio(u, 8).powi(j as u32)));
            }
            acc
        };
        let h = Matrix::from_fn(n, n, |i, j| moment(i + j));
        let fast = hankel_tn(&h, n, &profile()).unwrap();
        let full = minor_scan(&h, n, &profile()).unwrap();
        prop_assert!(fast.is_tn());
        prop_assert!(full.is_tn());
    }

    /// Difference kernels are translation invariant: shifting both tuples by
    /// the same rational leaves every sample (hence every minor) unchanged.
    #[test]
    fn difference_kernel_samples_are_shift_invariant(
        xs in rational_tuple(3, -16, 16),
        ys in rational_tuple(3, -16, 16),
        shift_num in -12i64..=12,
    ) {
        let spec = KernelSpec::new(KernelVariant::Heaviside { d: Scalar::ratio(1, 2) }).unwrap();
        let shift = Scalar::ratio(shift_num, 8);
        let shifted = |t: &IncreasingTuple| {
            IncreasingTuple::new(t.coords().iter().map(|c| c.add(&shift)).collect()).unwrap()
        };
        let a = sample_matrix(&spec, &xs, &ys).unwrap();
        let b = sample_matrix(&spec, &shifted(&xs), &shifted(&ys)).unwrap();
        for i in 0..a.nrows {
            for j in 0..a.ncols {
                prop_assert!(a.get(i, j).sub(b.get(i, j)).is_zero());
            }
        }
    }

    /// Positive diagonal scaling D₁ A D₂ preserves the TP verdict.
    #[test]
    fn diagonal_scaling_preserves_total_positivity(
        m in (2usize..=4).prop_flat_map(rational_matrix),
        d1 in vec(1i64..=9, 4),
        d2 in vec(1i64..=9, 4),
    ) {
        let n = m.nrows;
        let scaled = Matrix::from_fn(n, n, |i, j| {
            m.get(i, j).mul(&Scalar::ratio(d1[i], 2)).mul(&Scalar::ratio(d2[j], 2))
        });
        let before = minor_scan(&m, n, &profile()).unwrap();
        let after = minor_scan(&scaled, n, &profile()).unwrap();
        prop_assert_eq!(before.status, after.status);
    }

    /// Reversing both row and column order preserves the TP verdict.
    #[test]
    fn row_and_column_reversal_preserves_total_positivity(
        m in (2usize..=4).prop_flat_map(rational_matrix),
    ) {
        let n = m.nrows;
        let rev = Matrix::from_fn(n, n, |i, j| m.get(n - 1 - i, n - 1 - j).clone());
        let before = minor_scan(&m, n, &profile()).unwrap();
        let after = minor_scan(&rev, n, &profile()).unwrap();
        prop_assert_eq!(before.status, after.status);
    }

    /// Rank is transpose invariant.
    #[test]
    fn rank_is_transpose_invariant(m in (2usize..=5).prop_flat_map(rational_matrix)) {
        prop_assert_eq!(m.rank(1e-9), m.transpose().rank(1e-9));
    }

    /// For integer powers the predicted per-order minor signature matches
    /// the observed one on exact rational tuples.
    #[test]
    fn integer_power_signature_matches_prediction(
        xs in rational_tuple(4, 1, 48),
        alpha in 0u32..=3,
    ) {
        let spec = KernelSpec::powered(KernelVariant::Jks, f64::from(alpha)).unwrap();
        let m = sample_matrix(&spec, &xs, &xs).unwrap();
        let predicted = predicted_signature(4, f64::from(alpha));
        let observed = observed_signature(&m, &profile()).unwrap();
        prop_assert_eq!(predicted, observed);
    }
}
