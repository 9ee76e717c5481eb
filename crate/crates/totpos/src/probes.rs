//! Critical-exponent witnesses and falsifiable checks: the entrywise-power
//! trichotomy on hinge-kernel samples, shift/scale witnesses showing the
//! same constant works for every bad power, a Descartes-style zero counter
//! for power sums, linear and piecewise-linear homotopies with certified
//! positivity constants, the largest-minor characterization check, and the
//! order-3 power-law probe for the cosine bump.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{
    sample_matrix, IncreasingTuple, KernelSpec, KernelVariant, Transform, ZeroConvention,
};
use crate::numerics::{Matrix, Scalar, Sign3, ToleranceProfile, Wide};

/// Witness minors for shifted / rescaled kernel powers can be smaller than
/// 1e-40 in magnitude, far below what f64 determinants can certify; build
/// the sample tuples in extended precision so the scan runs there too.
fn wide_tuple(values: &[f64]) -> Result<IncreasingTuple> {
    IncreasingTuple::new(values.iter().map(|&v| Scalar::Wide(Wide::from_f64(v))).collect())
}
use crate::tptest::{minor_scan, MinorWitness, TPClassification, TPStatus};

/// Predicted classification of (1 + x_j y_k)^∘α at order p: strictly
/// positive minors above the critical power p−2, rank collapse at integer
/// powers below it, a negative minor at non-integer powers below it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum PredictedClass {
    TP,
    TNRank(usize),
    NotTN,
}

pub fn classify_power(p: usize, alpha: f64) -> PredictedClass {
    let pm2 = p as f64 - 2.0;
    if alpha.fract() == 0.0 && alpha >= 0.0 && alpha <= pm2 {
        PredictedClass::TNRank(alpha as usize + 1)
    } else if alpha > pm2 {
        PredictedClass::TP
    } else {
        PredictedClass::NotTN
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerProbeReport {
    pub kernel: KernelSpec,
    pub p: usize,
    pub alpha: f64,
    pub classification: TPClassification,
    pub rank: Option<usize>,
    pub predicted: PredictedClass,
    pub agrees: bool,
}

fn check_jain_admissible(xs: &IncreasingTuple, ys: &IncreasingTuple) -> Result<()> {
    for x in xs.coords() {
        for y in ys.coords() {
            let v = x.mul(y).add(&Scalar::from_int(1));
            if v.cmp_zero() != std::cmp::Ordering::Greater {
                return Err(Error::domain("need 1 + x_j·y_k > 0 for all pairs"));
            }
        }
    }
    Ok(())
}

/// Builds (1 + x_j y_k)^∘α, scans its minors (and its rank for integer α)
/// and compares the outcome with [`classify_power`].
pub fn jain_matrix_probe(
    xs: &IncreasingTuple,
    ys: &IncreasingTuple,
    alpha: f64,
    profile: &ToleranceProfile,
) -> Result<PowerProbeReport> {
    if xs.len() != ys.len() {
        return Err(Error::structural("tuples must have equal length"));
    }
    check_jain_admissible(xs, ys)?;
    let p = xs.len();
    let kernel = KernelSpec::powered(KernelVariant::Jks, alpha)?;
    let m = sample_matrix(&kernel, xs, ys)?;
    let classification = minor_scan(&m, p, profile)?;
    let predicted = classify_power(p, alpha);
    let is_int = alpha.fract() == 0.0;
    let rank = is_int.then(|| {
        let float_rank = m.in_mode(crate::numerics::Mode::Float).unwrap().rank(profile.rel_eps);
        if m.is_exact() {
            let exact_rank = m.rank(profile.rel_eps);
            assert_eq!(exact_rank, float_rank, "exact and float rank disagree");
        }
        float_rank
    });
    let agrees = match predicted {
        PredictedClass::TP => classification.status == TPStatus::TP,
        PredictedClass::NotTN => classification.status == TPStatus::NotTN,
        PredictedClass::TNRank(r) => {
            let status_ok = if r >= p {
                classification.status != TPStatus::NotTN
            } else {
                classification.status == TPStatus::TNNotTP
            };
            status_ok && rank == Some(r.min(p))
        }
    };
    Ok(PowerProbeReport { kernel, p, alpha, classification, rank, predicted, agrees })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftWitnessReport {
    /// The single shift (or argument scale) that works for every power.
    pub constant: f64,
    pub subset_x: Vec<f64>,
    pub subset_y: Vec<f64>,
    pub witnesses: Vec<(f64, MinorWitness)>,
}

fn validate_bad_alphas(p: usize, alphas: &[f64]) -> Result<()> {
    for &a in alphas {
        if a.fract() == 0.0 || a <= 0.0 || a >= p as f64 - 2.0 {
            return Err(Error::usage(format!(
                "power {a} must be a non-integer in (0, {})",
                p as f64 - 2.0
            )));
        }
    }
    Ok(())
}

fn subset_selection(xs: &[f64], ys: &[f64], p: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if xs.len() < p || ys.len() < p {
        return Err(Error::usage("need at least p points in each set"));
    }
    let mut x = xs.to_vec();
    let mut y = ys.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    // Deterministic selection rule: first p x's, last p y's.
    Ok((x[..p].to_vec(), y[y.len() - p..].to_vec()))
}

fn negative_minor(m: &Matrix, p: usize, profile: &ToleranceProfile) -> Result<MinorWitness> {
    let c = minor_scan(m, p, profile)?;
    match (c.status, c.witness) {
        (TPStatus::NotTN, Some(w)) => Ok(w),
        _ => Err(Error::numeric(
            "predicted negative minor was not found",
        )),
    }
}

/// One shift a = x₁ − y_p − 1 makes the shifted one-sided bump (or its
/// two-rate variant) fail order-p nonnegativity at every supplied
/// non-integer power below the critical one: returns the shift and one
/// negative minor per power.
pub fn omega_shift_witness(
    xs: &[f64],
    ys: &[f64],
    p: usize,
    alphas: &[f64],
    variant: KernelVariant,
    profile: &ToleranceProfile,
) -> Result<ShiftWitnessReport> {
    if !matches!(variant, KernelVariant::Omega | KernelVariant::OmegaQr { .. }) {
        return Err(Error::usage("shift witness applies to the one-sided bump kernels"));
    }
    validate_bad_alphas(p, alphas)?;
    let (sx, sy) = subset_selection(xs, ys, p)?;
    let a = sx[0] - sy[p - 1] - 1.0;
    let xt = wide_tuple(&sx)?;
    let yt = wide_tuple(&sy)?;
    let mut witnesses = Vec::new();
    for &alpha in alphas {
        let spec = KernelSpec::with_transforms(
            variant.clone(),
            vec![
                Transform::Shift { a },
                Transform::Power { alpha, zero_convention: ZeroConvention::ZeroToZero },
            ],
        )?;
        let m = sample_matrix(&spec, &xt, &yt)?;
        witnesses.push((alpha, negative_minor(&m, p, profile)?));
    }
    Ok(ShiftWitnessReport { constant: a, subset_x: sx, subset_y: sy, witnesses })
}

/// Same law for the cosine bump: one argument scale m = (π/5)/max|coord|
/// pulls the sample points inside (−π/4, π/4) and yields a negative minor
/// for every supplied power.
pub fn cosine_scale_witness(
    xs: &[f64],
    ys: &[f64],
    p: usize,
    alphas: &[f64],
    profile: &ToleranceProfile,
) -> Result<ShiftWitnessReport> {
    validate_bad_alphas(p, alphas)?;
    let (sx, sy) = subset_selection(xs, ys, p)?;
    let max_coord = sx
        .iter()
        .chain(sy.iter())
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(1e-300);
    let m_scale = std::f64::consts::PI / 5.0 / max_coord;
    let xt = wide_tuple(&sx)?;
    let yt = wide_tuple(&sy)?;
    let mut witnesses = Vec::new();
    for &alpha in alphas {
        let spec = KernelSpec::with_transforms(
            KernelVariant::CosineW,
            vec![
                Transform::ArgScale { m: m_scale },
                Transform::Power { alpha, zero_convention: ZeroConvention::ZeroToZero },
            ],
        )?;
        let mat = sample_matrix(&spec, &xt, &yt)?;
        witnesses.push((alpha, negative_minor(&mat, p, profile)?));
    }
    Ok(ShiftWitnessReport { constant: m_scale, subset_x: sx, subset_y: sy, witnesses })
}

/// φ(u) = Σ c_j (1 + u x_j)^r on the interval where every base 1 + u x_j
/// stays positive.
#[derive(Clone, Debug, Serialize)]
pub struct DescartesInstance {
    pub x: Vec<f64>,
    pub c: Vec<f64>,
    pub r: f64,
    pub a_x: f64,
    pub b_x: f64,
}

impl DescartesInstance {
    pub fn new(x: Vec<f64>, c: Vec<f64>, r: f64) -> Result<DescartesInstance> {
        if x.len() != c.len() || x.is_empty() {
            return Err(Error::structural("x and c must be nonempty, equal length"));
        }
        for j in 0..x.len() {
            for k in j + 1..x.len() {
                if x[j] == x[k] {
                    return Err(Error::domain("x coordinates must be pairwise distinct"));
                }
            }
        }
        if c.iter().all(|&v| v == 0.0) {
            return Err(Error::domain("coefficients must not all vanish"));
        }
        let max = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = x.iter().cloned().fold(f64::INFINITY, f64::min);
        let a_x = if max > 0.0 { -1.0 / max } else { f64::NEG_INFINITY };
        let b_x = if min < 0.0 { -1.0 / min } else { f64::INFINITY };
        Ok(DescartesInstance { x, c, r, a_x, b_x })
    }

    pub fn phi(&self, u: f64) -> f64 {
        self.x
            .iter()
            .zip(&self.c)
            .map(|(&x, &c)| c * (1.0 + u * x).powf(self.r))
            .sum()
    }

    /// Sign changes of the coefficient sequence ordered by x, zeros removed.
    pub fn coefficient_sign_changes(&self) -> usize {
        let mut order: Vec<usize> = (0..self.x.len()).collect();
        order.sort_by(|&a, &b| self.x[a].total_cmp(&self.x[b]));
        let signs: Vec<f64> = order
            .iter()
            .map(|&i| self.c[i])
            .filter(|&c| c != 0.0)
            .collect();
        signs.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroCountReport {
    /// Lower bound: strict sign changes detected on the refined grid.
    pub zero_count: usize,
    pub sign_changes_s: usize,
    pub zeros: Vec<f64>,
}

/// Counts sign changes of φ on a refining grid inside (A_x, B_x), bisecting
/// each change to 1e−12. The count never exceeds the coefficient
/// sign-change count s, which never exceeds n−1.
pub fn descartes_zero_count(instance: &DescartesInstance, grid_resolution: usize) -> ZeroCountReport {
    let lo = instance.a_x.max(-50.0);
    let hi = instance.b_x.min(50.0);
    // Keep clear of the interval endpoints, where a fractional r blows up.
    let span = hi - lo;
    let lo = lo + 1e-9 * span.min(1.0);
    let hi = hi - 1e-9 * span.min(1.0);
    let n = grid_resolution.max(16);
    let scale: f64 = instance.c.iter().map(|c| c.abs()).sum();
    let floor = 1e-12 * scale.max(1.0);
    let mut zeros = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let u = lo + (hi - lo) * i as f64 / n as f64;
        let v = instance.phi(u);
        if !v.is_finite() {
            continue;
        }
        if v.abs() <= floor {
            // Grid point sitting on a zero: record it, reset the bracket.
            if zeros.last().map_or(true, |&z: &f64| (u - z).abs() > 1e-9) {
                zeros.push(u);
            }
            prev = None;
            continue;
        }
        if let Some((pu, pv)) = prev {
            if pv.signum() != v.signum() {
                let (mut a, mut b) = (pu, u);
                let (mut fa, _) = (pv, v);
                for _ in 0..80 {
                    let mid = 0.5 * (a + b);
                    let fm = instance.phi(mid);
                    if fm == 0.0 || b - a < 1e-12 {
                        break;
                    }
                    if fa.signum() == fm.signum() {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                zeros.push(0.5 * (a + b));
            }
        }
        prev = Some((u, v));
    }
    ZeroCountReport {
        zero_count: zeros.len(),
        sign_changes_s: instance.coefficient_sign_changes(),
        zeros,
    }
}

fn check_homotopy_inputs(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::structural("x and y must be nonempty, equal length"));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::structural("x must be strictly increasing"));
    }
    if ys.windows(2).any(|w| w[0] >= w[1]) || ys[0] <= 0.0 {
        return Err(Error::structural("y must be strictly increasing and positive"));
    }
    for &a in xs {
        for &b in xs {
            if 1.0 + a * b <= 0.0 {
                return Err(Error::domain("need 1 + x_j·x_k > 0 at t = 0"));
            }
        }
    }
    Ok(())
}

/// Largest certified ε so the straight-line homotopy from x to ε·y keeps
/// 1 + x_j(t)·x_k(t) positive: 1 when all x_j ≥ 0; 1/(|x₁|·y_n) when only
/// x₁ is negative; otherwise the bisected positivity bound of
/// g(ε) = 1 − ε²(x_n y₁ − x₁ y_n)² / (4(εy₁ − x₁)(εy_n − x_n)).
pub fn homotopy_delta(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_homotopy_inputs(xs, ys)?;
    let n = xs.len();
    let (x1, xn) = (xs[0], xs[n - 1]);
    let (y1, yn) = (ys[0], ys[n - 1]);
    if x1 >= 0.0 {
        return Ok(1.0);
    }
    if xn >= 0.0 {
        return Ok(1.0 / (x1.abs() * yn));
    }
    let g = |eps: f64| -> f64 {
        let num = eps * eps * (xn * y1 - x1 * yn).powi(2);
        let den = 4.0 * (eps * y1 - x1) * (eps * yn - xn);
        1.0 - num / den
    };
    let positive_up_to = |eps: f64| -> bool { (1..=256).all(|i| g(eps * i as f64 / 256.0) > 0.0) };
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    if positive_up_to(hi) {
        return Ok(1.0);
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if positive_up_to(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyViolations {
    /// Grid samples (j, k, t) where 1 + x_j(t)·x_k(t) ≤ 0.
    pub grid_hits: Vec<(usize, usize, f64)>,
    /// Exact violation t-interval from the pair quadratic, n = 2 only.
    pub interval: Option<(f64, f64)>,
}

/// Scans the straight-line homotopy x_j(t) = x_j + t(ε·y_j − x_j) for
/// positivity failures on a t-grid; for n = 2 the violation interval of the
/// pair (1, 2) is solved exactly from the quadratic
/// 1 + x₁(t)·x₂(t) = a t² + b t + c.
pub fn homotopy_violations(
    xs: &[f64],
    ys: &[f64],
    epsilon: f64,
    t_grid: usize,
) -> Result<HomotopyViolations> {
    check_homotopy_inputs(xs, ys)?;
    if epsilon <= 0.0 {
        return Err(Error::usage("epsilon must be positive"));
    }
    let n = xs.len();
    let at = |j: usize, t: f64| xs[j] + t * (epsilon * ys[j] - xs[j]);
    let steps = t_grid.max(2);
    let mut grid_hits = Vec::new();
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        for j in 0..n {
            for k in j..n {
                if 1.0 + at(j, t) * at(k, t) <= 0.0 {
                    grid_hits.push((j, k, t));
                }
            }
        }
    }
    let interval = (n == 2).then(|| {
        let d1 = epsilon * ys[0] - xs[0];
        let d2 = epsilon * ys[1] - xs[1];
        let a = d1 * d2;
        let b = xs[0] * d2 + xs[1] * d1;
        let c = 1.0 + xs[0] * xs[1];
        let disc = b * b - 4.0 * a * c;
        if disc <= 0.0 || a == 0.0 {
            None
        } else {
            let sq = disc.sqrt();
            let (mut t0, mut t1) = ((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a));
            if t0 > t1 {
                std::mem::swap(&mut t0, &mut t1);
            }
            // The quadratic is negative between its roots when a > 0.
            (a > 0.0).then_some((t0, t1))
        }
    });
    Ok(HomotopyViolations { grid_hits, interval: interval.flatten() })
}

#[derive(Clone, Debug, Serialize)]
pub struct PiecewiseHomotopyReport {
    pub delta1: f64,
    pub delta2: f64,
    pub breakpoints: (f64, f64),
    pub certified: bool,
    /// First (t, j, k) with 1 + x_j(t)·y_k(t) ≤ 0, if certification failed.
    pub failure: Option<(f64, usize, usize)>,
}

/// Three-segment piecewise-linear homotopy carrying an admissible pair
/// (x, y) to a positive pair (p, q): x shrinks to δ₁·p, then y moves to
/// δ₂·q, then both grow to (p, q). Each segment is linear, so endpoint
/// positivity certifies it; the t-grid check is a backstop.
pub fn piecewise_homotopy(
    xs: &[f64],
    ys: &[f64],
    ps: &[f64],
    qs: &[f64],
    grid_per_segment: usize,
) -> Result<PiecewiseHomotopyReport> {
    let n = xs.len();
    if ys.len() != n || ps.len() != n || qs.len() != n || n == 0 {
        return Err(Error::structural("all four tuples must have the same nonzero length"));
    }
    for t in [xs, ys, ps, qs] {
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::structural("tuples must be strictly increasing"));
        }
    }
    if ps[0] <= 0.0 || qs[0] <= 0.0 {
        return Err(Error::domain("p and q must be positive tuples"));
    }
    for &x in xs {
        for &y in ys {
            if 1.0 + x * y <= 0.0 {
                return Err(Error::domain("need 1 + x_j·y_k > 0 at the start"));
            }
        }
    }
    let ymax = ys.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let delta1 = if ymax == 0.0 { 1.0 } else { 1.0 / (2.0 * ymax * ps[n - 1]) };
    let delta2 = 1.0 / (2.0 * delta1 * ps[n - 1] * qs[n - 1]);

    let position = |t: f64, j: usize| -> (f64, f64) {
        if t <= 1.0 / 3.0 {
            let s = 3.0 * t;
            (xs[j] + s * (delta1 * ps[j] - xs[j]), ys[j])
        } else if t <= 2.0 / 3.0 {
            let s = 3.0 * t - 1.0;
            (delta1 * ps[j], ys[j] + s * (delta2 * qs[j] - ys[j]))
        } else {
            let s = 3.0 * t - 2.0;
            (
                delta1 * ps[j] + s * (ps[j] - delta1 * ps[j]),
                delta2 * qs[j] + s * (qs[j] - delta2 * qs[j]),
            )
        }
    };

    let steps = grid_per_segment.max(2) * 3;
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        let pts: Vec<(f64, f64)> = (0..n).map(|j| position(t, j)).collect();
        // Monotonicity must survive along the whole path.
        for w in pts.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Ok(PiecewiseHomotopyReport {
                    delta1,
                    delta2,
                    breakpoints: (1.0 / 3.0, 2.0 / 3.0),
                    certified: false,
                    failure: Some((t, 0, 0)),
                });
            }
        }
        for j in 0..n {
            for k in 0..n {
                if 1.0 + pts[j].0 * pts[k].1 <= 0.0 {
                    return Ok(PiecewiseHomotopyReport {
                        delta1,
                        delta2,
                        breakpoints: (1.0 / 3.0, 2.0 / 3.0),
                        certified: false,
                        failure: Some((t, j, k)),
                    });
                }
            }
        }
    }
    Ok(PiecewiseHomotopyReport {
        delta1,
        delta2,
        breakpoints: (1.0 / 3.0, 2.0 / 3.0),
        certified: true,
        failure: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LargestMinorReport {
    /// Whether the profile's decay at the window edges qualifies it for the
    /// criterion (edge product ≤ 1e−8 × peak²).
    pub decay_ok: bool,
    /// All sampled p×p minors nonnegative?
    pub hypothesis_holds: bool,
    /// A negative lower-order minor while the hypothesis holds would
    /// contradict the characterization.
    pub violation: Option<MinorWitness>,
    pub consistent: bool,
}

/// On a sampled window, checks the implication "all p×p minors ≥ 0 (plus
/// edge decay) ⟹ all r×r minors ≥ 0 for r < p" for a translation kernel.
/// Minor sets are the contiguous windows plus a strided spread of
/// non-contiguous index sets, keeping the scan polynomial.
pub fn largest_minor_characterization_check(
    spec: &KernelSpec,
    p: usize,
    window: &IncreasingTuple,
    profile: &ToleranceProfile,
) -> Result<LargestMinorReport> {
    if p < 3 {
        return Err(Error::usage("criterion applies for order p ≥ 3"));
    }
    if window.len() < p + 1 {
        return Err(Error::usage("window too small for the requested order"));
    }
    let m = sample_matrix(spec, window, window)?;
    let n = window.len();
    let zero = Scalar::Float(0.0);
    let profile_at = |t: &Scalar| -> f64 {
        crate::kernels::eval(spec, t, &zero).map(|v| v.to_f64()).unwrap_or(0.0)
    };
    let vals: Vec<f64> = window.coords().iter().map(profile_at).collect();
    let peak = vals.iter().cloned().fold(0.0f64, f64::max);
    let decay_ok = vals[0] * vals[n - 1] <= 1e-8 * peak * peak;

    let index_sets = |r: usize| -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = (0..=n - r).map(|i| (i..i + r).collect()).collect();
        // Strided non-contiguous sets: every stride ≥ 2 from every start.
        for stride in 2..=(n - 1) / (r - 1).max(1) {
            for start in 0..n {
                if start + stride * (r - 1) < n {
                    sets.push((0..r).map(|k| start + stride * k).collect());
                }
            }
        }
        sets
    };

    let top_sets = index_sets(p);
    for rows in &top_sets {
        for cols in &top_sets {
            let det = m.submatrix(rows, cols).det()?;
            if profile.sign3(&det.value, det.magnitude) == Sign3::Negative {
                return Ok(LargestMinorReport {
                    decay_ok,
                    hypothesis_holds: false,
                    violation: None,
                    consistent: true,
                });
            }
        }
    }
    for r in 1..p {
        let sets = index_sets(r);
        for rows in &sets {
            for cols in &sets {
                let det = m.submatrix(rows, cols).det()?;
                let sign = profile.sign3(&det.value, det.magnitude);
                if sign == Sign3::Negative {
                    return Ok(LargestMinorReport {
                        decay_ok,
                        hypothesis_holds: true,
                        violation: Some(MinorWitness {
                            rows: rows.clone(),
                            cols: cols.clone(),
                            value: det.value,
                            sign,
                            tolerance_limited: false,
                        }),
                        consistent: false,
                    });
                }
            }
        }
    }
    Ok(LargestMinorReport { decay_ok, hypothesis_holds: true, violation: None, consistent: true })
}

#[derive(Clone, Debug, Serialize)]
pub enum Tn3PowerVerdict {
    Preserves,
    Counterexample { matrix: Vec<Vec<f64>>, det: f64 },
}

/// The α-th power preserves order-3 nonnegativity of translation kernels
/// iff α ≥ 1. Below 1 the cosine bump at (−π/4, 0, π/4) is the witness:
/// its powered sample has determinant 1 − 2^{1−α} < 0 (and −1 at α = 0
/// under the 0^0 ↦ 0 convention).
pub fn tn3_power_probe(alpha: f64) -> Result<Tn3PowerVerdict> {
    if alpha < 0.0 {
        return Err(Error::usage("power must be nonnegative"));
    }
    if alpha >= 1.0 {
        return Ok(Tn3PowerVerdict::Preserves);
    }
    let pts = IncreasingTuple::from_f64s(&[
        -std::f64::consts::FRAC_PI_4,
        0.0,
        std::f64::consts::FRAC_PI_4,
    ])?;
    let spec = KernelSpec::powered(KernelVariant::CosineW, alpha)?;
    let m = sample_matrix(&spec, &pts, &pts)?;
    let det = m.det()?.value.to_f64();
    if det >= 0.0 {
        return Err(Error::numeric("expected negative determinant was not found"));
    }
    Ok(Tn3PowerVerdict::Counterexample { matrix: (0..3).map(|i| (0..3).map(|j| m.get(i, j).to_f64()).collect()).collect(), det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn trichotomy_classification() {
        assert_eq!(classify_power(4, 2.5), PredictedClass::TP);
        assert_eq!(classify_power(4, 1.0), PredictedClass::TNRank(2));
        assert_eq!(classify_power(4, 0.5), PredictedClass::NotTN);
        assert_eq!(classify_power(2, 0.0), PredictedClass::TNRank(1));
    }

    #[test]
    fn jain_probe_matches_prediction() {
        let t3 = IncreasingTuple::from_f64s(&[0.1, 0.2, 0.3]).unwrap();
        let r = jain_matrix_probe(&t3, &t3, 0.5, &tol()).unwrap();
        assert!(r.agrees);
        assert_eq!(r.classification.status, TPStatus::NotTN);

        let t4 = IncreasingTuple::from_f64s(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let r = jain_matrix_probe(&t4, &t4, 3.0, &tol()).unwrap();
        assert!(r.agrees);
        assert_eq!(r.classification.status, TPStatus::TP);

        let t = IncreasingTuple::from_ints(&[1, 2, 3]).unwrap();
        let r = jain_matrix_probe(&t, &t, 1.0, &tol()).unwrap();
        assert!(r.agrees);
        assert_eq!(r.rank, Some(2));
    }

    #[test]
    fn shift_witness_one_constant_many_powers() {
        let pts: Vec<f64> = (1..=6).map(f64::from).collect();
        let r = omega_shift_witness(&pts, &pts, 3, &[0.5], KernelVariant::Omega, &tol()).unwrap();
        assert_eq!(r.constant, -6.0);
        assert_eq!(r.witnesses.len(), 1);

        let r = omega_shift_witness(
            &pts,
            &pts,
            4,
            &[0.5, 1.5],
            KernelVariant::OmegaQr { q: 1.0, r: 2.0 },
            &tol(),
        )
        .unwrap();
        assert_eq!(r.witnesses.len(), 2);

        assert!(omega_shift_witness(&pts, &pts, 3, &[1.0], KernelVariant::Omega, &tol()).is_err());
    }

    #[test]
    fn cosine_witness() {
        let pts = [1.0, 2.0, 3.0];
        let r = cosine_scale_witness(&pts, &pts, 3, &[0.5], &tol()).unwrap();
        assert!((r.constant - std::f64::consts::PI / 15.0).abs() < 1e-15);
        assert_eq!(r.witnesses[0].1.sign, Sign3::Negative);
    }

    #[test]
    fn descartes_counts() {
        let i = DescartesInstance::new(vec![1.0, 2.0], vec![1.0, -1.0], 0.5).unwrap();
        let rep = descartes_zero_count(&i, 2000);
        assert_eq!(rep.sign_changes_s, 1);
        assert_eq!(rep.zero_count, 1);
        assert!(rep.zeros[0].abs() < 1e-6);

        let i = DescartesInstance::new(vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 1.0], 2.0).unwrap();
        let rep = descartes_zero_count(&i, 2000);
        assert_eq!(rep.zero_count, 0);

        let i = DescartesInstance::new(vec![1.0, 2.0], vec![1.0, -1.0], 1.0).unwrap();
        assert_eq!(descartes_zero_count(&i, 2000).zero_count, 1);
    }

    #[test]
    fn homotopy_delta_cases() {
        assert_eq!(homotopy_delta(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 1.0);
        let d = homotopy_delta(&[-199.0, 0.0], &[1.0, 2.0]).unwrap();
        assert!((d - 1.0 / 398.0).abs() < 1e-15);
        let d = homotopy_delta(&[-3.0, -2.0], &[1.0, 2.0]).unwrap();
        assert!(d > 0.0);
        // g must be positive at the certified delta.
        let g = |eps: f64| {
            1.0 - eps * eps * (-2.0f64 * 1.0 - (-3.0) * 2.0).powi(2)
                / (4.0 * (eps + 3.0) * (2.0 * eps + 2.0))
        };
        assert!(g(d) > 0.0);
    }

    #[test]
    fn homotopy_violation_intervals() {
        let v = homotopy_violations(&[-8.5, 0.1], &[1.0, 2.0], 1.0, 1000).unwrap();
        let (t0, t1) = v.interval.unwrap();
        let sq = 61f64.sqrt();
        assert!((t0 - (8.0 - sq) / 19.0).abs() < 1e-12);
        assert!((t1 - (8.0 + sq) / 19.0).abs() < 1e-12);
        assert!(t0 < 0.01 && t1 > 0.8321);

        let v = homotopy_violations(&[-199.0, 0.0], &[1.0, 2.0], 1.0, 1000).unwrap();
        let (t0, t1) = v.interval.unwrap();
        assert!(t0 < 0.0026 && t1 > 0.9924);

        let v = homotopy_violations(&[-199.0, 0.0], &[1.0, 2.0], 1.0 / 398.0, 10_000).unwrap();
        assert!(v.grid_hits.is_empty());
    }

    #[test]
    fn piecewise_path_certifies() {
        for (x, y) in [
            (vec![1.0, 2.0], vec![1.0, 2.0]),
            (vec![-0.5, 0.5], vec![-1.0, 1.0]),
            (vec![-3.0, -2.0], vec![0.1, 0.3]),
        ] {
            let r = piecewise_homotopy(&x, &y, &[1.0, 2.0], &[1.0, 2.0], 1000).unwrap();
            assert!(r.certified, "path failed for x={x:?}, y={y:?}: {r:?}");
        }
    }

    #[test]
    fn largest_minor_consistency() {
        let window = IncreasingTuple::from_f64s(&(0..25).map(|k| -6.0 + 0.5 * k as f64).collect::<Vec<_>>()).unwrap();
        let spec = KernelSpec::new(KernelVariant::TwoSidedExp {
            alpha: 0.5,
            beta: 2.0,
            c: 1.0,
            x0: 0.0,
        })
        .unwrap();
        let r = largest_minor_characterization_check(&spec, 3, &window, &tol()).unwrap();
        assert!(r.consistent && r.hypothesis_holds);

        let spec = KernelSpec::new(KernelVariant::Omega).unwrap();
        let window = IncreasingTuple::from_f64s(&(0..17).map(|k| -4.0 + 0.5 * k as f64).collect::<Vec<_>>()).unwrap();
        let r = largest_minor_characterization_check(&spec, 4, &window, &tol()).unwrap();
        assert!(r.consistent);
    }

    #[test]
    fn tn3_power_threshold() {
        for alpha in [0.0, 0.25, 0.5, 0.75, 0.99] {
            match tn3_power_probe(alpha).unwrap() {
                Tn3PowerVerdict::Counterexample { det, .. } => {
                    assert!(det < 0.0);
                    if alpha == 0.0 {
                        assert!((det + 1.0).abs() < 1e-15);
                    } else {
                        let want = 1.0 - 2.0 * 2.0f64.powf(-alpha);
                        assert!((det - want).abs() < 1e-12);
                    }
                }
                Tn3PowerVerdict::Preserves => panic!("expected counterexample at {alpha}"),
            }
        }
        assert!(matches!(tn3_power_probe(1.0).unwrap(), Tn3PowerVerdict::Preserves));
        assert!(matches!(tn3_power_probe(2.5).unwrap(), Tn3PowerVerdict::Preserves));
    }
}
