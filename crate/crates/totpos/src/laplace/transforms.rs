//! Bilateral Laplace transforms B{Λ}(s) = ∫ e^{−sx} Λ(x) dx: closed forms
//! for the translation-invariant kernel zoo and an adaptive quadrature
//! cross-check for anything with bounded support or exponentially decaying
//! tails.

use num::complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernels::{eval, KernelSpec, KernelVariant, Transform};
use crate::laplace::gamma::{gamma_real, recip_gamma};
use crate::numerics::Scalar;

/// How a transform value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformMethod {
    ClosedForm,
    Quadrature,
}

/// One evaluation of a bilateral Laplace transform at a complex point,
/// together with a bound on its error. Closed forms carry only the
/// floating-point evaluation noise; quadrature carries the adaptive
/// integration tolerance plus the tail-truncation allowance.
#[derive(Clone, Copy, Debug)]
pub struct TransformValue {
    pub s: Complex64,
    pub value: Complex64,
    pub method: TransformMethod,
    pub error_bound: f64,
}

impl Serialize for TransformValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            s: [f64; 2],
            value: [f64; 2],
            method: TransformMethod,
            error_bound: f64,
        }
        Repr {
            s: [self.s.re, self.s.im],
            value: [self.value.re, self.value.im],
            method: self.method,
            error_bound: self.error_bound,
        }
        .serialize(ser)
    }
}

/// Extracts the optional entrywise power from a kernel spec, rejecting any
/// other transform: closed forms are registered only for plain kernels and
/// their powers.
fn power_of(spec: &KernelSpec) -> Result<f64> {
    match spec.transforms.as_slice() {
        [] => Ok(1.0),
        [Transform::Power { alpha, .. }] => Ok(*alpha),
        _ => Err(Error::usage(
            "closed-form transforms are registered only for plain kernels and entrywise powers",
        )),
    }
}

fn require_integer(alpha: f64, what: &str) -> Result<u32> {
    let n = alpha.round();
    if (alpha - n).abs() > 1e-9 || n < 1.0 || n > 60.0 {
        return Err(Error::usage(format!(
            "{what} closed form needs an integer power in 1..=60, got {alpha}"
        )));
    }
    Ok(n as u32)
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut v = 1.0f64;
    for j in 0..k {
        v = v * f64::from(n - j) / f64::from(j + 1);
    }
    v
}

/// Closed-form bilateral Laplace transform of the kernel named by `spec`
/// (with at most an entrywise power applied), evaluated at `s`. The
/// convergence region of each form is validated; outside it a domain
/// error is returned.
///
/// Registered forms:
/// - one-sided bump `t e^{−t}` → 1/(1+s)², power n → n!/(s+n)^{n+1}, Re s > −n
/// - two-rate bump → qr/((s+q)(s+r)), Re s > −min(q,r); integer powers via
///   [`omega_qr_integer_power_transform`](super::omega_qr_integer_power_transform)
/// - cosine window to any power α ≥ 0 → πΓ(α+1) / (2^α Γ(½(α+2+is)) Γ(½(α+2−is))), entire
/// - one-sided exponential step to power α > 0 → 1/(s+1)^α, Re s > −1
/// - difference-of-exponentials kernel 2e^{−|t|} − e^{−2|t|} and its integer
///   powers → 2 Σ_k (−1)^{k+1} C(n,k) 2^{n−k} (n+k)/(s² − (n+k)²), |Re s| < n
pub fn closed_form_transform(spec: &KernelSpec, s: Complex64) -> Result<TransformValue> {
    spec.variant.validate()?;
    let alpha = power_of(spec)?;
    let one = Complex64::new(1.0, 0.0);
    let (value, error_bound) = match &spec.variant {
        KernelVariant::Omega => {
            let n = require_integer(alpha, "one-sided bump")?;
            if s.re <= -f64::from(n) {
                return Err(Error::domain(format!(
                    "transform of the one-sided bump power {n} converges only for Re s > {}",
                    -f64::from(n)
                )));
            }
            // Two-rate formula in the equal-rate limit: n! / (s + n)^{n+1}.
            let mut denom = one;
            for _ in 0..=n {
                denom *= s + f64::from(n);
            }
            (gamma_real(f64::from(n) + 1.0) / denom, 1e-14)
        }
        KernelVariant::OmegaQr { q, r } => {
            let n = require_integer(alpha, "two-rate bump")?;
            let rate = f64::from(n) * q.min(*r);
            if s.re <= -rate {
                return Err(Error::domain(format!(
                    "transform of the two-rate bump power {n} converges only for Re s > {}",
                    -rate
                )));
            }
            let (f, g) = super::omega_qr_integer_power_transform(*q, *r, n)?;
            (Complex64::new(f, 0.0) / g.eval(s), 1e-13)
        }
        KernelVariant::CosineW => {
            if alpha < 0.0 {
                return Err(Error::domain("cosine window powers below 0 are not integrable"));
            }
            let i = Complex64::new(0.0, 1.0);
            let half = Complex64::new(alpha + 2.0, 0.0);
            let num = std::f64::consts::PI * gamma_real(alpha + 1.0) / 2f64.powf(alpha);
            let value = num * recip_gamma((half + i * s) / 2.0) * recip_gamma((half - i * s) / 2.0);
            (value, 3e-13 * value.norm().max(1.0))
        }
        KernelVariant::LambdaD { .. } => {
            if alpha <= 0.0 {
                return Err(Error::domain("exponential step powers must be positive"));
            }
            if s.re <= -1.0 {
                return Err(Error::domain(
                    "transform of the exponential step converges only for Re s > -1",
                ));
            }
            ((s + 1.0).powf(-alpha), 1e-14)
        }
        KernelVariant::MKernel => {
            let n = require_integer(alpha, "difference-of-exponentials kernel")?;
            if s.re.abs() >= f64::from(n) {
                return Err(Error::domain(format!(
                    "transform of the difference-of-exponentials power {n} converges only for |Re s| < {n}"
                )));
            }
            let mut total = Complex64::new(0.0, 0.0);
            for k in 0..=n {
                let nk = f64::from(n + k);
                let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
                total += sign * binomial(n, k) * 2f64.powi((n - k) as i32) * nk / (s * s - nk * nk);
            }
            (2.0 * total, 1e-13 * total.norm().max(1.0))
        }
        other => {
            return Err(Error::usage(format!("no closed-form transform registered for {other:?}")))
        }
    };
    Ok(TransformValue { s, value, method: TransformMethod::ClosedForm, error_bound })
}

/// Support window and interior kink points of the kernel profile Λ(x),
/// propagated through the kernel spec's transform list (argument scaling, shifts,
/// reversal). `None` endpoints mean an exponentially decaying tail.
fn support_window(spec: &KernelSpec) -> Result<(Option<f64>, Option<f64>, Vec<f64>)> {
    let (mut lo, mut hi, mut kinks): (Option<f64>, Option<f64>, Vec<f64>) = match &spec.variant {
        KernelVariant::Omega | KernelVariant::OmegaQr { .. } | KernelVariant::LambdaD { .. } => {
            (Some(0.0), None, vec![0.0])
        }
        KernelVariant::CosineW => {
            (Some(-std::f64::consts::FRAC_PI_2), Some(std::f64::consts::FRAC_PI_2), vec![])
        }
        KernelVariant::MKernel => (None, None, vec![0.0]),
        KernelVariant::Gaussian => (None, None, vec![]),
        KernelVariant::TwoSidedExp { alpha, beta, c: _, x0 } => {
            let lo = if *beta == f64::INFINITY { Some(*x0) } else { None };
            let hi = if *alpha == f64::NEG_INFINITY { Some(*x0) } else { None };
            if !(*alpha < 0.0 || hi.is_some()) || !(*beta > 0.0 || lo.is_some()) {
                return Err(Error::domain("two-sided exponential tails must decay"));
            }
            (lo, hi, vec![*x0])
        }
        KernelVariant::LambdaAlpha { .. } => (Some(0.0), None, vec![0.0]),
        other => return Err(Error::usage(format!("{other:?} is not a translation kernel profile"))),
    };
    for t in &spec.transforms {
        match t {
            Transform::Power { .. } | Transform::DiagScale { .. } => {}
            Transform::Shift { a } => {
                lo = lo.map(|v| v + a);
                hi = hi.map(|v| v + a);
                for k in &mut kinks {
                    *k += a;
                }
            }
            Transform::ArgScale { m } => {
                if *m <= 0.0 {
                    return Err(Error::domain("argument scale must be positive for quadrature"));
                }
                lo = lo.map(|v| v / m);
                hi = hi.map(|v| v / m);
                for k in &mut kinks {
                    *k /= m;
                }
            }
            Transform::RowColReverse => {
                let (l, h) = (hi.map(|v| -v), lo.map(|v| -v));
                lo = l;
                hi = h;
                for k in &mut kinks {
                    *k = -*k;
                }
            }
        }
    }
    Ok((lo, hi, kinks))
}

/// |e^{−sx} Λ(x)| for real x; used for peak finding and tail truncation.
fn integrand_mag(spec: &KernelSpec, s: Complex64, x: f64) -> Result<f64> {
    let v = eval(spec, &Scalar::Float(x), &Scalar::Float(0.0))?.to_f64();
    Ok(v.abs() * (-s.re * x).exp())
}

fn integrand(spec: &KernelSpec, s: Complex64, x: f64) -> Result<Complex64> {
    let v = eval(spec, &Scalar::Float(x), &Scalar::Float(0.0))?.to_f64();
    Ok((-s * x).exp() * v)
}

/// Walks outward from `start` in direction `dir` until the integrand drops
/// below `floor`; errors if it never does within a generous horizon.
fn truncate_tail(spec: &KernelSpec, s: Complex64, start: f64, dir: f64, floor: f64) -> Result<f64> {
    let mut x = start + dir;
    let mut step = 1.0f64;
    for _ in 0..4000 {
        if integrand_mag(spec, s, x)? < floor {
            // Walk a little further so the cut sits safely below the floor.
            return Ok(x + 8.0 * dir * step.min(4.0));
        }
        x += dir * step;
        step = (step * 1.05).min(64.0);
        if x.abs() > 1e7 {
            break;
        }
    }
    Err(Error::numeric("integrand tail does not decay; truncation failed to converge"))
}

/// Adaptive Simpson on [a, b] for a complex-valued integrand.
fn adaptive_simpson(
    spec: &KernelSpec,
    s: Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + 4.0 * fm + fb) * (h / 6.0)
    }
    struct Ctx<'a> {
        spec: &'a KernelSpec,
        s: Complex64,
        evals: usize,
    }
    fn recurse(
        ctx: &mut Ctx,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Result<(Complex64, f64)> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = integrand(ctx.spec, ctx.s, lm)?;
        let frm = integrand(ctx.spec, ctx.s, rm)?;
        ctx.evals += 2;
        if ctx.evals > 4_000_000 {
            return Err(Error::numeric("quadrature failed to converge within the evaluation budget"));
        }
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth >= 50 || delta.norm() <= 15.0 * tol {
            return Ok((left + right + delta / 15.0, delta.norm() / 15.0));
        }
        let (lv, le) = recurse(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
        let (rv, re) = recurse(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
        Ok((lv + rv, le + re))
    }
    let mut ctx = Ctx { spec, s, evals: 0 };
    let fa = integrand(spec, s, a)?;
    let fb = integrand(spec, s, b)?;
    let fm = integrand(spec, s, 0.5 * (a + b))?;
    let whole = simpson(fa, fm, fb, b - a);
    recurse(&mut ctx, a, b, fa, fm, fb, whole, tol, 0)
}

/// Numerical bilateral Laplace transform of the kernel profile named by
/// `spec` at `s`. Infinite tails are truncated where the integrand falls
/// below 1e−16 of its peak; the integral is then computed by adaptive
/// Simpson quadrature split at the profile's kink points. `refinement`
/// tightens the tolerance by a factor of 10 per step, so the reported
/// error bound decreases monotonically under refinement.
pub fn quadrature_transform(spec: &KernelSpec, s: Complex64, refinement: u32) -> Result<TransformValue> {
    spec.variant.validate()?;
    let (lo, hi, kinks) = support_window(spec)?;

    // Peak of the integrand over a coarse probe grid inside the support.
    let probe_lo = lo.unwrap_or(-40.0);
    let probe_hi = hi.unwrap_or(40.0);
    let mut peak = 0.0f64;
    for j in 0..=400 {
        let x = probe_lo + (probe_hi - probe_lo) * f64::from(j) / 400.0;
        peak = peak.max(integrand_mag(spec, s, x)?);
    }
    if peak == 0.0 {
        return Ok(TransformValue {
            s,
            value: Complex64::new(0.0, 0.0),
            method: TransformMethod::Quadrature,
            error_bound: 0.0,
        });
    }
    let floor = 1e-16 * peak;
    let a = match lo {
        Some(v) => v,
        None => truncate_tail(spec, s, probe_lo.min(0.0), -1.0, floor)?,
    };
    let b = match hi {
        Some(v) => v,
        None => truncate_tail(spec, s, probe_hi.max(0.0), 1.0, floor)?,
    };
    if !(a < b) {
        return Err(Error::numeric("empty integration window"));
    }

    let mut cuts = vec![a];
    for k in kinks {
        if k > a && k < b {
            cuts.push(k);
        }
    }
    cuts.push(b);
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());

    let tol = 1e-12 * 10f64.powi(-(refinement.min(4) as i32)) * peak * (b - a).max(1.0);
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for w in cuts.windows(2) {
        let (v, e) = adaptive_simpson(spec, s, w[0], w[1], tol / (cuts.len() - 1) as f64)?;
        value += v;
        err += e;
    }
    // Tail-truncation allowance: the discarded mass is below floor per unit
    // length over an O(10) region past each cut.
    let trunc = 64.0 * floor * f64::from(u8::from(lo.is_none()) + u8::from(hi.is_none()));
    Ok(TransformValue {
        s,
        value,
        method: TransformMethod::Quadrature,
        error_bound: err + tol + trunc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::ZeroConvention;

    fn plain(v: KernelVariant) -> KernelSpec {
        KernelSpec::new(v).unwrap()
    }

    fn powered(v: KernelVariant, alpha: f64) -> KernelSpec {
        KernelSpec::with_transforms(
            v,
            vec![Transform::Power { alpha, zero_convention: ZeroConvention::ZeroToZero }],
        )
        .unwrap()
    }

    #[test]
    fn bump_transform_is_inverse_square() {
        let t = closed_form_transform(&plain(KernelVariant::Omega), Complex64::new(0.0, 0.0)).unwrap();
        assert!((t.value - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let t = closed_form_transform(&plain(KernelVariant::Omega), Complex64::new(1.0, 0.0)).unwrap();
        assert!((t.value - Complex64::new(0.25, 0.0)).norm() < 1e-14);
        assert!(closed_form_transform(&plain(KernelVariant::Omega), Complex64::new(-1.5, 0.0)).is_err());
    }

    #[test]
    fn two_rate_transform_matches_rational_form() {
        let s = Complex64::new(0.7, -0.3);
        let t = closed_form_transform(&plain(KernelVariant::OmegaQr { q: 1.0, r: 2.0 }), s).unwrap();
        let expect = 2.0 / ((s + 1.0) * (s + 2.0));
        assert!((t.value - expect).norm() < 1e-12);
    }

    #[test]
    fn difference_kernel_transform_value_at_zero() {
        let t = closed_form_transform(&plain(KernelVariant::MKernel), Complex64::new(0.0, 0.0)).unwrap();
        assert!((t.value.re - 3.0).abs() < 1e-13, "12/((s^2-1)(s^2-4)) at 0 is 3");
        assert!(t.value.im.abs() < 1e-13);
    }

    #[test]
    fn cosine_window_roots_sit_at_plus_minus_alpha_plus_two() {
        for alpha in [0.5, 1.0, 2.0, 3.5] {
            let spec = powered(KernelVariant::CosineW, alpha);
            let root = Complex64::new(0.0, alpha + 2.0);
            let t = closed_form_transform(&spec, root).unwrap();
            assert!(t.value.norm() < 1e-10, "alpha {alpha}: |B| = {}", t.value.norm());
            let t = closed_form_transform(&spec, -root).unwrap();
            assert!(t.value.norm() < 1e-10);
            // Away from the roots the transform is comfortably nonzero.
            let t = closed_form_transform(&spec, Complex64::new(0.0, 0.0)).unwrap();
            assert!(t.value.norm() > 0.1);
        }
    }

    #[test]
    fn exponential_step_power_transform() {
        let spec = powered(KernelVariant::LambdaD { d: Scalar::Float(0.5) }, 1.5);
        let s = Complex64::new(0.3, 0.4);
        let t = closed_form_transform(&spec, s).unwrap();
        assert!((t.value - (s + 1.0).powf(-1.5)).norm() < 1e-13);
    }

    #[test]
    fn quadrature_matches_cosine_window_integral() {
        let t = quadrature_transform(&plain(KernelVariant::CosineW), Complex64::new(0.0, 0.0), 2).unwrap();
        assert!((t.value.re - 2.0).abs() < 1e-10, "got {}", t.value.re);
        assert!(t.value.im.abs() < 1e-12);
    }

    #[test]
    fn quadrature_zeroth_power_measures_support_length() {
        let spec = powered(KernelVariant::CosineW, 0.0);
        let t = quadrature_transform(&spec, Complex64::new(0.0, 0.0), 2).unwrap();
        assert!((t.value.re - std::f64::consts::PI).abs() < 1e-10, "got {}", t.value.re);
    }

    #[test]
    fn quadrature_agrees_with_closed_form_for_bump() {
        let t = quadrature_transform(&plain(KernelVariant::Omega), Complex64::new(1.0, 0.0), 2).unwrap();
        assert!((t.value.re - 0.25).abs() < 1e-8, "got {}", t.value.re);
    }

    #[test]
    fn quadrature_error_bound_shrinks_under_refinement() {
        let spec = plain(KernelVariant::CosineW);
        let s = Complex64::new(0.5, 1.0);
        let coarse = quadrature_transform(&spec, s, 0).unwrap();
        let fine = quadrature_transform(&spec, s, 3).unwrap();
        assert!(fine.error_bound < coarse.error_bound);
        let truth = closed_form_transform(&spec, s).unwrap().value;
        assert!((coarse.value - truth).norm() <= coarse.error_bound + truth.norm() * 1e-12);
        assert!((fine.value - truth).norm() <= fine.error_bound + truth.norm() * 1e-12);
    }

    #[test]
    fn closed_form_and_quadrature_agree_across_the_zoo() {
        let cases: Vec<KernelSpec> = vec![
            plain(KernelVariant::Omega),
            plain(KernelVariant::OmegaQr { q: 1.0, r: 2.0 }),
            plain(KernelVariant::MKernel),
            powered(KernelVariant::CosineW, 3.5),
        ];
        let s = Complex64::new(0.4, 1.3);
        for spec in &cases {
            let cf = closed_form_transform(spec, s).unwrap();
            let q = quadrature_transform(spec, s, 2).unwrap();
            let gap = (cf.value - q.value).norm();
            assert!(
                gap <= cf.error_bound + q.error_bound + 1e-9,
                "gap {gap} for {spec:?}"
            );
        }
    }
}
