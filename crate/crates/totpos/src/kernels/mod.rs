//! The kernel zoo: every structured kernel the checkers exercise, plus a
//! transform stack (entrywise powers, argument shifts and scalings,
//! reversal, diagonal conjugation) and matrix sampling. Two exact
//! factorizations tie the hinge kernel max(1+xy, 0) to the one-sided
//! exponential bump x e^{-x} and the cosine bump.

mod eval;
mod factor;

pub use eval::{eval, sample_matrix};
pub use factor::{arctan_factorization, jks_omega_factorization};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// Base kernel shapes. Translation kernels sample as Λ(x−y), the rank-two
/// moment kernel samples as f(x+y), and the hinge kernel uses (x, y)
/// directly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params", rename_all = "snake_case")]
pub enum KernelVariant {
    /// Ω(t) = t·e^{−t} on t > 0, else 0.
    Omega,
    /// Ω^(q,r)(t) = qr(e^{−qt} − e^{−rt})/(r − q) on t > 0; the q = r case
    /// evaluates the limit r²·t·e^{−rt}.
    OmegaQr { q: f64, r: f64 },
    /// W(t) = cos t on (−π/2, π/2), else 0.
    CosineW,
    /// The hinge kernel K(x, y) = max(1 + xy, 0).
    Jks,
    /// Rank-two moment kernel f(t) = a0 + c0·u0^t sampled at t = x + y.
    HankelRankTwo { a0: f64, c0: f64, u0: f64 },
    /// Step function: 0 for t < 0, d at t = 0, 1 for t > 0.
    Heaviside { d: Scalar },
    /// One-sided exponential with step value at the kink: e^{−t}·H_d(t).
    LambdaD { d: Scalar },
    /// e^{−t²}.
    Gaussian,
    /// Two-sided exponential: c·e^{beta(t−x0)} for t ≤ x0, c·e^{alpha(t−x0)}
    /// for t > x0, with alpha < beta (±∞ allowed for one-sided decay).
    TwoSidedExp { alpha: f64, beta: f64, c: f64, x0: f64 },
    /// M(t) = 2e^{−|t|} − e^{−2|t|}.
    MKernel,
    /// Gamma density t^{alpha−1}e^{−t}/Γ(alpha) on t > 0, alpha ≥ 1.
    LambdaAlpha { alpha: f64 },
}

impl KernelVariant {
    pub fn validate(&self) -> Result<()> {
        match self {
            KernelVariant::OmegaQr { q, r } => {
                if *q <= 0.0 || *r <= 0.0 {
                    return Err(Error::domain("OmegaQr requires q > 0 and r > 0"));
                }
            }
            KernelVariant::HankelRankTwo { a0, c0, u0 } => {
                if *a0 < 0.0 || *c0 <= 0.0 || *u0 <= 0.0 || *u0 == 1.0 {
                    return Err(Error::domain(
                        "HankelRankTwo requires a0 ≥ 0, c0 > 0, u0 > 0 and u0 ≠ 1",
                    ));
                }
            }
            KernelVariant::Heaviside { d } | KernelVariant::LambdaD { d } => {
                let v = d.to_f64();
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::domain("step value d must lie in [0, 1]"));
                }
            }
            KernelVariant::TwoSidedExp { alpha, beta, c, .. } => {
                if !(alpha < beta) || *c <= 0.0 {
                    return Err(Error::domain("TwoSidedExp requires alpha < beta and c > 0"));
                }
            }
            KernelVariant::LambdaAlpha { alpha } => {
                if *alpha < 1.0 {
                    return Err(Error::domain("LambdaAlpha requires alpha ≥ 1"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// True for kernels of the form Λ(x − y).
    pub fn is_toeplitz(&self) -> bool {
        !matches!(self, KernelVariant::Jks | KernelVariant::HankelRankTwo { .. })
    }

    pub fn is_hankel(&self) -> bool {
        matches!(self, KernelVariant::HankelRankTwo { .. })
    }
}

/// How 0^0 is resolved under an entrywise power. The default sends it to 0,
/// which keeps the zero pattern of the base kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroConvention {
    ZeroToZero,
    ZeroToOne,
}

impl Default for ZeroConvention {
    fn default() -> Self {
        ZeroConvention::ZeroToZero
    }
}

/// Pointwise positive scaling used by DiagScale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleFn {
    One,
    Const { c: f64 },
    /// x ↦ e^{rate·x}
    Exp { rate: f64 },
}

impl ScaleFn {
    pub fn apply(&self, x: &Scalar) -> Scalar {
        match self {
            ScaleFn::One => x.one_like(),
            ScaleFn::Const { c } => x.float_like(*c),
            ScaleFn::Exp { rate } => x.mul(&x.float_like(*rate)).exp(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// Entrywise power of the kernel value.
    Power {
        alpha: f64,
        #[serde(default)]
        zero_convention: ZeroConvention,
    },
    /// Λ(t − a): translation kernels only.
    Shift { a: f64 },
    /// Λ(m·t), m > 0: translation kernels only.
    ArgScale { m: f64 },
    /// Evaluate at (−x, −y); for translation kernels this is argument
    /// reversal Λ(−t), and sampling at negated-reversed tuples reproduces a
    /// row-and-column flip of the original sample.
    RowColReverse,
    /// row_fn(x) · K(x, y) · col_fn(y).
    DiagScale { row_fn: ScaleFn, col_fn: ScaleFn },
}

/// A kernel plus its transform stack, applied left to right (the first
/// entry acts closest to the base kernel).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelSpec {
    #[serde(flatten)]
    pub variant: KernelVariant,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transforms: Vec<Transform>,
}

impl KernelSpec {
    pub fn new(variant: KernelVariant) -> Result<KernelSpec> {
        variant.validate()?;
        Ok(KernelSpec { variant, transforms: Vec::new() })
    }

    pub fn with_transforms(variant: KernelVariant, transforms: Vec<Transform>) -> Result<KernelSpec> {
        variant.validate()?;
        let spec = KernelSpec { variant, transforms };
        spec.check_transforms()?;
        Ok(spec)
    }

    pub fn powered(variant: KernelVariant, alpha: f64) -> Result<KernelSpec> {
        KernelSpec::with_transforms(
            variant,
            vec![Transform::Power { alpha, zero_convention: ZeroConvention::ZeroToZero }],
        )
    }

    fn check_transforms(&self) -> Result<()> {
        for t in &self.transforms {
            match t {
                Transform::Power { alpha, .. } if *alpha < 0.0 => {
                    return Err(Error::domain("entrywise power must be nonnegative"));
                }
                Transform::ArgScale { m } if *m <= 0.0 => {
                    return Err(Error::domain("argument scale must be positive"));
                }
                Transform::Shift { .. } | Transform::ArgScale { .. }
                    if !self.variant.is_toeplitz() && !self.variant.is_hankel() =>
                {
                    return Err(Error::domain(
                        "argument shift/scale only applies to single-variable kernels",
                    ));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Canonical form used for equality: argument transforms collapse into
    /// one scale-then-shift pair, adjacent powers with the common 0↦0
    /// convention merge, and identity transforms disappear.
    pub fn normalized(&self) -> KernelSpec {
        let mut out: Vec<Transform> = Vec::new();
        for t in &self.transforms {
            match (out.last_mut(), t) {
                (_, Transform::ArgScale { m }) if *m == 1.0 => {}
                (_, Transform::Shift { a }) if *a == 0.0 => {}
                (
                    _,
                    Transform::Power { alpha, zero_convention: ZeroConvention::ZeroToZero },
                ) if *alpha == 1.0 => {}
                // Shift(a) then ArgScale(m) gives Λ(m t − a); rewrite as
                // the canonical scale-then-shift pair ArgScale(m), Shift(a).
                (Some(Transform::Shift { a }), Transform::ArgScale { m }) => {
                    let a = *a;
                    out.pop();
                    match out.last_mut() {
                        Some(Transform::ArgScale { m: m0 }) => *m0 *= m,
                        _ => out.push(Transform::ArgScale { m: *m }),
                    }
                    out.push(Transform::Shift { a });
                }
                (Some(Transform::Shift { a }), Transform::Shift { a: a2 }) => *a += a2,
                (Some(Transform::ArgScale { m }), Transform::ArgScale { m: m2 }) => *m *= m2,
                (
                    Some(Transform::Power { alpha, zero_convention: ZeroConvention::ZeroToZero }),
                    Transform::Power { alpha: a2, zero_convention: ZeroConvention::ZeroToZero },
                ) => *alpha *= a2,
                (Some(Transform::RowColReverse), Transform::RowColReverse) => {
                    out.pop();
                }
                (_, t) => out.push(t.clone()),
            }
        }
        KernelSpec { variant: self.variant.clone(), transforms: out }
    }
}

impl PartialEq for KernelSpec {
    fn eq(&self, other: &KernelSpec) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.variant == b.variant && a.transforms == b.transforms
    }
}

/// Strictly increasing finite tuple of sample points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IncreasingTuple {
    coords: Vec<Scalar>,
}

impl IncreasingTuple {
    pub fn new(coords: Vec<Scalar>) -> Result<IncreasingTuple> {
        if coords.is_empty() {
            return Err(Error::structural("tuple must be nonempty"));
        }
        for w in coords.windows(2) {
            if w[0].cmp(&w[1]) != std::cmp::Ordering::Less {
                return Err(Error::structural("tuple coordinates must be strictly increasing"));
            }
        }
        Ok(IncreasingTuple { coords })
    }

    pub fn from_f64s(values: &[f64]) -> Result<IncreasingTuple> {
        IncreasingTuple::new(values.iter().map(|&v| Scalar::Float(v)).collect())
    }

    pub fn from_ints(values: &[i64]) -> Result<IncreasingTuple> {
        IncreasingTuple::new(values.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn from_ratios(values: &[(i64, i64)]) -> Result<IncreasingTuple> {
        IncreasingTuple::new(values.iter().map(|&(n, d)| Scalar::ratio(n, d)).collect())
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.coords.iter().map(Scalar::to_f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_rejects_non_increasing() {
        assert!(IncreasingTuple::from_f64s(&[1.0, 1.0]).is_err());
        assert!(IncreasingTuple::from_f64s(&[2.0, 1.0]).is_err());
        assert!(IncreasingTuple::from_f64s(&[-1.0, 0.0, 3.0]).is_ok());
    }

    #[test]
    fn normalization_collapses_arg_transforms() {
        let a = KernelSpec::with_transforms(
            KernelVariant::Omega,
            vec![Transform::Shift { a: 2.0 }, Transform::ArgScale { m: 3.0 }],
        )
        .unwrap();
        let b = KernelSpec::with_transforms(
            KernelVariant::Omega,
            vec![Transform::ArgScale { m: 3.0 }, Transform::Shift { a: 2.0 }],
        )
        .unwrap();
        assert_eq!(a, b);
        let c = KernelSpec::with_transforms(
            KernelVariant::Omega,
            vec![Transform::RowColReverse, Transform::RowColReverse],
        )
        .unwrap();
        assert_eq!(c, KernelSpec::new(KernelVariant::Omega).unwrap());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = KernelSpec::with_transforms(
            KernelVariant::Heaviside { d: Scalar::ratio(1, 2) },
            vec![Transform::Power { alpha: 2.0, zero_convention: ZeroConvention::ZeroToZero }],
        )
        .unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"variant\""));
        let back: KernelSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
        assert_eq!(back.variant, spec.variant);
    }

    #[test]
    fn parameter_validation() {
        assert!(KernelSpec::new(KernelVariant::OmegaQr { q: -1.0, r: 2.0 }).is_err());
        assert!(KernelSpec::new(KernelVariant::TwoSidedExp {
            alpha: 2.0,
            beta: 1.0,
            c: 1.0,
            x0: 0.0
        })
        .is_err());
        assert!(KernelSpec::new(KernelVariant::TwoSidedExp {
            alpha: 0.5,
            beta: 2.0,
            c: 1.0,
            x0: 0.0
        })
        .is_ok());
    }
}
