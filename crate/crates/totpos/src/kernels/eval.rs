use std::f64::consts::FRAC_PI_2;

use super::{IncreasingTuple, KernelSpec, KernelVariant, ScaleFn, Transform, ZeroConvention};
use crate::error::Result;
use crate::laplace::gamma::gamma_real;
use crate::numerics::{Matrix, Scalar};

/// Pointwise kernel value at (x, y). Stays exact whenever the closed form
/// permits (the hinge kernel and step kernels at exact points, integer
/// powers thereof); transcendental branches demote to the inputs' float
/// representation. Boundary zeros are returned as exact zeros of the input
/// representation so that degenerate minors classify as Zero, not ±ε.
pub fn eval(spec: &KernelSpec, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    spec.variant.validate()?;
    spec.check_transforms()?;
    eval_rec(&spec.variant, &spec.transforms, x, y)
}

/// K[x; y]: entry (j, k) is eval at (xs[j], ys[k]).
pub fn sample_matrix(spec: &KernelSpec, xs: &IncreasingTuple, ys: &IncreasingTuple) -> Result<Matrix> {
    spec.variant.validate()?;
    spec.check_transforms()?;
    Matrix::try_from_fn(xs.len(), ys.len(), |j, k| {
        eval_rec(&spec.variant, &spec.transforms, xs.get(j), ys.get(k))
    })
}

fn eval_rec(variant: &KernelVariant, transforms: &[Transform], x: &Scalar, y: &Scalar) -> Result<Scalar> {
    let Some((t, rest)) = transforms.split_last() else {
        return Ok(eval_base(variant, x, y));
    };
    match t {
        Transform::Power { alpha, zero_convention } => {
            let v = eval_rec(variant, rest, x, y)?;
            apply_power(&v, *alpha, *zero_convention)
        }
        Transform::Shift { a } => eval_rec(variant, rest, &x.sub(&x.float_like(*a)), y),
        Transform::ArgScale { m } => {
            eval_rec(variant, rest, &x.mul(&x.float_like(*m)), &y.mul(&y.float_like(*m)))
        }
        Transform::RowColReverse => eval_rec(variant, rest, &x.neg(), &y.neg()),
        Transform::DiagScale { row_fn, col_fn } => {
            let v = eval_rec(variant, rest, x, y)?;
            Ok(scale(row_fn, x).mul(&v).mul(&scale(col_fn, y)))
        }
    }
}

fn scale(f: &ScaleFn, x: &Scalar) -> Scalar {
    f.apply(x)
}

pub(super) fn apply_power(v: &Scalar, alpha: f64, conv: ZeroConvention) -> Result<Scalar> {
    if v.is_zero() {
        return Ok(if alpha == 0.0 && conv == ZeroConvention::ZeroToOne {
            v.one_like()
        } else {
            v.zero_like()
        });
    }
    if alpha == 0.0 {
        return Ok(v.one_like());
    }
    v.powf(alpha)
}

fn eval_base(variant: &KernelVariant, x: &Scalar, y: &Scalar) -> Scalar {
    match variant {
        KernelVariant::Jks => {
            let v = x.mul(y).add(&Scalar::from_int(1));
            if v.cmp_zero() == std::cmp::Ordering::Less {
                v.zero_like()
            } else {
                v
            }
        }
        KernelVariant::HankelRankTwo { a0, c0, u0 } => {
            let t = x.add(y);
            t.mul(&t.float_like(u0.ln()))
                .exp()
                .mul(&t.float_like(*c0))
                .add(&t.float_like(*a0))
        }
        toeplitz => toeplitz_value(toeplitz, &x.sub(y)),
    }
}

fn toeplitz_value(variant: &KernelVariant, t: &Scalar) -> Scalar {
    use std::cmp::Ordering::*;
    match variant {
        KernelVariant::Omega => match t.cmp_zero() {
            Greater => t.mul(&t.neg().exp()),
            _ => t.zero_like(),
        },
        KernelVariant::OmegaQr { q, r } => match t.cmp_zero() {
            Greater => {
                if q == r {
                    // Removable singularity: the q → r limit is r²·t·e^{−rt}.
                    t.float_like(r * r).mul(t).mul(&t.mul(&t.float_like(-r)).exp())
                } else {
                    let half = (r - q) * t.to_f64() / 2.0;
                    if half.abs() < 1e-5 {
                        // (e^{−qt} − e^{−rt})/(r − q) = t·e^{−(q+r)t/2}·sinh(h)/h
                        // with h = (r−q)t/2; series form avoids cancellation.
                        let sinhc = 1.0 + half * half / 6.0;
                        t.float_like(q * r * sinhc)
                            .mul(t)
                            .mul(&t.mul(&t.float_like(-(q + r) / 2.0)).exp())
                    } else {
                        let eq = t.mul(&t.float_like(-q)).exp();
                        let er = t.mul(&t.float_like(-r)).exp();
                        eq.sub(&er).mul(&t.float_like(q * r / (r - q)))
                    }
                }
            }
            _ => t.zero_like(),
        },
        KernelVariant::CosineW => {
            if t.to_f64().abs() < FRAC_PI_2 {
                t.cos()
            } else {
                t.zero_like()
            }
        }
        KernelVariant::Heaviside { d } => match t.cmp_zero() {
            Less => Scalar::from_int(0),
            Equal => d.clone(),
            Greater => Scalar::from_int(1),
        },
        KernelVariant::LambdaD { d } => match t.cmp_zero() {
            Less => t.zero_like(),
            Equal => d.clone(),
            Greater => t.neg().exp(),
        },
        KernelVariant::Gaussian => {
            if t.is_zero() {
                Scalar::from_int(1)
            } else {
                t.mul(t).neg().exp()
            }
        }
        KernelVariant::TwoSidedExp { alpha, beta, c, x0 } => {
            let dt = t.to_f64() - x0;
            let v = if dt == 0.0 {
                *c
            } else {
                let rate = if dt < 0.0 { *beta } else { *alpha };
                let e = rate * dt;
                if e == f64::NEG_INFINITY {
                    0.0
                } else {
                    c * e.exp()
                }
            };
            t.float_like(v)
        }
        KernelVariant::MKernel => {
            let a = t.abs();
            let e1 = a.neg().exp();
            let e2 = a.mul(&Scalar::from_int(2)).neg().exp();
            e1.mul(&Scalar::from_int(2)).sub(&e2)
        }
        KernelVariant::LambdaAlpha { alpha } => match t.cmp_zero() {
            Greater => {
                let power = t.powf(alpha - 1.0).expect("positive base");
                power.mul(&t.neg().exp()).div(&t.float_like(gamma_real(*alpha)))
            }
            _ => t.zero_like(),
        },
        other => unreachable!("non-translation kernel {other:?} in toeplitz_value"),
    }
}
