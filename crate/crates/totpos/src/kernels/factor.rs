use super::eval::apply_power;
use super::{IncreasingTuple, ZeroConvention};
use crate::error::{Error, Result};
use crate::numerics::{Matrix, Scalar};

fn powered(v: f64, alpha: f64) -> Result<Scalar> {
    apply_power(&Scalar::Float(v), alpha, ZeroConvention::ZeroToZero)
}

/// Writes the α-th entrywise power of the hinge-kernel sample
/// max(1 + x_j y_k, 0)^α as a diagonal conjugation of a powered cosine
/// translation sample at (arctan x, arctan y): returns (lhs, rhs) whose
/// entries agree up to roundoff.
pub fn arctan_factorization(
    xs: &IncreasingTuple,
    ys: &IncreasingTuple,
    alpha: f64,
) -> Result<(Matrix, Matrix)> {
    if alpha < 0.0 {
        return Err(Error::domain("power must be nonnegative"));
    }
    let x = xs.to_f64s();
    let y = ys.to_f64s();
    let lhs = Matrix::try_from_fn(x.len(), y.len(), |j, k| {
        powered((1.0 + x[j] * y[k]).max(0.0), alpha)
    })?;
    let u: Vec<f64> = x.iter().map(|v| v.atan()).collect();
    let v: Vec<f64> = y.iter().map(|w| w.atan()).collect();
    let rhs = Matrix::try_from_fn(x.len(), y.len(), |j, k| {
        let t = u[j] - v[k];
        let w = if t.abs() < std::f64::consts::FRAC_PI_2 { t.cos() } else { 0.0 };
        let du = 1.0 / u[j].cos();
        let dv = 1.0 / v[k].cos();
        Ok(powered(du, alpha)?
            .mul(&powered(w, alpha)?)
            .mul(&powered(dv, alpha)?))
    })?;
    Ok((lhs, rhs))
}

/// Writes the transposed α-th power of the one-sided bump translation
/// sample Ω(x_j − y_k)^α as a diagonally conjugated, row-and-column
/// reversed hinge-kernel sample at (−y reversed, 1/x reversed). Requires
/// every x_j > 0.
pub fn jks_omega_factorization(
    xs: &IncreasingTuple,
    ys: &IncreasingTuple,
    alpha: f64,
) -> Result<(Matrix, Matrix)> {
    if alpha < 0.0 {
        return Err(Error::domain("power must be nonnegative"));
    }
    if xs.len() != ys.len() {
        return Err(Error::structural("tuples must have equal length"));
    }
    let x = xs.to_f64s();
    let y = ys.to_f64s();
    if x.iter().any(|&v| v <= 0.0) {
        return Err(Error::domain("all x coordinates must be positive"));
    }
    let p = x.len();
    let omega = |t: f64| if t > 0.0 { t * (-t).exp() } else { 0.0 };
    // Transpose of the powered translation sample: (j,k) ↦ Ω(x_k − y_j)^α.
    let lhs = Matrix::try_from_fn(p, p, |j, k| powered(omega(x[k] - y[j]), alpha))?;

    // y′ = (−y_p, …, −y_1), x′ = (1/x_p, …, 1/x_1);
    // D = diag(e^{y_p}, …, e^{y_1}), D₁ = diag(x_p e^{−x_p}, …, x_1 e^{−x_1}).
    let yp: Vec<f64> = (0..p).map(|j| -y[p - 1 - j]).collect();
    let xp: Vec<f64> = (0..p).map(|j| 1.0 / x[p - 1 - j]).collect();
    let d: Vec<f64> = (0..p).map(|j| y[p - 1 - j].exp()).collect();
    let d1: Vec<f64> = (0..p).map(|j| x[p - 1 - j] * (-x[p - 1 - j]).exp()).collect();
    let conj = Matrix::try_from_fn(p, p, |j, k| {
        let hinge = (1.0 + yp[j] * xp[k]).max(0.0);
        Ok(powered(d[j], alpha)?
            .mul(&powered(hinge, alpha)?)
            .mul(&powered(d1[k], alpha)?))
    })?;
    // Row-and-column reversal aligns the index order with the transposed lhs.
    let rhs = Matrix::from_fn(p, p, |j, k| conj.get(p - 1 - j, p - 1 - k).clone());
    Ok((lhs, rhs))
}
