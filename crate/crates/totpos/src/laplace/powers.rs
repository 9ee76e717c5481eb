//! Integer-power transform identities: the factored rational form for
//! powers of the two-rate bump, and the cleared-denominator polynomial
//! analysis for powers of the difference-of-exponentials kernel.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use super::poly::RealPolynomial;
use crate::error::{Error, Result};

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn big_binomial(n: u32, k: u32) -> BigInt {
    let mut v = BigInt::one();
    for j in 0..k {
        v = v * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    v
}

/// Transform of the α-th power of the two-rate bump with rates q ≠ r as a
/// factored rational function: returns the constant numerator
/// f = α!(qr)^α and the denominator g(s) = ∏_{j=0}^{α} (s + jr + (α−j)q),
/// so that the transform equals f / g(s). The identity is validated
/// internally against the partial-fraction expansion of the binomial
/// integral at three random points.
pub fn omega_qr_integer_power_transform(
    q: f64,
    r: f64,
    alpha: u32,
) -> Result<(f64, RealPolynomial)> {
    if !(q > 0.0 && r > 0.0) || q == r {
        return Err(Error::usage("rates must be positive and distinct"));
    }
    if alpha == 0 || alpha > 60 {
        return Err(Error::usage("power must be an integer in 1..=60"));
    }
    let f = factorial(alpha) * (q * r).powi(alpha as i32);
    let mut g = RealPolynomial::new(vec![1.0]);
    for j in 0..=alpha {
        let root = f64::from(j) * r + f64::from(alpha - j) * q;
        g = g.mul(&RealPolynomial::new(vec![root, 1.0]));
    }

    // Cross-check: expanding ((qr/(r−q))(e^{−qt} − e^{−rt}))^α with the
    // binomial theorem and transforming term by term gives a partial
    // fraction sum that must agree with f/g.
    let scale = (q * r / (r - q)).powi(alpha as i32);
    let partial_fractions = |s: Complex64| {
        let mut total = Complex64::new(0.0, 0.0);
        for k in 0..=alpha {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let rate = f64::from(alpha - k) * q + f64::from(k) * r;
            total += sign * big_binomial(alpha, k).to_f64().unwrap() / (s + rate);
        }
        scale * total
    };
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed);
    for _ in 0..3 {
        let s = Complex64::new(rng.gen_range(0.0..4.0), rng.gen_range(-4.0..4.0));
        let lhs = Complex64::new(f, 0.0) / g.eval(s);
        let rhs = partial_fractions(s);
        if (lhs - rhs).norm() > 1e-12 * lhs.norm().max(1.0) {
            return Err(Error::numeric(format!(
                "factored form disagrees with partial fractions at s = {s}: {lhs} vs {rhs}"
            )));
        }
    }
    Ok((f, g))
}

/// Even polynomial with exact rational coefficients in u = s².
#[derive(Clone, Debug)]
struct EvenPoly {
    // Coefficient of u^k = s^{2k}.
    coeffs: Vec<BigRational>,
}

impl EvenPoly {
    fn zero() -> EvenPoly {
        EvenPoly { coeffs: vec![BigRational::zero()] }
    }

    fn add_scaled(&mut self, other: &EvenPoly, scale: &BigRational) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigRational::zero());
        }
        for (j, c) in other.coeffs.iter().enumerate() {
            self.coeffs[j] += c * scale;
        }
    }

    // Multiply by (u − a).
    fn mul_linear(&self, a: &BigRational) -> EvenPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j] -= c * a;
            out[j + 1] += c.clone();
        }
        EvenPoly { coeffs: out }
    }

    fn eval_at_s(&self, s: &BigRational) -> BigRational {
        let u = s * s;
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u.clone() + c;
        }
        acc
    }

    // Coefficients in s (ascending), odd entries zero.
    fn to_real_polynomial(&self) -> RealPolynomial {
        let mut out = Vec::with_capacity(2 * self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.to_f64().unwrap_or(f64::NAN));
            out.push(0.0);
        }
        RealPolynomial::new(out)
    }
}

/// Analysis of the n-th power of the difference-of-exponentials kernel
/// 2e^{−|t|} − e^{−2|t|}. Its transform is p_n(s) / ∏_{k=0}^{n} (s² − (n+k)²)
/// with p_n obtained by clearing denominators in the partial-fraction sum.
/// For n = 1 the numerator is the constant 12, so the reciprocal transform
/// is a polynomial and the kernel is a Pólya frequency function; for n ≥ 2
/// the numerator does not cancel any denominator root and the reciprocal
/// is not of that form.
#[derive(Clone, Debug, Serialize)]
pub struct MKernelPowerReport {
    pub n: u32,
    /// Cleared-denominator numerator polynomial in s.
    pub numerator: RealPolynomial,
    /// Roots of the cleared denominator: ±(n+k) for 0 ≤ k ≤ n.
    pub denominator_roots: Vec<f64>,
    /// Numerator values at the denominator roots ±(n+k), as (root, value).
    pub values_at_roots: Vec<(f64, f64)>,
    /// p_n(n) / p_n(2n); > 1 for every n ≥ 2.
    pub edge_ratio: f64,
    pub polya_frequency: bool,
}

pub fn mkernel_power_analysis(n: u32) -> Result<MKernelPowerReport> {
    if n == 0 || n > 40 {
        return Err(Error::usage("power must be an integer in 1..=40"));
    }
    // Transform: 2 Σ_{k=0}^{n} (−1)^{k+1} C(n,k) 2^{n−k} (n+k) / (s² − (n+k)²).
    // Clear denominators over u = s²: numerator = Σ_k c_k ∏_{j≠k} (u − (n+j)²).
    let mut numerator = EvenPoly::zero();
    for k in 0..=n {
        let sign = if k % 2 == 0 { BigInt::from(-1) } else { BigInt::one() };
        let c = BigRational::from_integer(
            sign * BigInt::from(2)
                * big_binomial(n, k)
                * BigInt::from(2).pow(n - k)
                * BigInt::from(n + k),
        );
        let mut term = EvenPoly { coeffs: vec![BigRational::one()] };
        for j in 0..=n {
            if j != k {
                let a = BigRational::from_integer(BigInt::from((n + j) * (n + j)));
                term = term.mul_linear(&a);
            }
        }
        numerator.add_scaled(&term, &c);
    }

    let mut denominator_roots = Vec::new();
    let mut values_at_roots = Vec::new();
    for k in 0..=n {
        for sgn in [1i64, -1] {
            let root = sgn * i64::from(n + k);
            let v = numerator.eval_at_s(&BigRational::from_integer(BigInt::from(root)));
            denominator_roots.push(root as f64);
            values_at_roots.push((root as f64, v.to_f64().unwrap_or(f64::NAN)));
            if n >= 2 && v.is_zero() {
                return Err(Error::numeric(format!(
                    "numerator unexpectedly vanishes at the pole s = {root}"
                )));
            }
        }
    }

    let at_n = numerator.eval_at_s(&BigRational::from_integer(BigInt::from(n)));
    let at_2n = numerator.eval_at_s(&BigRational::from_integer(BigInt::from(2 * n)));
    if at_2n.is_zero() {
        return Err(Error::numeric("numerator vanishes at s = 2n; ratio undefined"));
    }
    let ratio = &at_n / &at_2n;
    let edge_ratio = ratio.to_f64().unwrap_or(f64::NAN);
    let polya_frequency = n == 1;
    if !polya_frequency && ratio <= BigRational::one() {
        return Err(Error::numeric(format!(
            "edge ratio p_n(n)/p_n(2n) = {edge_ratio} is not > 1 for n = {n}"
        )));
    }

    Ok(MKernelPowerReport {
        n,
        numerator: numerator.to_real_polynomial(),
        denominator_roots,
        values_at_roots,
        edge_ratio,
        polya_frequency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_rate_power_two_matches_direct_integration() {
        let (f, g) = omega_qr_integer_power_transform(1.0, 2.0, 2).unwrap();
        assert!((f - 8.0).abs() < 1e-12);
        // g = (s+2)(s+3)(s+4) = s^3 + 9s^2 + 26s + 24.
        assert_eq!(g.degree(), 3);
        let c = g.coefficients();
        assert!((c[0] - 24.0).abs() < 1e-9);
        assert!((c[1] - 26.0).abs() < 1e-9);
        assert!((c[2] - 9.0).abs() < 1e-9);
        assert!((c[3] - 1.0).abs() < 1e-12);
        // Value at s = 0 equals the squared bump's total mass, 1/3.
        let v = f / g.eval_real(0.0);
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn two_rate_power_one_reduces_to_the_plain_transform() {
        let (f, g) = omega_qr_integer_power_transform(1.0, 2.0, 1).unwrap();
        assert!((f - 2.0).abs() < 1e-12);
        assert!((g.eval_real(0.0) - 2.0).abs() < 1e-12, "(s+1)(s+2) at 0");

        let (f, g) = omega_qr_integer_power_transform(3.0, 5.0, 1).unwrap();
        assert!((f - 15.0).abs() < 1e-12);
        assert!((g.eval_real(0.0) - 15.0).abs() < 1e-12, "(s+3)(s+5) at 0");
        assert!((g.eval_real(1.0) - 24.0).abs() < 1e-12);
    }

    #[test]
    fn difference_kernel_first_power_is_polya_frequency() {
        let report = mkernel_power_analysis(1).unwrap();
        assert!(report.polya_frequency);
        // Numerator is the constant 12 (transform 12/((s²−1)(s²−4))).
        assert_eq!(report.numerator.degree(), 0);
        assert!((report.numerator.coefficients()[0] - 12.0).abs() < 1e-12);
    }

    #[test]
    fn higher_powers_are_not_polya_frequency() {
        for n in [2u32, 3] {
            let report = mkernel_power_analysis(n).unwrap();
            assert!(!report.polya_frequency);
            assert!(report.edge_ratio > 1.0, "n = {n}: ratio {}", report.edge_ratio);
            for (root, v) in &report.values_at_roots {
                assert!(*v != 0.0, "n = {n}: numerator vanishes at {root}");
            }
        }
    }

    #[test]
    fn cleared_numerator_reproduces_the_partial_fraction_sum() {
        let n = 2u32;
        let report = mkernel_power_analysis(n).unwrap();
        let s = Complex64::new(0.3, 0.7);
        let mut denom = Complex64::new(1.0, 0.0);
        for k in 0..=n {
            let nk = f64::from(n + k);
            denom *= s * s - nk * nk;
        }
        let lhs = report.numerator.eval(s) / denom;
        let mut rhs = Complex64::new(0.0, 0.0);
        for k in 0..=n {
            let nk = f64::from(n + k);
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            let binom = big_binomial(n, k).to_f64().unwrap();
            rhs += sign * binom * 2f64.powi((n - k) as i32) * nk / (s * s - nk * nk);
        }
        rhs *= 2.0;
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }
}
