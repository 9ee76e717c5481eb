//! Real polynomials, the Riemann-sum polynomials that discretize a
//! bounded-support transform, and root location via companion-matrix
//! eigensolves.

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{eval, KernelSpec};
use crate::numerics::Scalar;

/// Dense real polynomial, coefficients in ascending degree order. The
/// trailing (leading-degree) coefficient is nonzero after normalization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealPolynomial {
    coefficients: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial, trimming trailing zero coefficients. The zero
    /// polynomial is represented by a single zero coefficient.
    pub fn new(mut coefficients: Vec<f64>) -> RealPolynomial {
        while coefficients.len() > 1 && coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        RealPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coefficients.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &RealPolynomial) -> RealPolynomial {
        let mut out = vec![0.0; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }

    /// All complex roots via the balanced companion matrix. Degree is
    /// capped at 200, which covers every Riemann-sum polynomial this
    /// library builds.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        if n > 200 {
            return Err(Error::usage("root solve supports degree at most 200"));
        }
        let lead = *self.coefficients.last().expect("normalized");
        if lead == 0.0 {
            return Err(Error::numeric("leading coefficient vanished"));
        }
        let mut companion = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            companion[(j, n - 1)] = -self.coefficients[j] / lead;
            if j + 1 < n {
                companion[(j + 1, j)] = 1.0;
            }
        }
        balance(&mut companion);
        companion
            .complex_eigenvalues()
            .iter()
            .map(|z| Ok(Complex64::new(z.re, z.im)))
            .collect()
    }
}

/// Parlett–Reinsch balancing with powers of two: rescales rows/columns so
/// row and column norms agree, which conditions the eigensolve without
/// perturbing the eigenvalues.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    for _ in 0..50 {
        let mut converged = true;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| a[(j, i)].abs()).sum();
            let r: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0f64;
            let s = c + r;
            while c < r / 2.0 {
                c *= 4.0;
                f *= 2.0;
            }
            while c >= r * 2.0 {
                c /= 4.0;
                f /= 2.0;
            }
            if (c + r / f) < 0.95 * s && f != 1.0 {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Riemann-sum polynomial of a bounded-support profile Λ on (−ρ/2, ρ/2):
/// p_m(z) = (ρ/(m+1)) Σ_{ν=0}^m Λ((2ν−m)ρ/(2m+2)) z^ν. All coefficients
/// must come out positive; a nonpositive sample is reported as a domain
/// error because it violates the construction's hypothesis.
pub fn riemann_polynomial(spec: &KernelSpec, rho: f64, m: usize) -> Result<RealPolynomial> {
    if !(rho > 0.0) {
        return Err(Error::usage("window width must be positive"));
    }
    if m > 200 {
        return Err(Error::usage("Riemann-sum degree is capped at 200"));
    }
    let scale = rho / (m as f64 + 1.0);
    let mut coefficients = Vec::with_capacity(m + 1);
    for nu in 0..=m {
        let x = (2.0 * nu as f64 - m as f64) * rho / (2.0 * m as f64 + 2.0);
        let v = eval(spec, &Scalar::Float(x), &Scalar::Float(0.0))?.to_f64();
        if !(v > 0.0) {
            return Err(Error::domain(format!(
                "profile sample at node {nu} (x = {x}) is {v}; the construction needs a strictly positive profile on the window"
            )));
        }
        coefficients.push(scale * v);
    }
    Ok(RealPolynomial::new(coefficients))
}

/// Value of the Riemann-sum transform F_m(s) = e^{s m ρ/(2m+2)} p_m(e^{−s ρ/(m+1)}),
/// the discrete stand-in for the bilateral transform of the windowed profile.
pub fn riemann_sum_transform(poly: &RealPolynomial, rho: f64, m: usize, s: Complex64) -> Complex64 {
    let z = (-s * (rho / (m as f64 + 1.0))).exp();
    let prefactor = (s * (m as f64 * rho / (2.0 * m as f64 + 2.0))).exp();
    prefactor * poly.eval(z)
}

/// Outcome of a sector root scan: either no root has |arg z| < θ (up to a
/// relative margin), or the widest-offending root is reported.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SectorVerdict {
    ZeroFree { min_abs_arg: f64 },
    Violation { root: [f64; 2], abs_arg: f64 },
}

/// Checks that no root of `poly` lies in the open sector |arg z| < θ.
/// Roots come from the companion eigensolve; the comparison carries a
/// relative margin so roots within rel_eps of the sector boundary do not
/// flip the verdict.
pub fn root_sector_check(poly: &RealPolynomial, theta: f64) -> Result<SectorVerdict> {
    if poly.degree() < 1 {
        return Err(Error::usage("sector check needs degree at least 1"));
    }
    let rel_eps = 1e-9;
    let mut min_abs_arg = f64::INFINITY;
    let mut worst: Option<Complex64> = None;
    for root in poly.roots()? {
        let a = root.im.atan2(root.re).abs();
        if a < min_abs_arg {
            min_abs_arg = a;
            worst = Some(root);
        }
    }
    if min_abs_arg >= theta * (1.0 - rel_eps) {
        Ok(SectorVerdict::ZeroFree { min_abs_arg })
    } else {
        let root = worst.expect("degree >= 1 has a root");
        Ok(SectorVerdict::Violation { root: [root.re, root.im], abs_arg: min_abs_arg })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelVariant;
    use std::f64::consts::PI;

    fn cosine_window() -> KernelSpec {
        KernelSpec::new(KernelVariant::CosineW).unwrap()
    }

    #[test]
    fn riemann_polynomial_small_degrees_match_direct_evaluation() {
        let p1 = riemann_polynomial(&cosine_window(), PI, 1).unwrap();
        let expect = (PI / 2.0) * (PI / 4.0).cos();
        assert_eq!(p1.degree(), 1);
        for &c in p1.coefficients() {
            assert!((c - expect).abs() < 1e-14);
        }

        let p2 = riemann_polynomial(&cosine_window(), PI, 2).unwrap();
        let c = p2.coefficients();
        assert!((c[0] - (PI / 3.0) * (PI / 3.0).cos()).abs() < 1e-14);
        assert!((c[1] - PI / 3.0).abs() < 1e-14);
        assert!((c[2] - c[0]).abs() < 1e-14);
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        let p0 = riemann_polynomial(&cosine_window(), PI, 0).unwrap();
        assert_eq!(p0.degree(), 0);
        assert!(p0.roots().unwrap().is_empty());
    }

    #[test]
    fn sector_check_trivial_cases() {
        let p = RealPolynomial::new(vec![1.0, 1.0]); // root at -1
        match root_sector_check(&p, std::f64::consts::FRAC_PI_2).unwrap() {
            SectorVerdict::ZeroFree { min_abs_arg } => assert!((min_abs_arg - PI).abs() < 1e-12),
            other => panic!("expected zero-free, got {other:?}"),
        }
        let p = RealPolynomial::new(vec![-1.0, 1.0]); // root at +1
        assert!(matches!(
            root_sector_check(&p, 1e-3).unwrap(),
            SectorVerdict::Violation { .. }
        ));
    }

    #[test]
    fn cosine_window_riemann_polynomial_is_sector_free() {
        let m = 20;
        let p = riemann_polynomial(&cosine_window(), PI, m).unwrap();
        let theta = 3.0 * PI / (m as f64 + 2.0);
        assert!(matches!(
            root_sector_check(&p, theta).unwrap(),
            SectorVerdict::ZeroFree { .. }
        ));
    }

    #[test]
    fn sector_half_angle_shrinks_no_faster_than_the_bound() {
        for m in [5usize, 10, 20, 40] {
            let p = riemann_polynomial(&cosine_window(), PI, m).unwrap();
            let theta = 3.0 * PI / (m as f64 + 2.0);
            assert!(
                matches!(root_sector_check(&p, theta).unwrap(), SectorVerdict::ZeroFree { .. }),
                "m = {m}"
            );
        }
    }

    #[test]
    fn riemann_transform_converges_to_the_closed_form() {
        use crate::laplace::transforms::closed_form_transform;
        let spec = cosine_window();
        let s = Complex64::new(0.5, 1.0);
        let truth = closed_form_transform(&spec, s).unwrap().value;
        let mut last = f64::INFINITY;
        for m in [20usize, 40, 80, 160] {
            let p = riemann_polynomial(&spec, PI, m).unwrap();
            let fm = riemann_sum_transform(&p, PI, m, s);
            let err = (fm - truth).norm();
            assert!(err < last, "error not decreasing at m = {m}: {err} vs {last}");
            last = err;
        }
        assert!(last < 1e-2);
    }
}
