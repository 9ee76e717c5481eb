//! Complex zero search for transforms: coarse grid scan over a rectangle,
//! damped Newton polish of candidate minima, and an argument-principle
//! winding count as an independent cross-check. Used to certify that a
//! transform is zero-free inside a horizontal strip |Im s| < h.

use num::complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Axis-aligned search rectangle in the complex plane.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoxRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl BoxRegion {
    pub fn centered(re_half: f64, im_half: f64) -> BoxRegion {
        BoxRegion { re_min: -re_half, re_max: re_half, im_min: -im_half, im_max: im_half }
    }

    fn contains(&self, z: Complex64, margin: f64) -> bool {
        z.re >= self.re_min - margin
            && z.re <= self.re_max + margin
            && z.im >= self.im_min - margin
            && z.im <= self.im_max + margin
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StripVerdict {
    ZeroFree,
    ZerosPresent,
}

/// Result of a strip scan: all polished zeros found inside the search box,
/// and whether any of them lies strictly inside the strip |Im s| < h.
/// `winding_consistent` records whether the argument-principle count over
/// the box boundary agrees with the number of polished zeros.
#[derive(Clone, Debug, Serialize)]
pub struct StripCheckReport {
    pub half_height: f64,
    pub search_box: BoxRegion,
    pub zeros: Vec<[f64; 2]>,
    pub verdict: StripVerdict,
    pub winding_consistent: bool,
}

/// Central-difference derivative; step scales with |z| so the estimate
/// stays sane far from the origin.
fn derivative(f: &(dyn Fn(Complex64) -> Complex64 + Sync), z: Complex64) -> Complex64 {
    let h = 1e-7 * (1.0 + z.norm());
    (f(z + h) - f(z - h)) / (2.0 * h)
}

/// Damped Newton polish from a seed. Returns the landing point if the
/// residual drops below `tol` times the local scale |f'|·(1+|z|) + 1.
fn polish(
    f: &(dyn Fn(Complex64) -> Complex64 + Sync),
    mut z: Complex64,
    tol: f64,
) -> Option<Complex64> {
    let mut fz = f(z);
    for _ in 0..80 {
        let d = derivative(f, z);
        if d.norm() == 0.0 {
            break;
        }
        let mut step = fz / d;
        // Damping: halve until the residual actually shrinks.
        let mut improved = false;
        for _ in 0..25 {
            let znew = z - step;
            let fnew = f(znew);
            if fnew.norm() < fz.norm() {
                z = znew;
                fz = fnew;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
        if fz.norm() <= tol {
            break;
        }
    }
    let scale = derivative(f, z).norm() * (1.0 + z.norm()) + 1.0;
    (fz.norm() <= tol * scale).then_some(z)
}

/// Winding number of f around the rectangle boundary, with adaptive edge
/// refinement so consecutive phase steps stay below π/2.
fn winding_number(f: &(dyn Fn(Complex64) -> Complex64 + Sync), rect: &BoxRegion) -> Option<i64> {
    let corners = [
        Complex64::new(rect.re_min, rect.im_min),
        Complex64::new(rect.re_max, rect.im_min),
        Complex64::new(rect.re_max, rect.im_max),
        Complex64::new(rect.re_min, rect.im_max),
    ];
    let mut total = 0.0f64;
    for e in 0..4 {
        let a = corners[e];
        let b = corners[(e + 1) % 4];
        let mut n = 32usize;
        loop {
            let mut sum = 0.0;
            let mut ok = true;
            let mut prev = f(a);
            if prev.norm() == 0.0 {
                return None;
            }
            for k in 1..=n {
                let z = a + (b - a) * (k as f64 / n as f64);
                let cur = f(z);
                if cur.norm() == 0.0 {
                    return None;
                }
                let d = (cur / prev).arg();
                if d.abs() > std::f64::consts::FRAC_PI_2 {
                    ok = false;
                    break;
                }
                sum += d;
                prev = cur;
            }
            if ok {
                total += sum;
                break;
            }
            n *= 2;
            if n > 1 << 16 {
                return None;
            }
        }
    }
    Some((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

/// Scans `transform` for zeros over `search_box` on an (nx × ny) grid,
/// polishes local minima of |f| with damped Newton steps, deduplicates the
/// landings, and cross-checks the count against the boundary winding
/// number. Verdict is zero-free iff no polished zero lies strictly inside
/// the strip |Im s| < half_height.
pub fn strip_zero_check(
    transform: &(dyn Fn(Complex64) -> Complex64 + Sync),
    half_height: f64,
    search_box: BoxRegion,
    grid: (usize, usize),
) -> Result<StripCheckReport> {
    let (nx, ny) = grid;
    if nx < 3 || ny < 3 {
        return Err(Error::usage("grid must be at least 3x3"));
    }
    if !(search_box.re_min < search_box.re_max && search_box.im_min < search_box.im_max) {
        return Err(Error::usage("degenerate search box"));
    }
    let dx = (search_box.re_max - search_box.re_min) / (nx - 1) as f64;
    let dy = (search_box.im_max - search_box.im_min) / (ny - 1) as f64;
    let point = |i: usize, j: usize| {
        Complex64::new(search_box.re_min + dx * i as f64, search_box.im_min + dy * j as f64)
    };

    // Grid magnitudes, rows in parallel, deterministic order by index.
    let mags: Vec<Vec<f64>> = (0..ny)
        .into_par_iter()
        .map(|j| (0..nx).map(|i| transform(point(i, j)).norm()).collect())
        .collect();

    // Seeds: grid points that do not exceed any of their 8 neighbours.
    let mut seeds = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let v = mags[j][i];
            let mut minimal = true;
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    if ii >= 0 && jj >= 0 && (ii as usize) < nx && (jj as usize) < ny {
                        minimal &= v <= mags[jj as usize][ii as usize];
                    }
                }
            }
            if minimal {
                seeds.push(point(i, j));
            }
        }
    }

    let tol = 1e-12;
    let polished: Vec<Complex64> = seeds
        .par_iter()
        .filter_map(|&z| polish(transform, z, tol))
        .collect();

    // Deduplicate landings (grid order is deterministic; sort for stability).
    let merge_dist = 1e-6 * (1.0 + dx.hypot(dy));
    let mut zeros: Vec<Complex64> = Vec::new();
    let mut sorted = polished;
    sorted.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    for z in sorted {
        if !search_box.contains(z, 10.0 * merge_dist) {
            continue;
        }
        if zeros.iter().all(|w| (z - w).norm() > merge_dist) {
            zeros.push(z);
        }
    }

    // Cross-check: winding over the box boundary should count the zeros
    // strictly inside it (boundary zeros are excluded from the count and
    // make the winding integral unreliable, so skip the check then).
    let edge_margin = 1e-6 * (1.0 + dx.hypot(dy));
    let interior = zeros
        .iter()
        .filter(|z| {
            z.re > search_box.re_min + edge_margin
                && z.re < search_box.re_max - edge_margin
                && z.im > search_box.im_min + edge_margin
                && z.im < search_box.im_max - edge_margin
        })
        .count() as i64;
    let boundary_zero = zeros.iter().any(|z| {
        !(z.re > search_box.re_min + edge_margin
            && z.re < search_box.re_max - edge_margin
            && z.im > search_box.im_min + edge_margin
            && z.im < search_box.im_max - edge_margin)
    });
    let winding_consistent = if boundary_zero {
        true
    } else {
        match winding_number(transform, &search_box) {
            Some(w) => w == interior,
            None => true,
        }
    };

    let inside_strip = zeros.iter().any(|z| z.im.abs() < half_height);
    Ok(StripCheckReport {
        half_height,
        search_box,
        zeros: zeros.iter().map(|z| [z.re, z.im]).collect(),
        verdict: if inside_strip { StripVerdict::ZerosPresent } else { StripVerdict::ZeroFree },
        winding_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{KernelSpec, KernelVariant, Transform, ZeroConvention};
    use crate::laplace::transforms::closed_form_transform;

    fn cosine_power_transform(alpha: f64) -> impl Fn(Complex64) -> Complex64 + Sync {
        let spec = KernelSpec::with_transforms(
            KernelVariant::CosineW,
            vec![Transform::Power { alpha, zero_convention: ZeroConvention::ZeroToZero }],
        )
        .unwrap();
        move |s| closed_form_transform(&spec, s).unwrap().value
    }

    #[test]
    fn cosine_window_is_zero_free_inside_its_strip() {
        let f = cosine_power_transform(1.0);
        let report =
            strip_zero_check(&f, 3.0 - 1e-6, BoxRegion::centered(5.0, 5.0), (101, 101)).unwrap();
        assert_eq!(report.verdict, StripVerdict::ZeroFree);
        // The zeros at ±3i sit on the strip boundary and must be found.
        assert!(report
            .zeros
            .iter()
            .any(|z| z[0].abs() < 1e-8 && (z[1] - 3.0).abs() < 1e-8));
        assert!(report
            .zeros
            .iter()
            .any(|z| z[0].abs() < 1e-8 && (z[1] + 3.0).abs() < 1e-8));
        assert!(report.winding_consistent);
    }

    #[test]
    fn squared_cosine_window_zeros_move_to_four_i() {
        let f = cosine_power_transform(2.0);
        let report =
            strip_zero_check(&f, 4.0 - 1e-6, BoxRegion::centered(5.0, 5.0), (101, 101)).unwrap();
        assert_eq!(report.verdict, StripVerdict::ZeroFree);
        assert!(report
            .zeros
            .iter()
            .any(|z| z[0].abs() < 1e-8 && (z[1] - 4.0).abs() < 1e-8));
    }

    #[test]
    fn rational_transform_is_zero_free_everywhere() {
        let f = |s: Complex64| ((s + 1.0) * (s + 1.0)).inv();
        let report =
            strip_zero_check(&f, 100.0, BoxRegion::centered(5.0, 5.0), (61, 61)).unwrap();
        assert_eq!(report.verdict, StripVerdict::ZeroFree);
        assert!(report.zeros.is_empty());
    }

    #[test]
    fn planted_zero_is_found_and_flags_the_strip() {
        let f = |s: Complex64| (s - Complex64::new(0.5, 0.25)) * (s + 2.0);
        let report = strip_zero_check(&f, 1.0, BoxRegion::centered(3.0, 3.0), (61, 61)).unwrap();
        assert_eq!(report.verdict, StripVerdict::ZerosPresent);
        assert!(report
            .zeros
            .iter()
            .any(|z| (z[0] - 0.5).abs() < 1e-9 && (z[1] - 0.25).abs() < 1e-9));
        assert!(report.winding_consistent);
    }
}
