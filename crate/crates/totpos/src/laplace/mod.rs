//! Bilateral Laplace transforms of the translation-invariant kernels:
//! closed forms, adaptive quadrature cross-checks, Riemann-sum polynomial
//! machinery with sector and strip zero checks, and the integer-power
//! transform analyses.

pub mod gamma;
mod poly;
mod powers;
mod strip;
mod transforms;

pub use poly::{riemann_polynomial, riemann_sum_transform, root_sector_check, RealPolynomial, SectorVerdict};
pub use powers::{mkernel_power_analysis, omega_qr_integer_power_transform, MKernelPowerReport};
pub use strip::{strip_zero_check, BoxRegion, StripCheckReport, StripVerdict};
pub use transforms::{closed_form_transform, quadrature_transform, TransformMethod, TransformValue};
