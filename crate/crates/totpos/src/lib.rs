//! Checkers and probes for total nonnegativity / total positivity of
//! structured kernels: a kernel zoo (translation kernels, moment kernels,
//! the hinge kernel max(1+xy, 0)), contiguous-minor criteria, entrywise
//! power probes around the critical exponents, matrix-order positivity and
//! convexity sweeps, and two-sided Laplace transforms with zero-free strip
//! scans.

pub mod error;
pub mod harness;
pub mod kernels;
pub mod laplace;
pub mod loewner;
pub mod numerics;
pub mod probes;
pub mod tptest;

pub use error::{Error, Result};
