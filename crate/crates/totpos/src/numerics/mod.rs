pub mod matrix;
pub mod scalar;
pub mod wide;

pub use matrix::{DetResult, Matrix};
pub use scalar::{Mode, Scalar, Sign3, ToleranceProfile};
pub use wide::Wide;
