//! Tensor and hom functors between bigraded bimodules, the rings they build,
//! and the Morita-type checks that use them.

mod endo;
mod hom;
mod morita;
mod tensor;

pub use endo::*;
pub use hom::*;
pub use morita::*;
pub use tensor::*;

#[cfg(test)]
mod tests;
