//! Exact symbolic verification kernel for the θ-deformed instanton on the
//! four-sphere.

pub mod algebra;
pub mod frontend;
pub mod geometry;
pub mod index;
pub mod instanton;
pub mod matrixdga;
pub mod scalar;
pub mod symmetry;
