//! Concrete algebras and the geometric structures built on them.

pub mod clifford;
pub mod hodge;
pub mod hopf;
pub mod maps;
pub mod presentations;

pub use clifford::CliffordSet;
pub use hodge::{HodgeError, HodgeStar};
pub use hopf::{build_projection, build_psi, spinor_quadratic};
pub use maps::{local_section, stereographic, subalgebra, AlgebraMap, MapError};
pub use presentations::{build_chart, build_s4, build_s7, presentation, AlgebraKind};
