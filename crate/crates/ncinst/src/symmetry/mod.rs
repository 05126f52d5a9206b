//! Twisted so(5) and so(5,1) actions by twisted derivations.

pub mod brackets;
mod derivation;
mod families;

pub use derivation::{combination_on, commutator_on, TwistedDerivation};
pub use families::{compatibility_failures, s4_action, s7_action, spinor_derivation, Action, Generator, Variant, SpinorOperator};
