//! Graded-commutative calculus for the de Rham complex viewed as the
//! functions on a dg manifold.

pub mod derivation;
pub mod kahler;
pub mod super_elem;

pub use derivation::{gder_apply, gder_bracket, tau, GradedDerivation, TildeField};
pub use kahler::{kahler_d, KahlerOneForm};
pub use super_elem::{SuperElement, SuperMono};
