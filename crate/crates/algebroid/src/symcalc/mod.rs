//! Exact rational exterior calculus on affine n-space.

pub mod form;
pub mod poly;
pub mod rational;

pub use form::{Form, HomotopyError, IndexSet, VectorField};
pub use poly::{Monomial, Polynomial};
pub use rational::Rational;
