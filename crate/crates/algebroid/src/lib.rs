//! Exact-arithmetic engine for vertex algebroids, Courant algebroids and
//! the chiral de Rham construction on affine n-space.
//!
//! Everything is computed over arbitrary-precision rationals; every axiom
//! check in the crate is an exact identity, never a tolerance comparison.
//! The main pieces:
//!
//! - [`symcalc`]: polynomials, differential forms, vector fields and the
//!   classical operators (d, wedge, interior product, Lie derivative,
//!   radial homotopy).
//! - [`supercalc`]: the graded ring of the de Rham complex viewed as
//!   functions on a dg manifold, its graded derivations, Kahler 1-forms
//!   and the cone of the identity on vector fields.
//! - [`courant`]: exact Courant algebroids in the split model twisted by a
//!   closed 3-form, with connections, curvature, B-field automorphisms and
//!   the addition/scaling operations.
//! - [`vertex`]: the exact vertex algebroid on the coordinate frame, the
//!   dictionary to 1-truncated vertex algebras, the axiom suites, the sign
//!   search that resolves the printed sign conventions, and the torsor
//!   action of Courant algebroids.
//! - [`chiral`]: the universal rigidified algebroid over the de Rham
//!   complex, the ideal defining its exact quotient, window-truncated
//!   normal forms and the unique-flat-connection algorithm.
//! - [`parse`] / [`report`]: the CLI expression language and JSON reports.

pub mod chiral;
pub mod courant;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod rng;
pub mod supercalc;
pub mod symcalc;
pub mod vertex;

pub use rng::DEFAULT_SEED;
