//! The de Rham capstone: the universal rigidified algebroid over the
//! graded ring, its ideal, window quotients and the flat-connection
//! algorithm.

pub mod dgflat;
pub mod exactness;
pub mod graded_check;
pub mod tilde_u;
pub mod window;

pub use dgflat::{
    unique_flat_connection_dg, DerivCoords, DgCourantModel, DgError, DgSection, SplittingReport,
};
pub use exactness::{u_exactness_check, DegreeRow, ExactnessReport};
pub use graded_check::{
    check_graded_identities, eval_graded_identity, graded_sign_search, rand_window_section,
    GRADED_IDENTITIES,
};
pub use tilde_u::{u_bracket, u_derivation, u_pairing, u_star, Piece, TensKey, TildeUSection};
pub use window::{
    check_condition_lin, check_ideal_invariance, ideal_membership, k_generator, u_normal_form,
    windowed_ideal, IdealBasis, Truncation, Window, WindowError, WindowedIdeal,
};
