//! The exact vertex algebroid on the coordinate frame: operations, the
//! truncated dictionary and axiom suites, the sign search, and the torsor
//! action of exact Courant algebroids.

pub mod model;
pub mod rewrite;
pub mod search;
pub mod signs;
pub mod torsor;
pub mod truncated;

pub use model::{
    rand_vertex_section, torsor_add, torsor_add_twisted, torsor_diff, TwistedVertexModel,
    VertexModel, VertexSection,
};
pub use search::{sign_search, sign_search_report, SignSearchReport};
pub use signs::{Sign, SignVector};
pub use torsor::{diff_bracket, diff_pairing, erratum_witness, DiffPair};
pub use truncated::{
    check_identities, check_truncated_axioms, eval_identity, eval_truncated_axiom, to_truncated,
    RecoveredOps, Truncated, VertexInputs, IDENTITIES, TRUNCATED_AXIOMS,
};
