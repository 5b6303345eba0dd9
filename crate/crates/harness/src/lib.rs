//! Exhaustive enumeration of small digital images and maps, the
//! implication matrix across all predicates, separating-witness search,
//! and adjudication of the published covering-space claims.

pub mod claims;
pub mod corpus;
pub mod fixtures;
pub mod matrix;
pub mod props;

pub use claims::{exit_code, run_paper_claims, Certificate, ClaimReport};
pub use corpus::{enumerate_images, enumerate_maps, for_each_map, CorpusSpec, MapFilter};
pub use fixtures::Fixtures;
pub use matrix::{
    find_separating_witness, implication_matrix, ImplicationEntry, MapDescriptor,
    SeparationResult, SeparationWitness, SweepSpec,
};
pub use props::Prop;
