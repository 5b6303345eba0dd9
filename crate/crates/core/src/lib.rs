//! Exact verification for digital topology: digital images as `k(t,n)`
//! adjacency structures on Z^n, the full family of morphism and covering
//! predicates over them, and path/homotopy lifting - every verdict carrying
//! a replayable witness.

pub mod budget;
pub mod covering;
pub mod doc;
pub mod error;
pub mod lattice;
pub mod lifting;
pub mod morphism;
#[cfg(test)]
pub(crate) mod testutil;
pub mod verdict;

pub use budget::Budget;
pub use covering::{
    check_base, fiber_decomposition, is_covering_eps, is_covering_r1, is_pseudo_covering_v1,
    is_pseudo_covering_v2, is_radius2_covering, EpsVerdict, FiberDecomposition, UnionCondition,
};
pub use error::{Error, Result};
pub use lattice::{
    canonical_cycle, cycle_order, k_value, search_scc, validate_scc, Adjacency, Carrier,
    Connectivity, CurveSpec, DigitalImage, Point, SccReport, SccViolation, Window,
};
pub use lifting::{
    check_homotopy_lifting, check_unique_lifting, lift_path, verify_homotopy,
    HomotopyLiftingOutcome, HomotopySearchLimits, KHomotopy, KPath, LiftAnomaly,
    UniqueLiftingReport,
};
pub use morphism::{
    exists_dt_embedding, induced_isomorphic, is_continuous, is_isomorphism, is_l_isomorphism,
    is_pl_isomorphism, is_radius2_l_isomorphism, is_wl_isomorphism, replay_witness,
    restriction_check, DigitalMap, RestrictionMode, Rule,
};
pub use verdict::{GridBoundary, Reading, Verdict, Witness};
