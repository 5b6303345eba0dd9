use thiserror::Error;

use crate::lattice::Point;

/// Domain and resource errors shared by every operation in the crate.
///
/// Predicates that merely *fail* return a [`crate::Verdict`] carrying a
/// witness instead; an `Error` means the question itself was ill-posed
/// (dimension mismatch, point outside the image, ...) or a search ran out
/// of budget.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("adjacency parameter out of range: t={t}, n={n} (need 1 <= t <= n <= {max})")]
    AdjacencyOutOfRange { t: u32, n: u32, max: u32 },

    #[error("point {point} is not in image `{image}`")]
    PointNotInImage { point: Point, image: String },

    #[error("image `{0}` is empty")]
    EmptyImage(String),

    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),

    #[error("map is not total: domain point {0} has no image")]
    NotTotal(Point),

    #[error("map sends {point} to {image_point}, which is outside the codomain")]
    OutsideCodomain { point: Point, image_point: Point },

    #[error("map table assigns {0}, which is not a domain point")]
    TableKeyOutsideDomain(Point),

    #[error("modular rule needs a 1-dimensional domain carrier")]
    ModularDomainNotLine,

    #[error("codomain of modular rule is not a simple closed curve of length {expected}: {reason}")]
    ModularCodomainNotCurve { expected: usize, reason: String },

    #[error("base point {0} is not in the codomain")]
    BaseNotInCodomain(Point),

    #[error("map is not surjective: {missed} has no preimage")]
    NotSurjective { missed: Point },

    #[error("start point {start} does not lie over the path start {over}")]
    StartNotOverPathStart { start: Point, over: Point },

    #[error("sequence is not a path in `{image}`: {reason}")]
    InvalidPath { image: String, reason: String },

    #[error("homotopy grid is ragged or empty")]
    RaggedGrid,

    #[error("homotopy over the map does not verify: {0}")]
    InvalidDownstairsHomotopy(String),

    #[error("search budget exhausted after {spent} steps (limit {limit})")]
    BudgetExceeded { spent: u64, limit: u64 },

    #[error("carrier is not a truncated window, cannot resize it")]
    NotTruncated,

    #[error("witness `{0}` needs path or grid context and cannot be replayed against a map alone")]
    WitnessNeedsContext(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
