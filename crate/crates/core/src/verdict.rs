use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lattice::Point;

/// An explicit resolution of the definitional ambiguity in the slice
/// condition of the pseudo-covering definitions: whether the restriction of
/// the map to a fiber slice must be onto the base neighbourhood, or only
/// onto its own image. Serialized into every covering verdict so results
/// are reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Reading {
    pub restriction_onto_target: bool,
}

impl Reading {
    /// The letter of the weakly-local isomorphism definition: the slice
    /// restriction need only be an isomorphism onto its own image.
    pub const ONTO_IMAGE: Reading = Reading { restriction_onto_target: false };
    /// The stricter reading: the slice restriction must additionally be
    /// surjective onto the base neighbourhood (which makes the slice
    /// condition coincide with the covering-map slice condition).
    pub const ONTO_TARGET: Reading = Reading { restriction_onto_target: true };

    pub const BOTH: [Reading; 2] = [Reading::ONTO_IMAGE, Reading::ONTO_TARGET];
}

impl Default for Reading {
    fn default() -> Self {
        Reading::ONTO_IMAGE
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.restriction_onto_target {
            write!(f, "onto-target")
        } else {
            write!(f, "onto-image")
        }
    }
}

impl FromStr for Reading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "onto-image" | "onto_image" => Ok(Reading::ONTO_IMAGE),
            "onto-target" | "onto_target" => Ok(Reading::ONTO_TARGET),
            other => Err(format!("unknown reading `{other}` (expected onto-image or onto-target)")),
        }
    }
}

impl Serialize for Reading {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Reading", 2)?;
        s.serialize_field(
            "restriction",
            if self.restriction_onto_target { "onto-target" } else { "onto-image" },
        )?;
        // The slice adjacency is pinned to the domain's relation.
        s.serialize_field("slice_adjacency", "k1")?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Reading {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            restriction: String,
            #[serde(default)]
            slice_adjacency: Option<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if let Some(sa) = raw.slice_adjacency {
            if sa != "k1" {
                return Err(serde::de::Error::custom("slice_adjacency must be k1"));
            }
        }
        raw.restriction.parse().map_err(serde::de::Error::custom)
    }
}

/// A structured, replayable certificate for the failure (or, for searches,
/// the outcome) of a predicate. Every variant carries enough data to
/// re-verify the violation against the raw definitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// No domain point maps to `missed`.
    NotSurjective { missed: Point },
    /// Two distinct domain points share an image.
    NotInjective { first: Point, second: Point, image: Point },
    /// `neighbor` is adjacent to `at`, yet its image is neither equal nor
    /// adjacent to the image of `at`.
    NotContinuousAt { at: Point, neighbor: Point, image_at: Point, image_neighbor: Point },
    /// The inverse of a bijection fails continuity at a codomain point.
    InverseNotContinuousAt { at: Point, neighbor: Point, preimage_at: Point, preimage_neighbor: Point },
    /// Restricted to the radius-`radius` neighbourhood of `center`, the map
    /// identifies two points.
    RestrictionNotInjective { center: Point, radius: u32, first: Point, second: Point, image: Point },
    /// The image of a neighbourhood point escapes the target neighbourhood.
    RestrictionEscapesTarget { center: Point, radius: u32, point: Point, image: Point },
    /// The restriction misses `missed` in the target neighbourhood.
    RestrictionNotOnto { center: Point, radius: u32, missed: Point },
    /// Adjacent points of the neighbourhood with non-adjacent distinct images.
    AdjacencyNotPreserved { center: Point, radius: u32, first: Point, second: Point },
    /// Points of the neighbourhood with adjacent images that are themselves
    /// neither equal nor adjacent.
    AdjacencyNotReflected { center: Point, radius: u32, first: Point, second: Point },
    /// The induced subimage on the image of the neighbourhood of `center` is
    /// not abstractly isomorphic to the induced subimage on the target
    /// neighbourhood.
    NeighborhoodImageNotIsomorphic {
        center: Point,
        image_of_neighborhood: Vec<Point>,
        target_neighborhood: Vec<Point>,
    },
    /// A preimage point of the base neighbourhood lies in no fiber slice
    /// (violates the decomposition equality).
    FiberPointUncovered { base: Point, eps: u32, point: Point },
    /// A slice point maps outside the base neighbourhood (violates the
    /// decomposition containment).
    SliceOutsidePreimage { base: Point, eps: u32, fiber_point: Point, point: Point },
    /// Two distinct fiber slices share a point.
    SlicesOverlap { base: Point, eps: u32, first_fiber: Point, second_fiber: Point, common: Point },
    /// The restriction of the map to one fiber slice fails its required
    /// isomorphism property; `inner` is the local violation.
    SliceRestrictionFails { base: Point, eps: u32, fiber_point: Point, inner: Box<Witness> },
    /// No radius in `1..=eps_max` satisfies the covering conditions at
    /// `base`; `at_eps_max` is the violation at the largest radius tried.
    EpsExhausted { base: Point, eps_max: u32, at_eps_max: Box<Witness> },
    /// Lifts of the two paths end at different points.
    TerminalMismatch { terminal_first: Point, terminal_second: Point },
    /// Exhaustive search found no fixed-endpoint homotopy between the two
    /// paths within the stage bound.
    NoDomainHomotopy { stages_tried: u32, states_explored: u64 },
    /// A homotopy grid defect at the given cell.
    GridRowDiscontinuous { row: usize, col: usize },
    GridColumnDiscontinuous { row: usize, col: usize },
    GridEndpointMoved { row: usize, col: usize },
    GridPointOutsideImage { row: usize, col: usize },
    GridBoundaryMismatch { which: GridBoundary, col: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridBoundary {
    FirstRow,
    LastRow,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotSurjective { missed } => write!(f, "not surjective: {missed} has no preimage"),
            Witness::NotInjective { first, second, image } => {
                write!(f, "not injective: {first} and {second} both map to {image}")
            }
            Witness::NotContinuousAt { at, neighbor, image_at, image_neighbor } => write!(
                f,
                "not continuous at {at}: neighbour {neighbor} maps to {image_neighbor}, \
                 outside the unit neighbourhood of {image_at}"
            ),
            Witness::InverseNotContinuousAt { at, neighbor, preimage_at, preimage_neighbor } => write!(
                f,
                "inverse not continuous at {at}: neighbour {neighbor} pulls back to \
                 {preimage_neighbor}, outside the unit neighbourhood of {preimage_at}"
            ),
            Witness::RestrictionNotInjective { center, radius, first, second, image } => write!(
                f,
                "restriction to N({center},{radius}) not injective: {first} and {second} both map to {image}"
            ),
            Witness::RestrictionEscapesTarget { center, radius, point, image } => write!(
                f,
                "restriction to N({center},{radius}) escapes its target: {point} maps to {image}"
            ),
            Witness::RestrictionNotOnto { center, radius, missed } => write!(
                f,
                "restriction to N({center},{radius}) is not onto: {missed} is never hit"
            ),
            Witness::AdjacencyNotPreserved { center, radius, first, second } => write!(
                f,
                "restriction to N({center},{radius}) breaks adjacency: {first} ~ {second} but their images are not adjacent"
            ),
            Witness::AdjacencyNotReflected { center, radius, first, second } => write!(
                f,
                "restriction to N({center},{radius}) does not reflect adjacency: images of {first} and {second} are adjacent but the points are not"
            ),
            Witness::NeighborhoodImageNotIsomorphic { center, .. } => write!(
                f,
                "the image of N({center},1) is not isomorphic to the neighbourhood of the image point"
            ),
            Witness::FiberPointUncovered { base, eps, point } => write!(
                f,
                "decomposition over {base} (radius {eps}) misses {point}: it lies in the preimage but in no slice"
            ),
            Witness::SliceOutsidePreimage { base, eps, fiber_point, point } => write!(
                f,
                "slice of {fiber_point} over {base} (radius {eps}) leaks: {point} maps outside the base neighbourhood"
            ),
            Witness::SlicesOverlap { base, eps, first_fiber, second_fiber, common } => write!(
                f,
                "slices of {first_fiber} and {second_fiber} over {base} (radius {eps}) share {common}"
            ),
            Witness::SliceRestrictionFails { base, fiber_point, inner, .. } => write!(
                f,
                "slice of {fiber_point} over {base} fails: {inner}"
            ),
            Witness::EpsExhausted { base, eps_max, at_eps_max } => write!(
                f,
                "no radius up to {eps_max} works at {base}; at {eps_max}: {at_eps_max}"
            ),
            Witness::TerminalMismatch { terminal_first, terminal_second } => write!(
                f,
                "lifts end at different points: {terminal_first} vs {terminal_second}"
            ),
            Witness::NoDomainHomotopy { stages_tried, states_explored } => write!(
                f,
                "no fixed-endpoint homotopy within {stages_tried} stages ({states_explored} states explored)"
            ),
            Witness::GridRowDiscontinuous { row, col } => {
                write!(f, "grid row {row} is discontinuous at column {col}")
            }
            Witness::GridColumnDiscontinuous { row, col } => {
                write!(f, "grid column {col} is discontinuous between rows {row} and {}", row + 1)
            }
            Witness::GridEndpointMoved { row, col } => {
                write!(f, "endpoint column {col} moves at row {row}")
            }
            Witness::GridPointOutsideImage { row, col } => {
                write!(f, "grid cell ({row},{col}) lies outside the image")
            }
            Witness::GridBoundaryMismatch { which, col } => write!(
                f,
                "{} of the grid differs from the given path at column {col}",
                match which {
                    GridBoundary::FirstRow => "first row",
                    GridBoundary::LastRow => "last row",
                }
            ),
        }
    }
}

impl Witness {
    /// Stable machine tag of the variant; the truncation-stability checks
    /// compare these instead of exact points, since window-dependent scans
    /// may meet an equivalent violation at a shifted location.
    pub fn tag(&self) -> &'static str {
        match self {
            Witness::NotSurjective { .. } => "not_surjective",
            Witness::NotInjective { .. } => "not_injective",
            Witness::NotContinuousAt { .. } => "not_continuous_at",
            Witness::InverseNotContinuousAt { .. } => "inverse_not_continuous_at",
            Witness::RestrictionNotInjective { .. } => "restriction_not_injective",
            Witness::RestrictionEscapesTarget { .. } => "restriction_escapes_target",
            Witness::RestrictionNotOnto { .. } => "restriction_not_onto",
            Witness::AdjacencyNotPreserved { .. } => "adjacency_not_preserved",
            Witness::AdjacencyNotReflected { .. } => "adjacency_not_reflected",
            Witness::NeighborhoodImageNotIsomorphic { .. } => "neighborhood_image_not_isomorphic",
            Witness::FiberPointUncovered { .. } => "fiber_point_uncovered",
            Witness::SliceOutsidePreimage { .. } => "slice_outside_preimage",
            Witness::SlicesOverlap { .. } => "slices_overlap",
            Witness::SliceRestrictionFails { .. } => "slice_restriction_fails",
            Witness::EpsExhausted { .. } => "eps_exhausted",
            Witness::TerminalMismatch { .. } => "terminal_mismatch",
            Witness::NoDomainHomotopy { .. } => "no_domain_homotopy",
            Witness::GridRowDiscontinuous { .. } => "grid_row_discontinuous",
            Witness::GridColumnDiscontinuous { .. } => "grid_column_discontinuous",
            Witness::GridEndpointMoved { .. } => "grid_endpoint_moved",
            Witness::GridPointOutsideImage { .. } => "grid_point_outside_image",
            Witness::GridBoundaryMismatch { .. } => "grid_boundary_mismatch",
        }
    }
}

/// Outcome of a decidable predicate. `holds == false` always comes with a
/// witness; `checked_points` counts the outermost quantifier instances
/// examined, so vacuous passes are visible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub checked_points: usize,
    /// Present on the covering-family predicates.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reading: Option<Reading>,
}

impl Verdict {
    pub fn pass(checked_points: usize) -> Self {
        Verdict { holds: true, witness: None, checked_points, reading: None }
    }

    pub fn fail(witness: Witness, checked_points: usize) -> Self {
        Verdict { holds: false, witness: Some(witness), checked_points, reading: None }
    }

    pub fn with_reading(mut self, reading: Reading) -> Self {
        self.reading = Some(reading);
        self
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "holds ({} points checked)", self.checked_points)
        } else {
            write!(
                f,
                "fails: {}",
                self.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()
            )
        }
    }
}
