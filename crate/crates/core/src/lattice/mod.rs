//! Points of Z^n, `k(t,n)`-adjacency, digital neighbourhoods, intrinsic
//! distance, connectivity, and simple closed k-curves.

mod adjacency;
mod carrier;
mod curve;
mod image;
mod point;

pub use adjacency::{k_value, Adjacency, MAX_DIM};
pub use carrier::Carrier;
pub use curve::{
    canonical_cycle, cycle_order, search_scc, validate_scc, CurveSpec, SccReport, SccViolation,
    Window,
};
pub use image::{Connectivity, DigitalImage};
pub use point::Point;
