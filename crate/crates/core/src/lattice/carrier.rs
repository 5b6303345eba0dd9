use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Point;

/// The point set of a digital image.
///
/// Infinite carriers (the integer line Z and the ray Z^+) are represented as
/// truncated windows with a trust `margin`: points within `margin` steps of
/// an artificial cut are carried along for neighbourhood computations but
/// are skipped by every universal quantifier. A declared `period` states
/// that the intended infinite object is invariant under shifting by that
/// amount, which upgrades interior verdicts to certificates for the whole
/// object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Carrier {
    Finite {
        points: BTreeSet<Point>,
    },
    /// `[start, ..)` truncated at `end`. `start` is a genuine endpoint of the
    /// represented object, so it is always interior; `end` is an artificial
    /// cut.
    TruncatedRay {
        start: i64,
        end: i64,
        margin: u32,
        period: Option<u32>,
    },
    /// Z truncated to `[lo, hi]`; both endpoints are artificial cuts.
    TruncatedLine {
        lo: i64,
        hi: i64,
        margin: u32,
        period: Option<u32>,
    },
}

impl Carrier {
    pub fn finite<I: IntoIterator<Item = Point>>(points: I) -> Self {
        Carrier::Finite {
            points: points.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Carrier::Finite { points } => {
                if points.is_empty() {
                    return Err(Error::InvalidCarrier("empty point set".into()));
                }
                let dim = points.iter().next().unwrap().dim();
                if dim == 0 {
                    return Err(Error::InvalidCarrier("zero-dimensional point".into()));
                }
                if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
                    return Err(Error::InvalidCarrier(format!(
                        "mixed dimensions: {bad} has {} coordinates, expected {dim}",
                        bad.dim()
                    )));
                }
                Ok(())
            }
            Carrier::TruncatedRay { start, end, period, .. } => {
                Self::validate_window(*start, *end, *period)
            }
            Carrier::TruncatedLine { lo, hi, period, .. } => {
                Self::validate_window(*lo, *hi, *period)
            }
        }
    }

    fn validate_window(lo: i64, hi: i64, period: Option<u32>) -> Result<()> {
        if hi < lo {
            return Err(Error::InvalidCarrier(format!("window [{lo},{hi}] is empty")));
        }
        if let Some(p) = period {
            if p == 0 {
                return Err(Error::InvalidCarrier("period must be positive".into()));
            }
            // One full period must lie strictly inside the trusted interior.
            if hi - lo < 3 * p as i64 {
                return Err(Error::InvalidCarrier(format!(
                    "window [{lo},{hi}] is shorter than three periods of {p}"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            Carrier::Finite { points } => points.iter().next().map_or(0, |p| p.dim()),
            _ => 1,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Carrier::Finite { points } => points.len(),
            Carrier::TruncatedRay { start, end, .. } => (end - start + 1).max(0) as usize,
            Carrier::TruncatedLine { lo, hi, .. } => (hi - lo + 1).max(0) as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Carrier::Finite { points } => points.contains(p),
            Carrier::TruncatedRay { start, end, .. } => {
                p.dim() == 1 && p.x() >= *start && p.x() <= *end
            }
            Carrier::TruncatedLine { lo, hi, .. } => {
                p.dim() == 1 && p.x() >= *lo && p.x() <= *hi
            }
        }
    }

    /// All window points, ascending.
    pub fn points(&self) -> Vec<Point> {
        match self {
            Carrier::Finite { points } => points.iter().cloned().collect(),
            Carrier::TruncatedRay { start, end, .. } => {
                (*start..=*end).map(Point::one).collect()
            }
            Carrier::TruncatedLine { lo, hi, .. } => (*lo..=*hi).map(Point::one).collect(),
        }
    }

    /// Trusted points: far enough from every artificial cut that their
    /// `margin`-neighbourhoods are exactly those of the infinite object.
    pub fn is_interior(&self, p: &Point) -> bool {
        match self {
            Carrier::Finite { .. } => true,
            Carrier::TruncatedRay { end, margin, .. } => end - p.x() >= *margin as i64,
            Carrier::TruncatedLine { lo, hi, margin, .. } => {
                p.x() - lo >= *margin as i64 && hi - p.x() >= *margin as i64
            }
        }
    }

    /// Like `is_interior` with the margin widened by `extra`; used to pick
    /// start points whose whole search radius stays inside the window.
    pub fn is_deep_interior(&self, p: &Point, extra: u32) -> bool {
        match self {
            Carrier::Finite { .. } => true,
            Carrier::TruncatedRay { end, margin, .. } => {
                end - p.x() >= (*margin + extra) as i64
            }
            Carrier::TruncatedLine { lo, hi, margin, .. } => {
                p.x() - lo >= (*margin + extra) as i64 && hi - p.x() >= (*margin + extra) as i64
            }
        }
    }

    pub fn period(&self) -> Option<u32> {
        match self {
            Carrier::Finite { .. } => None,
            Carrier::TruncatedRay { period, .. } | Carrier::TruncatedLine { period, .. } => *period,
        }
    }

    /// Same carrier with the window twice as long; used by the truncation
    /// stability checks. Errors on finite carriers.
    pub fn doubled(&self) -> Result<Carrier> {
        match self {
            Carrier::Finite { .. } => Err(Error::NotTruncated),
            Carrier::TruncatedRay { start, end, margin, period } => Ok(Carrier::TruncatedRay {
                start: *start,
                end: start + 2 * (end - start),
                margin: *margin,
                period: *period,
            }),
            Carrier::TruncatedLine { lo, hi, margin, period } => {
                let half = (hi - lo + 1) / 2;
                Ok(Carrier::TruncatedLine {
                    lo: lo - half,
                    hi: hi + half,
                    margin: *margin,
                    period: *period,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_interior_keeps_the_genuine_endpoint() {
        let ray = Carrier::TruncatedRay { start: 0, end: 12, margin: 2, period: Some(4) };
        ray.validate().unwrap();
        assert!(ray.is_interior(&Point::one(0)), "genuine endpoint is trusted");
        assert!(ray.is_interior(&Point::one(10)));
        assert!(!ray.is_interior(&Point::one(11)));
        assert!(!ray.is_interior(&Point::one(12)));
    }

    #[test]
    fn line_interior_trims_both_cuts() {
        let line = Carrier::TruncatedLine { lo: -6, hi: 6, margin: 2, period: Some(4) };
        line.validate().unwrap();
        assert!(!line.is_interior(&Point::one(-5)));
        assert!(line.is_interior(&Point::one(-4)));
        assert!(line.is_interior(&Point::one(4)));
        assert!(!line.is_interior(&Point::one(5)));
    }

    #[test]
    fn windows_shorter_than_three_periods_are_rejected() {
        let ray = Carrier::TruncatedRay { start: 0, end: 11, margin: 2, period: Some(4) };
        assert!(ray.validate().is_err());
        let ray = Carrier::TruncatedRay { start: 0, end: 12, margin: 2, period: Some(4) };
        assert!(ray.validate().is_ok());
    }

    #[test]
    fn doubling_extends_the_window() {
        let ray = Carrier::TruncatedRay { start: 0, end: 12, margin: 2, period: Some(4) };
        match ray.doubled().unwrap() {
            Carrier::TruncatedRay { start, end, .. } => {
                assert_eq!((start, end), (0, 24));
            }
            _ => unreachable!(),
        }
    }
}
