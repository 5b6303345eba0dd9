use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Adjacency, Carrier, Point};

/// A digital image `(X, k)`: a carrier in Z^n together with a `k(t,n)`
/// adjacency. Immutable after construction; every operation on it is a pure
/// function.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DigitalImage {
    pub name: String,
    pub adjacency: Adjacency,
    pub carrier: Carrier,
}

/// Connectivity verdict plus the component partition, components ordered by
/// their least point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub connected: bool,
    pub components: Vec<BTreeSet<Point>>,
}

impl DigitalImage {
    pub fn new(name: impl Into<String>, adjacency: Adjacency, carrier: Carrier) -> Result<Self> {
        let name = name.into();
        carrier.validate()?;
        if carrier.is_empty() {
            return Err(Error::EmptyImage(name));
        }
        if carrier.dim() != adjacency.n as usize {
            return Err(Error::DimensionMismatch {
                expected: adjacency.n as usize,
                got: carrier.dim(),
            });
        }
        Ok(DigitalImage { name, adjacency, carrier })
    }

    /// Finite image from an explicit point set.
    pub fn finite<I: IntoIterator<Item = Point>>(
        name: impl Into<String>,
        adjacency: Adjacency,
        points: I,
    ) -> Result<Self> {
        DigitalImage::new(name, adjacency, Carrier::finite(points))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.carrier.contains(p)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn points(&self) -> Vec<Point> {
        self.carrier.points()
    }

    pub fn interior_points(&self) -> Vec<Point> {
        self.points()
            .into_iter()
            .filter(|p| self.carrier.is_interior(p))
            .collect()
    }

    pub fn is_interior(&self, p: &Point) -> bool {
        self.carrier.is_interior(p)
    }

    /// Neighbours of `x` inside the image (excluding `x` itself).
    pub fn neighbors(&self, x: &Point) -> Vec<Point> {
        match &self.carrier {
            Carrier::Finite { points } => points
                .iter()
                .filter(|y| self.adjacency.adj(x, y))
                .cloned()
                .collect(),
            _ => {
                let mut out = Vec::new();
                for dx in [-1i64, 1] {
                    let y = Point::one(x.x() + dx);
                    if self.carrier.contains(&y) {
                        out.push(y);
                    }
                }
                out.sort();
                out
            }
        }
    }

    fn require_member(&self, x: &Point) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::PointNotInImage { point: x.clone(), image: self.name.clone() })
        }
    }

    /// `N_k(x, eps)`: the set of points at intrinsic distance at most `eps`
    /// from `x`, plus `x` itself. Distances are shortest-path lengths inside
    /// the image, so other components are excluded.
    pub fn neighborhood(&self, x: &Point, eps: u32) -> Result<BTreeSet<Point>> {
        self.require_member(x)?;
        let mut seen: BTreeMap<Point, u32> = BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(x.clone(), 0);
        queue.push_back(x.clone());
        while let Some(cur) = queue.pop_front() {
            let d = seen[&cur];
            if d == eps {
                continue;
            }
            for nb in self.neighbors(&cur) {
                if !seen.contains_key(&nb) {
                    seen.insert(nb.clone(), d + 1);
                    queue.push_back(nb);
                }
            }
        }
        Ok(seen.into_keys().collect())
    }

    /// Length of a shortest k-path from `x` to `y` inside the image;
    /// `None` when the points lie in different components. Shortest paths
    /// are automatically simple, so this is the intrinsic distance.
    pub fn k_distance(&self, x: &Point, y: &Point) -> Result<Option<u32>> {
        self.require_member(x)?;
        self.require_member(y)?;
        if x == y {
            return Ok(Some(0));
        }
        let mut seen: BTreeMap<Point, u32> = BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(x.clone(), 0);
        queue.push_back(x.clone());
        while let Some(cur) = queue.pop_front() {
            let d = seen[&cur];
            for nb in self.neighbors(&cur) {
                if nb == *y {
                    return Ok(Some(d + 1));
                }
                if !seen.contains_key(&nb) {
                    seen.insert(nb.clone(), d + 1);
                    queue.push_back(nb);
                }
            }
        }
        Ok(None)
    }

    /// k-connectivity together with the component partition. Singletons are
    /// connected by convention; the empty image is a domain error (already
    /// unrepresentable via the constructor).
    pub fn connectivity(&self) -> Result<Connectivity> {
        if self.is_empty() {
            return Err(Error::EmptyImage(self.name.clone()));
        }
        let mut unvisited: BTreeSet<Point> = self.points().into_iter().collect();
        let mut components = Vec::new();
        while let Some(seed) = unvisited.iter().next().cloned() {
            let mut component = BTreeSet::new();
            let mut queue = VecDeque::new();
            unvisited.remove(&seed);
            component.insert(seed.clone());
            queue.push_back(seed);
            while let Some(cur) = queue.pop_front() {
                for nb in self.neighbors(&cur) {
                    if unvisited.remove(&nb) {
                        component.insert(nb.clone());
                        queue.push_back(nb);
                    }
                }
            }
            components.push(component);
        }
        Ok(Connectivity { connected: components.len() == 1, components })
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.connectivity()?.connected)
    }

    /// Largest intrinsic eccentricity over the image; the default bound for
    /// the existential radius search of the covering predicates.
    pub fn max_eccentricity(&self) -> u32 {
        let points = self.points();
        let mut best = 1u32;
        for p in &points {
            let mut seen: BTreeMap<Point, u32> = BTreeMap::new();
            let mut queue = VecDeque::new();
            seen.insert(p.clone(), 0);
            queue.push_back(p.clone());
            while let Some(cur) = queue.pop_front() {
                let d = seen[&cur];
                best = best.max(d);
                for nb in self.neighbors(&cur) {
                    if !seen.contains_key(&nb) {
                        seen.insert(nb.clone(), d + 1);
                        queue.push_back(nb);
                    }
                }
            }
        }
        best
    }

    /// Same image over a window twice as long (truncated carriers only).
    pub fn with_doubled_window(&self) -> Result<DigitalImage> {
        DigitalImage::new(
            format!("{}(doubled)", self.name),
            self.adjacency,
            self.carrier.doubled()?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square4() -> DigitalImage {
        DigitalImage::finite(
            "sc4_2_4",
            Adjacency::new(1, 2).unwrap(),
            [
                Point(vec![0, 0]),
                Point(vec![1, 0]),
                Point(vec![1, 1]),
                Point(vec![0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn unit_neighborhood_on_the_square() {
        let img = square4();
        let n = img.neighborhood(&Point(vec![0, 0]), 1).unwrap();
        let expect: BTreeSet<Point> =
            [Point(vec![0, 0]), Point(vec![1, 0]), Point(vec![0, 1])].into_iter().collect();
        assert_eq!(n, expect);
    }

    #[test]
    fn ray_endpoint_neighborhood() {
        let ray = DigitalImage::new(
            "zplus",
            Adjacency::new(1, 1).unwrap(),
            Carrier::TruncatedRay { start: 0, end: 12, margin: 2, period: Some(4) },
        )
        .unwrap();
        let n = ray.neighborhood(&Point::one(0), 1).unwrap();
        assert_eq!(n, [Point::one(0), Point::one(1)].into_iter().collect());
    }

    #[test]
    fn singleton_neighborhood_is_itself() {
        let img = DigitalImage::finite(
            "pt",
            Adjacency::new(2, 2).unwrap(),
            [Point(vec![0, 0])],
        )
        .unwrap();
        for eps in 1..4 {
            let n = img.neighborhood(&Point(vec![0, 0]), eps).unwrap();
            assert_eq!(n.len(), 1);
        }
        assert!(img.is_connected().unwrap());
    }

    #[test]
    fn distance_on_the_ray_is_the_difference() {
        let ray = DigitalImage::new(
            "zplus",
            Adjacency::new(1, 1).unwrap(),
            Carrier::TruncatedRay { start: 0, end: 12, margin: 2, period: None },
        )
        .unwrap();
        assert_eq!(ray.k_distance(&Point::one(0), &Point::one(5)).unwrap(), Some(5));
        assert_eq!(ray.k_distance(&Point::one(3), &Point::one(3)).unwrap(), Some(0));
    }

    #[test]
    fn separated_points_are_at_infinite_distance_and_disconnected() {
        let img = DigitalImage::finite(
            "two",
            Adjacency::new(2, 2).unwrap(),
            [Point(vec![0, 0]), Point(vec![5, 5])],
        )
        .unwrap();
        assert_eq!(img.k_distance(&Point(vec![0, 0]), &Point(vec![5, 5])).unwrap(), None);
        let conn = img.connectivity().unwrap();
        assert!(!conn.connected);
        assert_eq!(conn.components.len(), 2);
    }

    #[test]
    fn diamond_is_connected() {
        let img = DigitalImage::finite(
            "sc8_2_4",
            Adjacency::new(2, 2).unwrap(),
            [
                Point(vec![0, 0]),
                Point(vec![1, 1]),
                Point(vec![0, 2]),
                Point(vec![-1, 1]),
            ],
        )
        .unwrap();
        assert!(img.is_connected().unwrap());
    }

    #[test]
    fn outside_points_are_domain_errors() {
        let img = square4();
        assert!(img.neighborhood(&Point(vec![9, 9]), 1).is_err());
        assert!(img.k_distance(&Point(vec![0, 0]), &Point(vec![9, 9])).is_err());
    }
}
