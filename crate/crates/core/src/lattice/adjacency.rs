use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Point;

/// Largest supported dimension. 3^8 - 1 neighbours is already far beyond
/// anything the shipped fixtures or searches need.
pub const MAX_DIM: u32 = 8;

/// The `k(t,n)` adjacency relation on Z^n: two distinct points are adjacent
/// when at least one and at most `t` coordinates differ by exactly 1 and all
/// remaining coordinates coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Adjacency {
    pub t: u32,
    pub n: u32,
}

/// Number of `k(t,n)`-neighbours of a point of Z^n:
/// `k = sum_{i=1..t} 2^i * C(n,i)`.
pub fn k_value(t: u32, n: u32) -> Result<u64> {
    if n == 0 || t == 0 || t > n || n > MAX_DIM {
        return Err(Error::AdjacencyOutOfRange { t, n, max: MAX_DIM });
    }
    Ok((1..=t as u64)
        .map(|i| 2u64.pow(i as u32) * binomial(n as u64, i))
        .sum())
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl Adjacency {
    pub fn new(t: u32, n: u32) -> Result<Self> {
        k_value(t, n)?;
        Ok(Adjacency { t, n })
    }

    /// The derived neighbour count `k`; infallible because construction
    /// validated the parameters.
    pub fn k(&self) -> u64 {
        k_value(self.t, self.n).expect("validated on construction")
    }

    /// Checked adjacency test; dimension mismatches are domain errors.
    pub fn adjacent(&self, p: &Point, q: &Point) -> Result<bool> {
        if p.dim() != self.n as usize {
            return Err(Error::DimensionMismatch {
                expected: self.n as usize,
                got: p.dim(),
            });
        }
        if q.dim() != self.n as usize {
            return Err(Error::DimensionMismatch {
                expected: self.n as usize,
                got: q.dim(),
            });
        }
        Ok(self.adj(p, q))
    }

    /// Unchecked variant for interior loops where dimensions are known good.
    pub fn adj(&self, p: &Point, q: &Point) -> bool {
        debug_assert_eq!(p.dim(), self.n as usize);
        debug_assert_eq!(q.dim(), self.n as usize);
        let mut unit_diffs = 0u32;
        for (a, b) in p.coords().iter().zip(q.coords()) {
            match (a - b).abs() {
                0 => {}
                1 => unit_diffs += 1,
                _ => return false,
            }
        }
        unit_diffs >= 1 && unit_diffs <= self.t
    }

    /// Points equal to or adjacent to `p`, i.e. the candidate set for one
    /// step of a digital path in the full lattice.
    pub fn lattice_neighbors(&self, p: &Point) -> Vec<Point> {
        let mut out = Vec::new();
        let dim = self.n as usize;
        let mut offset = vec![0i64; dim];
        self.walk_offsets(&mut offset, 0, p, &mut out);
        out.sort();
        out
    }

    fn walk_offsets(&self, offset: &mut Vec<i64>, axis: usize, p: &Point, out: &mut Vec<Point>) {
        if axis == offset.len() {
            let changed = offset.iter().filter(|d| **d != 0).count() as u32;
            if changed >= 1 && changed <= self.t {
                out.push(p.translated(offset));
            }
            return;
        }
        for d in [-1i64, 0, 1] {
            offset[axis] = d;
            self.walk_offsets(offset, axis + 1, p, out);
        }
        offset[axis] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_values_match_the_classical_table() {
        assert_eq!(k_value(2, 2).unwrap(), 8);
        assert_eq!(k_value(3, 6).unwrap(), 232);
        assert_eq!(k_value(6, 6).unwrap(), 728);
        assert_eq!(k_value(1, 1).unwrap(), 2);
    }

    #[test]
    fn k_is_strictly_increasing_in_t_and_maximal_at_3n_minus_1() {
        for n in 1..=MAX_DIM {
            let mut prev = 0;
            for t in 1..=n {
                let k = k_value(t, n).unwrap();
                assert!(k > prev, "k({t},{n}) not increasing");
                prev = k;
            }
            assert_eq!(k_value(n, n).unwrap(), 3u64.pow(n) - 1);
        }
    }

    #[test]
    fn out_of_range_parameters_are_rejected() {
        assert!(k_value(0, 2).is_err());
        assert!(k_value(3, 2).is_err());
        assert!(k_value(1, 9).is_err());
    }

    #[test]
    fn adjacency_follows_the_coordinate_criterion() {
        let a4 = Adjacency::new(1, 2).unwrap();
        let a8 = Adjacency::new(2, 2).unwrap();
        let o = Point(vec![0, 0]);
        assert!(a4.adj(&o, &Point(vec![1, 0])));
        assert!(!a4.adj(&o, &Point(vec![1, 1])));
        assert!(a8.adj(&o, &Point(vec![1, 1])));
        assert!(!a8.adj(&o, &Point(vec![2, 0])));
        assert!(!a8.adj(&o, &o), "irreflexive");
    }

    #[test]
    fn lattice_neighbor_count_is_k() {
        for (t, n) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)] {
            let adj = Adjacency::new(t, n).unwrap();
            let p = Point(vec![0; n as usize]);
            assert_eq!(adj.lattice_neighbors(&p).len() as u64, adj.k());
        }
    }
}
