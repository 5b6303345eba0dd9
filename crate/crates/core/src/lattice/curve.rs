use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{Adjacency, DigitalImage, Point};

/// A candidate simple closed k-curve `SC_k^{n,l}`: an ordered point sequence
/// that should be adjacent exactly between cyclically consecutive members.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveSpec {
    pub sequence: Vec<Point>,
    pub adjacency: Adjacency,
}

/// Outcome of curve validation; `violation` names the first offending index
/// pair when the sequence is not a simple closed curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccReport {
    pub ok: bool,
    pub violation: Option<SccViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SccViolation {
    TooShort { len: usize },
    DimensionMismatch { index: usize },
    DuplicatePoint { first: usize, second: usize },
    MissingEdge { first: usize, second: usize },
    Chord { first: usize, second: usize },
}

impl CurveSpec {
    pub fn new(sequence: Vec<Point>, adjacency: Adjacency) -> Self {
        CurveSpec { sequence, adjacency }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// The curve as a digital image (forgetting the cyclic order).
    pub fn to_image(&self, name: impl Into<String>) -> Result<DigitalImage> {
        DigitalImage::finite(name, self.adjacency, self.sequence.iter().cloned())
    }
}

/// Checks that a sequence is a simple closed k-curve: pairwise distinct
/// points, length at least 4, and adjacency exactly between cyclically
/// consecutive members (no gaps, no chords).
pub fn validate_scc(spec: &CurveSpec) -> SccReport {
    let seq = &spec.sequence;
    let l = seq.len();
    if l < 4 {
        return fail(SccViolation::TooShort { len: l });
    }
    let n = spec.adjacency.n as usize;
    for (i, p) in seq.iter().enumerate() {
        if p.dim() != n {
            return fail(SccViolation::DimensionMismatch { index: i });
        }
    }
    for i in 0..l {
        for j in (i + 1)..l {
            if seq[i] == seq[j] {
                return fail(SccViolation::DuplicatePoint { first: i, second: j });
            }
            let consecutive = j - i == 1 || (i == 0 && j == l - 1);
            let adjacent = spec.adjacency.adj(&seq[i], &seq[j]);
            if consecutive && !adjacent {
                return fail(SccViolation::MissingEdge { first: i, second: j });
            }
            if !consecutive && adjacent {
                return fail(SccViolation::Chord { first: i, second: j });
            }
        }
    }
    SccReport { ok: true, violation: None }
}

fn fail(violation: SccViolation) -> SccReport {
    SccReport { ok: false, violation: Some(violation) }
}

/// Axis-aligned search window for curve enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    /// Inclusive lower corner.
    pub lo: Vec<i64>,
    /// Inclusive upper corner.
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        Window { lo, hi }
    }

    /// `[0, w) x [0, h)`-style window from per-axis extents.
    pub fn box_from_extents(extents: &[i64]) -> Self {
        Window {
            lo: vec![0; extents.len()],
            hi: extents.iter().map(|e| e - 1).collect(),
        }
    }

    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        if self.lo.len() != self.hi.len() || self.lo.iter().zip(&self.hi).any(|(l, h)| l > h) {
            return out;
        }
        let mut cur = self.lo.clone();
        'odometer: loop {
            out.push(Point::new(cur.clone()));
            let mut axis = cur.len();
            loop {
                if axis == 0 {
                    break 'odometer;
                }
                axis -= 1;
                if cur[axis] < self.hi[axis] {
                    cur[axis] += 1;
                    for k in (axis + 1)..cur.len() {
                        cur[k] = self.lo[k];
                    }
                    continue 'odometer;
                }
            }
        }
        out
    }
}

/// Exhaustively enumerates all simple closed k-curves of length `l` inside
/// `window`, deduplicated up to rotation and reflection of the index
/// sequence. Each reported curve is in canonical form: the lexicographically
/// least rotation/reflection, which starts at the least point of the curve.
pub fn search_scc(
    adj: Adjacency,
    window: &Window,
    l: usize,
    budget: &mut Budget,
) -> Result<Vec<CurveSpec>> {
    if l < 4 {
        return Ok(Vec::new());
    }
    let points = window.points();
    let point_set: BTreeSet<Point> = points.iter().cloned().collect();
    let mut found: BTreeSet<Vec<Point>> = BTreeSet::new();

    // Depth-first extension of an open path; the start point is forced to be
    // the least point of the final cycle and the second point smaller than
    // the last, so every cycle is generated essentially once.
    fn extend(
        adj: &Adjacency,
        points: &BTreeSet<Point>,
        path: &mut Vec<Point>,
        l: usize,
        budget: &mut Budget,
        found: &mut BTreeSet<Vec<Point>>,
    ) -> Result<()> {
        if path.len() == l {
            budget.spend(1)?;
            if adj.adj(&path[l - 1], &path[0]) && path[1] < path[l - 1] {
                let spec = CurveSpec::new(path.clone(), *adj);
                if validate_scc(&spec).ok {
                    found.insert(canonical_cycle(&spec.sequence));
                }
            }
            return Ok(());
        }
        let last = path.last().unwrap().clone();
        for cand in points.iter() {
            budget.spend(1)?;
            if *cand <= path[0] || !adj.adj(&last, cand) {
                continue;
            }
            if path.iter().any(|p| p == cand) {
                continue;
            }
            // No chords: a new member may touch only its predecessor, except
            // the final member which must also close onto the start.
            let chord = path[..path.len() - 1].iter().enumerate().any(|(i, p)| {
                if path.len() == l - 1 && i == 0 {
                    false
                } else {
                    adj.adj(p, cand)
                }
            });
            if chord {
                continue;
            }
            path.push(cand.clone());
            extend(adj, points, path, l, budget, found)?;
            path.pop();
        }
        Ok(())
    }

    for start in &points {
        let mut path = vec![start.clone()];
        extend(&adj, &point_set, &mut path, l, budget, &mut found)?;
    }

    Ok(found
        .into_iter()
        .map(|sequence| CurveSpec::new(sequence, adj))
        .collect())
}

/// Lexicographically least rotation or reflection of a cyclic sequence.
pub fn canonical_cycle(seq: &[Point]) -> Vec<Point> {
    let l = seq.len();
    let mut best: Option<Vec<Point>> = None;
    for flip in [false, true] {
        let oriented: Vec<Point> = if flip {
            seq.iter().rev().cloned().collect()
        } else {
            seq.to_vec()
        };
        for shift in 0..l {
            let rotated: Vec<Point> = (0..l).map(|i| oriented[(i + shift) % l].clone()).collect();
            if best.as_ref().map_or(true, |b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

/// Traverses a finite image that is a simple closed curve and returns its
/// points in canonical cyclic order (least point first, towards its lesser
/// neighbour). Errors when the image is not a chord-free cycle of the
/// expected length.
pub fn cycle_order(img: &DigitalImage, expected_len: usize) -> Result<Vec<Point>> {
    let points = img.points();
    if points.len() != expected_len {
        return Err(Error::ModularCodomainNotCurve {
            expected: expected_len,
            reason: format!("image has {} points", points.len()),
        });
    }
    for p in &points {
        let deg = img.neighbors(p).len();
        if deg != 2 {
            return Err(Error::ModularCodomainNotCurve {
                expected: expected_len,
                reason: format!("{p} has {deg} neighbours, expected 2"),
            });
        }
    }
    let start = points[0].clone();
    let mut order = vec![start.clone()];
    let first_neighbors = img.neighbors(&start);
    let mut prev = start.clone();
    let mut cur = first_neighbors[0].clone();
    while cur != start {
        order.push(cur.clone());
        let next = img
            .neighbors(&cur)
            .into_iter()
            .find(|nb| *nb != prev)
            .expect("degree 2 guarantees a continuation");
        prev = cur;
        cur = next;
    }
    if order.len() != expected_len {
        return Err(Error::ModularCodomainNotCurve {
            expected: expected_len,
            reason: format!("traversal closed after {} points", order.len()),
        });
    }
    let spec = CurveSpec::new(order.clone(), img.adjacency);
    let report = validate_scc(&spec);
    if !report.ok {
        return Err(Error::ModularCodomainNotCurve {
            expected: expected_len,
            reason: format!("{:?}", report.violation),
        });
    }
    Ok(order)
}
