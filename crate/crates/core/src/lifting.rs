//! Path lifting (existence, uniqueness, enumeration), digital homotopy
//! verification, and desk-scale checks of the unique-lifting and
//! homotopy-lifting properties.
//!
//! A digital homotopy between two equal-length paths is a rectangular grid
//! of image points whose rows and columns are all paths, whose first and
//! last rows are the two given paths, and (for the fixed-endpoint variant)
//! whose first and last columns are constant.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, Point};
use crate::morphism::DigitalMap;
use crate::verdict::{Verdict, Witness};

/// A k-path: a finite point sequence with consecutive members equal or
/// adjacent, i.e. a continuous map from a digital interval.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KPath {
    pub image: DigitalImage,
    pub points: Vec<Point>,
}

impl KPath {
    pub fn new(image: DigitalImage, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPath { image: image.name.clone(), reason: "empty".into() });
        }
        for (i, p) in points.iter().enumerate() {
            if !image.contains(p) {
                return Err(Error::InvalidPath {
                    image: image.name.clone(),
                    reason: format!("point {p} (index {i}) is outside the image"),
                });
            }
        }
        for i in 1..points.len() {
            let (a, b) = (&points[i - 1], &points[i]);
            if a != b && !image.adjacency.adj(a, b) {
                return Err(Error::InvalidPath {
                    image: image.name.clone(),
                    reason: format!("step {i}: {a} and {b} are neither equal nor adjacent"),
                });
            }
        }
        Ok(KPath { image, points })
    }

    /// Number of steps (one less than the number of points).
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn start(&self) -> &Point {
        &self.points[0]
    }

    pub fn terminal(&self) -> &Point {
        self.points.last().unwrap()
    }
}

/// A digital homotopy candidate: `grid[i]` is the i-th intermediate path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KHomotopy {
    pub image: DigitalImage,
    pub grid: Vec<Vec<Point>>,
    pub fixed_endpoints: bool,
}

/// Enumerates all lifts of the codomain path `f` starting at `e0`: paths
/// upstairs that compose with the map to `f`. Each step branches over the
/// unit neighbourhood of the current point (staying in place included), so
/// the same engine measures lifting failure for maps that are not
/// coverings. Lifts are returned in lexicographic point order.
pub fn lift_path(
    map: &DigitalMap,
    f: &KPath,
    e0: &Point,
    budget: &mut Budget,
) -> Result<Vec<KPath>> {
    for (i, p) in f.points.iter().enumerate() {
        if !map.codomain.contains(p) {
            return Err(Error::InvalidPath {
                image: map.codomain.name.clone(),
                reason: format!("path point {p} (index {i}) is outside the codomain"),
            });
        }
    }
    KPath::new(map.codomain.clone(), f.points.clone())?;
    if !map.domain.contains(e0) {
        return Err(Error::PointNotInImage { point: e0.clone(), image: map.domain.name.clone() });
    }
    if map.apply(e0) != f.points[0] {
        return Err(Error::StartNotOverPathStart { start: e0.clone(), over: f.points[0].clone() });
    }

    let mut lifts = Vec::new();
    let mut prefix = vec![e0.clone()];
    extend_lift(map, f, &mut prefix, budget, &mut lifts)?;
    Ok(lifts)
}

fn extend_lift(
    map: &DigitalMap,
    f: &KPath,
    prefix: &mut Vec<Point>,
    budget: &mut Budget,
    lifts: &mut Vec<KPath>,
) -> Result<()> {
    if prefix.len() == f.points.len() {
        lifts.push(KPath { image: map.domain.clone(), points: prefix.clone() });
        return Ok(());
    }
    let target = &f.points[prefix.len()];
    let cur = prefix.last().unwrap().clone();
    for cand in map.domain.neighborhood(&cur, 1)? {
        budget.spend(1)?;
        if map.apply(&cand) == *target {
            prefix.push(cand);
            extend_lift(map, f, prefix, budget, lifts)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// Verifies that `h` is a digital homotopy from `f` to `g`: first row `f`,
/// last row `g`, every row and column continuous, and constant endpoint
/// columns when `fixed_endpoints` is set.
pub fn verify_homotopy(h: &KHomotopy, f: &KPath, g: &KPath) -> Result<Verdict> {
    if f.points.len() != g.points.len() {
        return Err(Error::InvalidPath {
            image: h.image.name.clone(),
            reason: format!("paths have different lengths {} and {}", f.len(), g.len()),
        });
    }
    let width = f.points.len();
    if h.grid.is_empty() || h.grid.iter().any(|row| row.len() != width) {
        return Err(Error::RaggedGrid);
    }
    let mut checked = 0;
    let rows = h.grid.len();
    for (i, row) in h.grid.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            checked += 1;
            if !h.image.contains(p) {
                return Ok(Verdict::fail(Witness::GridPointOutsideImage { row: i, col: j }, checked));
            }
        }
    }
    for (j, p) in h.grid[0].iter().enumerate() {
        checked += 1;
        if *p != f.points[j] {
            return Ok(Verdict::fail(
                Witness::GridBoundaryMismatch { which: crate::verdict::GridBoundary::FirstRow, col: j },
                checked,
            ));
        }
    }
    for (j, p) in h.grid[rows - 1].iter().enumerate() {
        checked += 1;
        if *p != g.points[j] {
            return Ok(Verdict::fail(
                Witness::GridBoundaryMismatch { which: crate::verdict::GridBoundary::LastRow, col: j },
                checked,
            ));
        }
    }
    for (i, row) in h.grid.iter().enumerate() {
        for j in 1..width {
            checked += 1;
            let (a, b) = (&row[j - 1], &row[j]);
            if a != b && !h.image.adjacency.adj(a, b) {
                return Ok(Verdict::fail(Witness::GridRowDiscontinuous { row: i, col: j }, checked));
            }
        }
    }
    for i in 1..rows {
        for j in 0..width {
            checked += 1;
            let (a, b) = (&h.grid[i - 1][j], &h.grid[i][j]);
            if a != b && !h.image.adjacency.adj(a, b) {
                return Ok(Verdict::fail(
                    Witness::GridColumnDiscontinuous { row: i - 1, col: j },
                    checked,
                ));
            }
        }
    }
    if h.fixed_endpoints {
        for i in 0..rows {
            checked += 1;
            if h.grid[i][0] != h.grid[0][0] {
                return Ok(Verdict::fail(Witness::GridEndpointMoved { row: i, col: 0 }, checked));
            }
            if h.grid[i][width - 1] != h.grid[0][width - 1] {
                return Ok(Verdict::fail(
                    Witness::GridEndpointMoved { row: i, col: width - 1 },
                    checked,
                ));
            }
        }
    }
    Ok(Verdict::pass(checked))
}

/// One row of the unique-lifting report: a codomain path and start point
/// whose lift count differs from one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftAnomaly {
    pub path: Vec<Point>,
    pub start: Point,
    pub lift_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueLiftingReport {
    pub max_len: usize,
    pub paths_checked: u64,
    pub pairs_checked: u64,
    pub anomalies: Vec<LiftAnomaly>,
}

impl UniqueLiftingReport {
    pub fn unique_lifting_holds(&self) -> bool {
        self.anomalies.is_empty()
    }
}

/// Enumerates every codomain path of up to `max_len` steps and every
/// admissible start point, and reports each pair whose lift count is not
/// exactly one. On truncated domains the start points are kept deep enough
/// inside the window that no lift can reach an artificial cut.
pub fn check_unique_lifting(
    map: &DigitalMap,
    max_len: usize,
    budget: &mut Budget,
) -> Result<UniqueLiftingReport> {
    let mut report = UniqueLiftingReport {
        max_len,
        paths_checked: 0,
        pairs_checked: 0,
        anomalies: Vec::new(),
    };
    let starts_by_base = |b: &Point| -> Vec<Point> {
        map.domain
            .points()
            .into_iter()
            .filter(|e| map.apply(e) == *b && map.domain.carrier.is_deep_interior(e, max_len as u32))
            .collect()
    };

    let mut stack: Vec<Vec<Point>> = map.codomain.points().into_iter().map(|p| vec![p]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        budget.spend(1)?;
        if path.len() >= 2 {
            report.paths_checked += 1;
            let kpath = KPath { image: map.codomain.clone(), points: path.clone() };
            for start in starts_by_base(&path[0]) {
                report.pairs_checked += 1;
                let lifts = lift_path(map, &kpath, &start, budget)?;
                if lifts.len() != 1 {
                    report.anomalies.push(LiftAnomaly {
                        path: path.clone(),
                        start,
                        lift_count: lifts.len(),
                    });
                }
            }
        }
        if path.len() <= max_len {
            let last = path.last().unwrap();
            // Push in reverse so paths pop in lexicographic order.
            for next in map.codomain.neighborhood(last, 1)?.into_iter().rev() {
                let mut longer = path.clone();
                longer.push(next);
                stack.push(longer);
            }
        }
    }
    Ok(report)
}

/// Bounds for the homotopy-existence search.
#[derive(Debug, Clone, Copy)]
pub struct HomotopySearchLimits {
    pub max_stages: u32,
    pub max_states: u64,
}

impl Default for HomotopySearchLimits {
    fn default() -> Self {
        HomotopySearchLimits { max_stages: 8, max_states: 1_000_000 }
    }
}

/// Result of the homotopy-lifting check. A positive answer always carries
/// the explicit domain homotopy; exceeding the search budget yields
/// `Inconclusive`, never a guessed verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HomotopyLiftingOutcome {
    Holds { homotopy: KHomotopy },
    Fails { witness: Witness },
    Inconclusive { stages_tried: u32, states_explored: u64 },
}

/// Checks the homotopy-lifting property for one pair of lifted paths:
/// given a verified fixed-endpoint homotopy downstairs between the images
/// of `g0` and `g1`, the two paths must share a terminal point and admit a
/// fixed-endpoint homotopy in the domain. The domain homotopy is found by
/// exhaustive breadth-first search over grid rows.
pub fn check_homotopy_lifting(
    map: &DigitalMap,
    g0: &KPath,
    g1: &KPath,
    h_down: &KHomotopy,
    limits: HomotopySearchLimits,
) -> Result<HomotopyLiftingOutcome> {
    if g0.points.len() != g1.points.len() {
        return Err(Error::InvalidPath {
            image: map.domain.name.clone(),
            reason: "lifted paths have different lengths".into(),
        });
    }
    if g0.start() != g1.start() {
        return Err(Error::InvalidPath {
            image: map.domain.name.clone(),
            reason: "lifted paths start at different points".into(),
        });
    }
    let down0 = KPath::new(
        map.codomain.clone(),
        g0.points.iter().map(|p| map.apply(p)).collect(),
    )?;
    let down1 = KPath::new(
        map.codomain.clone(),
        g1.points.iter().map(|p| map.apply(p)).collect(),
    )?;
    if !h_down.fixed_endpoints {
        return Err(Error::InvalidDownstairsHomotopy("endpoints are not held fixed".into()));
    }
    let down_verdict = verify_homotopy(h_down, &down0, &down1)?;
    if !down_verdict.holds {
        return Err(Error::InvalidDownstairsHomotopy(
            down_verdict.witness.map(|w| w.to_string()).unwrap_or_default(),
        ));
    }

    if g0.terminal() != g1.terminal() {
        return Ok(HomotopyLiftingOutcome::Fails {
            witness: Witness::TerminalMismatch {
                terminal_first: g0.terminal().clone(),
                terminal_second: g1.terminal().clone(),
            },
        });
    }

    // Breadth-first search in the space of candidate rows.
    let start = g0.points.clone();
    let goal = g1.points.clone();
    let mut visited: BTreeSet<Vec<Point>> = BTreeSet::new();
    let mut parent: Vec<(Vec<Point>, Option<usize>)> = Vec::new();
    let mut queue: VecDeque<(usize, u32)> = VecDeque::new();
    visited.insert(start.clone());
    parent.push((start.clone(), None));
    queue.push_back((0, 0));
    let mut states: u64 = 0;
    let mut deepest = 0u32;

    let mut found: Option<usize> = None;
    while let Some((idx, depth)) = queue.pop_front() {
        deepest = deepest.max(depth);
        if parent[idx].0 == goal {
            found = Some(idx);
            break;
        }
        if depth == limits.max_stages {
            // Unexpanded frontier at the stage cap: a miss is inconclusive.
            continue;
        }
        let row = parent[idx].0.clone();
        for next in row_successors(&map.domain, &row)? {
            states += 1;
            if states > limits.max_states {
                return Ok(HomotopyLiftingOutcome::Inconclusive {
                    stages_tried: deepest,
                    states_explored: states,
                });
            }
            if visited.insert(next.clone()) {
                parent.push((next, Some(idx)));
                queue.push_back((parent.len() - 1, depth + 1));
            }
        }
    }

    match found {
        Some(mut idx) => {
            let mut grid = Vec::new();
            loop {
                grid.push(parent[idx].0.clone());
                match parent[idx].1 {
                    Some(prev) => idx = prev,
                    None => break,
                }
            }
            grid.reverse();
            let homotopy =
                KHomotopy { image: map.domain.clone(), grid, fixed_endpoints: true };
            let replay = verify_homotopy(&homotopy, g0, g1)?;
            debug_assert!(replay.holds, "constructed grid must verify");
            Ok(HomotopyLiftingOutcome::Holds { homotopy })
        }
        None => {
            // The frontier emptied. If every expanded node sat strictly below
            // the stage cap, the search was exhaustive.
            if deepest < limits.max_stages {
                Ok(HomotopyLiftingOutcome::Fails {
                    witness: Witness::NoDomainHomotopy {
                        stages_tried: deepest,
                        states_explored: states,
                    },
                })
            } else {
                Ok(HomotopyLiftingOutcome::Inconclusive {
                    stages_tried: deepest,
                    states_explored: states,
                })
            }
        }
    }
}

/// All continuous rows one homotopy stage away from `row`, holding both
/// endpoints fixed; lexicographic order.
fn row_successors(image: &DigitalImage, row: &[Point]) -> Result<Vec<Vec<Point>>> {
    let width = row.len();
    let mut candidates: Vec<Vec<Point>> = Vec::with_capacity(width);
    for (j, p) in row.iter().enumerate() {
        if j == 0 || j == width - 1 {
            candidates.push(vec![p.clone()]);
        } else {
            candidates.push(image.neighborhood(p, 1)?.into_iter().collect());
        }
    }
    let mut out = Vec::new();
    let mut cur: Vec<Point> = Vec::with_capacity(width);
    fn fill(
        image: &DigitalImage,
        candidates: &[Vec<Point>],
        cur: &mut Vec<Point>,
        out: &mut Vec<Vec<Point>>,
    ) {
        let j = cur.len();
        if j == candidates.len() {
            out.push(cur.clone());
            return;
        }
        for cand in &candidates[j] {
            if j > 0 {
                let prev = &cur[j - 1];
                if prev != cand && !image.adjacency.adj(prev, cand) {
                    continue;
                }
            }
            cur.push(cand.clone());
            fill(image, candidates, cur, out);
            cur.pop();
        }
    }
    fill(image, &candidates, &mut cur, &mut out);
    Ok(out)
}
