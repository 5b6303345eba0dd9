//! Exhaustive enumeration of small digital images and of the total maps
//! between them.
//!
//! Images are point sets inside an axis-aligned box, deduplicated up to
//! lattice translation by shifting each set so its per-axis minimum is
//! zero. Maps are enumerated in mixed-radix order over sorted points, so
//! the first map satisfying any property is the lexicographically least
//! one - every search result is deterministic.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use dtk_core::{Adjacency, DigitalImage, DigitalMap, Point};

/// Bounds for an exhaustive image corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    /// Per-axis box extents; the box is `[0, e)` on each axis.
    pub extents: Vec<i64>,
    pub max_points: usize,
    pub adjacencies: Vec<(u32, u32)>,
    pub connected_only: bool,
}

impl CorpusSpec {
    pub fn new(extents: Vec<i64>, max_points: usize) -> Self {
        CorpusSpec { extents, max_points, adjacencies: vec![(1, 2), (2, 2)], connected_only: false }
    }

    pub fn connected(mut self) -> Self {
        self.connected_only = true;
        self
    }

    pub fn bounds_note(&self) -> String {
        format!(
            "point sets of at most {} points in a {} box, adjacencies {:?}{}",
            self.max_points,
            self.extents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("x"),
            self.adjacencies,
            if self.connected_only { ", connected only" } else { "" }
        )
    }

    fn box_points(&self) -> Vec<Point> {
        let mut out = vec![Vec::new()];
        for &e in &self.extents {
            let mut next = Vec::new();
            for prefix in &out {
                for v in 0..e {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(Point::new).collect()
    }
}

/// Number of point subsets of size `1..=max_points` in the box, before
/// translation dedup.
pub fn raw_subset_count(spec: &CorpusSpec) -> u64 {
    let n = spec.box_points().len() as u64;
    let mut total = 0u64;
    for k in 1..=spec.max_points as u64 {
        total += binomial(n, k);
    }
    total
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

fn canonical_translate(points: &BTreeSet<Point>) -> BTreeSet<Point> {
    let dim = points.iter().next().map_or(0, |p| p.dim());
    let mut mins = vec![i64::MAX; dim];
    for p in points {
        for (i, c) in p.coords().iter().enumerate() {
            mins[i] = mins[i].min(*c);
        }
    }
    let offset: Vec<i64> = mins.iter().map(|m| -m).collect();
    points.iter().map(|p| p.translated(&offset)).collect()
}

/// All images within the bounds: every point subset up to translation,
/// paired with every requested adjacency, optionally filtered to connected
/// images. Sorted by size, then point set, then adjacency.
pub fn enumerate_images(spec: &CorpusSpec) -> Vec<DigitalImage> {
    let points = spec.box_points();
    let mut classes: BTreeSet<BTreeSet<Point>> = BTreeSet::new();
    let mut subset: Vec<usize> = Vec::new();

    fn descend(
        points: &[Point],
        start: usize,
        subset: &mut Vec<usize>,
        max: usize,
        classes: &mut BTreeSet<BTreeSet<Point>>,
    ) {
        if !subset.is_empty() {
            let set: BTreeSet<Point> = subset.iter().map(|&i| points[i].clone()).collect();
            classes.insert(canonical_translate(&set));
        }
        if subset.len() == max {
            return;
        }
        for i in start..points.len() {
            subset.push(i);
            descend(points, i + 1, subset, max, classes);
            subset.pop();
        }
    }
    descend(&points, 0, &mut subset, spec.max_points, &mut classes);

    let mut sorted: Vec<BTreeSet<Point>> = classes.into_iter().collect();
    sorted.sort_by_key(|s| (s.len(), s.iter().cloned().collect::<Vec<_>>()));

    let mut out = Vec::new();
    for (idx, class) in sorted.iter().enumerate() {
        for &(t, n) in &spec.adjacencies {
            let adj = Adjacency::new(t, n).expect("corpus adjacency");
            let img = DigitalImage::finite(format!("c{idx}t{t}"), adj, class.iter().cloned())
                .expect("nonempty corpus class");
            if spec.connected_only && !img.is_connected().expect("nonempty") {
                continue;
            }
            out.push(img);
        }
    }
    out
}

/// Filters for map enumeration.
#[derive(Debug, Clone, Copy, Default)]
pub struct MapFilter {
    pub only_surjective: bool,
    pub only_continuous: bool,
}

/// Calls `visit` with every total map from `x` to `y` passing the filter,
/// in mixed-radix order over sorted points; pruned backtracking keeps the
/// surjective and continuous sweeps cheap. Returns the number of maps
/// visited; `visit` returning `false` stops the sweep.
pub fn for_each_map(
    x: &DigitalImage,
    y: &DigitalImage,
    filter: MapFilter,
    visit: &mut dyn FnMut(&DigitalMap) -> bool,
) -> u64 {
    let xs = x.points();
    let ys = y.points();
    if filter.only_surjective && xs.len() < ys.len() {
        return 0;
    }
    let x_adj: Vec<Vec<bool>> = xs
        .iter()
        .map(|a| xs.iter().map(|b| x.adjacency.adj(a, b)).collect())
        .collect();
    let y_adj: Vec<Vec<bool>> = ys
        .iter()
        .map(|a| ys.iter().map(|b| y.adjacency.adj(a, b)).collect())
        .collect();

    struct Ctx<'a> {
        xs: &'a [Point],
        ys: &'a [Point],
        x_adj: &'a [Vec<bool>],
        y_adj: &'a [Vec<bool>],
        filter: MapFilter,
        x_img: &'a DigitalImage,
        y_img: &'a DigitalImage,
        visited: u64,
        stopped: bool,
    }

    fn assign(
        ctx: &mut Ctx<'_>,
        choice: &mut Vec<usize>,
        hit: &mut Vec<u32>,
        covered: usize,
        visit: &mut dyn FnMut(&DigitalMap) -> bool,
    ) {
        if ctx.stopped {
            return;
        }
        let i = choice.len();
        if i == ctx.xs.len() {
            let pairs: BTreeMap<Point, Point> = ctx
                .xs
                .iter()
                .cloned()
                .zip(choice.iter().map(|&j| ctx.ys[j].clone()))
                .collect();
            let map = DigitalMap::table(ctx.x_img.clone(), ctx.y_img.clone(), pairs)
                .expect("enumerated map is valid");
            ctx.visited += 1;
            if !visit(&map) {
                ctx.stopped = true;
            }
            return;
        }
        let slots_left = ctx.xs.len() - i;
        for j in 0..ctx.ys.len() {
            let uncovered = ctx.ys.len() - covered - usize::from(hit[j] == 0);
            if ctx.filter.only_surjective && slots_left - 1 < uncovered {
                continue;
            }
            if ctx.filter.only_continuous {
                let ok = (0..i).all(|i2| {
                    !ctx.x_adj[i][i2] || choice[i2] == j || ctx.y_adj[j][choice[i2]]
                });
                if !ok {
                    continue;
                }
            }
            choice.push(j);
            hit[j] += 1;
            let newly = usize::from(hit[j] == 1);
            assign(ctx, choice, hit, covered + newly, visit);
            hit[j] -= 1;
            choice.pop();
            if ctx.stopped {
                return;
            }
        }
    }

    let mut ctx = Ctx {
        xs: &xs,
        ys: &ys,
        x_adj: &x_adj,
        y_adj: &y_adj,
        filter,
        x_img: x,
        y_img: y,
        visited: 0,
        stopped: false,
    };
    let mut choice = Vec::with_capacity(xs.len());
    let mut hit = vec![0u32; ys.len()];
    assign(&mut ctx, &mut choice, &mut hit, 0, visit);
    ctx.visited
}

/// Materialized variant of [`for_each_map`].
pub fn enumerate_maps(x: &DigitalImage, y: &DigitalImage, filter: MapFilter) -> Vec<DigitalMap> {
    let mut out = Vec::new();
    for_each_map(x, y, filter, &mut |m| {
        out.push(m.clone());
        true
    });
    out
}
