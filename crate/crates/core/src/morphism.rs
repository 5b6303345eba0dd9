//! Digital maps and the isomorphism-like predicates: continuity,
//! isomorphism, local (L-), radius-2 local, weakly local (WL-), pseudo-local
//! (PL-) isomorphisms, and embedding search.
//!
//! The load-bearing distinction: an L-isomorphism maps each unit
//! neighbourhood isomorphically *onto the target neighbourhood*
//! `N(h(x), 1)`, while a WL-isomorphism maps it isomorphically *onto its own
//! image* `h(N(x, 1))` only. `RestrictionMode` keeps the two apart.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{cycle_order, Carrier, DigitalImage, Point};
use crate::verdict::{Verdict, Witness};

/// How a map acts on points: an explicit table, or the modular wrap of a
/// 1-dimensional carrier onto a simple closed curve (`t -> cycle[t mod l]`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    Table { pairs: BTreeMap<Point, Point> },
    Modular { l: usize, cycle: Vec<Point> },
}

/// A total function between two digital images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DigitalMap {
    pub domain: DigitalImage,
    pub codomain: DigitalImage,
    pub rule: Rule,
}

impl DigitalMap {
    /// Explicit table map; validates totality and codomain membership.
    pub fn table(
        domain: DigitalImage,
        codomain: DigitalImage,
        pairs: BTreeMap<Point, Point>,
    ) -> Result<Self> {
        for key in pairs.keys() {
            if !domain.contains(key) {
                return Err(Error::TableKeyOutsideDomain(key.clone()));
            }
        }
        for p in domain.points() {
            match pairs.get(&p) {
                None => return Err(Error::NotTotal(p)),
                Some(q) if !codomain.contains(q) => {
                    return Err(Error::OutsideCodomain { point: p, image_point: q.clone() })
                }
                _ => {}
            }
        }
        Ok(DigitalMap { domain, codomain, rule: Rule::Table { pairs } })
    }

    /// The modular wrap `t -> s_{t mod l}` from a truncated line or ray onto
    /// a simple closed curve of length `l`. The cycle is recovered from the
    /// codomain in canonical order (least point first, towards its lesser
    /// neighbour), so the same codomain always produces the same map.
    pub fn modular(domain: DigitalImage, codomain: DigitalImage, l: usize) -> Result<Self> {
        match domain.carrier {
            Carrier::TruncatedRay { .. } | Carrier::TruncatedLine { .. } => {}
            Carrier::Finite { .. } => return Err(Error::ModularDomainNotLine),
        }
        let cycle = cycle_order(&codomain, l)?;
        Ok(DigitalMap { domain, codomain, rule: Rule::Modular { l, cycle } })
    }

    /// The identity map on an image.
    pub fn identity(image: DigitalImage) -> Self {
        let pairs = image.points().into_iter().map(|p| (p.clone(), p)).collect();
        DigitalMap { domain: image.clone(), codomain: image, rule: Rule::Table { pairs } }
    }

    pub fn apply(&self, p: &Point) -> Point {
        match &self.rule {
            Rule::Table { pairs } => pairs
                .get(p)
                .unwrap_or_else(|| panic!("map is total by construction, missing {p}"))
                .clone(),
            Rule::Modular { l, cycle } => {
                let idx = p.x().rem_euclid(*l as i64) as usize;
                cycle[idx].clone()
            }
        }
    }

    pub fn name(&self) -> String {
        format!("{} -> {}", self.domain.name, self.codomain.name)
    }

    /// The modular cycle when this is a modular map.
    pub fn cycle(&self) -> Option<&[Point]> {
        match &self.rule {
            Rule::Modular { cycle, .. } => Some(cycle),
            Rule::Table { .. } => None,
        }
    }

    /// Image of the whole domain as a point set.
    pub fn image_set(&self) -> BTreeSet<Point> {
        self.domain.points().iter().map(|p| self.apply(p)).collect()
    }

    /// First codomain point with no preimage, in point order.
    pub fn not_surjective_witness(&self) -> Option<Witness> {
        let image = self.image_set();
        self.codomain
            .points()
            .into_iter()
            .find(|y| !image.contains(y))
            .map(|missed| Witness::NotSurjective { missed })
    }

    /// Fiber `p^{-1}(b)` over all window points.
    pub fn fiber(&self, b: &Point) -> Vec<Point> {
        self.domain.points().into_iter().filter(|e| self.apply(e) == *b).collect()
    }

    /// Inverse lookup table; only meaningful once the map is known bijective.
    pub fn inverse_table(&self) -> BTreeMap<Point, Point> {
        self.domain.points().into_iter().map(|p| (self.apply(&p), p)).collect()
    }

    /// Same map with the codomain cut down to the induced subimage on the
    /// actual image set. This is the recast used to re-verify embeddings.
    pub fn with_codomain_restricted_to_image(&self) -> Result<DigitalMap> {
        let image = DigitalImage::finite(
            format!("{}|image", self.codomain.name),
            self.codomain.adjacency,
            self.image_set(),
        )?;
        let pairs: BTreeMap<Point, Point> =
            self.domain.points().into_iter().map(|p| (p.clone(), self.apply(&p))).collect();
        Ok(DigitalMap { domain: self.domain.clone(), codomain: image, rule: Rule::Table { pairs } })
    }
}

/// Which target the restriction of a map to a neighbourhood must cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictionMode {
    /// Bijective onto the full target neighbourhood `N(h(x), eps)`.
    OntoNeighborhood,
    /// Bijective onto its own image only.
    OntoImage,
}

/// Checks that the map restricted to `N(center, radius)` is an isomorphism
/// onto the required target, returning the first violation in point order.
pub fn restriction_check(
    map: &DigitalMap,
    center: &Point,
    radius: u32,
    mode: RestrictionMode,
) -> Result<Option<Witness>> {
    let hood = map.domain.neighborhood(center, radius)?;
    let mut seen: BTreeMap<Point, Point> = BTreeMap::new();
    for a in &hood {
        let image = map.apply(a);
        if let Some(first) = seen.get(&image) {
            return Ok(Some(Witness::RestrictionNotInjective {
                center: center.clone(),
                radius,
                first: first.clone(),
                second: a.clone(),
                image,
            }));
        }
        seen.insert(image, a.clone());
    }
    if mode == RestrictionMode::OntoNeighborhood {
        let target = map.codomain.neighborhood(&map.apply(center), radius)?;
        for a in &hood {
            let image = map.apply(a);
            if !target.contains(&image) {
                return Ok(Some(Witness::RestrictionEscapesTarget {
                    center: center.clone(),
                    radius,
                    point: a.clone(),
                    image,
                }));
            }
        }
        for b in &target {
            if !seen.contains_key(b) {
                return Ok(Some(Witness::RestrictionNotOnto {
                    center: center.clone(),
                    radius,
                    missed: b.clone(),
                }));
            }
        }
    }
    let points: Vec<&Point> = hood.iter().collect();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let (a, b) = (points[i], points[j]);
            let sources_adjacent = map.domain.adjacency.adj(a, b);
            let (ia, ib) = (map.apply(a), map.apply(b));
            let images_adjacent = ia != ib && map.codomain.adjacency.adj(&ia, &ib);
            if sources_adjacent && !images_adjacent {
                return Ok(Some(Witness::AdjacencyNotPreserved {
                    center: center.clone(),
                    radius,
                    first: a.clone(),
                    second: b.clone(),
                }));
            }
            if images_adjacent && !sources_adjacent {
                return Ok(Some(Witness::AdjacencyNotReflected {
                    center: center.clone(),
                    radius,
                    first: a.clone(),
                    second: b.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Continuity violation at a single interior point, if any.
pub fn continuity_at(map: &DigitalMap, x: &Point) -> Result<Option<Witness>> {
    let image_at = map.apply(x);
    let target = map.codomain.neighborhood(&image_at, 1)?;
    for nb in map.domain.neighborhood(x, 1)? {
        if nb == *x {
            continue;
        }
        let image_neighbor = map.apply(&nb);
        if !target.contains(&image_neighbor) {
            return Ok(Some(Witness::NotContinuousAt {
                at: x.clone(),
                neighbor: nb,
                image_at,
                image_neighbor,
            }));
        }
    }
    Ok(None)
}

/// `(k1,k2)`-continuity: every unit neighbourhood of an interior point maps
/// into the unit neighbourhood of the image point.
pub fn is_continuous(map: &DigitalMap) -> Result<Verdict> {
    let mut checked = 0;
    for x in map.domain.interior_points() {
        checked += 1;
        if let Some(w) = continuity_at(map, &x)? {
            return Ok(Verdict::fail(w, checked));
        }
    }
    Ok(Verdict::pass(checked))
}

/// Isomorphism: bijective, continuous, with continuous inverse. The inverse
/// is checked directly on the inverse table, not inferred.
pub fn is_isomorphism(map: &DigitalMap) -> Result<Verdict> {
    let mut checked = 0;
    let mut seen: BTreeMap<Point, Point> = BTreeMap::new();
    for p in map.domain.points() {
        checked += 1;
        let image = map.apply(&p);
        if let Some(first) = seen.get(&image) {
            return Ok(Verdict::fail(
                Witness::NotInjective { first: first.clone(), second: p, image },
                checked,
            ));
        }
        seen.insert(image, p);
    }
    for y in map.codomain.points() {
        checked += 1;
        if !seen.contains_key(&y) {
            return Ok(Verdict::fail(Witness::NotSurjective { missed: y }, checked));
        }
    }
    for x in map.domain.interior_points() {
        checked += 1;
        if let Some(w) = continuity_at(map, &x)? {
            return Ok(Verdict::fail(w, checked));
        }
    }
    // seen is now the inverse table.
    for y in map.codomain.interior_points() {
        checked += 1;
        let preimage_at = seen[&y].clone();
        let source_hood = map.domain.neighborhood(&preimage_at, 1)?;
        for ynb in map.codomain.neighborhood(&y, 1)? {
            if ynb == y {
                continue;
            }
            let preimage_neighbor = seen[&ynb].clone();
            if !source_hood.contains(&preimage_neighbor) {
                return Ok(Verdict::fail(
                    Witness::InverseNotContinuousAt {
                        at: y,
                        neighbor: ynb,
                        preimage_at,
                        preimage_neighbor,
                    },
                    checked,
                ));
            }
        }
    }
    Ok(Verdict::pass(checked))
}

/// Local isomorphism: every interior unit neighbourhood maps isomorphically
/// onto the unit neighbourhood of the image point.
pub fn is_l_isomorphism(map: &DigitalMap) -> Result<Verdict> {
    restriction_predicate(map, 1, RestrictionMode::OntoNeighborhood)
}

/// Radius-2 local isomorphism: the same with radius-2 neighbourhoods.
pub fn is_radius2_l_isomorphism(map: &DigitalMap) -> Result<Verdict> {
    restriction_predicate(map, 2, RestrictionMode::OntoNeighborhood)
}

/// Weakly local isomorphism: every interior unit neighbourhood maps
/// isomorphically onto its own image (no surjectivity onto the target
/// neighbourhood demanded).
pub fn is_wl_isomorphism(map: &DigitalMap) -> Result<Verdict> {
    restriction_predicate(map, 1, RestrictionMode::OntoImage)
}

fn restriction_predicate(map: &DigitalMap, radius: u32, mode: RestrictionMode) -> Result<Verdict> {
    let mut checked = 0;
    for x in map.domain.interior_points() {
        checked += 1;
        if let Some(w) = restriction_check(map, &x, radius, mode)? {
            return Ok(Verdict::fail(w, checked));
        }
    }
    Ok(Verdict::pass(checked))
}

/// Pseudo-local isomorphism: continuous, and the induced subimage on the
/// image of each interior unit neighbourhood is abstractly isomorphic to the
/// induced subimage on the target unit neighbourhood.
pub fn is_pl_isomorphism(map: &DigitalMap) -> Result<Verdict> {
    let continuity = is_continuous(map)?;
    if !continuity.holds {
        return Ok(continuity);
    }
    let mut checked = continuity.checked_points;
    for x in map.domain.interior_points() {
        checked += 1;
        let hood = map.domain.neighborhood(&x, 1)?;
        let image_of_hood: BTreeSet<Point> = hood.iter().map(|a| map.apply(a)).collect();
        let target = map.codomain.neighborhood(&map.apply(&x), 1)?;
        if !induced_isomorphic(&map.codomain, &image_of_hood, &target) {
            return Ok(Verdict::fail(
                Witness::NeighborhoodImageNotIsomorphic {
                    center: x,
                    image_of_neighborhood: image_of_hood.into_iter().collect(),
                    target_neighborhood: target.into_iter().collect(),
                },
                checked,
            ));
        }
    }
    Ok(Verdict::pass(checked))
}

/// Abstract isomorphism between two induced subimages of the same image:
/// some bijection preserving and reflecting adjacency. Both sets are tiny
/// (at most a unit neighbourhood), so plain backtracking suffices.
pub fn induced_isomorphic(img: &DigitalImage, a: &BTreeSet<Point>, b: &BTreeSet<Point>) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let xs: Vec<&Point> = a.iter().collect();
    let ys: Vec<&Point> = b.iter().collect();
    let adj = img.adjacency;
    fn assign(
        xs: &[&Point],
        ys: &[&Point],
        adj: &crate::lattice::Adjacency,
        chosen: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = chosen.len();
        if i == xs.len() {
            return true;
        }
        for j in 0..ys.len() {
            if used[j] {
                continue;
            }
            let consistent = chosen.iter().enumerate().all(|(i2, &j2)| {
                adj.adj(xs[i], xs[i2]) == adj.adj(ys[j], ys[j2])
            });
            if consistent {
                chosen.push(j);
                used[j] = true;
                if assign(xs, ys, adj, chosen, used) {
                    return true;
                }
                chosen.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut chosen = Vec::new();
    let mut used = vec![false; ys.len()];
    assign(&xs, &ys, &adj, &mut chosen, &mut used)
}

/// Complete backtracking search for an embedding of `x` into `y`: an
/// injection that preserves and reflects adjacency, i.e. an isomorphism onto
/// the induced subimage on its image. Returns the lexicographically least
/// such map, or `None` when - exhaustively - none exists.
pub fn exists_dt_embedding(
    x: &DigitalImage,
    y: &DigitalImage,
    budget: &mut Budget,
) -> Result<Option<DigitalMap>> {
    let xs = x.points();
    let ys = y.points();
    if xs.len() > ys.len() {
        return Ok(None);
    }

    fn search(
        xs: &[Point],
        ys: &[Point],
        x_img: &DigitalImage,
        y_img: &DigitalImage,
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        budget: &mut Budget,
    ) -> Result<bool> {
        let i = assignment.len();
        if i == xs.len() {
            return Ok(true);
        }
        for j in 0..ys.len() {
            if used[j] {
                continue;
            }
            budget.spend(1)?;
            let consistent = assignment.iter().enumerate().all(|(i2, &j2)| {
                x_img.adjacency.adj(&xs[i], &xs[i2]) == y_img.adjacency.adj(&ys[j], &ys[j2])
            });
            if consistent {
                assignment.push(j);
                used[j] = true;
                if search(xs, ys, x_img, y_img, assignment, used, budget)? {
                    return Ok(true);
                }
                assignment.pop();
                used[j] = false;
            }
        }
        Ok(false)
    }

    let mut assignment = Vec::new();
    let mut used = vec![false; ys.len()];
    if search(&xs, &ys, x, y, &mut assignment, &mut used, budget)? {
        let pairs: BTreeMap<Point, Point> = xs
            .iter()
            .cloned()
            .zip(assignment.into_iter().map(|j| ys[j].clone()))
            .collect();
        Ok(Some(DigitalMap::table(x.clone(), y.clone(), pairs)?))
    } else {
        Ok(None)
    }
}

/// Re-verifies a structured witness against the raw definitions. Returns
/// `true` when the recorded violation really occurs for this map.
pub fn replay_witness(map: &DigitalMap, witness: &Witness) -> Result<bool> {
    let dom = &map.domain;
    let cod = &map.codomain;
    Ok(match witness {
        Witness::NotSurjective { missed } => {
            cod.contains(missed) && !map.image_set().contains(missed)
        }
        Witness::NotInjective { first, second, image } => {
            first != second
                && dom.contains(first)
                && dom.contains(second)
                && map.apply(first) == *image
                && map.apply(second) == *image
        }
        Witness::NotContinuousAt { at, neighbor, image_at, image_neighbor } => {
            dom.neighborhood(at, 1)?.contains(neighbor)
                && *neighbor != *at
                && map.apply(at) == *image_at
                && map.apply(neighbor) == *image_neighbor
                && !cod.neighborhood(image_at, 1)?.contains(image_neighbor)
        }
        Witness::InverseNotContinuousAt { at, neighbor, preimage_at, preimage_neighbor } => {
            map.apply(preimage_at) == *at
                && map.apply(preimage_neighbor) == *neighbor
                && cod.neighborhood(at, 1)?.contains(neighbor)
                && !dom.neighborhood(preimage_at, 1)?.contains(preimage_neighbor)
        }
        Witness::RestrictionNotInjective { center, radius, first, second, image } => {
            let hood = dom.neighborhood(center, *radius)?;
            hood.contains(first)
                && hood.contains(second)
                && first != second
                && map.apply(first) == *image
                && map.apply(second) == *image
        }
        Witness::RestrictionEscapesTarget { center, radius, point, image } => {
            dom.neighborhood(center, *radius)?.contains(point)
                && map.apply(point) == *image
                && !cod.neighborhood(&map.apply(center), *radius)?.contains(image)
        }
        Witness::RestrictionNotOnto { center, radius, missed } => {
            let hood = dom.neighborhood(center, *radius)?;
            cod.neighborhood(&map.apply(center), *radius)?.contains(missed)
                && hood.iter().all(|a| map.apply(a) != *missed)
        }
        Witness::AdjacencyNotPreserved { center, radius, first, second } => {
            let hood = dom.neighborhood(center, *radius)?;
            let (ia, ib) = (map.apply(first), map.apply(second));
            hood.contains(first)
                && hood.contains(second)
                && dom.adjacency.adj(first, second)
                && !(ia != ib && cod.adjacency.adj(&ia, &ib))
        }
        Witness::AdjacencyNotReflected { center, radius, first, second } => {
            let hood = dom.neighborhood(center, *radius)?;
            let (ia, ib) = (map.apply(first), map.apply(second));
            hood.contains(first)
                && hood.contains(second)
                && first != second
                && ia != ib
                && cod.adjacency.adj(&ia, &ib)
                && !dom.adjacency.adj(first, second)
        }
        Witness::NeighborhoodImageNotIsomorphic { center, .. } => {
            let hood = dom.neighborhood(center, 1)?;
            let image_of_hood: BTreeSet<Point> = hood.iter().map(|a| map.apply(a)).collect();
            let target = cod.neighborhood(&map.apply(center), 1)?;
            !induced_isomorphic(cod, &image_of_hood, &target)
        }
        Witness::FiberPointUncovered { base, eps, point } => {
            cod.neighborhood(base, *eps)?.contains(&map.apply(point))
                && map
                    .fiber(base)
                    .iter()
                    .all(|e| !dom.neighborhood(e, *eps).map(|h| h.contains(point)).unwrap_or(false))
        }
        Witness::SliceOutsidePreimage { base, eps, fiber_point, point } => {
            map.apply(fiber_point) == *base
                && dom.neighborhood(fiber_point, *eps)?.contains(point)
                && !cod.neighborhood(base, *eps)?.contains(&map.apply(point))
        }
        Witness::SlicesOverlap { base, eps, first_fiber, second_fiber, common } => {
            first_fiber != second_fiber
                && map.apply(first_fiber) == *base
                && map.apply(second_fiber) == *base
                && dom.neighborhood(first_fiber, *eps)?.contains(common)
                && dom.neighborhood(second_fiber, *eps)?.contains(common)
        }
        Witness::SliceRestrictionFails { base, fiber_point, inner, .. } => {
            map.apply(fiber_point) == *base && replay_witness(map, inner)?
        }
        Witness::EpsExhausted { at_eps_max, .. } => replay_witness(map, at_eps_max)?,
        other => return Err(Error::WitnessNeedsContext(other.tag())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;
    use crate::verdict::Witness;

    #[test]
    fn identity_passes_every_predicate() {
        for img in [sc4_2_4(), sc8_2_4(), sc8_2_6(), sc26_3_5()] {
            let id = DigitalMap::identity(img);
            assert!(is_continuous(&id).unwrap().holds);
            assert!(is_isomorphism(&id).unwrap().holds);
            assert!(is_l_isomorphism(&id).unwrap().holds);
            assert!(is_radius2_l_isomorphism(&id).unwrap().holds);
            assert!(is_wl_isomorphism(&id).unwrap().holds);
            assert!(is_pl_isomorphism(&id).unwrap().holds);
        }
    }

    #[test]
    fn corner_fold_is_discontinuous_and_fails_wl_at_the_origin() {
        let map = corner_fold();
        let cont = is_continuous(&map).unwrap();
        assert!(!cont.holds);
        match cont.witness.as_ref().unwrap() {
            Witness::NotContinuousAt { at, .. } => assert_eq!(*at, pt(&[0, 0])),
            w => panic!("unexpected witness {w:?}"),
        }

        let wl = is_wl_isomorphism(&map).unwrap();
        assert!(!wl.holds);
        match wl.witness.as_ref().unwrap() {
            Witness::AdjacencyNotPreserved { center, .. } => assert_eq!(*center, pt(&[0, 0])),
            w => panic!("unexpected witness {w:?}"),
        }

        assert!(!is_l_isomorphism(&map).unwrap().holds);
        assert!(!is_pl_isomorphism(&map).unwrap().holds);
        assert!(!is_isomorphism(&map).unwrap().holds);

        for verdict in [cont, wl] {
            assert!(replay_witness(&map, verdict.witness.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn modular_wraps_are_continuous_but_never_injective() {
        for (curve, l) in [(sc8_2_4(), 4), (sc8_2_6(), 6), (sc8_2_8(), 8)] {
            let map = mod_z(curve, l);
            assert!(is_continuous(&map).unwrap().holds);
            let iso = is_isomorphism(&map).unwrap();
            assert!(!iso.holds);
            assert!(matches!(iso.witness, Some(Witness::NotInjective { .. })));
            assert!(replay_witness(&map, iso.witness.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn wrap_of_length_4_is_local_but_not_radius2_local() {
        for curve in [sc4_2_4(), sc8_2_4()] {
            let map = mod_z(curve, 4);
            assert!(is_l_isomorphism(&map).unwrap().holds);
            assert!(is_wl_isomorphism(&map).unwrap().holds);
            let r2 = is_radius2_l_isomorphism(&map).unwrap();
            assert!(!r2.holds);
            assert!(
                matches!(r2.witness, Some(Witness::RestrictionNotInjective { .. })),
                "the radius-2 window folds onto a 4-cycle: {:?}",
                r2.witness
            );
            assert!(replay_witness(&map, r2.witness.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn wraps_of_length_6_to_8_are_radius2_local() {
        for (curve, l) in [(sc8_2_6(), 6), (sc8_2_7(), 7), (sc8_2_8(), 8)] {
            let map = mod_z(curve, l);
            assert!(is_l_isomorphism(&map).unwrap().holds);
            assert!(is_radius2_l_isomorphism(&map).unwrap().holds, "l = {l}");
        }
    }

    #[test]
    fn wrap_of_length_5_is_not_radius2_local() {
        // The radius-2 window is a 5-point interval; its image is the whole
        // 5-cycle, whose wrap-around edge has no preimage edge.
        let map = mod_z(sc26_3_5(), 5);
        assert!(is_l_isomorphism(&map).unwrap().holds);
        let r2 = is_radius2_l_isomorphism(&map).unwrap();
        assert!(!r2.holds);
        assert!(
            matches!(r2.witness, Some(Witness::AdjacencyNotReflected { .. })),
            "{:?}",
            r2.witness
        );
        assert!(replay_witness(&map, r2.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn ray_wrap_is_weakly_local_but_not_local() {
        let map = mod_ray(sc4_2_4(), 4);
        assert!(is_wl_isomorphism(&map).unwrap().holds);
        let l = is_l_isomorphism(&map).unwrap();
        assert!(!l.holds, "the slice of the ray endpoint has only two points");
        assert!(matches!(l.witness, Some(Witness::RestrictionNotOnto { .. })));
        let pl = is_pl_isomorphism(&map).unwrap();
        assert!(!pl.holds);
        assert!(matches!(pl.witness, Some(Witness::NeighborhoodImageNotIsomorphic { .. })));
        assert!(replay_witness(&map, pl.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn constant_map_to_a_singleton_is_pl_but_not_wl() {
        let edge = DigitalImage::finite("edge", a4(), [pt(&[0, 0]), pt(&[0, 1])]).unwrap();
        let point = DigitalImage::finite("point", a4(), [pt(&[0, 0])]).unwrap();
        let pairs: BTreeMap<Point, Point> =
            [(pt(&[0, 0]), pt(&[0, 0])), (pt(&[0, 1]), pt(&[0, 0]))].into_iter().collect();
        let map = DigitalMap::table(edge, point, pairs).unwrap();
        assert!(is_pl_isomorphism(&map).unwrap().holds);
        let wl = is_wl_isomorphism(&map).unwrap();
        assert!(!wl.holds);
        assert!(matches!(wl.witness, Some(Witness::RestrictionNotInjective { .. })));
    }

    #[test]
    fn inclusion_of_a_point_into_an_edge_is_wl_but_not_pl() {
        let point = DigitalImage::finite("point", a4(), [pt(&[0, 0])]).unwrap();
        let edge = DigitalImage::finite("edge", a4(), [pt(&[0, 0]), pt(&[0, 1])]).unwrap();
        let pairs: BTreeMap<Point, Point> =
            [(pt(&[0, 0]), pt(&[0, 0]))].into_iter().collect();
        let map = DigitalMap::table(point, edge, pairs).unwrap();
        assert!(is_wl_isomorphism(&map).unwrap().holds);
        let pl = is_pl_isomorphism(&map).unwrap();
        assert!(!pl.holds);
    }

    #[test]
    fn index_map_between_the_two_4_cycles_is_an_isomorphism() {
        let square = sc4_2_4();
        let diamond = sc8_2_4();
        let sq_cycle = crate::lattice::cycle_order(&square, 4).unwrap();
        let di_cycle = crate::lattice::cycle_order(&diamond, 4).unwrap();
        let pairs: BTreeMap<Point, Point> =
            sq_cycle.into_iter().zip(di_cycle).collect();
        let map = DigitalMap::table(square, diamond, pairs).unwrap();
        assert!(is_isomorphism(&map).unwrap().holds);
    }

    #[test]
    fn isomorphism_agrees_with_the_graph_formulation_on_small_maps() {
        // Independent oracle: a bijection that preserves and reflects
        // adjacency on every point pair.
        fn graph_iso(map: &DigitalMap) -> bool {
            let xs = map.domain.points();
            let image: BTreeSet<Point> = xs.iter().map(|p| map.apply(p)).collect();
            if image.len() != xs.len() || image.len() != map.codomain.len() {
                return false;
            }
            xs.iter().all(|a| {
                xs.iter().all(|b| {
                    a == b
                        || map.domain.adjacency.adj(a, b)
                            == map.codomain.adjacency.adj(&map.apply(a), &map.apply(b))
                })
            })
        }

        let images = [
            sc4_2_4(),
            sc8_2_4(),
            d_corner(),
            DigitalImage::finite("pair", a8(), [pt(&[0, 0]), pt(&[1, 1])]).unwrap(),
        ];
        let mut maps_tested = 0;
        for x in &images {
            for y in &images {
                for map in all_total_maps(x, y) {
                    maps_tested += 1;
                    let verdict = is_isomorphism(&map).unwrap();
                    assert_eq!(verdict.holds, graph_iso(&map), "map {:?}", map.rule);
                    if let Some(w) = verdict.witness.as_ref() {
                        assert!(replay_witness(&map, w).unwrap(), "stale witness {w:?}");
                    }
                }
            }
        }
        assert!(maps_tested > 1000, "swept {maps_tested} maps");
    }

    #[test]
    fn implication_chain_holds_on_an_exhaustive_tiny_corpus() {
        let images = [
            DigitalImage::finite("p1", a4(), [pt(&[0, 0])]).unwrap(),
            DigitalImage::finite("e1", a4(), [pt(&[0, 0]), pt(&[1, 0])]).unwrap(),
            DigitalImage::finite("v2", a8(), [pt(&[0, 0]), pt(&[1, 1]), pt(&[1, 0])]).unwrap(),
            DigitalImage::finite("l3", a4(), [pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 0])]).unwrap(),
        ];
        for x in &images {
            for y in &images {
                for map in all_total_maps(x, y) {
                    let r2 = is_radius2_l_isomorphism(&map).unwrap().holds;
                    let l = is_l_isomorphism(&map).unwrap().holds;
                    let wl = is_wl_isomorphism(&map).unwrap().holds;
                    let cont = is_continuous(&map).unwrap().holds;
                    assert!(!r2 || l, "radius-2 local implies local");
                    assert!(!l || cont, "local implies continuous");
                    assert!(!l || wl, "local implies weakly local");
                }
            }
        }
    }

    #[test]
    fn embeddings_exist_exactly_between_equal_length_cycles() {
        let mut budget = Budget::default();
        let found = exists_dt_embedding(&sc4_2_4(), &sc8_2_4(), &mut budget).unwrap();
        let map = found.expect("4-cycles embed into each other");
        let recast = map.with_codomain_restricted_to_image().unwrap();
        assert!(is_isomorphism(&recast).unwrap().holds);

        assert!(exists_dt_embedding(&sc4_2_4(), &sc8_2_6(), &mut budget).unwrap().is_none());
        assert!(exists_dt_embedding(&sc8_2_6(), &sc8_2_4(), &mut budget).unwrap().is_none());
        assert!(exists_dt_embedding(&sc8_2_6(), &sc8_2_6(), &mut budget).unwrap().is_some());
    }

    #[test]
    fn interior_verdicts_are_invariant_under_one_period_shift() {
        let map = mod_z(sc8_2_4(), 4);
        for x in map.domain.interior_points() {
            let shifted = Point::one(x.x() + 4);
            if !map.domain.is_interior(&shifted) {
                continue;
            }
            let here = restriction_check(&map, &x, 1, RestrictionMode::OntoNeighborhood)
                .unwrap()
                .is_none();
            let there = restriction_check(&map, &shifted, 1, RestrictionMode::OntoNeighborhood)
                .unwrap()
                .is_none();
            assert_eq!(here, there);
            assert_eq!(continuity_at(&map, &x).unwrap().is_none(), continuity_at(&map, &shifted).unwrap().is_none());
        }
    }

    /// Every total map between two small finite images, in mixed-radix
    /// order over sorted points.
    pub(crate) fn all_total_maps(x: &DigitalImage, y: &DigitalImage) -> Vec<DigitalMap> {
        let xs = x.points();
        let ys = y.points();
        let mut out = Vec::new();
        let mut digits = vec![0usize; xs.len()];
        loop {
            let pairs: BTreeMap<Point, Point> = xs
                .iter()
                .cloned()
                .zip(digits.iter().map(|&d| ys[d].clone()))
                .collect();
            out.push(DigitalMap::table(x.clone(), y.clone(), pairs).unwrap());
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return out;
                }
                digits[i] += 1;
                if digits[i] < ys.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    use crate::budget::Budget;
    use crate::morphism::continuity_at;
    use std::collections::BTreeSet;
}
