//! Fiber decompositions and the covering-type predicates.
//!
//! Four related conditions share one engine, differing in the radius, in
//! whether the union of fiber slices must *equal* or merely *sit inside* the
//! preimage of the base neighbourhood, and in what the restriction of the
//! map to a slice must be an isomorphism onto:
//!
//! * radius-1 covering:        radius 1, equality,   slice onto target
//! * radius-eps covering:      radius e, equality,   slice onto target
//! * pseudo-covering (v1):     radius 1, equality,   slice per `Reading`
//! * pseudo-covering (v2):     radius 1, containment, slice per `Reading`
//!
//! Slice neighbourhoods always carry the domain adjacency.
//!
//! On truncated carriers every universal quantifier ranges over interior
//! points only; the window `margin` should be at least the largest radius
//! used (the shipped fixtures use margin 2).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::morphism::{continuity_at, restriction_check, DigitalMap, RestrictionMode};
use crate::verdict::{Reading, Verdict, Witness};

/// The fiber over a base point together with the radius-`eps` slice around
/// each fiber point. Purely descriptive; judgements live in the predicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDecomposition {
    pub base: Point,
    pub eps: u32,
    pub fiber: Vec<Point>,
    /// `slices[i]` is the slice of `fiber[i]`, sorted.
    pub slices: Vec<Vec<Point>>,
}

/// Computes the fiber `p^{-1}(b)` and its slices. The map must be a
/// surjection onto its codomain and `b` must be a codomain point.
pub fn fiber_decomposition(map: &DigitalMap, b: &Point, eps: u32) -> Result<FiberDecomposition> {
    if !map.codomain.contains(b) {
        return Err(Error::BaseNotInCodomain(b.clone()));
    }
    if let Some(Witness::NotSurjective { missed }) = map.not_surjective_witness() {
        return Err(Error::NotSurjective { missed });
    }
    let fiber = map.fiber(b);
    let slices = fiber
        .iter()
        .map(|e| Ok(map.domain.neighborhood(e, eps)?.into_iter().collect()))
        .collect::<Result<Vec<Vec<Point>>>>()?;
    Ok(FiberDecomposition { base: b.clone(), eps, fiber, slices })
}

/// Whether the union of slices must equal the preimage of the base
/// neighbourhood, or only be contained in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnionCondition {
    Equality,
    Containment,
}

/// Checks the decomposition conditions over one base point; `None` means
/// they hold there. Exposed for the coherence tests between the predicate
/// variants.
pub fn check_base(
    map: &DigitalMap,
    b: &Point,
    eps: u32,
    union: UnionCondition,
    slice_mode: RestrictionMode,
) -> Result<Option<Witness>> {
    let fiber = map.fiber(b);
    let base_hood = map.codomain.neighborhood(b, eps)?;

    // Slices stay inside the preimage of the base neighbourhood.
    for e in &fiber {
        if !map.domain.is_interior(e) {
            continue;
        }
        for y in map.domain.neighborhood(e, eps)? {
            if !base_hood.contains(&map.apply(&y)) {
                return Ok(Some(Witness::SliceOutsidePreimage {
                    base: b.clone(),
                    eps,
                    fiber_point: e.clone(),
                    point: y,
                }));
            }
        }
    }

    // The slices jointly exhaust the preimage.
    if union == UnionCondition::Equality {
        for x in map.domain.interior_points() {
            if !base_hood.contains(&map.apply(&x)) {
                continue;
            }
            let reach = map.domain.neighborhood(&x, eps)?;
            if !fiber.iter().any(|e| reach.contains(e)) {
                return Ok(Some(Witness::FiberPointUncovered { base: b.clone(), eps, point: x }));
            }
        }
    }

    // Pairwise disjointness. Pairs of cut-adjacent fiber points are covered
    // by the periodic interior copies, so at least one endpoint must be
    // trusted.
    for (i, ei) in fiber.iter().enumerate() {
        for ej in fiber.iter().skip(i + 1) {
            if !map.domain.is_interior(ei) && !map.domain.is_interior(ej) {
                continue;
            }
            let si = map.domain.neighborhood(ei, eps)?;
            let sj = map.domain.neighborhood(ej, eps)?;
            if let Some(common) = si.intersection(&sj).next() {
                return Ok(Some(Witness::SlicesOverlap {
                    base: b.clone(),
                    eps,
                    first_fiber: ei.clone(),
                    second_fiber: ej.clone(),
                    common: common.clone(),
                }));
            }
        }
    }

    // Each slice restriction is the required kind of isomorphism.
    for e in &fiber {
        if !map.domain.is_interior(e) {
            continue;
        }
        if let Some(inner) = restriction_check(map, e, eps, slice_mode)? {
            return Ok(Some(Witness::SliceRestrictionFails {
                base: b.clone(),
                eps,
                fiber_point: e.clone(),
                inner: Box::new(inner),
            }));
        }
    }

    Ok(None)
}

fn surjective_or_fail(map: &DigitalMap, reading: Reading) -> Option<Verdict> {
    map.not_surjective_witness()
        .map(|w| Verdict::fail(w, 0).with_reading(reading))
}

/// Radius-1 covering map: a surjection whose fibers decompose the preimage
/// of every unit base neighbourhood into disjoint slices, each mapped
/// isomorphically onto the base neighbourhood.
pub fn is_covering_r1(map: &DigitalMap, reading: Reading) -> Result<Verdict> {
    if let Some(v) = surjective_or_fail(map, reading) {
        return Ok(v);
    }
    let mut checked = 0;
    for b in map.codomain.interior_points() {
        checked += 1;
        if let Some(w) =
            check_base(map, &b, 1, UnionCondition::Equality, RestrictionMode::OntoNeighborhood)?
        {
            return Ok(Verdict::fail(w, checked).with_reading(reading));
        }
    }
    Ok(Verdict::pass(checked).with_reading(reading))
}

/// Covering verdict for the existential-radius definition, with the minimal
/// working radius recorded per base point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsVerdict {
    pub verdict: Verdict,
    /// The bound put on the existential search.
    pub eps_max: u32,
    /// Minimal working radius per base point (only bases examined so far).
    pub min_eps: Vec<(Point, u32)>,
}

/// Existential-radius covering map: a continuous surjection such that every
/// base point admits some radius in `1..=eps_max` whose decomposition
/// conditions hold. The unbounded existential of the source definition is
/// cut off at `eps_max`, which is recorded in the verdict.
pub fn is_covering_eps(map: &DigitalMap, eps_max: u32, reading: Reading) -> Result<EpsVerdict> {
    if let Some(v) = surjective_or_fail(map, reading) {
        return Ok(EpsVerdict { verdict: v, eps_max, min_eps: Vec::new() });
    }
    let mut checked = 0;
    for x in map.domain.interior_points() {
        checked += 1;
        if let Some(w) = continuity_at(map, &x)? {
            return Ok(EpsVerdict {
                verdict: Verdict::fail(w, checked).with_reading(reading),
                eps_max,
                min_eps: Vec::new(),
            });
        }
    }
    let mut min_eps = Vec::new();
    for b in map.codomain.interior_points() {
        checked += 1;
        let mut found = None;
        let mut last_failure = None;
        for eps in 1..=eps_max {
            match check_base(map, &b, eps, UnionCondition::Equality, RestrictionMode::OntoNeighborhood)? {
                None => {
                    found = Some(eps);
                    break;
                }
                Some(w) => last_failure = Some(w),
            }
        }
        match found {
            Some(eps) => min_eps.push((b.clone(), eps)),
            None => {
                let witness = Witness::EpsExhausted {
                    base: b.clone(),
                    eps_max,
                    at_eps_max: Box::new(last_failure.expect("eps_max >= 1")),
                };
                return Ok(EpsVerdict {
                    verdict: Verdict::fail(witness, checked).with_reading(reading),
                    eps_max,
                    min_eps,
                });
            }
        }
    }
    Ok(EpsVerdict { verdict: Verdict::pass(checked).with_reading(reading), eps_max, min_eps })
}

/// Radius-2 covering map: the existential-radius conditions with the radius
/// pinned to 2 at every base point (plus continuity and surjectivity).
pub fn is_radius2_covering(map: &DigitalMap, reading: Reading) -> Result<Verdict> {
    if let Some(v) = surjective_or_fail(map, reading) {
        return Ok(v);
    }
    let mut checked = 0;
    for x in map.domain.interior_points() {
        checked += 1;
        if let Some(w) = continuity_at(map, &x)? {
            return Ok(Verdict::fail(w, checked).with_reading(reading));
        }
    }
    for b in map.codomain.interior_points() {
        checked += 1;
        if let Some(w) =
            check_base(map, &b, 2, UnionCondition::Equality, RestrictionMode::OntoNeighborhood)?
        {
            return Ok(Verdict::fail(w, checked).with_reading(reading));
        }
    }
    Ok(Verdict::pass(checked).with_reading(reading))
}

fn slice_mode(reading: Reading) -> RestrictionMode {
    if reading.restriction_onto_target {
        RestrictionMode::OntoNeighborhood
    } else {
        RestrictionMode::OntoImage
    }
}

/// First-version pseudo-covering map: a surjection satisfying the equality
/// decomposition and disjointness, with each slice restriction a weakly
/// local isomorphism (interpreted per `reading`).
pub fn is_pseudo_covering_v1(map: &DigitalMap, reading: Reading) -> Result<Verdict> {
    if let Some(v) = surjective_or_fail(map, reading) {
        return Ok(v);
    }
    let mut checked = 0;
    for b in map.codomain.interior_points() {
        checked += 1;
        if let Some(w) = check_base(map, &b, 1, UnionCondition::Equality, slice_mode(reading))? {
            return Ok(Verdict::fail(w, checked).with_reading(reading));
        }
    }
    Ok(Verdict::pass(checked).with_reading(reading))
}

/// Revised pseudo-covering map: as v1 but the union of slices need only be
/// contained in the preimage of the base neighbourhood.
pub fn is_pseudo_covering_v2(map: &DigitalMap, reading: Reading) -> Result<Verdict> {
    if let Some(v) = surjective_or_fail(map, reading) {
        return Ok(v);
    }
    let mut checked = 0;
    for b in map.codomain.interior_points() {
        checked += 1;
        if let Some(w) = check_base(map, &b, 1, UnionCondition::Containment, slice_mode(reading))? {
            return Ok(Verdict::fail(w, checked).with_reading(reading));
        }
    }
    Ok(Verdict::pass(checked).with_reading(reading))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::replay_witness;
    use crate::testutil::*;
    use crate::verdict::Reading;

    #[test]
    fn ray_fiber_decomposition_over_the_base_point() {
        let map = mod_ray(sc4_2_4(), 4);
        let s0 = map.cycle().unwrap()[0].clone();
        let d = fiber_decomposition(&map, &s0, 1).unwrap();
        assert_eq!(d.fiber, vec![pt(&[0]), pt(&[4]), pt(&[8]), pt(&[12])]);
        assert_eq!(
            d.slices,
            vec![
                vec![pt(&[0]), pt(&[1])],
                vec![pt(&[3]), pt(&[4]), pt(&[5])],
                vec![pt(&[7]), pt(&[8]), pt(&[9])],
                vec![pt(&[11]), pt(&[12])],
            ]
        );
    }

    #[test]
    fn line_fiber_slices_have_three_points_around_multiples_of_six() {
        let map = mod_z(sc8_2_6(), 6);
        let s0 = map.cycle().unwrap()[0].clone();
        let d = fiber_decomposition(&map, &s0, 1).unwrap();
        let expected_fiber: Vec<Point> = (-3..=3).map(|k| pt(&[6 * k])).collect();
        assert_eq!(d.fiber, expected_fiber);
        for (e, slice) in d.fiber.iter().zip(&d.slices) {
            if map.domain.is_interior(e) {
                let x = e.x();
                assert_eq!(slice, &vec![pt(&[x - 1]), pt(&[x]), pt(&[x + 1])]);
            }
        }
    }

    #[test]
    fn identity_decomposition_is_a_single_slice() {
        let img = sc8_2_6();
        let map = crate::morphism::DigitalMap::identity(img.clone());
        let b = img.points()[0].clone();
        let d = fiber_decomposition(&map, &b, 1).unwrap();
        assert_eq!(d.fiber, vec![b.clone()]);
        let hood: Vec<Point> = img.neighborhood(&b, 1).unwrap().into_iter().collect();
        assert_eq!(d.slices, vec![hood]);
    }

    #[test]
    fn decomposition_preconditions_are_checked() {
        let map = mod_ray(sc4_2_4(), 4);
        assert!(matches!(
            fiber_decomposition(&map, &pt(&[9, 9]), 1),
            Err(Error::BaseNotInCodomain(_))
        ));
        let inclusion = crate::morphism::DigitalMap::table(
            DigitalImage::finite("pt", a4(), [pt(&[0, 0])]).unwrap(),
            d_corner(),
            [(pt(&[0, 0]), pt(&[0, 0]))].into_iter().collect(),
        )
        .unwrap();
        assert!(matches!(
            fiber_decomposition(&inclusion, &pt(&[0, 0]), 1),
            Err(Error::NotSurjective { .. })
        ));
    }

    #[test]
    fn line_wraps_are_coverings_and_the_ray_wrap_is_not() {
        for reading in Reading::BOTH {
            for (curve, l) in [(sc8_2_4(), 4), (sc8_2_6(), 6), (sc8_2_8(), 8)] {
                let map = mod_z(curve, l);
                assert!(is_covering_r1(&map, reading).unwrap().holds, "l = {l}");
            }
            let ray = mod_ray(sc4_2_4(), 4);
            let v = is_covering_r1(&ray, reading).unwrap();
            assert!(!v.holds);
            assert!(replay_witness(&ray, v.witness.as_ref().unwrap()).unwrap());

            let id = crate::morphism::DigitalMap::identity(sc8_2_6());
            assert!(is_covering_r1(&id, reading).unwrap().holds);
        }
    }

    #[test]
    fn radius_search_reports_minimal_radius_one_for_coverings() {
        let reading = Reading::ONTO_IMAGE;
        let map6 = mod_z(sc8_2_6(), 6);
        let v6 = is_covering_eps(&map6, 2, reading).unwrap();
        assert!(v6.verdict.holds);
        assert!(v6.min_eps.iter().all(|(_, eps)| *eps == 1));
        // Radius 2 also satisfies the decomposition conditions everywhere.
        for b in map6.codomain.interior_points() {
            assert!(check_base(
                &map6,
                &b,
                2,
                UnionCondition::Equality,
                RestrictionMode::OntoNeighborhood
            )
            .unwrap()
            .is_none());
        }

        let map4 = mod_z(sc8_2_4(), 4);
        let v4 = is_covering_eps(&map4, 2, reading).unwrap();
        assert!(v4.verdict.holds, "radius 1 works at every base point");
        assert!(v4.min_eps.iter().all(|(_, eps)| *eps == 1));
        // But radius 2 fails: the radius-2 window has five points, the
        // whole curve only four.
        let b0 = map4.cycle().unwrap()[0].clone();
        let w = check_base(&map4, &b0, 2, UnionCondition::Equality, RestrictionMode::OntoNeighborhood)
            .unwrap();
        assert!(w.is_some());
        assert!(replay_witness(&map4, &w.unwrap()).unwrap());

        let id = crate::morphism::DigitalMap::identity(sc4_2_4());
        assert!(is_covering_eps(&id, 1, reading).unwrap().verdict.holds);
    }

    #[test]
    fn radius2_covering_holds_for_l6_and_fails_for_l4() {
        for reading in Reading::BOTH {
            assert!(is_radius2_covering(&mod_z(sc8_2_6(), 6), reading).unwrap().holds);
            let v = is_radius2_covering(&mod_z(sc8_2_4(), 4), reading).unwrap();
            assert!(!v.holds);
            let id = crate::morphism::DigitalMap::identity(sc8_2_4());
            assert!(is_radius2_covering(&id, reading).unwrap().holds);
        }
    }

    #[test]
    fn radius2_covering_agrees_with_r1_plus_radius2_local_on_fixtures() {
        use crate::morphism::is_radius2_l_isomorphism;
        let fixtures = [
            mod_z(sc8_2_4(), 4),
            mod_z(sc8_2_6(), 6),
            mod_z(sc8_2_8(), 8),
            mod_ray(sc4_2_4(), 4),
            mod_ray(sc8_2_6(), 6),
            crate::morphism::DigitalMap::identity(sc8_2_6()),
            corner_fold(),
        ];
        for map in &fixtures {
            for reading in Reading::BOTH {
                let lhs = is_radius2_covering(map, reading).unwrap().holds;
                let rhs = is_covering_r1(map, reading).unwrap().holds
                    && is_radius2_l_isomorphism(map).unwrap().holds;
                assert_eq!(lhs, rhs, "map {}", map.name());
            }
        }
    }

    #[test]
    fn radius1_search_agrees_with_the_radius1_covering_predicate() {
        let fixtures = [
            mod_z(sc8_2_4(), 4),
            mod_z(sc8_2_6(), 6),
            mod_ray(sc4_2_4(), 4),
            corner_fold(),
            crate::morphism::DigitalMap::identity(sc4_2_4()),
        ];
        for map in &fixtures {
            for reading in Reading::BOTH {
                assert_eq!(
                    is_covering_eps(map, 1, reading).unwrap().verdict.holds,
                    is_covering_r1(map, reading).unwrap().holds,
                    "map {}",
                    map.name()
                );
            }
        }
    }

    #[test]
    fn corner_fold_is_not_pseudo_covering_under_either_version_or_reading() {
        let map = corner_fold();
        for reading in Reading::BOTH {
            let v1 = is_pseudo_covering_v1(&map, reading).unwrap();
            let v2 = is_pseudo_covering_v2(&map, reading).unwrap();
            assert!(!v1.holds && !v2.holds);
            for v in [v1, v2] {
                let w = v.witness.unwrap();
                assert!(
                    matches!(w, Witness::SliceOutsidePreimage { .. }),
                    "the folded corner leaks outside the base neighbourhood: {w:?}"
                );
                assert!(replay_witness(&map, &w).unwrap());
            }
        }
    }

    #[test]
    fn ray_wrap_separates_the_two_pseudo_covering_versions() {
        let map = mod_ray(sc4_2_4(), 4);

        let v1_image = is_pseudo_covering_v1(&map, Reading::ONTO_IMAGE).unwrap();
        assert!(!v1_image.holds);
        assert!(
            matches!(v1_image.witness, Some(Witness::FiberPointUncovered { .. })),
            "the endpoint 0 sits in no slice over its predecessor base: {:?}",
            v1_image.witness
        );

        let v1_target = is_pseudo_covering_v1(&map, Reading::ONTO_TARGET).unwrap();
        assert!(!v1_target.holds);

        let v2_image = is_pseudo_covering_v2(&map, Reading::ONTO_IMAGE).unwrap();
        assert!(v2_image.holds, "the revised condition only asks for containment");

        let v2_target = is_pseudo_covering_v2(&map, Reading::ONTO_TARGET).unwrap();
        assert!(!v2_target.holds);
        assert!(matches!(
            v2_target.witness,
            Some(Witness::SliceRestrictionFails { .. })
        ));

        for v in [v1_image, v1_target, v2_target] {
            assert!(replay_witness(&map, v.witness.as_ref().unwrap()).unwrap());
        }

        // The same map is not a covering, so v2-but-not-covering separates
        // the notions.
        assert!(!is_covering_r1(&map, Reading::ONTO_IMAGE).unwrap().holds);
    }

    #[test]
    fn coverings_are_pseudo_coverings_of_both_versions() {
        for reading in Reading::BOTH {
            for (curve, l) in [(sc8_2_4(), 4), (sc8_2_6(), 6)] {
                let map = mod_z(curve, l);
                assert!(is_pseudo_covering_v1(&map, reading).unwrap().holds);
                assert!(is_pseudo_covering_v2(&map, reading).unwrap().holds);
            }
            let id = crate::morphism::DigitalMap::identity(sc4_2_4());
            assert!(is_pseudo_covering_v1(&id, reading).unwrap().holds);
            assert!(is_pseudo_covering_v2(&id, reading).unwrap().holds);
        }
    }

    #[test]
    fn non_surjections_fail_every_covering_predicate_with_a_witness() {
        let inclusion = crate::morphism::DigitalMap::table(
            DigitalImage::finite("pt", a4(), [pt(&[0, 0])]).unwrap(),
            d_corner(),
            [(pt(&[0, 0]), pt(&[0, 0]))].into_iter().collect(),
        )
        .unwrap();
        let reading = Reading::ONTO_IMAGE;
        let verdicts = [
            is_covering_r1(&inclusion, reading).unwrap(),
            is_covering_eps(&inclusion, 2, reading).unwrap().verdict,
            is_radius2_covering(&inclusion, reading).unwrap(),
            is_pseudo_covering_v1(&inclusion, reading).unwrap(),
            is_pseudo_covering_v2(&inclusion, reading).unwrap(),
        ];
        for v in verdicts {
            assert!(!v.holds);
            assert!(matches!(v.witness, Some(Witness::NotSurjective { .. })));
        }
    }

    use crate::lattice::DigitalImage;
    use crate::lattice::Point;
}
