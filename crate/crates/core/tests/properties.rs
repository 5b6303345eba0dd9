//! Property tests for the lattice and predicate invariants.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use dtk_core::{
    is_continuous, is_covering_r1, is_isomorphism, is_l_isomorphism, is_pl_isomorphism,
    is_pseudo_covering_v1, is_pseudo_covering_v2, is_radius2_l_isomorphism, is_wl_isomorphism,
    replay_witness, Adjacency, DigitalImage, DigitalMap, Point, Reading,
};

fn arb_adjacency() -> impl Strategy<Value = Adjacency> {
    (1u32..=3).prop_flat_map(|n| (1u32..=n, Just(n))).prop_map(|(t, n)| Adjacency::new(t, n).unwrap())
}

fn arb_point(n: u32) -> impl Strategy<Value = Point> {
    proptest::collection::vec(-3i64..=3, n as usize).prop_map(Point::new)
}

/// Nonempty point set inside a small box, in the dimension of the adjacency.
fn arb_image(name: &'static str) -> impl Strategy<Value = DigitalImage> {
    (1u32..=2)
        .prop_flat_map(move |t| {
            let adj = Adjacency::new(t, 2).unwrap();
            proptest::collection::btree_set(
                proptest::collection::vec(0i64..3, 2).prop_map(Point::new),
                1..=5,
            )
            .prop_map(move |points| DigitalImage::finite(name, adj, points).unwrap())
        })
}

fn arb_map() -> impl Strategy<Value = DigitalMap> {
    (arb_image("x"), arb_image("y")).prop_flat_map(|(x, y)| {
        let xs = x.points();
        let ys = y.points();
        proptest::collection::vec(0..ys.len(), xs.len()).prop_map(move |choice| {
            let pairs: BTreeMap<Point, Point> = xs
                .iter()
                .cloned()
                .zip(choice.iter().map(|&i| ys[i].clone()))
                .collect();
            DigitalMap::table(x.clone(), y.clone(), pairs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_irreflexive(
        (adj, p, q) in arb_adjacency().prop_flat_map(|adj| {
            (Just(adj), arb_point(adj.n), arb_point(adj.n))
        }),
    ) {
        prop_assert!(!adj.adj(&p, &p));
        prop_assert_eq!(adj.adj(&p, &q), adj.adj(&q, &p));
    }

    #[test]
    fn neighborhoods_are_distance_balls(img in arb_image("img"), eps in 1u32..=3) {
        for x in img.points() {
            let hood = img.neighborhood(&x, eps).unwrap();
            prop_assert!(hood.contains(&x));
            let smaller = img.neighborhood(&x, eps.saturating_sub(1).max(1)).unwrap();
            prop_assert!(smaller.is_subset(&hood));
            // Independent route: the ball of the shortest-path distance.
            let ball: BTreeSet<Point> = img
                .points()
                .into_iter()
                .filter(|y| matches!(img.k_distance(&x, y).unwrap(), Some(d) if d <= eps))
                .collect();
            prop_assert_eq!(&hood, &ball);
        }
    }

    #[test]
    fn distance_is_a_metric_on_components(img in arb_image("img")) {
        let pts = img.points();
        for x in &pts {
            prop_assert_eq!(img.k_distance(x, x).unwrap(), Some(0));
            for y in &pts {
                prop_assert_eq!(img.k_distance(x, y).unwrap(), img.k_distance(y, x).unwrap());
                if img.adjacency.adj(x, y) {
                    prop_assert_eq!(img.k_distance(x, y).unwrap(), Some(1));
                }
            }
        }
    }

    #[test]
    fn predicate_implications_and_witness_replay(map in arb_map()) {
        let r2 = is_radius2_l_isomorphism(&map).unwrap();
        let l = is_l_isomorphism(&map).unwrap();
        let wl = is_wl_isomorphism(&map).unwrap();
        let cont = is_continuous(&map).unwrap();
        let iso = is_isomorphism(&map).unwrap();
        let pl = is_pl_isomorphism(&map).unwrap();

        prop_assert!(!r2.holds || l.holds);
        prop_assert!(!l.holds || cont.holds);
        prop_assert!(!l.holds || wl.holds);
        prop_assert!(!iso.holds || cont.holds);

        for reading in Reading::BOTH {
            let c1 = is_covering_r1(&map, reading).unwrap();
            let v1 = is_pseudo_covering_v1(&map, reading).unwrap();
            let v2 = is_pseudo_covering_v2(&map, reading).unwrap();
            // A covering satisfies both pseudo-covering versions, and the
            // equality version implies the containment version.
            prop_assert!(!c1.holds || v2.holds);
            prop_assert!(!v1.holds || v2.holds);
            let surjective = map.not_surjective_witness().is_none();
            prop_assert_eq!(c1.holds, l.holds && surjective);
            for v in [c1, v1, v2] {
                if let Some(w) = v.witness.as_ref() {
                    prop_assert!(replay_witness(&map, w).unwrap());
                }
            }
        }

        for v in [r2, l, wl, cont, iso, pl] {
            if let Some(w) = v.witness.as_ref() {
                prop_assert!(replay_witness(&map, w).unwrap());
            }
        }
    }

    #[test]
    fn image_documents_round_trip(img in arb_image("round")) {
        let doc = dtk_core::doc::ImageDoc::from_image(&img);
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: dtk_core::doc::ImageDoc = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(parsed.to_image().unwrap(), img);
    }
}
