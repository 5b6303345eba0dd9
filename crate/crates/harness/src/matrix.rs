//! Implication matrix and separating-witness search over an exhaustive
//! corpus of small maps plus the shipped fixtures.
//!
//! Witnesses are minimal: pairs of images are swept in order of total point
//! count and maps in mixed-radix order, so the first hit is the least one.
//! Fixture maps (whose windows dwarf any corpus image) are swept last.
//! Sweeps parallelize over image pairs and merge in pair order, so reports
//! are identical at any worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use dtk_core::{DigitalMap, Reading, Verdict};

use crate::corpus::{enumerate_images, for_each_map, CorpusSpec, MapFilter};
use crate::props::Prop;

/// Corpus plus fixture maps for one sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub corpus: CorpusSpec,
    /// Swept after the enumerated corpus; order preserved.
    pub extra_maps: Vec<DigitalMap>,
    pub eps_max: u32,
    /// Restriction on the enumerated maps. Searches over the covering
    /// family may soundly pass `only_surjective`, since every covering and
    /// pseudo-covering predicate is false on non-surjections.
    pub filter: MapFilter,
}

impl SweepSpec {
    pub fn new(corpus: CorpusSpec) -> Self {
        SweepSpec { corpus, extra_maps: Vec::new(), eps_max: 2, filter: MapFilter::default() }
    }

    pub fn with_extra_maps(mut self, maps: Vec<DigitalMap>) -> Self {
        self.extra_maps = maps;
        self
    }

    pub fn surjections_only(mut self) -> Self {
        self.filter.only_surjective = true;
        self
    }
}

/// Serializable snapshot of a witness map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDescriptor {
    pub name: String,
    pub domain_adjacency: (u32, u32),
    pub domain_points: Vec<Vec<i64>>,
    pub codomain_adjacency: (u32, u32),
    pub codomain_points: Vec<Vec<i64>>,
    pub pairs: Vec<(Vec<i64>, Vec<i64>)>,
}

impl MapDescriptor {
    pub fn of(map: &DigitalMap) -> Self {
        let pairs = map
            .domain
            .points()
            .into_iter()
            .map(|p| {
                let image = map.apply(&p);
                (p.coords().to_vec(), image.coords().to_vec())
            })
            .collect();
        MapDescriptor {
            name: map.name(),
            domain_adjacency: (map.domain.adjacency.t, map.domain.adjacency.n),
            domain_points: map.domain.points().iter().map(|p| p.coords().to_vec()).collect(),
            codomain_adjacency: (map.codomain.adjacency.t, map.codomain.adjacency.n),
            codomain_points: map.codomain.points().iter().map(|p| p.coords().to_vec()).collect(),
            pairs,
        }
    }
}

/// A map with `p` but not `q`, with both verdicts attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub map: MapDescriptor,
    pub p_verdict: Verdict,
    pub q_verdict: Verdict,
}

/// Outcome of one implication sweep: either a minimal counterexample or an
/// exhaustiveness statement over the swept bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationEntry {
    pub p: Prop,
    pub q: Prop,
    pub reading: Reading,
    pub counterexample: Option<SeparationWitness>,
    pub images_swept: u64,
    pub maps_swept: u64,
    pub bounds: String,
}

impl ImplicationEntry {
    pub fn implication_holds_in_corpus(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn eval_holds(
    map: &DigitalMap,
    props: &[Prop],
    readings: &[Reading],
    eps_max: u32,
) -> BTreeMap<(Prop, Reading), bool> {
    let mut out = BTreeMap::new();
    for &p in props {
        if p.reading_sensitive() {
            for &r in readings {
                let holds = p.eval(map, r, eps_max).expect("corpus predicates").holds;
                out.insert((p, r), holds);
            }
        } else {
            let holds = p.eval(map, Reading::ONTO_IMAGE, eps_max).expect("corpus predicates").holds;
            for &r in readings {
                out.insert((p, r), holds);
            }
        }
    }
    out
}

/// Every map in the sweep, as (pair index, map) via a visitor. Pair index 0
/// is reserved for the extra maps slot at the END of the order.
fn corpus_pairs(spec: &SweepSpec) -> Vec<(usize, usize)> {
    let images = enumerate_images(&spec.corpus);
    let mut pairs: Vec<(usize, usize)> = (0..images.len())
        .flat_map(|i| (0..images.len()).map(move |j| (i, j)))
        .collect();
    pairs.sort_by_key(|&(i, j)| (images[i].len() + images[j].len(), i, j));
    pairs
}

/// Builds the full implication matrix: for every ordered property pair
/// `(p, q)` and reading, either the minimal corpus map with `p` and not `q`
/// or the statement that none exists within bounds.
pub fn implication_matrix(
    spec: &SweepSpec,
    props: &[Prop],
    readings: &[Reading],
) -> Vec<ImplicationEntry> {
    let images = enumerate_images(&spec.corpus);
    let pairs = corpus_pairs(spec);
    let bounds = bounds_note(spec);

    type CellMap = BTreeMap<(Prop, Prop, Reading), SeparationWitness>;

    // Per image pair: the first counterexample for each cell, plus the
    // number of maps swept.
    let per_pair: Vec<(CellMap, u64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut cells: CellMap = BTreeMap::new();
            let swept = for_each_map(&images[i], &images[j], spec.filter, &mut |map| {
                let holds = eval_holds(map, props, readings, spec.eps_max);
                for (&(p, r), &p_holds) in &holds {
                    if !p_holds {
                        continue;
                    }
                    for &q in props {
                        if q == p || holds[&(q, r)] {
                            continue;
                        }
                        cells.entry((p, q, r)).or_insert_with(|| SeparationWitness {
                            map: MapDescriptor::of(map),
                            p_verdict: p.eval(map, r, spec.eps_max).unwrap(),
                            q_verdict: q.eval(map, r, spec.eps_max).unwrap(),
                        });
                    }
                }
                true
            });
            (cells, swept)
        })
        .collect();

    let mut merged: CellMap = BTreeMap::new();
    let mut maps_swept = 0u64;
    for (cells, swept) in per_pair {
        maps_swept += swept;
        for (key, witness) in cells {
            merged.entry(key).or_insert(witness);
        }
    }
    for map in &spec.extra_maps {
        maps_swept += 1;
        let holds = eval_holds(map, props, readings, spec.eps_max);
        for (&(p, r), &p_holds) in &holds {
            if !p_holds {
                continue;
            }
            for &q in props {
                if q == p || holds[&(q, r)] {
                    continue;
                }
                merged.entry((p, q, r)).or_insert_with(|| SeparationWitness {
                    map: MapDescriptor::of(map),
                    p_verdict: p.eval(map, r, spec.eps_max).unwrap(),
                    q_verdict: q.eval(map, r, spec.eps_max).unwrap(),
                });
            }
        }
    }

    let mut out = Vec::new();
    for &r in readings {
        for &p in props {
            for &q in props {
                if p == q {
                    continue;
                }
                out.push(ImplicationEntry {
                    p,
                    q,
                    reading: r,
                    counterexample: merged.get(&(p, q, r)).cloned(),
                    images_swept: images.len() as u64,
                    maps_swept,
                    bounds: bounds.clone(),
                });
            }
        }
    }
    out
}

/// Result of a single separating-witness search. The returned map (when
/// any) is re-evaluated on both properties before being reported, so the
/// witness always replays.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationResult {
    pub p: Prop,
    pub q: Prop,
    pub reading: Reading,
    pub witness: Option<SeparationWitness>,
    pub images_swept: u64,
    pub maps_swept: u64,
    pub bounds: String,
    #[serde(skip)]
    pub witness_map: Option<DigitalMap>,
}

/// Smallest corpus map with `p` and not `q`, or an exhaustiveness
/// certificate that none exists within bounds. Image pairs are processed in
/// canonical order in parallel waves; the witness from the earliest pair
/// wins, so the result is the same at any worker count.
pub fn find_separating_witness(
    p: Prop,
    q: Prop,
    spec: &SweepSpec,
    reading: Reading,
) -> SeparationResult {
    let images = enumerate_images(&spec.corpus);
    let pairs = corpus_pairs(spec);
    let mut maps_swept = 0u64;
    let mut found: Option<(DigitalMap, Verdict, Verdict)> = None;

    let scan_pair = |&(i, j): &(usize, usize)| {
        let mut hit: Option<(DigitalMap, Verdict, Verdict)> = None;
        let swept = for_each_map(&images[i], &images[j], spec.filter, &mut |map| {
            let pv = p.eval(map, reading, spec.eps_max).expect("corpus predicates");
            if !pv.holds {
                return true;
            }
            let qv = q.eval(map, reading, spec.eps_max).expect("corpus predicates");
            if qv.holds {
                return true;
            }
            hit = Some((map.clone(), pv, qv));
            false
        });
        (swept, hit)
    };

    if p != q {
        const WAVE: usize = 64;
        for wave in pairs.chunks(WAVE) {
            let results: Vec<(u64, Option<(DigitalMap, Verdict, Verdict)>)> =
                wave.par_iter().map(scan_pair).collect();
            for (swept, hit) in results {
                maps_swept += swept;
                if found.is_none() {
                    found = hit;
                }
            }
            if found.is_some() {
                break;
            }
        }
        if found.is_none() {
            for map in &spec.extra_maps {
                maps_swept += 1;
                let pv = p.eval(map, reading, spec.eps_max).expect("fixture predicates");
                if !pv.holds {
                    continue;
                }
                let qv = q.eval(map, reading, spec.eps_max).expect("fixture predicates");
                if !qv.holds {
                    found = Some((map.clone(), pv, qv));
                    break;
                }
            }
        }
    }

    let (witness, witness_map) = match found {
        Some((map, p_verdict, q_verdict)) => (
            Some(SeparationWitness { map: MapDescriptor::of(&map), p_verdict, q_verdict }),
            Some(map),
        ),
        None => (None, None),
    };
    SeparationResult {
        p,
        q,
        reading,
        witness,
        images_swept: images.len() as u64,
        maps_swept,
        bounds: bounds_note(spec),
        witness_map,
    }
}

fn bounds_note(spec: &SweepSpec) -> String {
    let mut note = spec.corpus.bounds_note();
    if spec.filter.only_surjective {
        note.push_str(", surjections only");
    }
    if !spec.extra_maps.is_empty() {
        note.push_str(&format!(", plus {} fixture maps", spec.extra_maps.len()));
    }
    note
}

/// Whether a map has either pseudo-covering property but not the covering
/// property, for the coherence rows of the claims engine.
pub fn fixture_maps_of(fixtures: &crate::fixtures::Fixtures) -> Vec<DigitalMap> {
    fixtures.maps.values().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_spec() -> SweepSpec {
        SweepSpec::new(CorpusSpec::new(vec![2, 2], 3))
    }

    #[test]
    fn separating_witnesses_for_the_pseudo_local_pair_are_minimal() {
        let spec = tiny_spec();
        let wl_not_pl = find_separating_witness(Prop::Wl, Prop::Pl, &spec, Reading::ONTO_IMAGE);
        let w = wl_not_pl.witness.expect("a point into an edge");
        assert_eq!(w.map.domain_points.len() + w.map.codomain_points.len(), 3);

        let pl_not_wl = find_separating_witness(Prop::Pl, Prop::Wl, &spec, Reading::ONTO_IMAGE);
        let w = pl_not_wl.witness.expect("an edge onto a point");
        assert_eq!(w.map.domain_points.len() + w.map.codomain_points.len(), 3);
    }

    #[test]
    fn identical_properties_never_separate() {
        let spec = tiny_spec();
        let r = find_separating_witness(Prop::Wl, Prop::Wl, &spec, Reading::ONTO_IMAGE);
        assert!(r.witness.is_none());
    }

    #[test]
    fn matrix_is_transitively_consistent_and_deterministic() {
        let spec = tiny_spec();
        let props = [Prop::Continuous, Prop::LIso, Prop::Wl, Prop::Cover1];
        let readings = [Reading::ONTO_IMAGE];
        let matrix = implication_matrix(&spec, &props, &readings);

        let holds = |p: Prop, q: Prop| {
            matrix
                .iter()
                .find(|e| e.p == p && e.q == q)
                .map(|e| e.implication_holds_in_corpus())
                .unwrap()
        };
        for &p in &props {
            for &q in &props {
                for &r in &props {
                    if p != q && q != r && p != r && holds(p, q) && holds(q, r) {
                        assert!(holds(p, r), "transitivity broken at {p} => {q} => {r}");
                    }
                }
            }
        }

        // L-iso implies continuity and weak locality everywhere.
        assert!(holds(Prop::LIso, Prop::Continuous));
        assert!(holds(Prop::LIso, Prop::Wl));
        // Continuity implies none of them.
        assert!(!holds(Prop::Continuous, Prop::LIso));

        // Identical reports regardless of the worker count.
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| implication_matrix(&spec, &props, &readings));
        assert_eq!(matrix, single);
    }
}
