//! The fixture corpus shipped in-repo: the standard simple closed curves,
//! truncated line and ray windows, the modular wrap maps, and the folded
//! corner map. The JSON files under `fixtures/` are the interface; this
//! module defines the same objects programmatically so a test can keep the
//! two in sync.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use dtk_core::doc::{self, CarrierDoc, ImageDoc, ImageRef, MapDoc, PathDoc, RuleDoc};
use dtk_core::{Adjacency, Carrier, DigitalImage, DigitalMap, KPath, Point};

fn pt(coords: &[i64]) -> Vec<i64> {
    coords.to_vec()
}

/// Every fixture document, keyed by file name. Maps reference image files
/// by name, so the set must be written into one directory.
pub fn fixture_documents() -> Vec<(String, Value)> {
    let mut docs: Vec<(String, Value)> = Vec::new();

    let image = |name: &str, t: u32, n: u32, points: Vec<Vec<i64>>| ImageDoc {
        name: name.into(),
        n,
        t,
        carrier: CarrierDoc::Finite { points },
    };

    let images = vec![
        image("sc4_2_4", 1, 2, vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])]),
        image("sc8_2_4", 2, 2, vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[0, 2]), pt(&[-1, 1])]),
        image(
            "sc8_2_6",
            2,
            2,
            vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[1, 2]), pt(&[0, 3]), pt(&[-1, 2]), pt(&[-1, 1])],
        ),
        image(
            "sc8_2_7",
            2,
            2,
            vec![
                pt(&[0, 0]),
                pt(&[1, 0]),
                pt(&[2, 1]),
                pt(&[2, 2]),
                pt(&[1, 3]),
                pt(&[0, 2]),
                pt(&[-1, 1]),
            ],
        ),
        image(
            "sc8_2_8",
            2,
            2,
            vec![
                pt(&[2, 0]),
                pt(&[1, 1]),
                pt(&[0, 2]),
                pt(&[-1, 1]),
                pt(&[-2, 0]),
                pt(&[-1, -1]),
                pt(&[0, -2]),
                pt(&[1, -1]),
            ],
        ),
        image(
            "sc26_3_5",
            3,
            3,
            vec![pt(&[0, 0, 0]), pt(&[1, 1, 1]), pt(&[2, 0, 1]), pt(&[2, -1, 0]), pt(&[1, 0, -1])],
        ),
        image("d_corner", 1, 2, vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])]),
    ];
    for doc in images {
        docs.push((format!("{}.json", doc.name), serde_json::to_value(&doc).unwrap()));
    }

    for l in [4u32, 5, 6, 7, 8] {
        let half = 3 * l as i64;
        let line = ImageDoc {
            name: format!("z_l{l}"),
            n: 1,
            t: 1,
            carrier: CarrierDoc::Line { start: -half, end: half, margin: 2, period: Some(l) },
        };
        docs.push((format!("z_l{l}.json"), serde_json::to_value(&line).unwrap()));
    }
    for l in [4u32, 6, 8] {
        let ray = ImageDoc {
            name: format!("zplus_l{l}"),
            n: 1,
            t: 1,
            carrier: CarrierDoc::Ray { start: 0, end: 3 * l as i64, margin: 2, period: Some(l) },
        };
        docs.push((format!("zplus_l{l}.json"), serde_json::to_value(&ray).unwrap()));
    }

    let modular = |domain: &str, codomain: &str, l: usize| MapDoc {
        domain: ImageRef::Path(format!("{domain}.json")),
        codomain: ImageRef::Path(format!("{codomain}.json")),
        rule: Some(RuleDoc::Modular { l }),
    };
    let maps = vec![
        ("mod_z_sc4_2_4", modular("z_l4", "sc4_2_4", 4)),
        ("mod_z_sc8_2_4", modular("z_l4", "sc8_2_4", 4)),
        ("mod_z_sc26_3_5", modular("z_l5", "sc26_3_5", 5)),
        ("mod_z_sc8_2_6", modular("z_l6", "sc8_2_6", 6)),
        ("mod_z_sc8_2_7", modular("z_l7", "sc8_2_7", 7)),
        ("mod_z_sc8_2_8", modular("z_l8", "sc8_2_8", 8)),
        ("mod_zplus_sc4_2_4", modular("zplus_l4", "sc4_2_4", 4)),
        ("mod_zplus_sc8_2_4", modular("zplus_l4", "sc8_2_4", 4)),
        ("mod_zplus_sc8_2_6", modular("zplus_l6", "sc8_2_6", 6)),
        ("mod_zplus_sc8_2_8", modular("zplus_l8", "sc8_2_8", 8)),
    ];
    for (name, doc) in maps {
        docs.push((format!("{name}.json"), serde_json::to_value(&doc).unwrap()));
    }

    let corner_fold = MapDoc {
        domain: ImageRef::Path("sc4_2_4.json".into()),
        codomain: ImageRef::Path("d_corner.json".into()),
        rule: Some(RuleDoc::Table {
            pairs: vec![
                (pt(&[0, 0]), pt(&[0, 0])),
                (pt(&[1, 0]), pt(&[1, 0])),
                (pt(&[1, 1]), pt(&[1, 1])),
                (pt(&[0, 1]), pt(&[1, 1])),
            ],
        }),
    };
    docs.push(("corner_fold.json".into(), serde_json::to_value(&corner_fold).unwrap()));

    // A demo path on the hexagon, in canonical cycle order.
    let arc = PathDoc {
        image: ImageRef::Path("sc8_2_6.json".into()),
        points: vec![pt(&[-1, 1]), pt(&[-1, 2]), pt(&[0, 3])],
    };
    docs.push(("path_sc8_2_6_arc.json".into(), serde_json::to_value(&arc).unwrap()));

    docs.sort_by(|a, b| a.0.cmp(&b.0));
    docs
}

/// Writes the fixture corpus into `dir` (pretty-printed, one file each).
pub fn write_fixture_files(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (name, value) in fixture_documents() {
        let text = serde_json::to_string_pretty(&value)? + "\n";
        fs::write(dir.join(&name), text).with_context(|| format!("writing {name}"))?;
    }
    Ok(())
}

/// A fixture corpus loaded from disk.
#[derive(Debug, Clone)]
pub struct Fixtures {
    pub images: BTreeMap<String, DigitalImage>,
    pub maps: BTreeMap<String, DigitalMap>,
    pub paths: BTreeMap<String, KPath>,
}

impl Fixtures {
    pub fn image(&self, name: &str) -> Result<&DigitalImage> {
        self.images.get(name).ok_or_else(|| anyhow!("missing image fixture `{name}`"))
    }

    pub fn map(&self, name: &str) -> Result<&DigitalMap> {
        self.maps.get(name).ok_or_else(|| anyhow!("missing map fixture `{name}`"))
    }

    /// The same modular map over a window twice as long; verdict stability
    /// under this doubling is what certifies periodic carriers.
    pub fn doubled_window_map(&self, name: &str) -> Result<DigitalMap> {
        let map = self.map(name)?;
        let domain = map.domain.with_doubled_window()?;
        match &map.rule {
            dtk_core::Rule::Modular { l, .. } => {
                Ok(DigitalMap::modular(domain, map.codomain.clone(), *l)?)
            }
            dtk_core::Rule::Table { .. } => bail!("`{name}` is not a modular fixture"),
        }
    }

    /// Simple closed curve fixtures by length, smallest point count first.
    pub fn curves(&self) -> Vec<(&str, usize, &DigitalImage)> {
        let mut out = Vec::new();
        for (name, img) in &self.images {
            if name.starts_with("sc") {
                out.push((name.as_str(), img.len(), img));
            }
        }
        out
    }
}

/// Loads every `*.json` document in `dir`, classifying by shape.
pub fn load_dir(dir: &Path) -> Result<Fixtures> {
    let mut images = BTreeMap::new();
    let mut maps = BTreeMap::new();
    let mut paths = BTreeMap::new();
    let mut entries: Vec<_> = fs::read_dir(dir)
        .with_context(|| format!("reading fixture directory {}", dir.display()))?
        .collect::<std::io::Result<Vec<_>>>()?;
    entries.sort_by_key(|e| e.file_name());
    for entry in entries {
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| anyhow!("bad file name {}", path.display()))?
            .to_string();
        let value: Value = serde_json::from_str(&fs::read_to_string(&path)?)
            .with_context(|| format!("parsing {}", path.display()))?;
        if value.get("carrier").is_some() {
            images.insert(stem, doc::load_image(&path)?);
        } else if value.get("rule").is_some() {
            maps.insert(stem, doc::load_map(&path)?);
        } else if value.get("points").is_some() {
            paths.insert(stem, doc::load_path(&path)?);
        } else {
            bail!("unrecognized fixture document {}", path.display());
        }
    }
    if images.is_empty() && maps.is_empty() {
        bail!("no fixtures found in {}", dir.display());
    }
    Ok(Fixtures { images, maps, paths })
}

/// The corner-fold map built directly (used by tests that do not want to
/// touch the filesystem).
pub fn corner_fold() -> DigitalMap {
    let square = DigitalImage::finite(
        "sc4_2_4",
        Adjacency::new(1, 2).unwrap(),
        [pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])].map(Point::new),
    )
    .unwrap();
    let corner = DigitalImage::finite(
        "d_corner",
        Adjacency::new(1, 2).unwrap(),
        [pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])].map(Point::new),
    )
    .unwrap();
    let pairs: BTreeMap<Point, Point> = [
        (Point::new(pt(&[0, 0])), Point::new(pt(&[0, 0]))),
        (Point::new(pt(&[1, 0])), Point::new(pt(&[1, 0]))),
        (Point::new(pt(&[1, 1])), Point::new(pt(&[1, 1]))),
        (Point::new(pt(&[0, 1])), Point::new(pt(&[1, 1]))),
    ]
    .into_iter()
    .collect();
    DigitalMap::table(square, corner, pairs).unwrap()
}

/// A truncated-line image sized for period `l`.
pub fn z_line(l: u32) -> DigitalImage {
    let half = 3 * l as i64;
    DigitalImage::new(
        format!("z_l{l}"),
        Adjacency::new(1, 1).unwrap(),
        Carrier::TruncatedLine { lo: -half, hi: half, margin: 2, period: Some(l) },
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dtk_core::{cycle_order, validate_scc, CurveSpec};

    #[test]
    fn every_curve_fixture_validates_as_a_simple_closed_curve() {
        for (name, value) in fixture_documents() {
            if !name.starts_with("sc") {
                continue;
            }
            let doc: ImageDoc = serde_json::from_value(value).unwrap();
            let img = doc.to_image().unwrap();
            let order = cycle_order(&img, img.len()).unwrap();
            let report = validate_scc(&CurveSpec::new(order, img.adjacency));
            assert!(report.ok, "{name}: {:?}", report.violation);
        }
    }

    #[test]
    fn fixture_documents_are_self_consistent() {
        let dir = tempfile::tempdir().unwrap();
        write_fixture_files(dir.path()).unwrap();
        let fixtures = load_dir(dir.path()).unwrap();
        assert_eq!(fixtures.images.len(), 15);
        assert_eq!(fixtures.maps.len(), 11);
        assert_eq!(fixtures.paths.len(), 1);
        assert_eq!(fixtures.map("corner_fold").unwrap(), &corner_fold());
        let doubled = fixtures.doubled_window_map("mod_z_sc8_2_6").unwrap();
        assert_eq!(doubled.domain.len(), 2 * fixtures.map("mod_z_sc8_2_6").unwrap().domain.len() - 1);
    }
}
