//! JSON document formats: images, maps, paths, and homotopies.
//!
//! Image document:
//! `{"name": "...", "n": 2, "t": 1, "carrier": {"kind": "finite", "points": [[0,0], ...]}}`
//! or, for truncated windows,
//! `{"carrier": {"kind": "ray"|"line", "start": 0, "end": 12, "margin": 2, "period": 4}}`.
//!
//! Map document:
//! `{"domain": <image-ref>, "codomain": <image-ref>, "rule": {"kind": "table", "pairs": [[[0,0],[0,0]], ...]}}`
//! or `{"rule": {"kind": "mod", "l": 4}}`. An image-ref is either an inline
//! image document or a path to one, resolved relative to the referring file.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error as CoreError;
use crate::lattice::{Adjacency, Carrier, DigitalImage, Point};
use crate::lifting::{KHomotopy, KPath};
use crate::morphism::DigitalMap;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid json in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type DocResult<T> = std::result::Result<T, DocError>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImageDoc {
    pub name: String,
    pub n: u32,
    pub t: u32,
    pub carrier: CarrierDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CarrierDoc {
    Finite { points: Vec<Vec<i64>> },
    Ray { start: i64, end: i64, margin: u32, period: Option<u32> },
    Line { start: i64, end: i64, margin: u32, period: Option<u32> },
}

impl ImageDoc {
    pub fn to_image(&self) -> DocResult<DigitalImage> {
        let adjacency = Adjacency::new(self.t, self.n)?;
        let carrier = match &self.carrier {
            CarrierDoc::Finite { points } => {
                let mut set = BTreeSet::new();
                for coords in points {
                    let p = Point::new(coords.clone());
                    if !set.insert(p.clone()) {
                        return Err(DocError::Schema(format!(
                            "duplicate point {p} in image `{}`",
                            self.name
                        )));
                    }
                }
                Carrier::Finite { points: set }
            }
            CarrierDoc::Ray { start, end, margin, period } => Carrier::TruncatedRay {
                start: *start,
                end: *end,
                margin: *margin,
                period: *period,
            },
            CarrierDoc::Line { start, end, margin, period } => Carrier::TruncatedLine {
                lo: *start,
                hi: *end,
                margin: *margin,
                period: *period,
            },
        };
        Ok(DigitalImage::new(self.name.clone(), adjacency, carrier)?)
    }

    pub fn from_image(image: &DigitalImage) -> Self {
        let carrier = match &image.carrier {
            Carrier::Finite { points } => CarrierDoc::Finite {
                points: points.iter().map(|p| p.coords().to_vec()).collect(),
            },
            Carrier::TruncatedRay { start, end, margin, period } => CarrierDoc::Ray {
                start: *start,
                end: *end,
                margin: *margin,
                period: *period,
            },
            Carrier::TruncatedLine { lo, hi, margin, period } => CarrierDoc::Line {
                start: *lo,
                end: *hi,
                margin: *margin,
                period: *period,
            },
        };
        ImageDoc { name: image.name.clone(), n: image.adjacency.n, t: image.adjacency.t, carrier }
    }
}

/// Inline image or a path to one.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageRef {
    Path(String),
    Inline(ImageDoc),
}

impl ImageRef {
    pub fn resolve(&self, base_dir: &Path) -> DocResult<DigitalImage> {
        match self {
            ImageRef::Inline(doc) => doc.to_image(),
            ImageRef::Path(rel) => load_image(&base_dir.join(rel)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDoc {
    pub domain: ImageRef,
    pub codomain: ImageRef,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rule: Option<RuleDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RuleDoc {
    Table { pairs: Vec<(Vec<i64>, Vec<i64>)> },
    #[serde(rename = "mod")]
    Modular { l: usize },
}

impl MapDoc {
    pub fn to_images(&self, base_dir: &Path) -> DocResult<(DigitalImage, DigitalImage)> {
        Ok((self.domain.resolve(base_dir)?, self.codomain.resolve(base_dir)?))
    }

    pub fn to_map(&self, base_dir: &Path) -> DocResult<DigitalMap> {
        let (domain, codomain) = self.to_images(base_dir)?;
        match &self.rule {
            None => Err(DocError::Schema("map document has no rule".into())),
            Some(RuleDoc::Table { pairs }) => {
                let mut table = std::collections::BTreeMap::new();
                for (from, to) in pairs {
                    let from = Point::new(from.clone());
                    if table.insert(from.clone(), Point::new(to.clone())).is_some() {
                        return Err(DocError::Schema(format!(
                            "duplicate table entry for {from}"
                        )));
                    }
                }
                Ok(DigitalMap::table(domain, codomain, table)?)
            }
            Some(RuleDoc::Modular { l }) => Ok(DigitalMap::modular(domain, codomain, *l)?),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathDoc {
    pub image: ImageRef,
    pub points: Vec<Vec<i64>>,
}

impl PathDoc {
    pub fn to_path(&self, base_dir: &Path) -> DocResult<KPath> {
        let image = self.image.resolve(base_dir)?;
        let points = self.points.iter().cloned().map(Point::new).collect();
        Ok(KPath::new(image, points)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomotopyDoc {
    pub image: ImageRef,
    pub grid: Vec<Vec<Vec<i64>>>,
    pub fixed_endpoints: bool,
}

impl HomotopyDoc {
    pub fn to_homotopy(&self, base_dir: &Path) -> DocResult<KHomotopy> {
        let image = self.image.resolve(base_dir)?;
        let grid = self
            .grid
            .iter()
            .map(|row| row.iter().cloned().map(Point::new).collect())
            .collect();
        Ok(KHomotopy { image, grid, fixed_endpoints: self.fixed_endpoints })
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> DocResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|source| DocError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| DocError::Json { path: path.to_path_buf(), source })
}

pub fn load_image(path: &Path) -> DocResult<DigitalImage> {
    read_json::<ImageDoc>(path)?.to_image()
}

pub fn load_map(path: &Path) -> DocResult<DigitalMap> {
    let doc: MapDoc = read_json(path)?;
    doc.to_map(parent_dir(path))
}

/// Domain and codomain of a map document, without requiring a rule.
pub fn load_map_images(path: &Path) -> DocResult<(DigitalImage, DigitalImage)> {
    let doc: MapDoc = read_json(path)?;
    doc.to_images(parent_dir(path))
}

pub fn load_path(path: &Path) -> DocResult<KPath> {
    let doc: PathDoc = read_json(path)?;
    doc.to_path(parent_dir(path))
}

pub fn load_homotopy(path: &Path) -> DocResult<KHomotopy> {
    let doc: HomotopyDoc = read_json(path)?;
    doc.to_homotopy(parent_dir(path))
}

fn parent_dir(path: &Path) -> &Path {
    path.parent().unwrap_or_else(|| Path::new("."))
}
