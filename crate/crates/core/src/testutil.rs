//! Shared fixtures for the unit tests: the standard simple closed curves,
//! truncated line/ray windows, and the modular wrap maps onto the curves.

use std::collections::BTreeMap;

use crate::lattice::{Adjacency, Carrier, CurveSpec, DigitalImage, Point};
use crate::morphism::DigitalMap;

pub fn pt(coords: &[i64]) -> Point {
    Point::new(coords.to_vec())
}

pub fn a4() -> Adjacency {
    Adjacency::new(1, 2).unwrap()
}

pub fn a8() -> Adjacency {
    Adjacency::new(2, 2).unwrap()
}

/// The unit square, a simple closed 4-curve of length 4.
pub fn sc4_2_4() -> DigitalImage {
    DigitalImage::finite(
        "sc4_2_4",
        a4(),
        [pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])],
    )
    .unwrap()
}

/// The diamond, a simple closed 8-curve of length 4.
pub fn sc8_2_4() -> DigitalImage {
    DigitalImage::finite(
        "sc8_2_4",
        a8(),
        [pt(&[0, 0]), pt(&[1, 1]), pt(&[0, 2]), pt(&[-1, 1])],
    )
    .unwrap()
}

/// A simple closed 8-curve of length 6.
pub fn sc8_2_6() -> DigitalImage {
    DigitalImage::finite(
        "sc8_2_6",
        a8(),
        [
            pt(&[0, 0]),
            pt(&[1, 1]),
            pt(&[1, 2]),
            pt(&[0, 3]),
            pt(&[-1, 2]),
            pt(&[-1, 1]),
        ],
    )
    .unwrap()
}

/// A simple closed 8-curve of length 7.
pub fn sc8_2_7() -> DigitalImage {
    DigitalImage::finite(
        "sc8_2_7",
        a8(),
        [
            pt(&[0, 0]),
            pt(&[1, 0]),
            pt(&[2, 1]),
            pt(&[2, 2]),
            pt(&[1, 3]),
            pt(&[0, 2]),
            pt(&[-1, 1]),
        ],
    )
    .unwrap()
}

/// A simple closed 8-curve of length 8 (the diamond of radius 2).
pub fn sc8_2_8() -> DigitalImage {
    DigitalImage::finite(
        "sc8_2_8",
        a8(),
        [
            pt(&[2, 0]),
            pt(&[1, 1]),
            pt(&[0, 2]),
            pt(&[-1, 1]),
            pt(&[-2, 0]),
            pt(&[-1, -1]),
            pt(&[0, -2]),
            pt(&[1, -1]),
        ],
    )
    .unwrap()
}

/// A simple closed 26-curve of length 5 in Z^3; odd lengths below 6 need
/// the third dimension.
pub fn sc26_3_5() -> DigitalImage {
    DigitalImage::finite(
        "sc26_3_5",
        Adjacency::new(3, 3).unwrap(),
        [
            pt(&[0, 0, 0]),
            pt(&[1, 1, 1]),
            pt(&[2, 0, 1]),
            pt(&[2, -1, 0]),
            pt(&[1, 0, -1]),
        ],
    )
    .unwrap()
}

/// Truncated Z window sized for period `l`: three periods each side,
/// margin 2.
pub fn z_line(l: u32) -> DigitalImage {
    let half = 3 * l as i64;
    DigitalImage::new(
        format!("z_l{l}"),
        Adjacency::new(1, 1).unwrap(),
        Carrier::TruncatedLine { lo: -half, hi: half, margin: 2, period: Some(l) },
    )
    .unwrap()
}

/// Truncated Z^+ window sized for period `l`.
pub fn z_ray(l: u32) -> DigitalImage {
    DigitalImage::new(
        format!("zplus_l{l}"),
        Adjacency::new(1, 1).unwrap(),
        Carrier::TruncatedRay { start: 0, end: 3 * l as i64, margin: 2, period: Some(l) },
    )
    .unwrap()
}

/// The modular wrap of Z onto a curve of length `l`.
pub fn mod_z(curve: DigitalImage, l: u32) -> DigitalMap {
    DigitalMap::modular(z_line(l), curve, l as usize).unwrap()
}

/// The modular wrap of Z^+ onto a curve of length `l`.
pub fn mod_ray(curve: DigitalImage, l: u32) -> DigitalMap {
    DigitalMap::modular(z_ray(l), curve, l as usize).unwrap()
}

/// The corner image: the square with its far corner folded onto an edge
/// point, three points under 4-adjacency.
pub fn d_corner() -> DigitalImage {
    DigitalImage::finite("d_corner", a4(), [pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])]).unwrap()
}

/// The fold of the unit square onto the corner image: three corners fixed,
/// the fourth sent across the diagonal. Not continuous at the origin.
pub fn corner_fold() -> DigitalMap {
    let pairs: BTreeMap<Point, Point> = [
        (pt(&[0, 0]), pt(&[0, 0])),
        (pt(&[1, 0]), pt(&[1, 0])),
        (pt(&[1, 1]), pt(&[1, 1])),
        (pt(&[0, 1]), pt(&[1, 1])),
    ]
    .into_iter()
    .collect();
    DigitalMap::table(sc4_2_4(), d_corner(), pairs).unwrap()
}

/// Curve fixtures as validated curve specs, for the validator tests.
pub fn curve_spec_of(img: &DigitalImage) -> CurveSpec {
    let order = crate::lattice::cycle_order(img, img.len()).unwrap();
    CurveSpec::new(order, img.adjacency)
}
