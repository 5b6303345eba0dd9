use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A lattice point of Z^n. Points order lexicographically by coordinates,
/// which is the total order every "first witness" rule in this crate refers
/// to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    /// Convenience for 1-dimensional carriers.
    pub fn one(x: i64) -> Self {
        Point(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// First coordinate; only meaningful on 1-dimensional carriers.
    pub fn x(&self) -> i64 {
        self.0[0]
    }

    pub fn translated(&self, offset: &[i64]) -> Point {
        Point(
            self.0
                .iter()
                .zip(offset)
                .map(|(c, o)| c + o)
                .collect(),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Point {
    type Err = std::num::ParseIntError;

    /// Parses `"1,-2,0"` (optionally wrapped in parentheses).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        trimmed
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(Point)
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_coordinates_with_and_without_parens() {
        assert_eq!("1,-2".parse::<Point>().unwrap(), Point(vec![1, -2]));
        assert_eq!("(0, 3)".parse::<Point>().unwrap(), Point(vec![0, 3]));
        assert_eq!("7".parse::<Point>().unwrap(), Point::one(7));
    }

    #[test]
    fn orders_lexicographically() {
        let a = Point(vec![0, 5]);
        let b = Point(vec![1, 0]);
        assert!(a < b);
    }
}
