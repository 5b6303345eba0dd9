//! Named predicates over digital maps, as exposed on the command line and
//! swept by the implication matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use dtk_core::{
    is_continuous, is_covering_eps, is_covering_r1, is_isomorphism, is_l_isomorphism,
    is_pl_isomorphism, is_pseudo_covering_v1, is_pseudo_covering_v2, is_radius2_covering,
    is_radius2_l_isomorphism, is_wl_isomorphism, DigitalMap, Reading, Result, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prop {
    Continuous,
    Iso,
    LIso,
    R2LIso,
    Wl,
    Pl,
    Cover1,
    CoverEps,
    CoverR2,
    PseudoV1,
    PseudoV2,
}

impl Prop {
    pub const ALL: [Prop; 11] = [
        Prop::Continuous,
        Prop::Iso,
        Prop::LIso,
        Prop::R2LIso,
        Prop::Wl,
        Prop::Pl,
        Prop::Cover1,
        Prop::CoverEps,
        Prop::CoverR2,
        Prop::PseudoV1,
        Prop::PseudoV2,
    ];

    pub fn cli_name(&self) -> &'static str {
        match self {
            Prop::Continuous => "continuous",
            Prop::Iso => "iso",
            Prop::LIso => "l-iso",
            Prop::R2LIso => "r2-l-iso",
            Prop::Wl => "wl",
            Prop::Pl => "pl",
            Prop::Cover1 => "cover1",
            Prop::CoverEps => "cover-eps",
            Prop::CoverR2 => "cover-r2",
            Prop::PseudoV1 => "pseudo-v1",
            Prop::PseudoV2 => "pseudo-v2",
        }
    }

    /// Whether the verdict depends on the slice-restriction reading.
    pub fn reading_sensitive(&self) -> bool {
        matches!(self, Prop::PseudoV1 | Prop::PseudoV2)
    }

    pub fn eval(&self, map: &DigitalMap, reading: Reading, eps_max: u32) -> Result<Verdict> {
        Ok(match self {
            Prop::Continuous => is_continuous(map)?,
            Prop::Iso => is_isomorphism(map)?,
            Prop::LIso => is_l_isomorphism(map)?,
            Prop::R2LIso => is_radius2_l_isomorphism(map)?,
            Prop::Wl => is_wl_isomorphism(map)?,
            Prop::Pl => is_pl_isomorphism(map)?,
            Prop::Cover1 => is_covering_r1(map, reading)?,
            Prop::CoverEps => is_covering_eps(map, eps_max, reading)?.verdict,
            Prop::CoverR2 => is_radius2_covering(map, reading)?,
            Prop::PseudoV1 => is_pseudo_covering_v1(map, reading)?,
            Prop::PseudoV2 => is_pseudo_covering_v2(map, reading)?,
        })
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Prop {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Prop::ALL
            .into_iter()
            .find(|p| p.cli_name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Prop::ALL.iter().map(|p| p.cli_name()).collect();
                format!("unknown property `{s}` (expected one of {})", names.join(", "))
            })
    }
}
