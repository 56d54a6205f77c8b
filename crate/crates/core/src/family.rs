//! The four tree families and their size conventions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::combinat::catalan;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeFamily {
    /// Binary trees with `n` nodes and the natural labelling.
    Binary,
    /// Complete binary trees with `n` internal nodes (`2n+1` nodes in total).
    CompleteBinary,
    /// Plane trees with `n` edges and increments in `{-1, +1}`.
    PlanePM1,
    /// Plane trees with `n` edges and increments in `{-1, 0, +1}`.
    Plane0PM1,
}

pub const ALL_FAMILIES: [TreeFamily; 4] =
    [TreeFamily::Binary, TreeFamily::CompleteBinary, TreeFamily::PlanePM1, TreeFamily::Plane0PM1];

impl TreeFamily {
    pub fn name(self) -> &'static str {
        match self {
            TreeFamily::Binary => "binary",
            TreeFamily::CompleteBinary => "complete-binary",
            TreeFamily::PlanePM1 => "plane-pm1",
            TreeFamily::Plane0PM1 => "plane-0pm1",
        }
    }

    /// Exponential growth rate of `count(n)`.
    pub fn growth_base(self) -> u32 {
        match self {
            TreeFamily::Binary | TreeFamily::CompleteBinary => 4,
            TreeFamily::PlanePM1 => 8,
            TreeFamily::Plane0PM1 => 12,
        }
    }

    /// Number of labelled objects per shape edge (plane) or 1.
    pub fn label_multiplier(self) -> u32 {
        match self {
            TreeFamily::Binary | TreeFamily::CompleteBinary => 1,
            TreeFamily::PlanePM1 => 2,
            TreeFamily::Plane0PM1 => 3,
        }
    }

    /// Scale constant `γ` in the label normalisation `γ N^{1/4}`.
    pub fn gamma(self) -> f64 {
        match self {
            TreeFamily::Binary => 2f64.powf(-0.25),
            TreeFamily::CompleteBinary => 1.0,
            TreeFamily::PlanePM1 => 2f64.powf(0.25),
            TreeFamily::Plane0PM1 => 2f64.powf(-0.25) * 3f64.sqrt(),
        }
    }

    /// Number of nodes of an object of size `n`.
    pub fn node_count(self, n: u64) -> u64 {
        match self {
            TreeFamily::Binary => n,
            TreeFamily::CompleteBinary => 2 * n + 1,
            TreeFamily::PlanePM1 | TreeFamily::Plane0PM1 => n + 1,
        }
    }

    /// Number of labelled objects of size `n`.
    pub fn count(self, n: u64) -> BigInt {
        catalan(n) * BigInt::from(self.label_multiplier()).pow(n as u32)
    }

    pub fn is_plane(self) -> bool {
        matches!(self, TreeFamily::PlanePM1 | TreeFamily::Plane0PM1)
    }

    /// Allowed label increments along an edge (plane families).
    pub fn increments(self) -> &'static [i64] {
        match self {
            TreeFamily::Binary | TreeFamily::CompleteBinary => &[-1, 1],
            TreeFamily::PlanePM1 => &[-1, 1],
            TreeFamily::Plane0PM1 => &[-1, 0, 1],
        }
    }
}

impl fmt::Display for TreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "binary" => Ok(TreeFamily::Binary),
            "complete" | "complete-binary" => Ok(TreeFamily::CompleteBinary),
            "plane-pm1" | "planepm1" | "plane1" => Ok(TreeFamily::PlanePM1),
            "plane-0pm1" | "plane0pm1" | "plane2" => Ok(TreeFamily::Plane0PM1),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_names() {
        assert_eq!(TreeFamily::Binary.count(4), BigInt::from(14));
        assert_eq!(TreeFamily::CompleteBinary.count(3), BigInt::from(5));
        assert_eq!(TreeFamily::PlanePM1.count(2), BigInt::from(8));
        assert_eq!(TreeFamily::Plane0PM1.count(2), BigInt::from(18));
        for f in ALL_FAMILIES {
            assert_eq!(f.name().parse::<TreeFamily>().unwrap(), f);
        }
        assert!("ternary".parse::<TreeFamily>().is_err());
    }
}
