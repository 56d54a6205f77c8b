//! Extended partitions: non-decreasing tuples of non-negative integers.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExtendedPartition {
    parts: Vec<u32>,
}

impl ExtendedPartition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable();
        ExtendedPartition { parts }
    }

    pub fn empty() -> Self {
        ExtendedPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn has_zero_part(&self) -> bool {
        self.parts.first() == Some(&0)
    }

    pub fn is_positive(&self) -> bool {
        !self.has_zero_part()
    }

    /// Removes the first (smallest) zero part.
    pub fn strip_zero(&self) -> Option<Self> {
        self.has_zero_part().then(|| ExtendedPartition { parts: self.parts[1..].to_vec() })
    }

    /// `1^a 2^b`, the shape behind the first- and second-moment specialisations.
    pub fn ones_twos(ones: usize, twos: usize) -> Self {
        let mut parts = vec![1; ones];
        parts.extend(std::iter::repeat_n(2, twos));
        ExtendedPartition { parts }
    }

    /// Every partition with positive parts, weight in `1..=max_weight` and
    /// length in `1..=max_len`, in a deterministic order.
    pub fn all_positive(max_weight: u32, max_len: usize) -> Vec<Self> {
        fn rec(rest: u32, min: u32, len_left: usize, cur: &mut Vec<u32>, out: &mut Vec<ExtendedPartition>) {
            if !cur.is_empty() {
                out.push(ExtendedPartition { parts: cur.clone() });
            }
            if len_left == 0 {
                return;
            }
            for p in min..=rest {
                cur.push(p);
                rec(rest - p, p, len_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_weight, 1, max_len, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.weight().cmp(&b.weight()).then(a.len().cmp(&b.len())).then(a.cmp(b)));
        out
    }
}

/// All tuples `σ` with `0 <= σ_i <= λ_i` (positional, unsorted), in
/// lexicographic order.
pub fn dominated_tuples(lambda: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(lambda.len())];
    for &l in lambda {
        let mut next = Vec::with_capacity(out.len() * (l as usize + 1));
        for prefix in &out {
            for s in 0..=l {
                let mut v = prefix.clone();
                v.push(s);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

impl fmt::Display for ExtendedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for ExtendedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtendedPartition {
    type Err = Error;

    /// Accepts comma lists such as `1,1,2`, optionally wrapped in parentheses.
    /// An empty string (or `()`) is the empty partition.
    fn from_str(s: &str) -> Result<Self, Error> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Self::empty());
        }
        body.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::InvalidPartition(s.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sorts_and_rejects_garbage() {
        let p: ExtendedPartition = "2, 1,1".parse().unwrap();
        assert_eq!(p.parts(), &[1, 1, 2]);
        assert_eq!(p.to_string(), "(1,1,2)");
        assert_eq!(p.weight(), 4);
        assert!("".parse::<ExtendedPartition>().unwrap().is_empty());
        assert!("()".parse::<ExtendedPartition>().unwrap().is_empty());
        assert!("1,-2".parse::<ExtendedPartition>().is_err());
        assert!("a".parse::<ExtendedPartition>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        // partitions of 1..=6 into at most 3 parts: 1+2+3+4+5+7
        assert_eq!(ExtendedPartition::all_positive(6, 3).len(), 22);
        assert_eq!(dominated_tuples(&[2, 1]).len(), 6);
    }

    #[test]
    fn zero_stripping() {
        let p = ExtendedPartition::new(vec![3, 0, 0]);
        assert_eq!(p.strip_zero().unwrap().parts(), &[0, 3]);
        assert!(ExtendedPartition::new(vec![1]).strip_zero().is_none());
    }
}
