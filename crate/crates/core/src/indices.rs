//! Indices (compositions of positive integers) with reversal and Hoffman duality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty sequence of positive integers `(k_1, ..., k_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidIndex("index must have at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(format!("{parts:?} has a zero part")));
        }
        Ok(Index(parts))
    }

    /// The index `({1}^m)`.
    pub fn ones(m: usize) -> Self {
        assert!(m > 0);
        Index(vec![1; m])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn reverse(&self) -> Index {
        Index(self.0.iter().rev().copied().collect())
    }

    /// Hoffman dual: write the index as `wt` ones separated by `+` inside a part
    /// and `,` between parts, then swap the two separators.
    pub fn hoffman_dual(&self) -> Index {
        // separator i sits between the i-th and (i+1)-th one; true means ','
        let mut commas = Vec::with_capacity(self.weight() as usize);
        for (pos, &k) in self.0.iter().enumerate() {
            commas.extend(std::iter::repeat_n(false, k as usize - 1));
            if pos + 1 < self.0.len() {
                commas.push(true);
            }
        }
        let mut parts = Vec::new();
        let mut run = 1;
        for is_comma in commas {
            // after the swap a former '+' separates parts
            if !is_comma {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        Index(parts)
    }

    /// All indices of the given weight, in lexicographic order.
    pub fn compositions(weight: u32) -> Vec<Index> {
        fn rec(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Index>) {
            if rest == 0 {
                out.push(Index(prefix.clone()));
                return;
            }
            for k in 1..=rest {
                prefix.push(k);
                rec(rest - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if weight > 0 {
            rec(weight, &mut Vec::new(), &mut out);
        }
        out
    }

    /// All indices of weight `1..=max_weight`.
    pub fn up_to_weight(max_weight: u32) -> Vec<Index> {
        (1..=max_weight).flat_map(Index::compositions).collect()
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidIndex(format!("cannot parse {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Index {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Index::new(v)
    }
}

impl From<Index> for Vec<u32> {
    fn from(k: Index) -> Vec<u32> {
        k.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(idx("3").weight(), 3);
        assert_eq!(idx("1,1,1").weight(), 3);
        assert_eq!(idx("2,1").weight(), 3);
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(idx("2,1").reverse(), idx("1,2"));
        assert_eq!(idx("3").reverse(), idx("3"));
        assert_eq!(idx("1,2,3").reverse(), idx("3,2,1"));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(idx("3").hoffman_dual(), idx("1,1,1"));
        assert_eq!(idx("1,1").hoffman_dual(), idx("2"));
        assert_eq!(idx("2,1").hoffman_dual(), idx("1,2"));
        assert_eq!(idx("1").hoffman_dual(), idx("1"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Index::new(vec![]).is_err());
        assert!(Index::new(vec![1, 0]).is_err());
        assert!("1,,2".parse::<Index>().is_err());
        assert_eq!("(1, 2)".parse::<Index>().unwrap(), idx("1,2"));
    }

    #[test]
    fn composition_counts() {
        for w in 1..=8 {
            assert_eq!(Index::compositions(w).len(), 1 << (w - 1));
        }
        assert_eq!(Index::up_to_weight(5).len(), 31);
    }

    #[test]
    fn dual_involution_exhaustive() {
        for k in Index::up_to_weight(12) {
            let d = k.hoffman_dual();
            assert_eq!(d.hoffman_dual(), k);
            assert_eq!(d.weight(), k.weight());
            assert_eq!(d.depth() as u32, k.weight() - k.depth() as u32 + 1);
        }
    }

    proptest! {
        #[test]
        fn reverse_is_involution(parts in prop::collection::vec(1u32..6, 1..8)) {
            let k = Index::new(parts).unwrap();
            prop_assert_eq!(k.reverse().reverse(), k.clone());
            prop_assert_eq!(k.reverse().weight(), k.weight());
        }

        #[test]
        fn display_parse_roundtrip(parts in prop::collection::vec(1u32..20, 1..8)) {
            let k = Index::new(parts).unwrap();
            prop_assert_eq!(k.to_string().parse::<Index>().unwrap(), k);
        }
    }
}
