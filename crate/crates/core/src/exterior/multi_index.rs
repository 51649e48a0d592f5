//! Strictly increasing index sets, stored as bitmasks over `0..8`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 8;

/// A strictly increasing multi-index `i₁ < … < i_k` with 0-based entries.
///
/// Ordering is lexicographic on the increasing sequence, so `{0,1,6}`
/// sorts before `{0,2,4}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiIndex(u8);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_mask(mask: u8) -> MultiIndex {
        MultiIndex(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// Builds from 0-based strictly increasing indices.
    pub fn new(indices: &[usize]) -> Result<MultiIndex> {
        let mut mask = 0u8;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= MAX_DIM {
                return Err(Error::InvalidIndex(indices.to_vec(), "index out of range"));
            }
            if prev.is_some_and(|p| p >= i) {
                return Err(Error::InvalidIndex(
                    indices.to_vec(),
                    "not strictly increasing",
                ));
            }
            prev = Some(i);
            mask |= 1 << i;
        }
        Ok(MultiIndex(mask))
    }

    /// Builds from 1-based strictly increasing labels.
    pub fn from_one_based(labels: &[usize]) -> Result<MultiIndex> {
        if labels.contains(&0) {
            return Err(Error::InvalidIndex(labels.to_vec(), "labels are 1-based"));
        }
        let zero: Vec<usize> = labels.iter().map(|l| l - 1).collect();
        MultiIndex::new(&zero).map_err(|_| {
            Error::InvalidIndex(labels.to_vec(), "not a strictly increasing label set")
        })
    }

    /// Single index `{i}`.
    pub fn single(i: usize) -> MultiIndex {
        debug_assert!(i < MAX_DIM);
        MultiIndex(1 << i)
    }

    /// The full set `{0, …, n-1}`.
    pub fn full(n: usize) -> MultiIndex {
        MultiIndex(((1u16 << n) - 1) as u8)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_DIM && self.0 & (1 << i) != 0
    }

    pub fn is_disjoint(self, other: MultiIndex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> MultiIndex {
        MultiIndex(self.0 & !(1 << i))
    }

    pub fn complement(self, n: usize) -> MultiIndex {
        MultiIndex(!self.0 & MultiIndex::full(n).0)
    }

    /// Number of members smaller than `i`.
    pub fn rank_of(self, i: usize) -> usize {
        (self.0 & ((1u16 << i) - 1) as u8).count_ones() as usize
    }

    /// Largest member, if any.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(7 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..MAX_DIM).filter(move |i| mask & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Monomial label such as `e127`, with indices shifted by `base`
    /// (1 for the usual `e1…e7` labels, 0 for `e0…e7`).
    pub fn label(self, base: usize) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let mut s = String::from("e");
        for i in self.iter() {
            s.push_str(&(i + base).to_string());
        }
        s
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label(1))
    }
}

/// Sign of `e_a ∧ e_b` relative to `e_{a∪b}`; zero if they overlap.
pub fn wedge_sign(a: MultiIndex, b: MultiIndex) -> i64 {
    if !a.is_disjoint(b) {
        return 0;
    }
    let mut inversions = 0u32;
    for j in b.iter() {
        inversions += (a.0 as u16 >> (j + 1)).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorts an index tuple: returns the sign of the sorting permutation and
/// the resulting set, or `None` if an index repeats.
pub fn sort_sign(indices: &[usize]) -> Option<(i64, MultiIndex)> {
    let mut mask = 0u8;
    let mut inversions = 0u32;
    for &i in indices {
        debug_assert!(i < MAX_DIM);
        let bit = 1u8 << i;
        if mask & bit != 0 {
            return None;
        }
        inversions += (mask as u16 >> (i + 1)).count_ones();
        mask |= bit;
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, MultiIndex(mask)))
}

struct Tables {
    lists: Vec<Vec<Vec<MultiIndex>>>,
    positions: Vec<[u8; 256]>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut lists = Vec::with_capacity(MAX_DIM + 1);
        let mut positions = Vec::with_capacity(MAX_DIM + 1);
        for n in 0..=MAX_DIM {
            let mut by_degree = vec![Vec::new(); n + 1];
            for mask in 0..(1u16 << n) {
                let mi = MultiIndex(mask as u8);
                by_degree[mi.len()].push(mi);
            }
            let mut pos = [u8::MAX; 256];
            for list in by_degree.iter_mut() {
                list.sort();
                for (p, mi) in list.iter().enumerate() {
                    pos[mi.0 as usize] = p as u8;
                }
            }
            lists.push(by_degree);
            positions.push(pos);
        }
        Tables { lists, positions }
    })
}

/// All degree-`k` multi-indices in dimension `n`, lexicographically ordered.
pub fn basis(n: usize, k: usize) -> &'static [MultiIndex] {
    &tables().lists[n][k]
}

/// Position of `mi` within [`basis`]`(n, mi.len())`.
pub fn position(n: usize, mi: MultiIndex) -> usize {
    tables().positions[n][mi.0 as usize] as usize
}

/// Binomial coefficient for small arguments.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_basis() {
        let b: Vec<String> = basis(4, 2).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, ["e12", "e13", "e14", "e23", "e24", "e34"]);
        assert_eq!(basis(8, 4).len(), 70);
        for (p, mi) in basis(7, 3).iter().enumerate() {
            assert_eq!(position(7, *mi), p);
        }
    }

    #[test]
    fn signs() {
        let e1 = MultiIndex::single(0);
        let e2 = MultiIndex::single(1);
        assert_eq!(wedge_sign(e1, e2), 1);
        assert_eq!(wedge_sign(e2, e1), -1);
        assert_eq!(wedge_sign(e1, e1), 0);
        assert_eq!(
            sort_sign(&[2, 0, 1]),
            Some((1, MultiIndex::new(&[0, 1, 2]).unwrap()))
        );
        assert_eq!(sort_sign(&[1, 0, 2]).unwrap().0, -1);
        assert_eq!(sort_sign(&[1, 1]), None);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(MultiIndex::new(&[1, 1]).is_err());
        assert!(MultiIndex::new(&[2, 1]).is_err());
        assert!(MultiIndex::new(&[8]).is_err());
        assert!(MultiIndex::from_one_based(&[0, 1]).is_err());
        assert_eq!(
            MultiIndex::from_one_based(&[1, 2, 7]).unwrap().label(1),
            "e127"
        );
    }

    #[test]
    fn rank_and_complement() {
        let mi = MultiIndex::new(&[1, 3, 6]).unwrap();
        assert_eq!(mi.rank_of(3), 1);
        assert_eq!(mi.rank_of(0), 0);
        assert_eq!(mi.complement(7).to_vec(), vec![0, 2, 4, 5]);
        assert_eq!(mi.max(), Some(6));
        assert_eq!(binomial(8, 4), 70);
    }
}
