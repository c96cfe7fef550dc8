//! Multi-indices, words over `{A, B}`, and the dictionary between them.
//!
//! An [`Index`] `(k_1, ..., k_m)` is stored with `k_1` attached to the
//! smallest summation variable and `k_m` to the largest:
//!
//! ```text
//! zeta(k_1, ..., k_m) = sum_{0 < n_1 < ... < n_m} 1 / (n_1^k_1 ... n_m^k_m)
//! ```
//!
//! so `(1, 3)` is the convergent value `sum_{n_1 < n_2} 1/(n_1 n_2^3)`.
//! Every textual form in this crate ("2,3") uses the same order.
//!
//! The word of `(c_1, ..., c_h)` is `A^{c_h-1} B A^{c_{h-1}-1} B ... A^{c_1-1} B`,
//! read left to right from the outermost integration variable.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest weight accepted by [`Index::new`].
pub const DEFAULT_MAX_WEIGHT: u32 = 64;

/// A composition of positive integers, the multi-index of an MZV or MPL.
///
/// Ordering is canonical: first by depth, then lexicographically by parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        Self::with_max_weight(parts, DEFAULT_MAX_WEIGHT)
    }

    pub fn with_max_weight(parts: Vec<u32>, max_weight: u32) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidIndex("an index needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(format!("parts must be positive: {parts:?}")));
        }
        let weight = parts.iter().try_fold(0u32, |acc, &p| acc.checked_add(p));
        match weight {
            Some(w) if w <= max_weight => Ok(Index(parts)),
            Some(w) => Err(Error::WeightLimit { weight: w, max: max_weight }),
            None => Err(Error::WeightLimit { weight: u32::MAX, max: max_weight }),
        }
    }

    /// Single-part index `(k)`.
    pub fn single(k: u32) -> Result<Self> {
        Self::new(vec![k])
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

    pub fn last(&self) -> u32 {
        *self.0.last().expect("index is nonempty")
    }

    /// True iff the last part exceeds 1, i.e. the defining series converges.
    pub fn is_admissible(&self) -> bool {
        self.last() > 1
    }

    /// The parts without the last one, or `None` for depth 1.
    pub fn drop_last(&self) -> Option<Index> {
        if self.0.len() == 1 {
            None
        } else {
            Some(Index(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// The index with its last part lowered by one; `None` when that part is 1.
    pub fn lower_last(&self) -> Option<Index> {
        let last = self.last();
        if last == 1 {
            return None;
        }
        let mut parts = self.0.clone();
        *parts.last_mut().unwrap() = last - 1;
        Some(Index(parts))
    }

    /// First part and the remaining index (`None` for depth 1).
    pub fn split_first(&self) -> (u32, Option<Index>) {
        let rest = (self.0.len() > 1).then(|| Index(self.0[1..].to_vec()));
        (self.0[0], rest)
    }

    /// Concatenation `(self, other)`, subject to the default weight limit.
    pub fn concat(&self, other: &Index) -> Result<Index> {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Index::new(parts)
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Index {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Index::new(parts)
    }
}

impl From<Index> for Vec<u32> {
    fn from(idx: Index) -> Self {
        idx.0
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Parses `"2,3"`; surrounding parentheses and spaces are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidIndex(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    A,
    B,
}

/// A word over `{A, B}`; `A` stands for `dt/t`, `B` for `dt/(1-t)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_index_encoding(&self) -> bool {
        self.0.last() == Some(&Letter::B)
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "A",
                Letter::B => "B",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'A' | 'a' => Ok(Letter::A),
                'B' | 'b' => Ok(Letter::B),
                _ => Err(Error::InvalidWord(format!("unexpected letter {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// `A^{c_h-1} B ... A^{c_1-1} B` for `idx = (c_1, ..., c_h)`.
pub fn word_of_index(idx: &Index) -> Word {
    let mut letters = Vec::with_capacity(idx.weight() as usize);
    for &c in idx.parts().iter().rev() {
        letters.extend(std::iter::repeat_n(Letter::A, c as usize - 1));
        letters.push(Letter::B);
    }
    Word(letters)
}

/// Inverse of [`word_of_index`].
pub fn index_of_word(w: &Word) -> Result<Index> {
    if !w.is_index_encoding() {
        return Err(Error::NotIndexEncoding(w.to_string()));
    }
    let mut parts = Vec::with_capacity(w.count(Letter::B));
    let mut run = 0u32;
    for &l in w.letters() {
        run += 1;
        if l == Letter::B {
            parts.push(run);
            run = 0;
        }
    }
    parts.reverse();
    Index::new(parts)
}

/// All compositions of `weight`, in canonical order.
pub fn indices_of_weight(weight: u32) -> Vec<Index> {
    let mut out = Vec::new();
    if weight == 0 {
        return out;
    }
    let mut current = Vec::new();
    compositions(weight, &mut current, &mut out);
    out.sort();
    out
}

fn compositions(rest: u32, current: &mut Vec<u32>, out: &mut Vec<Index>) {
    if rest == 0 {
        out.push(Index(current.clone()));
        return;
    }
    for p in 1..=rest {
        current.push(p);
        compositions(rest - p, current, out);
        current.pop();
    }
}

/// Admissible compositions of `weight` in canonical order; there are `2^{weight-2}`.
pub fn admissible_indices(weight: u32) -> Vec<Index> {
    indices_of_weight(weight).into_iter().filter(Index::is_admissible).collect()
}

/// Every index of weight `1..=max_weight`, canonical order within each weight.
pub fn indices_up_to(max_weight: u32) -> Vec<Index> {
    (1..=max_weight).flat_map(indices_of_weight).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(idx("2,3").weight(), 5);
        assert_eq!(idx("1").weight(), 1);
        assert_eq!(idx("1,1,2").weight(), 4);
    }

    #[test]
    fn admissibility() {
        assert!(idx("2,3").is_admissible());
        assert!(!idx("3,1").is_admissible());
        assert!(!idx("1").is_admissible());
    }

    #[test]
    fn word_examples() {
        assert_eq!(word_of_index(&idx("2,3")), word("AABAB"));
        assert_eq!(word_of_index(&idx("1")), word("B"));
        assert_eq!(word_of_index(&idx("1,3")), word("AABB"));
    }

    #[test]
    fn index_of_word_examples() {
        assert_eq!(index_of_word(&word("AABAB")).unwrap(), idx("2,3"));
        assert_eq!(index_of_word(&word("B")).unwrap(), idx("1"));
        assert_eq!(index_of_word(&word("ABAB")).unwrap(), idx("2,2"));
    }

    #[test]
    fn index_of_word_rejects_non_encoding() {
        assert!(matches!(index_of_word(&Word::empty()), Err(Error::NotIndexEncoding(_))));
        assert!(matches!(index_of_word(&word("ABA")), Err(Error::NotIndexEncoding(_))));
    }

    #[test]
    fn index_validation() {
        assert!(Index::new(vec![]).is_err());
        assert!(Index::new(vec![2, 0]).is_err());
        assert_eq!(
            Index::with_max_weight(vec![30, 30], 50),
            Err(Error::WeightLimit { weight: 60, max: 50 })
        );
        assert!(Index::new(vec![64]).is_ok());
        assert!(Index::new(vec![64, 1]).is_err());
        assert!("2,x".parse::<Index>().is_err());
        assert_eq!("(2, 3)".parse::<Index>().unwrap(), idx("2,3"));
    }

    #[test]
    fn canonical_order_is_depth_then_parts() {
        let cols = admissible_indices(4);
        let expected: Vec<Index> = ["4", "1,3", "2,2", "1,1,2"].iter().map(|s| idx(s)).collect();
        assert_eq!(cols, expected);
    }

    #[test]
    fn admissible_counts_are_powers_of_two() {
        for w in 2..=12 {
            assert_eq!(admissible_indices(w).len(), 1 << (w - 2));
            assert_eq!(indices_of_weight(w).len(), 1 << (w - 1));
        }
    }

    #[test]
    fn roundtrip_exhaustive_weight_10() {
        for i in indices_up_to(10) {
            let w = word_of_index(&i);
            assert_eq!(w.len() as u32, i.weight());
            assert_eq!(w.count(Letter::B), i.depth());
            assert_eq!(w.letters()[0] == Letter::A, i.is_admissible());
            assert_eq!(index_of_word(&w).unwrap(), i);
        }
    }

    #[test]
    fn serde_uses_plain_arrays() {
        let s = serde_json::to_string(&idx("1,3")).unwrap();
        assert_eq!(s, "[1,3]");
        let back: Index = serde_json::from_str(&s).unwrap();
        assert_eq!(back, idx("1,3"));
        assert!(serde_json::from_str::<Index>("[0]").is_err());
    }
}
