//! Vertex subsets and cuts as bit strings.
//!
//! Vertex `i` lives in word `i / 64` at bit position `63 - i % 64`, so the
//! derived lexicographic order on words is the numeric order of the bit string
//! read with vertex 0 as the most significant digit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 1]>;

#[inline]
fn word_and_mask(i: usize) -> (usize, u64) {
    (i / 64, 1u64 << (63 - (i % 64)))
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A subset of `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    words: Words,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: SmallVec::from_elem(0, words_for(n)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(v);
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} out of range for n = {n}"
                )));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Bit string with vertex 0 as the first character.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let n = bits.chars().count();
        let mut s = Self::empty(n);
        for (i, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => s.insert(i),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "invalid character {ch:?} in bit string"
                    )))
                }
            }
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        let (w, m) = word_and_mask(v);
        self.words[w] & m != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        let (w, m) = word_and_mask(v);
        self.words[w] |= m;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        let (w, m) = word_and_mask(v);
        self.words[w] &= !m;
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let lz = rest.leading_zeros() as usize;
                rest &= !(1u64 << (63 - lz));
                Some(wi * 64 + lz)
            })
        })
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_padding();
        out
    }

    fn clear_padding(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 << (64 - rem);
            }
        }
    }

    fn check_same_universe(&self, other: &Self) {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_same_universe(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_same_universe(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn to_bits(&self) -> String {
        (0..self.n)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet({})", self.to_bits())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bits())
    }
}

/// A bipartition `{X, V \ X}` in canonical form: vertex 0 is never in the
/// stored side, and both sides are non-empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut(VertexSet);

impl Cut {
    /// Canonicalizes a side of a bipartition; fails if either side is empty.
    pub fn canonicalize(side: VertexSet) -> Result<Self> {
        if side.n < 2 || side.is_empty() || side.is_full() {
            return Err(Error::InvalidCut(format!(
                "bit string {} leaves one side empty",
                side.to_bits()
            )));
        }
        if side.contains(0) {
            Ok(Cut(side.complement()))
        } else {
            Ok(Cut(side))
        }
    }

    pub fn from_bits(bits: &str) -> Result<Self> {
        Self::canonicalize(VertexSet::from_bits(bits)?)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        Self::canonicalize(VertexSet::from_vertices(n, vertices)?)
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    /// The side not containing vertex 0.
    pub fn side(&self) -> &VertexSet {
        &self.0
    }

    pub fn into_side(self) -> VertexSet {
        self.0
    }

    #[inline]
    pub fn separates(&self, u: usize, v: usize) -> bool {
        self.0.contains(u) != self.0.contains(v)
    }

    pub fn to_bits(&self) -> String {
        self.0.to_bits()
    }
}

/// Free-function form of [`Cut::canonicalize`].
pub fn canonicalize(bits: VertexSet) -> Result<Cut> {
    Cut::canonicalize(bits)
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cut({})", self.0.to_bits())
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_bits())
    }
}

impl FromStr for Cut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Cut::from_bits(s.trim())
    }
}

impl Serialize for Cut {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bits())
    }
}

impl<'de> Deserialize<'de> for Cut {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A cut together with its weight in the graph it was evaluated against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedCut {
    #[serde(rename = "cut_bits")]
    pub cut: Cut,
    pub weight: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form_is_kept() {
        assert_eq!(Cut::from_bits("0110").unwrap().to_bits(), "0110");
    }

    #[test]
    fn complement_is_canonicalized() {
        assert_eq!(Cut::from_bits("1001").unwrap().to_bits(), "0110");
    }

    #[test]
    fn trivial_bipartitions_are_rejected() {
        assert!(matches!(Cut::from_bits("1111"), Err(Error::InvalidCut(_))));
        assert!(matches!(Cut::from_bits("0000"), Err(Error::InvalidCut(_))));
        assert!(Cut::from_bits("1").is_err());
    }

    #[test]
    fn order_is_numeric_on_bit_string() {
        let mut cuts: Vec<Cut> = ["011", "001", "010"]
            .iter()
            .map(|b| Cut::from_bits(b).unwrap())
            .collect();
        cuts.sort();
        let bits: Vec<String> = cuts.iter().map(Cut::to_bits).collect();
        assert_eq!(bits, ["001", "010", "011"]);
    }

    #[test]
    fn multi_word_sets() {
        let n = 130;
        let s = VertexSet::from_vertices(n, [1, 64, 65, 129]).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 64, 65, 129]);
        let c = s.complement();
        assert_eq!(c.len(), n - 4);
        assert!(c.contains(0) && !c.contains(129));
        let cut = Cut::canonicalize(c).unwrap();
        assert_eq!(cut.side(), &s);
    }

    #[test]
    fn multi_word_order_matches_string_order() {
        let n = 70;
        let a = VertexSet::from_vertices(n, [66]).unwrap();
        let b = VertexSet::from_vertices(n, [3]).unwrap();
        assert_eq!(a.cmp(&b), a.to_bits().cmp(&b.to_bits()));
    }

    fn vertex_set(n: usize) -> impl Strategy<Value = VertexSet> {
        proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            VertexSet::from_vertices(n, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent_and_complement_invariant(
            s in (2usize..140).prop_flat_map(vertex_set)
        ) {
            prop_assume!(!s.is_empty() && !s.is_full());
            let c = Cut::canonicalize(s.clone()).unwrap();
            prop_assert!(!c.side().contains(0));
            prop_assert_eq!(&Cut::canonicalize(c.side().clone()).unwrap(), &c);
            prop_assert_eq!(Cut::canonicalize(s.complement()).unwrap(), c.clone());
            prop_assert_eq!(Cut::from_bits(&c.to_bits()).unwrap(), c);
        }

        #[test]
        fn ord_agrees_with_string_order(
            (a, b) in (2usize..140).prop_flat_map(|n| (vertex_set(n), vertex_set(n)))
        ) {
            prop_assert_eq!(a.cmp(&b), a.to_bits().cmp(&b.to_bits()));
        }
    }
}
