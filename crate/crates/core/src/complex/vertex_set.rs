use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest vertex count a [`VertexSet`] can address.
pub const MAX_VERTICES: usize = 64;

/// A subset of `{0, .., 63}` stored as a bit mask.
///
/// The total order is lexicographic on the sorted vertex lists, so sorting a
/// collection of faces gives the order used for boundary matrices and for
/// reporting counterexamples.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn range(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// `{lo, .., hi-1}`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo >= hi {
            return VertexSet::EMPTY;
        }
        VertexSet(Self::range(hi).0 & !Self::range(lo).0)
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_VERTICES {
            self.0 &= !(1u64 << v);
        }
    }

    pub fn with(self, v: usize) -> Self {
        let mut s = self;
        s.insert(v);
        s
    }

    pub fn without(self, v: usize) -> Self {
        let mut s = self;
        s.remove(v);
        s
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// One past the largest element, 0 for the empty set.
    pub fn span(self) -> usize {
        self.max().map_or(0, |m| m + 1)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// Every subset of exactly `k` elements, in increasing bit-mask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = VertexSet> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Both lists agree below the lowest differing vertex p. The set that
        // contains p is smaller unless the other set has nothing left after p.
        let p = diff.trailing_zeros();
        let above = if p == 63 { 0 } else { !((2u64 << p) - 1) };
        let (with_p, without_p) = if self.0 & (1u64 << p) != 0 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        if without_p & above != 0 {
            with_p
        } else {
            with_p.reverse()
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let list = Vec::<usize>::deserialize(deserializer)?;
        let mut set = VertexSet::EMPTY;
        for v in list {
            if v >= MAX_VERTICES {
                return Err(serde::de::Error::custom(format!(
                    "vertex {v} exceeds the supported maximum of {}",
                    MAX_VERTICES - 1
                )));
            }
            if set.contains(v) {
                return Err(serde::de::Error::custom(format!("vertex {v} repeated")));
            }
            set.insert(v);
        }
        Ok(set)
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Subsets of a universe enumerated in increasing mask order.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(VertexSet(cur))
    }
}

/// Renders a list of faces the way the JSON formats do, for messages.
pub fn faces_to_string(faces: &[VertexSet]) -> String {
    let parts: Vec<String> = faces.iter().map(|f| f.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
