//! Finite abstract simplicial complexes and uniform hypergraphs.
//!
//! Complexes are stored by their maximal faces over the vertex labels
//! `0..n`. The void complex (no faces at all) and the complex whose only
//! face is the empty set are different values: the former has no maximal
//! faces, the latter has the single maximal face `{}`.

mod hypergraph;
mod vertex_set;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use hypergraph::{Hypergraph, SearchResult};
pub use vertex_set::{faces_to_string, Iter, Subsets, VertexSet, MAX_VERTICES};

use crate::{Error, Result};

/// A simplicial complex given by its maximal faces.
///
/// `ground` is the vertex set the complex lives on. It is `0..n` for freshly
/// built complexes and shrinks to `W` for an induced subcomplex `K[W]`, which
/// keeps the original labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    n: usize,
    ground: VertexSet,
    maximal: Vec<VertexSet>,
}

impl std::fmt::Debug for Complex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Complex(n={}, maximal_faces={})",
            self.n,
            faces_to_string(&self.maximal)
        )
    }
}

/// Face counts by dimension. `counts[j]` is the number of faces with `j + 1`
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub counts: Vec<u64>,
    pub dim: isize,
}

impl FVector {
    /// `f_j`, zero outside `0..=dim`.
    pub fn get(&self, j: usize) -> u64 {
        self.counts.get(j).copied().unwrap_or(0)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::input(format!(
            "vertex count {n} exceeds the supported maximum of {MAX_VERTICES}"
        )));
    }
    Ok(())
}

/// Keeps only the inclusion-maximal sets, sorted lexicographically.
fn maximal_only(mut faces: Vec<VertexSet>) -> Vec<VertexSet> {
    faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
    faces.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

impl Complex {
    /// Builds a complex on `0..n` from any generating family of faces; sets
    /// contained in another are discarded.
    pub fn from_faces(n: usize, faces: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        check_n(n)?;
        let ground = VertexSet::range(n);
        let faces: Vec<VertexSet> = faces.into_iter().collect();
        if let Some(bad) = faces.iter().find(|f| !f.is_subset(ground)) {
            return Err(Error::input(format!(
                "face {bad} has a vertex outside 0..{n}"
            )));
        }
        Ok(Complex {
            n,
            ground,
            maximal: maximal_only(faces),
        })
    }

    /// Convenience constructor from vertex lists.
    pub fn from_lists(n: usize, faces: &[&[usize]]) -> Result<Self> {
        check_n(n)?;
        let mut sets = Vec::with_capacity(faces.len());
        for f in faces {
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::input(format!("vertex {v} outside 0..{n}")));
            }
            sets.push(f.iter().collect());
        }
        Self::from_faces(n, sets)
    }

    /// The complex with no faces at all.
    pub fn void(n: usize) -> Result<Self> {
        Self::from_faces(n, [])
    }

    /// The complex whose only face is the empty set.
    pub fn empty_face_only(n: usize) -> Result<Self> {
        Self::from_faces(n, [VertexSet::EMPTY])
    }

    /// The full simplex on `0..n`.
    pub fn simplex(n: usize) -> Result<Self> {
        check_n(n)?;
        Self::from_faces(n, [VertexSet::range(n)])
    }

    /// All proper faces of the simplex on `0..k`: a sphere of dimension
    /// `k - 2`.
    pub fn simplex_boundary(k: usize) -> Result<Self> {
        check_n(k)?;
        let all = VertexSet::range(k);
        Self::from_faces(k, all.iter().map(|v| all.without(v)))
    }

    /// Every subset of `0..n` with at most `k + 1` vertices.
    pub fn skeleton_of_simplex(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        let size = (k + 1).min(n);
        Self::from_faces(n, VertexSet::range(n).subsets_of_size(size))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    pub fn maximal_faces(&self) -> &[VertexSet] {
        &self.maximal
    }

    pub fn is_void(&self) -> bool {
        self.maximal.is_empty()
    }

    /// Size of the largest face minus one; `-1` for both the void complex and
    /// `{{}}`.
    pub fn dim(&self) -> isize {
        self.maximal.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    fn check_subset(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset(VertexSet::range(self.n)) {
            return Err(Error::input(format!(
                "vertex set {s} is not contained in 0..{}",
                self.n
            )));
        }
        Ok(())
    }

    /// Whether `s` is a face.
    pub fn face_query(&self, s: VertexSet) -> Result<bool> {
        self.check_subset(s)?;
        Ok(self.contains_face(s))
    }

    /// Unchecked face test.
    pub fn contains_face(&self, s: VertexSet) -> bool {
        self.maximal.iter().any(|f| s.is_subset(*f))
    }

    /// All faces with exactly `k` vertices, lexicographically sorted.
    pub fn faces_of_size(&self, k: usize) -> Vec<VertexSet> {
        let mut seen = HashSet::new();
        for f in &self.maximal {
            if f.len() >= k {
                seen.extend(f.subsets_of_size(k));
            }
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// All faces of dimension `j` (with `j + 1` vertices).
    pub fn faces_of_dim(&self, j: usize) -> Vec<VertexSet> {
        self.faces_of_size(j + 1)
    }

    /// Every face including the empty one, grouped by size.
    pub fn faces_by_size(&self) -> Vec<Vec<VertexSet>> {
        let top = (self.dim() + 1).max(0) as usize;
        let mut buckets: Vec<HashSet<VertexSet>> = vec![HashSet::new(); top + 1];
        for f in &self.maximal {
            for s in f.subsets() {
                buckets[s.len()].insert(s);
            }
        }
        buckets
            .into_iter()
            .map(|b| {
                let mut v: Vec<_> = b.into_iter().collect();
                v.sort();
                v
            })
            .collect()
    }

    /// All faces, including the empty face when the complex is not void.
    pub fn all_faces(&self) -> BTreeSet<VertexSet> {
        self.faces_by_size().into_iter().flatten().collect()
    }

    pub fn f_vector(&self) -> FVector {
        let by_size = self.faces_by_size();
        let counts = by_size
            .iter()
            .skip(1)
            .map(|b| b.len() as u64)
            .collect::<Vec<_>>();
        FVector {
            dim: self.dim(),
            counts,
        }
    }

    /// The induced subcomplex `K[W]` on the original labels.
    pub fn induced(&self, w: VertexSet) -> Result<Complex> {
        self.check_subset(w)?;
        Ok(self.induced_unchecked(w))
    }

    pub(crate) fn induced_unchecked(&self, w: VertexSet) -> Complex {
        let ground = self.ground.intersection(w);
        let faces = self.maximal.iter().map(|f| f.intersection(ground)).collect();
        Complex {
            n: self.n,
            ground,
            maximal: maximal_only(faces),
        }
    }

    /// The complex whose faces are the common faces of all inputs.
    pub fn intersect(ks: &[Complex]) -> Result<Complex> {
        let first = ks
            .first()
            .ok_or_else(|| Error::input("intersect needs at least one complex"))?;
        if let Some(k) = ks.iter().find(|k| k.n != first.n) {
            return Err(Error::input(format!(
                "vertex counts differ: {} vs {}",
                first.n, k.n
            )));
        }
        let mut acc = first.clone();
        for k in &ks[1..] {
            let mut faces = Vec::with_capacity(acc.maximal.len() * k.maximal.len());
            for a in &acc.maximal {
                for b in &k.maximal {
                    faces.push(a.intersection(*b));
                }
            }
            acc = Complex {
                n: acc.n,
                ground: acc.ground.intersection(k.ground),
                maximal: maximal_only(faces),
            };
        }
        Ok(acc)
    }

    /// Adds `face` (and its subsets) to the complex.
    pub fn with_face(&self, face: VertexSet) -> Result<Complex> {
        self.check_subset(face)?;
        let mut faces = self.maximal.clone();
        faces.push(face);
        Ok(Complex {
            n: self.n,
            ground: self.ground.union(face),
            maximal: maximal_only(faces),
        })
    }

    /// Whether both complexes have the same faces, ignoring the ground sets.
    pub fn same_faces(&self, other: &Complex) -> bool {
        self.maximal == other.maximal
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    n: usize,
    maximal_faces: Vec<VertexSet>,
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComplexRepr {
            n: self.n,
            maximal_faces: self.maximal.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ComplexRepr::deserialize(deserializer)?;
        Complex::from_faces(repr.n, repr.maximal_faces).map_err(serde::de::Error::custom)
    }
}
