use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Complex, VertexSet, MAX_VERTICES};
use crate::{Error, Result};

/// A `k`-uniform hypergraph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    arity: usize,
    edges: BTreeSet<VertexSet>,
}

/// Optimum of an exact subset search together with one optimal witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub size: usize,
    pub witness: VertexSet,
}

impl Hypergraph {
    pub fn new(
        n: usize,
        arity: usize,
        edges: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::input(format!(
                "vertex count {n} exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        if arity < 2 {
            return Err(Error::input(format!("arity must be at least 2, got {arity}")));
        }
        let ground = VertexSet::range(n);
        let mut set = BTreeSet::new();
        for e in edges {
            if e.len() != arity {
                return Err(Error::input(format!(
                    "edge {e} has {} vertices, expected {arity}",
                    e.len()
                )));
            }
            if !e.is_subset(ground) {
                return Err(Error::input(format!("edge {e} leaves 0..{n}")));
            }
            set.insert(e);
        }
        Ok(Hypergraph {
            n,
            arity,
            edges: set,
        })
    }

    /// Every `arity`-subset of `0..n` satisfying `keep`.
    pub fn from_predicate(
        n: usize,
        arity: usize,
        mut keep: impl FnMut(VertexSet) -> bool,
    ) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::input(format!("vertex count {n} too large")));
        }
        let edges: Vec<_> = VertexSet::range(n)
            .subsets_of_size(arity)
            .filter(|e| keep(*e))
            .collect();
        Self::new(n, arity, edges)
    }

    pub fn complete(n: usize, arity: usize) -> Result<Self> {
        Self::from_predicate(n, arity, |_| true)
    }

    /// The `arity`-faces of a complex, i.e. its `(arity - 1)`-dimensional
    /// faces viewed as hyperedges.
    pub fn from_complex(k: &Complex, arity: usize) -> Result<Self> {
        Self::new(k.n(), arity, k.faces_of_size(arity))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn edges(&self) -> &BTreeSet<VertexSet> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edge(&self, s: VertexSet) -> bool {
        self.edges.contains(&s)
    }

    /// Non-edges among the `arity`-subsets.
    pub fn non_edges(&self) -> Vec<VertexSet> {
        VertexSet::range(self.n)
            .subsets_of_size(self.arity)
            .filter(|s| !self.is_edge(*s))
            .collect()
    }

    /// Every `arity`-subset of `w` is an edge. Sets smaller than the arity
    /// qualify vacuously.
    pub fn is_clique(&self, w: VertexSet) -> bool {
        w.subsets_of_size(self.arity).all(|s| self.is_edge(s))
    }

    /// `w` contains no edge.
    pub fn is_independent(&self, w: VertexSet) -> bool {
        w.subsets_of_size(self.arity).all(|s| !self.is_edge(s))
    }

    /// Largest clique, by branch and bound over vertices in increasing order.
    pub fn max_clique(&self) -> SearchResult {
        self.search(true)
    }

    pub fn max_clique_size(&self) -> usize {
        self.max_clique().size
    }

    /// Largest independent set.
    pub fn max_independent(&self) -> SearchResult {
        self.search(false)
    }

    pub fn max_independent_size(&self) -> usize {
        self.max_independent().size
    }

    /// The least `p` such that every `p`-subset of vertices contains an edge.
    pub fn p_condition(&self) -> Result<usize> {
        if self.edges.is_empty() {
            return Err(Error::Unattainable(
                "an edgeless hypergraph satisfies no (p, q)-condition".into(),
            ));
        }
        Ok(self.max_independent_size() + 1)
    }

    /// The complex of all cliques (vertex sets whose every `arity`-subset is
    /// an edge).
    pub fn clique_complex(&self) -> Complex {
        let cliques = VertexSet::range(self.n)
            .subsets()
            .filter(|w| self.is_clique(*w));
        Complex::from_faces(self.n, cliques).expect("cliques lie in 0..n")
    }

    fn search(&self, clique: bool) -> SearchResult {
        let mut best = SearchResult {
            size: 0,
            witness: VertexSet::EMPTY,
        };
        let mut state = Search {
            graph: self,
            clique,
            best: &mut best,
        };
        state.extend(VertexSet::EMPTY, 0);
        best
    }
}

struct Search<'a> {
    graph: &'a Hypergraph,
    clique: bool,
    best: &'a mut SearchResult,
}

impl Search<'_> {
    /// Whether `current ∪ {v}` keeps the defining property, given that
    /// `current` has it: only the new `arity`-subsets through `v` matter.
    fn admits(&self, current: VertexSet, v: usize) -> bool {
        let k = self.graph.arity;
        if current.len() + 1 < k {
            return true;
        }
        current
            .subsets_of_size(k - 1)
            .all(|s| self.graph.is_edge(s.with(v)) == self.clique)
    }

    fn extend(&mut self, current: VertexSet, next: usize) {
        if current.len() > self.best.size {
            self.best.size = current.len();
            self.best.witness = current;
        }
        let n = self.graph.n;
        for v in next..n {
            // bound: even taking every remaining vertex cannot beat the best
            if current.len() + (n - v) <= self.best.size {
                return;
            }
            if self.admits(current, v) {
                self.extend(current.with(v), v + 1);
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    n: usize,
    arity: usize,
    edges: Vec<VertexSet>,
}

impl Serialize for Hypergraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        HypergraphRepr {
            n: self.n,
            arity: self.arity,
            edges: self.edges.iter().copied().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = HypergraphRepr::deserialize(deserializer)?;
        Hypergraph::new(repr.n, repr.arity, repr.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_max(h: &Hypergraph, pred: impl Fn(VertexSet) -> bool) -> usize {
        VertexSet::range(h.n())
            .subsets()
            .filter(|w| pred(*w))
            .map(|w| w.len())
            .max()
            .unwrap()
    }

    #[test]
    fn trivial_examples() {
        let edgeless = Hypergraph::new(4, 2, []).unwrap();
        assert_eq!(edgeless.max_clique_size(), 1);
        assert_eq!(edgeless.max_independent_size(), 4);
        assert!(matches!(edgeless.p_condition(), Err(Error::Unattainable(_))));
        let k6 = Hypergraph::complete(6, 2).unwrap();
        assert_eq!(k6.max_clique_size(), 6);
        assert_eq!(k6.p_condition().unwrap(), 2);
    }

    #[test]
    fn arity_and_edge_validation() {
        assert!(Hypergraph::new(4, 1, []).is_err());
        let e: VertexSet = [0, 1, 2].iter().collect();
        assert!(Hypergraph::new(4, 2, [e]).is_err());
        let e: VertexSet = [0, 5].iter().collect();
        assert!(Hypergraph::new(4, 2, [e]).is_err());
    }

    #[test]
    fn json_shape() {
        let h = Hypergraph::from_predicate(4, 2, |e| e.min() == Some(0)).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"n":4,"arity":2,"edges":[[0,1],[0,2],[0,3]]}"#);
        assert_eq!(serde_json::from_str::<Hypergraph>(&s).unwrap(), h);
    }

    proptest! {
        #[test]
        fn search_matches_brute_force(bits in proptest::collection::vec(any::<bool>(), 56), n in 3usize..9, k in 2usize..4) {
            let all: Vec<_> = VertexSet::range(n).subsets_of_size(k).collect();
            let edges = all.iter().zip(bits.iter().cycle()).filter(|(_, b)| **b).map(|(e, _)| *e);
            let h = Hypergraph::new(n, k, edges).unwrap();
            let c = h.max_clique();
            prop_assert!(h.is_clique(c.witness));
            prop_assert_eq!(c.witness.len(), c.size);
            prop_assert_eq!(c.size, brute_max(&h, |w| h.is_clique(w)));
            let i = h.max_independent();
            prop_assert!(h.is_independent(i.witness));
            prop_assert_eq!(i.size, brute_max(&h, |w| h.is_independent(w)));
            if h.edge_count() > 0 {
                prop_assert!(c.size >= k);
                let p = h.p_condition().unwrap();
                // every p-subset contains an edge, some (p-1)-subset does not
                prop_assert!(VertexSet::range(n).subsets_of_size(p).all(|w| !h.is_independent(w)));
                prop_assert!(VertexSet::range(n).subsets_of_size(p - 1).any(|w| h.is_independent(w)));
            }
        }
    }
}
