//! Extremal complexes and hypergraphs, each paired with the statistics it is
//! predicted to have.
//!
//! Labels are `0..n`. Blocks and groups are runs of consecutive labels, the
//! lowest labels first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BalancedPartition};
use crate::complex::{Complex, Hypergraph, VertexSet, MAX_VERTICES};
use crate::{Error, Result};

/// The partition `V_0, V_1, .., V_t` of `0..n` behind `K_d(n, t, r)`.
///
/// `|V_0| = r - (t-1)d`; the remaining `n - r + (t-1)d` vertices are split
/// into `t` balanced blocks, larger blocks first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub n: usize,
    pub blocks: Vec<VertexSet>,
}

impl BlockPartition {
    pub fn new(n: usize, t: usize, r: usize, d: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::domain("t must be positive"));
        }
        if n > MAX_VERTICES {
            return Err(Error::input(format!("vertex count {n} too large")));
        }
        let shift = (t - 1) * d;
        if r < shift {
            return Err(Error::domain(format!(
                "need r >= (t-1)d, got r={r}, t={t}, d={d}"
            )));
        }
        let v0 = r - shift;
        if v0 > n {
            return Err(Error::domain(format!(
                "block V_0 of size {v0} does not fit in {n} vertices"
            )));
        }
        let parts = BalancedPartition::new((n - v0) as u64, t as u64)?;
        Ok(Self::from_sizes(n, v0, parts.parts.iter().map(|&p| p as usize)))
    }

    /// Consecutive blocks of the given sizes after a `V_0` of size `v0`.
    fn from_sizes(n: usize, v0: usize, sizes: impl IntoIterator<Item = usize>) -> Self {
        let mut blocks = vec![VertexSet::interval(0, v0)];
        let mut start = v0;
        for size in sizes {
            blocks.push(VertexSet::interval(start, start + size));
            start += size;
        }
        debug_assert_eq!(start, n);
        BlockPartition { n, blocks }
    }

    /// Number of nonzero blocks `t`.
    pub fn t(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn v0(&self) -> VertexSet {
        self.blocks[0]
    }

    /// Block `V_i`, `1 <= i <= t`.
    pub fn block(&self, i: usize) -> Result<VertexSet> {
        if i == 0 || i > self.t() {
            return Err(Error::input(format!(
                "block index {i} outside 1..={}",
                self.t()
            )));
        }
        Ok(self.blocks[i])
    }
}

/// Statistics a construction is expected to have. Absent fields make no
/// prediction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicted {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<isize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_clique: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_independent: Option<usize>,
    /// Upper bound on the `p` of the `(p, d+1)`-condition, as `"p/q"`.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_rational"
    )]
    pub p_condition_at_most: Option<BigRational>,
}

mod opt_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::serde_util::{format_rational, parse_rational};

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_str(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn small(v: BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Internal(format!("{v} does not fit in 64 bits")))
}

/// Every set containing `fixed` and exactly `min(d, |B|)` vertices of each
/// block `B`.
fn transversal_faces(fixed: VertexSet, blocks: &[VertexSet], d: usize) -> Vec<VertexSet> {
    let mut faces = vec![fixed];
    for &b in blocks {
        let k = d.min(b.len());
        let choices: Vec<VertexSet> = b.subsets_of_size(k).collect();
        faces = faces
            .iter()
            .flat_map(|f| choices.iter().map(move |c| f.union(*c)))
            .collect();
    }
    faces
}

/// `K_i`: a set is a face iff it meets `V_i` in at most `d` vertices.
pub fn factor_complex(partition: &BlockPartition, i: usize, d: usize) -> Result<Complex> {
    let block = partition.block(i)?;
    let rest = VertexSet::range(partition.n).difference(block);
    Complex::from_faces(partition.n, transversal_faces(rest, &[block], d))
}

fn check_extremal_domain(n: usize, t: usize, r: usize, d: usize) -> Result<()> {
    if d == 0 || t == 0 {
        return Err(Error::domain("d and t must be positive"));
    }
    if n <= d + r {
        return Err(Error::domain(format!("need n > d + r, got n={n}, d={d}, r={r}")));
    }
    Ok(())
}

/// `K_d(n, t, r)`: a set is a face iff it meets every `V_i`, `i >= 1`, in at
/// most `d` vertices.
pub fn k_extremal(n: usize, t: usize, r: usize, d: usize) -> Result<Complex> {
    check_extremal_domain(n, t, r, d)?;
    let partition = BlockPartition::new(n, t, r, d)?;
    Complex::from_faces(n, transversal_faces(partition.v0(), &partition.blocks[1..], d))
}

/// The `t` factor complexes whose intersection is `K_d(n, t, r)`.
pub fn k_extremal_factors(n: usize, t: usize, r: usize, d: usize) -> Result<Vec<Complex>> {
    check_extremal_domain(n, t, r, d)?;
    let partition = BlockPartition::new(n, t, r, d)?;
    (1..=t).map(|i| factor_complex(&partition, i, d)).collect()
}

pub fn k_extremal_predicted(n: usize, t: usize, r: usize, d: usize) -> Result<Predicted> {
    check_extremal_domain(n, t, r, d)?;
    let g = bounds::g_d(n as u64, t as u64, r as u64, d as u64)?;
    Ok(Predicted {
        f_d: Some(small(g)?),
        dim: Some((d + r) as isize - 1),
        ..Predicted::default()
    })
}

/// Whether the two largest elements of `a` differ by at most `r`.
fn top_gap_within(a: VertexSet, r: usize) -> bool {
    let v = a.to_vec();
    match v.as_slice() {
        [.., x, y] => y - x <= r,
        _ => true,
    }
}

/// The `(d+1)`-uniform hypergraph whose edges are the sets with top gap
/// `a_{d+1} - a_d <= r`.
pub fn h_eckhoff(n: usize, d: usize, r: usize) -> Result<Hypergraph> {
    if d == 0 {
        return Err(Error::domain("d must be positive"));
    }
    if n < d + r {
        return Err(Error::domain(format!("need n >= d + r, got n={n}, d={d}, r={r}")));
    }
    Hypergraph::from_predicate(n, d + 1, |a| top_gap_within(a, r))
}

pub fn h_eckhoff_predicted(n: usize, d: usize, r: usize) -> Result<Predicted> {
    let (n64, d64, r64) = (n as u64, d as u64, r as u64);
    let edges = bounds::binomial(n64, d64 + 1) - bounds::binomial(n64 - r64, d64 + 1);
    let independent = bounds::eckhoff_independence(n64, d64, r64) as usize;
    Ok(Predicted {
        edge_count: Some(small(edges)?),
        max_clique: Some(d + r),
        max_independent: Some(independent),
        p_condition_at_most: Some(BigRational::from_integer((independent + 1).into())),
        // the clique complex: cliques have at most d + r vertices
        dim: Some((d + r) as isize - 1),
        ..Predicted::default()
    })
}

/// Replaces the largest element `a` of `set` by `a - r`.
pub fn shift_map(set: VertexSet, r: usize) -> Option<VertexSet> {
    let top = set.max()?;
    let rest = set.without(top);
    let image = top.checked_sub(r)?;
    (!rest.contains(image)).then(|| rest.with(image))
}

/// Replaces the largest element `b` of `set` by `b + r`.
fn unshift_map(set: VertexSet, r: usize) -> Option<VertexSet> {
    let top = set.max()?;
    Some(set.without(top).with(top + r))
}

/// Checks that [`shift_map`] is a bijection from the non-edges of
/// `h_eckhoff(n, d, r)` onto the `(d+1)`-subsets of `0..n-r`.
pub fn bijection_check(n: usize, d: usize, r: usize) -> Result<bool> {
    let h = h_eckhoff(n, d, r)?;
    let target = VertexSet::range(n - r);
    let non_edges = h.non_edges();
    let mut images = std::collections::BTreeSet::new();
    for &a in &non_edges {
        let Some(b) = shift_map(a, r) else {
            return Ok(false);
        };
        if b.len() != d + 1 || !b.is_subset(target) || unshift_map(b, r) != Some(a) {
            return Ok(false);
        }
        images.insert(b);
    }
    // injective and onto: every target set is hit, and its preimage is a non-edge
    let onto = target
        .subsets_of_size(d + 1)
        .all(|b| images.contains(&b) && unshift_map(b, r).is_some_and(|a| !h.is_edge(a)));
    Ok(images.len() == non_edges.len() && onto)
}

/// Group sizes and ranks for the product construction.
///
/// Both `n_i` and `r_i` are balanced and ascending, summing to `n` and
/// `r - (t-1)d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFamilyPlan {
    pub n: usize,
    pub t: usize,
    pub d: usize,
    pub r: usize,
    pub sizes: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Consecutive label runs of sizes `n_1, .., n_t`.
    pub groups: Vec<VertexSet>,
    /// Some `r_i` is zero, which takes the Eckhoff construction below
    /// positive `r`.
    pub has_zero_rank: bool,
}

/// `total` split into `t` parts, smaller parts first.
fn ascending_balanced(total: usize, t: usize) -> Vec<usize> {
    let (q, s) = (total / t, total % t);
    (0..t).map(|i| if i < t - s { q } else { q + 1 }).collect()
}

impl ProductFamilyPlan {
    pub fn new(n: usize, t: usize, d: usize, r: usize) -> Result<Self> {
        if t == 0 || d == 0 {
            return Err(Error::domain("t and d must be positive"));
        }
        if n > MAX_VERTICES {
            return Err(Error::input(format!("vertex count {n} too large")));
        }
        let shift = (t - 1) * d;
        if r <= shift {
            return Err(Error::domain(format!("need r > (t-1)d, got r={r}, t={t}, d={d}")));
        }
        if n < d + r {
            return Err(Error::domain(format!("need n >= d + r, got n={n}, d={d}, r={r}")));
        }
        let sizes = ascending_balanced(n, t);
        let ranks = ascending_balanced(r - shift, t);
        let gaps: Vec<usize> = sizes.iter().zip(&ranks).map(|(a, b)| a - b.min(a)).collect();
        let (lo, hi) = (gaps.iter().min().unwrap(), gaps.iter().max().unwrap());
        if hi - lo > 1 {
            return Err(Error::Construction(format!(
                "unbalanced n_i - r_i: sizes {sizes:?}, ranks {ranks:?}"
            )));
        }
        if let Some(i) = (0..t).find(|&i| sizes[i] < d + ranks[i]) {
            return Err(Error::Construction(format!(
                "group {} has {} vertices, fewer than d + r_i = {}",
                i + 1,
                sizes[i],
                d + ranks[i]
            )));
        }
        let mut groups = Vec::with_capacity(t);
        let mut start = 0;
        for &s in &sizes {
            groups.push(VertexSet::interval(start, start + s));
            start += s;
        }
        let has_zero_rank = ranks.contains(&0);
        Ok(ProductFamilyPlan {
            n,
            t,
            d,
            r,
            sizes,
            ranks,
            groups,
            has_zero_rank,
        })
    }

    /// Index of the group holding `v`.
    pub fn group_of(&self, v: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(v))
    }

    pub fn predicted(&self) -> Result<Predicted> {
        let g = bounds::g_d_permissive(self.n as u64, self.t as u64, self.r as u64, self.d as u64)?;
        let independent = (0..self.t)
            .map(|i| {
                bounds::eckhoff_independence(self.sizes[i] as u64, self.d as u64, self.ranks[i] as u64)
                    as usize
            })
            .max()
            .unwrap_or(self.d)
            .max(self.d);
        Ok(Predicted {
            edge_count: Some(small(g.value)?),
            max_clique: Some(self.d + self.r),
            max_independent: Some(independent),
            p_condition_at_most: Some(
                bounds::product_p_bound(self.n as u64, self.t as u64, self.d as u64, self.r as u64)?
                    + BigRational::from_integer(1.into()),
            ),
            ..Predicted::default()
        })
    }
}

/// A `(d+1)`-set is a non-edge iff it lies in one group and its top gap
/// exceeds that group's rank.
pub fn product_family_hypergraph(plan: &ProductFamilyPlan) -> Result<Hypergraph> {
    Hypergraph::from_predicate(plan.n, plan.d + 1, |a| {
        match plan.groups.iter().position(|g| a.is_subset(*g)) {
            Some(i) => top_gap_within(a, plan.ranks[i]),
            None => true,
        }
    })
}

/// Partial transversals of `m` balanced blocks of `0..n`, the equality case
/// for intersections of `m` 1-Leray complexes. Returns the complex and its
/// `m` factors.
pub fn turan_1leray_complex(n: usize, m: usize) -> Result<(Complex, Vec<Complex>)> {
    if m == 0 || m > n {
        return Err(Error::domain(format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::input(format!("vertex count {n} too large")));
    }
    let sizes = BalancedPartition::new(n as u64, m as u64)?;
    let partition = BlockPartition::from_sizes(n, 0, sizes.parts.iter().map(|&p| p as usize));
    let k = Complex::from_faces(n, transversal_faces(VertexSet::EMPTY, &partition.blocks[1..], 1))?;
    let factors = (1..=m)
        .map(|i| factor_complex(&partition, i, 1))
        .collect::<Result<_>>()?;
    Ok((k, factors))
}

pub fn turan_1leray_predicted(n: usize, m: usize) -> Result<Predicted> {
    Ok(Predicted {
        f_d: Some(small(bounds::one_leray_edge_bound(n as u64, m as u64)?)?),
        dim: Some(m as isize - 1),
        ..Predicted::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::homology::is_d_leray;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    /// Faces of `K_d(n,t,r)` straight from the defining rule.
    fn rule_faces(p: &BlockPartition, d: usize) -> Vec<VertexSet> {
        VertexSet::range(p.n)
            .subsets()
            .filter(|u| p.blocks[1..].iter().all(|b| u.intersection(*b).len() <= d))
            .collect()
    }

    #[test]
    fn block_partition_layout() {
        let p = BlockPartition::new(5, 2, 1, 1).unwrap();
        assert_eq!(p.blocks, vec![set(&[]), set(&[0, 1, 2]), set(&[3, 4])]);
        let p = BlockPartition::new(9, 2, 3, 1).unwrap();
        assert_eq!(p.v0(), set(&[0, 1]));
        assert_eq!(p.blocks[1..], [set(&[2, 3, 4, 5]), set(&[6, 7, 8])]);
        assert!(BlockPartition::new(5, 3, 1, 1).is_err());
        assert!(p.block(0).is_err() && p.block(3).is_err());
    }

    #[test]
    fn factor_complex_example() {
        let p = BlockPartition::new(5, 2, 1, 1).unwrap();
        let k1 = factor_complex(&p, 1, 1).unwrap();
        assert_eq!(
            k1.maximal_faces(),
            &[set(&[0, 3, 4]), set(&[1, 3, 4]), set(&[2, 3, 4])]
        );
        // a block no larger than d gives the full simplex
        let k2 = factor_complex(&p, 2, 2).unwrap();
        assert_eq!(k2, Complex::simplex(5).unwrap());
    }

    #[test]
    fn k1_5_2_1() {
        let k = k_extremal(5, 2, 1, 1).unwrap();
        assert_eq!(k.f_vector().get(1), 6);
        assert_eq!(k.dim(), 1);
        assert!(!k.face_query(set(&[0, 1])).unwrap());
        assert!(k.face_query(set(&[0, 3])).unwrap());
        let v1 = set(&[0, 1, 2]);
        let induced = k.induced(v1).unwrap();
        assert_eq!(induced.maximal_faces(), &[set(&[0]), set(&[1]), set(&[2])]);
        let factors = k_extremal_factors(5, 2, 1, 1).unwrap();
        assert!(Complex::intersect(&factors).unwrap().same_faces(&k));
        // complete bipartite K_{3,2}
        assert_eq!(k.faces_of_size(2).len(), 6);
    }

    #[test]
    fn single_block_is_cone_over_skeleton() {
        let k = k_extremal(6, 1, 2, 1).unwrap();
        let p = BlockPartition::new(6, 1, 2, 1).unwrap();
        assert_eq!(p.v0(), set(&[0, 1]));
        assert_eq!(
            k.maximal_faces(),
            &[set(&[0, 1, 2]), set(&[0, 1, 3]), set(&[0, 1, 4]), set(&[0, 1, 5])]
        );
    }

    #[test]
    fn extremal_domain_errors() {
        assert!(k_extremal(3, 1, 2, 1).is_err());
        assert!(k_extremal(6, 3, 1, 1).is_err());
        assert!(k_extremal(6, 0, 1, 1).is_err());
    }

    #[test]
    fn factors_are_d_leray() {
        let caps = Caps::default();
        for (n, t, r, d) in [(5, 2, 1, 1), (6, 2, 2, 2), (7, 3, 2, 1), (6, 1, 1, 2)] {
            for f in k_extremal_factors(n, t, r, d).unwrap() {
                assert!(is_d_leray(&f, d, &caps).unwrap().holds(), "{n} {t} {r} {d}");
            }
        }
    }

    #[test]
    fn extremal_statistics_exhaustive() {
        for d in 1..=3 {
            for t in 1..=3 {
                for n in 2..=9 {
                    for r in (t - 1) * d..n {
                        if n <= d + r {
                            continue;
                        }
                        let p = BlockPartition::new(n, t, r, d).unwrap();
                        let k = k_extremal(n, t, r, d).unwrap();
                        let faces: std::collections::BTreeSet<_> = rule_faces(&p, d).into_iter().collect();
                        assert_eq!(k.all_faces(), faces);
                        let pred = k_extremal_predicted(n, t, r, d).unwrap();
                        assert_eq!(Some(k.f_vector().get(d)), pred.f_d);
                        assert_eq!(Some(k.dim()), pred.dim);
                        let factors = k_extremal_factors(n, t, r, d).unwrap();
                        assert!(Complex::intersect(&factors).unwrap().same_faces(&k));
                    }
                }
            }
        }
    }

    #[test]
    fn eckhoff_example() {
        let h = h_eckhoff(5, 1, 2).unwrap();
        assert_eq!(h.edge_count(), 7);
        assert_eq!(h.non_edges(), vec![set(&[0, 3]), set(&[0, 4]), set(&[1, 4])]);
        let c = h.max_clique();
        assert_eq!(c.size, 3);
        assert_eq!(c.witness, set(&[0, 1, 2]));
        assert_eq!(h.max_independent_size(), 2);
        assert_eq!(h.p_condition().unwrap(), 3);
        assert_eq!(h_eckhoff(10, 1, 1).unwrap().max_independent_size(), 5);
        assert_eq!(h_eckhoff(6, 1, 2).unwrap().edge_count(), 9);
        assert_eq!(h_eckhoff(6, 2, 4).unwrap(), Hypergraph::complete(6, 3).unwrap());
    }

    #[test]
    fn eckhoff_large_example() {
        let h = h_eckhoff(8, 2, 3).unwrap();
        assert_eq!(h.edge_count(), 46);
        assert_eq!(h.max_clique_size(), 5);
        assert_eq!(h.max_independent_size(), 3);
    }

    #[test]
    fn shift_map_example() {
        assert_eq!(shift_map(set(&[0, 3]), 2), Some(set(&[0, 1])));
        assert_eq!(shift_map(set(&[0, 4]), 2), Some(set(&[0, 2])));
        assert_eq!(shift_map(set(&[1, 4]), 2), Some(set(&[1, 2])));
        assert!(bijection_check(5, 1, 2).unwrap());
        // with r = 0 every set is a non-edge and the map is the identity
        assert_eq!(h_eckhoff(5, 2, 0).unwrap().edge_count(), 0);
        assert_eq!(shift_map(set(&[1, 3, 4]), 0), Some(set(&[1, 3, 4])));
        assert!(bijection_check(5, 2, 0).unwrap());
    }

    #[test]
    fn eckhoff_clique_complex_dimension() {
        for (n, d, r) in [(5, 1, 2), (6, 2, 1), (7, 2, 3)] {
            let h = h_eckhoff(n, d, r).unwrap();
            assert_eq!(h.clique_complex().dim(), (d + r) as isize - 1);
        }
    }

    #[test]
    fn product_plan_example() {
        let plan = ProductFamilyPlan::new(6, 2, 1, 2).unwrap();
        assert_eq!(plan.sizes, vec![3, 3]);
        assert_eq!(plan.ranks, vec![0, 1]);
        assert!(plan.has_zero_rank);
        let h = product_family_hypergraph(&plan).unwrap();
        assert_eq!(h.non_edges(), vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2]), set(&[3, 5])]);
        assert_eq!(h.edge_count(), 11);
        assert_eq!(h.max_clique_size(), 3);
        let p = h.p_condition().unwrap();
        let pred = plan.predicted().unwrap();
        assert_eq!(pred.edge_count, Some(11));
        assert_eq!(
            pred.p_condition_at_most,
            Some(BigRational::from_integer(8.into()))
        );
        assert!(BigRational::from_integer(p.into()) <= pred.p_condition_at_most.unwrap());
        assert!(ProductFamilyPlan::new(6, 2, 1, 1).is_err());
    }

    #[test]
    fn product_plan_single_group_is_eckhoff() {
        let plan = ProductFamilyPlan::new(7, 1, 2, 3).unwrap();
        assert_eq!(product_family_hypergraph(&plan).unwrap(), h_eckhoff(7, 2, 3).unwrap());
    }

    #[test]
    fn turan_examples() {
        let (k, factors) = turan_1leray_complex(5, 2).unwrap();
        assert_eq!(k.f_vector().get(1), 6);
        assert_eq!(factors.len(), 2);
        assert!(Complex::intersect(&factors).unwrap().same_faces(&k));
        let (k, _) = turan_1leray_complex(7, 3).unwrap();
        assert_eq!(k.f_vector().get(1), 16);
        let (k, _) = turan_1leray_complex(5, 5).unwrap();
        assert_eq!(k.f_vector().get(1), 10);
        assert_eq!(k.dim(), 4);
        let (k, _) = turan_1leray_complex(5, 1).unwrap();
        assert_eq!(k.f_vector().get(1), 0);
        assert!(turan_1leray_complex(3, 4).is_err());
    }

    proptest! {
        #[test]
        fn eckhoff_matches_closed_forms(n in 2usize..11, d in 1usize..4, r in 0usize..10) {
            prop_assume!(n >= d + r);
            let h = h_eckhoff(n, d, r).unwrap();
            let pred = h_eckhoff_predicted(n, d, r).unwrap();
            prop_assert_eq!(Some(h.edge_count() as u64), pred.edge_count);
            prop_assert!(bijection_check(n, d, r).unwrap());
            if r >= 1 {
                prop_assert_eq!(Some(h.max_clique_size()), pred.max_clique);
                prop_assert_eq!(Some(h.max_independent_size()), pred.max_independent);
            }
        }

        #[test]
        fn product_hypergraph_matches_plan(n in 2usize..10, t in 1usize..4, d in 1usize..3, r in 1usize..8) {
            let Ok(plan) = ProductFamilyPlan::new(n, t, d, r) else {
                return Ok(());
            };
            let h = product_family_hypergraph(&plan).unwrap();
            let pred = plan.predicted().unwrap();
            prop_assert_eq!(Some(h.edge_count() as u64), pred.edge_count);
            prop_assert_eq!(Some(h.max_clique_size()), pred.max_clique);
            prop_assert_eq!(Some(h.max_independent_size()), pred.max_independent);
            let p = BigRational::from_integer(h.p_condition().unwrap().into());
            prop_assert!(p <= pred.p_condition_at_most.unwrap());
        }

        #[test]
        fn turan_complex_meets_bound(n in 1usize..13, m in 1usize..13) {
            prop_assume!(m <= n);
            let (k, factors) = turan_1leray_complex(n, m).unwrap();
            let pred = turan_1leray_predicted(n, m).unwrap();
            prop_assert_eq!(Some(k.f_vector().get(1)), pred.f_d);
            prop_assert_eq!(Some(k.dim()), pred.dim);
            prop_assert!(Complex::intersect(&factors).unwrap().same_faces(&k));
        }
    }
}
