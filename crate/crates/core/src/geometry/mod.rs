//! Exact rational convex geometry: H-polyhedra, Cartesian products of them,
//! feasibility and linear optimisation, nerves, and the slab families that
//! realise the Eckhoff hypergraph.

pub mod fm;
mod nerve;
pub mod random;
pub mod simplex;
mod slab;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::ProductFamilyPlan;
use crate::{Error, Result};

pub use nerve::{nerve, Body};
pub use simplex::LpOutcome;
pub use slab::{
    build_slab_family, build_slab_family_with, check_conditions, CoefficientStats, Condition,
    ConditionReport, SlabFamily, SlabMember, SlabOptions,
};

pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Eq,
}

/// `⟨normal, x⟩ rel offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(with = "crate::serde_util::rational_vec")]
    pub normal: Vec<Q>,
    #[serde(with = "crate::serde_util::rational")]
    pub offset: Q,
    pub rel: Relation,
}

impl Constraint {
    pub fn le(normal: Vec<Q>, offset: Q) -> Self {
        Constraint {
            normal,
            offset,
            rel: Relation::Le,
        }
    }

    pub fn eq(normal: Vec<Q>, offset: Q) -> Self {
        Constraint {
            normal,
            offset,
            rel: Relation::Eq,
        }
    }

    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        let lhs = dot(&self.normal, x);
        match self.rel {
            Relation::Le => lhs <= self.offset,
            Relation::Eq => lhs == self.offset,
        }
    }
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// A convex set `{x in Q^dim : every constraint holds}`. No constraints
/// means all of `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HPolyhedron {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl HPolyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        for c in &constraints {
            if c.normal.len() != dim {
                return Err(Error::input(format!(
                    "normal of length {} in dimension {dim}",
                    c.normal.len()
                )));
            }
            if c.normal.iter().all(Zero::is_zero) {
                return Err(Error::input("normal vectors must be nonzero"));
            }
        }
        Ok(HPolyhedron { dim, constraints })
    }

    pub fn full_space(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    /// `{x : ⟨normal, x⟩ = offset}`.
    pub fn hyperplane(normal: Vec<Q>, offset: Q) -> Result<Self> {
        Self::new(normal.len(), vec![Constraint::eq(normal, offset)])
    }

    /// `{x : lo <= ⟨normal, x⟩ <= hi}`.
    pub fn slab(normal: Vec<Q>, lo: Q, hi: Q) -> Result<Self> {
        if lo > hi {
            return Err(Error::input(format!("empty slab: {lo} > {hi}")));
        }
        if lo == hi {
            return Self::hyperplane(normal, lo);
        }
        let neg = normal.iter().map(|v| -v).collect();
        Self::new(
            normal.len(),
            vec![Constraint::le(neg, -lo), Constraint::le(normal, hi)],
        )
    }

    /// The axis-parallel box `lo <= x <= hi`.
    pub fn axis_box(lo: &[Q], hi: &[Q]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::input("box bounds differ in length"));
        }
        let dim = lo.len();
        let mut cs = Vec::with_capacity(2 * dim);
        for j in 0..dim {
            if lo[j] > hi[j] {
                return Err(Error::input(format!("empty box along axis {j}")));
            }
            let e = |s: i64| (0..dim).map(|i| if i == j { q(s) } else { q(0) }).collect();
            cs.push(Constraint::le(e(-1), -lo[j].clone()));
            cs.push(Constraint::le(e(1), hi[j].clone()));
        }
        Self::new(dim, cs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_full_space(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.dim && self.constraints.iter().all(|c| c.satisfied_by(x))
    }

    /// Intersection of bodies of a common dimension.
    pub fn intersection<'a>(bodies: impl IntoIterator<Item = &'a HPolyhedron>) -> Result<Self> {
        let mut iter = bodies.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::input("intersection of no bodies"))?;
        let mut out = first.clone();
        for b in iter {
            if b.dim != out.dim {
                return Err(Error::input(format!(
                    "dimension mismatch: {} and {}",
                    out.dim, b.dim
                )));
            }
            out.constraints.extend(b.constraints.iter().cloned());
        }
        Ok(out)
    }

    /// The same body placed in coordinates `offset..offset+dim` of `Q^total`.
    pub fn embed(&self, offset: usize, total: usize) -> Result<Self> {
        if offset + self.dim > total {
            return Err(Error::input("embedding does not fit"));
        }
        let pad = |v: &[Q]| {
            let mut out = vec![q(0); total];
            out[offset..offset + self.dim].clone_from_slice(v);
            out
        };
        let cs = self
            .constraints
            .iter()
            .map(|c| Constraint {
                normal: pad(&c.normal),
                offset: c.offset.clone(),
                rel: c.rel,
            })
            .collect();
        Self::new(total, cs)
    }

    /// Largest numerator or denominator bit length among the coefficients.
    pub fn max_coefficient_bits(&self) -> u64 {
        self.constraints
            .iter()
            .flat_map(|c| c.normal.iter().chain(std::iter::once(&c.offset)))
            .map(rational_bits)
            .max()
            .unwrap_or(0)
    }
}

pub(crate) fn rational_bits(v: &Q) -> u64 {
    v.numer().abs().bits().max(v.denom().bits())
}

impl<'de> Deserialize<'de> for HPolyhedron {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            dim: usize,
            constraints: Vec<Constraint>,
        }
        let r = Repr::deserialize(d)?;
        HPolyhedron::new(r.dim, r.constraints).map_err(serde::de::Error::custom)
    }
}

/// A Cartesian product `A_1 x .. x A_t` with every `A_i` in `Q^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductBody {
    components: Vec<HPolyhedron>,
}

impl ProductBody {
    pub fn new(components: Vec<HPolyhedron>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::input("a product needs at least one factor"));
        };
        if components.iter().any(|c| c.dim != first.dim) {
            return Err(Error::input("product factors must share a dimension"));
        }
        Ok(ProductBody { components })
    }

    /// `π_i^{-1}(a)`: `a` in factor `i`, the whole space elsewhere.
    pub fn lift(a: HPolyhedron, i: usize, t: usize) -> Result<Self> {
        if i >= t {
            return Err(Error::input(format!("factor {i} outside 0..{t}")));
        }
        let full = HPolyhedron::full_space(a.dim)?;
        let mut components = vec![full; t];
        components[i] = a;
        Self::new(components)
    }

    pub fn t(&self) -> usize {
        self.components.len()
    }

    pub fn d(&self) -> usize {
        self.components[0].dim
    }

    pub fn components(&self) -> &[HPolyhedron] {
        &self.components
    }

    /// The same body as one polyhedron in `Q^{td}`.
    pub fn joint(&self) -> Result<HPolyhedron> {
        let (t, d) = (self.t(), self.d());
        let mut cs = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            cs.extend(c.embed(i * d, t * d)?.constraints);
        }
        HPolyhedron::new(t * d, cs)
    }
}

impl<'de> Deserialize<'de> for ProductBody {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            components: Vec<HPolyhedron>,
        }
        let r = Repr::deserialize(d)?;
        ProductBody::new(r.components).map_err(serde::de::Error::custom)
    }
}

/// Supremum of `x_d` over a nonempty intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extremum {
    Finite { value: Q, point: Vec<Q> },
    Unbounded,
}

impl Extremum {
    pub fn value(&self) -> Option<&Q> {
        match self {
            Extremum::Finite { value, .. } => Some(value),
            Extremum::Unbounded => None,
        }
    }
}

/// A point of the common intersection, or `None` when it is empty.
pub fn feasible(bodies: &[HPolyhedron]) -> Result<Option<Vec<Q>>> {
    let all = HPolyhedron::intersection(bodies)?;
    Ok(simplex::feasible_point(all.dim, &all.constraints))
}

/// Maximises `objective` over the common intersection.
pub fn maximize(bodies: &[HPolyhedron], objective: &[Q]) -> Result<LpOutcome> {
    let all = HPolyhedron::intersection(bodies)?;
    if objective.len() != all.dim {
        return Err(Error::input("objective length differs from the dimension"));
    }
    Ok(simplex::maximize(all.dim, &all.constraints, objective))
}

/// `max x_d` over the common intersection. An empty intersection is an
/// error, distinct from an unbounded one.
pub fn maximize_last_coordinate(bodies: &[HPolyhedron]) -> Result<Extremum> {
    let dim = bodies
        .first()
        .ok_or_else(|| Error::input("no bodies"))?
        .dim;
    let mut c = vec![q(0); dim];
    c[dim - 1] = q(1);
    match maximize(bodies, &c)? {
        LpOutcome::Infeasible => Err(Error::Infeasible),
        LpOutcome::Unbounded => Ok(Extremum::Unbounded),
        LpOutcome::Optimal { value, point } => Ok(Extremum::Finite { value, point }),
    }
}

/// Whether the intersection is bounded, by maximising `±x_j` for every `j`.
pub fn is_bounded(bodies: &[HPolyhedron]) -> Result<bool> {
    let dim = bodies
        .first()
        .ok_or_else(|| Error::input("no bodies"))?
        .dim;
    for j in 0..dim {
        for s in [1, -1] {
            let mut c = vec![q(0); dim];
            c[j] = q(s);
            match maximize(bodies, &c)? {
                LpOutcome::Infeasible => return Err(Error::Infeasible),
                LpOutcome::Unbounded => return Ok(false),
                LpOutcome::Optimal { .. } => {}
            }
        }
    }
    Ok(true)
}

/// Product bodies for the product construction: member `v` of group `i` is
/// the lift of the `v`-th slab of that group's family into factor `i`.
pub fn lift_product_family(plan: &ProductFamilyPlan, seed: u64) -> Result<Vec<ProductBody>> {
    let mut out = Vec::with_capacity(plan.n);
    for i in 0..plan.t {
        let family = build_slab_family(plan.sizes[i], plan.d, plan.ranks[i], seed.wrapping_add(i as u64))?;
        for set in family.sets() {
            out.push(ProductBody::lift(set.clone(), i, plan.t)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn parallel_hyperplanes_are_disjoint() {
        let a = HPolyhedron::hyperplane(v(&[1, 1]), q(0)).unwrap();
        let b = HPolyhedron::hyperplane(v(&[2, 2]), q(1)).unwrap();
        assert_eq!(feasible(&[a.clone(), b]).unwrap(), None);
        let p = feasible(std::slice::from_ref(&a)).unwrap().unwrap();
        assert!(a.contains(&p));
    }

    #[test]
    fn slab_maximum() {
        let s = HPolyhedron::slab(v(&[0, 1]), q(0), q(1)).unwrap();
        assert!(feasible(std::slice::from_ref(&s)).unwrap().is_some());
        let bounded = HPolyhedron::slab(v(&[1, 0]), q(-3), q(3)).unwrap();
        let e = maximize_last_coordinate(&[s.clone(), bounded]).unwrap();
        assert_eq!(e.value(), Some(&q(1)));
        assert_eq!(maximize_last_coordinate(std::slice::from_ref(&s)).unwrap().value(), Some(&q(1)));
        let tilted = HPolyhedron::slab(v(&[1, 1]), q(0), q(1)).unwrap();
        assert_eq!(maximize_last_coordinate(&[tilted]).unwrap(), Extremum::Unbounded);
    }

    #[test]
    fn generic_hyperplanes_meet_in_a_point() {
        let a = HPolyhedron::hyperplane(v(&[1, 1]), q(3)).unwrap();
        let b = HPolyhedron::hyperplane(v(&[1, -1]), q(1)).unwrap();
        let e = maximize_last_coordinate(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(e.value(), Some(&q(1)));
        assert!(is_bounded(&[a.clone(), b]).unwrap());
        assert!(!is_bounded(&[a]).unwrap());
    }

    #[test]
    fn infeasible_and_unbounded_are_distinct() {
        let a = HPolyhedron::slab(v(&[1]), q(0), q(1)).unwrap();
        let b = HPolyhedron::slab(v(&[1]), q(2), q(3)).unwrap();
        assert_eq!(maximize_last_coordinate(&[a, b]), Err(Error::Infeasible));
        let full = HPolyhedron::full_space(1).unwrap();
        assert_eq!(maximize_last_coordinate(&[full]).unwrap(), Extremum::Unbounded);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = HPolyhedron::full_space(1).unwrap();
        let b = HPolyhedron::full_space(2).unwrap();
        assert!(matches!(feasible(&[a, b]), Err(Error::Input(_))));
        assert!(HPolyhedron::new(2, vec![Constraint::le(v(&[0, 0]), q(1))]).is_err());
    }

    #[test]
    fn json_uses_rational_strings() {
        let h = HPolyhedron::new(
            2,
            vec![Constraint::le(vec![Q::new(1.into(), 2.into()), q(-1)], q(3))],
        )
        .unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(
            s,
            r#"{"dim":2,"constraints":[{"normal":["1/2","-1/1"],"offset":"3/1","rel":"le"}]}"#
        );
        assert_eq!(serde_json::from_str::<HPolyhedron>(&s).unwrap(), h);
        let bad = r#"{"dim":1,"constraints":[{"normal":["0"],"offset":"1","rel":"eq"}]}"#;
        assert!(serde_json::from_str::<HPolyhedron>(bad).is_err());
    }

    #[test]
    fn joint_product_embeds_blocks() {
        let a = HPolyhedron::slab(v(&[1]), q(0), q(1)).unwrap();
        let p = ProductBody::lift(a, 1, 3).unwrap();
        let j = p.joint().unwrap();
        assert_eq!(j.dim(), 3);
        assert!(j.contains(&v(&[7, 1, -4])));
        assert!(!j.contains(&v(&[0, 2, 0])));
    }

    #[test]
    fn lifted_product_family_layout() {
        let plan = ProductFamilyPlan::new(6, 2, 1, 2).unwrap();
        let bodies = lift_product_family(&plan, 7).unwrap();
        assert_eq!(bodies.len(), 6);
        for (v, b) in bodies.iter().enumerate() {
            let block = if v < 3 { 0 } else { 1 };
            assert!(!b.components()[block].is_full_space());
            assert!(b.components()[1 - block].is_full_space());
        }
    }
}
