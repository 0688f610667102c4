//! Families of hyperplanes and slabs in `Q^d` whose `(d+1)`-tuple
//! intersections follow the top-gap rule: `A_{i_1} ∩ .. ∩ A_{i_{d+1}}` is
//! nonempty iff `i_{d+1} - i_d <= r`.
//!
//! The first `d` members are hyperplanes through the origin with normals
//! `(1, c, c^2, .., c^{d-1})`. Each later member is a slab
//! `{z : -s u_d <= ⟨z - y, u⟩ <= 0}` with `u` a small random perturbation of
//! `e_d`, `y = (0, .., 0, max t_σ + 1)`, and thickness `s` the midpoint of
//! the admissible window. Candidates are checked exactly before acceptance.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dot, feasible, is_bounded, maximize_last_coordinate, q, rational_bits, Extremum, HPolyhedron, Q};
use crate::complex::{VertexSet, MAX_VERTICES};
use crate::{Error, Result};

/// One member: `offset - thickness * u_d <= ⟨normal, x⟩ <= offset`, a
/// hyperplane when the thickness is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlabMember {
    #[serde(with = "crate::serde_util::rational_vec")]
    pub normal: Vec<Q>,
    #[serde(with = "crate::serde_util::rational")]
    pub offset: Q,
    #[serde(with = "crate::serde_util::rational")]
    pub thickness: Q,
}

impl SlabMember {
    pub fn to_polyhedron(&self) -> Result<HPolyhedron> {
        if self.thickness.is_zero() {
            return HPolyhedron::hyperplane(self.normal.clone(), self.offset.clone());
        }
        let ud = self.normal.last().cloned().unwrap_or_else(Q::zero);
        let other = &self.offset - &self.thickness * ud;
        let (lo, hi) = if other <= self.offset {
            (other, self.offset.clone())
        } else {
            (self.offset.clone(), other)
        };
        HPolyhedron::slab(self.normal.clone(), lo, hi)
    }
}

/// Bit sizes of the rationals defining a family.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientStats {
    pub max_bits: u64,
    pub total_bits: u64,
    pub coefficients: u64,
}

impl CoefficientStats {
    fn of(members: &[SlabMember]) -> Self {
        let mut s = CoefficientStats::default();
        for m in members {
            for v in m.normal.iter().chain([&m.offset, &m.thickness]) {
                let b = rational_bits(v);
                s.max_bits = s.max_bits.max(b);
                s.total_bits += b;
                s.coefficients += 1;
            }
        }
        s
    }
}

/// Tuning for the perturbation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlabOptions {
    /// The first perturbation bound is `η = 2^-eta_log2`.
    pub eta_log2: u32,
    /// Perturbation entries are multiples of `η / 2^grid_log2`.
    pub grid_log2: u32,
    /// Attempts per member before giving up.
    pub retry_budget: u32,
}

impl Default for SlabOptions {
    fn default() -> Self {
        SlabOptions {
            eta_log2: 8,
            grid_log2: 12,
            retry_budget: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlabFamily {
    d: usize,
    r: usize,
    seed: u64,
    members: Vec<SlabMember>,
    /// Attempts used for each slab member `d..n`.
    attempts: Vec<u32>,
    stats: CoefficientStats,
    #[serde(skip)]
    sets: Vec<HPolyhedron>,
}

impl SlabFamily {
    pub fn from_members(d: usize, r: usize, seed: u64, members: Vec<SlabMember>) -> Result<Self> {
        if members.iter().any(|m| m.normal.len() != d) {
            return Err(Error::input(format!("every normal must have length {d}")));
        }
        let sets = members
            .iter()
            .map(SlabMember::to_polyhedron)
            .collect::<Result<_>>()?;
        Ok(SlabFamily {
            d,
            r,
            seed,
            stats: CoefficientStats::of(&members),
            members,
            attempts: Vec::new(),
            sets,
        })
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn members(&self) -> &[SlabMember] {
        &self.members
    }

    pub fn sets(&self) -> &[HPolyhedron] {
        &self.sets
    }

    pub fn attempts(&self) -> &[u32] {
        &self.attempts
    }

    pub fn coefficient_stats(&self) -> CoefficientStats {
        self.stats
    }

    /// A copy with member `i` replaced.
    pub fn with_member(&self, i: usize, member: SlabMember) -> Result<Self> {
        if i >= self.n() {
            return Err(Error::input(format!("member {i} outside 0..{}", self.n())));
        }
        let mut members = self.members.clone();
        members[i] = member;
        let mut out = Self::from_members(self.d, self.r, self.seed, members)?;
        out.attempts = self.attempts.clone();
        Ok(out)
    }

    fn subset(&self, s: VertexSet) -> Vec<HPolyhedron> {
        s.iter().map(|i| self.sets[i].clone()).collect()
    }
}

impl<'de> Deserialize<'de> for SlabFamily {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            d: usize,
            r: usize,
            seed: u64,
            members: Vec<SlabMember>,
            #[serde(default)]
            attempts: Vec<u32>,
        }
        let r = Repr::deserialize(de)?;
        let mut f = SlabFamily::from_members(r.d, r.r, r.seed, r.members).map_err(serde::de::Error::custom)?;
        f.attempts = r.attempts;
        Ok(f)
    }
}

/// Determinant by rational Gaussian elimination.
pub(crate) fn det(rows: &[&[Q]]) -> Q {
    let n = rows.len();
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut acc = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    acc
}

fn unit(d: usize) -> Vec<Q> {
    let mut e = vec![Q::zero(); d];
    e[d - 1] = Q::one();
    e
}

/// First `d`-subset of `{u_0, .., u_{k-1}, e_d}` that is linearly dependent,
/// restricted to subsets containing some index in `must`. Index `k` stands
/// for `e_d`.
fn dependent_subset(normals: &[Vec<Q>], must: Option<usize>) -> Option<VertexSet> {
    let d = normals.first()?.len();
    let k = normals.len();
    let e = unit(d);
    VertexSet::range(k + 1).subsets_of_size(d).find(|s| {
        if must.is_some_and(|m| !s.contains(m)) {
            return false;
        }
        let rows: Vec<&[Q]> = s
            .iter()
            .map(|i| if i == k { e.as_slice() } else { normals[i].as_slice() })
            .collect();
        det(&rows).is_zero()
    })
}

fn sup_last(sets: &[HPolyhedron]) -> Result<Option<Q>> {
    match maximize_last_coordinate(sets) {
        Ok(Extremum::Finite { value, .. }) => Ok(Some(value)),
        Ok(Extremum::Unbounded) | Err(Error::Infeasible) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Whether a `(d+1)`-set follows the top-gap rule.
fn should_intersect(s: VertexSet, r: usize) -> bool {
    let v = s.to_vec();
    match v.as_slice() {
        [.., a, b] => b - a <= r,
        _ => true,
    }
}

pub fn build_slab_family(n: usize, d: usize, r: usize, seed: u64) -> Result<SlabFamily> {
    build_slab_family_with(n, d, r, seed, &SlabOptions::default())
}

pub fn build_slab_family_with(
    n: usize,
    d: usize,
    r: usize,
    seed: u64,
    opts: &SlabOptions,
) -> Result<SlabFamily> {
    if d == 0 {
        return Err(Error::domain("d must be positive"));
    }
    if n < d + r || n > MAX_VERTICES {
        return Err(Error::domain(format!(
            "need d + r <= n <= {MAX_VERTICES}, got n={n}, d={d}, r={r}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members = initial_hyperplanes(d)?;
    let mut sets: Vec<HPolyhedron> = members
        .iter()
        .map(SlabMember::to_polyhedron)
        .collect::<Result<_>>()?;
    // t_σ for every d-subset σ of the members so far
    let mut tops: BTreeMap<VertexSet, Q> = BTreeMap::new();
    let first = VertexSet::range(d);
    let t0 = sup_last(&sets).and_then(|v| v.ok_or_else(|| Error::Construction("initial hyperplanes do not meet in a point".into())))?;
    tops.insert(first, t0);
    let mut attempts = Vec::new();

    for k in d..n {
        // σ ⊂ [0, k) meets the new member iff max σ >= k - r
        let threshold = k.saturating_sub(r);
        let meets = |s: &VertexSet| (*s).max().is_some_and(|m| m >= threshold);
        let top = tops.values().max().cloned().expect("at least one d-subset");
        let y_d = top + Q::one();
        let t_hi = tops.iter().filter(|(s, _)| meets(s)).map(|(_, t)| t).min().cloned();
        let t_lo = tops.iter().filter(|(s, _)| !meets(s)).map(|(_, t)| t).max().cloned();
        let t = t_hi.unwrap_or_else(|| y_d.clone());
        let t_prime = t_lo.unwrap_or_else(|| &t - q(2));
        let s = ((&y_d - &t) + (&y_d - &t_prime)) / q(2);
        let mut y = vec![Q::zero(); d];
        y[d - 1] = y_d.clone();

        let mut eta = Q::new(1.into(), num_bigint::BigInt::one() << opts.eta_log2);
        let grid = 1i64 << opts.grid_log2;
        let mut accepted = None;
        for attempt in 1..=opts.retry_budget {
            let mut u = unit(d);
            for v in u.iter_mut() {
                let m: i64 = rng.random_range(-grid + 1..grid);
                *v += &eta * Q::new(m.into(), grid.into());
            }
            let member = SlabMember {
                offset: dot(&u, &y),
                normal: u,
                thickness: s.clone(),
            };
            if let Some(new_tops) = try_member(&members, &sets, &tops, &member, k, &meets)? {
                accepted = Some((member, new_tops, attempt));
                break;
            }
            eta /= q(2);
        }
        let Some((member, new_tops, used)) = accepted else {
            return Err(Error::Construction(format!(
                "member {k} failed the conditions after {} attempts",
                opts.retry_budget
            )));
        };
        sets.push(member.to_polyhedron()?);
        members.push(member);
        tops.extend(new_tops);
        attempts.push(used);
    }

    let mut family = SlabFamily::from_members(d, r, seed, members)?;
    family.attempts = attempts;
    let report = check_conditions(&family)?;
    if let Some(bad) = report.first_failure() {
        return Err(Error::Construction(format!(
            "condition ({}) fails on the finished family: {:?}",
            bad.name, bad.counterexample
        )));
    }
    Ok(family)
}

fn initial_hyperplanes(d: usize) -> Result<Vec<SlabMember>> {
    // distinct positive c_i; shift them on the (unexpected) degenerate draw
    for shift in 0..16i64 {
        let normals: Vec<Vec<Q>> = (1..=d as i64)
            .map(|c| {
                let c = c + shift;
                (0..d as u32).map(|p| q(c.pow(p))).collect()
            })
            .collect();
        if dependent_subset(&normals, None).is_none() {
            return Ok(normals
                .into_iter()
                .map(|normal| SlabMember {
                    normal,
                    offset: Q::zero(),
                    thickness: Q::zero(),
                })
                .collect());
        }
    }
    Err(Error::Construction("no independent initial normals".into()))
}

/// Checks a candidate for member `k` against (i)–(iv). On success returns
/// `t_σ` for the new `d`-subsets, all of which contain `k`.
fn try_member(
    members: &[SlabMember],
    sets: &[HPolyhedron],
    tops: &BTreeMap<VertexSet, Q>,
    candidate: &SlabMember,
    k: usize,
    meets: &(dyn Fn(&VertexSet) -> bool + Sync),
) -> Result<Option<Vec<(VertexSet, Q)>>> {
    let d = candidate.normal.len();
    let mut normals: Vec<Vec<Q>> = members.iter().map(|m| m.normal.clone()).collect();
    normals.push(candidate.normal.clone());
    if dependent_subset(&normals, Some(k)).is_some() {
        return Ok(None);
    }
    let new_set = candidate.to_polyhedron()?;
    let with_new = |s: VertexSet| -> Vec<HPolyhedron> {
        s.iter()
            .map(|i| if i == k { new_set.clone() } else { sets[i].clone() })
            .collect()
    };
    // (iii): the new member meets A_σ exactly for the σ the rule allows
    let sigmas: Vec<VertexSet> = tops.keys().copied().collect();
    let wrong: Vec<Result<bool>> = sigmas
        .par_iter()
        .map(|s| Ok(feasible(&with_new(s.with(k)))?.is_some() != meets(s)))
        .collect();
    if wrong.into_iter().collect::<Result<Vec<bool>>>()?.into_iter().any(|w| w) {
        return Ok(None);
    }
    // (ii) and (iv): new A_σ compact, all above every old t_σ
    let old_max = tops.values().max().cloned().expect("nonempty");
    let mut new_tops = Vec::new();
    for tau in VertexSet::range(k).subsets_of_size(d - 1) {
        let s = tau.with(k);
        let bodies = with_new(s);
        if feasible(&bodies)?.is_none() || !is_bounded(&bodies)? {
            return Ok(None);
        }
        let Some(t) = sup_last(&bodies)? else {
            return Ok(None);
        };
        if t <= old_max {
            return Ok(None);
        }
        new_tops.push((s, t));
    }
    Ok(Some(new_tops))
}

/// Result of one of the four conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
    /// Member indices of the first violation; index `n` stands for `e_d`
    /// in condition (i).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn all_passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn verdict(name: &str, failure: Option<(VertexSet, String)>) -> Condition {
    Condition {
        name: name.into(),
        passed: failure.is_none(),
        counterexample: failure.as_ref().map(|(s, _)| s.to_vec()),
        detail: failure.map(|(_, d)| d),
    }
}

/// Re-verifies conditions (i)–(iv) of a family from scratch.
///
/// (i) every `d` of the normals and `e_d` are independent; (ii) every
/// `d`-fold intersection is nonempty and bounded; (iii) every `(d+1)`-fold
/// intersection is nonempty iff its top gap is at most `r`; (iv) `t_σ`
/// increases strictly with `max σ`.
pub fn check_conditions(family: &SlabFamily) -> Result<ConditionReport> {
    let (n, d, r) = (family.n(), family.d, family.r);
    let normals: Vec<Vec<Q>> = family.members.iter().map(|m| m.normal.clone()).collect();
    let cond_i = verdict(
        "i",
        dependent_subset(&normals, None).map(|s| (s, "singular determinant".to_string())),
    );

    let sigmas: Vec<VertexSet> = VertexSet::range(n).subsets_of_size(d).collect();
    let tops: Vec<Result<(bool, Option<Q>)>> = sigmas
        .par_iter()
        .map(|s| {
            let bodies = family.subset(*s);
            if feasible(&bodies)?.is_none() || !is_bounded(&bodies)? {
                return Ok((false, None));
            }
            Ok((true, sup_last(&bodies)?))
        })
        .collect();
    let tops = tops.into_iter().collect::<Result<Vec<_>>>()?;
    let cond_ii = verdict(
        "ii",
        sigmas
            .iter()
            .zip(&tops)
            .find(|(_, (ok, _))| !ok)
            .map(|(s, _)| (*s, "empty or unbounded d-fold intersection".to_string())),
    );

    let tuples: Vec<VertexSet> = VertexSet::range(n).subsets_of_size(d + 1).collect();
    let mismatches: Vec<Result<bool>> = tuples
        .par_iter()
        .map(|s| Ok(feasible(&family.subset(*s))?.is_some() != should_intersect(*s, r)))
        .collect();
    let mismatches = mismatches.into_iter().collect::<Result<Vec<_>>>()?;
    let cond_iii = verdict(
        "iii",
        tuples.iter().zip(&mismatches).find(|(_, m)| **m).map(|(s, _)| {
            let rule = if should_intersect(*s, r) { "should meet" } else { "should be disjoint" };
            (*s, rule.to_string())
        }),
    );

    // group t_σ by max σ; each group must lie strictly below the next
    let mut groups: BTreeMap<usize, (Q, VertexSet, Q, VertexSet)> = BTreeMap::new();
    let mut iv_failure = None;
    for (s, (_, t)) in sigmas.iter().zip(&tops) {
        let Some(t) = t else {
            iv_failure.get_or_insert((*s, "t_σ undefined".to_string()));
            continue;
        };
        let m = (*s).max().expect("d >= 1");
        let e = groups
            .entry(m)
            .or_insert_with(|| (t.clone(), *s, t.clone(), *s));
        if *t < e.0 {
            e.0 = t.clone();
            e.1 = *s;
        }
        if *t > e.2 {
            e.2 = t.clone();
            e.3 = *s;
        }
    }
    if iv_failure.is_none() {
        let g: Vec<_> = groups.values().collect();
        for w in g.windows(2) {
            let (lower, upper) = (w[0], w[1]);
            if lower.2 >= upper.0 {
                iv_failure = Some((lower.3.union(upper.1), format!("t_σ of {} not below {}", lower.3, upper.1)));
                break;
            }
        }
    }
    let cond_iv = verdict("iv", iv_failure);
    Ok(ConditionReport {
        conditions: vec![cond_i, cond_ii, cond_iii, cond_iv],
    })
}
