//! Task enumeration and the checks behind each suite.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::check::Checker;
use super::{IntRange, SweepSpec, Suite, Task, Verdict};
use crate::bounds;
use crate::complex::{Complex, Hypergraph, VertexSet};
use crate::config::Caps;
use crate::constructions::{
    bijection_check, h_eckhoff, k_extremal, k_extremal_factors, product_family_hypergraph,
    turan_1leray_complex, ProductFamilyPlan,
};
use crate::geometry::{
    self, build_slab_family, check_conditions, lift_product_family, nerve, random::random_family,
    Constraint, HPolyhedron, ProductBody, SlabFamily,
};
use crate::homology::is_d_leray;
use crate::Result;

pub(super) fn tasks(spec: &SweepSpec) -> Result<Vec<Task>> {
    Ok(match spec.suite {
        Suite::LerayIntersection => leray_intersection(spec),
        Suite::Eckhoff => eckhoff(spec),
        Suite::Product => product(spec),
        Suite::Partition => partition(spec),
        Suite::Turan => turan(spec),
        Suite::HigherFaces => higher_faces(spec),
    })
}

fn params(pairs: &[(&str, usize)]) -> Map<String, Value> {
    pairs.iter().map(|&(k, v)| (k.to_string(), Value::from(v))).collect()
}

fn axis(explicit: Option<IntRange>, lo: usize, hi: usize) -> IntRange {
    explicit.unwrap_or(IntRange::new(lo, hi))
}

/// `lo..=hi` for a possibly negative upper end.
fn upto(lo: usize, hi: Option<usize>) -> IntRange {
    match hi {
        Some(h) => IntRange::new(lo, h),
        None => IntRange::new(1, 0),
    }
}

fn u(v: usize) -> u64 {
    v as u64
}

fn faces_json(faces: &[VertexSet]) -> Value {
    faces.iter().map(|f| Value::from(f.to_vec())).collect()
}

/// Certifies every factor d-Leray by exhaustive homology.
fn certify_factors(c: &mut Checker, factors: &[Complex], d: usize, caps: &Caps) -> Result<()> {
    let mut checked = 0;
    let mut bad = None;
    for (i, f) in factors.iter().enumerate() {
        let cert = is_d_leray(f, d, caps)?;
        checked += cert.subsets_checked;
        if !cert.holds() && bad.is_none() {
            bad = Some((i, cert.counterexample));
        }
    }
    c.record("leray_subsets_checked", checked);
    let ok = bad.is_none();
    if let Some((i, Some(ce))) = &bad {
        c.witness(json!({
            "factor": i,
            "subset": ce.subset.to_vec(),
            "dimension": ce.dimension,
            "betti": ce.betti,
        }));
    }
    c.holds("factors_d_leray", ok, || {
        format!("factor {} has an induced subcomplex with homology in dimension >= {d}", bad.as_ref().unwrap().0)
    });
    Ok(())
}

fn cap_note(c: &mut Checker, what: &str, n: usize, cap: usize) {
    c.note(format!("{what} skipped: n = {n} exceeds the cap {cap}"));
}

fn random_nerves(n: usize, d: usize, t: usize, seed: u64, caps: &Caps) -> Result<Vec<Complex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..t)
        .map(|_| nerve(&random_family(n, d, &mut rng), None, caps))
        .collect()
}

// ---------------------------------------------------------------------------
// intersections of d-Leray complexes

fn extremal_hypothesis(n: usize, t: usize, r: usize, d: usize) -> Option<String> {
    if d == 0 {
        Some("d >= 1".into())
    } else if t == 0 {
        Some("t >= 1".into())
    } else if r < (t - 1) * d {
        Some(format!("r >= (t-1)d = {}", (t - 1) * d))
    } else if n <= d + r {
        Some(format!("n > d + r = {}", d + r))
    } else {
        None
    }
}

fn extremal_checks(c: &mut Checker, k: &Complex, n: usize, t: usize, r: usize, d: usize) -> Result<()> {
    let f = k.f_vector();
    c.eq("f_d", f.get(d), bounds::g_d(u(n), u(t), u(r), u(d))?);
    c.eq("dim", k.dim(), (d + r) as isize - 1);
    c.record("f_vector", f.counts);
    Ok(())
}

fn leray_intersection(spec: &SweepSpec) -> Vec<Task> {
    let caps = spec.caps;
    let mut tasks = Vec::new();
    for d in axis(spec.d, 1, 2).iter() {
        for t in axis(spec.t, 1, 3).iter() {
            for n in axis(spec.n, 2, 9.min(caps.combinatorial)).iter() {
                let default_r = upto(t.saturating_sub(1) * d, n.checked_sub(d + 1));
                for r in spec.r.unwrap_or(default_r).iter() {
                    let p = params(&[("n", n), ("t", t), ("r", r), ("d", d)]);
                    if let Some(h) = extremal_hypothesis(n, t, r, d) {
                        tasks.push(Task::skipped("extremal", p, format!("hypothesis violated: {h}")));
                    } else if n > caps.combinatorial {
                        tasks.push(Task::skipped(
                            "extremal",
                            p,
                            format!("n = {n} exceeds the combinatorial cap {}", caps.combinatorial),
                        ));
                    } else {
                        tasks.push(Task::check(
                            "extremal",
                            p,
                            Box::new(move |ctx, c| {
                                let caps = &ctx.spec.caps;
                                extremal_checks(c, &k_extremal(n, t, r, d)?, n, t, r, d)?;
                                if n <= caps.suite_leray {
                                    certify_factors(c, &k_extremal_factors(n, t, r, d)?, d, caps)?;
                                } else {
                                    cap_note(c, "d-Leray certification", n, caps.suite_leray);
                                }
                                Ok(())
                            }),
                        ));
                    }
                }
            }
        }
    }
    for d in axis(spec.d, 1, 2).iter() {
        for t in axis(spec.t, 1, 3).iter() {
            let n_lo = (t * d + 1).max(2);
            for n in axis(spec.n, n_lo, 9.min(caps.suite_leray)).iter() {
                for sample in 0..spec.samples {
                    let p = params(&[("n", n), ("t", t), ("d", d), ("sample", sample)]);
                    let reason = if d == 0 || t == 0 {
                        Some("hypothesis violated: d, t >= 1".to_string())
                    } else if n <= t * d {
                        Some(format!("hypothesis violated: n > d + r needs n > td = {}", t * d))
                    } else if d > caps.geometry_dim {
                        Some(format!("d = {d} exceeds the geometry cap {}", caps.geometry_dim))
                    } else if n > caps.suite_leray {
                        Some(format!("n = {n} exceeds the d-Leray suite cap {}", caps.suite_leray))
                    } else {
                        None
                    };
                    match reason {
                        Some(why) => tasks.push(Task::skipped("random", p, why)),
                        None => tasks.push(Task::check(
                            "random",
                            p,
                            Box::new(move |ctx, c| random_leray_instance(c, n, t, d, ctx.seed, &ctx.spec.caps)),
                        )),
                    }
                }
            }
        }
    }
    if spec.controls {
        leray_controls(&mut tasks);
    }
    tasks
}

/// Intersects `t` random nerves in `Q^d` and checks `f_d <= g_d` with the
/// least admissible `r`, i.e. `max(dim K - d + 1, (t-1)d)`.
fn random_leray_instance(c: &mut Checker, n: usize, t: usize, d: usize, seed: u64, caps: &Caps) -> Result<()> {
    let nerves = random_nerves(n, d, t, seed, caps)?;
    let k = Complex::intersect(&nerves)?;
    let dim = k.dim();
    let r = ((dim - d as isize + 1).max(0) as usize).max((t - 1) * d);
    c.record("dim", dim);
    c.record("r", r);
    if n <= d + r {
        c.skip(format!("hypothesis violated: n > d + r fails for the least admissible r = {r}"));
        return Ok(());
    }
    certify_factors(c, &nerves, d, caps)?;
    let f_d = k.f_vector().get(d);
    let bound = bounds::g_d(u(n), u(t), u(r), u(d))?;
    if BigInt::from(f_d) > bound {
        c.witness(json!({ "maximal_faces": faces_json(k.maximal_faces()) }));
    }
    c.le("f_d", f_d, bound);
    Ok(())
}

fn leray_controls(tasks: &mut Vec<Task>) {
    let (n, t, r, d) = (5, 2, 1, 1);
    let p = params(&[("n", n), ("t", t), ("r", r), ("d", d)]);
    tasks.push(Task::control(
        "extra_d_face",
        p.clone(),
        Verdict::Fail,
        Box::new(move |_, c| {
            let k = k_extremal(n, t, r, d)?;
            let extra = VertexSet::range(n)
                .subsets_of_size(d + 1)
                .find(|s| !k.contains_face(*s))
                .expect("the extremal complex misses some d-face");
            let bad = k.with_face(extra)?;
            c.witness(json!({ "added_face": extra.to_vec() }));
            extremal_checks(c, &bad, n, t, r, d)?;
            c.le("f_d", bad.f_vector().get(d), bounds::g_d(u(n), u(t), u(r), u(d))?);
            Ok(())
        }),
    ));
    tasks.push(Task::control(
        "extra_top_face",
        p.clone(),
        Verdict::Fail,
        Box::new(move |_, c| {
            let k = k_extremal(n, t, r, d)?;
            let extra = VertexSet::range(n)
                .subsets_of_size(d + r + 1)
                .find(|s| !k.contains_face(*s))
                .expect("the extremal complex has dimension d + r - 1");
            c.witness(json!({ "added_face": extra.to_vec() }));
            extremal_checks(c, &k.with_face(extra)?, n, t, r, d)
        }),
    ));
    tasks.push(Task::control(
        "non_leray_factor",
        params(&[("n", d + 2), ("d", d)]),
        Verdict::Fail,
        Box::new(move |ctx, c| {
            let hollow = Complex::simplex_boundary(d + 2)?;
            certify_factors(c, &[hollow], d, &ctx.spec.caps)
        }),
    ));
}

// ---------------------------------------------------------------------------
// the Eckhoff hypergraph

fn eckhoff_stats(c: &mut Checker, h: &Hypergraph, n: usize, d: usize, r: usize) {
    let edges = bounds::binomial(u(n), u(d + 1)) - bounds::binomial(u(n - r), u(d + 1));
    c.eq("edge_count", h.edge_count(), edges);
    let clique = h.max_clique();
    c.eq("max_clique", clique.size, d + r);
    c.record("max_clique_witness", clique.witness.to_vec());
    let indep = h.max_independent();
    c.eq("max_independent", indep.size, bounds::eckhoff_independence(u(n), u(d), u(r)));
    c.record("max_independent_witness", indep.witness.to_vec());
    // any subfamily larger than d + (n-d)/(r+1) has an intersecting (d+1)-tuple
    c.le("p_condition", indep.size + 1, d + (n - d) / (r + 1) + 1);
}

fn slab_checks(c: &mut Checker, family: &SlabFamily, h: &Hypergraph, caps: &Caps) -> Result<()> {
    let (d, r) = (family.d(), family.r());
    let report = check_conditions(family)?;
    for cond in &report.conditions {
        if let Some(ce) = &cond.counterexample {
            c.witness(json!({ "condition": cond.name, "members": ce }));
        }
        c.holds(&format!("condition_{}", cond.name), cond.passed, || {
            cond.detail.clone().unwrap_or_else(|| "violated".into())
        });
    }
    let tuples: BTreeSet<VertexSet> = nerve(family.sets(), Some(d), caps)?
        .faces_of_size(d + 1)
        .into_iter()
        .collect();
    nerve_matches(c, &tuples, h);
    let full = nerve(family.sets(), None, caps)?;
    c.eq("max_intersecting", full.dim() + 1, d + r);
    Ok(())
}

fn nerve_matches(c: &mut Checker, tuples: &BTreeSet<VertexSet>, h: &Hypergraph) {
    c.record("nerve_tuples", tuples.len());
    if let Some(s) = tuples.symmetric_difference(h.edges()).next() {
        c.witness(json!({
            "tuple": s.to_vec(),
            "in_nerve": tuples.contains(s),
            "in_hypergraph": h.is_edge(*s),
        }));
    }
    c.holds("nerve_matches_hypergraph", tuples == h.edges(), || {
        "the (d+1)-fold intersection pattern differs from the hypergraph".into()
    });
}

fn eckhoff(spec: &SweepSpec) -> Vec<Task> {
    let caps = spec.caps;
    let mut tasks = Vec::new();
    for d in axis(spec.d, 1, 3).iter() {
        for n in axis(spec.n, d + 1, 12.min(caps.combinatorial)).iter() {
            for r in spec.r.unwrap_or(upto(1, n.checked_sub(d))).iter() {
                let p = params(&[("n", n), ("d", d), ("r", r)]);
                let reason = if d == 0 {
                    Some("hypothesis violated: d >= 1".to_string())
                } else if r == 0 {
                    Some("hypothesis violated: r >= 1".to_string())
                } else if n < d + r {
                    Some(format!("hypothesis violated: n >= d + r = {}", d + r))
                } else if n > caps.combinatorial {
                    Some(format!("n = {n} exceeds the combinatorial cap {}", caps.combinatorial))
                } else {
                    None
                };
                if let Some(why) = reason {
                    tasks.push(Task::skipped("combinatorial", p, why));
                    continue;
                }
                tasks.push(Task::check(
                    "combinatorial",
                    p.clone(),
                    Box::new(move |_, c| {
                        eckhoff_stats(c, &h_eckhoff(n, d, r)?, n, d, r);
                        c.holds("bijection", bijection_check(n, d, r)?, || {
                            "the shift map is not a bijection onto the non-edges".into()
                        });
                        Ok(())
                    }),
                ));
                if spec.geometry && d <= caps.geometry_dim && n <= caps.geometry_n {
                    tasks.push(Task::check(
                        "geometric",
                        p,
                        Box::new(move |ctx, c| {
                            let family = build_slab_family(n, d, r, ctx.seed)?;
                            let stats = family.coefficient_stats();
                            c.record("construction_attempts", family.attempts().iter().sum::<u32>());
                            c.record("max_coefficient_bits", stats.max_bits);
                            slab_checks(c, &family, &h_eckhoff(n, d, r)?, &ctx.spec.caps)
                        }),
                    ));
                }
            }
        }
    }
    if spec.controls {
        let (n, d, r) = (6, 2, 2);
        tasks.push(Task::control(
            "removed_edge",
            params(&[("n", n), ("d", d), ("r", r)]),
            Verdict::Fail,
            Box::new(move |_, c| {
                let h = h_eckhoff(n, d, r)?;
                let dropped = *h.edges().iter().next().expect("edges exist for r >= 1");
                c.witness(json!({ "removed_edge": dropped.to_vec() }));
                let bad = Hypergraph::new(n, d + 1, h.edges().iter().copied().filter(|e| *e != dropped))?;
                eckhoff_stats(c, &bad, n, d, r);
                Ok(())
            }),
        ));
        if spec.geometry {
            let (n, d, r) = (5, 1, 2);
            tasks.push(Task::control(
                "collapsed_slab",
                params(&[("n", n), ("d", d), ("r", r), ("member", 2)]),
                Verdict::Fail,
                Box::new(move |ctx, c| {
                    let family = build_slab_family(n, d, r, ctx.seed)?;
                    let mut member = family.members()[2].clone();
                    member.thickness = BigRational::from_integer(0.into());
                    let bad = family.with_member(2, member)?;
                    slab_checks(c, &bad, &h_eckhoff(n, d, r)?, &ctx.spec.caps)
                }),
            ));
        }
    }
    tasks
}

// ---------------------------------------------------------------------------
// products of slab families

fn product_stats(c: &mut Checker, h: &Hypergraph, n: usize, t: usize, d: usize, r: usize) -> Result<()> {
    c.eq("edge_count", h.edge_count(), bounds::g_d_permissive(u(n), u(t), u(r), u(d))?.value);
    c.eq("max_clique", h.max_clique_size(), d + r);
    let indep = h.max_independent();
    c.record("max_independent", indep.size);
    c.record("max_independent_witness", indep.witness.to_vec());
    let p_bound = bounds::product_p_bound(u(n), u(t), u(d), u(r))? + BigRational::from_integer(1.into());
    c.le("p_condition", indep.size + 1, p_bound);
    Ok(())
}

fn product_nerve_checks(c: &mut Checker, bodies: &[ProductBody], h: &Hypergraph, d: usize, r: usize, caps: &Caps) -> Result<()> {
    let tuples: BTreeSet<VertexSet> = nerve(bodies, Some(d), caps)?
        .faces_of_size(d + 1)
        .into_iter()
        .collect();
    nerve_matches(c, &tuples, h);
    let full = nerve(bodies, None, caps)?;
    c.holds("nerve_is_clique_complex", full.same_faces(&h.clique_complex()), || {
        "the nerve differs from the clique complex of the hypergraph".into()
    });
    c.eq("max_intersecting", full.dim() + 1, d + r);
    Ok(())
}

fn plan_hypergraph(c: &mut Checker, n: usize, t: usize, d: usize, r: usize) -> Result<(ProductFamilyPlan, Hypergraph)> {
    let plan = ProductFamilyPlan::new(n, t, d, r)?;
    c.record("sizes", plan.sizes.clone());
    c.record("ranks", plan.ranks.clone());
    let h = product_family_hypergraph(&plan)?;
    Ok((plan, h))
}

fn product(spec: &SweepSpec) -> Vec<Task> {
    let caps = spec.caps;
    let mut tasks = Vec::new();
    for t in axis(spec.t, 2, 3).iter() {
        for d in axis(spec.d, 1, 2).iter() {
            for n in axis(spec.n, 2, 10.min(caps.combinatorial)).iter() {
                let default_r = upto(t.saturating_sub(1) * d + 1, n.checked_sub(d));
                for r in spec.r.unwrap_or(default_r).iter() {
                    let p = params(&[("n", n), ("t", t), ("d", d), ("r", r)]);
                    let reason = if t == 0 || d == 0 {
                        Some("hypothesis violated: t, d >= 1".to_string())
                    } else if r <= (t - 1) * d {
                        Some(format!("hypothesis violated: r > (t-1)d = {}", (t - 1) * d))
                    } else if n < d + r {
                        Some(format!("hypothesis violated: n >= d + r = {}", d + r))
                    } else if n > caps.combinatorial {
                        Some(format!("n = {n} exceeds the combinatorial cap {}", caps.combinatorial))
                    } else {
                        None
                    };
                    if let Some(why) = reason {
                        tasks.push(Task::skipped("combinatorial", p, why));
                        continue;
                    }
                    tasks.push(Task::check(
                        "combinatorial",
                        p.clone(),
                        Box::new(move |_, c| {
                            let (_, h) = plan_hypergraph(c, n, t, d, r)?;
                            product_stats(c, &h, n, t, d, r)
                        }),
                    ));
                    if spec.geometry && d <= caps.geometry_dim && n <= caps.geometry_n {
                        tasks.push(Task::check(
                            "geometric",
                            p,
                            Box::new(move |ctx, c| {
                                let (plan, h) = plan_hypergraph(c, n, t, d, r)?;
                                let bodies = lift_product_family(&plan, ctx.seed)?;
                                product_nerve_checks(c, &bodies, &h, d, r, &ctx.spec.caps)
                            }),
                        ));
                    }
                }
            }
        }
    }
    if spec.controls {
        let (n, t, d, r) = (6, 2, 1, 2);
        let p = params(&[("n", n), ("t", t), ("d", d), ("r", r)]);
        tasks.push(Task::control(
            "removed_edge",
            p.clone(),
            Verdict::Fail,
            Box::new(move |_, c| {
                let (_, h) = plan_hypergraph(c, n, t, d, r)?;
                let dropped = *h.edges().iter().next().expect("r > (t-1)d gives edges");
                c.witness(json!({ "removed_edge": dropped.to_vec() }));
                let bad = Hypergraph::new(n, d + 1, h.edges().iter().copied().filter(|e| *e != dropped))?;
                product_stats(c, &bad, n, t, d, r)
            }),
        ));
        if spec.geometry {
            tasks.push(Task::control(
                "empty_member",
                p,
                Verdict::Fail,
                Box::new(move |ctx, c| {
                    let (plan, h) = plan_hypergraph(c, n, t, d, r)?;
                    let mut bodies = lift_product_family(&plan, ctx.seed)?;
                    let v = h.max_clique().witness.min().expect("cliques are nonempty");
                    let mut first = vec![BigRational::from_integer(0.into()); d];
                    first[0] = BigRational::from_integer(1.into());
                    let neg: Vec<_> = first.iter().map(|x| -x).collect();
                    let empty = HPolyhedron::new(
                        d,
                        vec![
                            Constraint::le(first, BigRational::from_integer(0.into())),
                            Constraint::le(neg, BigRational::from_integer((-1).into())),
                        ],
                    )?;
                    debug_assert!(geometry::feasible(std::slice::from_ref(&empty))?.is_none());
                    bodies[v] = ProductBody::lift(empty, plan.group_of(v).unwrap_or(0), t)?;
                    c.witness(json!({ "emptied_member": v }));
                    product_nerve_checks(c, &bodies, &h, d, r, &ctx.spec.caps)
                }),
            ));
        }
    }
    tasks
}

// ---------------------------------------------------------------------------
// balanced partitions

fn partition(spec: &SweepSpec) -> Vec<Task> {
    let mut tasks = Vec::new();
    for x in axis(spec.x, 0, 14).iter() {
        for t in axis(spec.t, 1, 5).iter() {
            for k in axis(spec.k, 1, 4).iter() {
                let p = params(&[("x", x), ("t", t), ("k", k)]);
                if t == 0 || k == 0 {
                    tasks.push(Task::skipped("minimum", p, "hypothesis violated: t, k >= 1".into()));
                    continue;
                }
                tasks.push(Task::check(
                    "minimum",
                    p,
                    Box::new(move |_, c| {
                        let part = bounds::BalancedPartition::new(u(x), u(t))?;
                        c.record("q", part.q);
                        c.record("s", part.s);
                        c.eq(
                            "min_sum",
                            bounds::min_binom_sum_oracle(u(x), u(t), u(k))?,
                            bounds::balanced_binom_sum(u(x), u(t), u(k))?,
                        );
                        Ok(())
                    }),
                ));
            }
        }
    }
    if spec.controls {
        let (x, t, k) = (7, 3, 2);
        tasks.push(Task::control(
            "unbalanced",
            params(&[("x", x), ("t", t), ("k", k)]),
            Verdict::Fail,
            Box::new(move |_, c| {
                let parts = [5u64, 1, 1];
                let sum: BigInt = parts.iter().map(|&v| bounds::binomial(v, u(k))).sum();
                c.witness(json!({ "parts": parts }));
                c.eq("min_sum", sum, bounds::balanced_binom_sum(u(x), u(t), u(k))?);
                Ok(())
            }),
        ));
    }
    tasks
}

// ---------------------------------------------------------------------------
// intersections of 1-Leray complexes

/// Checks `f_1 <= bound(n, m)` when `dim K < m <= t`, skipping otherwise.
fn turan_bound_check(c: &mut Checker, k: &Complex, m: usize, t: usize) -> Result<()> {
    let dim = k.dim();
    c.record("dim", dim);
    c.record("m", m);
    if dim >= m as isize {
        c.skip(format!("hypothesis violated: dim K = {dim} is not below m = {m}"));
        return Ok(());
    }
    if m > t {
        c.skip(format!("hypothesis violated: m = {m} exceeds t = {t}"));
        return Ok(());
    }
    c.le("f_1", k.f_vector().get(1), bounds::one_leray_edge_bound(u(k.n()), u(m))?);
    Ok(())
}

fn turan(spec: &SweepSpec) -> Vec<Task> {
    let caps = spec.caps;
    let mut tasks = Vec::new();
    for n in axis(spec.n, 1, 12.min(caps.combinatorial)).iter() {
        for m in spec.m.unwrap_or(IntRange::new(1, n)).iter() {
            let p = params(&[("n", n), ("m", m)]);
            let reason = if m == 0 || m > n {
                Some("hypothesis violated: 1 <= m <= n".to_string())
            } else if n > caps.combinatorial {
                Some(format!("n = {n} exceeds the combinatorial cap {}", caps.combinatorial))
            } else {
                None
            };
            if let Some(why) = reason {
                tasks.push(Task::skipped("equality", p, why));
                continue;
            }
            tasks.push(Task::check(
                "equality",
                p,
                Box::new(move |ctx, c| {
                    let caps = &ctx.spec.caps;
                    let (k, factors) = turan_1leray_complex(n, m)?;
                    c.eq("f_1", k.f_vector().get(1), bounds::one_leray_edge_bound(u(n), u(m))?);
                    c.le("dim", k.dim(), m - 1);
                    if n <= caps.suite_leray {
                        certify_factors(c, &factors, 1, caps)?;
                    } else {
                        cap_note(c, "1-Leray certification", n, caps.suite_leray);
                    }
                    if n > m {
                        c.eq("g_1", bounds::g_d(u(n), u(m), u(m - 1), 1)?, bounds::turan_bound(u(n), u(m))?);
                    }
                    Ok(())
                }),
            ));
        }
    }
    for t in axis(spec.t, 1, 4).iter() {
        for n in axis(spec.n, 2, 9.min(caps.suite_leray)).iter() {
            for sample in 0..spec.samples {
                let p = params(&[("n", n), ("t", t), ("sample", sample)]);
                let reason = if t == 0 {
                    Some("hypothesis violated: t >= 1".to_string())
                } else if n > caps.suite_leray {
                    Some(format!("n = {n} exceeds the d-Leray suite cap {}", caps.suite_leray))
                } else {
                    None
                };
                if let Some(why) = reason {
                    tasks.push(Task::skipped("random", p, why));
                    continue;
                }
                tasks.push(Task::check(
                    "random",
                    p,
                    Box::new(move |ctx, c| {
                        let caps = &ctx.spec.caps;
                        let nerves = random_nerves(n, 1, t, ctx.seed, caps)?;
                        let k = Complex::intersect(&nerves)?;
                        let m = (k.dim() + 1).max(1) as usize;
                        turan_bound_check(c, &k, m, t)?;
                        if !c.is_skipped() {
                            certify_factors(c, &nerves, 1, caps)?;
                        }
                        Ok(())
                    }),
                ));
            }
        }
    }
    if spec.controls {
        tasks.push(Task::control(
            "triangle_claim",
            params(&[("n", 3), ("m", 2), ("t", 2)]),
            Verdict::Skip,
            Box::new(|_, c| turan_bound_check(c, &Complex::simplex(3)?, 2, 2)),
        ));
        let (n, m) = (6, 2);
        tasks.push(Task::control(
            "extra_edge",
            params(&[("n", n), ("m", m), ("t", m)]),
            Verdict::Fail,
            Box::new(move |_, c| {
                let (k, _) = turan_1leray_complex(n, m)?;
                let extra = VertexSet::range(n)
                    .subsets_of_size(2)
                    .find(|s| !k.contains_face(*s))
                    .expect("some pair lies inside a block");
                c.witness(json!({ "added_edge": extra.to_vec() }));
                turan_bound_check(c, &k.with_face(extra)?, m, m)
            }),
        ));
        tasks.push(Task::control(
            "non_leray_factor",
            params(&[("n", 3), ("d", 1)]),
            Verdict::Fail,
            Box::new(|ctx, c| certify_factors(c, &[Complex::simplex_boundary(3)?], 1, &ctx.spec.caps)),
        ));
    }
    tasks
}

// ---------------------------------------------------------------------------
// higher face counts, observational only

fn face_report(c: &mut Checker, k: &Complex, n: usize, d: usize, r: usize, j: usize) -> Result<()> {
    c.informational();
    let measured = k.f_vector().get(j);
    let bound = bounds::higher_face_bound(u(n), u(d), u(r), u(j))?;
    c.record("within_bound", BigInt::from(measured) <= bound);
    c.record_exact("f_j", measured);
    c.predict_exact("higher_face_bound", bound);
    Ok(())
}

fn higher_faces(spec: &SweepSpec) -> Vec<Task> {
    let caps = spec.caps;
    let mut tasks = Vec::new();
    let n_hi = 9.min(caps.combinatorial);
    for d in axis(spec.d, 1, 2).iter() {
        for t in axis(spec.t, 1, 3).iter() {
            for n in axis(spec.n, 2, n_hi).iter() {
                let default_r = upto(t.saturating_sub(1) * d, n.checked_sub(d + 1));
                for r in spec.r.unwrap_or(default_r).iter() {
                    for j in spec.j.unwrap_or(upto(d, n.checked_sub(1))).iter() {
                        let p = params(&[("n", n), ("t", t), ("r", r), ("d", d), ("j", j)]);
                        let reason = extremal_hypothesis(n, t, r, d)
                            .or_else(|| (j < d).then(|| "j >= d".to_string()))
                            .map(|h| format!("hypothesis violated: {h}"))
                            .or_else(|| {
                                (n > caps.combinatorial)
                                    .then(|| format!("n = {n} exceeds the combinatorial cap {}", caps.combinatorial))
                            });
                        if let Some(why) = reason {
                            tasks.push(Task::skipped("extremal", p, why));
                            continue;
                        }
                        tasks.push(Task::check(
                            "extremal",
                            p,
                            Box::new(move |_, c| face_report(c, &k_extremal(n, t, r, d)?, n, d, r, j)),
                        ));
                    }
                }
            }
        }
    }
    for d in axis(spec.d, 1, 2).iter() {
        for t in axis(spec.t, 1, 3).iter() {
            for n in axis(spec.n, 2, n_hi).iter() {
                let default_r = upto(t.saturating_sub(1) * d + 1, n.checked_sub(d));
                for r in spec.r.unwrap_or(default_r).iter() {
                    for j in spec.j.unwrap_or(upto(d, n.checked_sub(1))).iter() {
                        let p = params(&[("n", n), ("t", t), ("r", r), ("d", d), ("j", j)]);
                        let reason = if t == 0 || d == 0 {
                            Some("t, d >= 1".to_string())
                        } else if r <= (t - 1) * d {
                            Some(format!("r > (t-1)d = {}", (t - 1) * d))
                        } else if n < d + r {
                            Some(format!("n >= d + r = {}", d + r))
                        } else if j < d {
                            Some("j >= d".to_string())
                        } else {
                            None
                        };
                        if let Some(why) = reason {
                            tasks.push(Task::skipped("product", p, format!("hypothesis violated: {why}")));
                            continue;
                        }
                        tasks.push(Task::check(
                            "product",
                            p,
                            Box::new(move |_, c| {
                                let (_, h) = plan_hypergraph(c, n, t, d, r)?;
                                face_report(c, &h.clique_complex(), n, d, r, j)
                            }),
                        ));
                    }
                }
            }
        }
    }
    tasks
}
