//! Fourier–Motzkin elimination, an independent check on the simplex solver.
//!
//! The number of inequalities can grow quadratically per eliminated
//! variable, so this is only meant for a handful of variables.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{Constraint, Extremum, Relation, Q};

/// `⟨a, x⟩ <= b`, scaled so the first nonzero coefficient has magnitude one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    a: Vec<Q>,
    b: Q,
}

impl Ineq {
    fn normalized(a: Vec<Q>, b: Q) -> Self {
        match a.iter().find(|v| !v.is_zero()) {
            Some(lead) => {
                let s = lead.abs().recip();
                Ineq {
                    a: a.iter().map(|v| v * &s).collect(),
                    b: b * s,
                }
            }
            None => Ineq { a, b },
        }
    }
}

fn to_ineqs(constraints: &[Constraint]) -> BTreeSet<Ineq> {
    let mut out = BTreeSet::new();
    for c in constraints {
        out.insert(Ineq::normalized(c.normal.clone(), c.offset.clone()));
        if c.rel == Relation::Eq {
            out.insert(Ineq::normalized(
                c.normal.iter().map(|v| -v).collect(),
                -&c.offset,
            ));
        }
    }
    out
}

/// Eliminates variable `k`. `None` if a constant inequality is violated.
fn eliminate(ineqs: BTreeSet<Ineq>, k: usize) -> Option<BTreeSet<Ineq>> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), BTreeSet::new());
    for e in ineqs {
        if e.a[k].is_positive() {
            pos.push(e);
        } else if e.a[k].is_negative() {
            neg.push(e);
        } else {
            out.insert(e);
        }
    }
    for p in &pos {
        for n in &neg {
            let (sp, sn) = (p.a[k].recip(), n.a[k].abs().recip());
            let a: Vec<Q> = p.a.iter().zip(&n.a).map(|(x, y)| x * &sp + y * &sn).collect();
            let b = &p.b * &sp + &n.b * &sn;
            out.insert(Ineq::normalized(a, b));
        }
    }
    let constant_ok = out
        .iter()
        .filter(|e| e.a.iter().all(Zero::is_zero))
        .all(|e| !e.b.is_negative());
    constant_ok.then(|| out.into_iter().filter(|e| e.a.iter().any(|v| !v.is_zero())).collect())
}

/// Whether the constraints have a common solution.
pub fn feasible(dim: usize, constraints: &[Constraint]) -> bool {
    let mut ineqs = to_ineqs(constraints);
    if ineqs.iter().any(|e| e.a.iter().all(Zero::is_zero) && e.b.is_negative()) {
        return false;
    }
    for k in 0..dim {
        match eliminate(ineqs, k) {
            Some(next) => ineqs = next,
            None => return false,
        }
    }
    true
}

/// `max x_d`; `None` if infeasible. The returned point is empty: this oracle
/// only certifies the value.
pub fn maximize_last(dim: usize, constraints: &[Constraint]) -> Option<Extremum> {
    let mut ineqs = to_ineqs(constraints);
    for k in 0..dim - 1 {
        ineqs = eliminate(ineqs, k)?;
    }
    let last = dim - 1;
    let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
    for e in &ineqs {
        let c = &e.a[last];
        if c.is_zero() {
            if e.b.is_negative() {
                return None;
            }
        } else if c.is_positive() {
            let v = &e.b / c;
            hi = Some(hi.map_or(v.clone(), |h| h.min(v)));
        } else {
            let v = &e.b / c;
            lo = Some(lo.map_or(v.clone(), |l| l.max(v)));
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some(match hi {
        Some(value) => Extremum::Finite {
            value,
            point: Vec::new(),
        },
        None => Extremum::Unbounded,
    })
}
