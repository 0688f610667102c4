use std::collections::HashSet;

use rayon::prelude::*;

use super::{simplex, HPolyhedron, ProductBody};
use crate::complex::{Complex, VertexSet};
use crate::config::Caps;
use crate::{Error, Result};

/// A convex set that can decide whether a collection of its kind has a
/// common point.
pub trait Body: Sync {
    fn intersecting(members: &[&Self]) -> Result<bool>;
}

impl Body for HPolyhedron {
    fn intersecting(members: &[&Self]) -> Result<bool> {
        let all = HPolyhedron::intersection(members.iter().copied())?;
        Ok(simplex::feasible_point(all.dim(), all.constraints()).is_some())
    }
}

/// A product of sets meets iff each factor's sets meet.
impl Body for ProductBody {
    fn intersecting(members: &[&Self]) -> Result<bool> {
        let Some(first) = members.first() else {
            return Err(Error::input("intersection of no bodies"));
        };
        let (t, d) = (first.t(), first.d());
        if members.iter().any(|m| m.t() != t || m.d() != d) {
            return Err(Error::input("product bodies of different shapes"));
        }
        for i in 0..t {
            let factor: Vec<&HPolyhedron> = members.iter().map(|m| &m.components()[i]).collect();
            if !HPolyhedron::intersecting(&factor)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The nerve: faces are the intersecting subfamilies, up to `max_dim` if
/// given. Candidates of each size are those whose facets are all faces.
pub fn nerve<B: Body>(bodies: &[B], max_dim: Option<usize>, caps: &Caps) -> Result<Complex> {
    let n = bodies.len();
    if n > caps.nerve {
        return Err(Error::resource(format!("a nerve on {n} sets"), caps.nerve));
    }
    let top = max_dim.map_or(n, |k| (k + 1).min(n));
    let test = |s: &VertexSet| -> Result<bool> {
        let members: Vec<&B> = s.iter().map(|i| &bodies[i]).collect();
        B::intersecting(&members)
    };
    let mut faces = vec![VertexSet::EMPTY];
    let mut level: Vec<VertexSet> = (0..n).map(VertexSet::singleton).collect();
    level = keep(level, &test)?;
    for _size in 2..=top {
        if level.is_empty() {
            break;
        }
        faces.extend(level.iter().copied());
        let known: HashSet<VertexSet> = level.iter().copied().collect();
        let mut candidates = Vec::new();
        for f in &level {
            let start = (*f).max().map_or(0, |m| m + 1);
            for v in start..n {
                let c = f.with(v);
                if c.iter().all(|w| known.contains(&c.without(w))) {
                    candidates.push(c);
                }
            }
        }
        candidates.sort();
        level = keep(candidates, &test)?;
    }
    faces.extend(level);
    Complex::from_faces(n, faces)
}

fn keep(
    candidates: Vec<VertexSet>,
    test: &(dyn Fn(&VertexSet) -> Result<bool> + Sync),
) -> Result<Vec<VertexSet>> {
    let verdicts: Vec<Result<bool>> = candidates.par_iter().map(test).collect();
    let mut out = Vec::new();
    for (c, v) in candidates.into_iter().zip(verdicts) {
        if v? {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{build_slab_family, q, random, Q};
    use super::*;
    use crate::constructions::h_eckhoff;
    use crate::homology::is_d_leray;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn disjoint_slabs_give_isolated_vertices() {
        let bodies: Vec<HPolyhedron> = (0..4)
            .map(|i| HPolyhedron::slab(vec![q(1), q(0)], q(2 * i), q(2 * i + 1)).unwrap())
            .collect();
        let k = nerve(&bodies, None, &Caps::default()).unwrap();
        assert_eq!(k.maximal_faces(), &(0..4).map(VertexSet::singleton).collect::<Vec<_>>()[..]);
    }

    #[test]
    fn slab_family_pairs_match_eckhoff() {
        let f = build_slab_family(5, 1, 2, 0).unwrap();
        let k = nerve(f.sets(), Some(1), &Caps::default()).unwrap();
        let h = h_eckhoff(5, 1, 2).unwrap();
        assert_eq!(k.faces_of_size(2), h.edges().iter().copied().collect::<Vec<_>>());
    }

    #[test]
    fn product_nerve_is_intersection_of_block_nerves() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let caps = Caps::default();
        for _ in 0..20 {
            let bodies: Vec<ProductBody> = (0..6)
                .map(|_| {
                    ProductBody::new(vec![random::random_body(2, &mut rng), random::random_body(2, &mut rng)])
                        .unwrap()
                })
                .collect();
            let k = nerve(&bodies, None, &caps).unwrap();
            let blocks: Vec<Complex> = (0..2)
                .map(|i| {
                    let f: Vec<HPolyhedron> = bodies.iter().map(|b| b.components()[i].clone()).collect();
                    nerve(&f, None, &caps).unwrap()
                })
                .collect();
            assert!(Complex::intersect(&blocks).unwrap().same_faces(&k));
            // against joint feasibility in Q^4
            let joint: Vec<HPolyhedron> = bodies.iter().map(|b| b.joint().unwrap()).collect();
            assert!(nerve(&joint, None, &caps).unwrap().same_faces(&k));
        }
    }

    #[test]
    fn random_nerves_are_leray_and_helly() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let caps = Caps::default();
        for d in 1..=2 {
            for _ in 0..10 {
                let bodies = random::random_family(7, d, &mut rng);
                let k = nerve(&bodies, None, &caps).unwrap();
                assert!(is_d_leray(&k, d, &caps).unwrap().holds());
                // a set whose (d+1)-subsets all meet is itself a face
                for w in VertexSet::range(7).subsets() {
                    if w.len() > d + 1 && w.subsets_of_size(d + 1).all(|s| k.contains_face(s)) {
                        assert!(k.contains_face(w));
                    }
                }
            }
        }
    }

    #[test]
    fn truncated_nerve_stops_at_max_dim() {
        let full: Vec<HPolyhedron> = (0..4).map(|_| HPolyhedron::full_space(1).unwrap()).collect();
        let k = nerve(&full, Some(1), &Caps::default()).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(nerve(&full, None, &Caps::default()).unwrap().dim(), 3);
        let caps = Caps {
            nerve: 3,
            ..Caps::default()
        };
        assert!(matches!(nerve(&full, None, &caps), Err(Error::Resource { .. })));
        let _: Q = q(0);
    }
}
