//! Seeded random convex families with small integer coefficients:
//! hyperplanes, slabs, half-spaces, boxes and the whole space.

use rand::Rng;

use super::{q, HPolyhedron, Q};

fn normal(d: usize, rng: &mut impl Rng) -> Vec<Q> {
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.random_range(-2..=2)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(q).collect();
        }
    }
}

/// One random body in `Q^d`.
pub fn random_body(d: usize, rng: &mut impl Rng) -> HPolyhedron {
    let roll: u32 = rng.random_range(0..100);
    let body = match roll {
        0..5 => HPolyhedron::full_space(d),
        5..20 => HPolyhedron::hyperplane(normal(d, rng), q(rng.random_range(-3..=3))),
        20..60 => {
            let lo: i64 = rng.random_range(-4..=3);
            let width: i64 = rng.random_range(0..=3);
            HPolyhedron::slab(normal(d, rng), q(lo), q(lo + width))
        }
        60..70 => {
            let n = normal(d, rng);
            let b = q(rng.random_range(-3..=3));
            HPolyhedron::new(d, vec![super::Constraint::le(n, b)])
        }
        _ => {
            let lo: Vec<Q> = (0..d).map(|_| q(rng.random_range(-3..=2))).collect();
            let hi: Vec<Q> = lo.iter().map(|l| l + q(rng.random_range(0..=3))).collect();
            HPolyhedron::axis_box(&lo, &hi)
        }
    };
    body.expect("random bodies are well formed")
}

pub fn random_family(n: usize, d: usize, rng: &mut impl Rng) -> Vec<HPolyhedron> {
    (0..n).map(|_| random_body(d, rng)).collect()
}
