//! Reduced simplicial homology over the rationals and d-Leray certification.

mod rank;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, VertexSet};
use crate::config::Caps;
use crate::{Error, Result};

pub use rank::rank;

/// Signed boundary map from `k`-faces to `(k-1)`-faces.
///
/// Rows and columns are the faces in lexicographic order of their sorted
/// vertex lists; the column of `[v_0 < .. < v_k]` has `(-1)^i` in the row of
/// the face obtained by deleting `v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: Vec<VertexSet>,
    pub cols: Vec<VertexSet>,
    /// Nonzero entries of each column as `(row index, ±1)`.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn new(rows: Vec<VertexSet>, cols: Vec<VertexSet>) -> Self {
        let index: HashMap<VertexSet, usize> =
            rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let columns = cols
            .iter()
            .map(|face| {
                let mut col: Vec<(usize, i64)> = face
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        index.get(&face.without(v)).map(|&r| (r, sign))
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        BoundaryMatrix {
            rows,
            cols,
            columns,
        }
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols.len()]; self.rows.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] = v;
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        if self.rows.is_empty() || self.cols.is_empty() {
            return 0;
        }
        // eliminate on the smaller side
        let m = self.dense();
        if self.rows.len() <= self.cols.len() {
            rank::rank(&m)
        } else {
            rank::rank(&transpose(&m))
        }
    }

    /// Whether `self ∘ next` vanishes, where `next` maps into `self`'s
    /// columns.
    pub fn composes_to_zero(&self, next: &BoundaryMatrix) -> bool {
        if self.cols != next.rows {
            return false;
        }
        next.columns.iter().all(|col| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(mid, a) in col {
                for &(row, b) in &self.columns[mid] {
                    *acc.entry(row).or_default() += a * b;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Reduced Betti numbers of a complex over Q.
///
/// `betti[i]` is `dim H̃_i` for `0 <= i <= dim K`. The only complex with
/// nonzero `H̃_{-1}` is `{{}}`, recorded separately in `betti_neg1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    pub betti: Vec<u64>,
    pub betti_neg1: u64,
}

impl BettiProfile {
    pub fn get(&self, i: usize) -> u64 {
        self.betti.get(i).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti_neg1 == 0 && self.betti.iter().all(|&b| b == 0)
    }

    /// Lowest dimension `i >= from` with `H̃_i != 0`.
    pub fn first_nonzero_from(&self, from: usize) -> Option<usize> {
        (from..self.betti.len()).find(|&i| self.betti[i] != 0)
    }

    /// `Σ (-1)^i β̃_i` over `i >= -1`.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = -(self.betti_neg1 as i64);
        for (i, &b) in self.betti.iter().enumerate() {
            chi += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        chi
    }
}

/// Reduced Euler characteristic from face counts, counting the empty face.
pub fn reduced_euler_from_faces(k: &Complex) -> i64 {
    if k.is_void() {
        return 0;
    }
    let f = k.f_vector();
    let mut chi = -1i64;
    for (j, &c) in f.counts.iter().enumerate() {
        chi += if j % 2 == 0 { c as i64 } else { -(c as i64) };
    }
    chi
}

/// Reduced Betti numbers in dimensions `from..=dim`. Ranks of boundary maps
/// that only feed lower dimensions are never computed.
fn betti_from(k: &Complex, from: usize) -> BettiProfile {
    let by_size = k.faces_by_size();
    let dim = k.dim();
    let top = if dim < 0 { 0 } else { dim as usize + 1 };
    let mut betti = vec![0u64; top];
    let has_empty = !k.is_void();
    let vertices = by_size.get(1).map_or(0, Vec::len);

    // rank of ∂_j : C_j -> C_{j-1}; ∂_0 is the augmentation
    let mut ranks = vec![0usize; top + 1];
    let lowest_needed = from;
    let mut previous: Option<BoundaryMatrix> = None;
    for j in lowest_needed.max(1)..top {
        let m = BoundaryMatrix::new(by_size[j].clone(), by_size[j + 1].clone());
        if cfg!(debug_assertions) {
            if let Some(prev) = &previous {
                debug_assert!(prev.composes_to_zero(&m), "boundary of boundary is nonzero");
            }
        }
        ranks[j] = m.rank();
        previous = Some(m);
    }
    if top > 0 {
        ranks[0] = usize::from(vertices > 0 && has_empty);
    }
    for (i, b) in betti.iter_mut().enumerate().skip(from) {
        let faces = by_size[i + 1].len();
        *b = (faces - ranks[i] - ranks.get(i + 1).copied().unwrap_or(0)) as u64;
    }
    let betti_neg1 = if from == 0 {
        u64::from(has_empty) - ranks[0] as u64
    } else {
        0
    };
    BettiProfile { betti, betti_neg1 }
}

/// All reduced Betti numbers, with the Euler–Poincaré identity checked.
pub fn reduced_betti(k: &Complex, caps: &Caps) -> Result<BettiProfile> {
    if k.n() > caps.betti {
        return Err(Error::resource(
            format!("reduced_betti on {} vertices", k.n()),
            caps.betti,
        ));
    }
    let profile = betti_from(k, 0);
    let expected = reduced_euler_from_faces(k);
    if profile.euler_characteristic() != expected {
        return Err(Error::Internal(format!(
            "Euler-Poincaré mismatch: faces give {expected}, Betti numbers give {}",
            profile.euler_characteristic()
        )));
    }
    Ok(profile)
}

/// Outcome of a d-Leray check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LerayVerdict {
    /// Every induced subcomplex was checked.
    Leray,
    /// A counterexample was found.
    NotLeray,
    /// Sampling found no counterexample; this is not a proof.
    NotFalsified,
}

/// An induced subcomplex with nonzero homology in a dimension `>= d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayCounterexample {
    pub subset: VertexSet,
    pub dimension: usize,
    pub betti: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayCertificate {
    pub d: usize,
    pub verdict: LerayVerdict,
    pub counterexample: Option<LerayCounterexample>,
    pub subsets_checked: u64,
}

impl LerayCertificate {
    /// `true` only for an exhaustive positive verdict.
    pub fn holds(&self) -> bool {
        self.verdict == LerayVerdict::Leray
    }

    /// Recomputes the counterexample's homology from scratch.
    pub fn recheck(&self, k: &Complex, caps: &Caps) -> Result<bool> {
        match &self.counterexample {
            None => Ok(self.verdict != LerayVerdict::NotLeray),
            Some(c) => {
                let betti = reduced_betti(&k.induced(c.subset)?, caps)?;
                Ok(c.dimension >= self.d && betti.get(c.dimension) == c.betti && c.betti > 0)
            }
        }
    }
}

/// How `is_d_leray` visits induced subcomplexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LerayMode {
    /// All `2^n` subsets; the only mode that can certify.
    Exhaustive,
    /// `samples` uniformly random subsets from a seeded generator.
    Sampled { samples: u64, seed: u64 },
}

fn check_subset(k: &Complex, d: usize, w: VertexSet) -> Option<LerayCounterexample> {
    let sub = k.induced_unchecked(w);
    if sub.dim() < d as isize {
        return None;
    }
    let betti = betti_from(&sub, d);
    betti.first_nonzero_from(d).map(|i| LerayCounterexample {
        subset: w,
        dimension: i,
        betti: betti.betti[i],
    })
}

/// Exhaustive d-Leray check over every induced subcomplex.
pub fn is_d_leray(k: &Complex, d: usize, caps: &Caps) -> Result<LerayCertificate> {
    is_d_leray_with(k, d, caps, LerayMode::Exhaustive)
}

pub fn is_d_leray_with(
    k: &Complex,
    d: usize,
    caps: &Caps,
    mode: LerayMode,
) -> Result<LerayCertificate> {
    let ground = k.ground();
    match mode {
        LerayMode::Exhaustive => {
            if k.n() > caps.leray {
                return Err(Error::resource(
                    format!("exhaustive d-Leray check on {} vertices", k.n()),
                    caps.leray,
                ));
            }
            let mut subsets: Vec<VertexSet> = ground.subsets().collect();
            subsets.sort();
            let counterexample = subsets
                .par_iter()
                .find_map_first(|&w| check_subset(k, d, w));
            Ok(LerayCertificate {
                d,
                verdict: if counterexample.is_some() {
                    LerayVerdict::NotLeray
                } else {
                    LerayVerdict::Leray
                },
                counterexample,
                subsets_checked: 1u64 << ground.len(),
            })
        }
        LerayMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let verts = ground.to_vec();
            let mut found = None;
            for _ in 0..samples {
                let w: VertexSet = verts.iter().filter(|_| rng.random_bool(0.5)).collect();
                if let Some(c) = check_subset(k, d, w) {
                    found = Some(c);
                    break;
                }
            }
            Ok(LerayCertificate {
                d,
                verdict: if found.is_some() {
                    LerayVerdict::NotLeray
                } else {
                    LerayVerdict::NotFalsified
                },
                counterexample: found,
                subsets_checked: samples,
            })
        }
    }
}

/// The least `d` for which the complex is d-Leray.
pub fn leray_number(k: &Complex, caps: &Caps) -> Result<usize> {
    if k.n() > caps.leray {
        return Err(Error::resource(
            format!("Leray number on {} vertices", k.n()),
            caps.leray,
        ));
    }
    // every complex is (dim + 1)-Leray
    let top = (k.dim() + 1).max(0) as usize;
    for d in 0..top {
        if is_d_leray(k, d, caps)?.holds() {
            return Ok(d);
        }
    }
    Ok(top)
}
