//! Closed-form quantities: binomial bounds, `g_d(n, t, r)`, Turán numbers,
//! balanced partitions and the fractional Helly fractions.
//!
//! Integers are arbitrary precision throughout. The fractions
//! `1 - (1 - α)^(1/(d+1))` and `1 - (t^d (1 - α))^(1/(d+1))` are irrational in
//! general and are returned as correctly rounded [`Real`] values.

pub mod real;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use real::{Real, DEFAULT_PRECISION};

use crate::{Error, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Split of `total` into `t` parts differing by at most one: `s` parts of
/// `q + 1` followed by `t - s` parts of `q`, where `total = t q + s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedPartition {
    pub total: u64,
    pub parts: Vec<u64>,
    pub q: u64,
    pub s: u64,
}

impl BalancedPartition {
    pub fn new(total: u64, t: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::domain("a partition needs at least one part"));
        }
        let (q, s) = (total / t, total % t);
        let parts = (0..t).map(|i| if i < s { q + 1 } else { q }).collect();
        Ok(BalancedPartition { total, parts, q, s })
    }

    /// `Σ C(x_i, k)` over the parts, i.e. `s C(q+1, k) + (t-s) C(q, k)`.
    pub fn binomial_sum(&self, k: u64) -> BigInt {
        self.parts.iter().map(|&p| binomial(p, k)).sum()
    }
}

/// `s C(q+1, k) + (t - s) C(q, k)` with `x = t q + s`.
pub fn balanced_binom_sum(x: u64, t: u64, k: u64) -> Result<BigInt> {
    let p = BalancedPartition::new(x, t)?;
    Ok(BigInt::from(p.s) * binomial(p.q + 1, k) + BigInt::from(t - p.s) * binomial(p.q, k))
}

/// Largest number of compositions `min_binom_sum_oracle` will enumerate.
pub const ORACLE_COMPOSITION_CAP: u64 = 5_000_000;

/// Minimum of `Σ C(x_i, k)` over every composition of `x` into `t`
/// nonnegative parts, by exhaustive enumeration.
pub fn min_binom_sum_oracle(x: u64, t: u64, k: u64) -> Result<BigInt> {
    if t == 0 || k == 0 {
        return Err(Error::domain("t and k must be positive"));
    }
    let count = binomial(x + t - 1, t - 1);
    if count > BigInt::from(ORACLE_COMPOSITION_CAP) {
        return Err(Error::resource(
            format!("enumerating {count} compositions of {x} into {t} parts"),
            ORACLE_COMPOSITION_CAP as usize,
        ));
    }
    let table: Vec<BigInt> = (0..=x).map(|v| binomial(v, k)).collect();
    let mut best: Option<BigInt> = None;
    let mut parts = vec![0u64; t as usize];
    compositions(x, 0, &mut parts, &mut |p| {
        let sum: BigInt = p.iter().map(|&v| &table[v as usize]).sum();
        if best.as_ref().is_none_or(|b| sum < *b) {
            best = Some(sum);
        }
    });
    Ok(best.expect("at least one composition exists"))
}

fn compositions(remaining: u64, idx: usize, parts: &mut [u64], visit: &mut impl FnMut(&[u64])) {
    if idx + 1 == parts.len() {
        parts[idx] = remaining;
        visit(parts);
        return;
    }
    for v in 0..=remaining {
        parts[idx] = v;
        compositions(remaining - v, idx + 1, parts, visit);
    }
}

/// `C(n, d+1) - C(n-r, d+1)`, the d-face bound for one d-Leray complex of
/// dimension below `d + r`.
pub fn frachel_bound(n: u64, d: u64, r: u64) -> Result<BigInt> {
    if d + r < 1 || n <= d + r {
        return Err(Error::domain(format!(
            "need n > d + r >= 1, got n={n}, d={d}, r={r}"
        )));
    }
    Ok(binomial(n, d + 1) - binomial(n - r, d + 1))
}

/// A `g_d` value computed outside the range where it is a proven bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GdValue {
    #[serde(with = "crate::serde_util::bigint")]
    pub value: BigInt,
    /// `n > d + r` and `r >= (t-1) d` both hold.
    pub in_theorem_domain: bool,
}

fn gd_formula(n: u64, t: u64, r: u64, d: u64) -> Result<BigInt> {
    let shift = (t - 1) * d;
    if n + shift < r {
        return Err(Error::domain(format!(
            "n - r + (t-1)d is negative for n={n}, t={t}, r={r}, d={d}"
        )));
    }
    let part = BalancedPartition::new(n - r + shift, t)?;
    Ok(binomial(n, d + 1) - part.binomial_sum(d + 1))
}

/// `g_d(n, t, r) = C(n, d+1) - min Σ C(n_i, d+1)` over `n_1 + .. + n_t =
/// n - r + (t-1) d`, evaluated at the balanced partition.
pub fn g_d(n: u64, t: u64, r: u64, d: u64) -> Result<BigInt> {
    if t == 0 || d == 0 {
        return Err(Error::domain("t and d must be positive"));
    }
    if n <= d + r {
        return Err(Error::domain(format!("need n > d + r, got n={n}, d={d}, r={r}")));
    }
    if r < (t - 1) * d {
        return Err(Error::domain(format!(
            "need r >= (t-1) d, got r={r}, t={t}, d={d}"
        )));
    }
    gd_formula(n, t, r, d)
}

/// The balanced-partition formula without the domain restrictions, flagged
/// when the parameters are outside the theorem's hypotheses.
pub fn g_d_permissive(n: u64, t: u64, r: u64, d: u64) -> Result<GdValue> {
    if t == 0 || d == 0 {
        return Err(Error::domain("t and d must be positive"));
    }
    Ok(GdValue {
        value: gd_formula(n, t, r, d)?,
        in_theorem_domain: n > d + r && r >= (t - 1) * d,
    })
}

/// Turán's bound `C(n,2) - s C(q+1,2) - (t-s) C(q,2)` with `n = t q + s`.
pub fn turan_bound(n: u64, t: u64) -> Result<BigInt> {
    if n == 0 || t == 0 {
        return Err(Error::domain("n and t must be positive"));
    }
    let (q, s) = (n / t, n % t);
    Ok(binomial(n, 2) - BigInt::from(s) * binomial(q + 1, 2) - BigInt::from(t - s) * binomial(q, 2))
}

/// The edge bound for intersections of 1-Leray complexes of dimension below
/// `m`, written with ceilings and floors of `n / m`.
pub fn one_leray_edge_bound(n: u64, m: u64) -> Result<BigInt> {
    if m == 0 || m > n {
        return Err(Error::domain(format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    let s = n % m;
    let ceil = n.div_ceil(m);
    let floor = n / m;
    Ok(binomial(n, 2) - BigInt::from(s) * binomial(ceil, 2) - BigInt::from(m - s) * binomial(floor, 2))
}

/// Upper bound on `f_j` of a d-Leray complex of dimension below `d + r`:
/// `Σ_{i=0}^{d} C(n-r, i) C(r, j+1-i)`.
pub fn higher_face_bound(n: u64, d: u64, r: u64, j: u64) -> Result<BigInt> {
    if j < d || r > n {
        return Err(Error::domain(format!("need j >= d and r <= n, got j={j}, d={d}, r={r}, n={n}")));
    }
    Ok((0..=d)
        .filter(|&i| i <= j + 1)
        .map(|i| binomial(n - r, i) * binomial(r, j + 1 - i))
        .sum())
}

/// Largest `r` in the `g_d` domain with `g_d(n, t, r) < count`; 0 if none.
///
/// A nerve with `count` intersecting `(d+1)`-tuples then has an intersecting
/// subfamily of size at least `d + r + 1`.
pub fn rank_from_count(n: u64, d: u64, t: u64, count: &BigInt) -> Result<u64> {
    if count > &binomial(n, d + 1) {
        return Err(Error::domain(format!(
            "count {count} exceeds C({n}, {})",
            d + 1
        )));
    }
    let lo = (t - 1) * d;
    let mut best = 0;
    let mut r = lo;
    // g_d is nondecreasing in r, so scan until it reaches count
    while n > d + r {
        if g_d(n, t, r, d)? < *count {
            best = r;
        } else {
            break;
        }
        r += 1;
    }
    Ok(best)
}

fn check_alpha(alpha: &BigRational) -> Result<()> {
    if !alpha.is_positive() || *alpha > BigRational::one() {
        return Err(Error::domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    Ok(())
}

/// `1 - (1 - α)^(1/(d+1))`.
pub fn beta_convex(alpha: &BigRational, d: u32, precision: u32) -> Result<Real> {
    check_alpha(alpha)?;
    let y = BigRational::one() - alpha;
    Ok(real::one_minus_root(&y, d + 1, precision))
}

/// `1 - 1/t^d`.
pub fn product_threshold(d: u32, t: u32) -> Result<BigRational> {
    if t == 0 {
        return Err(Error::domain("t must be positive"));
    }
    let td = num_traits::pow(BigInt::from(t), d as usize);
    Ok(BigRational::one() - BigRational::new(BigInt::one(), td))
}

/// `1 - (t^d (1 - α))^(1/(d+1))` for `α` above [`product_threshold`].
pub fn beta_product(alpha: &BigRational, d: u32, t: u32, precision: u32) -> Result<Real> {
    check_alpha(alpha)?;
    let threshold = product_threshold(d, t)?;
    if *alpha <= threshold {
        return Err(Error::domain(format!(
            "alpha = {alpha} is not above the threshold 1 - 1/t^d = {threshold}"
        )));
    }
    let td = BigRational::from_integer(num_traits::pow(BigInt::from(t), d as usize));
    let y = td * (BigRational::one() - alpha);
    Ok(real::one_minus_root(&y, d + 1, precision))
}

/// `d + (n - t(d-1)) / (r - (t-1)d)`: subfamilies at least this large
/// contain an intersecting `(d+1)`-tuple in the product construction.
pub fn product_p_bound(n: u64, t: u64, d: u64, r: u64) -> Result<BigRational> {
    let shift = (t - 1) * d;
    if r <= shift {
        return Err(Error::domain(format!("need r > (t-1)d, got r={r}, t={t}, d={d}")));
    }
    let num = BigInt::from(n) - BigInt::from(t) * (BigInt::from(d) - 1);
    Ok(BigRational::from_integer(d.into()) + BigRational::new(num, BigInt::from(r - shift)))
}

/// `d + floor((n - d) / (r + 1))`, the independence number of the Eckhoff
/// hypergraph.
pub fn eckhoff_independence(n: u64, d: u64, r: u64) -> u64 {
    d + (n - d) / (r + 1)
}

/// Which closed form a [`BoundSpec`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    FractionalHelly,
    GD,
    Turan,
    ProductThreshold,
}

/// A bound together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub kind: BoundKind,
    pub n: u64,
    pub d: u64,
    pub t: u64,
    pub r: u64,
}

impl BoundSpec {
    /// The bound as an exact rational; domain violations are errors.
    pub fn evaluate(&self) -> Result<BigRational> {
        let int = |v: BigInt| BigRational::from_integer(v);
        match self.kind {
            BoundKind::FractionalHelly => frachel_bound(self.n, self.d, self.r).map(int),
            BoundKind::GD => g_d(self.n, self.t, self.r, self.d).map(int),
            BoundKind::Turan => turan_bound(self.n, self.t).map(int),
            BoundKind::ProductThreshold => {
                let d = u32::try_from(self.d).map_err(|_| Error::domain("d too large"))?;
                let t = u32::try_from(self.t).map_err(|_| Error::domain("t too large"))?;
                product_threshold(d, t)
            }
        }
    }
}
