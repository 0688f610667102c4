//! Exact matrix rank by fraction-free (Bareiss) elimination.
//!
//! The elimination first runs on `i128` with checked arithmetic. Every
//! intermediate Bareiss entry is a minor of the input, so the fast path is
//! exact whenever it completes; on overflow the computation restarts on
//! arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Rank over the rationals of an integer matrix given as rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let wide: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match bareiss_i128(wide) {
        Some(r) => r,
        None => bareiss_big(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

/// `None` on overflow.
fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // smallest nonzero pivot keeps the entries small
        let Some(p) = (r..nrows)
            .filter(|&i| m[i][c] != 0)
            .min_by_key(|&i| m[i][c].unsigned_abs())
        else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c];
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let a = row[c];
            if a == 0 && pivot == prev {
                continue;
            }
            for j in c + 1..ncols {
                let lhs = pivot.checked_mul(row[j])?;
                let rhs = a.checked_mul(pivot_row[j])?;
                row[j] = lhs.checked_sub(rhs)? / prev;
            }
            row[c] = 0;
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()))
        else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let a = row[c].clone();
            if a.is_zero() && pivot == prev {
                continue;
            }
            for j in c + 1..ncols {
                row[j] = (&pivot * &row[j] - &a * &pivot_row[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}
