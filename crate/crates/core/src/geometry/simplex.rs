//! Two-phase simplex method over the rationals with Bland's rule.
//!
//! Free variables are split as `x = x⁺ - x⁻`. Inequality rows get a slack
//! variable; rows without an obvious feasible basic variable get an
//! artificial one, driven to zero in phase one.

use num_traits::{One, Signed, Zero};

use super::{Constraint, Relation, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, point: Vec<Q> },
}

/// Maximises `⟨objective, x⟩` subject to the constraints, `x in Q^dim`.
pub fn maximize(dim: usize, constraints: &[Constraint], objective: &[Q]) -> LpOutcome {
    assert_eq!(objective.len(), dim);
    let Some(mut tab) = Tableau::phase_one(dim, constraints) else {
        return LpOutcome::Infeasible;
    };
    let mut cost = vec![Q::zero(); tab.cols];
    for j in 0..dim {
        cost[j] = objective[j].clone();
        cost[dim + j] = -&objective[j];
    }
    match tab.optimize(&cost) {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => {
            let point = tab.point(dim);
            let value = super::dot(objective, &point);
            LpOutcome::Optimal { value, point }
        }
    }
}

/// Some point satisfying every constraint, if one exists.
pub fn feasible_point(dim: usize, constraints: &[Constraint]) -> Option<Vec<Q>> {
    Tableau::phase_one(dim, constraints).map(|t| t.point(dim))
}

enum Step {
    Optimal,
    Unbounded,
}

struct Tableau {
    /// `rows x (cols + 1)`, the last column is the right-hand side.
    a: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
    /// Columns allowed to enter the basis.
    allowed: Vec<bool>,
}

impl Tableau {
    /// Builds the tableau and runs phase one. `None` if infeasible.
    fn phase_one(dim: usize, constraints: &[Constraint]) -> Option<Self> {
        let m = constraints.len();
        let slacks: Vec<usize> = constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.rel == Relation::Le)
            .map(|(i, _)| i)
            .collect();
        let structural = 2 * dim + slacks.len();
        // rows needing an artificial: equalities, and inequalities with
        // negative right-hand side
        let needs_art: Vec<bool> = constraints
            .iter()
            .map(|c| c.rel == Relation::Eq || c.offset.is_negative())
            .collect();
        let n_art = needs_art.iter().filter(|&&b| b).count();
        let cols = structural + n_art;
        let mut a = vec![vec![Q::zero(); cols + 1]; m];
        let mut basis = vec![0; m];
        let mut next_art = structural;
        for (i, c) in constraints.iter().enumerate() {
            let sign = if c.offset.is_negative() { -Q::one() } else { Q::one() };
            for j in 0..dim {
                a[i][j] = &sign * &c.normal[j];
                a[i][dim + j] = -&sign * &c.normal[j];
            }
            if let Ok(k) = slacks.binary_search(&i) {
                a[i][2 * dim + k] = sign.clone();
                if !needs_art[i] {
                    basis[i] = 2 * dim + k;
                }
            }
            a[i][cols] = &sign * &c.offset;
            if needs_art[i] {
                a[i][next_art] = Q::one();
                basis[i] = next_art;
                next_art += 1;
            }
        }
        let mut tab = Tableau {
            a,
            basis,
            cols,
            allowed: vec![true; cols],
        };
        if n_art > 0 {
            let mut cost = vec![Q::zero(); cols];
            for c in cost.iter_mut().skip(structural) {
                *c = -Q::one();
            }
            // phase one is bounded above by zero
            let Step::Optimal = tab.optimize(&cost) else {
                unreachable!("phase one cannot be unbounded");
            };
            let infeasibility: Q = (0..tab.a.len())
                .filter(|&i| tab.basis[i] >= structural)
                .map(|i| tab.a[i][cols].clone())
                .sum();
            if !infeasibility.is_zero() {
                return None;
            }
            tab.drive_out_artificials(structural);
            for flag in tab.allowed.iter_mut().skip(structural) {
                *flag = false;
            }
        }
        Some(tab)
    }

    /// Pivots zero-level artificials out of the basis, dropping rows that
    /// turn out to be redundant.
    fn drive_out_artificials(&mut self, structural: usize) {
        let mut i = 0;
        while i < self.a.len() {
            if self.basis[i] < structural {
                i += 1;
                continue;
            }
            match (0..structural).find(|&j| !self.a[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.a.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = Q::one() / &self.a[row][col];
        for v in self.a[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.a[row].clone();
        for (i, r) in self.a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Primal simplex maximising `cost`, Bland's rule for both choices.
    fn optimize(&mut self, cost: &[Q]) -> Step {
        let rhs = self.cols;
        loop {
            let entering = (0..self.cols).find(|&j| {
                self.allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive()
            });
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.a[i][rhs] / &self.a[i][j];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return Step::Unbounded,
            }
        }
    }

    fn reduced_cost(&self, cost: &[Q], j: usize) -> Q {
        let mut r = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.a[i][j].is_zero() {
                r -= &cost[b] * &self.a[i][j];
            }
        }
        r
    }

    /// Current basic solution mapped back to `x = x⁺ - x⁻`.
    fn point(&self, dim: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); dim];
        for (i, &b) in self.basis.iter().enumerate() {
            let v = &self.a[i][self.cols];
            if b < dim {
                x[b] += v;
            } else if b < 2 * dim {
                x[b - dim] -= v;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::super::q;
    use super::*;

    fn le(n: &[i64], b: i64) -> Constraint {
        Constraint::le(n.iter().map(|&x| q(x)).collect(), q(b))
    }

    fn eq(n: &[i64], b: i64) -> Constraint {
        Constraint::eq(n.iter().map(|&x| q(x)).collect(), q(b))
    }

    #[test]
    fn textbook_lp() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18, x, y >= 0
        let cs = [
            le(&[1, 0], 4),
            le(&[0, 2], 12),
            le(&[3, 2], 18),
            le(&[-1, 0], 0),
            le(&[0, -1], 0),
        ];
        match maximize(2, &cs, &[q(3), q(5)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(36));
                assert_eq!(point, vec![q(2), q(6)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equalities_and_negative_offsets() {
        let cs = [eq(&[1, 1], -2), le(&[1, 0], -5)];
        let p = feasible_point(2, &cs).unwrap();
        assert!(cs.iter().all(|c| c.satisfied_by(&p)));
        assert_eq!(maximize(2, &cs, &[q(0), q(1)]), LpOutcome::Unbounded);
        let cs = [eq(&[1, 1], 1), eq(&[2, 2], 3)];
        assert_eq!(feasible_point(2, &cs), None);
        // redundant equalities leave an artificial at level zero
        let cs = [eq(&[1, 1], 1), eq(&[2, 2], 2), le(&[0, 1], 3)];
        match maximize(2, &cs, &[q(-1), q(0)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // many constraints through the origin
        let cs = [
            le(&[1, 1], 0),
            le(&[1, 2], 0),
            le(&[2, 1], 0),
            le(&[1, -1], 0),
            le(&[-1, 1], 0),
        ];
        match maximize(2, &cs, &[q(1), q(1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(0)),
            other => panic!("{other:?}"),
        }
    }
}
