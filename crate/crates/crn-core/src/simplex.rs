//! Exact two-phase simplex over rationals.
//!
//! Sized for the tiny LPs arising in cone and weight-vector checks
//! (tens of variables); Bland's rule guarantees termination.

use crate::exact::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { objective: Rat, x: Vec<Rat> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

/// An LP over nonnegative variables: optimize `c·x` s.t. rows `a_i · x ⋈ b_i`.
///
/// Free variables are not modeled directly; callers split them into
/// differences of nonnegative pairs.
#[derive(Clone, Debug, Default)]
pub struct Lp {
    pub num_vars: usize,
    pub rows: Vec<(Vec<Rat>, Cmp, Rat)>,
    pub objective: Vec<Rat>,
}

impl Lp {
    pub fn new(num_vars: usize) -> Self {
        Lp {
            num_vars,
            rows: Vec::new(),
            objective: vec![Rat::zero(); num_vars],
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rat>, cmp: Cmp, rhs: Rat) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push((coeffs, cmp, rhs));
    }

    pub fn maximize(mut self, objective: Vec<Rat>) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        solve(&self)
    }

    /// Feasibility check with zero objective.
    pub fn feasible(self) -> bool {
        matches!(solve(&self), LpOutcome::Optimal { .. })
    }
}

struct Tableau {
    /// m rows of n coefficients plus rhs in the last column.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..self.rows.len() {
            if r != row && !self.rows[r][col].is_zero() {
                let factor = self.rows[r][col].clone();
                for c in 0..=self.ncols {
                    let delta = &factor * &self.rows[row][c];
                    self.rows[r][c] = &self.rows[r][c] - delta;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximize `cost` with Bland's rule; returns false on unboundedness.
    fn optimize(&mut self, cost: &[Rat]) -> bool {
        loop {
            // reduced costs r_j = c_j - c_B · column_j
            let mut entering = None;
            for j in 0..self.ncols {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rj = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() && !self.rows[i][j].is_zero() {
                        rj -= &cost[bi] * &self.rows[i][j];
                    }
                }
                if rj.is_positive() {
                    entering = Some(j);
                    break; // Bland: smallest improving index
                }
            }
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = &self.rows[i][self.ncols] / &self.rows[i][col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, cost: &[Rat]) -> Rat {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &bi)| &cost[bi] * &self.rows[i][self.ncols])
            .sum()
    }

    fn solution(&self, num_vars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); num_vars];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < num_vars {
                x[bi] = self.rows[i][self.ncols].clone();
            }
        }
        x
    }
}

fn solve(lp: &Lp) -> LpOutcome {
    let n = lp.num_vars;
    // slack/surplus columns for inequality rows
    let num_slack = lp
        .rows
        .iter()
        .filter(|(_, cmp, _)| *cmp != Cmp::Eq)
        .count();
    let m = lp.rows.len();
    let total = n + num_slack + m; // artificials last
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack_idx = n;
    for (i, (coeffs, cmp, rhs)) in lp.rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); total + 1];
        let flip = rhs.is_negative();
        let sgn = if flip { -Rat::one() } else { Rat::one() };
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = c * &sgn;
        }
        row[total] = rhs * &sgn;
        match cmp {
            Cmp::Le | Cmp::Ge => {
                // a·x + s = b for Le, a·x - s = b for Ge (before sign flip)
                let mut s = if *cmp == Cmp::Le { Rat::one() } else { -Rat::one() };
                if flip {
                    s = -s;
                }
                row[slack_idx] = s;
                slack_idx += 1;
            }
            Cmp::Eq => {}
        }
        // artificial variable keeps an identity basis for phase 1
        row[n + num_slack + i] = Rat::one();
        basis.push(n + num_slack + i);
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        basis,
        ncols: total,
    };

    // phase 1: maximize minus the sum of artificials
    let mut phase1 = vec![Rat::zero(); total];
    for c in phase1.iter_mut().skip(n + num_slack) {
        *c = -Rat::one();
    }
    if !t.optimize(&phase1) {
        unreachable!("phase 1 objective is bounded");
    }
    if !t.objective_value(&phase1).is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis
    for i in 0..t.rows.len() {
        if t.basis[i] >= n + num_slack {
            if let Some(col) = (0..n + num_slack).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
            }
            // otherwise the row is redundant; the artificial stays basic at 0
        }
    }

    // phase 2; artificial columns are forbidden via strongly negative cost
    let mut cost = vec![Rat::zero(); total];
    cost[..n].clone_from_slice(&lp.objective);
    let big = Rat::from_integer(num_bigint::BigInt::from(1i64 << 60))
        * (Rat::one()
            + lp.objective
                .iter()
                .map(|c| c.abs())
                .fold(Rat::zero(), |a, b| if b > a { b } else { a }));
    for c in cost.iter_mut().skip(n + num_slack) {
        *c = -big.clone();
    }
    if !t.optimize(&cost) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        objective: t.objective_value(&cost),
        x: t.solution(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    #[test]
    fn simple_max() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = Lp::new(2);
        lp.constrain(vec![rat(1), rat(2)], Cmp::Le, rat(4));
        lp.constrain(vec![rat(3), rat(1)], Cmp::Le, rat(6));
        match lp.maximize(vec![rat(1), rat(1)]) {
            LpOutcome::Optimal { objective, x } => {
                assert_eq!(objective, rat_frac(14, 5));
                assert_eq!(x, vec![rat_frac(8, 5), rat_frac(6, 5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        let mut lp = Lp::new(1);
        lp.constrain(vec![rat(1)], Cmp::Ge, rat(2));
        lp.constrain(vec![rat(1)], Cmp::Le, rat(1));
        assert_eq!(lp.maximize(vec![rat(0)]), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = Lp::new(1);
        lp.constrain(vec![rat(1)], Cmp::Ge, rat(0));
        assert_eq!(lp.maximize(vec![rat(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_rows() {
        // max y s.t. x + y = 3, x >= 1  (via -x <= -1)
        let mut lp = Lp::new(2);
        lp.constrain(vec![rat(1), rat(1)], Cmp::Eq, rat(3));
        lp.constrain(vec![rat(1), rat(0)], Cmp::Ge, rat(1));
        match lp.maximize(vec![rat(0), rat(1)]) {
            LpOutcome::Optimal { objective, x } => {
                assert_eq!(objective, rat(2));
                assert_eq!(x, vec![rat(1), rat(2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
