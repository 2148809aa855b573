//! Small dense two-phase simplex with Bland's rule.
//!
//! Sized for the correlated-equilibrium programs in this crate (16 variables,
//! a few dozen rows); no attempt is made at sparsity or numerical scaling.

use crate::error::{Error, Result};

/// Feasibility and optimality tolerance.
pub const LP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `maximize c·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>) -> Self {
        LinearProgram {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_objective(&mut self, objective: Vec<f64>) {
        assert_eq!(objective.len(), self.num_vars());
        self.objective = objective;
    }

    pub fn add(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width mismatch");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn maximize(&self) -> Result<LpSolution> {
        Tableau::build(self).solve(std::slice::from_ref(&self.objective))
    }

    /// Optimal solution whose coordinates are lexicographically smallest
    /// among all optima.
    ///
    /// Each later stage only pivots on columns whose reduced cost is zero
    /// for every earlier objective, so earlier optima are kept exactly.
    pub fn maximize_lexmin(&self) -> Result<LpSolution> {
        let mut objectives = vec![self.objective.clone()];
        for k in 0..self.num_vars() {
            let mut obj = vec![0.0; self.num_vars()];
            obj[k] = -1.0;
            objectives.push(obj);
        }
        Tableau::build(self).solve(&objectives)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Tableau {
    /// `rows[r]` holds the constraint coefficients followed by the rhs.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    n_struct: usize,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        let n_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let width = n + n_slack + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = n;
        for (r, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![0.0; width];
            row[..n].copy_from_slice(&c.coeffs);
            row[width - 1] = c.rhs;
            let mut rel = c.relation;
            if c.rhs < 0.0 {
                row.iter_mut().for_each(|v| *v = -*v);
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            match rel {
                Relation::Le => {
                    row[slack] = 1.0;
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -1.0;
                    slack += 1;
                    row[n + n_slack + r] = 1.0;
                    basis.push(n + n_slack + r);
                }
                Relation::Eq => {
                    row[n + n_slack + r] = 1.0;
                    basis.push(n + n_slack + r);
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            n_struct: n,
            first_artificial: n + n_slack,
        }
    }

    fn width(&self) -> usize {
        self.first_artificial + self.rows.len()
    }

    fn rhs(&self, r: usize) -> f64 {
        *self.rows[r].last().unwrap()
    }

    fn pivot(&mut self, r: usize, col: usize, cost: &mut [f64]) {
        let p = self.rows[r][col];
        self.rows[r].iter_mut().for_each(|v| *v /= p);
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k != r {
                let f = row[col];
                if f != 0.0 {
                    row.iter_mut()
                        .zip(&pivot_row)
                        .for_each(|(v, pv)| *v -= f * pv);
                }
            }
        }
        self.basis[r] = col;
        self.pivot_cost(r, col, cost);
    }

    /// Eliminates `col` from a cost row after row `r` was pivoted on it.
    fn pivot_cost(&self, r: usize, col: usize, cost: &mut [f64]) {
        let f = cost[col];
        if f != 0.0 {
            cost.iter_mut()
                .zip(&self.rows[r])
                .for_each(|(v, pv)| *v -= f * pv);
        }
    }

    /// Reduced-cost row for `objective` (indexed by column, rhs slot last
    /// holding minus the current value).
    fn reduced_costs(&self, objective: &[f64]) -> Vec<f64> {
        let mut cost = vec![0.0; self.width() + 1];
        cost[..objective.len()].copy_from_slice(objective);
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                cost.iter_mut()
                    .zip(&self.rows[r])
                    .for_each(|(v, rv)| *v -= cb * rv);
            }
        }
        cost
    }

    /// Bland's rule iterations over columns `< limit` that are neutral for
    /// every `frozen` cost row.
    fn iterate(&mut self, cost: &mut [f64], frozen: &mut [Vec<f64>], limit: usize) -> Result<()> {
        loop {
            let Some(col) = (0..limit)
                .find(|&j| cost[j] > LP_TOL && frozen.iter().all(|f| f[j].abs() <= LP_TOL))
            else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][col];
                if a > LP_TOL {
                    let ratio = self.rhs(r) / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - LP_TOL
                                || (ratio <= lratio + LP_TOL && self.basis[r] < self.basis[lr])
                            {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::Unbounded);
            };
            self.pivot(r, col, cost);
            for f in frozen.iter_mut() {
                self.pivot_cost(r, col, f);
            }
        }
    }

    /// Optimizes `objectives` in priority order; the reported value is for
    /// the first.
    fn solve(mut self, objectives: &[Vec<f64>]) -> Result<LpSolution> {
        let width = self.width();
        // phase 1: maximize −Σ artificials
        let mut phase1 = vec![0.0; width];
        phase1[self.first_artificial..]
            .iter_mut()
            .for_each(|v| *v = -1.0);
        let mut cost = self.reduced_costs(&phase1);
        self.iterate(&mut cost, &mut [], width)?;
        let infeasibility: f64 = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= self.first_artificial)
            .map(|(r, _)| self.rhs(r))
            .sum();
        if infeasibility > LP_TOL * (1.0 + self.rows.len() as f64) {
            return Err(Error::Infeasible);
        }

        // drive artificials out of the basis; drop redundant rows
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| self.rows[r][j].abs() > LP_TOL) {
                    Some(col) => {
                        let mut dummy = vec![0.0; width + 1];
                        self.pivot(r, col, &mut dummy);
                    }
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }

        // phase 2, one stage per objective
        let limit = self.first_artificial;
        let mut frozen: Vec<Vec<f64>> = Vec::new();
        for objective in objectives {
            let mut cost = self.reduced_costs(objective);
            self.iterate(&mut cost, &mut frozen, limit)?;
            frozen.push(cost);
        }

        let mut x = vec![0.0; self.n_struct];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                x[b] = self.rhs(r).max(0.0);
            }
        }
        Ok(LpSolution {
            value: dot(&objectives[0], &x),
            x,
        })
    }
}
