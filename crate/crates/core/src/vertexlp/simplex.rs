//! Dense two-phase primal simplex over the standard-form tableau.
//!
//! Variables are implicitly nonnegative. The objective is maximized. Entering
//! and leaving choices follow Bland's rule (lowest variable index among
//! improving columns; lowest basic index among tied minimum ratios), which
//! guarantees termination on degenerate programs. Problem sizes here are tiny,
//! so the dense tableau is the right tool.

use std::fmt;

/// Entries smaller than this are treated as zero when selecting pivots.
pub const PIVOT_TOL: f64 = 1e-10;
/// Maximum allowed constraint violation of a returned witness.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Phase-1 objective threshold for declaring a program feasible.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Default pivot budget before the solver reports a stall.
pub const DEFAULT_MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintSense {
    LessEq,
    GreaterEq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqualityConstraint {
    pub coefficients: Vec<f64>,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityConstraint {
    pub coefficients: Vec<f64>,
    pub rhs: f64,
    pub sense: ConstraintSense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// Pivot budget exhausted, or the final witness failed the residual
    /// check. Never reported as a (possibly wrong) optimum.
    Stalled,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            LpStatus::Stalled => "stalled",
        };
        f.write_str(text)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub optimum: Option<f64>,
    pub witness: Option<Vec<f64>>,
    pub pivots: usize,
    pub max_residual: Option<f64>,
}

impl LpSolution {
    fn failed(status: LpStatus, pivots: usize) -> Self {
        LpSolution {
            status,
            optimum: None,
            witness: None,
            pivots,
            max_residual: None,
        }
    }

    /// One-line structured record: status, optimum, iterations, residual.
    pub fn summary(&self) -> String {
        match (self.optimum, self.max_residual) {
            (Some(opt), Some(res)) => format!(
                "status={} optimum={opt:.12e} iterations={} residual={res:.3e}",
                self.status, self.pivots
            ),
            _ => format!("status={} iterations={}", self.status, self.pivots),
        }
    }
}

/// A linear program in standard orientation: maximize `objective . x`
/// subject to the stored equality and inequality constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    pub variables: Vec<String>,
    pub objective: Vec<f64>,
    pub equalities: Vec<EqualityConstraint>,
    pub inequalities: Vec<InequalityConstraint>,
    pub solution: Option<LpSolution>,
}

impl LinearProgram {
    pub fn new(variables: Vec<String>, objective: Vec<f64>) -> Self {
        assert_eq!(variables.len(), objective.len());
        LinearProgram {
            variables,
            objective,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            solution: None,
        }
    }

    pub fn push_eq(&mut self, coefficients: Vec<f64>, rhs: f64) {
        assert_eq!(coefficients.len(), self.variables.len());
        self.equalities.push(EqualityConstraint { coefficients, rhs });
    }

    pub fn push_le(&mut self, coefficients: Vec<f64>, rhs: f64) {
        assert_eq!(coefficients.len(), self.variables.len());
        self.inequalities.push(InequalityConstraint {
            coefficients,
            rhs,
            sense: ConstraintSense::LessEq,
        });
    }

    pub fn push_ge(&mut self, coefficients: Vec<f64>, rhs: f64) {
        assert_eq!(coefficients.len(), self.variables.len());
        self.inequalities.push(InequalityConstraint {
            coefficients,
            rhs,
            sense: ConstraintSense::GreaterEq,
        });
    }

    /// Largest violation of the constraints (and of nonnegativity) at `x`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for c in &self.equalities {
            let lhs: f64 = c.coefficients.iter().zip(x).map(|(a, v)| a * v).sum();
            worst = worst.max((lhs - c.rhs).abs());
        }
        for c in &self.inequalities {
            let lhs: f64 = c.coefficients.iter().zip(x).map(|(a, v)| a * v).sum();
            let violation = match c.sense {
                ConstraintSense::LessEq => lhs - c.rhs,
                ConstraintSense::GreaterEq => c.rhs - lhs,
            };
            worst = worst.max(violation.max(0.0));
        }
        for &v in x {
            worst = worst.max(-v);
        }
        worst
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Solves with the default pivot budget.
    pub fn solve(&self) -> LpSolution {
        self.solve_with_budget(DEFAULT_MAX_PIVOTS)
    }

    pub fn solve_with_budget(&self, max_pivots: usize) -> LpSolution {
        Tableau::build(self).run(self, max_pivots)
    }
}

/// Solves a program and returns a copy with the solution slot filled.
pub fn solve_lp(lp: &LinearProgram) -> LinearProgram {
    let mut solved = lp.clone();
    solved.solution = Some(lp.solve());
    solved
}

enum RowKind {
    Eq,
    Le,
    Ge,
}

struct Tableau {
    /// m x (total + 1); the last column is the right-hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    reduced: Vec<f64>,
    value: f64,
    n_structural: usize,
    /// Structural plus slack/surplus columns; artificials may never enter.
    n_enterable: usize,
    total: usize,
    artificial_start: usize,
    pivots: usize,
}

enum PhaseOutcome {
    Done,
    Unbounded,
    OutOfPivots,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.variables.len();
        // rhs-normalized rows: flip sign so every right-hand side is >= 0
        let mut staged: Vec<(Vec<f64>, f64, RowKind)> = Vec::new();
        for c in &lp.equalities {
            if c.rhs < 0.0 {
                staged.push((c.coefficients.iter().map(|v| -v).collect(), -c.rhs, RowKind::Eq));
            } else {
                staged.push((c.coefficients.clone(), c.rhs, RowKind::Eq));
            }
        }
        for c in &lp.inequalities {
            let flip = c.rhs < 0.0;
            let (coeffs, rhs) = if flip {
                (c.coefficients.iter().map(|v| -v).collect::<Vec<_>>(), -c.rhs)
            } else {
                (c.coefficients.clone(), c.rhs)
            };
            let kind = match (c.sense, flip) {
                (ConstraintSense::LessEq, false) | (ConstraintSense::GreaterEq, true) => RowKind::Le,
                (ConstraintSense::LessEq, true) | (ConstraintSense::GreaterEq, false) => RowKind::Ge,
            };
            staged.push((coeffs, rhs, kind));
        }

        let n_slack = staged
            .iter()
            .filter(|(_, _, k)| matches!(k, RowKind::Le | RowKind::Ge))
            .count();
        let n_artificial = staged
            .iter()
            .filter(|(_, _, k)| matches!(k, RowKind::Eq | RowKind::Ge))
            .count();
        let total = n + n_slack + n_artificial;
        let artificial_start = n + n_slack;

        let mut rows = Vec::with_capacity(staged.len());
        let mut basis = Vec::with_capacity(staged.len());
        let mut next_slack = n;
        let mut next_artificial = artificial_start;
        for (coeffs, rhs, kind) in staged {
            let mut row = vec![0.0; total + 1];
            row[..n].copy_from_slice(&coeffs);
            row[total] = rhs;
            match kind {
                RowKind::Le => {
                    row[next_slack] = 1.0;
                    basis.push(next_slack);
                    next_slack += 1;
                }
                RowKind::Ge => {
                    row[next_slack] = -1.0;
                    next_slack += 1;
                    row[next_artificial] = 1.0;
                    basis.push(next_artificial);
                    next_artificial += 1;
                }
                RowKind::Eq => {
                    row[next_artificial] = 1.0;
                    basis.push(next_artificial);
                    next_artificial += 1;
                }
            }
            rows.push(row);
        }

        Tableau {
            rows,
            basis,
            reduced: vec![0.0; total],
            value: 0.0,
            n_structural: n,
            n_enterable: artificial_start,
            total,
            artificial_start,
            pivots: 0,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v /= pivot;
        }
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col];
            if factor != 0.0 {
                for j in 0..=self.total {
                    self.rows[i][j] -= factor * self.rows[row][j];
                }
                self.rows[i][col] = 0.0;
            }
        }
        let factor = self.reduced[col];
        self.value += factor * self.rows[row][self.total];
        for j in 0..self.total {
            self.reduced[j] -= factor * self.rows[row][j];
        }
        self.reduced[col] = 0.0;
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Bland: entering column is the lowest-index enterable column with a
    /// positive reduced cost; the leaving row minimizes the ratio, ties
    /// broken by the lowest basic variable index.
    fn bland_iterate(&mut self, max_pivots: usize) -> PhaseOutcome {
        loop {
            let entering = (0..self.n_enterable)
                .find(|&j| self.reduced[j] > PIVOT_TOL);
            let Some(col) = entering else {
                return PhaseOutcome::Done;
            };

            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let coeff = self.rows[i][col];
                if coeff > PIVOT_TOL {
                    let ratio = self.rows[i][self.total] / coeff;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((best_i, best)) => {
                            // strictly better ratio, or a tie resolved
                            // towards the lower basic variable index
                            let improves = ratio < best - 1e-12;
                            let tie_break = (ratio - best).abs() <= 1e-12
                                && self.basis[i] < self.basis[best_i];
                            if improves || tie_break {
                                Some((i, ratio))
                            } else {
                                Some((best_i, best))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = leave else {
                return PhaseOutcome::Unbounded;
            };
            if self.pivots >= max_pivots {
                return PhaseOutcome::OutOfPivots;
            }
            self.pivot(row, col);
        }
    }

    /// Prices the reduced-cost row for maximizing `costs` (zero-padded past
    /// the structural block) under the current basis.
    fn price(&mut self, costs: &[f64]) {
        for j in 0..self.total {
            self.reduced[j] = costs.get(j).copied().unwrap_or(0.0);
        }
        self.value = 0.0;
        for i in 0..self.rows.len() {
            let cb = costs.get(self.basis[i]).copied().unwrap_or(0.0);
            if cb != 0.0 {
                self.value += cb * self.rows[i][self.total];
                for j in 0..self.total {
                    self.reduced[j] -= cb * self.rows[i][j];
                }
            }
        }
    }

    fn run(mut self, lp: &LinearProgram, max_pivots: usize) -> LpSolution {
        if self.artificial_start < self.total {
            // phase 1: drive the artificial variables to zero
            let mut phase1_costs = vec![0.0; self.total];
            for c in phase1_costs[self.artificial_start..].iter_mut() {
                *c = -1.0;
            }
            self.price(&phase1_costs);
            match self.bland_iterate(max_pivots) {
                PhaseOutcome::Done => {}
                // the phase-1 objective is bounded; treat anything else as
                // a numerical failure
                PhaseOutcome::Unbounded | PhaseOutcome::OutOfPivots => {
                    return LpSolution::failed(LpStatus::Stalled, self.pivots)
                }
            }
            if self.value < -FEASIBILITY_TOL {
                return LpSolution::failed(LpStatus::Infeasible, self.pivots);
            }
            // pivot leftover artificials out of the basis, dropping rows
            // that turned out redundant
            let mut row = 0;
            while row < self.rows.len() {
                if self.basis[row] >= self.artificial_start {
                    let col = (0..self.n_enterable)
                        .find(|&j| self.rows[row][j].abs() > PIVOT_TOL);
                    match col {
                        Some(col) => self.pivot(row, col),
                        None => {
                            self.rows.remove(row);
                            self.basis.remove(row);
                            continue;
                        }
                    }
                }
                row += 1;
            }
        }

        // phase 2: the user's objective
        self.price(&lp.objective);
        let outcome = self.bland_iterate(max_pivots);
        match outcome {
            PhaseOutcome::Done => {}
            PhaseOutcome::Unbounded => {
                return LpSolution::failed(LpStatus::Unbounded, self.pivots)
            }
            PhaseOutcome::OutOfPivots => {
                return LpSolution::failed(LpStatus::Stalled, self.pivots)
            }
        }

        let mut witness = vec![0.0; self.n_structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_structural {
                witness[b] = self.rows[i][self.total];
            }
        }
        let residual = lp.residual(&witness);
        if residual > RESIDUAL_TOL {
            return LpSolution::failed(LpStatus::Stalled, self.pivots);
        }
        LpSolution {
            status: LpStatus::Optimal,
            optimum: Some(self.value),
            witness: Some(witness),
            pivots: self.pivots,
            max_residual: Some(residual),
        }
    }
}
