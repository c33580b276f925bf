//! Exact two-phase primal simplex over rationals with Bland's anti-cycling
//! rule.
//!
//! Instances are minimization problems over nonnegative variables with
//! equality and `>=` rows. Every optimal result carries exact primal and
//! dual solutions, and the solver verifies primal feasibility, dual
//! feasibility, and strong duality before returning; an optimum that fails
//! any of these is reported as an internal error, never silently returned.
//!
//! A solved instance can be re-minimized under a new objective without
//! repeating phase 1 (the feasible basis is kept), which is what the
//! "n linear programs per quasicode" workloads need.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

/// `min objective . x` subject to `eq_rows`, `ge_rows`, and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgramInstance {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub eq_rows: Vec<(Vec<Rat>, Rat)>,
    pub ge_rows: Vec<(Vec<Rat>, Rat)>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: Rat,
    pub primal: Vec<Rat>,
    /// Dual multipliers for the equality rows (free sign).
    pub dual_eq: Vec<Rat>,
    /// Dual multipliers for the `>=` rows (nonnegative).
    pub dual_ge: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal(Box<LpSolution>),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// Row bookkeeping: where each original row went in the working tableau.
#[derive(Debug, Clone, Copy)]
enum RowState {
    Kept { tableau_row: usize, negated: bool },
    /// Redundant equality discovered in phase 1; its dual multiplier is 0.
    Dropped,
}

/// A phase-1-complete instance holding a feasible basis, ready to minimize
/// arbitrary objectives over the fixed constraint set.
pub struct PreparedLp {
    instance: LinearProgramInstance,
    /// columns: structural variables then one surplus column per ge row
    ncols: usize,
    /// tableau in basis-solved form: rows[r] = B^-1 A with rhs appended
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    row_states: Vec<RowState>,
    /// equality-form matrix (sign-normalized), kept for dual extraction
    eq_form: Vec<Vec<Rat>>,
}

enum PivotEnd {
    Optimal,
    Unbounded,
}

impl PreparedLp {
    /// Runs phase 1. `Ok(None)` means the constraints are infeasible.
    pub fn new(instance: LinearProgramInstance) -> Result<Option<Self>> {
        let nv = instance.num_vars;
        if instance.objective.len() != nv {
            return Err(Error::InvalidParameter("objective length mismatch".into()));
        }
        for (row, _) in instance.eq_rows.iter().chain(&instance.ge_rows) {
            if row.len() != nv {
                return Err(Error::InvalidParameter("constraint row length mismatch".into()));
            }
        }
        let n_ge = instance.ge_rows.len();
        let m = instance.eq_rows.len() + n_ge;
        let ncols = nv + n_ge;

        // equality form: [structural | surplus], rhs sign-normalized
        let mut eq_form = Vec::with_capacity(m);
        let mut rhs_col = Vec::with_capacity(m);
        let mut negated = Vec::with_capacity(m);
        for (i, (row, b)) in instance.eq_rows.iter().chain(&instance.ge_rows).enumerate() {
            let mut full = vec![Rat::zero(); ncols];
            full[..nv].clone_from_slice(row);
            if i >= instance.eq_rows.len() {
                full[nv + (i - instance.eq_rows.len())] = -Rat::one();
            }
            let flip = b.is_negative();
            if flip {
                for v in full.iter_mut() {
                    *v = -v.clone();
                }
            }
            rhs_col.push(if flip { -b.clone() } else { b.clone() });
            negated.push(flip);
            eq_form.push(full);
        }

        // phase-1 tableau with one artificial per row
        let total = ncols + m;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
        for (r, form) in eq_form.iter().enumerate() {
            let mut row = Vec::with_capacity(total + 1);
            row.extend(form.iter().cloned());
            for a in 0..m {
                row.push(if a == r { Rat::one() } else { Rat::zero() });
            }
            row.push(rhs_col[r].clone());
            rows.push(row);
        }
        let mut basis: Vec<usize> = (0..m).map(|r| ncols + r).collect();

        let mut phase1_costs = vec![Rat::zero(); total];
        for c in phase1_costs.iter_mut().skip(ncols) {
            *c = Rat::one();
        }
        let mut work = Tableau { rows: &mut rows, basis: &mut basis, ncols: total };
        let (end, value) = work.minimize(&phase1_costs);
        if matches!(end, PivotEnd::Unbounded) {
            return Err(Error::Internal("phase 1 cannot be unbounded".into()));
        }
        if !value.is_zero() {
            return Ok(None);
        }

        // drive remaining artificials out of the basis; rows that cannot
        // pivot are redundant and get dropped
        let mut drop_rows = Vec::new();
        for r in 0..m {
            if basis[r] >= ncols {
                let pivot_col = (0..ncols).find(|&c| !rows[r][c].is_zero());
                match pivot_col {
                    Some(c) => {
                        let mut work =
                            Tableau { rows: &mut rows, basis: &mut basis, ncols: total };
                        work.pivot(r, c);
                    }
                    None => drop_rows.push(r),
                }
            }
        }

        let mut row_states = Vec::with_capacity(m);
        let mut kept_rows = Vec::new();
        let mut kept_basis = Vec::new();
        let mut kept_eq_form = Vec::new();
        let mut kept_index = 0;
        for r in 0..m {
            if drop_rows.contains(&r) {
                row_states.push(RowState::Dropped);
            } else {
                row_states.push(RowState::Kept { tableau_row: kept_index, negated: negated[r] });
                let mut row: Vec<Rat> = rows[r][..ncols].to_vec();
                row.push(rows[r][total].clone());
                kept_rows.push(row);
                kept_basis.push(basis[r]);
                kept_eq_form.push(eq_form[r].clone());
                kept_index += 1;
            }
        }

        Ok(Some(Self {
            instance,
            ncols,
            rows: kept_rows,
            basis: kept_basis,
            row_states,
            eq_form: kept_eq_form,
        }))
    }

    pub fn instance(&self) -> &LinearProgramInstance {
        &self.instance
    }

    /// Phase 2 from the current feasible basis under the instance objective.
    pub fn solve(&mut self) -> Result<LpOutcome> {
        let objective = self.instance.objective.clone();
        self.minimize(&objective)
    }

    /// Phase 2 from the current feasible basis under a replacement
    /// objective over the structural variables.
    pub fn minimize(&mut self, objective: &[Rat]) -> Result<LpOutcome> {
        if objective.len() != self.instance.num_vars {
            return Err(Error::InvalidParameter("objective length mismatch".into()));
        }
        let mut costs = vec![Rat::zero(); self.ncols];
        costs[..objective.len()].clone_from_slice(objective);
        let (end, value) = {
            let mut work =
                Tableau { rows: &mut self.rows, basis: &mut self.basis, ncols: self.ncols };
            work.minimize(&costs)
        };
        if matches!(end, PivotEnd::Unbounded) {
            return Ok(LpOutcome::Unbounded);
        }

        // primal solution
        let mut x = vec![Rat::zero(); self.ncols];
        for (r, &b) in self.basis.iter().enumerate() {
            x[b] = self.rows[r][self.ncols].clone();
        }
        let primal: Vec<Rat> = x[..self.instance.num_vars].to_vec();

        // dual solution: solve B^t y = c_B over the kept rows
        let m = self.rows.len();
        let mut bt = vec![vec![Rat::zero(); m + 1]; m];
        for (j, &bv) in self.basis.iter().enumerate() {
            for i in 0..m {
                bt[j][i] = self.eq_form[i][bv].clone();
            }
            bt[j][m] = costs[bv].clone();
        }
        let y = gaussian_solve(&mut bt)
            .ok_or_else(|| Error::Internal("singular basis during dual extraction".into()))?;

        // map kept-row duals back to the original rows
        let n_eq = self.instance.eq_rows.len();
        let mut dual_eq = vec![Rat::zero(); n_eq];
        let mut dual_ge = vec![Rat::zero(); self.instance.ge_rows.len()];
        for (orig, state) in self.row_states.iter().enumerate() {
            if let RowState::Kept { tableau_row, negated } = *state {
                let v = if negated { -y[tableau_row].clone() } else { y[tableau_row].clone() };
                if orig < n_eq {
                    dual_eq[orig] = v;
                } else {
                    dual_ge[orig - n_eq] = v;
                }
            }
        }

        let solution = LpSolution { value, primal, dual_eq, dual_ge };
        self.verify(&solution, objective)?;
        Ok(LpOutcome::Optimal(Box::new(solution)))
    }

    /// Exact optimality certificate: primal feasibility, dual feasibility,
    /// complementary value equality.
    fn verify(&self, s: &LpSolution, objective: &[Rat]) -> Result<()> {
        let inst = &self.instance;
        let dot = |row: &[Rat], x: &[Rat]| -> Rat {
            row.iter().zip(x).filter(|(r, _)| !r.is_zero()).map(|(r, xi)| r * xi).sum()
        };
        if s.primal.iter().any(|v| v.is_negative()) {
            return Err(Error::Internal("negative primal variable".into()));
        }
        for (row, b) in &inst.eq_rows {
            if &dot(row, &s.primal) != b {
                return Err(Error::Internal("primal violates an equality row".into()));
            }
        }
        for (row, b) in &inst.ge_rows {
            if &dot(row, &s.primal) < b {
                return Err(Error::Internal("primal violates an inequality row".into()));
            }
        }
        let primal_value = dot(objective, &s.primal);
        if primal_value != s.value {
            return Err(Error::Internal("objective value mismatch".into()));
        }
        // dual feasibility: y_ge >= 0 and A^t y <= c
        if s.dual_ge.iter().any(|v| v.is_negative()) {
            return Err(Error::Internal("negative dual on a >= row".into()));
        }
        for j in 0..inst.num_vars {
            let mut acc = Rat::zero();
            for ((row, _), y) in inst.eq_rows.iter().zip(&s.dual_eq) {
                if !row[j].is_zero() {
                    acc += &row[j] * y;
                }
            }
            for ((row, _), y) in inst.ge_rows.iter().zip(&s.dual_ge) {
                if !row[j].is_zero() {
                    acc += &row[j] * y;
                }
            }
            if acc > objective[j] {
                return Err(Error::Internal("dual infeasible".into()));
            }
        }
        // strong duality
        let mut dual_value = Rat::zero();
        for ((_, b), y) in inst.eq_rows.iter().zip(&s.dual_eq) {
            dual_value += b * y;
        }
        for ((_, b), y) in inst.ge_rows.iter().zip(&s.dual_ge) {
            dual_value += b * y;
        }
        if dual_value != s.value {
            return Err(Error::Internal("strong duality violated".into()));
        }
        Ok(())
    }
}

struct Tableau<'a> {
    rows: &'a mut Vec<Vec<Rat>>,
    basis: &'a mut Vec<usize>,
    ncols: usize,
}

impl Tableau<'_> {
    fn pivot(&mut self, r: usize, c: usize) {
        let pv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &pv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule: enter the lowest-index improving column; leave on the
    /// lowest-index basis variable among the ratio-test ties.
    fn minimize(&mut self, costs: &[Rat]) -> (PivotEnd, Rat) {
        let m = self.rows.len();
        // reduced costs: c - c_B B^-1 A, maintained as an explicit row
        let mut obj = vec![Rat::zero(); self.ncols + 1];
        obj[..costs.len()].clone_from_slice(costs);
        for r in 0..m {
            let cb = costs[self.basis[r]].clone();
            if !cb.is_zero() {
                for (o, v) in obj.iter_mut().zip(&self.rows[r]) {
                    if !v.is_zero() {
                        *o -= &cb * v;
                    }
                }
            }
        }
        loop {
            let Some(enter) = (0..self.ncols).find(|&j| obj[j].is_negative()) else {
                return (PivotEnd::Optimal, -obj[self.ncols].clone());
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..m {
                if self.rows[r][enter].is_positive() {
                    let ratio = &self.rows[r][self.ncols] / &self.rows[r][enter];
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return (PivotEnd::Unbounded, Rat::zero());
            };
            self.pivot(r, enter);
            // update the reduced-cost row with the normalized pivot row
            let factor = obj[enter].clone();
            if !factor.is_zero() {
                let pivot_row = self.rows[r].clone();
                for (o, v) in obj.iter_mut().zip(&pivot_row) {
                    if !v.is_zero() {
                        *o -= &factor * v;
                    }
                }
            }
        }
    }
}

/// Solves a square system given as rows `[a | b]`; returns `None` when
/// singular.
fn gaussian_solve(aug: &mut [Vec<Rat>]) -> Option<Vec<Rat>> {
    let m = aug.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let pv = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            if !v.is_zero() {
                *v /= &pv;
            }
        }
        for r in 0..m {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (v, p) in aug[r].iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
        }
    }
    Some((0..m).map(|r| aug[r][m].clone()).collect())
}

/// One-shot solve: phase 1, then phase 2 under the instance objective.
pub fn solve_lp(instance: &LinearProgramInstance) -> Result<LpOutcome> {
    match PreparedLp::new(instance.clone())? {
        None => Ok(LpOutcome::Infeasible),
        Some(mut prepared) => prepared.solve(),
    }
}
