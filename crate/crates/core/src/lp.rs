//! Exact two-phase simplex over [`Rational`].
//!
//! Dense tableau, Bland's smallest-index rule for both the entering and the
//! leaving variable, so degenerate systems terminate. Variables with a lower
//! bound are shifted to start at zero; free variables are split into the
//! difference of two nonnegative columns.

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    /// Exact check of `coeffs · x (relation) rhs`.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    /// `None` marks a free variable. Defaults to `Some(0)`.
    pub lower_bounds: Vec<Option<Rational>>,
}

impl LinearProgram {
    /// A program over `objective.len()` nonnegative variables.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            lower_bounds: vec![Some(Rational::zero()); n],
        }
    }

    pub fn minimize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn with_constraint(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn set_free(&mut self, var: usize) {
        self.lower_bounds[var] = None;
    }

    pub fn set_lower_bound(&mut self, var: usize, bound: Option<Rational>) {
        self.lower_bounds[var] = bound;
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::Invalid("linear program has no variables".into()));
        }
        if self.lower_bounds.len() != n {
            return Err(Error::dims(n, self.lower_bounds.len(), "lower bounds"));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::dims(n, c.coeffs.len(), format!("constraint {i}")));
            }
        }
        Ok(())
    }

    /// Exact feasibility of `x` against every constraint and bound.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self
                .lower_bounds
                .iter()
                .zip(x)
                .all(|(lb, xi)| lb.as_ref().is_none_or(|l| xi >= l))
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub solution: Option<Vec<Rational>>,
}

impl LpOutcome {
    fn infeasible() -> Self {
        LpOutcome {
            status: LpStatus::Infeasible,
            value: None,
            solution: None,
        }
    }

    fn unbounded() -> Self {
        LpOutcome {
            status: LpStatus::Unbounded,
            value: None,
            solution: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Solves `program` exactly.
pub fn lp_solve(program: &LinearProgram) -> Result<LpOutcome> {
    program.validate()?;
    let std = StandardForm::build(program);
    let mut tab = std.tableau;

    if std.art_start < tab.ncols {
        let mut phase1 = vec![Rational::zero(); tab.ncols];
        for c in &mut phase1[std.art_start..] {
            *c = Rational::one();
        }
        tab.load_costs(&phase1);
        // Phase one is bounded below by zero.
        let bounded = tab.run(tab.ncols);
        debug_assert!(bounded);
        if tab.value.is_positive() {
            return Ok(LpOutcome::infeasible());
        }
        tab.expel_artificials(std.art_start);
    }

    let mut phase2 = vec![Rational::zero(); tab.ncols];
    for (j, c) in program.objective.iter().enumerate() {
        let c = match program.sense {
            Sense::Minimize => c.clone(),
            Sense::Maximize => -c,
        };
        if let Some(minus) = std.minus_col[j] {
            phase2[minus] = -&c;
        }
        phase2[std.plus_col[j]] = c;
    }
    tab.load_costs(&phase2);
    if !tab.run(std.art_start) {
        return Ok(LpOutcome::unbounded());
    }

    let mut column_values = vec![Rational::zero(); tab.ncols];
    for (i, &b) in tab.basis.iter().enumerate() {
        column_values[b] = tab.rhs[i].clone();
    }
    let solution: Vec<Rational> = (0..program.num_vars())
        .map(|j| {
            let mut x = column_values[std.plus_col[j]].clone();
            if let Some(minus) = std.minus_col[j] {
                x -= &column_values[minus];
            }
            if let Some(l) = &program.lower_bounds[j] {
                x += l;
            }
            x
        })
        .collect();
    debug_assert!(program.is_feasible(&solution));
    let value = dot(&program.objective, &solution);
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        value: Some(value),
        solution: Some(solution),
    })
}

/// Decides whether the system has a solution over free variables; returns a
/// witness satisfying every constraint exactly when it does.
pub fn lp_feasible(constraints: &[Constraint], num_vars: usize) -> Result<Option<Vec<Rational>>> {
    let mut program = LinearProgram::minimize(vec![Rational::zero(); num_vars]);
    for j in 0..num_vars {
        program.set_free(j);
    }
    program.constraints = constraints.to_vec();
    let outcome = lp_solve(&program)?;
    Ok(outcome.solution)
}

struct StandardForm {
    tableau: Tableau,
    plus_col: Vec<usize>,
    minus_col: Vec<Option<usize>>,
    art_start: usize,
}

impl StandardForm {
    fn build(program: &LinearProgram) -> Self {
        let n = program.num_vars();
        let mut plus_col = Vec::with_capacity(n);
        let mut minus_col = Vec::with_capacity(n);
        let mut ncols = 0;
        for lb in &program.lower_bounds {
            plus_col.push(ncols);
            ncols += 1;
            if lb.is_none() {
                minus_col.push(Some(ncols));
                ncols += 1;
            } else {
                minus_col.push(None);
            }
        }
        let structural = ncols;

        // Shift bounds into the rhs and orient every row so that rhs >= 0.
        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = program
            .constraints
            .iter()
            .map(|c| {
                let mut rhs = c.rhs.clone();
                let mut coeffs = vec![Rational::zero(); structural];
                for (j, a) in c.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    if let Some(l) = &program.lower_bounds[j] {
                        rhs -= &(a * l);
                    }
                    if let Some(minus) = minus_col[j] {
                        coeffs[minus] = -a;
                    }
                    coeffs[plus_col[j]] = a.clone();
                }
                let mut relation = c.relation;
                if rhs.is_negative() || (rhs.is_zero() && relation == Relation::Ge) {
                    for a in &mut coeffs {
                        *a = -&*a;
                    }
                    rhs = -rhs;
                    relation = match relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                }
                (coeffs, relation, rhs)
            })
            .collect();

        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let art_start = structural + n_slack;
        let total = art_start + n_art;

        let mut tab_rows = Vec::with_capacity(rows.len());
        let mut rhs = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let (mut next_slack, mut next_art) = (structural, art_start);
        for (mut coeffs, relation, b) in rows.drain(..) {
            coeffs.resize(total, Rational::zero());
            match relation {
                Relation::Le => {
                    coeffs[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    coeffs[next_slack] = -Rational::one();
                    next_slack += 1;
                    coeffs[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    coeffs[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            tab_rows.push(coeffs);
            rhs.push(b);
        }

        StandardForm {
            tableau: Tableau {
                rows: tab_rows,
                rhs,
                basis,
                ncols: total,
                reduced: vec![Rational::zero(); total],
                value: Rational::zero(),
            },
            plus_col,
            minus_col,
            art_start,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
    reduced: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    fn load_costs(&mut self, costs: &[Rational]) {
        self.reduced = costs.to_vec();
        self.value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (d, a) in self.reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *d -= &(cb * a);
                }
            }
            self.value += &(cb * &self.rhs[i]);
        }
    }

    /// Minimizes the loaded cost row, letting only columns `< limit` enter.
    /// Returns `false` when the objective is unbounded below.
    fn run(&mut self, limit: usize) -> bool {
        loop {
            let Some(enter) = (0..limit).find(|&j| self.reduced[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        let mut pivot_row = std::mem::take(&mut self.rows[r]);
        let nonzero: Vec<usize> = (0..self.ncols)
            .filter(|&k| !pivot_row[k].is_zero())
            .collect();
        for &k in &nonzero {
            pivot_row[k] *= &inv;
        }
        self.rhs[r] *= &inv;
        let pivot_rhs = self.rhs[r].clone();

        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &nonzero {
                row[k] -= &(&f * &pivot_row[k]);
            }
            self.rhs[i] -= &(&f * &pivot_rhs);
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for &k in &nonzero {
                self.reduced[k] -= &(&f * &pivot_row[k]);
            }
            self.value += &(&f * &pivot_rhs);
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// After a zero-valued phase one, pivots basic artificials out on any
    /// nonzero structural or slack entry; rows with none are redundant.
    fn expel_artificials(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < art_start {
                i += 1;
                continue;
            }
            match (0..art_start).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.swap_remove(i);
                    self.rhs.swap_remove(i);
                    self.basis.swap_remove(i);
                }
            }
        }
    }
}
