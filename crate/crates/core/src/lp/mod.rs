//! Linear programs over exact rationals.
//!
//! Models are minimizations with `≤`, `≥` and `=` rows and finite lower
//! bounds on every variable (default 0). [`solve`] runs a two-phase dense
//! tableau simplex and re-checks the optimum by substitution before
//! returning it.

mod simplex;

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

pub use simplex::solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// One row `Σ coeffs · x  REL  rhs`. Coefficients are stored sparsely with
/// strictly increasing variable indices and no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rat)>,
    pub relation: Relation,
    pub rhs: Rat,
    pub label: Option<String>,
}

impl Constraint {
    /// Left-hand side evaluated at `x`.
    pub fn lhs(&self, x: &[Rat]) -> Rat {
        self.coeffs.iter().map(|(j, a)| a * &x[*j]).sum()
    }

    pub fn is_satisfied(&self, x: &[Rat]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    num_vars: usize,
    objective: Vec<Rat>,
    constraints: Vec<Constraint>,
    lower_bounds: Vec<Rat>,
    var_labels: Vec<Option<String>>,
}

impl LpModel {
    /// A model with `num_vars` nonnegative variables and a zero objective.
    pub fn new(num_vars: usize) -> LpModel {
        LpModel {
            num_vars,
            objective: vec![Rat::zero(); num_vars],
            constraints: Vec::new(),
            lower_bounds: vec![Rat::zero(); num_vars],
            var_labels: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn objective(&self) -> &[Rat] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn lower_bounds(&self) -> &[Rat] {
        &self.lower_bounds
    }

    pub fn var_label(&self, j: usize) -> Option<&str> {
        self.var_labels[j].as_deref()
    }

    /// Adds a fresh variable and returns its index.
    pub fn add_var(&mut self, cost: Rat, lower: Rat, label: Option<String>) -> usize {
        self.num_vars += 1;
        self.objective.push(cost);
        self.lower_bounds.push(lower);
        self.var_labels.push(label);
        self.num_vars - 1
    }

    pub fn set_objective(&mut self, j: usize, cost: Rat) {
        self.objective[j] = cost;
    }

    pub fn set_lower_bound(&mut self, j: usize, lower: Rat) {
        self.lower_bounds[j] = lower;
    }

    pub fn set_var_label(&mut self, j: usize, label: impl Into<String>) {
        self.var_labels[j] = Some(label.into());
    }

    /// Adds a row; repeated indices are summed and zeros dropped.
    ///
    /// Panics if a variable index is out of range.
    pub fn add_constraint<I>(&mut self, terms: I, relation: Relation, rhs: Rat) -> usize
    where
        I: IntoIterator<Item = (usize, Rat)>,
    {
        let mut coeffs: Vec<(usize, Rat)> = terms.into_iter().collect();
        for (j, _) in &coeffs {
            assert!(*j < self.num_vars, "variable index {j} out of range");
        }
        coeffs.sort_by_key(|(j, _)| *j);
        let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(coeffs.len());
        for (j, a) in coeffs {
            match merged.last_mut() {
                Some((k, b)) if *k == j => *b += a,
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_zero());
        self.constraints.push(Constraint { coeffs: merged, relation, rhs, label: None });
        self.constraints.len() - 1
    }

    pub fn set_constraint_label(&mut self, row: usize, label: impl Into<String>) {
        self.constraints[row].label = Some(label.into());
    }

    /// Dense coefficient vector of row `i`.
    pub fn row_dense(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.num_vars];
        for (j, a) in &self.constraints[i].coeffs {
            v[*j] = a.clone();
        }
        v
    }

    pub fn objective_value(&self, x: &[Rat]) -> Rat {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Checks bounds and every row exactly; returns the first offending row
    /// (or `None` for a bound violation) on failure.
    pub fn check_feasible(&self, x: &[Rat]) -> Result<(), Option<usize>> {
        if x.len() != self.num_vars || x.iter().zip(&self.lower_bounds).any(|(v, l)| v < l) {
            return Err(None);
        }
        match self.constraints.iter().position(|c| !c.is_satisfied(x)) {
            Some(i) => Err(Some(i)),
            None => Ok(()),
        }
    }

    /// Debug dump: one line per constraint, `c_1 ... c_k REL rhs`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.constraints.len() {
            let row = self.row_dense(i);
            let c = &self.constraints[i];
            for a in &row {
                let _ = write!(out, "{a} ");
            }
            let _ = writeln!(out, "{} {}", c.relation, c.rhs);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { value: Rat, assignment: Vec<Rat> },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal { .. } => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
            LpSolution::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn assignment(&self) -> Option<&[Rat]> {
        match self {
            LpSolution::Optimal { assignment, .. } => Some(assignment),
            _ => None,
        }
    }

    pub fn into_optimum(self) -> Option<(Rat, Vec<Rat>)> {
        match self {
            LpSolution::Optimal { value, assignment } => Some((value, assignment)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn merges_and_drops_zeros() {
        let mut m = LpModel::new(3);
        m.add_constraint([(2, rat(1, 1)), (0, rat(2, 1)), (2, rat(-1, 1))], Relation::Le, rat(4, 1));
        assert_eq!(m.constraints()[0].coeffs, vec![(0, rat(2, 1))]);
        assert_eq!(m.dump(), "2 0 0 <= 4\n");
    }
}
