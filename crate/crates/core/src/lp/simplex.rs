//! Two-phase dense tableau simplex over `Rat`.
//!
//! Pricing is Dantzig's rule (most negative reduced cost). A long run of
//! degenerate pivots switches to Bland's rule until the objective moves
//! again; Bland cannot cycle, so every degenerate run is finite. Ratio-test
//! ties always go to the smallest basic variable index.

use super::{LpModel, LpSolution, Relation};
use crate::rat::Rat;

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_RUN_LIMIT: usize = 50;

struct Tableau {
    /// `m` rows of `ncols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Rat>>,
    /// Reduced costs; the last entry is minus the current objective value.
    obj: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        let width = self.ncols + 1;
        let mut nz: Vec<usize> = Vec::new();
        {
            let row = &mut self.rows[r];
            for k in 0..width {
                if !row[k].is_zero() {
                    row[k] = &row[k] * &inv;
                    nz.push(k);
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &nz {
                row[k] -= &f * &pivot_row[k];
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &k in &nz {
                self.obj[k] -= &f * &pivot_row[k];
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs simplex iterations on the current objective row, considering
    /// only columns `< allowed` as entering candidates.
    fn run(&mut self, allowed: usize) -> PhaseEnd {
        let rhs = self.ncols;
        let mut degenerate_run = 0usize;
        let mut bland = false;
        loop {
            let entering = if bland {
                (0..allowed).find(|&j| self.obj[j].is_negative())
            } else {
                let mut best: Option<usize> = None;
                for j in 0..allowed {
                    if self.obj[j].is_negative() && best.map_or(true, |b| self.obj[j] < self.obj[b]) {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(c) = entering else {
                return PhaseEnd::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return PhaseEnd::Unbounded;
            };
            if ratio.is_zero() {
                degenerate_run += 1;
                if degenerate_run >= DEGENERATE_RUN_LIMIT {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
                bland = false;
            }
            self.pivot(r, c);
        }
    }
}

/// Solves `model` exactly.
///
/// Panics if the optimum found fails substitution into the model, which
/// would indicate a solver bug rather than a property of the input.
pub fn solve(model: &LpModel) -> LpSolution {
    let n = model.num_vars();
    let lb = model.lower_bounds();

    // Shift x = lb + x' and orient every row with a nonnegative rhs.
    struct Row {
        coeffs: Vec<(usize, Rat)>,
        rel: Relation,
        rhs: Rat,
    }
    let mut rows: Vec<Row> = Vec::with_capacity(model.constraints().len());
    for c in model.constraints() {
        let shift: Rat = c.coeffs.iter().map(|(j, a)| a * &lb[*j]).sum();
        let mut rhs = &c.rhs - &shift;
        let mut coeffs = c.coeffs.clone();
        let mut rel = c.relation;
        if rhs.is_negative() {
            rhs = -rhs;
            for (_, a) in coeffs.iter_mut() {
                *a = -&*a;
            }
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        if coeffs.is_empty() {
            // 0 REL rhs with rhs >= 0: only `0 >= positive` and `0 = positive` fail.
            let ok = match rel {
                Relation::Le => true,
                Relation::Ge | Relation::Eq => rhs.is_zero(),
            };
            if !ok {
                return LpSolution::Infeasible;
            }
            continue;
        }
        rows.push(Row { coeffs, rel, rhs });
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.rel != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.rel != Relation::Le).count();
    let ncols = n + n_slack + n_art;
    let mut t = Tableau { rows: Vec::with_capacity(m), obj: vec![Rat::zero(); ncols + 1], basis: Vec::with_capacity(m), ncols };
    let (mut next_slack, mut next_art) = (n, n + n_slack);
    for r in &rows {
        let mut dense = vec![Rat::zero(); ncols + 1];
        for (j, a) in &r.coeffs {
            dense[*j] = a.clone();
        }
        dense[ncols] = r.rhs.clone();
        match r.rel {
            Relation::Le => {
                dense[next_slack] = Rat::one();
                t.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                dense[next_slack] = -Rat::one();
                next_slack += 1;
                dense[next_art] = Rat::one();
                t.basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                dense[next_art] = Rat::one();
                t.basis.push(next_art);
                next_art += 1;
            }
        }
        t.rows.push(dense);
    }
    drop(rows);

    let first_art = n + n_slack;
    if n_art > 0 {
        // Phase 1: minimize the sum of artificials.
        for i in 0..m {
            if t.basis[i] >= first_art {
                for k in 0..=ncols {
                    if k < first_art || k == ncols {
                        if !t.rows[i][k].is_zero() {
                            t.obj[k] = &t.obj[k] - &t.rows[i][k];
                        }
                    }
                }
            }
        }
        if let PhaseEnd::Unbounded = t.run(first_art) {
            unreachable!("phase 1 objective is bounded below by zero");
        }
        if !t.obj[ncols].is_zero() {
            return LpSolution::Infeasible;
        }
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are redundant and dropped.
        let mut keep = vec![true; m];
        for i in 0..m {
            if t.basis[i] < first_art {
                continue;
            }
            match (0..first_art).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => keep[i] = false,
            }
        }
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        for (i, mut row) in std::mem::take(&mut t.rows).into_iter().enumerate() {
            if !keep[i] {
                continue;
            }
            let rhs = row[ncols].clone();
            row.truncate(first_art);
            row.push(rhs);
            rows.push(row);
            basis.push(t.basis[i]);
        }
        t.rows = rows;
        t.basis = basis;
        t.ncols = first_art;
    }

    // Phase 2.
    let ncols = t.ncols;
    t.obj = vec![Rat::zero(); ncols + 1];
    for (j, c) in model.objective().iter().enumerate() {
        t.obj[j] = c.clone();
    }
    for i in 0..t.rows.len() {
        let b = t.basis[i];
        if b < n && !model.objective()[b].is_zero() {
            let f = model.objective()[b].clone();
            for k in 0..=ncols {
                if !t.rows[i][k].is_zero() {
                    t.obj[k] = &t.obj[k] - &f * &t.rows[i][k];
                }
            }
        }
    }
    if let PhaseEnd::Unbounded = t.run(ncols) {
        return LpSolution::Unbounded;
    }

    let mut x: Vec<Rat> = lb.to_vec();
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = &x[b] + &t.rows[i][ncols];
        }
    }
    if let Err(row) = model.check_feasible(&x) {
        panic!("simplex produced an assignment violating {row:?}");
    }
    let value = model.objective_value(&x);
    LpSolution::Optimal { value, assignment: x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{LpModel, LpStatus};
    use crate::rat::rat;

    fn closed_nbhd_model(adj: &[Vec<usize>]) -> LpModel {
        let n = adj.len();
        let mut m = LpModel::new(n);
        for v in 0..n {
            m.set_objective(v, Rat::one());
            let mut terms = vec![(v, Rat::one())];
            terms.extend(adj[v].iter().map(|&u| (u, Rat::one())));
            m.add_constraint(terms, Relation::Ge, Rat::one());
        }
        m
    }

    fn cycle(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
    }

    #[test]
    fn triangle_value_one() {
        let sol = solve(&closed_nbhd_model(&cycle(3)));
        assert_eq!(sol.value(), Some(&Rat::one()));
    }

    #[test]
    fn c5_value_five_thirds() {
        let sol = solve(&closed_nbhd_model(&cycle(5)));
        assert_eq!(sol.value(), Some(&rat(5, 3)));
    }

    #[test]
    fn infeasible_box() {
        let mut m = LpModel::new(1);
        m.add_constraint([(0, Rat::one())], Relation::Ge, Rat::one());
        m.add_constraint([(0, Rat::one())], Relation::Le, Rat::zero());
        assert_eq!(solve(&m).status(), LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let mut m = LpModel::new(2);
        m.set_objective(0, -Rat::one());
        m.add_constraint([(0, Rat::one()), (1, -Rat::one())], Relation::Le, Rat::one());
        assert_eq!(solve(&m).status(), LpStatus::Unbounded);
    }

    #[test]
    fn lower_bounds_and_equalities() {
        // min x + 2y s.t. x + y = 3, y <= 2, x >= 2/3  ->  (3, 0).
        let mut m = LpModel::new(2);
        m.set_objective(0, Rat::one());
        m.set_objective(1, rat(2, 1));
        m.set_lower_bound(0, rat(2, 3));
        m.add_constraint([(0, Rat::one()), (1, Rat::one())], Relation::Eq, rat(3, 1));
        m.add_constraint([(1, Rat::one())], Relation::Le, rat(2, 1));
        let (v, x) = solve(&m).into_optimum().unwrap();
        assert_eq!(x, vec![rat(3, 1), Rat::zero()]);
        assert_eq!(v, rat(3, 1));
    }

    #[test]
    fn redundant_equalities() {
        let mut m = LpModel::new(2);
        m.set_objective(0, Rat::one());
        m.add_constraint([(0, Rat::one()), (1, Rat::one())], Relation::Eq, rat(1, 1));
        m.add_constraint([(0, rat(2, 1)), (1, rat(2, 1))], Relation::Eq, rat(2, 1));
        let (v, x) = solve(&m).into_optimum().unwrap();
        assert_eq!(v, Rat::zero());
        assert_eq!(x, vec![Rat::zero(), Rat::one()]);
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Beale's classic instance cycles under naive Dantzig pricing with
        // arbitrary tie-breaking; optimum is -1/20.
        let mut m = LpModel::new(4);
        for (j, c) in [rat(-3, 4), rat(150, 1), rat(-1, 50), rat(6, 1)].into_iter().enumerate() {
            m.set_objective(j, c);
        }
        m.add_constraint(
            [(0, rat(1, 4)), (1, rat(-60, 1)), (2, rat(-1, 25)), (3, rat(9, 1))],
            Relation::Le,
            Rat::zero(),
        );
        m.add_constraint(
            [(0, rat(1, 2)), (1, rat(-90, 1)), (2, rat(-1, 50)), (3, rat(3, 1))],
            Relation::Le,
            Rat::zero(),
        );
        m.add_constraint([(2, Rat::one())], Relation::Le, Rat::one());
        assert_eq!(solve(&m).value(), Some(&rat(-1, 20)));
    }

    #[test]
    fn empty_rows() {
        let mut m = LpModel::new(1);
        m.add_constraint([(0, Rat::zero())], Relation::Ge, Rat::one());
        assert_eq!(solve(&m).status(), LpStatus::Infeasible);
        let mut m = LpModel::new(0);
        m.add_constraint(Vec::<(usize, Rat)>::new(), Relation::Le, Rat::one());
        assert_eq!(solve(&m).value(), Some(&Rat::zero()));
    }
}
