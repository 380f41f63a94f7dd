//! Fractional eternal domination: static LPs, program A, closed forms and bounds.

mod bounds;
mod certificate;
mod closed_form;
mod program_a;
mod split;
mod tree;

pub use bounds::{bounds, bounds_with, check_bound, BoundEntry, BoundsOptions, BoundsReport, Witness};
pub use certificate::{GraphRef, Provenance, StrategyCertificate, Transition, Transitions};
pub use closed_form::{closed_form_fed, ClosedForm, FedValue, Interval};
pub use program_a::{
    program_a_budget_from_env, solve_program_a, solve_program_a_with, ProgramAMethod, ProgramAOptions, ProgramAResult,
    DEFAULT_LP_BUDGET,
};
pub use split::{split_equality_check, split_fed, split_states};
pub use tree::med_tree;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::lp::{self, LpModel, Relation};
use crate::rat::Rat;
use crate::reconfig::{FDFunction, ReconfigError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FedError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reconfig(#[from] ReconfigError),
    #[error("invalid split partition: {0}")]
    InvalidPartition(String),
}

fn nbhd_model(g: &Graph) -> LpModel {
    let n = g.n();
    let mut m = LpModel::new(n);
    for j in 0..n {
        m.set_objective(j, Rat::one());
        m.set_var_label(j, format!("w{j}"));
    }
    for v in 0..n {
        let row = m.add_constraint(g.closed_nbhd(v).into_iter().map(|u| (u, Rat::one())), Relation::Ge, Rat::one());
        m.set_constraint_label(row, format!("N[{v}]"));
    }
    m
}

fn solve_fd(m: &LpModel) -> (Rat, FDFunction) {
    let (value, x) = lp::solve(m).into_optimum().expect("domination LPs are feasible and bounded");
    (value, FDFunction::new(x).expect("solver keeps variables at their lower bound 0"))
}

/// `γ_f(G)` with an optimal fractional dominating function. The empty graph has value 0.
pub fn gamma_f(g: &Graph) -> (Rat, FDFunction) {
    if g.n() == 0 {
        return (Rat::zero(), FDFunction::zeros(0));
    }
    solve_fd(&nbhd_model(g))
}

/// `f(v)`: least weight of a fractional dominating function with `w(v) >= 1`.
pub fn f_value(g: &Graph, v: usize) -> Result<(Rat, FDFunction), GraphError> {
    g.check_vertex(v)?;
    let mut m = nbhd_model(g);
    m.add_constraint([(v, Rat::one())], Relation::Ge, Rat::one());
    Ok(solve_fd(&m))
}

/// `F(G) = max_v f(v)` and the least vertex attaining it. Per-vertex solves run in parallel.
pub fn big_f(g: &Graph) -> Option<(Rat, usize)> {
    let values = f_values(g);
    let mut best: Option<(Rat, usize)> = None;
    for (v, val) in values.into_iter().enumerate() {
        if best.as_ref().map_or(true, |(b, _)| val > *b) {
            best = Some((val, v));
        }
    }
    best
}

/// `f(v)` for every vertex, in vertex order.
pub fn f_values(g: &Graph) -> Vec<Rat> {
    let n = g.n();
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(n.max(1));
    let mut out = vec![Rat::zero(); n];
    std::thread::scope(|scope| {
        let chunks: Vec<_> = out
            .chunks_mut(n.div_ceil(workers).max(1))
            .enumerate()
            .map(|(c, slot)| {
                let start = c * n.div_ceil(workers).max(1);
                scope.spawn(move || {
                    for (k, cell) in slot.iter_mut().enumerate() {
                        *cell = f_value(g, start + k).expect("vertex in range").0;
                    }
                })
            })
            .collect();
        for h in chunks {
            h.join().expect("f(v) worker panicked");
        }
    });
    out
}

/// Optimal dual of the `γ_f` LP (pinned = None) or of the `f(v)` LP:
/// `y` per closed neighbourhood plus a multiplier on `w(v) >= 1`, with
/// `Σ_{u ∈ N[a]} y_u + [a = v]·z <= 1` for every vertex `a`.
pub fn fractional_packing(g: &Graph, pinned: Option<usize>) -> Result<(Vec<Rat>, Rat), GraphError> {
    let n = g.n();
    if let Some(v) = pinned {
        g.check_vertex(v)?;
    }
    let mut m = LpModel::new(n + 1);
    for u in 0..n {
        m.set_objective(u, -Rat::one());
    }
    m.set_objective(n, -Rat::one());
    for a in 0..n {
        let mut terms: Vec<(usize, Rat)> = g.closed_nbhd(a).into_iter().map(|u| (u, Rat::one())).collect();
        if pinned == Some(a) {
            terms.push((n, Rat::one()));
        }
        m.add_constraint(terms, Relation::Le, Rat::one());
    }
    if pinned.is_none() {
        m.add_constraint([(n, Rat::one())], Relation::Le, Rat::zero());
    }
    let (_, mut y) = lp::solve(&m).into_optimum().expect("packing LP is feasible and bounded");
    let z = y.pop().expect("pin multiplier");
    Ok((y, z))
}

/// Whether `γ_f(G) - γ_f(G - v) = 1`.
pub fn is_fully_fd_critical(g: &Graph, v: usize) -> Result<bool, GraphError> {
    g.check_vertex(v)?;
    let whole = gamma_f(g).0;
    let minus = gamma_f(&g.remove_vertices(&[v])).0;
    Ok(whole - minus == Rat::one())
}

/// Checks that `(X, Y)` partitions the vertices with `X` a clique and `Y` independent.
pub fn validate_split(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<(), FedError> {
    x.validate(g)?;
    y.validate(g)?;
    let mut seen = vec![false; g.n()];
    for v in x.iter().chain(y.iter()) {
        if std::mem::replace(&mut seen[v], true) {
            return Err(FedError::InvalidPartition(format!("vertex {v} listed twice")));
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(FedError::InvalidPartition(format!("vertex {v} missing")));
    }
    for (i, a) in x.iter().enumerate() {
        for b in x.iter().skip(i + 1) {
            if !g.has_edge(a, b) {
                return Err(FedError::InvalidPartition(format!("{a} and {b} in X are not adjacent")));
            }
        }
    }
    for (i, a) in y.iter().enumerate() {
        for b in y.iter().skip(i + 1) {
            if g.has_edge(a, b) {
                return Err(FedError::InvalidPartition(format!("{a} and {b} in Y are adjacent")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::rat::rat;

    #[test]
    fn gamma_f_examples() {
        assert_eq!(gamma_f(&cycle(5).unwrap()).0, rat(5, 3));
        let (v, w) = gamma_f(&gtd(3, 2).unwrap());
        assert_eq!(v, rat(3, 2));
        assert!(w.is_dominating(&gtd(3, 2).unwrap()));
        assert_eq!(gamma_f(&caterpillar(2).unwrap()).0, rat(2, 1));
        assert_eq!(gamma_f(&Graph::from_edges(0, &[]).unwrap()).0, Rat::zero());
    }

    #[test]
    fn gtd_witness_is_half_on_x() {
        // The LP optimum is unique here: 1/d on each X vertex.
        let g = gtd(3, 2).unwrap();
        let (_, w) = gamma_f(&g);
        assert_eq!(&w.weights()[..3], &[rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert!(w.weights()[3..].iter().all(Rat::is_zero));
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_value(&complete(5).unwrap(), 3).unwrap().0, Rat::one());
        let pet = kneser(5, 2).unwrap();
        for v in 0..10 {
            assert_eq!(f_value(&pet, v).unwrap().0, rat(3, 1));
        }
        assert_eq!(f_value(&star(3).unwrap(), 1).unwrap().0, rat(2, 1));
        assert_eq!(big_f(&complete(7).unwrap()), Some((Rat::one(), 0)));
        assert_eq!(big_f(&kneser(6, 2).unwrap()).unwrap().0, rat(3, 1));
        assert_eq!(big_f(&star(3).unwrap()).unwrap().0, rat(2, 1));
    }

    #[test]
    fn duals_match_primal() {
        for g in [cycle(5).unwrap(), kneser(5, 2).unwrap(), star(3).unwrap(), path(4).unwrap()] {
            let (y, z) = fractional_packing(&g, None).unwrap();
            assert!(z.is_zero());
            assert_eq!(y.iter().sum::<Rat>(), gamma_f(&g).0);
            let (y, z) = fractional_packing(&g, Some(0)).unwrap();
            assert_eq!(y.iter().sum::<Rat>() + z, f_value(&g, 0).unwrap().0);
        }
    }

    #[test]
    fn criticality() {
        assert!(is_fully_fd_critical(&complete(1).unwrap(), 0).unwrap());
        // K_2 loses only 0: γ_f(K_1) = 1.
        assert!(!is_fully_fd_critical(&complete(2).unwrap(), 0).unwrap());
        let g = gtd(3, 2).unwrap();
        for y in 3..g.n() {
            assert!(!is_fully_fd_critical(&g, y).unwrap());
        }
        assert!(!is_fully_fd_critical(&star(3).unwrap(), 1).unwrap());
    }
}
