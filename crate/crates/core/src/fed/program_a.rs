//! Program A: `n` fractional dominating functions `X_1..X_n` of one common
//! total, `X_i(i) = 1`, every ordered pair reconfigurable in one round.
//!
//! Two exact formulations are provided. [`ProgramAMethod::Full`] writes out
//! the arc-flow variables of every network `N_{X_i,X_j}`. The default,
//! [`ProgramAMethod::Cuts`], keeps only the `n²` weight variables and adds
//! Hall rows `Σ_{a∈L} x_{ia} <= Σ_{b∈N[L]} x_{jb}` on demand, taking `L`
//! from a minimum cut of each non-saturating network. A pair is
//! reconfigurable exactly when every such row holds, so both formulations
//! have the same optimum; the cut version is far smaller.

use std::collections::{BTreeMap, HashSet};

use crate::graph::{Graph, GraphError};
use crate::lp::{self, LpModel, LpSolution, Relation};
use crate::rat::Rat;
use crate::reconfig::{build_reconfig_network, can_reconfigure, max_flow, FDFunction};

use super::certificate::{GraphRef, Provenance, StrategyCertificate, Transitions};

/// Largest vertex count accepted by default.
pub const DEFAULT_LP_BUDGET: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramAMethod {
    Cuts,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProgramAOptions {
    pub budget: usize,
    pub method: ProgramAMethod,
}

impl Default for ProgramAOptions {
    fn default() -> Self {
        ProgramAOptions { budget: DEFAULT_LP_BUDGET, method: ProgramAMethod::Cuts }
    }
}

/// Reads `FEDLAB_LP_BUDGET`, falling back to [`DEFAULT_LP_BUDGET`].
pub fn program_a_budget_from_env() -> usize {
    std::env::var("FEDLAB_LP_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_LP_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramAResult {
    pub value: Rat,
    pub certificate: StrategyCertificate,
    /// Master LP solves (1 for the full model).
    pub rounds: usize,
    /// Hall rows added by the cut method.
    pub cuts: usize,
}

pub fn solve_program_a(g: &Graph) -> Result<(Rat, StrategyCertificate), GraphError> {
    let r = solve_program_a_with(g, ProgramAOptions::default())?;
    Ok((r.value, r.certificate))
}

pub fn solve_program_a_with(g: &Graph, opts: ProgramAOptions) -> Result<ProgramAResult, GraphError> {
    let n = g.n();
    if n > opts.budget {
        return Err(GraphError::SizeLimitExceeded { op: "solve_program_a", n, limit: opts.budget });
    }
    if n == 0 {
        return Err(GraphError::InvalidParams("program A needs at least one vertex".into()));
    }
    let (value, states, rounds, cuts) = match opts.method {
        ProgramAMethod::Cuts => solve_cuts(g),
        ProgramAMethod::Full => {
            let (v, s) = solve_full(g);
            (v, s, 1, 0)
        }
    };
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            if i != j {
                assert!(
                    can_reconfigure(g, a, b).expect("equal totals").is_some(),
                    "program A states {i} -> {j} not reconfigurable"
                );
            }
        }
    }
    let certificate = StrategyCertificate {
        graph: GraphRef::of(g),
        weight: value.clone(),
        cover: (0..n).map(|v| (v, v)).collect::<BTreeMap<_, _>>(),
        states,
        transitions: Transitions::Pairwise,
        provenance: Provenance::LpA,
    };
    Ok(ProgramAResult { value, certificate, rounds, cuts })
}

/// `x_{ia}` lives at `i*n + a`. Adds FDS blocks, `x_ii = 1`, equal totals and
/// the objective `Σ_a x_{0a}`.
fn master(g: &Graph) -> LpModel {
    let n = g.n();
    let mut m = LpModel::new(n * n);
    for i in 0..n {
        for a in 0..n {
            m.set_var_label(i * n + a, format!("x{i}_{a}"));
        }
    }
    for a in 0..n {
        m.set_objective(a, Rat::one());
    }
    for i in 0..n {
        for v in 0..n {
            let row = m.add_constraint(
                g.closed_nbhd(v).into_iter().map(|a| (i * n + a, Rat::one())),
                Relation::Ge,
                Rat::one(),
            );
            m.set_constraint_label(row, format!("FDS{i}:N[{v}]"));
        }
        let row = m.add_constraint([(i * n + i, Rat::one())], Relation::Eq, Rat::one());
        m.set_constraint_label(row, format!("FDS{i}:pin"));
    }
    for i in 1..n {
        let terms = (0..n).map(|a| (i * n + a, Rat::one())).chain((0..n).map(|a| (a, -Rat::one())));
        let row = m.add_constraint(terms, Relation::Eq, Rat::zero());
        m.set_constraint_label(row, format!("total{i}"));
    }
    m
}

fn optimum(m: &LpModel) -> (Rat, Vec<Rat>) {
    match lp::solve(m) {
        LpSolution::Optimal { value, assignment } => (value, assignment),
        other => panic!("program A must be feasible (doubling construction), got {:?}", other.status()),
    }
}

fn split_states(n: usize, x: &[Rat]) -> Vec<FDFunction> {
    (0..n).map(|i| FDFunction::new(x[i * n..(i + 1) * n].to_vec()).expect("nonnegative")).collect()
}

fn solve_cuts(g: &Graph) -> (Rat, Vec<FDFunction>, usize, usize) {
    let n = g.n();
    let mut m = master(g);
    let mut seen: HashSet<(usize, usize, Vec<usize>)> = HashSet::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let (value, x) = optimum(&m);
        let states = split_states(n, &x);
        let mut added = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let net = build_reconfig_network(g, &states[i], &states[j]).expect("sized for g");
                let flow = max_flow(&net);
                if flow.value == value {
                    continue;
                }
                let left = flow.source_side;
                let mut right = vec![false; n];
                for &a in &left {
                    for b in g.closed_nbhd(a) {
                        right[b] = true;
                    }
                }
                let terms = left
                    .iter()
                    .map(|&a| (i * n + a, Rat::one()))
                    .chain((0..n).filter(|&b| right[b]).map(|b| (j * n + b, -Rat::one())));
                assert!(seen.insert((i, j, left.clone())), "Hall row repeated; cut generation stalled");
                let row = m.add_constraint(terms, Relation::Le, Rat::zero());
                m.set_constraint_label(row, format!("hall{i}->{j}:{left:?}"));
                added += 1;
            }
        }
        if added == 0 {
            return (value, states, rounds, seen.len());
        }
    }
}

/// Program A with explicit flow variables for every ordered pair.
fn solve_full(g: &Graph) -> (Rat, Vec<FDFunction>) {
    let n = g.n();
    let mut m = master(g);
    let one = Rat::one;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let src: Vec<usize> = (0..n).map(|a| m.add_var(Rat::zero(), Rat::zero(), Some(format!("f{i}{j}:s{a}")))).collect();
            let snk: Vec<usize> = (0..n).map(|b| m.add_var(Rat::zero(), Rat::zero(), Some(format!("f{i}{j}:{b}t")))).collect();
            let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut into: Vec<Vec<usize>> = vec![Vec::new(); n];
            for a in 0..n {
                for b in g.closed_nbhd(a) {
                    let f = m.add_var(Rat::zero(), Rat::zero(), Some(format!("f{i}{j}:{a}{b}")));
                    out_of[a].push(f);
                    into[b].push(f);
                }
            }
            for a in 0..n {
                m.add_constraint([(src[a], one()), (i * n + a, -one())], Relation::Le, Rat::zero());
                m.add_constraint(
                    std::iter::once((src[a], one())).chain(out_of[a].iter().map(|&f| (f, -one()))),
                    Relation::Eq,
                    Rat::zero(),
                );
            }
            for b in 0..n {
                m.add_constraint([(snk[b], one()), (j * n + b, -one())], Relation::Le, Rat::zero());
                m.add_constraint(
                    std::iter::once((snk[b], one())).chain(into[b].iter().map(|&f| (f, -one()))),
                    Relation::Eq,
                    Rat::zero(),
                );
            }
            m.add_constraint(
                src.iter().map(|&f| (f, one())).chain((0..n).map(|a| (i * n + a, -one()))),
                Relation::Eq,
                Rat::zero(),
            );
        }
    }
    let (value, x) = optimum(&m);
    (value, split_states(n, &x[..n * n]))
}
