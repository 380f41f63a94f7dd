use std::collections::BTreeMap;

use crate::graph::{Graph, VertexSet};
use crate::rat::Rat;
use crate::reconfig::{can_reconfigure, FDFunction};

use super::certificate::{GraphRef, Provenance, StrategyCertificate, Transitions};
use super::{f_value, is_fully_fd_critical, validate_split, FedError};

/// The functions `D_v`: an optimal `f(v)` solution with the weight of every
/// `Y` vertex other than `v` (and any excess over 1 at `v`) pushed to its
/// least `X` neighbour. Isolated `Y` vertices keep their weight.
pub fn split_states(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<Vec<FDFunction>, FedError> {
    validate_split(g, x, y)?;
    let mut out = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let (_, mut w) = f_value(g, v)?;
        for u in y.iter() {
            let Some(&target) = g.neighbors(u).iter().find(|&&a| x.contains(a)) else {
                continue;
            };
            let keep = if u == v { Rat::one() } else { Rat::zero() };
            let excess = w.weight(u) - &keep;
            if excess.is_positive() {
                let moved = w.weight(target) + &excess;
                w.set(target, moved);
                w.set(u, keep);
            }
        }
        debug_assert!(w.is_dominating(g));
        out.push(w);
    }
    Ok(out)
}

/// `fed(G) = F(G)` for a split graph, with the `D_v` family as a pairwise certificate.
pub fn split_fed(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<(Rat, StrategyCertificate), FedError> {
    let states = split_states(g, x, y)?;
    let weight = states.iter().map(FDFunction::total).max().unwrap_or_else(Rat::zero);
    // All D_v must share the common total F(G): pad lighter ones at an X
    // vertex (or at v itself when X is empty).
    let states: Vec<FDFunction> = states
        .into_iter()
        .enumerate()
        .map(|(v, mut w)| {
            let gap = &weight - w.total();
            if gap.is_positive() {
                let at = x.iter().next().unwrap_or(v);
                let moved = w.weight(at) + gap;
                w.set(at, moved);
            }
            w
        })
        .collect();
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            if i != j && can_reconfigure(g, a, b)?.is_none() {
                return Err(FedError::InvalidPartition(format!("D_{i} cannot reach D_{j}; graph is not split as given")));
            }
        }
    }
    let cert = StrategyCertificate {
        graph: GraphRef::of(g),
        weight: weight.clone(),
        cover: (0..g.n()).map(|v| (v, v)).collect::<BTreeMap<_, _>>(),
        states,
        transitions: Transitions::Pairwise,
        provenance: Provenance::Constructed,
    };
    Ok((weight, cert))
}

/// Whether every `X` vertex has a `Y` neighbour and every `Y` vertex is fully
/// f.d.-critical; for a non-complete split graph this holds exactly when `fed = γ_f`.
pub fn split_equality_check(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<bool, FedError> {
    validate_split(g, x, y)?;
    if g.is_complete() {
        return Err(FedError::InvalidPartition("graph is complete".into()));
    }
    let x_ok = x.iter().all(|a| g.neighbors(a).iter().any(|&b| y.contains(b)));
    if !x_ok {
        return Ok(false);
    }
    for b in y.iter() {
        if !is_fully_fd_critical(g, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}
