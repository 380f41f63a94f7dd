use serde::Serialize;

use crate::fed::{StrategyCertificate, Transitions};
use crate::graph::Graph;
use crate::rat::Rat;
use crate::reconfig::{apply_move_plan, can_reconfigure};

/// What [`verify_certificate`] checked and everything it found wrong.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub states: usize,
    pub transitions_checked: usize,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Independently re-checks a strategy certificate against `g`: every state
/// is a fractional dominating function of the stated weight, the cover map
/// is complete and correct, and the states are closed under attacks, either
/// via reconfiguration between all ordered pairs or via the listed
/// transitions (each replayed move by move).
pub fn verify_certificate(g: &Graph, cert: &StrategyCertificate) -> VerificationReport {
    let mut r = VerificationReport { states: cert.states.len(), ..Default::default() };
    let n = g.n();
    if !cert.graph.matches(g) {
        r.violations.push(format!(
            "certificate is for a graph with {} vertices and {} edges, got {n} and {}",
            cert.graph.n,
            cert.graph.edges,
            g.edge_count()
        ));
        return r;
    }
    if cert.states.is_empty() && n > 0 {
        r.violations.push("no states".into());
    }
    let mut shape_ok = true;
    for (i, s) in cert.states.iter().enumerate() {
        if s.len() != n {
            r.violations.push(format!("state {i} has length {}, expected {n}", s.len()));
            shape_ok = false;
            continue;
        }
        if s.total() != cert.weight {
            r.violations.push(format!("state {i} has total {}, certificate weight is {}", s.total(), cert.weight));
        }
        let bad = s.undominated(g);
        if !bad.is_empty() {
            r.violations.push(format!("state {i} leaves {bad:?} undominated"));
        }
    }
    if !shape_ok {
        return r;
    }
    let covers = |j: usize, v: usize| *cert.states[j].weight(v) >= Rat::one();
    for v in 0..n {
        match cert.cover.get(&v) {
            None => r.violations.push(format!("cover has no entry for vertex {v}")),
            Some(&j) if j >= cert.states.len() => r.violations.push(format!("cover[{v}] = {j} is not a state")),
            Some(&j) if !covers(j, v) => r.violations.push(format!("cover[{v}] = state {j} has weight below 1 on {v}")),
            _ => {}
        }
    }
    match &cert.transitions {
        Transitions::Pairwise => {
            for (i, a) in cert.states.iter().enumerate() {
                for (j, b) in cert.states.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    r.transitions_checked += 1;
                    match can_reconfigure(g, a, b) {
                        Ok(Some(_)) => {}
                        Ok(None) => r.violations.push(format!("state {i} cannot be reconfigured to state {j}")),
                        Err(e) => r.violations.push(format!("states {i} -> {j}: {e}")),
                    }
                }
            }
        }
        Transitions::Explicit(ts) => {
            let mut valid = vec![Vec::new(); cert.states.len()];
            for (k, t) in ts.iter().enumerate() {
                r.transitions_checked += 1;
                if t.from >= cert.states.len() || t.to >= cert.states.len() {
                    r.violations.push(format!("transition {k} refers to a missing state"));
                    continue;
                }
                match apply_move_plan(g, &cert.states[t.from], &t.plan) {
                    Ok(w) if w == cert.states[t.to] => valid[t.from].push(t.to),
                    Ok(w) => r.violations.push(format!(
                        "transition {k} ({} -> {}) lands on {w}, not on state {}",
                        t.from, t.to, t.to
                    )),
                    Err(e) => r.violations.push(format!("transition {k} ({} -> {}): {e}", t.from, t.to)),
                }
            }
            for i in 0..cert.states.len() {
                for v in 0..n {
                    if !covers(i, v) && !valid[i].iter().any(|&j| covers(j, v)) {
                        r.violations.push(format!("state {i} has no response to an attack on {v}"));
                    }
                }
            }
        }
    }
    r
}
