//! Fractional dominating functions and one-round reconfiguration.
//!
//! `w1` can be turned into `w2` in a single round (every unit of weight
//! moving at most one edge) exactly when the bipartite network
//! `s -> i -> j' -> t` with capacities `w1(i)`, unbounded, `w2(j)` carries a
//! flow of value `total(w1)`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReconfigError {
    #[error("expected {expected} weights, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("total weights differ: {w1} vs {w2}")]
    TotalMismatch { w1: Rat, w2: Rat },
    #[error("illegal move at vertex {vertex}: {reason}")]
    IllegalMove { vertex: usize, reason: String },
    #[error("negative weight at vertex {vertex}")]
    NegativeWeight { vertex: usize },
}

/// A nonnegative weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FdJson", into = "FdJson")]
pub struct FDFunction {
    weights: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct FdJson {
    weights: Vec<Rat>,
}

impl TryFrom<FdJson> for FDFunction {
    type Error = ReconfigError;
    fn try_from(raw: FdJson) -> Result<FDFunction, ReconfigError> {
        FDFunction::new(raw.weights)
    }
}

impl From<FDFunction> for FdJson {
    fn from(f: FDFunction) -> FdJson {
        FdJson { weights: f.weights }
    }
}

impl FDFunction {
    pub fn new(weights: Vec<Rat>) -> Result<FDFunction, ReconfigError> {
        match weights.iter().position(Rat::is_negative) {
            Some(vertex) => Err(ReconfigError::NegativeWeight { vertex }),
            None => Ok(FDFunction { weights }),
        }
    }

    pub fn zeros(n: usize) -> FDFunction {
        FDFunction { weights: vec![Rat::zero(); n] }
    }

    /// All weight `1` on `v`.
    pub fn unit(n: usize, v: usize) -> FDFunction {
        let mut f = FDFunction::zeros(n);
        f.weights[v] = Rat::one();
        f
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> &Rat {
        &self.weights[v]
    }

    /// Sets `w(v)`; panics on a negative value.
    pub fn set(&mut self, v: usize, value: Rat) {
        assert!(!value.is_negative(), "negative weight");
        self.weights[v] = value;
    }

    pub fn total(&self) -> Rat {
        self.weights.iter().sum()
    }

    /// `w(N[v])`.
    pub fn nbhd_sum(&self, g: &Graph, v: usize) -> Rat {
        let mut s = self.weights[v].clone();
        for &u in g.neighbors(v) {
            s += &self.weights[u];
        }
        s
    }

    /// Vertices whose closed neighbourhood carries less than 1.
    pub fn undominated(&self, g: &Graph) -> Vec<usize> {
        let one = Rat::one();
        (0..g.n()).filter(|&v| self.nbhd_sum(g, v) < one).collect()
    }

    pub fn is_dominating(&self, g: &Graph) -> bool {
        self.len() == g.n() && self.undominated(g).is_empty()
    }

    pub fn check_len(&self, n: usize) -> Result<(), ReconfigError> {
        if self.len() == n {
            Ok(())
        } else {
            Err(ReconfigError::DimensionMismatch { expected: n, got: self.len() })
        }
    }
}

impl fmt::Display for FDFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", ws.join(", "))
    }
}

/// `amount` of weight moved from `from` to `to` (equal for weight that stays).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub from: usize,
    pub to: usize,
    pub amount: Rat,
}

/// A round of weight movement, kept sorted by `(from, to)` with one entry per pair.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MovePlan {
    moves: Vec<Move>,
}

impl MovePlan {
    /// Canonicalises: merges repeated pairs, drops zero amounts, sorts.
    pub fn new(moves: impl IntoIterator<Item = Move>) -> MovePlan {
        let mut all: Vec<Move> = moves.into_iter().collect();
        all.sort_by_key(|m| (m.from, m.to));
        let mut out: Vec<Move> = Vec::with_capacity(all.len());
        for m in all {
            match out.last_mut() {
                Some(last) if last.from == m.from && last.to == m.to => last.amount += m.amount,
                _ => out.push(m),
            }
        }
        out.retain(|m| !m.amount.is_zero());
        MovePlan { moves: out }
    }

    /// Every unit of weight stays put.
    pub fn identity(w: &FDFunction) -> MovePlan {
        MovePlan::new(
            w.weights().iter().enumerate().map(|(v, a)| Move { from: v, to: v, amount: a.clone() }),
        )
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Moves between distinct vertices.
    pub fn transfers(&self) -> impl Iterator<Item = &Move> {
        self.moves.iter().filter(|m| m.from != m.to)
    }
}

/// Applies `plan` to `w`: each vertex keeps whatever it does not send and
/// receives all inflow. Stays (`from == to`) count as both.
pub fn apply_move_plan(g: &Graph, w: &FDFunction, plan: &MovePlan) -> Result<FDFunction, ReconfigError> {
    let n = g.n();
    w.check_len(n)?;
    let mut out_flow = vec![Rat::zero(); n];
    let mut in_flow = vec![Rat::zero(); n];
    for m in plan.moves() {
        if m.from >= n || m.to >= n {
            return Err(ReconfigError::IllegalMove {
                vertex: m.from.min(n),
                reason: format!("vertex out of range in move {}->{}", m.from, m.to),
            });
        }
        if !m.amount.is_positive() {
            return Err(ReconfigError::IllegalMove { vertex: m.from, reason: format!("non-positive amount {}", m.amount) });
        }
        if m.from != m.to && !g.has_edge(m.from, m.to) {
            return Err(ReconfigError::IllegalMove {
                vertex: m.from,
                reason: format!("{} is not in the closed neighbourhood", m.to),
            });
        }
        out_flow[m.from] += &m.amount;
        in_flow[m.to] += &m.amount;
    }
    let mut result = Vec::with_capacity(n);
    for v in 0..n {
        if out_flow[v] > *w.weight(v) {
            return Err(ReconfigError::IllegalMove {
                vertex: v,
                reason: format!("sends {} but holds {}", out_flow[v], w.weight(v)),
            });
        }
        result.push(w.weight(v) - &out_flow[v] + &in_flow[v]);
    }
    Ok(FDFunction { weights: result })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Capacity {
    Finite(Rat),
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
}

/// `N_{w1,w2}`. Node ids: source 0, left copies `1..=n`, right copies
/// `n+1..=2n`, sink `2n+1`. Arcs are listed source arcs first, then the
/// middle arcs `i -> j'` for `j ∈ N[i]` in increasing `(i, j)`, then sink arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconfigNetwork {
    n: usize,
    arcs: Vec<Arc>,
    /// `(i, j)` for each middle arc, parallel to `arcs[n..n + middle]`.
    middle: Vec<(usize, usize)>,
    source_total: Rat,
}

impl ReconfigNetwork {
    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        2 * self.n + 1
    }

    pub fn left(&self, i: usize) -> usize {
        1 + i
    }

    pub fn right(&self, i: usize) -> usize {
        1 + self.n + i
    }

    pub fn node_count(&self) -> usize {
        2 * self.n + 2
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Graph endpoints of the middle arcs, in arc order.
    pub fn middle_pairs(&self) -> &[(usize, usize)] {
        &self.middle
    }

    /// Index of the first sink arc.
    fn sink_arc_start(&self) -> usize {
        self.n + self.middle.len()
    }
}

pub fn build_reconfig_network(g: &Graph, w1: &FDFunction, w2: &FDFunction) -> Result<ReconfigNetwork, ReconfigError> {
    let n = g.n();
    w1.check_len(n)?;
    w2.check_len(n)?;
    let mut arcs = Vec::new();
    for i in 0..n {
        arcs.push(Arc { from: 0, to: 1 + i, capacity: Capacity::Finite(w1.weight(i).clone()) });
    }
    let mut middle = Vec::new();
    for i in 0..n {
        for j in g.closed_nbhd(i) {
            arcs.push(Arc { from: 1 + i, to: 1 + n + j, capacity: Capacity::Unbounded });
            middle.push((i, j));
        }
    }
    for j in 0..n {
        arcs.push(Arc { from: 1 + n + j, to: 2 * n + 1, capacity: Capacity::Finite(w2.weight(j).clone()) });
    }
    Ok(ReconfigNetwork { n, arcs, middle, source_total: w1.total() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: Rat,
    /// Flow on each arc of the network, in arc order.
    pub arc_flows: Vec<Rat>,
    /// Left-copy vertices reachable from the source in the final residual
    /// network (the source side of a minimum cut).
    pub source_side: Vec<usize>,
}

/// Exact maximum flow by shortest augmenting paths.
///
/// Unbounded arcs get capacity `total(w1)`, which no flow can exceed. Weight
/// that can stay in place (`min(w1(i), w2(i))` along `s -> i -> i' -> t`) is
/// routed first; augmentation then proceeds in BFS order.
pub fn max_flow(net: &ReconfigNetwork) -> FlowResult {
    let nodes = net.node_count();
    let m = net.arcs.len();
    // Residual arcs: 2k forward, 2k+1 backward.
    let mut head: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut to = Vec::with_capacity(2 * m);
    let mut cap: Vec<Rat> = Vec::with_capacity(2 * m);
    for a in &net.arcs {
        let c = match &a.capacity {
            Capacity::Finite(c) => c.clone(),
            Capacity::Unbounded => net.source_total.clone(),
        };
        head[a.from].push(to.len());
        to.push(a.to);
        cap.push(c);
        head[a.to].push(to.len());
        to.push(a.from);
        cap.push(Rat::zero());
    }
    let push = |cap: &mut Vec<Rat>, arc: usize, amount: &Rat| {
        cap[2 * arc] -= amount;
        cap[2 * arc + 1] += amount;
    };
    let n = net.n;
    let mut value = Rat::zero();
    let sink_start = net.sink_arc_start();
    for (k, &(i, j)) in net.middle.iter().enumerate() {
        if i != j {
            continue;
        }
        let amount = cap[2 * i].clone().min(cap[2 * (sink_start + i)].clone());
        if amount.is_positive() {
            push(&mut cap, i, &amount);
            push(&mut cap, n + k, &amount);
            push(&mut cap, sink_start + i, &amount);
            value += &amount;
        }
    }
    let (s, t) = (net.source(), net.sink());
    loop {
        let mut prev = vec![usize::MAX; nodes];
        let mut visited = vec![false; nodes];
        visited[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &a in &head[u] {
                let v = to[a];
                if !visited[v] && cap[a].is_positive() {
                    visited[v] = true;
                    prev[v] = a;
                    queue.push_back(v);
                }
            }
        }
        if !visited[t] {
            let source_side = (0..n).filter(|&i| visited[1 + i]).collect();
            let arc_flows = (0..m).map(|k| cap[2 * k + 1].clone()).collect();
            return FlowResult { value, arc_flows, source_side };
        }
        let mut bottleneck: Option<Rat> = None;
        let mut v = t;
        while v != s {
            let a = prev[v];
            bottleneck = Some(match bottleneck {
                None => cap[a].clone(),
                Some(b) => b.min(cap[a].clone()),
            });
            v = to[a ^ 1];
        }
        let b = bottleneck.expect("path has at least one arc");
        let mut v = t;
        while v != s {
            let a = prev[v];
            cap[a] -= &b;
            cap[a ^ 1] += &b;
            v = to[a ^ 1];
        }
        value += b;
    }
}

/// A one-round plan turning `w1` into `w2`, or `None` if none exists.
pub fn can_reconfigure(g: &Graph, w1: &FDFunction, w2: &FDFunction) -> Result<Option<MovePlan>, ReconfigError> {
    let (t1, t2) = (w1.total(), w2.total());
    if t1 != t2 {
        return Err(ReconfigError::TotalMismatch { w1: t1, w2: t2 });
    }
    let net = build_reconfig_network(g, w1, w2)?;
    let flow = max_flow(&net);
    if flow.value != t1 {
        return Ok(None);
    }
    Ok(Some(plan_from_flow(&net, &flow)))
}

/// Reads the middle-arc flows of a saturating flow as a [`MovePlan`].
pub fn plan_from_flow(net: &ReconfigNetwork, flow: &FlowResult) -> MovePlan {
    let n = net.n;
    MovePlan::new(net.middle.iter().enumerate().filter_map(|(k, &(i, j))| {
        let f = &flow.arc_flows[n + k];
        f.is_positive().then(|| Move { from: i, to: j, amount: f.clone() })
    }))
}
