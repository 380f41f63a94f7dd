//! Vertex connectivity and internally disjoint paths via Menger's theorem.

use std::collections::VecDeque;

use super::{Graph, GraphError};

/// Small integer max-flow network (BFS augmenting paths).
struct IntNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl IntNet {
    fn new(nodes: usize) -> IntNet {
        IntNet { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn add_arc(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Augments until `limit` units flow or no path remains.
    fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut flow = 0;
        while flow < limit {
            let mut prev = vec![usize::MAX; self.head.len()];
            let mut queue = VecDeque::from([s]);
            prev[s] = usize::MAX - 1;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &a in &self.head[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && prev[v] == usize::MAX {
                        prev[v] = a;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                break;
            }
            let mut bottleneck = limit - flow;
            let mut v = t;
            while v != s {
                let a = prev[v];
                bottleneck = bottleneck.min(self.cap[a]);
                v = self.to[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = prev[v];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                v = self.to[a ^ 1];
            }
            flow += bottleneck;
        }
        flow
    }
}

/// Split network: `v_in = 2v`, `v_out = 2v + 1`; interior vertices have
/// unit capacity, `s` and `t` are uncapped. Returns the network and the arc
/// index of each graph edge direction `(u_out -> v_in)`.
fn split_network(g: &Graph, s: usize, t: usize) -> (IntNet, Vec<(usize, usize, usize)>) {
    let n = g.n();
    let big = n as i64;
    let mut net = IntNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, c);
    }
    let mut edge_arcs = Vec::new();
    for u in 0..n {
        for &v in g.neighbors(u) {
            edge_arcs.push((u, v, net.to.len()));
            net.add_arc(2 * u + 1, 2 * v, 1);
        }
    }
    (net, edge_arcs)
}

fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let (mut net, _) = split_network(g, s, t);
    net.max_flow(2 * s + 1, 2 * t, limit as i64) as usize
}

/// Vertex connectivity κ(G): `n - 1` for complete graphs, 0 for
/// disconnected or single-vertex graphs, otherwise the minimum number of
/// internally disjoint paths over non-adjacent pairs.
pub fn connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    let mut best = g.min_degree();
    // Some vertex among the first best+1 lies outside any minimum cut.
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_connectivity(g, i, j, best));
            }
        }
        i += 1;
    }
    best
}

/// `k` internally vertex-disjoint `s`–`t` paths, sorted by length and then
/// lexicographically.
pub fn disjoint_paths(g: &Graph, s: usize, t: usize, k: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(GraphError::InvalidParams("disjoint_paths needs s != t".into()));
    }
    let (mut net, edge_arcs) = split_network(g, s, t);
    let found = net.max_flow(2 * s + 1, 2 * t, k as i64) as usize;
    if found < k {
        return Err(GraphError::InsufficientConnectivity { found, requested: k });
    }
    // Remaining flow on u_out -> v_in arcs: residual of the reverse arc.
    let n = g.n();
    let mut next: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v, a) in &edge_arcs {
        if net.cap[a ^ 1] > 0 {
            next[u].push(v);
        }
    }
    // Walk the flow from s; any circulation picked up on the way is cut out.
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let mut path = vec![s];
        let mut cur = s;
        while cur != t {
            let nx = next[cur].pop().expect("flow decomposes into s-t paths");
            if let Some(pos) = path.iter().position(|&x| x == nx) {
                path.truncate(pos + 1);
            } else {
                path.push(nx);
            }
            cur = nx;
        }
        paths.push(path);
    }
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(paths)
}
