//! Structural recognition used by the closed-form dispatcher.

use serde::Serialize;

use super::iso::{are_isomorphic, ISO_BUDGET};
use super::{complete, hypercube, moebius, prism, ClassTag, Family, Graph, GraphError, VertexSet};

/// The cubic abelian Cayley graphs, up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum CubicCayley {
    K4,
    Q3,
    Prism(usize),
    Moebius(usize),
}

impl CubicCayley {
    pub fn tag(self) -> ClassTag {
        let (family, params) = match self {
            CubicCayley::K4 => (Family::Complete, vec![4]),
            CubicCayley::Q3 => (Family::Hypercube, vec![3]),
            CubicCayley::Prism(n) => (Family::Prism, vec![n as u64]),
            CubicCayley::Moebius(n) => (Family::Moebius, vec![n as u64]),
        };
        ClassTag { family, params }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_complete: bool,
    pub universal_vertex: Option<usize>,
    pub every_edge_dominating: bool,
    pub is_connected: bool,
    pub is_tree: bool,
    /// Parts of a complete multipartite structure (at least two parts).
    pub complete_multipartite: Option<Vec<VertexSet>>,
    /// Split partition `(X, Y)`: `X` a clique, `Y` independent.
    pub split: Option<(VertexSet, VertexSet)>,
    /// Cubic abelian Cayley graphs this graph is isomorphic to; `None` when
    /// the graph is cubic but too large for the isomorphism search.
    pub cubic_cayley: Option<Vec<CubicCayley>>,
    /// Family tags inferred from the structure (most specific first).
    pub tags: Vec<ClassTag>,
}

fn dominating_pair(g: &Graph, u: usize, v: usize) -> bool {
    let mut seen = vec![false; g.n()];
    for &x in g.closed_nbhd(u).iter().chain(g.closed_nbhd(v).iter()) {
        seen[x] = true;
    }
    seen.into_iter().all(|b| b)
}

fn multipartite_parts(g: &Graph) -> Option<Vec<VertexSet>> {
    // Complete multipartite iff non-adjacency is an equivalence relation.
    let n = g.n();
    let mut part = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if part[v] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (v..n).filter(|&u| u == v || !g.has_edge(u, v)).collect();
        for &u in &members {
            if part[u] != usize::MAX {
                return None;
            }
            part[u] = parts.len();
        }
        parts.push(members);
    }
    for u in 0..n {
        for w in u + 1..n {
            if (part[u] == part[w]) == g.has_edge(u, w) {
                return None;
            }
        }
    }
    (parts.len() >= 2).then(|| parts.into_iter().map(VertexSet::new).collect())
}

fn is_clique(g: &Graph, s: &[usize]) -> bool {
    s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

fn is_independent(g: &Graph, s: &[usize]) -> bool {
    s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
}

/// A split partition `(X, Y)` if one exists, normalised so that `Y` is
/// maximal: no `X` vertex is free of `Y`-neighbours.
///
/// Uses the Hammer–Simeone degree criterion and falls back to checking
/// every maximal clique.
pub fn split_partition(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let d: Vec<usize> = by_degree.iter().map(|&v| g.degree(v)).collect();
    let m = (1..=n).filter(|&i| d[i - 1] + 1 >= i).max().unwrap_or(1);
    let lhs: usize = d[..m].iter().sum();
    let rhs = m * (m - 1) + d[m..].iter().sum::<usize>();
    let mut found: Option<(Vec<usize>, Vec<usize>)> = None;
    if lhs == rhs {
        let (x, y) = by_degree.split_at(m);
        if is_clique(g, x) && is_independent(g, y) {
            found = Some((x.to_vec(), y.to_vec()));
        }
    }
    if found.is_none() && n <= 64 {
        for k in maximal_cliques(g) {
            let x: Vec<usize> = VertexSet::from_mask(k).members().to_vec();
            let y: Vec<usize> = (0..n).filter(|v| k >> v & 1 == 0).collect();
            if is_independent(g, &y) {
                found = Some((x, y));
                break;
            }
        }
    }
    let (mut x, mut y) = found?;
    x.sort_unstable();
    y.sort_unstable();
    if let Some(pos) = x.iter().position(|&v| g.neighbors(v).iter().all(|u| !y.contains(u))) {
        let v = x.remove(pos);
        y.push(v);
    }
    Some((VertexSet::new(x), VertexSet::new(y)))
}

/// Bron–Kerbosch with pivoting, masks (n <= 64).
fn maximal_cliques(g: &Graph) -> Vec<u64> {
    let open: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let mut out = Vec::new();
    fn bk(open: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pu = (p | x).trailing_zeros() as usize;
        let mut cand = p & !open[pu];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            bk(open, r | 1 << v, p & open[v], x & open[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    bk(&open, 0, all, 0, &mut out);
    out.sort_unstable();
    out
}

fn cubic_matches(g: &Graph) -> Result<Vec<CubicCayley>, GraphError> {
    let n = g.n();
    let mut out = Vec::new();
    if n == 4 && are_isomorphic(g, &complete(4)?)? {
        out.push(CubicCayley::K4);
    }
    if n == 8 && are_isomorphic(g, &hypercube(3)?)? {
        out.push(CubicCayley::Q3);
    }
    if n % 2 == 0 && n >= 6 {
        if are_isomorphic(g, &prism(n / 2)?)? {
            out.push(CubicCayley::Prism(n / 2));
        }
        if are_isomorphic(g, &moebius(n / 2)?)? {
            out.push(CubicCayley::Moebius(n / 2));
        }
    }
    Ok(out)
}

/// Structural report on `g`. Cubic-Cayley matching is skipped (reported as
/// `None`) above the isomorphism budget; everything else is always computed.
pub fn classify(g: &Graph) -> Classification {
    let n = g.n();
    let is_complete = g.is_complete();
    let universal_vertex = (0..n).find(|&v| g.degree(v) + 1 == n);
    let edges = g.edges();
    let every_edge_dominating = !edges.is_empty() && edges.iter().all(|&(u, v)| dominating_pair(g, u, v));
    let is_connected = g.is_connected();
    let is_tree = g.is_tree();
    let complete_multipartite = multipartite_parts(g);
    let split = split_partition(g);
    let cubic_cayley = if n > 0 && g.is_regular() && g.max_degree() == 3 {
        if n <= ISO_BUDGET {
            Some(cubic_matches(g).expect("within budget"))
        } else {
            None
        }
    } else {
        Some(Vec::new())
    };

    let mut tags = Vec::new();
    let t = |f: Family, p: Vec<usize>| ClassTag { family: f, params: p.into_iter().map(|x| x as u64).collect() };
    if n > 0 && is_complete {
        tags.push(t(Family::Complete, vec![n]));
    }
    if is_tree && g.max_degree() <= 2 {
        tags.push(t(Family::Path, vec![n]));
    }
    if is_connected && n >= 3 && g.is_regular() && g.max_degree() == 2 {
        tags.push(t(Family::Cycle, vec![n]));
    }
    if is_tree && n >= 2 && universal_vertex.is_some() {
        tags.push(t(Family::Star, vec![n - 1]));
    }
    if let Some(cc) = &cubic_cayley {
        tags.extend(cc.iter().map(|c| c.tag()));
    }
    if let Some(parts) = &complete_multipartite {
        tags.push(t(Family::CompleteMultipartite, parts.iter().map(|p| p.len()).collect()));
    }
    Classification {
        is_complete,
        universal_vertex,
        every_edge_dominating,
        is_connected,
        is_tree,
        complete_multipartite,
        split,
        cubic_cayley,
        tags,
    }
}
