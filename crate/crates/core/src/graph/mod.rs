//! Simple undirected graphs, vertex sets, family tags and text/JSON I/O.

mod classify;
mod connectivity;
mod generators;
mod iso;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use classify::{classify, split_partition, Classification, CubicCayley};
pub use connectivity::{connectivity, disjoint_paths};
pub use generators::*;
pub use iso::{are_isomorphic, ISO_BUDGET};
pub use search::{
    domination_number, efficient_dominating_set, independence_number, is_dominating_set, is_two_packing,
    max_two_packing, maximum_independent_set, minimum_dominating_set, two_packing_lower, PackingBound, SEARCH_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{op} needs n <= {limit}, graph has {n} vertices")]
    SizeLimitExceeded { op: &'static str, n: usize, limit: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("malformed graph input: {0}")]
    Parse(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("only {found} internally disjoint paths exist, {requested} requested")]
    InsufficientConnectivity { found: usize, requested: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    CompleteMultipartite,
    Star,
    Kneser,
    Hypercube,
    Prism,
    Moebius,
    Gtd,
    Gq,
    Tree,
    Grid,
    StrongGrid,
    Caterpillar,
    Generic,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::CompleteMultipartite,
        Family::Star,
        Family::Kneser,
        Family::Hypercube,
        Family::Prism,
        Family::Moebius,
        Family::Gtd,
        Family::Gq,
        Family::Tree,
        Family::Grid,
        Family::StrongGrid,
        Family::Caterpillar,
        Family::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteMultipartite => "complete_multipartite",
            Family::Star => "star",
            Family::Kneser => "kneser",
            Family::Hypercube => "hypercube",
            Family::Prism => "prism",
            Family::Moebius => "moebius",
            Family::Gtd => "gtd",
            Family::Gq => "gq",
            Family::Tree => "tree",
            Family::Grid => "grid",
            Family::StrongGrid => "strong_grid",
            Family::Caterpillar => "caterpillar",
            Family::Generic => "generic",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Required parameter count; `None` means any count.
    pub fn arity(self) -> Option<usize> {
        match self {
            Family::Path
            | Family::Cycle
            | Family::Complete
            | Family::Star
            | Family::Hypercube
            | Family::Prism
            | Family::Moebius
            | Family::Caterpillar => Some(1),
            Family::Kneser | Family::Gtd | Family::Tree | Family::Grid | Family::StrongGrid => Some(2),
            Family::Gq => Some(3),
            Family::CompleteMultipartite | Family::Generic => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Family name plus integer parameters, e.g. `kneser(5, 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassTag {
    pub family: Family,
    pub params: Vec<u64>,
}

impl ClassTag {
    pub fn new(family: Family, params: Vec<u64>) -> Result<ClassTag, GraphError> {
        if let Some(k) = family.arity() {
            if params.len() != k {
                return Err(GraphError::InvalidParams(format!(
                    "{family} takes {k} parameter(s), got {}",
                    params.len()
                )));
            }
        }
        if family == Family::CompleteMultipartite && params.is_empty() {
            return Err(GraphError::InvalidParams("complete_multipartite needs at least one part".into()));
        }
        Ok(ClassTag { family, params })
    }

    pub fn param(&self, i: usize) -> usize {
        self.params[i] as usize
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.family, ps.join(","))
    }
}

/// Sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> VertexSet {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn empty() -> VertexSet {
        VertexSet(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub(crate) fn from_mask(mask: u64) -> VertexSet {
        VertexSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        match self.0.iter().find(|&&v| v >= g.n()) {
            Some(&v) => Err(GraphError::InvalidVertex { vertex: v, n: g.n() }),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", ps.join(","))
    }
}

/// An immutable simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    tag: Option<ClassTag>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::Parse(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(GraphError::Parse(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::Parse(format!("duplicate edge ({u},{})", w[0])));
            }
        }
        Ok(Graph { adj, tag: None })
    }

    /// Builds from adjacency lists, requiring symmetry.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Graph, GraphError> {
        let n = adj.len();
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::Parse(format!("duplicate neighbour at {u}")));
            }
            if list.iter().any(|&v| v >= n || v == u) {
                return Err(GraphError::Parse(format!("bad neighbour list at {u}")));
            }
        }
        for u in 0..n {
            for &v in &adj[u] {
                if adj[v].binary_search(&u).is_err() {
                    return Err(GraphError::Parse(format!("asymmetric adjacency {u}->{v}")));
                }
            }
        }
        Ok(Graph { adj, tag: None })
    }

    /// Internal constructor for generators that build correct edge sets.
    pub(crate) fn from_edges_unchecked(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj, tag: None }
    }

    pub fn with_tag(mut self, tag: ClassTag) -> Graph {
        self.tag = Some(tag);
        self
    }

    pub fn without_tag(mut self) -> Graph {
        self.tag = None;
        self
    }

    pub fn tag(&self) -> Option<&ClassTag> {
        self.tag.as_ref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// `N[v]` in increasing order.
    pub fn closed_nbhd(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let pos = self.adj[v].partition_point(|&u| u < v);
        out.extend_from_slice(&self.adj[v][..pos]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][pos..]);
        out
    }

    /// `N[S]`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut all = Vec::new();
        for v in s.iter() {
            all.push(v);
            all.extend_from_slice(&self.adj[v]);
        }
        VertexSet::new(all)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    /// Breadth-first distances from `s` (`usize::MAX` if unreachable).
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = std::collections::VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Subgraph induced by `keep` (sorted ascending), relabelled in order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v].iter().filter_map(|&u| (index[u] != usize::MAX).then_some(index[u])).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph { adj, tag: None }
    }

    /// `G - S`, with the remaining vertices relabelled preserving order.
    pub fn remove_vertices(&self, remove: &[usize]) -> Graph {
        let mut gone = vec![false; self.n()];
        for &v in remove {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Closed neighbourhoods as bit masks (requires `n <= 64`).
    pub(crate) fn closed_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64);
        (0..self.n())
            .map(|v| self.adj[v].iter().fold(1u64 << v, |m, &u| m | 1u64 << u))
            .collect()
    }

    /// Parses either Graph JSON or the `n m` edge-list text format, choosing
    /// by the first non-blank character.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        if text.trim_start().starts_with('{') {
            Graph::from_json(text)
        } else {
            Graph::from_edge_list(text)
        }
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        Graph::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serialization cannot fail")
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
        let nums = parse_pair(header)?;
        let (n, m) = (nums.0, nums.1);
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(GraphError::Parse(format!("header promises {m} edges, found {}", edges.len())));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(GraphError::Parse(format!("expected two integers, got `{line}`")));
    }
    let a = parts[0].parse().map_err(|_| GraphError::Parse(format!("bad integer in `{line}`")))?;
    let b = parts[1].parse().map_err(|_| GraphError::Parse(format!("bad integer in `{line}`")))?;
    Ok((a, b))
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    tag: Option<ClassTag>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> GraphJson {
        GraphJson { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(), tag: g.tag.clone() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;
    fn try_from(raw: GraphJson) -> Result<Graph, GraphError> {
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(raw.n, &edges)?;
        match raw.tag {
            Some(t) => Ok(g.with_tag(ClassTag::new(t.family, t.params)?)),
            None => Ok(g),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        Graph::try_from(raw).map_err(serde::de::Error::custom)
    }
}
