//! Exact combinatorial searches on small graphs.
//!
//! All searches work on 64-bit vertex masks and return the lexicographically
//! least optimal witness. The lexicographic pass always runs as an
//! include-first depth-first search in vertex order, whose leaf order agrees
//! with lexicographic order on the antichains involved.

use super::{Graph, GraphError, VertexSet};

/// Largest graph accepted by the exact searches.
pub const SEARCH_BUDGET: usize = 32;

fn budget(g: &Graph, op: &'static str) -> Result<(), GraphError> {
    if g.n() > SEARCH_BUDGET {
        Err(GraphError::SizeLimitExceeded { op, n: g.n(), limit: SEARCH_BUDGET })
    } else {
        Ok(())
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Mask of vertices with index `>= i`.
fn from_index(i: usize, n: usize) -> u64 {
    full_mask(n) & !full_mask(i)
}

pub fn is_dominating_set(g: &Graph, s: &VertexSet) -> bool {
    g.closed_neighborhood(s).len() == g.n()
}

/// Closed neighbourhoods of `s` pairwise disjoint.
pub fn is_two_packing(g: &Graph, s: &VertexSet) -> bool {
    let mut seen = vec![false; g.n()];
    for v in s.iter() {
        for u in g.closed_nbhd(v) {
            if std::mem::replace(&mut seen[u], true) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------- domination

struct DomSearch<'a> {
    masks: &'a [u64],
    max_cover: u32,
    best: usize,
}

impl DomSearch<'_> {
    fn lower(&self, undominated: u64) -> usize {
        (undominated.count_ones()).div_ceil(self.max_cover) as usize
    }

    fn run(&mut self, undominated: u64, used: usize) {
        if undominated == 0 {
            self.best = self.best.min(used);
            return;
        }
        if used + self.lower(undominated) >= self.best {
            return;
        }
        // Branch on the undominated vertex with the fewest possible dominators.
        let mut pick = 0usize;
        let mut fewest = u32::MAX;
        let mut rest = undominated;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = self.masks[u].count_ones();
            if c < fewest {
                fewest = c;
                pick = u;
            }
        }
        let mut options: Vec<usize> = bits(self.masks[pick]).collect();
        options.sort_by_key(|&v| std::cmp::Reverse((self.masks[v] & undominated).count_ones()));
        for v in options {
            self.run(undominated & !self.masks[v], used + 1);
        }
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn greedy_domination(masks: &[u64], n: usize) -> usize {
    let mut undominated = full_mask(n);
    let mut count = 0;
    while undominated != 0 {
        let v = (0..n).max_by_key(|&v| ((masks[v] & undominated).count_ones(), std::cmp::Reverse(v))).unwrap();
        undominated &= !masks[v];
        count += 1;
    }
    count
}

/// Lexicographically least dominating set of size exactly `k`, if any.
fn lex_dominating(masks: &[u64], n: usize, k: usize) -> Option<u64> {
    fn rec(masks: &[u64], n: usize, idx: usize, undominated: u64, slots: usize, chosen: u64) -> Option<u64> {
        if undominated == 0 {
            return Some(chosen);
        }
        if slots == 0 || idx >= n {
            return None;
        }
        let avail = from_index(idx, n);
        // Every undominated vertex needs a dominator at index >= idx.
        let mut rest = undominated;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if masks[u] & avail == 0 {
                return None;
            }
        }
        let mut max_cover = 0;
        for v in idx..n {
            max_cover = max_cover.max((masks[v] & undominated).count_ones());
        }
        if (slots as u32) * max_cover < undominated.count_ones() {
            return None;
        }
        if let Some(s) = rec(masks, n, idx + 1, undominated & !masks[idx], slots - 1, chosen | 1 << idx) {
            return Some(s);
        }
        rec(masks, n, idx + 1, undominated, slots, chosen)
    }
    rec(masks, n, 0, full_mask(n), k, 0)
}

/// A minimum dominating set, lexicographically least among minimum ones.
pub fn minimum_dominating_set(g: &Graph) -> Result<VertexSet, GraphError> {
    budget(g, "domination_number")?;
    let n = g.n();
    if n == 0 {
        return Ok(VertexSet::empty());
    }
    let masks = g.closed_masks();
    let max_cover = masks.iter().map(|m| m.count_ones()).max().unwrap_or(1);
    let mut search = DomSearch { masks: &masks, max_cover, best: greedy_domination(&masks, n) };
    search.run(full_mask(n), 0);
    let set = lex_dominating(&masks, n, search.best).expect("a dominating set of optimal size exists");
    Ok(VertexSet::from_mask(set))
}

pub fn domination_number(g: &Graph) -> Result<usize, GraphError> {
    minimum_dominating_set(g).map(|s| s.len())
}

// -------------------------------------------------------------- independence

/// Upper bound on α of the subgraph induced by `cand`: size of a greedy
/// clique cover.
fn clique_cover_bound(open: &[u64], cand: u64) -> usize {
    let mut rest = cand;
    let mut cliques = 0;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let mut clique_common = open[v] & rest;
        rest &= !(1u64 << v);
        while clique_common != 0 {
            let u = clique_common.trailing_zeros() as usize;
            rest &= !(1u64 << u);
            clique_common &= open[u];
        }
        cliques += 1;
    }
    cliques
}

struct IndSearch<'a> {
    open: &'a [u64],
    n: usize,
    best: usize,
    best_set: u64,
}

impl IndSearch<'_> {
    /// `cand` holds the still-allowed vertices with index >= `idx`.
    fn run(&mut self, idx: usize, cand: u64, size: usize, chosen: u64) {
        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.best_set = chosen;
            }
            return;
        }
        if size + clique_cover_bound(self.open, cand) <= self.best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        debug_assert!(v >= idx && v < self.n);
        let after = cand & !(1u64 << v);
        self.run(v + 1, after & !self.open[v], size + 1, chosen | 1 << v);
        self.run(v + 1, after, size, chosen);
    }
}

/// A maximum independent set, lexicographically least among maximum ones.
pub fn maximum_independent_set(g: &Graph) -> Result<VertexSet, GraphError> {
    budget(g, "independence_number")?;
    let n = g.n();
    let open: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let mut s = IndSearch { open: &open, n, best: 0, best_set: 0 };
    if n > 0 {
        s.run(0, full_mask(n), 0, 0);
    }
    Ok(VertexSet::from_mask(s.best_set))
}

pub fn independence_number(g: &Graph) -> Result<usize, GraphError> {
    maximum_independent_set(g).map(|s| s.len())
}

// ------------------------------------------------------------------ packings

/// Result of [`two_packing_lower`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingBound {
    pub bound: usize,
    pub witness: VertexSet,
    /// True when the witness fails to dominate and the `+1` rule applied.
    pub strict: bool,
}

struct PackSearch<'a> {
    masks: &'a [u64],
    n: usize,
    best: usize,
    best_set: u64,
    best_strict: bool,
}

impl PackSearch<'_> {
    fn available(&self, covered: u64, from: usize) -> u64 {
        let mut m = 0;
        for v in from..self.n {
            if self.masks[v] & covered == 0 {
                m |= 1 << v;
            }
        }
        m
    }

    fn run(&mut self, idx: usize, covered: u64, size: usize, chosen: u64) {
        let cand = self.available(covered, idx);
        if cand == 0 {
            // Leaf: keep only maximal packings.
            if self.available(covered, 0) != 0 {
                return;
            }
            let strict = covered != full_mask(self.n);
            let value = size + strict as usize;
            if value > self.best {
                self.best = value;
                self.best_set = chosen;
                self.best_strict = strict;
            }
            return;
        }
        if size + cand.count_ones() as usize + 1 <= self.best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        self.run(v + 1, covered | self.masks[v], size + 1, chosen | 1 << v);
        self.run(v + 1, covered, size, chosen);
    }
}

/// Best lower bound from 2-packings: `max(|P| + 1)` over packings whose
/// closed neighbourhood misses a vertex, and `|P|` over dominating ones.
pub fn two_packing_lower(g: &Graph) -> Result<PackingBound, GraphError> {
    budget(g, "two_packing_lower")?;
    let n = g.n();
    if n == 0 {
        return Ok(PackingBound { bound: 0, witness: VertexSet::empty(), strict: false });
    }
    let masks = g.closed_masks();
    let mut s = PackSearch { masks: &masks, n, best: 0, best_set: 0, best_strict: false };
    s.run(0, 0, 0, 0);
    Ok(PackingBound { bound: s.best, witness: VertexSet::from_mask(s.best_set), strict: s.best_strict })
}

/// Largest 2-packing size (the first component of [`two_packing_lower`]
/// ignoring the `+1` rule).
pub fn max_two_packing(g: &Graph) -> Result<VertexSet, GraphError> {
    budget(g, "max_two_packing")?;
    let n = g.n();
    let masks = g.closed_masks();
    let mut best = 0u64;
    fn rec(masks: &[u64], n: usize, idx: usize, covered: u64, chosen: u64, best: &mut u64) {
        let mut cand = 0u64;
        for v in idx..n {
            if masks[v] & covered == 0 {
                cand |= 1 << v;
            }
        }
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        if cand == 0 || chosen.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        rec(masks, n, v + 1, covered | masks[v], chosen | 1 << v, best);
        rec(masks, n, v + 1, covered, chosen, best);
    }
    if n > 0 {
        rec(&masks, n, 0, 0, 0, &mut best);
    }
    Ok(VertexSet::from_mask(best))
}

/// An efficient dominating set (closed neighbourhoods partition `V`), the
/// lexicographically least one if several exist.
pub fn efficient_dominating_set(g: &Graph) -> Result<Option<VertexSet>, GraphError> {
    budget(g, "efficient_dominating_set")?;
    let n = g.n();
    if n == 0 {
        return Ok(Some(VertexSet::empty()));
    }
    let masks = g.closed_masks();
    fn rec(masks: &[u64], n: usize, idx: usize, covered: u64, chosen: u64) -> Option<u64> {
        if covered == full_mask(n) {
            return Some(chosen);
        }
        if idx >= n {
            return None;
        }
        // An uncovered vertex whose dominators all lie below idx is lost.
        let later = from_index(idx, n);
        let mut rest = full_mask(n) & !covered;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if masks[u] & later == 0 {
                return None;
            }
        }
        if masks[idx] & covered == 0 {
            if let Some(s) = rec(masks, n, idx + 1, covered | masks[idx], chosen | 1 << idx) {
                return Some(s);
            }
        }
        rec(masks, n, idx + 1, covered, chosen)
    }
    Ok(rec(&masks, n, 0, 0, 0).map(VertexSet::from_mask))
}
