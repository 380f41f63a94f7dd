//! Exact isomorphism test for small graphs: colour refinement followed by
//! backtracking in BFS order with adjacency-consistency pruning.

use std::collections::BTreeMap;

use super::{Graph, GraphError};

/// Largest graph accepted by [`are_isomorphic`].
pub const ISO_BUDGET: usize = 24;

/// Stable colouring of the disjoint union of `g` and `h` (1-WL).
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let graphs = [g, h];
    let mut colors: Vec<Vec<usize>> = graphs.iter().map(|x| (0..x.n()).map(|v| x.degree(v)).collect()).collect();
    loop {
        let mut palette: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut sigs: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
        for (gi, x) in graphs.iter().enumerate() {
            let mut s = Vec::with_capacity(x.n());
            for v in 0..x.n() {
                let mut nb: Vec<usize> = x.neighbors(v).iter().map(|&u| colors[gi][u]).collect();
                nb.sort_unstable();
                s.push((colors[gi][v], nb));
            }
            sigs.push(s);
        }
        for s in &sigs {
            for sig in s {
                let next = palette.len();
                palette.entry(sig.clone()).or_insert(next);
            }
        }
        let new: Vec<Vec<usize>> = sigs.iter().map(|s| s.iter().map(|sig| palette[sig]).collect()).collect();
        let old_classes = colors.iter().flatten().collect::<std::collections::BTreeSet<_>>().len();
        colors = new;
        if palette.len() == old_classes {
            break;
        }
    }
    let h_colors = colors.pop().unwrap();
    (colors.pop().unwrap(), h_colors)
}

/// Returns an isomorphism `g -> h` as a vertex map, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    for x in [g, h] {
        if x.n() > ISO_BUDGET {
            return Err(GraphError::SizeLimitExceeded { op: "isomorphism", n: x.n(), limit: ISO_BUDGET });
        }
    }
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (cg, ch) = refine(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(None);
    }
    // BFS order over g (restarting per component) so mapped neighbours
    // constrain each new vertex.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut q = std::collections::VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        g: &Graph,
        h: &Graph,
        cg: &[usize],
        ch: &[usize],
        order: &[usize],
        k: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let u = order[k];
        for c in 0..h.n() {
            if used[c] || ch[c] != cg[u] {
                continue;
            }
            let consistent = order[..k].iter().all(|&w| g.has_edge(u, w) == h.has_edge(c, map[w]));
            if !consistent {
                continue;
            }
            map[u] = c;
            used[c] = true;
            if rec(g, h, cg, ch, order, k + 1, map, used) {
                return true;
            }
            used[c] = false;
            map[u] = usize::MAX;
        }
        false
    }
    Ok(rec(g, h, &cg, &ch, &order, 0, &mut map, &mut used).then_some(map))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    find_isomorphism(g, h).map(|m| m.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn known_pairs() {
        assert!(are_isomorphic(&prism(4).unwrap(), &hypercube(3).unwrap()).unwrap());
        assert!(are_isomorphic(&moebius(3).unwrap(), &complete_multipartite(&[3, 3]).unwrap()).unwrap());
        assert!(!are_isomorphic(&prism(5).unwrap(), &moebius(5).unwrap()).unwrap());
        assert!(!are_isomorphic(&prism(3).unwrap(), &moebius(3).unwrap()).unwrap());
        assert!(are_isomorphic(&grid(2, 3).unwrap(), &grid(3, 2).unwrap()).unwrap());
    }

    #[test]
    fn relabelled_copy() {
        let g = kneser(5, 2).unwrap();
        let perm: Vec<usize> = vec![3, 7, 1, 9, 0, 2, 8, 5, 4, 6];
        let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::from_edges(10, &edges).unwrap();
        let m = find_isomorphism(&g, &h).unwrap().unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(m[u], m[v]));
        }
    }
}
