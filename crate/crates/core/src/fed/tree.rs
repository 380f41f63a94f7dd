use crate::graph::{Graph, GraphError};

/// `fed(T) = med(T)` for a tree, by peeling leaves off a vertex of largest
/// eccentricity that carries a leaf.
pub fn med_tree(t: &Graph) -> Result<usize, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let mut g = t.clone().without_tag();
    let mut acc = 0;
    loop {
        let n = g.n();
        if n <= 2 {
            return Ok(acc + 1);
        }
        if g.max_degree() == n - 1 {
            return Ok(acc + 2);
        }
        let ecc: Vec<usize> = (0..n).map(|v| g.distances_from(v).into_iter().max().unwrap_or(0)).collect();
        let x = (0..n)
            .filter(|&v| ecc[v] >= 2 && g.neighbors(v).iter().any(|&u| g.degree(u) == 1))
            .max_by(|&a, &b| ecc[a].cmp(&ecc[b]).then(b.cmp(&a)))
            .expect("a non-star tree has a leaf neighbour of eccentricity >= 2");
        let leaves: Vec<usize> = g.neighbors(x).iter().copied().filter(|&u| g.degree(u) == 1).collect();
        let remove = if leaves.len() == 1 { vec![x, leaves[0]] } else { leaves };
        g = g.remove_vertices(&remove);
        acc += 1;
    }
}
