//! Generators for every graph family the library reasons about.
//!
//! Vertex numbering is fixed so certificates and fixtures stay portable:
//! products map `(u, v)` to `u * |V(H)| + v`, Kneser and `gtd` vertices are
//! subsets listed in lexicographic order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ClassTag, Family, Graph, GraphError};

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParams(msg.into())
}

fn tagged(g: Graph, family: Family, params: &[usize]) -> Graph {
    g.with_tag(ClassTag { family, params: params.iter().map(|&p| p as u64).collect() })
}

/// Vertex budget for generators, to keep accidental huge requests cheap to reject.
pub const MAX_GENERATED_VERTICES: usize = 1 << 16;

fn check_size(n: usize) -> Result<(), GraphError> {
    if n > MAX_GENERATED_VERTICES {
        Err(invalid(format!("{n} vertices exceeds the generator limit {MAX_GENERATED_VERTICES}")))
    } else {
        Ok(())
    }
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("path needs n >= 1"));
    }
    check_size(n)?;
    Ok(tagged(Graph::from_edges_unchecked(n, (1..n).map(|i| (i - 1, i))), Family::Path, &[n]))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    check_size(n)?;
    Ok(tagged(Graph::from_edges_unchecked(n, (0..n).map(|i| (i, (i + 1) % n))), Family::Cycle, &[n]))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("complete needs n >= 1"));
    }
    check_size(n)?;
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Ok(tagged(Graph::from_edges_unchecked(n, edges), Family::Complete, &[n]))
}

/// `K_{n_1, ..., n_k}` with the parts numbered consecutively.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(invalid("complete_multipartite needs nonempty parts"));
    }
    let n: usize = parts.iter().sum();
    check_size(n)?;
    let mut part_of = Vec::with_capacity(n);
    for (p, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat(p).take(size));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| part_of[u] != part_of[v]);
    let g = Graph::from_edges_unchecked(n, edges.collect::<Vec<_>>());
    Ok(tagged(g, Family::CompleteMultipartite, parts))
}

/// `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(invalid("star needs k >= 1"));
    }
    check_size(k + 1)?;
    Ok(tagged(Graph::from_edges_unchecked(k + 1, (1..=k).map(|i| (0, i))), Family::Star, &[k]))
}

/// All `k`-subsets of `0..n` as bit masks, in lexicographic order of their
/// sorted element lists.
pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, cur | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Kneser graph `KG_{n,k}`: `k`-subsets of `0..n`, adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph, GraphError> {
    if k == 0 || n < 2 * k || n > 63 {
        return Err(invalid("kneser needs 1 <= k, 2k <= n <= 63"));
    }
    check_size(binomial(n, k))?;
    let sets = k_subsets(n, k);
    let mut edges = Vec::new();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sets[a] & sets[b] == 0 {
                edges.push((a, b));
            }
        }
    }
    Ok(tagged(Graph::from_edges_unchecked(sets.len(), edges), Family::Kneser, &[n, k]))
}

/// `Q_d` on bit strings, adjacent when they differ in one bit.
pub fn hypercube(d: usize) -> Result<Graph, GraphError> {
    if d > 16 {
        return Err(invalid("hypercube dimension above 16"));
    }
    let n = 1usize << d;
    let edges = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v);
    Ok(tagged(Graph::from_edges_unchecked(n, edges.collect::<Vec<_>>()), Family::Hypercube, &[d]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Cartesian,
    Strong,
}

/// Cartesian or strong product with `(u, v) -> u * |V(H)| + v`.
///
/// Products of two paths and of a cycle with `K_2` carry the matching
/// family tag.
pub fn product(g: &Graph, h: &Graph, kind: ProductKind) -> Result<Graph, GraphError> {
    if g.n() == 0 || h.n() == 0 {
        return Err(invalid("product of an empty graph"));
    }
    let (ng, nh) = (g.n(), h.n());
    check_size(ng * nh)?;
    let idx = |u: usize, v: usize| u * nh + v;
    let mut edges = Vec::new();
    for u in 0..ng {
        for v in 0..nh {
            for &v2 in h.neighbors(v) {
                if v2 > v {
                    edges.push((idx(u, v), idx(u, v2)));
                }
            }
            for &u2 in g.neighbors(u) {
                if u2 > u {
                    edges.push((idx(u, v), idx(u2, v)));
                    if kind == ProductKind::Strong {
                        for &v2 in h.neighbors(v) {
                            edges.push((idx(u, v), idx(u2, v2)));
                        }
                    }
                }
            }
        }
    }
    let out = Graph::from_edges_unchecked(ng * nh, edges);
    let tag = match (g.tag().map(|t| (t.family, t.params.as_slice())), h.tag().map(|t| (t.family, t.params.as_slice()))) {
        (Some((Family::Path, [m])), Some((Family::Path, [n]))) => Some(match kind {
            ProductKind::Cartesian => (Family::Grid, vec![*m, *n]),
            ProductKind::Strong => (Family::StrongGrid, vec![*m, *n]),
        }),
        (Some((Family::Cycle, [n])), Some((Family::Complete, [2]))) if kind == ProductKind::Cartesian => {
            Some((Family::Prism, vec![*n]))
        }
        _ => None,
    };
    Ok(match tag {
        Some((family, params)) => out.with_tag(ClassTag { family, params }),
        None => out,
    })
}

/// `C_n □ K_2`, vertex `(i, j)` at index `2i + j`.
pub fn prism(n: usize) -> Result<Graph, GraphError> {
    product(&cycle(n)?, &complete(2)?, ProductKind::Cartesian)
}

/// `Cay(Z_{2n}, {±1, n})`: vertex `i` adjacent to `i ± 1` and `i + n`.
pub fn moebius(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("moebius needs n >= 3"));
    }
    check_size(2 * n)?;
    let m = 2 * n;
    let edges = (0..m).flat_map(|i| [(i, (i + 1) % m), (i, (i + n) % m)]);
    let mut list: Vec<(usize, usize)> = edges.map(|(u, v)| (u.min(v), u.max(v))).collect();
    list.sort_unstable();
    list.dedup();
    Ok(tagged(Graph::from_edges_unchecked(m, list), Family::Moebius, &[n]))
}

/// Split graph `G_{t,d}`: clique `X = 0..t`, then `Y` (the `d`-subsets of
/// `X` in lexicographic order), then the copy `Y'` in the same order. Each
/// `x` is adjacent to the subsets containing it.
pub fn gtd(t: usize, d: usize) -> Result<Graph, GraphError> {
    gq(t, d, 1).map(|g| {
        let g = g.without_tag();
        tagged(g, Family::Gtd, &[t, d])
    })
}

/// `G_{t,d}` with every vertex of `Y ∪ Y'` replaced by a path `P_h` whose
/// vertices are all joined to the replaced vertex's neighbourhood. The
/// blocks keep the `gtd` order, each block's path vertices consecutive.
pub fn gq(t: usize, d: usize, h: usize) -> Result<Graph, GraphError> {
    if d == 0 || t < d || t > 20 || h == 0 {
        return Err(invalid("gq needs 1 <= d <= t <= 20 and h >= 1"));
    }
    let subsets = k_subsets(t, d);
    let blocks = 2 * subsets.len();
    let n = t + blocks * h;
    check_size(n)?;
    let mut edges = Vec::new();
    for a in 0..t {
        for b in a + 1..t {
            edges.push((a, b));
        }
    }
    for blk in 0..blocks {
        let set = subsets[blk % subsets.len()];
        let base = t + blk * h;
        for p in 0..h {
            for x in 0..t {
                if set >> x & 1 == 1 {
                    edges.push((x, base + p));
                }
            }
            if p + 1 < h {
                edges.push((base + p, base + p + 1));
            }
        }
    }
    Ok(tagged(Graph::from_edges_unchecked(n, edges), Family::Gq, &[t, d, h]))
}

/// Uniform random labelled tree on `n` vertices by Prüfer decoding with a
/// ChaCha8 generator seeded from `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("tree needs n >= 1"));
    }
    check_size(n)?;
    let edges = if n <= 2 {
        (1..n).map(|i| (0, i)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        prufer_decode(n, &seq)
    };
    Ok(tagged(Graph::from_edges_unchecked(n, edges), Family::Tree, &[n, seed as usize]))
}

/// Decodes a Prüfer sequence of length `n - 2`.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    for &s in seq {
        let std::cmp::Reverse(leaf) = heap.pop().expect("valid sequence");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            heap.push(std::cmp::Reverse(s));
        }
    }
    let std::cmp::Reverse(a) = heap.pop().expect("two vertices remain");
    let std::cmp::Reverse(b) = heap.pop().expect("two vertices remain");
    edges.push((a.min(b), a.max(b)));
    edges
}

/// `P_m □ P_n`.
pub fn grid(m: usize, n: usize) -> Result<Graph, GraphError> {
    product(&path(m)?, &path(n)?, ProductKind::Cartesian)
}

/// `P_m ⊠ P_n`.
pub fn strong_grid(m: usize, n: usize) -> Result<Graph, GraphError> {
    product(&path(m)?, &path(n)?, ProductKind::Strong)
}

/// Path `v_1 .. v_{3k}` (indices `0..3k`) with two pendant leaves on every
/// `v_i`, `i ≡ 2 (mod 3)`. The leaves `x_i, y_i` follow the spine in order of
/// `i`.
pub fn caterpillar(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(invalid("caterpillar needs k >= 1"));
    }
    let spine = 3 * k;
    check_size(spine + 2 * k)?;
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    for r in 0..k {
        let v = 3 * r + 1;
        edges.push((v, spine + 2 * r));
        edges.push((v, spine + 2 * r + 1));
    }
    Ok(tagged(Graph::from_edges_unchecked(spine + 2 * k, edges), Family::Caterpillar, &[k]))
}

/// Leaf pair `(x_i, y_i)` attached to spine vertex `v_i` (1-indexed,
/// `i ≡ 2 mod 3`) of [`caterpillar`].
pub fn caterpillar_leaves(k: usize, r: usize) -> (usize, usize) {
    assert!(r < k);
    (3 * k + 2 * r, 3 * k + 2 * r + 1)
}

/// Random split graph: clique `0..clique`, independent set after it, each
/// clique/independent pair joined with probability 1/2. Untagged.
pub fn random_split(clique: usize, independent: usize, seed: u64) -> Result<Graph, GraphError> {
    if clique + independent == 0 {
        return Err(invalid("random_split needs at least one vertex"));
    }
    check_size(clique + independent)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..clique {
        for b in a + 1..clique {
            edges.push((a, b));
        }
    }
    for y in clique..clique + independent {
        for x in 0..clique {
            if rng.gen_bool(0.5) {
                edges.push((x, y));
            }
        }
    }
    Ok(Graph::from_edges_unchecked(clique + independent, edges))
}

/// Builds the graph described by a tag.
pub fn generate(tag: &ClassTag) -> Result<Graph, GraphError> {
    let t = ClassTag::new(tag.family, tag.params.clone())?;
    let p = |i: usize| t.params[i] as usize;
    match t.family {
        Family::Path => path(p(0)),
        Family::Cycle => cycle(p(0)),
        Family::Complete => complete(p(0)),
        Family::CompleteMultipartite => {
            complete_multipartite(&t.params.iter().map(|&x| x as usize).collect::<Vec<_>>())
        }
        Family::Star => star(p(0)),
        Family::Kneser => kneser(p(0), p(1)),
        Family::Hypercube => hypercube(p(0)),
        Family::Prism => prism(p(0)),
        Family::Moebius => moebius(p(0)),
        Family::Gtd => gtd(p(0), p(1)),
        Family::Gq => gq(p(0), p(1), p(2)),
        Family::Tree => random_tree(p(0), t.params[1]),
        Family::Grid => grid(p(0), p(1)),
        Family::StrongGrid => strong_grid(p(0), p(1)),
        Family::Caterpillar => caterpillar(p(0)),
        Family::Generic => Err(invalid("generic graphs have no generator")),
    }
}
