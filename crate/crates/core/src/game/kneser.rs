use crate::graph::{binomial, k_subsets, kneser, Family, Graph, GraphError};
use crate::rat::Rat;
use crate::reconfig::{apply_move_plan, can_reconfigure, FDFunction, Move, MovePlan};

use super::defenders::Defender;
use super::GameError;

/// The canonical state of `KG(n,2)` rooted at `root`: 1 on the root and
/// `1/C(n-3,2)` on each neighbour. For the Petersen graph (`n = 5`) the
/// root carries 1 and each of its six non-neighbours carries `1/3`.
pub fn kneser_canonical_state(n: usize, root: usize) -> Result<FDFunction, GraphError> {
    let sets = kneser_sets(n)?;
    let r = *sets.get(root).ok_or(GraphError::InvalidVertex { vertex: root, n: sets.len() })?;
    let mut w = FDFunction::zeros(sets.len());
    for (v, &s) in sets.iter().enumerate() {
        let value = if v == root {
            Rat::one()
        } else if n == 5 {
            if s & r != 0 { Rat::new(1, 3) } else { Rat::zero() }
        } else if s & r == 0 {
            Rat::new(1, binomial(n - 3, 2) as i64)
        } else {
            Rat::zero()
        };
        w.set(v, value);
    }
    Ok(w)
}

fn kneser_sets(n: usize) -> Result<Vec<u64>, GraphError> {
    if !(5..=63).contains(&n) {
        return Err(GraphError::InvalidParams(format!("canonical Kneser strategy needs 5 <= n, got {n}")));
    }
    Ok(k_subsets(n, 2))
}

/// The canonical eternal strategy on `KG(n,2)`: every state is a canonical
/// state, and an attack at `a` moves to the state rooted at `a`.
#[derive(Debug, Clone)]
pub struct KneserCanonical {
    n: usize,
    sets: Vec<u64>,
    share: Rat,
}

impl KneserCanonical {
    /// Accepts only graphs whose edges are exactly those of `KG(n,2)` for the
    /// `n` given by the tag or by the vertex count.
    pub fn new(g: &Graph) -> Result<KneserCanonical, GameError> {
        let n = match g.tag() {
            Some(t) if t.family == Family::Kneser && t.param(1) == 2 => t.param(0),
            _ => (5..=63).find(|&n| binomial(n, 2) >= g.n()).unwrap_or(0),
        };
        let reference = kneser(n, 2).map_err(|_| not_kneser())?;
        if reference.n() != g.n() || reference.edges() != g.edges() {
            return Err(not_kneser());
        }
        let share = if n == 5 { Rat::new(1, 3) } else { Rat::new(1, binomial(n - 3, 2) as i64) };
        Ok(KneserCanonical { n, sets: k_subsets(n, 2), share })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state(&self, root: usize) -> FDFunction {
        kneser_canonical_state(self.n, root).expect("root in range")
    }

    pub fn weight(&self) -> Rat {
        if self.n == 5 {
            Rat::from_int(3)
        } else {
            Rat::new(2 * self.n as i64 - 6, self.n as i64 - 4)
        }
    }

    fn disjoint(&self, a: usize, b: usize) -> bool {
        self.sets[a] & self.sets[b] == 0
    }

    /// The transfer from the state rooted at `r` to the one rooted at `a`.
    pub fn plan(&self, r: usize, a: usize) -> MovePlan {
        let m = self.sets.len();
        if r == a {
            return MovePlan::default();
        }
        let c = self.share.clone();
        let mut moves = Vec::new();
        let adjacent = self.disjoint(r, a);
        if self.n == 5 {
            let non_nbrs = |x: usize| (0..m).filter(move |&v| v != x && !self.disjoint(v, x));
            if adjacent {
                moves.push(Move { from: r, to: a, amount: Rat::one() });
                // Vacated non-neighbours of r reach the new ones through a
                // vertex that is a non-neighbour of both roots.
                let vacate: Vec<usize> = non_nbrs(r).filter(|&v| self.disjoint(v, a)).collect();
                let fill: Vec<usize> = non_nbrs(a).filter(|&v| self.disjoint(v, r)).collect();
                let mids: Vec<usize> = non_nbrs(r).filter(|&v| !self.disjoint(v, a)).collect();
                let route = petersen_routes(self, &vacate, &fill, &mids);
                for (x, mid, y) in route {
                    moves.push(Move { from: x, to: mid, amount: c.clone() });
                    moves.push(Move { from: mid, to: y, amount: c.clone() });
                }
            } else {
                for v in 0..m {
                    if self.disjoint(v, a) && !self.disjoint(v, r) && v != r {
                        moves.push(Move { from: v, to: a, amount: c.clone() });
                    }
                    if self.disjoint(v, r) && !self.disjoint(v, a) && v != a {
                        moves.push(Move { from: r, to: v, amount: c.clone() });
                    }
                }
            }
        } else if adjacent {
            moves.push(Move { from: r, to: a, amount: Rat::one() - &c });
            let left: Vec<usize> = (0..m).filter(|&v| v != a && self.disjoint(v, r) && !self.disjoint(v, a)).collect();
            let right: Vec<usize> = (0..m).filter(|&v| v != r && self.disjoint(v, a) && !self.disjoint(v, r)).collect();
            moves.extend(self.matched_moves(&left, &right));
        } else {
            for v in 0..m {
                if self.disjoint(v, r) && self.disjoint(v, a) {
                    moves.push(Move { from: v, to: a, amount: c.clone() });
                    moves.push(Move { from: r, to: v, amount: c.clone() });
                }
            }
            let left: Vec<usize> = (0..m).filter(|&v| self.disjoint(v, r) && !self.disjoint(v, a)).collect();
            let right: Vec<usize> = (0..m).filter(|&v| self.disjoint(v, a) && !self.disjoint(v, r)).collect();
            moves.extend(self.matched_moves(&left, &right));
        }
        MovePlan::new(moves)
    }

    fn matched_moves(&self, left: &[usize], right: &[usize]) -> Vec<Move> {
        let adj: Vec<Vec<usize>> =
            left.iter().map(|&u| (0..right.len()).filter(|&j| self.disjoint(u, right[j])).collect()).collect();
        bipartite_matching(&adj, right.len())
            .into_iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| Move { from: left[i], to: right[j], amount: self.share.clone() }))
            .collect()
    }
}

fn petersen_routes(k: &KneserCanonical, vacate: &[usize], fill: &[usize], mids: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut best = Vec::new();
    for &m0 in mids {
        for &m1 in mids {
            if m0 == m1 || vacate.len() != 2 || fill.len() != 2 {
                continue;
            }
            for (y0, y1) in [(fill[0], fill[1]), (fill[1], fill[0])] {
                let ok = k.disjoint(vacate[0], m0) && k.disjoint(m0, y0) && k.disjoint(vacate[1], m1) && k.disjoint(m1, y1);
                if ok {
                    best = vec![(vacate[0], m0, y0), (vacate[1], m1, y1)];
                    return best;
                }
            }
        }
    }
    best
}

/// Kuhn's augmenting-path matching; `adj[i]` lists right vertices adjacent to left `i`.
fn bipartite_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|o| augment(o, adj, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for i in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(i, adj, &mut seen, &mut owner);
    }
    let mut out = vec![None; adj.len()];
    for (j, o) in owner.into_iter().enumerate() {
        if let Some(i) = o {
            out[i] = Some(j);
        }
    }
    out
}

fn not_kneser() -> GameError {
    GameError::WrongShape("kneser_canonical needs a Kneser graph KG(n,2) with n >= 5".into())
}

impl Defender for KneserCanonical {
    fn name(&self) -> &'static str {
        "kneser_canonical"
    }

    fn respond(&mut self, g: &Graph, state: &FDFunction, attack: usize) -> Result<Option<MovePlan>, GameError> {
        g.check_vertex(attack)?;
        state.check_len(g.n())?;
        let root = (0..g.n())
            .find(|&v| *state.weight(v) == Rat::one())
            .filter(|&r| *state == self.state(r))
            .ok_or_else(|| GameError::WrongShape(format!("{state} is not a canonical Kneser state")))?;
        let target = self.state(attack);
        let plan = self.plan(root, attack);
        if apply_move_plan(g, state, &plan).is_ok_and(|w| w == target) {
            return Ok(Some(plan));
        }
        Ok(can_reconfigure(g, state, &target)?)
    }
}
