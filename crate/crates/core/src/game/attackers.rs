use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::reconfig::FDFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttackerPolicy {
    /// Uniform over vertices, reproducible from the seed.
    Random { seed: u64 },
    /// The vertex with the least closed-neighbourhood weight, least index on ties.
    Greedy,
    /// A fixed sequence, repeated once exhausted.
    Scripted(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct Attacker {
    policy: AttackerPolicy,
    rng: Option<ChaCha8Rng>,
    pos: usize,
}

impl Attacker {
    pub fn new(policy: AttackerPolicy) -> Attacker {
        let rng = match policy {
            AttackerPolicy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Attacker { policy, rng, pos: 0 }
    }

    pub fn policy(&self) -> &AttackerPolicy {
        &self.policy
    }

    pub fn next(&mut self, g: &Graph, state: &FDFunction) -> usize {
        match &self.policy {
            AttackerPolicy::Random { .. } => {
                let n = g.n().max(1);
                self.rng.as_mut().expect("seeded").gen_range(0..n)
            }
            AttackerPolicy::Greedy => (0..g.n()).min_by_key(|&v| (state.nbhd_sum(g, v), v)).unwrap_or(0),
            AttackerPolicy::Scripted(seq) => {
                if seq.is_empty() {
                    return 0;
                }
                let v = seq[self.pos % seq.len()];
                self.pos += 1;
                v
            }
        }
    }
}

/// Zig-zag along the ladder `P_n □ P_2` (vertex `(i, j)` is `2i + j`):
/// `(0,0), (1,1), (3,0), (4,1), (6,0), ...`.
pub fn ladder_sweep(n: usize) -> Vec<usize> {
    (0..)
        .map(|k| (3 * (k / 2) + k % 2, k % 2))
        .take_while(|&(i, _)| i < n)
        .map(|(i, j)| 2 * i + j)
        .collect()
}

/// Every other vertex of a path: `0, 2, 4, ...`.
pub fn path_sweep(n: usize) -> Vec<usize> {
    (0..n).step_by(2).collect()
}

/// Both leaves of each leaf pair of the caterpillar, in spine order.
pub fn caterpillar_sweep(k: usize) -> Vec<usize> {
    (3 * k..5 * k).collect()
}

/// Every third vertex of a cycle: `0, 3, 6, ...`.
pub fn cycle_sweep(n: usize) -> Vec<usize> {
    (0..n).step_by(3).collect()
}
