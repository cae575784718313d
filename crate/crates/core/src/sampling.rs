//! Random-walk subgraph sampling and random edge deletion.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Number of consecutive steps without a new node before the walk jumps.
pub const DEFAULT_MAX_ITER: usize = 100;

/// A seeded generator. The same seed always produces the same samples.
#[derive(Clone, Debug)]
pub struct RngHandle {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngHandle {
    pub fn new(seed: u64) -> Self {
        RngHandle {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform index in `0..len`.
    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// Uniform value in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

/// Induced subgraph on the first `size` distinct nodes visited by a random
/// walk.
///
/// The walk starts at a uniform node and steps to a uniform neighbor (or a
/// uniform node anywhere when the current node is isolated). After
/// `max_iter` consecutive steps that discover nothing new, it jumps to a
/// uniform unvisited node; the jump target counts as visited only once the
/// walk steps onto it again. Nodes of the result are relabeled in ascending
/// parent-id order and labeled with their parent id.
pub fn random_walk_sample(
    g: &Graph,
    size: usize,
    max_iter: usize,
    rng: &mut RngHandle,
) -> Result<Graph> {
    let n = g.node_count();
    if size == 0 || size > n {
        return Err(Error::SampleSize { size, len: n });
    }

    let mut visited = vec![false; n];
    let mut current = rng.index(n);
    visited[current] = true;
    let mut collected = vec![current];
    let mut stagnant = 0;

    while collected.len() < size {
        let neighbors = g.neighbors(current)?;
        let mut next = if neighbors.is_empty() {
            rng.index(n)
        } else {
            neighbors[rng.index(neighbors.len())]
        };

        if visited[next] {
            stagnant += 1;
        } else {
            visited[next] = true;
            collected.push(next);
            stagnant = 0;
        }

        if stagnant >= max_iter {
            let pool: Vec<usize> = (0..n).filter(|&v| !visited[v]).collect();
            if pool.is_empty() {
                break;
            }
            next = pool[rng.index(pool.len())];
            stagnant = 0;
        }
        current = next;
    }

    g.induced_subgraph(&collected)
}

/// Removes each edge independently with probability `p`. Nodes, labels and
/// weights of the surviving edges are kept.
pub fn delete_edges_randomly(g: &Graph, p: f64, rng: &mut RngHandle) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    let removed: Vec<bool> = (0..g.edge_count()).map(|_| rng.unit() < p).collect();
    Ok(g.without_edges(&removed))
}
