//! Exhaustive search for small dense subgraphs.
//!
//! In a sparse random graph every small vertex set spans at most `(1 + gamma)|H|`
//! edges. That statement cannot be certified at scale, but it can be spot-checked:
//! enumerate every connected vertex set up to a small size cap and look for one
//! that violates it.

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Largest subgraph size the enumerator accepts.
pub const MAX_WITNESS_SIZE: usize = 14;

/// A connected induced subgraph with more than `(1 + gamma)|H|` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    pub nodes: Vec<usize>,
    pub edge_count: usize,
}

/// Smallest (then lexicographically smallest) connected vertex set `H` with
/// `|H| <= min(alpha * n, size_cap)` inducing more than `(1 + gamma)|H|` edges.
pub fn density_witness(g: &WeightedGraph, alpha: f64, gamma: f64, size_cap: usize) -> Result<Option<DensityWitness>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("gamma must be positive, got {gamma}")));
    }
    if size_cap == 0 {
        return Err(Error::invalid("size_cap must be positive"));
    }
    if size_cap > MAX_WITNESS_SIZE {
        return Err(Error::TooLarge(format!(
            "size_cap {size_cap} exceeds enumeration limit {MAX_WITNESS_SIZE}"
        )));
    }
    let limit = ((alpha * g.node_count() as f64).floor() as usize).min(size_cap);
    if limit == 0 {
        return Ok(None);
    }

    let adj: Vec<Vec<usize>> = (0..g.node_count())
        .map(|v| g.neighbors(v).map(|(u, _)| u).collect())
        .collect();
    let mut search = Search {
        adj: &adj,
        gamma,
        limit,
        best: None,
        in_sub: vec![false; adj.len()],
        blocked: vec![0; adj.len()],
    };
    for (root, nbrs) in adj.iter().enumerate() {
        let ext: Vec<usize> = nbrs.iter().copied().filter(|&u| u > root).collect();
        search.enter(root);
        let mut sub = vec![root];
        search.extend(&mut sub, ext, root, 0);
        search.leave(root);
    }
    Ok(search.best)
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    gamma: f64,
    limit: usize,
    best: Option<DensityWitness>,
    in_sub: Vec<bool>,
    // number of subgraph vertices that are equal or adjacent to each node
    blocked: Vec<u32>,
}

impl Search<'_> {
    fn enter(&mut self, v: usize) {
        self.in_sub[v] = true;
        self.blocked[v] += 1;
        for &u in &self.adj[v] {
            self.blocked[u] += 1;
        }
    }

    fn leave(&mut self, v: usize) {
        self.in_sub[v] = false;
        self.blocked[v] -= 1;
        for &u in &self.adj[v] {
            self.blocked[u] -= 1;
        }
    }

    fn consider(&mut self, sub: &[usize], edges: usize) {
        if (edges as f64) <= (1.0 + self.gamma) * sub.len() as f64 {
            return;
        }
        let mut nodes = sub.to_vec();
        nodes.sort_unstable();
        let better = match &self.best {
            None => true,
            Some(b) => (nodes.len(), &nodes) < (b.nodes.len(), &b.nodes),
        };
        if better {
            self.limit = nodes.len();
            self.best = Some(DensityWitness {
                nodes,
                edge_count: edges,
            });
        }
    }

    // ESU enumeration: every connected set containing `root` as its minimum is
    // visited exactly once.
    fn extend(&mut self, sub: &mut Vec<usize>, mut ext: Vec<usize>, root: usize, edges: usize) {
        self.consider(sub, edges);
        if sub.len() >= self.limit {
            return;
        }
        while let Some(w) = ext.pop() {
            let added = self.adj[w].iter().filter(|&&u| self.in_sub[u]).count();
            // exclusive neighbours of w: not in the set and not adjacent to it
            let mut next_ext = ext.clone();
            next_ext.extend(
                self.adj[w]
                    .iter()
                    .copied()
                    .filter(|&u| u > root && self.blocked[u] == 0),
            );
            self.enter(w);
            sub.push(w);
            self.extend(sub, next_ext, root, edges + added);
            sub.pop();
            self.leave(w);
            if sub.len() >= self.limit {
                return;
            }
        }
    }
}
