//! Tree trimming.
//!
//! A tree `H` with maximum degree `d` is cut into pieces of at most
//! `t(beta, d) = max(4d, r)` nodes, where `r` is the largest root of
//! `x - (3.5 / beta) ln x = 0`. The cut is recursive: pick the centroid (the
//! non-leaf vertex whose largest incident subtree is smallest), detach its
//! largest incident subtree, recurse on both halves.
//!
//! Every piece produced by a split of a component with more than `t` nodes has
//! at least `ceil(floor(t) / d)` nodes (the detached subtree is the largest of at
//! most `d`, and the rest keeps at least half the nodes). Hence the number of
//! removals is below `|H| / ceil(floor(t) / d)`, which is at most `beta |H|`
//! whenever `ceil(floor(t) / d) >= 1 / beta`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, WeightedGraph};

const ALPHA: f64 = 3.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrimParams {
    pub beta: f64,
    pub d: usize,
    pub t: f64,
}

impl TrimParams {
    pub fn new(beta: f64, d: usize) -> Result<Self> {
        Ok(Self {
            beta,
            d,
            t: compute_t(beta, d)?,
        })
    }

    /// Largest piece size the trimmer leaves, `floor(t)`.
    pub fn cap(&self) -> usize {
        self.t.floor() as usize
    }
}

/// `max(4d, r)` where `r` is the largest root of `x - (3.5/beta) ln x`.
pub fn compute_t(beta: f64, d: usize) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::invalid(format!("beta must lie in (0, 1), got {beta}")));
    }
    if d == 0 {
        return Err(Error::invalid("degree bound d must be positive"));
    }
    let k = ALPHA / beta;
    // f(x) = x - k ln x has its minimum at x = k, where f(k) = k(1 - ln k) < 0 since k > e
    let f = |x: f64| x - k * x.ln();
    let mut lo = k;
    let mut hi = 2.0 * k;
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(((4 * d) as f64).max(0.5 * (lo + hi)))
}

/// Edges to remove from `tree` so that every piece has at most `t` nodes.
pub fn trim_tree(tree: &WeightedGraph, params: &TrimParams) -> Result<Vec<Edge>> {
    if !tree.is_tree() {
        return Err(Error::NotATree(format!(
            "{} nodes, {} edges, not connected and acyclic",
            tree.node_count(),
            tree.edge_count()
        )));
    }
    let max_deg = tree.max_degree();
    if max_deg > params.d {
        return Err(Error::invalid(format!("tree has degree {max_deg} > d = {}", params.d)));
    }
    Ok(trim_forest(tree, params.cap()))
}

/// Trims every component of a forest down to at most `cap` nodes.
pub(crate) fn trim_forest(forest: &WeightedGraph, cap: usize) -> Vec<Edge> {
    let n = forest.node_count();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| forest.neighbors(v).map(|(u, _)| u).collect()).collect();
    let mut removed = Vec::new();

    let mut visited = vec![false; n];
    let mut pending: Vec<usize> = Vec::new();
    for v in 0..n {
        if !visited[v] {
            mark_component(&adj, v, &mut visited);
            pending.push(v);
        }
    }

    let mut order = Vec::new();
    let mut parent = vec![usize::MAX; n];
    let mut size = vec![0usize; n];
    while let Some(root) = pending.pop() {
        // BFS order and parents within the current piece
        order.clear();
        order.push(root);
        parent[root] = usize::MAX;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in &adj[v] {
                if u != parent[v] {
                    parent[u] = v;
                    order.push(u);
                }
            }
        }
        let total = order.len();
        if total <= cap {
            continue;
        }
        for &v in order.iter().rev() {
            size[v] = 1 + adj[v]
                .iter()
                .filter(|&&u| u != parent[v])
                .map(|&u| size[u])
                .sum::<usize>();
        }

        // centroid: non-leaf vertex minimising its largest incident subtree
        let largest_branch = |v: usize| -> (usize, usize) {
            // (size, subtree root) of the largest branch at v, ties to smaller root id
            adj[v]
                .iter()
                .map(|&u| {
                    let s = if u == parent[v] { total - size[v] } else { size[u] };
                    (s, u)
                })
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                .expect("non-leaf")
        };
        let pivot = order
            .iter()
            .copied()
            .filter(|&v| adj[v].len() >= 2)
            .min_by_key(|&v| (largest_branch(v).0, v))
            .expect("a tree with more than two nodes has a non-leaf");
        let (_, other) = largest_branch(pivot);

        adj[pivot].retain(|&u| u != other);
        adj[other].retain(|&u| u != pivot);
        removed.push(Edge::new(pivot, other, forest.weight(pivot, other).expect("tree edge")));
        pending.push(pivot);
        pending.push(other);
    }
    removed
}

fn mark_component(adj: &[Vec<usize>], start: usize, visited: &mut [bool]) {
    let mut stack = vec![start];
    visited[start] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !visited[u] {
                visited[u] = true;
                stack.push(u);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components;
    use rand::Rng;

    // Independent root finder for the oracle: Newton from the right of the root.
    fn newton_root(k: f64) -> f64 {
        let mut x = 10.0 * k * k.ln().max(1.0);
        for _ in 0..200 {
            x -= (x - k * x.ln()) / (1.0 - k / x);
        }
        x
    }

    #[test]
    fn t_examples() {
        let t = compute_t(0.5, 4).unwrap();
        assert!((t - 21.464_949_415).abs() < 1e-6, "{t}");
        assert!((t - newton_root(7.0)).abs() < 1e-9);
        // r(0.9) is about 8.2, below 4d = 16
        assert!(newton_root(3.5 / 0.9) < 16.0);
        assert_eq!(compute_t(0.9, 4).unwrap(), 16.0);
        for &beta in &[0.01, 0.1, 0.3, 0.5, 0.77, 0.99] {
            for d in 1..20 {
                let t = compute_t(beta, d).unwrap();
                assert!(t >= (4 * d) as f64);
                let r = newton_root(3.5 / beta);
                assert!((t - r.max((4 * d) as f64)).abs() < 1e-8 * t);
            }
        }
        assert!(compute_t(0.0, 3).is_err());
        assert!(compute_t(1.0, 3).is_err());
        assert!(compute_t(0.5, 0).is_err());
    }

    fn path(n: usize) -> WeightedGraph {
        WeightedGraph::from_unweighted(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn small_trees_untouched() {
        let p = TrimParams::new(0.5, 2).unwrap();
        assert!(trim_tree(&path(5), &p).unwrap().is_empty());
        let star = WeightedGraph::from_unweighted(5, (1..5).map(|i| (0, i))).unwrap();
        assert!(trim_tree(&star, &TrimParams::new(0.5, 4).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let p = TrimParams::new(0.5, 2).unwrap();
        let tri = WeightedGraph::from_unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(trim_tree(&tri, &p), Err(Error::NotATree(_))));
        let forest = WeightedGraph::from_unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(trim_tree(&forest, &p), Err(Error::NotATree(_))));
        let star = WeightedGraph::from_unweighted(5, (1..5).map(|i| (0, i))).unwrap();
        assert!(trim_tree(&star, &p).is_err());
    }

    #[test]
    fn long_path_respects_budget() {
        // the lowest-id pivot would shed two-node pieces here
        let p = TrimParams::new(0.3, 3).unwrap();
        let tree = path(500);
        let removed = trim_tree(&tree, &p).unwrap();
        assert!(removed.len() as f64 <= 0.3 * 500.0, "{}", removed.len());
        let mut h = tree.clone();
        for e in &removed {
            h.remove_edge(e.u, e.v).unwrap();
        }
        assert!(components(&h).max_size() as f64 <= p.t);
    }

    fn random_tree(n: usize, d: usize, rng: &mut impl Rng) -> WeightedGraph {
        let mut g = WeightedGraph::new(n);
        let mut open: Vec<usize> = vec![0];
        for v in 1..n {
            let idx = rng.gen_range(0..open.len());
            let u = open[idx];
            g.add_edge(u, v, rng.gen_range(0.1..2.0)).unwrap();
            if g.degree(u) >= d {
                open.swap_remove(idx);
            }
            open.push(v);
        }
        g
    }

    #[test]
    fn random_trees_meet_guarantee() {
        let mut rng = crate::RngSeed::new(21, 0).rng();
        for _ in 0..150 {
            let d = [3, 4, 8][rng.gen_range(0..3)];
            let beta = [0.3, 0.5, 0.9][rng.gen_range(0..3)];
            let n = rng.gen_range(1..=500);
            let tree = random_tree(n, d, &mut rng);
            let p = TrimParams::new(beta, d).unwrap();
            let removed = trim_tree(&tree, &p).unwrap();
            assert!(removed.len() as f64 <= beta * n as f64);
            let mut h = tree.clone();
            for e in &removed {
                assert_eq!(tree.weight(e.u, e.v), Some(e.w));
                h.remove_edge(e.u, e.v).unwrap();
            }
            assert!(components(&h).max_size() as f64 <= p.t);
        }
    }
}
