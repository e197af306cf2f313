//! Exact minimum-cost disintegration for tiny graphs.
//!
//! Branch and bound over the edges in decreasing weight order: every edge is
//! either kept (allowed when the merged component still fits under the cap) or
//! removed (charged its weight). Among optimal subsets the lexicographically
//! smallest sorted edge list wins.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, WeightedGraph};

/// Largest edge count accepted by the exact solver.
pub const MAX_ORACLE_EDGES: usize = 22;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    #[serde(rename = "K")]
    pub k: usize,
    pub optimal_cost: f64,
    pub optimal_edge_set: Vec<Edge>,
}

/// Union-find without path compression so unions can be undone.
struct RollbackSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl RollbackSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    // Joins the roots `a` and `b`; the absorbed root goes on the history stack.
    fn join(&mut self, a: usize, b: usize) {
        let (big, small) = if self.size[a] >= self.size[b] { (a, b) } else { (b, a) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.history.push(small);
    }

    fn undo(&mut self) {
        let small = self.history.pop().expect("undo without join");
        let big = self.parent[small];
        self.size[big] -= self.size[small];
        self.parent[small] = small;
    }
}

struct Search<'a> {
    edges: &'a [Edge],
    cap: usize,
    sets: RollbackSets,
    removed: Vec<bool>,
    eps: f64,
    best_cost: f64,
    best: Option<Vec<Edge>>,
}

impl Search<'_> {
    fn descend(&mut self, idx: usize, cost: f64) {
        if idx == self.edges.len() {
            self.offer(cost);
            return;
        }
        let e = self.edges[idx];
        let (ru, rv) = (self.sets.find(e.u), self.sets.find(e.v));
        if ru == rv {
            // keeping an edge inside a component is free and never violates the cap
            self.descend(idx + 1, cost);
        } else if self.sets.size[ru] + self.sets.size[rv] <= self.cap {
            self.sets.join(ru, rv);
            self.descend(idx + 1, cost);
            self.sets.undo();
        }
        if cost + e.w <= self.best_cost + self.eps {
            self.removed[idx] = true;
            self.descend(idx + 1, cost + e.w);
            self.removed[idx] = false;
        }
    }

    fn offer(&mut self, cost: f64) {
        if cost > self.best_cost + self.eps {
            return;
        }
        let mut set: Vec<Edge> = self
            .edges
            .iter()
            .zip(&self.removed)
            .filter(|(_, &r)| r)
            .map(|(e, _)| *e)
            .collect();
        set.sort_by_key(|e| e.key());
        let cost = set.iter().map(|e| e.w).fold(0.0, |a, w| a + w);
        let better = match &self.best {
            None => true,
            Some(best) => cost < self.best_cost - self.eps || lex_cmp(&set, best) == Ordering::Less,
        };
        if better {
            if cost < self.best_cost - self.eps || self.best.is_none() {
                self.best_cost = cost;
            }
            self.best = Some(set);
        }
    }
}

fn lex_cmp(a: &[Edge], b: &[Edge]) -> Ordering {
    a.iter().map(Edge::key).cmp(b.iter().map(Edge::key))
}

fn check_size(g: &WeightedGraph) -> Result<()> {
    if g.edge_count() > MAX_ORACLE_EDGES {
        return Err(Error::TooLarge(format!(
            "exact solver handles at most {MAX_ORACLE_EDGES} edges, graph has {}",
            g.edge_count()
        )));
    }
    Ok(())
}

/// Cheapest edge set whose removal leaves every component with at most `k` nodes.
pub fn optimal_disintegration(g: &WeightedGraph, k: usize) -> Result<OracleResult> {
    check_size(g)?;
    if k == 0 {
        return Err(Error::invalid("component-size cap K must be positive"));
    }
    let mut edges: Vec<Edge> = g.edges().collect();
    edges.sort_by(|a, b| b.w.total_cmp(&a.w).then(a.key().cmp(&b.key())));
    let total = g.total_weight();
    let mut search = Search {
        edges: &edges,
        cap: k,
        sets: RollbackSets::new(g.node_count()),
        removed: vec![false; edges.len()],
        eps: 1e-9 * total.max(1.0),
        best_cost: total,
        best: None,
    };
    search.descend(0, 0.0);
    let set = search.best.expect("removing every edge is always feasible");
    Ok(OracleResult {
        k,
        optimal_cost: set.iter().map(|e| e.w).fold(0.0, |a, w| a + w),
        optimal_edge_set: set,
    })
}

/// Optimal cost for every cap `K = 1..=n`.
pub fn optimal_cost_curve(g: &WeightedGraph) -> Result<Vec<(usize, f64)>> {
    check_size(g)?;
    (1..=g.node_count().max(1))
        .map(|k| optimal_disintegration(g, k).map(|r| (k, r.optimal_cost)))
        .collect()
}
