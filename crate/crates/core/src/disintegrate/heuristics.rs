//! Edge scores for the greedy disintegration algorithm.
//!
//! Susceptibility scores the graph left after deleting an edge,
//! `(1/n) Σ |C_i|^2`. Only bridges change it: cutting a bridge in a component of
//! size `s` into parts `a` and `s - a` lowers `Σ |C_i|^2` by `2a(s - a)`, so all
//! scores come out of one lowlink pass. Betweenness is Brandes' accumulation with
//! hop-count shortest paths over unordered node pairs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components, ordered, Edge, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeuristicKind {
    Susceptibility,
    Betweenness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Remove the edge leaving the smallest susceptibility.
    #[default]
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Drop every edge outside the maximum spanning forest first.
    MaxSfFirst,
    FullGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeuristicSpec {
    pub kind: HeuristicKind,
    /// Ignored for betweenness, which always maximizes.
    pub orientation: Orientation,
    pub scope: Scope,
}

impl HeuristicSpec {
    pub fn new(kind: HeuristicKind, scope: Scope) -> Self {
        Self {
            kind,
            orientation: Orientation::Minimize,
            scope,
        }
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn effective_orientation(&self) -> Orientation {
        match self.kind {
            HeuristicKind::Susceptibility => self.orientation,
            HeuristicKind::Betweenness => Orientation::Maximize,
        }
    }
}

/// Edge list with adjacency carrying edge ids.
pub(crate) struct Indexed {
    pub edges: Vec<Edge>,
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Indexed {
    pub fn new(g: &WeightedGraph) -> Self {
        let edges: Vec<Edge> = g.edges().collect();
        let mut adj = vec![Vec::new(); g.node_count()];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        Self { edges, adj }
    }
}

/// `Σ |C_i|^2` of `h - e` for every edge, in `h.edges()` order.
pub(crate) fn sum_squares_after_removal(h: &WeightedGraph) -> Vec<(Edge, u128)> {
    let ix = Indexed::new(h);
    let n = h.node_count();
    let part = components(h);
    let base = part.sum_of_squares();
    let mut out: Vec<u128> = vec![base; ix.edges.len()];

    // iterative DFS with lowlink; subtree sizes identify the split of each bridge
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut sub = vec![1usize; n];
    let mut clock = 0;
    let mut stack: Vec<(usize, usize, usize)> = Vec::new(); // (node, parent edge id, next neighbour idx)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let comp_size = part.sizes[part.component_of(root)];
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
            if let Some(&(u, id)) = ix.adj[v].get(*next) {
                *next += 1;
                if id == via {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = clock;
                    low[u] = clock;
                    sub[u] = 1;
                    clock += 1;
                    stack.push((u, id, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    sub[p] += sub[v];
                    if low[v] > disc[p] {
                        let a = sub[v] as u128;
                        let s = comp_size as u128;
                        out[via] = base - 2 * a * (s - a);
                    }
                }
            }
        }
    }
    ix.edges.into_iter().zip(out).collect()
}

/// Susceptibility of `h` after removing every edge in turn, in `h.edges()` order.
pub fn susceptibility_scores(h: &WeightedGraph) -> Vec<(Edge, f64)> {
    let n = h.node_count().max(1) as f64;
    sum_squares_after_removal(h)
        .into_iter()
        .map(|(e, s)| (e, s as f64 / n))
        .collect()
}

/// Susceptibility of `h - (u, v)`.
pub fn susceptibility_score(h: &WeightedGraph, u: usize, v: usize) -> Result<f64> {
    if !h.has_edge(u, v) {
        let (a, b) = ordered(u, v);
        return Err(Error::MissingEdge(a, b));
    }
    let n = h.node_count();
    let part = components(h);
    let base = part.sum_of_squares();
    let s = part.sizes[part.component_of(u)] as u128;
    // nodes reachable from u without crossing (u, v)
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([u]);
    seen[u] = true;
    let mut a: u128 = 0;
    while let Some(x) = queue.pop_front() {
        a += 1;
        for (y, _) in h.neighbors(x) {
            if (x == u && y == v) || (x == v && y == u) || seen[y] {
                continue;
            }
            seen[y] = true;
            queue.push_back(y);
        }
    }
    let after = if seen[v] { base } else { base - 2 * a * (s - a) };
    Ok(after as f64 / n as f64)
}

/// Edge betweenness over unordered node pairs with hop-count shortest paths,
/// in `h.edges()` order.
pub fn betweenness_scores(h: &WeightedGraph) -> Vec<(Edge, f64)> {
    let ix = Indexed::new(h);
    let n = h.node_count();
    let mut score = vec![0.0f64; ix.edges.len()];

    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        if ix.adj[s].is_empty() {
            continue;
        }
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, _) in &ix.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        for &w in order.iter().rev() {
            for &(v, id) in &ix.adj[w] {
                // v is a predecessor of w on shortest paths from s
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    let c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                    score[id] += c;
                    delta[v] += c;
                }
            }
        }
        for &v in &order {
            dist[v] = usize::MAX;
            sigma[v] = 0.0;
            delta[v] = 0.0;
        }
    }
    // each unordered pair was counted from both ends
    ix.edges.into_iter().zip(score.into_iter().map(|x| x / 2.0)).collect()
}

const BETWEENNESS_TIE_RTOL: f64 = 1e-9;

/// The edges with the extreme score, before any tie-breaking, in `h.edges()` order.
pub fn candidate_edges(h: &WeightedGraph, kind: HeuristicKind, orientation: Orientation) -> Vec<Edge> {
    match kind {
        HeuristicKind::Susceptibility => {
            // compare exact integer numerators so ties are exact
            let scores = sum_squares_after_removal(h);
            let best = match orientation {
                Orientation::Minimize => scores.iter().map(|s| s.1).min(),
                Orientation::Maximize => scores.iter().map(|s| s.1).max(),
            };
            match best {
                Some(b) => scores.into_iter().filter(|s| s.1 == b).map(|s| s.0).collect(),
                None => Vec::new(),
            }
        }
        HeuristicKind::Betweenness => {
            let scores = betweenness_scores(h);
            let best = scores.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
            let slack = BETWEENNESS_TIE_RTOL * best.abs().max(1.0);
            scores
                .into_iter()
                .filter(|s| s.1 >= best - slack)
                .map(|s| s.0)
                .collect()
        }
    }
}
