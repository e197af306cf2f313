//! Maximum spanning forests (Kruskal) and giant-component extraction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{components, DisjointSets, Edge, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanningForest {
    pub edges: Vec<Edge>,
    pub total_weight: f64,
    pub node_count: usize,
}

impl SpanningForest {
    /// The forest as a graph on the host's node set.
    pub fn to_graph(&self) -> WeightedGraph {
        WeightedGraph::from_edges(self.node_count, self.edges.iter().map(|e| (e.u, e.v, e.w)))
            .expect("forest edges come from a simple graph")
    }
}

/// Kruskal over edges in decreasing weight; equal weights are taken in
/// `(u, v)` order so the forest does not depend on anything but the graph.
pub fn max_spanning_forest(g: &WeightedGraph) -> SpanningForest {
    let mut edges: Vec<Edge> = g.edges().collect();
    edges.sort_by(|a, b| b.w.total_cmp(&a.w).then(a.key().cmp(&b.key())));
    let mut sets = DisjointSets::new(g.node_count());
    let mut chosen = Vec::with_capacity(g.node_count().saturating_sub(1));
    for e in edges {
        if sets.union(e.u, e.v) {
            chosen.push(e);
        }
    }
    let total_weight = chosen.iter().map(|e| e.w).fold(0.0, |a, w| a + w);
    SpanningForest {
        edges: chosen,
        total_weight,
        node_count: g.node_count(),
    }
}

/// Total weight of the edges of `g` outside the forest `f`.
pub fn complement_cost(g: &WeightedGraph, f: &SpanningForest) -> Result<f64> {
    let mismatch = || Error::invalid("spanning forest was not computed from this graph");
    if f.node_count != g.node_count() {
        return Err(mismatch());
    }
    let mut in_forest = std::collections::HashSet::with_capacity(f.edges.len());
    for e in &f.edges {
        if g.weight(e.u, e.v) != Some(e.w) {
            return Err(mismatch());
        }
        in_forest.insert(e.key());
    }
    Ok(g.edges()
        .filter(|e| !in_forest.contains(&e.key()))
        .map(|e| e.w)
        .fold(0.0, |a, w| a + w))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GiantComponent {
    /// The component relabelled `0..vertex_count` in ascending original id order.
    pub graph: WeightedGraph,
    /// Original ids of the component's nodes, ascending.
    pub nodes: Vec<usize>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub total_weight: f64,
}

/// Largest component; ties go to the component holding the smallest node id.
pub fn giant_component(g: &WeightedGraph) -> Result<GiantComponent> {
    if g.node_count() == 0 {
        return Err(Error::invalid("graph has no nodes"));
    }
    let partition = components(g);
    let largest = partition.max_size();
    let id = partition.sizes.iter().position(|&s| s == largest).expect("non-empty");
    let nodes: Vec<usize> = (0..g.node_count())
        .filter(|&v| partition.component_of(v) == id)
        .collect();
    let graph = g.induced_subgraph(&nodes);
    Ok(GiantComponent {
        vertex_count: nodes.len(),
        edge_count: graph.edge_count(),
        total_weight: graph.total_weight(),
        graph,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{assign_weights, gen_gnm, WeightModel};
    use crate::RngSeed;
    use proptest::prelude::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, 3.0), (1, 2, 2.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn triangle_keeps_heaviest_two() {
        let f = max_spanning_forest(&triangle());
        assert_eq!(f.total_weight, 5.0);
        let keys: Vec<_> = f.edges.iter().map(|e| e.key()).collect();
        assert_eq!(keys, vec![(0, 1), (1, 2)]);
        assert_eq!(complement_cost(&triangle(), &f).unwrap(), 1.0);
    }

    #[test]
    fn forests_are_their_own_maxsf() {
        let tree = WeightedGraph::from_edges(5, [(0, 1, 0.5), (1, 2, 4.0), (1, 3, 1.0), (3, 4, 2.0)]).unwrap();
        let f = max_spanning_forest(&tree);
        assert_eq!(f.edges.len(), 4);
        assert_eq!(complement_cost(&tree, &f).unwrap(), 0.0);
        let empty = max_spanning_forest(&WeightedGraph::new(4));
        assert!(empty.edges.is_empty());
        assert_eq!(empty.total_weight, 0.0);
    }

    #[test]
    fn complement_is_additive() {
        let g = WeightedGraph::from_edges(
            6,
            [
                (0, 1, 3.0),
                (1, 2, 2.0),
                (0, 2, 1.0),
                (3, 4, 3.0),
                (4, 5, 2.0),
                (3, 5, 1.0),
            ],
        )
        .unwrap();
        let f = max_spanning_forest(&g);
        assert_eq!(complement_cost(&g, &f).unwrap(), 2.0);
    }

    #[test]
    fn complement_rejects_foreign_forest() {
        let f = max_spanning_forest(&triangle());
        assert!(complement_cost(&WeightedGraph::new(3), &f).is_err());
        assert!(complement_cost(&WeightedGraph::new(4), &f).is_err());
    }

    #[test]
    fn giant_examples() {
        let g = WeightedGraph::from_unweighted(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let giant = giant_component(&g).unwrap();
        assert_eq!((giant.vertex_count, giant.edge_count), (3, 2));
        assert_eq!(giant.nodes, vec![0, 1, 2]);
        let tri = giant_component(&triangle()).unwrap();
        assert_eq!(tri.graph, triangle());
        // tie between {0,1} and {2,3}: smallest id wins
        let tie = WeightedGraph::from_unweighted(4, [(2, 3), (0, 1)]).unwrap();
        assert_eq!(giant_component(&tie).unwrap().nodes, vec![0, 1]);
    }

    #[test]
    fn unit_weight_giant_tree_size() {
        let g = gen_gnm(2000, 2000, RngSeed::new(3, 0)).unwrap();
        let giant = giant_component(&g).unwrap();
        let f = max_spanning_forest(&giant.graph);
        assert_eq!(f.edges.len(), giant.vertex_count - 1);
    }

    fn random_weighted(seed: u64, n: usize, m: usize) -> WeightedGraph {
        let g = gen_gnm(n, m, RngSeed::new(seed, 0)).unwrap();
        // a coarse constant-ish model produces many ties
        let model = if seed.is_multiple_of(3) {
            WeightModel::Constant { w: 1.0 }
        } else {
            WeightModel::Exponential { rate: 1.0 }
        };
        let mut g = assign_weights(&g, &model, RngSeed::new(seed, 1)).unwrap();
        if seed % 3 == 1 {
            let keys: Vec<_> = g.edges().map(|e| (e.u, e.v, (e.w * 2.0).ceil())).collect();
            for (u, v, w) in keys {
                g.set_weight(u, v, w).unwrap();
            }
        }
        g
    }

    fn brute_max_forest(g: &WeightedGraph) -> f64 {
        let edges: Vec<Edge> = g.edges().collect();
        let target = g.node_count() - components(g).count();
        let mut best = f64::NEG_INFINITY;
        for mask in 0u32..(1 << edges.len()) {
            if mask.count_ones() as usize != target {
                continue;
            }
            let mut d = DisjointSets::new(g.node_count());
            let mut w = 0.0;
            let mut acyclic = true;
            for (i, e) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acyclic &= d.union(e.u, e.v);
                    w += e.w;
                }
            }
            if acyclic {
                best = best.max(w);
            }
        }
        best
    }

    proptest! {
        #[test]
        fn matches_exhaustive_enumeration(seed in 0u64..10_000, n in 2usize..=7, density in 0.0f64..1.0) {
            let m = ((n * (n - 1) / 2) as f64 * density).round() as usize;
            let g = random_weighted(seed, n, m.min(12));
            let f = max_spanning_forest(&g);
            prop_assert!((f.total_weight - brute_max_forest(&g)).abs() < 1e-9);
        }

        #[test]
        fn exchange_property(seed in 0u64..10_000, n in 2usize..40, c in 0.3f64..2.5) {
            let m = ((n as f64 * c) as usize).min(n * (n - 1) / 2);
            let g = random_weighted(seed, n, m);
            let f = max_spanning_forest(&g);
            let fg = f.to_graph();
            prop_assert_eq!(f.edges.len(), n - components(&g).count());
            prop_assert!(fg.is_forest());
            // each non-forest edge closes a cycle in F whose edges all weigh at least as much
            for e in g.edges().filter(|e| !fg.has_edge(e.u, e.v)) {
                let path = forest_path(&fg, e.u, e.v);
                prop_assert!(!path.is_empty());
                prop_assert!(path.iter().all(|&w| w >= e.w));
            }
            let cost = complement_cost(&g, &f).unwrap();
            prop_assert!((g.total_weight() - (f.total_weight + cost)).abs() <= 1e-9 * g.total_weight().max(1.0));
        }
    }

    fn forest_path(f: &WeightedGraph, s: usize, t: usize) -> Vec<f64> {
        let mut prev = vec![None; f.node_count()];
        let mut seen = vec![false; f.node_count()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for (u, w) in f.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    prev[u] = Some((v, w));
                    stack.push(u);
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = t;
        while let Some((p, w)) = prev[cur] {
            out.push(w);
            cur = p;
        }
        out
    }
}
