//! Undirected weighted simple graphs.
//!
//! Nodes are dense ids `0..n`. Edges are stored once per endpoint in ordered
//! adjacency maps, so edge iteration is deterministic (sorted by `(u, v)` with
//! `u < v`) and removal is `O(log deg)`.

pub mod density;
mod dsu;
pub mod io;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use density::{density_witness, DensityWitness, MAX_WITNESS_SIZE};
pub use dsu::DisjointSets;
pub use io::{read_edge_list, read_edge_list_file, write_edge_list, write_edge_list_file};

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, w: f64) -> Self {
        let (u, v) = ordered(a, b);
        Self { u, v, w }
    }

    pub fn key(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

#[inline]
pub(crate) fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedGraph {
    adj: Vec<BTreeMap<usize, f64>>,
    edge_count: usize,
}

impl WeightedGraph {
    /// Edgeless graph on `n` nodes.
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![BTreeMap::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut g = Self::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph; handy for tests and unweighted models.
    pub fn from_unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidWeight(w));
        }
        if self.adj[u].contains_key(&v) {
            let (a, b) = ordered(u, v);
            return Err(Error::DuplicateEdge(a, b));
        }
        self.adj[u].insert(v, w);
        self.adj[v].insert(u, w);
        self.edge_count += 1;
        Ok(())
    }

    /// Removes the edge and returns its weight.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<f64> {
        self.check_node(u)?;
        self.check_node(v)?;
        match self.adj[u].remove(&v) {
            Some(w) => {
                self.adj[v].remove(&u);
                self.edge_count -= 1;
                Ok(w)
            }
            None => {
                let (a, b) = ordered(u, v);
                Err(Error::MissingEdge(a, b))
            }
        }
    }

    /// Copy of the graph without edge `(u, v)`.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut h = self.clone();
        h.remove_edge(u, v)?;
        Ok(h)
    }

    pub fn set_weight(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidWeight(w));
        }
        self.check_node(u)?;
        self.check_node(v)?;
        match self.adj[u].get_mut(&v) {
            Some(slot) => {
                *slot = w;
                *self.adj[v].get_mut(&u).expect("symmetric adjacency") = w;
                Ok(())
            }
            None => {
                let (a, b) = ordered(u, v);
                Err(Error::MissingEdge(a, b))
            }
        }
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.adj.get(u)?.get(&v).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeMap::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(BTreeMap::len).collect()
    }

    /// Neighbors of `v` with edge weights, in increasing id order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.adj[v].iter().map(|(&u, &w)| (u, w))
    }

    /// All edges, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.range(u + 1..).map(move |(&v, &w)| Edge { u, v, w }))
    }

    pub fn total_weight(&self) -> f64 {
        self.edges().map(|e| e.w).fold(0.0, |a, w| a + w)
    }

    /// Subgraph induced by `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Self {
        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let mut h = Self::new(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            for (&u, &w) in &self.adj[v] {
                let j = local[u];
                if j != usize::MAX && i < j {
                    h.adj[i].insert(j, w);
                    h.adj[j].insert(i, w);
                    h.edge_count += 1;
                }
            }
        }
        h
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count + components(self).count() == self.node_count()
    }

    pub fn is_tree(&self) -> bool {
        self.node_count() >= 1 && self.edge_count + 1 == self.node_count() && components(self).count() == 1
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                node_count: self.node_count(),
            })
        }
    }
}

/// Connected components; ids are assigned in order of each component's smallest node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub assignment: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Node lists per component, each sorted ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn sum_of_squares(&self) -> u128 {
        self.sizes.iter().map(|&s| (s as u128) * (s as u128)).sum()
    }
}

pub fn components(g: &WeightedGraph) -> ComponentPartition {
    let n = g.node_count();
    let mut assignment = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if assignment[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        assignment[s] = id;
        queue.push_back(s);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for (u, _) in g.neighbors(v) {
                if assignment[u] == usize::MAX {
                    assignment[u] = id;
                    queue.push_back(u);
                }
            }
        }
        sizes.push(size);
    }
    ComponentPartition { assignment, sizes }
}

pub fn max_component_size(g: &WeightedGraph) -> usize {
    components(g).max_size()
}

/// Mean squared component size per node, `(1/n) * sum |C_i|^2`.
///
/// Equals the expected size of the component containing a uniformly random node.
pub fn susceptibility(g: &WeightedGraph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    components(g).sum_of_squares() as f64 / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> WeightedGraph {
        WeightedGraph::from_unweighted(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn components_examples() {
        let p = components(&WeightedGraph::new(3));
        assert_eq!(p.sizes, vec![1, 1, 1]);
        assert_eq!(components(&path(3)).sizes, vec![3]);
        let g = WeightedGraph::from_unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(components(&g).sizes, vec![2, 2]);
    }

    #[test]
    fn max_component_examples() {
        assert_eq!(max_component_size(&path(4)), 4);
        assert_eq!(max_component_size(&WeightedGraph::new(5)), 1);
        let g = WeightedGraph::from_unweighted(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(max_component_size(&g), 3);
    }

    #[test]
    fn susceptibility_examples() {
        assert_eq!(susceptibility(&WeightedGraph::new(4)), 1.0);
        assert_eq!(susceptibility(&path(4)), 4.0);
        let g = WeightedGraph::from_unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(susceptibility(&g), 2.0);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = WeightedGraph::new(3);
        assert!(matches!(g.add_edge(1, 1, 1.0), Err(Error::SelfLoop(1))));
        assert!(matches!(g.add_edge(0, 3, 1.0), Err(Error::NodeOutOfRange { .. })));
        assert!(matches!(g.add_edge(0, 1, 0.0), Err(Error::InvalidWeight(_))));
        assert!(matches!(g.add_edge(0, 1, f64::NAN), Err(Error::InvalidWeight(_))));
        g.add_edge(0, 1, 2.0).unwrap();
        assert!(matches!(g.add_edge(1, 0, 1.0), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(g.remove_edge(1, 2), Err(Error::MissingEdge(1, 2))));
        assert_eq!(g.remove_edge(1, 0).unwrap(), 2.0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edges_are_sorted_and_unique() {
        let g = WeightedGraph::from_edges(4, [(3, 0, 1.0), (2, 1, 2.0), (0, 1, 3.0)]).unwrap();
        let keys: Vec<_> = g.edges().map(|e| e.key()).collect();
        assert_eq!(keys, vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.total_weight(), 6.0);
    }

    #[test]
    fn forest_and_tree_checks() {
        assert!(path(5).is_tree());
        assert!(WeightedGraph::new(3).is_forest());
        assert!(!WeightedGraph::new(3).is_tree());
        let tri = WeightedGraph::from_unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!tri.is_forest());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let tri = WeightedGraph::from_edges(4, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0), (2, 3, 4.0)]).unwrap();
        let h = tri.induced_subgraph(&[2, 3]);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.weight(0, 1), Some(4.0));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            proptest::collection::vec(any::<bool>(), m).prop_map(move |mask| {
                let edges = pairs.iter().zip(mask).filter(|(_, keep)| *keep).map(|(&e, _)| e);
                WeightedGraph::from_unweighted(n, edges).unwrap()
            })
        })
    }

    fn closure_oracle(g: &WeightedGraph) -> Vec<Vec<bool>> {
        let n = g.node_count();
        let mut r = vec![vec![false; n]; n];
        for (v, row) in r.iter_mut().enumerate() {
            row[v] = true;
        }
        for e in g.edges() {
            r[e.u][e.v] = true;
            r[e.v][e.u] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        r
    }

    proptest! {
        #[test]
        fn components_match_transitive_closure(g in arb_graph(8)) {
            let p = components(&g);
            let r = closure_oracle(&g);
            let n = g.node_count();
            prop_assert_eq!(p.sizes.iter().sum::<usize>(), n);
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(p.component_of(i) == p.component_of(j), r[i][j]);
                }
            }
        }

        #[test]
        fn susceptibility_bounds(g in arb_graph(10)) {
            let s = susceptibility(&g);
            let n = g.node_count() as f64;
            prop_assert!((1.0..=n).contains(&s));
            prop_assert_eq!(s == n, components(&g).count() == 1);
            prop_assert_eq!(s == 1.0, g.edge_count() == 0);
        }

        #[test]
        fn edge_removal_is_monotone(g in arb_graph(10), picks in proptest::collection::vec(any::<usize>(), 0..20)) {
            let mut h = g.clone();
            for p in picks {
                let edges: Vec<_> = h.edges().collect();
                if edges.is_empty() {
                    break;
                }
                let e = edges[p % edges.len()];
                let before = components(&h);
                h.remove_edge(e.u, e.v).unwrap();
                let after = components(&h);
                prop_assert!(after.max_size() <= before.max_size());
                prop_assert!(after.count() >= before.count());
            }
        }
    }
}
