//! Greedy heuristic disintegration.
//!
//! With the spanning-forest scope, the run starts from the maximum spanning
//! forest `F` of the input and is charged the weight of every edge outside `F`
//! up front. It then removes one edge at a time, always an extreme-scoring one,
//! until no edges remain (or the largest component is small enough), breaking
//! score ties uniformly at random.

use std::io::Write;

use rand::Rng;
use serde::Serialize;

use super::heuristics::{candidate_edges, HeuristicSpec, Scope};
use crate::error::Result;
use crate::graph::{max_component_size, Edge, WeightedGraph};
use crate::rng::RngSeed;
use crate::spanning::{complement_cost, max_spanning_forest};

pub const TRAJECTORY_CSV_HEADER: &str = "step,edge_u,edge_v,weight,cum_cost,max_comp";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryStep {
    pub edge: Edge,
    pub cum_cost: f64,
    pub max_component: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub initial_cost: f64,
    pub initial_max_component: usize,
    pub steps: Vec<TrajectoryStep>,
}

impl Trajectory {
    pub fn final_cost(&self) -> f64 {
        self.steps.last().map_or(self.initial_cost, |s| s.cum_cost)
    }

    pub fn final_max_component(&self) -> usize {
        self.steps
            .last()
            .map_or(self.initial_max_component, |s| s.max_component)
    }

    /// `(step, cum_cost, max_comp)` for row 0 and every removal.
    pub fn points(&self) -> impl Iterator<Item = (usize, f64, usize)> + '_ {
        std::iter::once((0, self.initial_cost, self.initial_max_component)).chain(
            self.steps
                .iter()
                .enumerate()
                .map(|(i, s)| (i + 1, s.cum_cost, s.max_component)),
        )
    }

    /// Cost at the first point where the largest component is at most `k`.
    pub fn cost_to_reach(&self, k: usize) -> Option<f64> {
        self.points().find(|p| p.2 <= k).map(|p| p.1)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{TRAJECTORY_CSV_HEADER}")?;
        writeln!(out, "0,,,,{},{}", self.initial_cost, self.initial_max_component)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                i + 1,
                s.edge.u,
                s.edge.v,
                s.edge.w,
                s.cum_cost,
                s.max_component
            )?;
        }
        out.flush()
    }
}

/// Runs the greedy algorithm; `stop_at` ends the run once the largest component
/// has at most that many nodes.
pub fn algorithm1(
    g: &WeightedGraph,
    spec: &HeuristicSpec,
    seed: RngSeed,
    stop_at: Option<usize>,
) -> Result<Trajectory> {
    let (mut work, initial_cost) = match spec.scope {
        Scope::MaxSfFirst => {
            let forest = max_spanning_forest(g);
            let b0 = complement_cost(g, &forest)?;
            (forest.to_graph(), b0)
        }
        Scope::FullGraph => (g.clone(), 0.0),
    };
    let orientation = spec.effective_orientation();
    let mut rng = seed.rng();
    let initial_max_component = max_component_size(&work);
    let mut cost = initial_cost;
    let mut largest = initial_max_component;
    let mut steps = Vec::with_capacity(work.edge_count());

    while work.edge_count() > 0 && stop_at.is_none_or(|k| largest > k) {
        let candidates = candidate_edges(&work, spec.kind, orientation);
        let pick = candidates[rng.gen_range(0..candidates.len())];
        work.remove_edge(pick.u, pick.v)?;
        cost += pick.w;
        largest = max_component_size(&work);
        steps.push(TrajectoryStep {
            edge: pick,
            cum_cost: cost,
            max_component: largest,
        });
    }

    Ok(Trajectory {
        initial_cost,
        initial_max_component,
        steps,
    })
}
