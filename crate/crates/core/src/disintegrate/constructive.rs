//! Constructive disintegration near the `(R - L) n` threshold.
//!
//! 1. Keep a maximum spanning tree of the giant component and drop its other edges.
//! 2. In every other component, break cycles at their lightest edge until it is a tree.
//! 3. Drop the forest edges at vertices of degree above the cutoff `d`.
//! 4. Trim each remaining tree with `beta = gamma / 4` (or `gamma / 4W` when weighted).
//!
//! Steps 1 and 2 together keep exactly a maximum spanning forest.

use std::collections::HashSet;

use serde::Serialize;

use super::trim::{trim_forest, TrimParams};
use crate::error::{Error, Result};
use crate::generators::degree_cutoff;
use crate::graph::{components, max_component_size, Edge, WeightedGraph};
use crate::spanning::max_spanning_forest;

const MAX_BETA: f64 = 0.99;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructiveReport {
    pub removed: Vec<Edge>,
    pub total_cost: f64,
    pub final_max_component: usize,
    pub params: TrimParams,
    /// Cutoff parameter used for the degree step.
    pub epsilon: f64,
    /// Weight bound when running in weighted mode.
    pub weight_bound: Option<f64>,
    pub giant_removed: usize,
    pub cycle_removed: usize,
    pub high_degree_removed: usize,
    pub trim_removed: usize,
}

impl ConstructiveReport {
    pub fn removed_count(&self) -> usize {
        self.removed.len()
    }
}

/// Runs the four-step procedure. With `weight_cap = None` a graph whose weights
/// are all 1 runs unweighted; anything else runs weighted with `W` equal to the
/// cap or, failing that, the heaviest edge.
pub fn theorem_b_disintegrate(g: &WeightedGraph, gamma: f64, weight_cap: Option<f64>) -> Result<ConstructiveReport> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("gamma must be positive, got {gamma}")));
    }
    let max_weight = g.edges().map(|e| e.w).fold(0.0, f64::max);
    let weight_bound = match weight_cap {
        Some(w) if !(w > 0.0 && w.is_finite()) => {
            return Err(Error::invalid(format!("weight cap must be positive, got {w}")));
        }
        Some(w) if w < max_weight => {
            return Err(Error::invalid(format!(
                "weight cap {w} is below the heaviest edge {max_weight}"
            )));
        }
        Some(w) => Some(w),
        None if g.edges().all(|e| e.w == 1.0) => None,
        None => Some(max_weight),
    };
    let (epsilon, beta) = match weight_bound {
        None => (gamma / 2.0, gamma / 4.0),
        Some(w) => (gamma / (4.0 * w), gamma / (4.0 * w)),
    };
    let beta = beta.min(MAX_BETA);

    // steps 1 + 2
    let forest = max_spanning_forest(g);
    let kept: HashSet<(usize, usize)> = forest.edges.iter().map(Edge::key).collect();
    let part = components(g);
    let giant_id = part.sizes.iter().position(|&s| s == part.max_size()).unwrap_or(0);
    let mut removed = Vec::new();
    let mut giant_removed = 0;
    let mut cycle_removed = 0;
    for e in g.edges().filter(|e| !kept.contains(&e.key())) {
        if part.component_of(e.u) == giant_id {
            giant_removed += 1;
        } else {
            cycle_removed += 1;
        }
        removed.push(e);
    }

    // step 3
    let d = degree_cutoff(g, epsilon)?;
    let mut work = forest.to_graph();
    let heavy: Vec<Edge> = work
        .edges()
        .filter(|e| work.degree(e.u) > d || work.degree(e.v) > d)
        .collect();
    for e in &heavy {
        work.remove_edge(e.u, e.v)?;
    }
    let high_degree_removed = heavy.len();
    removed.extend(heavy);

    // step 4
    let params = TrimParams::new(beta, d)?;
    let trimmed = trim_forest(&work, params.cap());
    for e in &trimmed {
        work.remove_edge(e.u, e.v)?;
    }
    let trim_removed = trimmed.len();
    removed.extend(trimmed);

    let total_cost = removed.iter().map(|e| e.w).fold(0.0, |a, w| a + w);
    Ok(ConstructiveReport {
        final_max_component: max_component_size(&work),
        removed,
        total_cost,
        params,
        epsilon,
        weight_bound,
        giant_removed,
        cycle_removed,
        high_degree_removed,
        trim_removed,
    })
}
