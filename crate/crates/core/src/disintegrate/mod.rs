//! Disintegration procedures.
//!
//! - [`trim`]: cutting a bounded-degree tree into pieces of at most `t` nodes
//!   with at most `beta |H|` removals.
//! - [`constructive`]: spanning tree of the giant, cycle breaking, high-degree
//!   removal, then trimming.
//! - [`heuristics`]: susceptibility and edge-betweenness scores.
//! - [`greedy`]: the greedy heuristic algorithm and its cost trajectory.

pub mod constructive;
pub mod greedy;
pub mod heuristics;
pub mod trim;

pub use constructive::{theorem_b_disintegrate, ConstructiveReport};
pub use greedy::{algorithm1, Trajectory, TrajectoryStep};
pub use heuristics::{
    betweenness_scores, candidate_edges, susceptibility_score, susceptibility_scores, HeuristicKind, HeuristicSpec,
    Orientation, Scope,
};
pub use trim::{compute_t, trim_tree, TrimParams};
