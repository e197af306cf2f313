//! Disintegration of sparse random graphs.
//!
//! The crate answers one question from several directions: how much edge weight
//! has to be removed from a sparse random graph before every connected component
//! is small?
//!
//! - [`graph`]: weighted simple graphs, connectivity, susceptibility, edge-list I/O.
//! - [`generators`]: `G(n, M)`, power-law configuration-model graphs, i.i.d. weights.
//! - [`spanning`]: maximum spanning forests and giant-component extraction.
//! - [`theory`]: closed-form predictors for giant-component size, spanning-forest
//!   weight and the removal threshold.
//! - [`disintegrate`]: tree trimming, the constructive spanning-tree procedure and the
//!   greedy heuristic algorithm (susceptibility / edge betweenness).
//! - [`oracle`]: exact branch-and-bound solver for tiny instances.
//! - [`harness`]: batch experiments, box-plot aggregation and configuration parsing.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod disintegrate;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod rng;
pub mod spanning;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{Edge, WeightedGraph};
pub use rng::RngSeed;
