//! Batch experiments: many seeded instances of one (topology, weights, method)
//! combination, trajectory files and box-plot summaries.

mod boxplot;
mod config;

use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use boxplot::{
    aggregate_boxplot, read_combined_csv, write_boxplot_csv, BoxPlotRow, CombinedRow, DEFAULT_BUCKET_WIDTH,
};
pub use config::{parse_config_text, ExperimentConfig};

use crate::disintegrate::{algorithm1, HeuristicKind, HeuristicSpec, Orientation, Scope, Trajectory};
use crate::error::{Error, Result};
use crate::generators::assign_weights;
use crate::rng::RngSeed;

pub const COMBINED_CSV_HEADER: &str = "instance,step,cum_cost,max_comp";

/// The four heuristic methods compared in the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    MaxSfSusceptibility,
    MaxSfBetweenness,
    FullSusceptibility,
    FullBetweenness,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::MaxSfSusceptibility,
        Method::MaxSfBetweenness,
        Method::FullSusceptibility,
        Method::FullBetweenness,
    ];

    pub fn spec(self, orientation: Orientation) -> HeuristicSpec {
        let (kind, scope) = match self {
            Method::MaxSfSusceptibility => (HeuristicKind::Susceptibility, Scope::MaxSfFirst),
            Method::MaxSfBetweenness => (HeuristicKind::Betweenness, Scope::MaxSfFirst),
            Method::FullSusceptibility => (HeuristicKind::Susceptibility, Scope::FullGraph),
            Method::FullBetweenness => (HeuristicKind::Betweenness, Scope::FullGraph),
        };
        HeuristicSpec::new(kind, scope).with_orientation(orientation)
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::MaxSfSusceptibility => "maxsf-susceptibility",
            Method::MaxSfBetweenness => "maxsf-betweenness",
            Method::FullSusceptibility => "full-susceptibility",
            Method::FullBetweenness => "full-betweenness",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase().replace('_', "-");
        Method::ALL
            .into_iter()
            .find(|m| m.name() == lower)
            .ok_or_else(|| Error::invalid(format!("unknown method `{s}` (expected one of maxsf-susceptibility, maxsf-betweenness, full-susceptibility, full-betweenness)")))
    }
}

pub fn parse_orientation(s: &str) -> Result<Orientation> {
    match s.trim().to_ascii_lowercase().as_str() {
        "min" | "minimize" => Ok(Orientation::Minimize),
        "max" | "maximize" => Ok(Orientation::Maximize),
        _ => Err(Error::invalid(format!(
            "unknown orientation `{s}` (expected minimize or maximize)"
        ))),
    }
}

/// Seeds for instance `i`: topology, weights and tie-breaking draw from
/// separate children of stream `i`.
pub fn instance_seeds(master: u64, i: usize) -> (RngSeed, RngSeed, RngSeed) {
    let base = RngSeed::new(master, i as u64);
    (base.derive(1), base.derive(2), base.derive(3))
}

/// Generates and disintegrates instance `i` of `cfg`.
pub fn run_instance(cfg: &ExperimentConfig, i: usize) -> Result<Trajectory> {
    let (graph_seed, weight_seed, tie_seed) = instance_seeds(cfg.seed, i);
    let g = cfg.graph.generate(graph_seed)?;
    let g = assign_weights(&g, &cfg.weights, weight_seed)?;
    algorithm1(&g, &cfg.method.spec(cfg.orientation), tie_seed, None)
}

/// All trajectories of an experiment, in instance order. The result does not
/// depend on the worker count.
pub fn run_trajectories(cfg: &ExperimentConfig) -> Result<Vec<Trajectory>> {
    cfg.validate()?;
    let run = || -> Result<Vec<Trajectory>> {
        (0..cfg.instances)
            .into_par_iter()
            .map(|i| run_instance(cfg, i))
            .collect()
    };
    match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    }
}

pub fn write_combined_csv<W: Write>(trajectories: &[Trajectory], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{COMBINED_CSV_HEADER}")?;
    for (i, t) in trajectories.iter().enumerate() {
        for (step, cost, size) in t.points() {
            writeln!(out, "{i},{step},{cost},{size}")?;
        }
    }
    out.flush()
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub trajectories: Vec<Trajectory>,
    pub combined_csv: PathBuf,
    pub instance_csvs: Vec<PathBuf>,
}

pub fn instance_file_name(i: usize) -> String {
    format!("instance_{i:04}.csv")
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w).map_err(|e| Error::io(path, e))
}

/// Runs the experiment and writes `instance_NNNN.csv` per instance plus
/// `combined.csv` into `cfg.out`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let trajectories = run_trajectories(cfg)?;
    fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let mut instance_csvs = Vec::with_capacity(trajectories.len());
    for (i, t) in trajectories.iter().enumerate() {
        let path = cfg.out.join(instance_file_name(i));
        write_file(&path, |w| t.write_csv(w))?;
        instance_csvs.push(path);
    }
    let combined_csv = cfg.out.join("combined.csv");
    write_file(&combined_csv, |w| write_combined_csv(&trajectories, w))?;
    Ok(ExperimentOutput {
        trajectories,
        combined_csv,
        instance_csvs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(instances: usize, workers: Option<usize>) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(
            "gnm:n=30,m=45".parse().unwrap(),
            "unif".parse().unwrap(),
            Method::MaxSfSusceptibility,
        );
        cfg.instances = instances;
        cfg.seed = 11;
        cfg.workers = workers;
        cfg
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!(
            "MaxSF-Susceptibility".parse::<Method>().unwrap(),
            Method::MaxSfSusceptibility
        );
        assert!("random".parse::<Method>().is_err());
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let render = |workers| {
            let t = run_trajectories(&small_config(12, workers)).unwrap();
            let mut buf = Vec::new();
            write_combined_csv(&t, &mut buf).unwrap();
            buf
        };
        let one = render(Some(1));
        assert_eq!(one, render(Some(4)));
        assert_eq!(one, render(None));
    }

    #[test]
    fn combined_rows_match_trajectory_lengths() {
        let t = run_trajectories(&small_config(5, None)).unwrap();
        let mut buf = Vec::new();
        write_combined_csv(&t, &mut buf).unwrap();
        let rows = String::from_utf8(buf).unwrap().lines().count() - 1;
        assert_eq!(rows, t.iter().map(|t| t.steps.len() + 1).sum::<usize>());
        assert!(t.iter().all(|t| t.final_max_component() == 1));
    }

    #[test]
    fn instances_use_distinct_streams() {
        let t = run_trajectories(&small_config(3, None)).unwrap();
        assert_ne!(t[0], t[1]);
        assert_ne!(t[1], t[2]);
    }
}
