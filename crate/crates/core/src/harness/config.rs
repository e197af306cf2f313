use std::path::PathBuf;

use serde::Serialize;

use super::{parse_orientation, Method};
use crate::disintegrate::Orientation;
use crate::error::{Error, Result};
use crate::generators::{GraphModel, WeightModel};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub graph: GraphModel,
    pub weights: WeightModel,
    pub method: Method,
    pub instances: usize,
    pub seed: u64,
    pub orientation: Orientation,
    pub out: PathBuf,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(graph: GraphModel, weights: WeightModel, method: Method) -> Self {
        Self {
            graph,
            weights,
            method,
            instances: 100,
            seed: 0,
            orientation: Orientation::Minimize,
            out: PathBuf::from("experiment"),
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.instances == 0 {
            return Err(Error::invalid("instances must be at least 1"));
        }
        if self.workers == Some(0) {
            return Err(Error::invalid("workers must be at least 1"));
        }
        self.weights.validated()?;
        Ok(())
    }

    /// Builds a config from `key = value` pairs; later pairs override earlier
    /// ones, so file entries followed by flag entries give flag precedence.
    ///
    /// Keys: `graph`, `weights`, `method`, `instances`, `seed`, `orientation`,
    /// `out`, `workers`. `graph`, `weights` and `method` are required.
    pub fn from_pairs<I, K, V>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut graph = None;
        let mut weights = None;
        let mut method = None;
        let mut instances = None;
        let mut seed = None;
        let mut orientation = None;
        let mut out = None;
        let mut workers = None;
        for (k, v) in pairs {
            let (k, v) = (k.as_ref().trim(), v.as_ref().trim());
            match k {
                "graph" => graph = Some(v.parse::<GraphModel>()?),
                "weights" => weights = Some(v.parse::<WeightModel>()?),
                "method" => method = Some(v.parse::<Method>()?),
                "instances" => instances = Some(parse_number(k, v)?),
                "seed" => seed = Some(parse_number(k, v)?),
                "orientation" => orientation = Some(parse_orientation(v)?),
                "out" => out = Some(PathBuf::from(v)),
                "workers" => workers = Some(parse_number(k, v)?),
                _ => return Err(Error::invalid(format!("unknown config key `{k}`"))),
            }
        }
        let missing = |key: &str| Error::invalid(format!("config is missing `{key}`"));
        let mut cfg = Self::new(
            graph.ok_or_else(|| missing("graph"))?,
            weights.ok_or_else(|| missing("weights"))?,
            method.ok_or_else(|| missing("method"))?,
        );
        if let Some(n) = instances {
            cfg.instances = n as usize;
        }
        if let Some(s) = seed {
            cfg.seed = s;
        }
        if let Some(o) = orientation {
            cfg.orientation = o;
        }
        if let Some(o) = out {
            cfg.out = o;
        }
        cfg.workers = workers.map(|w| w as usize);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_number(key: &str, value: &str) -> Result<u64> {
    value
        .parse()
        .map_err(|_| Error::invalid(format!("`{key}` must be a non-negative integer, got `{value}`")))
}

/// Flat `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: idx + 1,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}
