//! Random instances: `G(n, M)`, erased configuration-model graphs on power-law
//! degree sequences, and i.i.d. edge weights.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Open01, WeightedIndex};
use rand::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rng::RngSeed;

/// Edge-weight distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightModel {
    Constant {
        w: f64,
    },
    /// Uniform on `[0, 1]`.
    Uniform,
    Exponential {
        rate: f64,
    },
    /// Density proportional to `w^-exponent` on `[x_min, inf)`.
    Pareto {
        exponent: f64,
        x_min: f64,
    },
}

impl WeightModel {
    pub fn constant(w: f64) -> Result<Self> {
        Self::Constant { w }.validated()
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Self::Exponential { rate }.validated()
    }

    pub fn pareto(exponent: f64, x_min: f64) -> Result<Self> {
        Self::Pareto { exponent, x_min }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Constant { w } => w > 0.0 && w.is_finite(),
            Self::Uniform => true,
            Self::Exponential { rate } => rate > 0.0 && rate.is_finite(),
            // a > 2 keeps the mean finite
            Self::Pareto { exponent, x_min } => {
                exponent > 2.0 && exponent.is_finite() && x_min > 0.0 && x_min.is_finite()
            }
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::invalid(format!("invalid weight model parameters: {self}")))
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Self::Constant { w } => w,
            Self::Uniform => 0.5,
            Self::Exponential { rate } => 1.0 / rate,
            Self::Pareto { exponent, x_min } => x_min * (exponent - 1.0) / (exponent - 2.0),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Self::Constant { w } => {
                if x >= w {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Uniform => x.clamp(0.0, 1.0),
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Self::Pareto { exponent, x_min } => {
                if x <= x_min {
                    0.0
                } else {
                    1.0 - (x_min / x).powf(exponent - 1.0)
                }
            }
        }
    }

    /// Inverse CDF on `[0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        match *self {
            Self::Constant { w } => w,
            Self::Uniform => u,
            Self::Exponential { rate } => -(-u).ln_1p() / rate,
            Self::Pareto { exponent, x_min } => x_min * (1.0 - u).powf(-1.0 / (exponent - 1.0)),
        }
    }

    /// `quantile(1 - v)`, accurate for tiny `v`.
    pub fn tail_quantile(&self, v: f64) -> f64 {
        match *self {
            Self::Constant { w } => w,
            Self::Uniform => 1.0 - v,
            Self::Exponential { rate } => -v.ln() / rate,
            Self::Pareto { exponent, x_min } => x_min * v.powf(-1.0 / (exponent - 1.0)),
        }
    }

    /// One draw by inverse transform; always strictly positive.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Constant { w } => w,
            _ => {
                let u: f64 = rng.sample(Open01);
                self.quantile(u)
            }
        }
    }
}

impl fmt::Display for WeightModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant { w } => write!(f, "const:{w}"),
            Self::Uniform => write!(f, "unif"),
            Self::Exponential { rate } => write!(f, "exp:{rate}"),
            Self::Pareto { exponent, x_min } => write!(f, "pareto:{exponent},{x_min}"),
        }
    }
}

impl FromStr for WeightModel {
    type Err = Error;

    /// `const:W`, `unif`, `exp:RATE`, `pareto:EXPONENT,XMIN`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: &str| Error::Descriptor {
            descriptor: s.to_string(),
            message: message.to_string(),
        };
        let (kind, args) = match s.trim().split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let nums = |expected: usize| -> Result<Vec<f64>> {
            let args = args.ok_or_else(|| bad("missing parameters"))?;
            let v: Vec<f64> = args
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("parameters must be numbers"))?;
            if v.len() != expected {
                return Err(bad(&format!("expected {expected} parameter(s)")));
            }
            Ok(v)
        };
        let model = match kind {
            "const" | "constant" => Self::Constant { w: nums(1)?[0] },
            "unif" | "uniform" => {
                if args.is_some_and(|a| !a.is_empty()) {
                    return Err(bad("uniform takes no parameters"));
                }
                Self::Uniform
            }
            "exp" | "exponential" => Self::Exponential { rate: nums(1)?[0] },
            "pareto" | "powerlaw" => {
                let v = nums(2)?;
                Self::Pareto {
                    exponent: v[0],
                    x_min: v[1],
                }
            }
            _ => return Err(bad("unknown weight model")),
        };
        model.validated().map_err(|e| bad(&e.to_string()))
    }
}

/// Random graph topology.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphModel {
    Gnm { n: usize, m: usize },
    PowerLawDegrees { n: usize, exponent: f64, k_min: usize },
}

impl GraphModel {
    pub fn node_count(&self) -> usize {
        match *self {
            Self::Gnm { n, .. } | Self::PowerLawDegrees { n, .. } => n,
        }
    }

    /// Unit-weight instance.
    pub fn generate(&self, seed: RngSeed) -> Result<WeightedGraph> {
        match *self {
            Self::Gnm { n, m } => gen_gnm(n, m, seed),
            Self::PowerLawDegrees { n, exponent, k_min } => {
                let degrees = sample_power_law_degrees(n, exponent, k_min, seed.derive(1))?;
                gen_configuration_model(&degrees, seed.derive(2))
            }
        }
    }
}

impl fmt::Display for GraphModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gnm { n, m } => write!(f, "gnm:n={n},m={m}"),
            Self::PowerLawDegrees { n, exponent, k_min } => write!(f, "powlaw-deg:n={n},exp={exponent},kmin={k_min}"),
        }
    }
}

impl FromStr for GraphModel {
    type Err = Error;

    /// `gnm:n=50,m=100` or `powlaw-deg:n=50,exp=3,kmin=1` (`kmin` defaults to 1).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: String| Error::Descriptor {
            descriptor: s.to_string(),
            message,
        };
        let (kind, args) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("missing parameters".into()))?;
        let mut n = None;
        let mut m = None;
        let mut exponent = None;
        let mut k_min = None;
        for part in args.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, found `{part}`")))?;
            let int = || {
                value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("`{key}` must be a non-negative integer")))
            };
            match key.trim() {
                "n" => n = Some(int()?),
                "m" => m = Some(int()?),
                "kmin" => k_min = Some(int()?),
                "exp" => {
                    exponent = Some(
                        value
                            .trim()
                            .parse::<f64>()
                            .map_err(|_| bad("`exp` must be a number".into()))?,
                    )
                }
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing `n`".into()))?;
        if n == 0 {
            return Err(bad("`n` must be positive".into()));
        }
        match kind.trim() {
            "gnm" => {
                let m = m.ok_or_else(|| bad("missing `m`".into()))?;
                if m > max_edges(n) {
                    return Err(bad(format!("m={m} exceeds n(n-1)/2 = {}", max_edges(n))));
                }
                Ok(Self::Gnm { n, m })
            }
            "powlaw-deg" => {
                let exponent = exponent.ok_or_else(|| bad("missing `exp`".into()))?;
                let k_min = k_min.unwrap_or(1);
                if exponent <= 2.0 {
                    return Err(bad("`exp` must exceed 2".into()));
                }
                if k_min == 0 || k_min > n.saturating_sub(1) {
                    return Err(bad("`kmin` must lie in 1..n".into()));
                }
                Ok(Self::PowerLawDegrees { n, exponent, k_min })
            }
            other => Err(bad(format!("unknown graph model `{other}`"))),
        }
    }
}

fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Row-major decoding of a pair index in `0..n(n-1)/2` into `(u, v)`, `u < v`.
fn pair_from_index(n: usize, k: usize) -> (usize, usize) {
    // row u starts at offset u(2n - u - 1)/2
    let offset = |u: usize| u * (2 * n - u - 1) / 2;
    let nf = n as f64;
    let disc = (2.0 * nf - 1.0).powi(2) - 8.0 * k as f64;
    let mut u = (((2.0 * nf - 1.0) - disc.max(0.0).sqrt()) / 2.0).floor().max(0.0) as usize;
    u = u.min(n - 2);
    while u > 0 && offset(u) > k {
        u -= 1;
    }
    while u + 1 < n - 1 && offset(u + 1) <= k {
        u += 1;
    }
    (u, u + 1 + (k - offset(u)))
}

/// Uniform simple graph with exactly `m` unit-weight edges.
pub fn gen_gnm(n: usize, m: usize, seed: RngSeed) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let total = max_edges(n);
    if m > total {
        return Err(Error::invalid(format!("m={m} exceeds n(n-1)/2 = {total}")));
    }
    let mut g = WeightedGraph::new(n);
    if m == 0 {
        return Ok(g);
    }
    let mut rng = seed.rng();
    let mut picks = rand::seq::index::sample(&mut rng, total, m).into_vec();
    picks.sort_unstable();
    for k in picks {
        let (u, v) = pair_from_index(n, k);
        g.add_edge(u, v, 1.0)?;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        let n = degrees.len();
        if degrees.iter().sum::<usize>() % 2 != 0 {
            return Err(Error::invalid("degree sum must be even"));
        }
        if degrees.iter().any(|&d| d >= n) {
            return Err(Error::invalid("every degree must be below the node count"));
        }
        Ok(Self(degrees))
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// I.i.d. degrees from `P(k) ∝ k^-exponent` on `k_min..=n-1`, with an odd total
/// repaired by incrementing one uniformly chosen node that still has room.
pub fn sample_power_law_degrees(n: usize, exponent: f64, k_min: usize, seed: RngSeed) -> Result<DegreeSequence> {
    if !(exponent > 2.0 && exponent.is_finite()) {
        return Err(Error::invalid(format!("exponent must exceed 2, got {exponent}")));
    }
    if k_min == 0 || n < 2 || k_min > n - 1 {
        return Err(Error::invalid(format!(
            "k_min={k_min} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    let support: Vec<usize> = (k_min..n).collect();
    let dist = WeightedIndex::new(support.iter().map(|&k| (k as f64).powf(-exponent)))
        .map_err(|e| Error::invalid(e.to_string()))?;
    let mut rng = seed.rng();
    let mut degrees: Vec<usize> = (0..n).map(|_| support[dist.sample(&mut rng)]).collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        // an odd total rules out every node sitting at n-1, since n(n-1) is even
        let room: Vec<usize> = (0..n).filter(|&v| degrees[v] < n - 1).collect();
        let &v = room.choose(&mut rng).expect("some node below n-1");
        degrees[v] += 1;
    }
    DegreeSequence::new(degrees)
}

/// Uniform random pairing of degree stubs, before loops and multi-edges are erased.
pub fn configuration_pairing(degrees: &DegreeSequence, seed: RngSeed) -> Vec<(usize, usize)> {
    let mut stubs: Vec<usize> = degrees
        .degrees()
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    let mut rng = seed.rng();
    stubs.shuffle(&mut rng);
    stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect()
}

/// Erased configuration model: pair stubs uniformly, then drop self-loops and
/// parallel edges.
pub fn gen_configuration_model(degrees: &DegreeSequence, seed: RngSeed) -> Result<WeightedGraph> {
    let mut g = WeightedGraph::new(degrees.len());
    for (u, v) in configuration_pairing(degrees, seed) {
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v, 1.0)?;
        }
    }
    Ok(g)
}

/// Replaces every edge weight with an independent draw from `model`, visiting
/// edges in sorted order.
pub fn assign_weights(g: &WeightedGraph, model: &WeightModel, seed: RngSeed) -> Result<WeightedGraph> {
    let model = model.validated()?;
    let mut rng = seed.rng();
    let mut out = g.clone();
    let keys: Vec<(usize, usize)> = g.edges().map(|e| e.key()).collect();
    for (u, v) in keys {
        out.set_weight(u, v, model.sample(&mut rng))?;
    }
    Ok(out)
}

/// Smallest `d >= 1` such that the degrees of all nodes with degree at least `d`
/// sum to less than `epsilon * n`.
pub fn degree_cutoff(g: &WeightedGraph, epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0) {
        return Err(Error::invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    let n = g.node_count();
    let budget = epsilon * n as f64;
    // tail[d] = sum of degrees >= d
    let mut tail = vec![0usize; n + 2];
    for d in g.degrees() {
        tail[d] += d;
    }
    for d in (0..=n).rev() {
        tail[d] += tail[d + 1];
    }
    Ok((1..=n).find(|&d| (tail[d] as f64) < budget).unwrap_or(n.max(1)))
}
