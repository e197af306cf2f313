use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use shatter::disintegrate::{algorithm1, theorem_b_disintegrate, Orientation};
use shatter::generators::{assign_weights, GraphModel, WeightModel};
use shatter::graph::io::{read_edge_list_file, write_edge_list};
use shatter::harness::{
    self, aggregate_boxplot, parse_config_text, read_combined_csv, write_boxplot_csv, ExperimentConfig, Method,
};
use shatter::oracle::optimal_cost_curve;
use shatter::rng::RngSeed;
use shatter::theory::predict;
use shatter::{Error, Result};

#[derive(Parser)]
#[command(
    name = "shatter",
    version,
    about = "Disintegrate sparse random graphs into small components"
)]
struct Cli {
    /// Master seed [default: 0].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (directory for `experiment`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph and write it as an edge list.
    Generate {
        /// e.g. `gnm:n=50,m=100` or `powlaw-deg:n=50,exp=3,kmin=1`
        graph: GraphModel,
        /// e.g. `unif`, `exp:2`, `pareto:3,0.25`, `const:1`
        #[arg(long, default_value = "const:1")]
        weights: WeightModel,
    },
    /// Run a greedy heuristic on an edge-list file and write its trajectory.
    Disintegrate {
        input: PathBuf,
        #[arg(long, default_value = "maxsf-susceptibility")]
        method: Method,
        #[arg(long, value_enum, default_value_t = OrientationArg::Minimize)]
        orientation: OrientationArg,
        /// Stop once the largest component has at most this many nodes.
        #[arg(long)]
        stop_at: Option<usize>,
    },
    /// Run the spanning-tree construction with tree trimming.
    Trim {
        input: PathBuf,
        #[arg(long)]
        gamma: f64,
        /// Upper bound on edge weights; defaults to the heaviest edge.
        #[arg(long)]
        weight_cap: Option<f64>,
    },
    /// Exact optimal cost for every component-size cap (tiny graphs only).
    Oracle { input: PathBuf },
    /// Theoretical predictions for `G(n, cn)` with i.i.d. weights.
    Predict {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value = "const:1")]
        model: WeightModel,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
    },
    /// Run a seeded batch of instances and write per-instance and combined CSVs.
    Experiment(ExperimentArgs),
    /// Aggregate a combined trajectory CSV into cost-bucket quartiles.
    Boxplot {
        input: PathBuf,
        #[arg(long, default_value_t = harness::DEFAULT_BUCKET_WIDTH)]
        width: f64,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Flat `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long, value_enum)]
    orientation: Option<OrientationArg>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Minimize,
    Maximize,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Minimize => Orientation::Minimize,
            OrientationArg::Maximize => Orientation::Maximize,
        }
    }
}

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Error::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn io_err(out: Option<&Path>) -> impl Fn(io::Error) -> Error + '_ {
    move |e| Error::io(out.unwrap_or(Path::new("<stdout>")), e)
}

#[derive(Serialize)]
struct TrimSummary {
    gamma: f64,
    total_cost: f64,
    removed: usize,
    t: f64,
    d: usize,
    beta: f64,
    final_max_component: usize,
}

#[derive(Serialize)]
struct CurvePoint {
    #[serde(rename = "K")]
    k: usize,
    optimal_cost: f64,
}

fn run(cli: Cli) -> Result<()> {
    let out = cli.out.as_deref();
    let seed = cli.seed.unwrap_or(0);
    let format = cli.format;
    let err = io_err(out);
    match cli.command {
        Command::Generate { graph, weights } => {
            let base = RngSeed::new(seed, 0);
            let g = graph.generate(base.derive(1))?;
            let g = assign_weights(&g, &weights, base.derive(2))?;
            let mut w = open_output(out)?;
            write_edge_list(&g, &mut w).map_err(err)?;
        }
        Command::Disintegrate {
            input,
            method,
            orientation,
            stop_at,
        } => {
            let g = read_edge_list_file(&input)?;
            let t = algorithm1(&g, &method.spec(orientation.into()), RngSeed::new(seed, 0), stop_at)?;
            let mut w = open_output(out)?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => t.write_csv(&mut w).map_err(err)?,
                Format::Json => write_json(&mut w, &t).map_err(err)?,
            }
        }
        Command::Trim {
            input,
            gamma,
            weight_cap,
        } => {
            let g = read_edge_list_file(&input)?;
            let r = theorem_b_disintegrate(&g, gamma, weight_cap)?;
            let summary = TrimSummary {
                gamma,
                total_cost: r.total_cost,
                removed: r.removed_count(),
                t: r.params.t,
                d: r.params.d,
                beta: r.params.beta,
                final_max_component: r.final_max_component,
            };
            let mut w = open_output(out)?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut c = csv::Writer::from_writer(&mut w);
                    c.serialize(&summary)?;
                    c.flush().map_err(err)?;
                }
                Format::Json => write_json(&mut w, &summary).map_err(err)?,
            }
        }
        Command::Oracle { input } => {
            let g = read_edge_list_file(&input)?;
            let curve: Vec<CurvePoint> = optimal_cost_curve(&g)?
                .into_iter()
                .map(|(k, optimal_cost)| CurvePoint { k, optimal_cost })
                .collect();
            let mut w = open_output(out)?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut c = csv::Writer::from_writer(&mut w);
                    for p in &curve {
                        c.serialize(p)?;
                    }
                    c.flush().map_err(err)?;
                }
                Format::Json => write_json(&mut w, &curve).map_err(err)?,
            }
        }
        Command::Predict { c, model, n } => {
            let report = predict(c, &model, n)?;
            let mut w = open_output(out)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => write_json(&mut w, &report).map_err(err)?,
                Format::Csv => {
                    let mut c = csv::Writer::from_writer(&mut w);
                    c.serialize(&report)?;
                    c.flush().map_err(err)?;
                }
            }
        }
        Command::Experiment(args) => {
            let mut pairs = match &args.config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                    parse_config_text(&text)?
                }
                None => Vec::new(),
            };
            let mut set = |k: &str, v: Option<String>| {
                if let Some(v) = v {
                    pairs.push((k.to_string(), v));
                }
            };
            set("graph", args.graph);
            set("weights", args.weights);
            set("method", args.method);
            set("instances", args.instances.map(|n| n.to_string()));
            set("workers", args.workers.map(|n| n.to_string()));
            set(
                "orientation",
                args.orientation.map(|o| match o {
                    OrientationArg::Minimize => "minimize".to_string(),
                    OrientationArg::Maximize => "maximize".to_string(),
                }),
            );
            if let Some(s) = cli.seed {
                pairs.push(("seed".into(), s.to_string()));
            }
            if let Some(o) = out {
                pairs.push(("out".into(), o.display().to_string()));
            }
            let cfg = ExperimentConfig::from_pairs(pairs)?;
            let result = harness::run_experiment(&cfg)?;
            eprintln!(
                "wrote {} trajectories and {}",
                result.instance_csvs.len(),
                result.combined_csv.display()
            );
        }
        Command::Boxplot { input, width } => {
            let file = File::open(&input).map_err(|e| Error::io(&input, e))?;
            let rows = aggregate_boxplot(&read_combined_csv(file)?, width)?;
            let mut w = open_output(out)?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => write_boxplot_csv(&rows, &mut w)?,
                Format::Json => write_json(&mut w, &rows).map_err(err)?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ (Error::InvalidArgument(_) | Error::Descriptor { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
