//! Edge-list text format.
//!
//! One edge per line: `u v w` with two integer labels and a positive weight.
//! Lines starting with `#` and blank lines are ignored. Labels are mapped to dense
//! ids in ascending label order. A `# nodes: N` comment (as written by
//! [`write_edge_list`]) declares isolated nodes: when every label lies in `0..N`
//! the labels are used as ids directly and the graph gets `N` nodes.

use std::collections::{BTreeSet, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{ordered, WeightedGraph};
use crate::error::{Error, Result};

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<WeightedGraph> {
    let mut declared_nodes: Option<usize> = None;
    let mut raw: Vec<(i64, i64, f64, usize)> = Vec::new();
    let mut seen = HashSet::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("nodes:") {
                declared_nodes = Some(n.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("bad node count `{}`", n.trim()),
                })?);
            }
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: lineno, message };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(format!("expected `u v w`, found {} fields", fields.len())));
        }
        let u: i64 = fields[0]
            .parse()
            .map_err(|_| parse_err(format!("bad node label `{}`", fields[0])))?;
        let v: i64 = fields[1]
            .parse()
            .map_err(|_| parse_err(format!("bad node label `{}`", fields[1])))?;
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(format!("bad weight `{}`", fields[2])))?;
        if u == v {
            return Err(parse_err(format!("self-loop on `{u}`")));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(parse_err(format!("weight must be positive, got {w}")));
        }
        if !seen.insert(if u < v { (u, v) } else { (v, u) }) {
            return Err(parse_err(format!("duplicate edge `{u} {v}`")));
        }
        raw.push((u, v, w, lineno));
    }

    let labels: BTreeSet<i64> = raw.iter().flat_map(|&(u, v, _, _)| [u, v]).collect();
    let identity = declared_nodes.filter(|&n| labels.iter().all(|&l| l >= 0 && (l as u64) < n as u64));

    let (n, id_of): (usize, Box<dyn Fn(i64) -> usize>) = match identity {
        Some(n) => (n, Box::new(|l| l as usize)),
        None => {
            let sorted: Vec<i64> = labels.iter().copied().collect();
            let n = sorted.len();
            (
                n,
                Box::new(move |l| sorted.binary_search(&l).expect("label collected above")),
            )
        }
    };

    let mut g = WeightedGraph::new(n);
    for (u, v, w, line) in raw {
        g.add_edge(id_of(u), id_of(v), w).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(BufReader::new(file))
}

pub fn write_edge_list<W: Write>(g: &WeightedGraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# nodes: {}", g.node_count())?;
    writeln!(out, "# edges: {}", g.edge_count())?;
    for e in g.edges() {
        let (u, v) = ordered(e.u, e.v);
        writeln!(out, "{u} {v} {}", e.w)?;
    }
    out.flush()
}

pub fn write_edge_list_file(g: &WeightedGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_edge_list(g, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}
