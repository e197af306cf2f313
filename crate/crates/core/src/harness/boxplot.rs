use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_BUCKET_WIDTH: f64 = 5.0;

/// One row of the combined trajectory CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombinedRow {
    pub instance: usize,
    pub step: usize,
    pub cum_cost: f64,
    pub max_comp: usize,
}

/// Quartiles of the largest-component sizes seen in one cost bucket
/// `[bucket_lower, bucket_lower + width)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxPlotRow {
    pub bucket_lower: f64,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    pub count: usize,
}

pub fn read_combined_csv<R: Read>(reader: R) -> Result<Vec<CombinedRow>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut rows = Vec::new();
    for rec in rdr.deserialize() {
        let row: CombinedRow = rec?;
        if !row.cum_cost.is_finite() {
            return Err(Error::invalid(format!(
                "non-finite cost in instance {} step {}",
                row.instance, row.step
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

// Linear interpolation between order statistics of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Buckets `(cum_cost, max_comp)` points by cost; empty buckets are omitted.
pub fn aggregate_boxplot(rows: &[CombinedRow], width: f64) -> Result<Vec<BoxPlotRow>> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::invalid(format!("bucket width must be positive, got {width}")));
    }
    if rows.is_empty() {
        return Err(Error::invalid("no trajectory points to aggregate"));
    }
    let mut buckets: BTreeMap<i64, Vec<f64>> = BTreeMap::new();
    for r in rows {
        let k = (r.cum_cost / width).floor() as i64;
        buckets.entry(k).or_default().push(r.max_comp as f64);
    }
    Ok(buckets
        .into_iter()
        .map(|(k, mut sizes)| {
            sizes.sort_by(f64::total_cmp);
            BoxPlotRow {
                bucket_lower: k as f64 * width,
                median: quantile(&sizes, 0.5),
                q25: quantile(&sizes, 0.25),
                q75: quantile(&sizes, 0.75),
                count: sizes.len(),
            }
        })
        .collect())
}

pub fn write_boxplot_csv<W: Write>(rows: &[BoxPlotRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
