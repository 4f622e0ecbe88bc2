//! CSV emission of run traces and batch summaries.

use std::io::Write;

use crate::error::Result;
use crate::ranking::csv_err;

use super::{BatchSummary, RunRecord};

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// One `k,rank,level` row per visited state of every record, records
/// concatenated in order.
pub fn write_trace_csv<W: Write>(records: &[RunRecord], w: W) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["k", "rank", "level"]).map_err(csv_err)?;
    for r in records {
        for (k, (rank, level)) in r.ranks.iter().zip(&r.levels).enumerate() {
            out.write_record([k.to_string(), rank.to_string(), level.to_string()])
                .map_err(csv_err)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// One row per configuration.
pub fn write_batch_csv<W: Write>(summaries: &[BatchSummary], w: W) -> Result<()> {
    let mut out = writer(w);
    out.write_record([
        "a",
        "b",
        "mean_steps",
        "std_steps",
        "mean_pattern_size",
        "std_pattern_size",
    ])
    .map_err(csv_err)?;
    for s in summaries {
        out.write_record([
            s.a.to_string(),
            s.b.to_string(),
            s.mean_steps.to_string(),
            s.std_steps.to_string(),
            s.mean_pattern_size.to_string(),
            s.std_pattern_size.to_string(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}
