//! CSV contracts for SNR maps, campaign records and summaries.
//!
//! Plain comma-separated text with a header row, `.` decimals and dB values
//! at six decimal places. Infeasible entries carry the -10 dB sentinel; an
//! infeasible run has empty `best_x`/`best_y` fields.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::montecarlo::{CampaignSummary, RunRecord};
use crate::placement::{MapRow, Technology};
use crate::INFEASIBLE_SENTINEL_DB;

pub const MAP_HEADER: &str = "x_m,y_m,snr_db,feasible";
pub const RECORDS_HEADER: &str =
    "run_id,env_size_m,n_elements,technology,src_x,src_y,dst_x,dst_y,best_x,best_y,best_snr_db,feasible";
pub const SUMMARY_HEADER: &str =
    "env_size_m,n_elements,technology,min_db,q1_db,median_db,q3_db,max_db,mean_db,feasible_rate";

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

pub fn write_map_csv<W: Write>(mut w: W, rows: &[MapRow]) -> io::Result<()> {
    writeln!(w, "{MAP_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{}", f6(r.x_m), f6(r.y_m), f6(r.snr_db), r.feasible)?;
    }
    Ok(())
}

pub fn parse_map_csv(text: &str) -> Result<Vec<MapRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == MAP_HEADER => {}
        _ => return Err(Error::Csv { line: 1, reason: format!("expected header '{MAP_HEADER}'") }),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let line_no = i + 1;
            let err = |reason: String| Error::Csv { line: line_no, reason };
            let fields: Vec<&str> = line.trim_end().split(',').collect();
            if fields.len() != 4 {
                return Err(err(format!("expected 4 fields, got {}", fields.len())));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| err(format!("'{s}': {e}")));
            let feasible =
                fields[3].parse::<bool>().map_err(|e| err(format!("'{}': {e}", fields[3])))?;
            Ok(MapRow {
                x_m: num(fields[0])?,
                y_m: num(fields[1])?,
                snr_db: num(fields[2])?,
                feasible,
            })
        })
        .collect()
}

/// One row per run and technology (IRS first).
pub fn write_records_csv<W: Write>(mut w: W, records: &[RunRecord]) -> io::Result<()> {
    writeln!(w, "{RECORDS_HEADER}")?;
    for r in records {
        for tech in [Technology::Irs, Technology::Mr] {
            let best = r.best(tech);
            let (bx, by, snr) = match best {
                Some(b) => (f6(b.position.x), f6(b.position.y), f6(b.snr_db)),
                None => (String::new(), String::new(), f6(INFEASIBLE_SENTINEL_DB)),
            };
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                r.run_id,
                f6(r.env_size),
                r.n_elements,
                tech,
                f6(r.src.x),
                f6(r.src.y),
                f6(r.dst.x),
                f6(r.dst.y),
                bx,
                by,
                snr,
                best.is_some()
            )?;
        }
    }
    Ok(())
}

/// One row per cell and technology. A cell without feasible runs leaves the
/// statistic columns empty.
pub fn write_summary_csv<W: Write>(mut w: W, summary: &CampaignSummary) -> io::Result<()> {
    writeln!(w, "{SUMMARY_HEADER}")?;
    for c in &summary.cells {
        let stats = match c.stats {
            Some(s) => [s.min, s.q1, s.median, s.q3, s.max, s.mean].map(f6).join(","),
            None => ",,,,,".to_string(),
        };
        writeln!(
            w,
            "{},{},{},{},{}",
            f6(c.env_size),
            c.n_elements,
            c.technology,
            stats,
            f6(c.feasible_rate())
        )?;
    }
    Ok(())
}

pub fn map_csv_string(rows: &[MapRow]) -> String {
    let mut buf = Vec::new();
    write_map_csv(&mut buf, rows).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

pub fn records_csv_string(records: &[RunRecord]) -> String {
    let mut buf = Vec::new();
    write_records_csv(&mut buf, records).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

pub fn summary_csv_string(summary: &CampaignSummary) -> String {
    let mut buf = Vec::new();
    write_summary_csv(&mut buf, summary).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}
