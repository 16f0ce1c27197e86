//! Per-genus timing rows for `bench`.

use std::fmt::Write as _;

use genusgf_core::engine::ModelKind;
use serde::Serialize;

use crate::cache::{build_table, Cache, Source};
use crate::format::Format;
use crate::CliResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub model: String,
    pub genus: usize,
    /// Wall time to solve or to load and validate.
    pub millis: u128,
    /// Largest bit length of a numerator coefficient.
    pub max_bits: u64,
    pub cache_hit: bool,
}

pub fn run(kind: ModelKind, max_genus: usize, cache: Option<&Cache>) -> CliResult<Vec<BenchRow>> {
    let (table, report) = build_table(kind, max_genus, cache, |_| {})?;
    Ok(report
        .events
        .iter()
        .map(|e| BenchRow {
            model: kind.name().to_owned(),
            genus: e.genus,
            millis: e.elapsed.as_millis(),
            max_bits: table
                .get(e.genus)
                .expect("built")
                .c_of_t()
                .numerator()
                .max_bits(),
            cache_hit: e.source == Source::Cached,
        })
        .collect())
}

pub fn render(rows: &[BenchRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(rows).expect("plain data serializes"),
        _ => {
            let mut out = String::from("model,genus,millis,max_bits,cache_hit");
            for r in rows {
                let _ = write!(
                    out,
                    "\n{},{},{},{},{}",
                    r.model, r.genus, r.millis, r.max_bits, r.cache_hit
                );
            }
            out
        }
    }
}
