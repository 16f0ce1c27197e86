//! On-disk cache of solved genera.
//!
//! One JSON file per model and format version. Records are re-validated
//! on load and the first bad record ends cache use for that run: it and
//! every higher genus are recomputed, then the file is rewritten.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use genusgf_core::algebra::{FactoredRat, Poly, Rat};
use genusgf_core::engine::{GenusSolution, GenusTable, ModelKind, ModelSpec};
use serde::{Deserialize, Serialize};

use crate::format::{coefficient_strings, denom_entries, DenomEntry};
use crate::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "GENUSGF_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub g: usize,
    pub offset: i64,
    pub coefficients: Vec<String>,
    pub denom: Vec<DenomEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    pub model: String,
    pub records: Vec<CacheRecord>,
}

impl CacheRecord {
    pub fn new(sol: &GenusSolution) -> Self {
        let f = sol.c_of_t();
        CacheRecord {
            g: sol.genus(),
            offset: f.t_power(),
            coefficients: coefficient_strings(f.numerator()),
            denom: denom_entries(f),
        }
    }

    /// Parses the record back into an unvalidated solution.
    pub fn to_solution(&self, kind: ModelKind) -> Result<GenusSolution, String> {
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| {
                c.parse::<Rat>()
                    .map_err(|e| format!("coefficient `{c}`: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(d) = self.denom.iter().find(|d| d.k == 0) {
            return Err(format!("denominator factor with k = {}", d.k));
        }
        let f = FactoredRat::new(
            self.offset,
            Poly::new(coeffs),
            self.denom.iter().map(|d| (d.k, d.exp)),
        );
        GenusSolution::from_function(kind, self.g, f).map_err(|e| e.to_string())
    }
}

impl CacheFile {
    pub fn from_table(table: &GenusTable) -> Self {
        CacheFile {
            format_version: FORMAT_VERSION,
            model: table.kind().name().to_owned(),
            records: table
                .solutions()
                .iter()
                .skip(1)
                .map(CacheRecord::new)
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: ModelKind) -> PathBuf {
        self.dir
            .join(format!("{}-v{FORMAT_VERSION}.json", kind.name()))
    }

    /// Reads the cache file. A missing file is `Ok(None)`; an unreadable or
    /// malformed one is an error for the caller to report or ignore.
    pub fn read(&self, kind: ModelKind) -> CliResult<Option<CacheFile>> {
        let path = self.path(kind);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CliError::Io { path, source }),
        };
        serde_json::from_str(&text)
            .map(Some)
            .map_err(|source| CliError::Json { path, source })
    }

    /// Writes all genera of `table` atomically.
    pub fn store(&self, table: &GenusTable) -> CliResult<()> {
        let io = |path: &Path| {
            let path = path.to_owned();
            move |source| CliError::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io(&self.dir))?;
        let path = self.path(table.kind());
        let text =
            serde_json::to_string(&CacheFile::from_table(table)).expect("plain data serializes");
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        let mut file = fs::File::create(&tmp).map_err(io(&tmp))?;
        file.write_all(text.as_bytes()).map_err(io(&tmp))?;
        file.sync_all().map_err(io(&tmp))?;
        drop(file);
        fs::rename(&tmp, &path).map_err(io(&path))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Cached,
    Computed,
}

/// How one genus entered the table.
#[derive(Clone, Debug)]
pub struct GenusEvent {
    pub genus: usize,
    pub source: Source,
    pub elapsed: Duration,
}

/// Outcome of [`build_table`].
#[derive(Clone, Debug)]
pub struct BuildReport {
    pub events: Vec<GenusEvent>,
    /// Why cached data was discarded, if it was.
    pub rejected: Option<String>,
}

impl BuildReport {
    pub fn hits(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.source == Source::Cached)
            .count()
    }
}

fn cached_solutions(cache: &Cache, kind: ModelKind) -> (Vec<CacheRecord>, Option<String>) {
    match cache.read(kind) {
        Ok(None) => (Vec::new(), None),
        Ok(Some(file)) if file.format_version != FORMAT_VERSION || file.model != kind.name() => (
            Vec::new(),
            Some(format!(
                "{}: holds {} version {}",
                cache.path(kind).display(),
                file.model,
                file.format_version
            )),
        ),
        Ok(Some(file)) => (file.records, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    }
}

/// Genera `0..=max_genus` of `kind`, reusing valid cached records and
/// computing the rest. The cache is rewritten when anything was computed.
pub fn build_table(
    kind: ModelKind,
    max_genus: usize,
    cache: Option<&Cache>,
    mut on_genus: impl FnMut(&GenusEvent),
) -> CliResult<(GenusTable, BuildReport)> {
    let mut table = GenusTable::new(ModelSpec::new(kind));
    let (records, mut rejected) = match cache {
        Some(c) => cached_solutions(c, kind),
        None => (Vec::new(), None),
    };
    let mut records = records.into_iter().peekable();
    let mut events = Vec::new();
    for g in 1..=max_genus {
        let start = Instant::now();
        let mut source = Source::Computed;
        if rejected.is_none() {
            if let Some(rec) = records.next_if(|r| r.g == g) {
                let pushed = rec
                    .to_solution(kind)
                    .and_then(|sol| table.push(sol).map(|_| ()).map_err(|e| e.to_string()));
                match pushed {
                    Ok(()) => source = Source::Cached,
                    Err(e) => rejected = Some(format!("cached {kind} genus {g}: {e}")),
                }
            }
        }
        if source == Source::Computed {
            table.extend_one()?;
        }
        let event = GenusEvent {
            genus: g,
            source,
            elapsed: start.elapsed(),
        };
        on_genus(&event);
        events.push(event);
    }
    let computed = events.iter().any(|e| e.source == Source::Computed);
    if let Some(c) = cache {
        if computed || rejected.is_some() {
            c.store(&table)?;
        }
    }
    Ok((table, BuildReport { events, rejected }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trip() {
        let table = GenusTable::computed(ModelSpec::hypermap(), 3).unwrap();
        for sol in &table.solutions()[1..] {
            let back = CacheRecord::new(sol)
                .to_solution(ModelKind::Hypermap)
                .unwrap();
            assert_eq!(&back, sol);
        }
    }

    #[test]
    fn zero_factor_is_rejected_not_panicking() {
        let rec = CacheRecord {
            g: 1,
            offset: 3,
            coefficients: vec!["1".into()],
            denom: vec![DenomEntry { k: 0, exp: 1 }],
        };
        assert!(rec.to_solution(ModelKind::Hypermap).is_err());
    }
}
