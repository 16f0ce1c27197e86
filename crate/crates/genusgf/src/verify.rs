//! The `verify` report: invariants, residuals and a three-way count
//! comparison, one line per check, no timings so reruns are byte-identical.

use std::fmt::Write as _;

use genusgf_core::engine::{
    integrating_factor_residual, leading_coefficient, leading_coefficient_by_recurrence,
    s_form_residual, substituted_residual, GenusTable, ModelKind, ModelSpec,
};
use genusgf_core::oracle::{
    MapEnumeration, OracleResult, MAX_HYPERMAP_DARTS, MAX_MAP_EDGES_FULL, MAX_MAP_EDGES_REDUCED,
};
use genusgf_core::series::{count_tables_by_recursion, counts_from_solution, revert, CountTable};
use num_bigint::BigInt;

use crate::cache::{build_table, Cache};
use crate::parallel;
use crate::{CliError, CliResult};

pub const DEFAULT_HYPERMAP_ORACLE_MAX: usize = 7;
pub const DEFAULT_MAP_ORACLE_MAX: usize = 4;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub models: Vec<ModelKind>,
    pub max_genus: usize,
    pub max_n: usize,
    pub hypermap_oracle_max: usize,
    /// Above the full-enumeration bound the fixed-involution reduction is used.
    pub map_oracle_max: usize,
    pub jobs: usize,
}

impl VerifyOptions {
    pub fn new(max_genus: usize, max_n: usize) -> Self {
        VerifyOptions {
            models: ModelKind::ALL.to_vec(),
            max_genus,
            max_n,
            hypermap_oracle_max: DEFAULT_HYPERMAP_ORACLE_MAX,
            map_oracle_max: DEFAULT_MAP_ORACLE_MAX,
            jobs: 1,
        }
    }

    fn check_bounds(&self) -> CliResult<()> {
        if self.hypermap_oracle_max > MAX_HYPERMAP_DARTS {
            return Err(CliError::Usage(format!(
                "hypermap oracle bound {} exceeds {MAX_HYPERMAP_DARTS}",
                self.hypermap_oracle_max
            )));
        }
        if self.map_oracle_max > MAX_MAP_EDGES_REDUCED {
            return Err(CliError::Usage(format!(
                "map oracle bound {} exceeds {MAX_MAP_EDGES_REDUCED}",
                self.map_oracle_max
            )));
        }
        Ok(())
    }

    fn map_mode(&self) -> MapEnumeration {
        if self.map_oracle_max > MAX_MAP_EDGES_FULL {
            MapEnumeration::FixedInvolution
        } else {
            MapEnumeration::Full
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Observed property, reported only.
    Soft(bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub header: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn hard(&mut self, name: String, result: Result<(), String>) {
        let (status, detail) = match result {
            Ok(()) => (Status::Pass, None),
            Err(d) => (Status::Fail, Some(d)),
        };
        self.checks.push(Check {
            name,
            status,
            detail,
        });
    }

    fn soft(&mut self, name: String, holds: bool) {
        self.checks.push(Check {
            name,
            status: Status::Soft(holds),
            detail: None,
        });
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.header);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Soft(true) => "HOLDS",
                Status::Soft(false) => "FAILS",
            };
            let _ = write!(out, "{tag:<6}{}", c.name);
            if let Some(d) = &c.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
        let hard: Vec<_> = self
            .checks
            .iter()
            .filter(|c| !matches!(c.status, Status::Soft(_)))
            .collect();
        let failed = hard.iter().filter(|c| c.status == Status::Fail).count();
        let soft_failed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Soft(false))
            .count();
        let _ = writeln!(
            out,
            "summary: {} hard checks, {} failed; {} observations, {} not holding",
            hard.len(),
            failed,
            self.checks.len() - hard.len(),
            soft_failed
        );
        match self.first_failure() {
            Some(c) => {
                let _ = writeln!(out, "first failure: {}", c.name);
            }
            None => out.push_str("all hard checks pass\n"),
        }
        out
    }
}

fn zero_or(f: genusgf_core::Result<genusgf_core::algebra::FactoredRat>) -> Result<(), String> {
    match f {
        Ok(r) if r.is_zero() => Ok(()),
        Ok(r) => Err(format!("residual {r}")),
        Err(e) => Err(e.to_string()),
    }
}

fn check_table(report: &mut Report, table: &GenusTable, max_genus: usize) {
    let kind = table.kind();
    let spec = table.spec();
    for g in 1..=max_genus {
        let sol = table.get(g).expect("table built through max_genus");
        // Insertion into the table already ran the full validation.
        report.hard(
            format!("{kind} g={g} invariants"),
            sol.validate().map(|_| ()).map_err(|e| e.to_string()),
        );
        if g >= 2 {
            let notes = table.footnotes(g).copied().unwrap_or_default();
            report.soft(
                format!("{kind} g={g} top admissible coefficient nonzero"),
                notes.top_coefficient_nonzero,
            );
            report.soft(
                format!("{kind} g={g} nonzero at first pole"),
                notes.nonzero_at_first_pole,
            );
            report.soft(
                format!("{kind} g={g} nonzero at second pole"),
                notes.nonzero_at_second_pole,
            );
        }
        let f = sol.c_of_t();
        let lowest = f
            .numerator()
            .valuation()
            .map(|v| (v as i64 + f.t_power(), f.numerator().coeff(v)));
        let expected = leading_coefficient(kind, g);
        let first = spec.first_index(g) as i64;
        let lead = match lowest {
            Some((deg, c)) if deg == first && c.is_integer() && c.to_integer() == expected => {
                let rec = leading_coefficient_by_recurrence(kind, g);
                if rec.is_integer() && rec.to_integer() == expected {
                    Ok(())
                } else {
                    Err(format!("recurrence gives {rec}, closed form {expected}"))
                }
            }
            Some((deg, c)) => Err(format!(
                "lowest term {c} t^{deg}, expected {expected} t^{first}"
            )),
            None => Err("C_g vanishes".into()),
        };
        report.hard(format!("{kind} g={g} leading coefficient"), lead);
        report.hard(
            format!("{kind} g={g} residual in t"),
            zero_or(substituted_residual(table, g)),
        );
        report.hard(
            format!("{kind} g={g} residual in s"),
            zero_or(s_form_residual(table, g)),
        );
        report.hard(
            format!("{kind} g={g} integrating factor"),
            zero_or(Ok(integrating_factor_residual(spec, sol))),
        );
    }
}

fn describe(c: &[BigInt]) -> String {
    c.iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn check_counts(
    report: &mut Report,
    table: &GenusTable,
    opts: &VerifyOptions,
    oracle: &[OracleResult],
) -> CliResult<()> {
    let kind = table.kind();
    let rev = revert(ModelSpec::new(kind).subst_coeff, opts.max_n);
    let recursion = count_tables_by_recursion(kind, opts.max_genus, opts.max_n);
    for g in 0..=opts.max_genus {
        let from_solution = counts_from_solution(table.get(g)?, &rev, opts.max_n);
        let agree = match (&from_solution, &recursion) {
            (Ok(a), Ok(b)) if a == &b[g] => Ok(()),
            (Ok(a), Ok(b)) => Err(format!(
                "solution {} vs recursion {}",
                describe(&a.counts),
                describe(&b[g].counts)
            )),
            (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
        };
        report.hard(
            format!("{kind} g={g} counts n<={} solution = recursion", opts.max_n),
            agree,
        );
        if let Ok(CountTable { counts, .. }) = &from_solution {
            let mismatch = oracle
                .iter()
                .find(|o| counts[o.size] != o.count(g))
                .map(|o| {
                    format!(
                        "n={}: series {} oracle {}",
                        o.size,
                        counts[o.size],
                        o.count(g)
                    )
                });
            if let Some(last) = oracle.last() {
                report.hard(
                    format!("{kind} g={g} counts n<={} = oracle", last.size),
                    mismatch.map_or(Ok(()), Err),
                );
            }
        }
    }
    Ok(())
}

fn oracle_results(kind: ModelKind, opts: &VerifyOptions) -> CliResult<Vec<OracleResult>> {
    let (bound, run): (
        usize,
        Box<dyn Fn(usize) -> genusgf_core::Result<OracleResult>>,
    ) = match kind {
        ModelKind::Hypermap => (
            opts.hypermap_oracle_max,
            Box::new(|n| parallel::rooted_hypermaps(n, opts.jobs)),
        ),
        ModelKind::Map => {
            let mode = opts.map_mode();
            (
                opts.map_oracle_max,
                Box::new(move |n| parallel::rooted_maps(n, mode, opts.jobs)),
            )
        }
    };
    (1..=bound.min(opts.max_n))
        .map(|n| run(n).map_err(CliError::from))
        .collect()
}

/// Runs every check. Engine failures end up as failed checks; only bad
/// options and IO problems are returned as errors.
pub fn run(opts: &VerifyOptions, cache: Option<&Cache>) -> CliResult<Report> {
    opts.check_bounds()?;
    let mut report = Report {
        header: format!(
            "verify: max genus {}, max n {}, oracle hypermap n<={}, map n<={}{}",
            opts.max_genus,
            opts.max_n,
            opts.hypermap_oracle_max,
            opts.map_oracle_max,
            if opts.map_mode() == MapEnumeration::FixedInvolution {
                " (fixed involution)"
            } else {
                ""
            }
        ),
        checks: Vec::new(),
    };
    for &kind in &opts.models {
        let built = build_table(kind, opts.max_genus, cache, |_| {});
        let table = match built {
            Ok((table, build)) => {
                if cache.is_some() {
                    report.hard(
                        format!("{kind} cached records valid"),
                        build.rejected.map_or(Ok(()), Err),
                    );
                }
                table
            }
            Err(CliError::Core(e)) => {
                report.hard(
                    format!("{kind} solve through g={}", opts.max_genus),
                    Err(e.to_string()),
                );
                continue;
            }
            Err(e) => return Err(e),
        };
        check_table(&mut report, &table, opts.max_genus);
        let oracle = match oracle_results(kind, opts) {
            Ok(o) => o,
            Err(CliError::Core(e)) => {
                report.hard(format!("{kind} oracle"), Err(e.to_string()));
                Vec::new()
            }
            Err(e) => return Err(e),
        };
        check_counts(&mut report, &table, opts, &oracle)?;
    }
    Ok(report)
}
