use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genusgf::cache::{build_table, Cache, CACHE_DIR_ENV};
use genusgf::format::{render_counts, render_solution, Format};
use genusgf::parallel::effective_jobs;
use genusgf::verify::{self, VerifyOptions, DEFAULT_HYPERMAP_ORACLE_MAX, DEFAULT_MAP_ORACLE_MAX};
use genusgf::{bench, CliError, CliResult};
use genusgf_core::engine::ModelKind;
use genusgf_core::series::{counts_from_solution, revert};

/// Genus-by-genus generating functions for rooted maps and hypermaps.
#[derive(Parser)]
#[command(name = "genusgf", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Directory holding solved genera between runs.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Maximum worker threads for the brute-force oracle.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print C_g (g <= 1) or P_g with its denominator.
    Poly {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print the counts c_{g,0..=max_n}.
    Counts {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long)]
        genus: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Check invariants, residuals and counts against the oracle.
    Verify {
        /// Restrict to one model; both by default.
        #[arg(long, value_parser = parse_model)]
        model: Option<ModelKind>,
        #[arg(long, default_value_t = 3)]
        max_genus: usize,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        /// Largest hypermap size (darts) enumerated by the oracle.
        #[arg(long, default_value_t = DEFAULT_HYPERMAP_ORACLE_MAX)]
        oracle_hypermap_max: usize,
        /// Largest map size (edges) enumerated by the oracle; 5 switches
        /// to the fixed-involution enumeration.
        #[arg(long, default_value_t = DEFAULT_MAP_ORACLE_MAX)]
        oracle_map_max: usize,
    },
    /// Time each genus and record coefficient sizes.
    Bench {
        #[arg(long, value_parser = parse_model, default_value = "hypermap")]
        model: ModelKind,
        #[arg(long)]
        max_genus: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse()
}

fn run(cli: Cli) -> CliResult<bool> {
    let cache = cli.common.cache_dir.map(Cache::new);
    let cache = cache.as_ref();
    match cli.command {
        Command::Poly {
            model,
            genus,
            format,
        } => {
            let (table, _) = build_table(model, genus, cache, |_| {})?;
            println!("{}", render_solution(table.get(genus)?, format));
        }
        Command::Counts {
            model,
            genus,
            max_n,
            format,
        } => {
            let max_n = max_n as usize;
            let (table, _) = build_table(model, genus, cache, |_| {})?;
            let rev = revert(table.spec().subst_coeff, max_n);
            let counts = counts_from_solution(table.get(genus)?, &rev, max_n)?;
            println!("{}", render_counts(&counts, format));
        }
        Command::Verify {
            model,
            max_genus,
            max_n,
            oracle_hypermap_max,
            oracle_map_max,
        } => {
            let mut opts = VerifyOptions::new(max_genus, max_n);
            if let Some(m) = model {
                opts.models = vec![m];
            }
            opts.hypermap_oracle_max = oracle_hypermap_max;
            opts.map_oracle_max = oracle_map_max;
            opts.jobs = effective_jobs(cli.common.jobs);
            let report = verify::run(&opts, cache)?;
            print!("{}", report.render());
            return Ok(report.passed());
        }
        Command::Bench {
            model,
            max_genus,
            format,
        } => {
            let rows = bench::run(model, max_genus, cache)?;
            println!("{}", bench::render(&rows, format));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("genusgf: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                _ => 1,
            })
        }
    }
}
