//! Command-line front end: argument parsing, rendering, and exit codes.
//!
//! Exit codes: 0 ok, 1 verification mismatch, 2 usage or invalid input,
//! 3 resource guard, 4 inapplicable method override.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::Prime;
use crate::error::JordanError;
use crate::fastpath::{jordan_partition_with, Engine};
use crate::oracle::DEFAULT_ORACLE_CEILING;
use crate::partitions::JordanRecord;
use crate::survey::{
    check_bound, default_prime_bound, deviation_table, enumerate_deviation_vectors,
    DeviationCensus, DeviationTable, TablePrime,
};
use crate::verify::{verify_grid, VerifyConfig, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INAPPLICABLE: i32 = 4;

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "JORDAN_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    JsonLines,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodOverride {
    Auto,
    Oracle,
    Recurrence,
    Closed,
}

#[derive(Debug, Parser)]
#[command(
    name = "jordan",
    version,
    about = "Jordan partitions of J_r (x) J_s in characteristic p"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Worker threads for grid computations; never affects output order.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jordan partition and deviation vector of J_r (x) J_s (p = 0 for characteristic zero).
    Compute {
        r: u64,
        s: u64,
        p: u64,
        #[arg(long, value_enum, default_value_t = MethodOverride::Auto)]
        method: MethodOverride,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CEILING)]
        oracle_ceiling: u64,
    },
    /// Deviation vectors for all small primes and the generic large prime.
    Table { r: u64 },
    /// Number of distinct deviation vectors for fixed r.
    Count {
        r: u64,
        /// Largest prime enumerated explicitly (default 3r).
        #[arg(long)]
        prime_bound: Option<u64>,
        /// Also print every vector with a witness (s, p).
        #[arg(long)]
        list: bool,
    },
    /// Cross-check oracle, recurrence and dispatcher on a grid.
    Verify {
        r_max: u64,
        s_max: u64,
        /// Comma-separated primes, e.g. 2,3,5
        #[arg(value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CEILING)]
        oracle_ceiling: u64,
    },
}

pub fn exit_code(err: &JordanError) -> i32 {
    match err {
        JordanError::NotPrime(_) | JordanError::InvalidArgument(_) | JordanError::Overflow(_) => {
            EXIT_USAGE
        }
        JordanError::ResourceLimit { .. } => EXIT_RESOURCE,
        JordanError::Inapplicable(_) => EXIT_INAPPLICABLE,
        JordanError::Internal(_) => EXIT_MISMATCH,
    }
}

fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

fn reductions_text(record: &JordanRecord, sep: &str) -> String {
    record
        .reductions
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn render_record(record: &JordanRecord, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => format!(
            "r={} s={} p={} m={} lambda={} epsilon={} method={} reductions=[{}]\n",
            record.r,
            record.s,
            record.p,
            record.m,
            record.lambda,
            record.epsilon,
            record.method,
            reductions_text(record, ",")
        ),
        OutputFormat::JsonLines => {
            let mut line = serde_json::to_string(record).expect("record serializes");
            line.push('\n');
            line
        }
        OutputFormat::Csv => format!(
            "r,s,p,m,lambda,epsilon,method,reductions\n{},{},{},{},{},{},{},{}\n",
            record.r,
            record.s,
            record.p,
            record.m,
            csv_quote(&record.lambda.to_string()),
            csv_quote(&record.epsilon.to_string()),
            record.method,
            csv_quote(&reductions_text(record, ";"))
        ),
    }
}

pub fn render_table(table: &DeviationTable, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            if let Some(TablePrime::Generic(g)) = table.rows.last().map(|row| row.prime) {
                let _ = writeln!(
                    out,
                    "# eps({r},s,p) by s mod p^m; p' is any prime >= {} (computed with p'={g})",
                    (2 * table.r).saturating_sub(3),
                    r = table.r
                );
            }
            for row in &table.rows {
                let modulus = match row.prime {
                    TablePrime::Small(_) => row.modulus.to_string(),
                    TablePrime::Generic(_) => "p'".to_string(),
                };
                let _ = writeln!(
                    out,
                    "eps({},s,{}) s={} mod {}: {}",
                    table.r,
                    row.prime.label(),
                    row.residue,
                    modulus,
                    row.epsilon
                );
            }
        }
        OutputFormat::JsonLines => {
            for row in &table.rows {
                let value = json!({
                    "r": table.r,
                    "prime": row.prime.label(),
                    "p": row.prime.prime().get(),
                    "modulus": row.modulus,
                    "residue": row.residue,
                    "s": row.s,
                    "epsilon": row.epsilon,
                });
                let _ = writeln!(out, "{value}");
            }
        }
        OutputFormat::Csv => {
            out.push_str("r,prime,p,modulus,residue,s,epsilon\n");
            for row in &table.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    table.r,
                    csv_quote(&row.prime.label()),
                    row.prime.prime(),
                    row.modulus,
                    row.residue,
                    row.s,
                    csv_quote(&row.epsilon.to_string())
                );
            }
        }
    }
    out
}

pub fn render_census(census: &DeviationCensus, list: bool, format: OutputFormat) -> String {
    let mut out = String::new();
    let within = check_bound(census);
    match format {
        OutputFormat::Text => {
            let _ = writeln!(
                out,
                "r={} n_r={} bound={} prime_bound={} within_bound={within}",
                census.r,
                census.count(),
                census.bound(),
                census.prime_bound
            );
            if list {
                for (eps, w) in census.vectors() {
                    let _ = writeln!(out, "{eps} s={} p={}", w.s, w.p);
                }
            }
        }
        OutputFormat::JsonLines => {
            let mut value = json!({
                "r": census.r,
                "n_r": census.count(),
                "bound": census.bound(),
                "prime_bound": census.prime_bound,
                "within_bound": within,
            });
            if list {
                value["vectors"] = census
                    .vectors()
                    .map(|(eps, w)| json!({ "epsilon": eps, "s": w.s, "p": w.p }))
                    .collect();
            }
            let _ = writeln!(out, "{value}");
        }
        OutputFormat::Csv => {
            out.push_str("r,n_r,bound,prime_bound,within_bound\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{within}",
                census.r,
                census.count(),
                census.bound(),
                census.prime_bound
            );
            if list {
                out.push_str("\nepsilon,s,p\n");
                for (eps, w) in census.vectors() {
                    let _ = writeln!(out, "{},{},{}", csv_quote(&eps.to_string()), w.s, w.p);
                }
            }
        }
    }
    out
}

pub fn render_report(report: &VerifyReport, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let _ = writeln!(
                out,
                "cells={} checks={} violations={} status={}",
                report.cells,
                report.checks,
                report.violations.len(),
                if report.passed() { "pass" } else { "FAIL" }
            );
            for v in &report.violations {
                let _ = writeln!(
                    out,
                    "FAIL {} at (r,s,p)=({},{},{}): expected {} found {}",
                    v.check, v.r, v.s, v.p, v.expected, v.found
                );
            }
        }
        OutputFormat::JsonLines => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(report).expect("report serializes")
            );
        }
        OutputFormat::Csv => {
            out.push_str("check,r,s,p,expected,found\n");
            for v in &report.violations {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    v.check,
                    v.r,
                    v.s,
                    v.p,
                    csv_quote(&v.expected),
                    csv_quote(&v.found)
                );
            }
        }
    }
    out
}

fn execute(cli: &Cli) -> Result<(String, i32), JordanError> {
    match &cli.command {
        Command::Compute {
            r,
            s,
            p,
            method,
            oracle_ceiling,
        } => {
            let engine = match method {
                MethodOverride::Auto => Engine::Auto,
                MethodOverride::Oracle => Engine::Oracle {
                    ceiling: *oracle_ceiling,
                },
                MethodOverride::Recurrence => Engine::Recurrence,
                MethodOverride::Closed => Engine::Closed,
            };
            let record = jordan_partition_with(*r, *s, *p, engine)?;
            Ok((render_record(&record, cli.format), EXIT_OK))
        }
        Command::Table { r } => Ok((render_table(&deviation_table(*r)?, cli.format), EXIT_OK)),
        Command::Count {
            r,
            prime_bound,
            list,
        } => {
            let bound = prime_bound.unwrap_or_else(|| default_prime_bound(*r));
            let census = enumerate_deviation_vectors(*r, bound)?;
            Ok((render_census(&census, *list, cli.format), EXIT_OK))
        }
        Command::Verify {
            r_max,
            s_max,
            primes,
            oracle_ceiling,
        } => {
            let primes = primes
                .iter()
                .map(|&p| Prime::new(p))
                .collect::<Result<Vec<_>, _>>()?;
            let mut config = VerifyConfig::new(*r_max, *s_max, primes);
            config.ceiling = *oracle_ceiling;
            let report = verify_grid(&config)?;
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            Ok((render_report(&report, cli.format), code))
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return EXIT_USAGE;
        }
    };

    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
