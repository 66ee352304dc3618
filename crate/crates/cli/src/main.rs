//! `zeta`: count subalgebras and ideals of Lie rings over F_p.

mod input;
mod record;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fpzeta::liealg::catalog_entries;
use fpzeta::zeta::scan;
use fpzeta::{count_zeta, CountOptions, Error, Flavor, Method};
use serde::Serialize;

use crate::input::{parse_primes, RingSpec};
use crate::record::{Meta, RunRecord};

#[derive(Parser, Debug)]
#[command(name = "zeta", version, about = "Subalgebra and ideal zeta polynomials of Lie rings over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count at a single prime.
    Compute {
        /// catalog name or path to a ring file
        #[arg(long)]
        ring: String,
        /// catalog parameter, e.g. `c=4`; repeatable
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_parser = parse_flavor)]
        flavor: Flavor,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// maximum number of search nodes
        #[arg(long)]
        budget: Option<u64>,
        /// test every matrix instead of solving for the free entries
        #[arg(long)]
        no_prune: bool,
    },
    /// Compare counts against the closed forms.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// `a:b` or a comma-separated list; replaces each case's default primes
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// compare the computed records with `<dir>/<suite>.json`
        #[arg(long, value_name = "DIR")]
        golden: Option<PathBuf>,
        /// rewrite the golden files instead of comparing
        #[arg(long, requires = "golden")]
        bless: bool,
    },
    /// Fit each coefficient across primes.
    Scan {
        #[arg(long)]
        ring: String,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long, value_parser = parse_flavor)]
        flavor: Flavor,
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List the built-in rings.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse()
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

/// Exit status for a library error.
fn status(err: &Error) -> u8 {
    match err {
        Error::BudgetExhausted { .. } => 3,
        _ => 2,
    }
}

enum Failure {
    Mismatch,
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(status(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("ZETA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("ZETA_THREADS={raw} is not a number"))?;
    if n == 0 {
        return Err("ZETA_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compute { ring, params, prime, flavor, method, format, budget, no_prune } => {
            let spec = RingSpec::resolve(&ring, &params)?;
            let p = fpzeta::Prime::new(prime)?;
            let opts = CountOptions { method, budget, prune: !no_prune };
            let start = Instant::now();
            let result = count_zeta(&spec.ring, p, flavor, &opts)?;
            let meta = Meta { elapsed_ms: start.elapsed().as_millis() as u64, nodes: result.nodes };
            let rec = RunRecord::new(&spec, flavor, result.method, &result.poly, Some(meta));
            match format {
                Format::Text => println!("{}", result.poly),
                Format::Json => println!("{}", rec.to_json()),
            }
            Ok(())
        }
        Command::Verify { suite, primes, format, golden, bless } => {
            let primes = primes.as_deref().map(parse_primes).transpose()?;
            verify::run(&suite, primes.as_deref(), format == Format::Json, golden.as_deref(), bless)
        }
        Command::Scan { ring, params, flavor, primes, degree, modulus, budget } => {
            let spec = RingSpec::resolve(&ring, &params)?;
            let primes = parse_primes(&primes)?;
            let opts = CountOptions { budget, ..CountOptions::default() };
            let mut report = scan(&spec.ring, flavor, &primes, degree, modulus, &opts)?;
            report.ring = spec.name.clone();
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(())
        }
        Command::Catalog { format } => {
            print_catalog(format);
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CatalogRow {
    name: &'static str,
    aliases: &'static [&'static str],
    params: Vec<CatalogParam>,
    dim: usize,
    grading: Option<Vec<usize>>,
    description: &'static str,
}

#[derive(Serialize)]
struct CatalogParam {
    name: &'static str,
    default: i64,
    range: &'static str,
}

fn print_catalog(format: Format) {
    let rows: Vec<CatalogRow> = catalog_entries()
        .iter()
        .map(|e| {
            let ring = fpzeta::catalog(e.name, &e.default_params()).expect("catalog defaults build");
            CatalogRow {
                name: e.name,
                aliases: e.aliases,
                params: e.params.iter().map(|&(name, default, range)| CatalogParam { name, default, range }).collect(),
                dim: ring.dim(),
                grading: ring.grading().map(<[usize]>::to_vec),
                description: e.description,
            }
        })
        .collect();
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("catalog serializes")),
        Format::Text => {
            for r in rows {
                let params: Vec<String> =
                    r.params.iter().map(|p| format!("{}={} ({})", p.name, p.default, p.range)).collect();
                let grading = r.grading.map(|g| format!("{g:?}")).unwrap_or_else(|| "-".into());
                println!("{:<12} dim {:<3} grading {:<14} {}", r.name, r.dim, grading, r.description);
                if !r.aliases.is_empty() {
                    println!("{:<12} aliases: {}", "", r.aliases.join(", "));
                }
                if !params.is_empty() {
                    println!("{:<12} params: {}", "", params.join(", "));
                }
            }
        }
    }
}
