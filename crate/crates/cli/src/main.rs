//! `sqenergy`: square energies, 3n/4 certificates and exhaustive sweeps
//! from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a verification fails or a
//! violation is found, 2 on usage or input errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqenergy::{BoundKind, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "sqenergy", version, about = "Square energies of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report s_plus, s_minus, s and the energy of graphs.
    Compute {
        /// graph6 string
        #[arg(required_unless_present = "file", conflicts_with = "file")]
        graph6: Option<String>,
        /// graph6 file, one graph per line
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a certificate that s(G) meets the bound.
    Certify {
        graph6: String,
        #[arg(long, default_value = "3n/4")]
        bound: BoundKind,
        #[command(flatten)]
        common: Common,
    },
    /// Check a certificate against its graph by recomputation.
    VerifyCert {
        graph6: String,
        /// certificate JSON as written by `certify`
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check s(G) against a bound over many graphs.
    Sweep {
        /// orders `a..b` (inclusive) or a single order, at most 7
        #[arg(long, value_parser = parse_order_range, required_unless_present = "file", conflicts_with = "file")]
        builtin: Option<(usize, usize)>,
        /// graph6 file, one graph per line
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value = "n-1")]
        bound: BoundKind,
        /// number of minimizers kept per order
        #[arg(long, default_value_t = 10)]
        top_k: usize,
        /// worker threads; defaults to one per core
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        threads: Option<u32>,
        /// skip disconnected graphs (the default)
        #[arg(long, conflicts_with = "include_disconnected")]
        connected_only: bool,
        /// evaluate disconnected graphs from a file as well
        #[arg(long)]
        include_disconnected: bool,
        /// leave wall time out of the report so reruns are byte-identical
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compare s_plus and s_minus of a graph with those of induced parts.
    SplitCheck {
        graph6: String,
        /// comma-separated vertex labels; repeat for each part
        #[arg(long = "part", required = true, value_parser = parse_part)]
        parts: Vec<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// eigen residual tolerance
    #[arg(long, value_parser = parse_positive)]
    tol_eig: Option<f64>,
    /// certificate tolerance
    #[arg(long, value_parser = parse_positive)]
    tol_cert: Option<f64>,
}

impl Common {
    fn tolerances(&self) -> Tolerances {
        let mut tol = Tolerances::default();
        if let Some(x) = self.tol_eig {
            tol.eig = x;
        }
        if let Some(x) = self.tol_cert {
            tol.cert = x;
        }
        tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn parse_order_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected an order or a range a..b, got {s:?}"))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = parse(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

fn parse_part(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("expected comma-separated vertex labels, got {s:?}"))
        })
        .collect()
}

/// Why a command did not succeed.
#[derive(Debug)]
enum Failure {
    /// A check ran and failed; the report has already been written.
    Check,
    /// Bad input or usage; nothing useful was produced.
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
