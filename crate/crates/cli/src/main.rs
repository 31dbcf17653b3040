//! `suc`: point evaluation, grid scans, verification suites and charts for
//! flat smooth maps `C -> C^2`.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 usage or domain
//! error, 3 I/O error.

mod commands;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use suc_core::{SchemeKind, SuiteName};

#[derive(Parser, Debug)]
#[command(name = "suc", version, about = "Flat smooth maps C -> C^2 and their Beltrami coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the jet of u and the matrix Q at one point
    Eval(EvalArgs),
    /// Sample the standard annulus grid and write CSV
    Scan(ScanArgs),
    /// Run verification suites and write a JSON report
    Verify(VerifyArgs),
    /// Draw two CSV columns as an SVG chart
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, default_value = "loglog")]
    scheme: SchemeKind,
    /// Modulus |z|
    #[arg(long)]
    r: f64,
    /// Argument of z in radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value = "loglog")]
    scheme: SchemeKind,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    /// Equally spaced angles per radius
    #[arg(long, default_value_t = 16)]
    angles: usize,
    /// Output CSV (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "loglog")]
    scheme: SchemeKind,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    angles: Option<usize>,
    /// Largest k in |z|^-k for the flatness suite
    #[arg(long)]
    k_max: Option<u64>,
    /// Largest k tabulated by the smoothness suite
    #[arg(long)]
    smooth_k_max: Option<u64>,
    /// Suite to run; repeat for several (default: all defined for the scheme)
    #[arg(long = "suite")]
    suites: Vec<SuiteName>,
    /// Skip the finite-difference oracle
    #[arg(long)]
    no_fd: bool,
    /// Largest annulus index visited by the finite-difference oracle
    #[arg(long)]
    fd_n_max: Option<u64>,
    /// Output JSON report (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory receiving one CSV of per-n rows per suite
    #[arg(long)]
    rows_out: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args, Debug, Default)]
struct TolArgs {
    #[arg(long)]
    tol_ratio_margin: Option<f64>,
    #[arg(long)]
    tol_flat: Option<f64>,
    #[arg(long)]
    tol_smooth_floor: Option<f64>,
    #[arg(long)]
    tol_fd_first: Option<f64>,
    #[arg(long)]
    tol_fd_second: Option<f64>,
    #[arg(long)]
    tol_growth_factor: Option<f64>,
    #[arg(long)]
    tol_hypothesis_bound: Option<f64>,
}

impl TolArgs {
    fn pairs(&self) -> [(&'static str, Option<f64>); 7] {
        [
            ("ratio_margin", self.tol_ratio_margin),
            ("flat", self.tol_flat),
            ("smooth_floor", self.tol_smooth_floor),
            ("fd_first", self.tol_fd_first),
            ("fd_second", self.tol_fd_second),
            ("growth_factor", self.tol_growth_factor),
            ("hypothesis_bound", self.tol_hypothesis_bound),
        ]
    }
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// CSV written by `scan` or by `verify --rows-out`
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long)]
    out: PathBuf,
    /// Logarithmic y axis
    #[arg(long)]
    logscale: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Scan(a) => commands::scan(a),
        Command::Verify(a) => commands::verify(a),
        Command::Plot(a) => commands::plot(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("suc: {e}");
            e.exit_code()
        }
    }
}
