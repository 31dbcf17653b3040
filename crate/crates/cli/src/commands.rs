use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use suc_core::grid::{self, ScanRow};
use suc_core::verify::{run, SuiteConfig};
use suc_core::{dq22_dzbar, q_matrix, u_jet, ComponentJet, LogComplex, Scheme, SmoothStep};

use crate::{plot as chart, EvalArgs, PlotArgs, ScanArgs, VerifyArgs};

pub const EXIT_SUITE_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<suc_core::Error> for CliError {
    fn from(e: suc_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult = Result<ExitCode, CliError>;

fn io_err(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn step() -> Result<SmoothStep, CliError> {
    Ok(SmoothStep::build(suc_core::step::DEFAULT_QUADRATURE_TOL)?)
}

fn pair(w: LogComplex) -> String {
    format!("({}, {})", w.log_mag(), w.phase())
}

pub fn eval(a: EvalArgs) -> CliResult {
    if !(a.r >= 0.0 && a.r.is_finite() && a.theta.is_finite()) {
        return Err(CliError::Usage(format!("--r must be a finite |z| >= 0, got {}", a.r)));
    }
    let step = step()?;
    let scheme = Scheme::new(a.scheme);
    let z = LogComplex::from_polar(a.r.ln(), a.theta);
    let jet = u_jet(&step, &scheme, z)?;
    let q = q_matrix(&jet);
    let dq = dq22_dzbar(&jet);

    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("scheme {}", a.scheme));
    line(format!("z = {}  (log|z|, arg z)", pair(z)));
    line(format!("n={} parity={:?} degree={}", jet.n, jet.parity, jet.monomial_degree));
    line("entries are (log_mag, phase)".into());
    for (i, c) in jet.components.iter().enumerate() {
        for (name, v) in ComponentJet::ENTRY_NAMES.iter().zip(c.entries()) {
            line(format!("u{}.{name} = {}", i + 1, pair(v)));
        }
    }
    line(format!("chi = {}", jet.chi.value));
    line(format!("log_ratio = {}", jet.log_ratio()));
    for (i, row) in q.q.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            line(format!("q{}{} = {}", i + 1, j + 1, pair(*v)));
        }
    }
    line(format!("log_frobenius_sq = {}", q.log_frobenius_sq));
    let b = dq.index + 1;
    line(format!("dq{b}{b}_dzbar = {}", pair(dq.total)));
    line(format!("  term1 = {}", pair(dq.term1)));
    line(format!("  term2 = {}", pair(dq.term2)));
    line(format!("  term3 = {}", pair(dq.term3)));
    io::stdout()
        .write_all(out.as_bytes())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
    Ok(ExitCode::SUCCESS)
}

fn default_range(kind: suc_core::SchemeKind, n_min: Option<u64>, n_max: Option<u64>) -> (u64, u64) {
    let d = SuiteConfig::defaults(kind);
    (n_min.unwrap_or(d.n_min), n_max.unwrap_or(d.n_max))
}

fn scan_csv(rows: &[ScanRow]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Io(format!("csv: {e}"));
    w.write_record(ScanRow::COLUMNS).map_err(fail)?;
    for r in rows {
        w.serialize(r).map_err(fail)?;
    }
    w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| io_err(p, e)),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

pub fn scan(a: ScanArgs) -> CliResult {
    let (n_min, n_max) = default_range(a.scheme, a.n_min, a.n_max);
    let step = step()?;
    let rows = grid::scan(&step, &Scheme::new(a.scheme), n_min, n_max, a.angles)?;
    write_out(a.out.as_deref(), &scan_csv(&rows)?)?;
    if let Some(p) = &a.out {
        eprintln!("wrote {} rows to {}", rows.len(), p.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn config(a: &VerifyArgs) -> Result<SuiteConfig, CliError> {
    let mut cfg = SuiteConfig::defaults(a.scheme);
    let (n_min, n_max) = default_range(a.scheme, a.n_min, a.n_max);
    cfg.n_min = n_min;
    cfg.n_max = n_max;
    if let Some(v) = a.angles {
        cfg.angle_samples = v;
    }
    if let Some(v) = a.k_max {
        cfg.k_max = v;
    }
    if let Some(v) = a.smooth_k_max {
        cfg.smooth_k_max = v;
    }
    if let Some(v) = a.fd_n_max {
        cfg.fd_n_max = v;
    }
    if a.no_fd {
        cfg.fd_enabled = false;
        cfg.suites.retain(|s| *s != suc_core::SuiteName::Fdoracle);
    }
    if !a.suites.is_empty() {
        cfg = cfg.with_suites(&a.suites);
    }
    for (name, v) in a.tol.pairs() {
        if let Some(v) = v {
            cfg.tolerances.set(name, v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn rows_csv(columns: &[String], rows: &[Vec<f64>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Io(format!("csv: {e}"));
    w.write_record(columns).map_err(fail)?;
    for r in rows {
        w.serialize(r).map_err(fail)?;
    }
    w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))
}

pub fn verify(a: VerifyArgs) -> CliResult {
    let cfg = config(&a)?;
    let report = run(&cfg)?;
    write_out(a.out.as_deref(), report.to_json().as_bytes())?;
    if let Some(dir) = &a.rows_out {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        for s in &report.suites {
            let path = dir.join(format!("{}.csv", s.name));
            let bytes = rows_csv(&s.columns, &s.rows)?;
            fs::write(&path, bytes).map_err(|e| io_err(&path, e))?;
        }
    }
    for s in &report.suites {
        let failing: Vec<&str> = s.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        if failing.is_empty() {
            eprintln!("{:<11} pass", s.name.name());
        } else {
            eprintln!("{:<11} FAIL ({})", s.name.name(), failing.join(", "));
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_SUITE_FAILED)
    })
}

pub fn plot(a: PlotArgs) -> CliResult {
    let text = fs::read_to_string(&a.input).map_err(|e| io_err(&a.input, e))?;
    let table = chart::Table::parse(&text).map_err(CliError::Usage)?;
    let spec = chart::ChartSpec {
        x: a.x,
        y: a.y,
        logscale: a.logscale,
    };
    let svg = chart::render(&table, &spec).map_err(CliError::Usage)?;
    fs::write(&a.out, svg).map_err(|e| io_err(&a.out, e))?;
    Ok(ExitCode::SUCCESS)
}
