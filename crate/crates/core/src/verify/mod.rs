//! Verification suites: desk-scale checks of the inequalities the
//! construction satisfies, with fitted constants and per-`n` data.
//!
//! Asymptotic claims are tested through explicit proxies (last half of the
//! range against the first, monotone tails of at least three points). Every
//! verdict is the conjunction of the recorded checks, so a report can be
//! audited from its own data.

mod suites;
pub mod trend;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scheme::{Scheme, SchemeKind};
use crate::step::{SmoothStep, DEFAULT_QUADRATURE_TOL};

pub use suites::{CALCLEMMA_TAIL, CALCLEMMA_TAIL_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Ratio,
    Flatness,
    Smoothness,
    Q22growth,
    Fdoracle,
    Calclemma,
}

impl SuiteName {
    pub const ALL: [SuiteName; 6] = [
        SuiteName::Ratio,
        SuiteName::Flatness,
        SuiteName::Smoothness,
        SuiteName::Q22growth,
        SuiteName::Fdoracle,
        SuiteName::Calclemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Ratio => "ratio",
            SuiteName::Flatness => "flatness",
            SuiteName::Smoothness => "smoothness",
            SuiteName::Q22growth => "q22growth",
            SuiteName::Fdoracle => "fdoracle",
            SuiteName::Calclemma => "calclemma",
        }
    }

    /// Suites defined for `kind`.
    pub fn applies_to(self, kind: SchemeKind) -> bool {
        !(self == SuiteName::Q22growth && kind != SchemeKind::Loglog)
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = SuiteName::ALL.iter().map(|n| n.name()).collect();
                Error::Config(format!("unknown suite {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

/// Pass/fail thresholds. All must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Allowed relative growth of a sup from the first to the last half.
    pub ratio_margin: f64,
    /// Level that flat quantities must fall below.
    pub flat: f64,
    /// Smoothness criterion logs must end below `-smooth_floor`.
    pub smooth_floor: f64,
    pub fd_first: f64,
    pub fd_second: f64,
    /// Required growth of `|d q22 / dzbar| x_n^3` from midpoint to end.
    pub growth_factor: f64,
    /// Bound on `(dr_n/r_n) / (dr_{n+2}/r_{n+2})`.
    pub hypothesis_bound: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            ratio_margin: 0.1,
            flat: 1e-30,
            smooth_floor: 100.0,
            fd_first: 1e-5,
            fd_second: 1e-3,
            growth_factor: 2.0,
            hypothesis_bound: 2.0,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 7] = [
        "ratio_margin",
        "flat",
        "smooth_floor",
        "fd_first",
        "fd_second",
        "growth_factor",
        "hypothesis_bound",
    ];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "ratio_margin" => &mut self.ratio_margin,
            "flat" => &mut self.flat,
            "smooth_floor" => &mut self.smooth_floor,
            "fd_first" => &mut self.fd_first,
            "fd_second" => &mut self.fd_second,
            "growth_factor" => &mut self.growth_factor,
            "hypothesis_bound" => &mut self.hypothesis_bound,
            _ => return None,
        })
    }

    /// Sets a tolerance by name; `-` and `_` are interchangeable.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let key = name.replace('-', "_");
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Config(format!("tolerance {name} must be positive, got {value}")));
        }
        match self.slot(&key) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::Config(format!("unknown tolerance {name:?}"))),
        }
    }

    fn values(&self) -> [f64; 7] {
        [
            self.ratio_margin,
            self.flat,
            self.smooth_floor,
            self.fd_first,
            self.fd_second,
            self.growth_factor,
            self.hypothesis_bound,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub scheme: SchemeKind,
    pub n_min: u64,
    pub n_max: u64,
    /// Equally spaced angles per sampled radius. Adjacent monomials beat at
    /// frequency `p(n+1) - p(n)` around the circle, so 16 under-resolves the
    /// small-n sups of the loglog scheme.
    pub angle_samples: usize,
    /// Largest power `|z|^-k` in the flatness suite.
    pub k_max: u64,
    /// Largest `k` tabulated by the smoothness-criterion suite.
    pub smooth_k_max: u64,
    pub tolerances: Tolerances,
    pub fd_enabled: bool,
    /// Largest annulus index the finite-difference oracle visits.
    pub fd_n_max: u64,
    pub suites: Vec<SuiteName>,
}

impl SuiteConfig {
    /// Default ranges: `[2, 60]` for rosay, `[4, 200]` for loglog; 32 angles;
    /// every suite defined for the scheme.
    pub fn defaults(scheme: SchemeKind) -> Self {
        let (n_min, n_max) = match scheme {
            SchemeKind::Rosay => (2, 60),
            SchemeKind::Loglog => (4, 200),
        };
        Self {
            scheme,
            n_min,
            n_max,
            angle_samples: 32,
            k_max: 10,
            smooth_k_max: 5,
            tolerances: Tolerances::default(),
            fd_enabled: true,
            fd_n_max: 40,
            suites: SuiteName::ALL.into_iter().filter(|s| s.applies_to(scheme)).collect(),
        }
    }

    /// Replaces the suite list, dropping repeats but keeping first-seen order.
    pub fn with_suites(mut self, suites: &[SuiteName]) -> Self {
        let mut out: Vec<SuiteName> = Vec::new();
        for s in suites {
            if !out.contains(s) {
                out.push(*s);
            }
        }
        self.suites = out;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad(format!("empty annulus range [{}, {}]", self.n_min, self.n_max));
        }
        Scheme::new(self.scheme).annulus(self.n_max)?;
        if self.angle_samples < 4 {
            return bad(format!("angle_samples must be at least 4, got {}", self.angle_samples));
        }
        for (name, v) in Tolerances::NAMES.iter().zip(self.tolerances.values()) {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("tolerance {name} must be positive, got {v}"));
            }
        }
        if self.suites.is_empty() {
            return bad("no suites selected".into());
        }
        for s in &self.suites {
            if !s.applies_to(self.scheme) {
                return bad(format!("suite {s} is defined for the loglog scheme only"));
            }
            if *s == SuiteName::Fdoracle && !self.fd_enabled {
                return bad("suite fdoracle requested with finite differences disabled".into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One named comparison. Non-finite numbers serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub limit: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, measured: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            passed,
            measured,
            limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteRecord {
    pub name: SuiteName,
    pub verdict: Verdict,
    pub constants: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SuiteRecord {
    fn new(name: SuiteName, columns: &[&str]) -> Self {
        Self {
            name,
            verdict: Verdict::Fail,
            constants: BTreeMap::new(),
            checks: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn constant(&mut self, name: impl Into<String>, value: f64) {
        self.constants.insert(name.into(), value);
    }

    fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    fn finish(mut self) -> Self {
        let ok = !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Values of one column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub scheme: SchemeKind,
    pub config: SuiteConfig,
    pub suites: Vec<SuiteRecord>,
    pub version: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteRecord::passed)
    }

    pub fn suite(&self, name: SuiteName) -> Option<&SuiteRecord> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is plain data");
        s.push('\n');
        s
    }
}

/// Runs one suite.
pub fn run_suite(step: &SmoothStep, cfg: &SuiteConfig, name: SuiteName) -> Result<SuiteRecord> {
    let scheme = Scheme::new(cfg.scheme);
    let record = match name {
        SuiteName::Ratio => suites::ratio(step, &scheme, cfg)?,
        SuiteName::Flatness => suites::flatness(step, &scheme, cfg)?,
        SuiteName::Smoothness => suites::smoothness(&scheme, cfg)?,
        SuiteName::Q22growth => suites::q22_growth(step, &scheme, cfg)?,
        SuiteName::Fdoracle => suites::fd_oracle(step, &scheme, cfg)?,
        SuiteName::Calclemma => suites::calculus_lemma(cfg)?,
    };
    Ok(record.finish())
}

/// Runs every configured suite in order.
pub fn run(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let step = SmoothStep::build(DEFAULT_QUADRATURE_TOL)?;
    let suites = cfg
        .suites
        .iter()
        .map(|s| run_suite(&step, cfg, *s))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        scheme: cfg.scheme,
        config: cfg.clone(),
        suites,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}
