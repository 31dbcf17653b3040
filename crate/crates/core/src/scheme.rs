//! Sequence data for the two constructions: radii `r_n`, degrees `p(n)` and
//! log-amplitudes `ln F(n)`.
//!
//! * `rosay`: `r_n = 2^(1-n)`, `p(n) = n`, `F(n) = 2^(n^2/2)`.
//! * `loglog`: `r_n = 1/ln(n+1)`, `p(n) = n^2`, `F(1) = 1` and
//!   `F(n) = ln(n+2)^(2n-2) F(n-1)`.
//!
//! Annulus `A_n` is `r_{n+1} <= |z| <= r_n`. Index `n = 0` is only used
//! internally as the outer neighbour of `A_1` (`p(0) = 0`, `F(0) = 1`).

use std::f64::consts::{LN_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cutoff::Annulus;
use crate::error::{domain, Error, Result};

/// Smallest annulus index.
pub const N_MIN: u64 = 1;
/// Largest annulus index accepted by `annulus_of`.
pub const N_LIMIT: u64 = 1_000_000;
const ROSAY_N_LIMIT: u64 = 1000;
const CACHE_LEN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Rosay,
    Loglog,
}

impl SchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Rosay => "rosay",
            SchemeKind::Loglog => "loglog",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rosay" => Ok(SchemeKind::Rosay),
            "loglog" => Ok(SchemeKind::Loglog),
            other => Err(Error::Config(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Where a point falls in the annular decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnulusIndex {
    Origin,
    Annulus(u64),
}

/// One example's sequence data. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Scheme {
    kind: SchemeKind,
    // ln F(n) for n = 0..CACHE_LEN
    log_f: Vec<f64>,
}

#[inline]
fn lnln(m: f64) -> f64 {
    m.ln().ln()
}

impl Scheme {
    pub fn new(kind: SchemeKind) -> Self {
        let mut log_f = Vec::with_capacity(CACHE_LEN);
        log_f.push(0.0);
        for n in 1..CACHE_LEN as u64 {
            let prev = log_f[n as usize - 1];
            log_f.push(Self::next_log_f(kind, n, prev));
        }
        Self { kind, log_f }
    }

    fn next_log_f(kind: SchemeKind, n: u64, prev: f64) -> f64 {
        match kind {
            SchemeKind::Rosay => (n as f64).powi(2) * 0.5 * LN_2,
            SchemeKind::Loglog if n == 1 => 0.0,
            SchemeKind::Loglog => prev + (2 * n - 2) as f64 * lnln(n as f64 + 2.0),
        }
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    fn check(&self, n: u64) -> Result<()> {
        if n < N_MIN {
            return domain(format!("annulus index {n} below n_min = {N_MIN}"));
        }
        if self.kind == SchemeKind::Rosay && n > ROSAY_N_LIMIT {
            return domain(format!("rosay radii underflow beyond n = {ROSAY_N_LIMIT}"));
        }
        Ok(())
    }

    /// `r_n`.
    pub fn radius(&self, n: u64) -> Result<f64> {
        self.check(n)?;
        Ok(self.radius_unchecked(n))
    }

    fn radius_unchecked(&self, n: u64) -> f64 {
        match self.kind {
            SchemeKind::Rosay => 2f64.powi(1 - n as i32),
            SchemeKind::Loglog => 1.0 / (n as f64 + 1.0).ln(),
        }
    }

    /// `ln r_n`.
    pub fn log_radius(&self, n: u64) -> Result<f64> {
        self.check(n)?;
        Ok(self.log_radius_unchecked(n))
    }

    fn log_radius_unchecked(&self, n: u64) -> f64 {
        match self.kind {
            SchemeKind::Rosay => -((n - 1) as f64) * LN_2,
            SchemeKind::Loglog => -lnln(n as f64 + 1.0),
        }
    }

    /// `dr_n = r_n - r_{n+1}`.
    pub fn delta_r(&self, n: u64) -> Result<f64> {
        self.check(n)?;
        Ok(match self.kind {
            SchemeKind::Rosay => 2f64.powi(-(n as i32)),
            SchemeKind::Loglog => {
                let m = n as f64;
                (1.0 / (m + 1.0)).ln_1p() / ((m + 1.0).ln() * (m + 2.0).ln())
            }
        })
    }

    /// `dr_n / r_n`.
    pub fn relative_width(&self, n: u64) -> Result<f64> {
        self.check(n)?;
        Ok(match self.kind {
            SchemeKind::Rosay => 0.5,
            SchemeKind::Loglog => {
                let m = n as f64;
                (1.0 / (m + 1.0)).ln_1p() / (m + 2.0).ln()
            }
        })
    }

    /// `p(n)`.
    pub fn degree(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self.degree_ext(n))
    }

    /// `p(n)` including the auxiliary index 0.
    pub(crate) fn degree_ext(&self, n: u64) -> u64 {
        match self.kind {
            SchemeKind::Rosay => n,
            SchemeKind::Loglog => n * n,
        }
    }

    /// `ln F(n)`.
    pub fn log_amplitude(&self, n: u64) -> Result<f64> {
        self.check(n)?;
        Ok(self.log_amplitude_ext(n))
    }

    /// `ln F(n)` including the auxiliary index 0.
    pub(crate) fn log_amplitude_ext(&self, n: u64) -> f64 {
        if let Some(v) = self.log_f.get(n as usize) {
            return *v;
        }
        let mut acc = *self.log_f.last().expect("cache is non-empty");
        for m in self.log_f.len() as u64..=n {
            acc = Self::next_log_f(self.kind, m, acc);
        }
        acc
    }

    /// The fudge factor `g(n)` balancing the amplitude recursion:
    /// `F(n-1) 2^n = g(n) F(n)` for rosay, `g(n) = ln(n+2)` for loglog.
    pub fn fudge(&self, n: u64) -> f64 {
        match self.kind {
            SchemeKind::Rosay => SQRT_2,
            SchemeKind::Loglog => (n as f64 + 2.0).ln(),
        }
    }

    /// `A_n = {r_{n+1} <= |z| <= r_n}`.
    pub fn annulus(&self, n: u64) -> Result<Annulus> {
        self.check(n)?;
        self.check(n + 1)?;
        Annulus::new(self.radius_unchecked(n + 1), self.radius_unchecked(n))
    }

    /// Annulus containing `|z| = exp(log_abs_z)`. A circle shared by two
    /// annuli belongs to the outer one (smaller index).
    pub fn annulus_of(&self, log_abs_z: f64) -> Result<AnnulusIndex> {
        if log_abs_z == f64::NEG_INFINITY {
            return Ok(AnnulusIndex::Origin);
        }
        if log_abs_z.is_nan() {
            return domain("log|z| is NaN");
        }
        let outer = self.log_radius_unchecked(N_MIN);
        if log_abs_z > outer {
            return domain(format!(
                "|z| = {} exceeds the outer radius r_1 = {}",
                log_abs_z.exp(),
                outer.exp()
            ));
        }
        let limit = match self.kind {
            SchemeKind::Rosay => ROSAY_N_LIMIT - 1,
            SchemeKind::Loglog => N_LIMIT,
        };
        let guess = match self.kind {
            SchemeKind::Rosay => (-log_abs_z / LN_2).ceil(),
            SchemeKind::Loglog => (1.0 / log_abs_z.exp()).exp() - 2.0,
        };
        if !(guess <= limit as f64) {
            return domain(format!(
                "|z| = {:e} lies beyond annulus index {limit}",
                log_abs_z.exp()
            ));
        }
        // |z| >= r_{n+1}
        let covers = |n: u64| self.log_radius_unchecked(n + 1) <= log_abs_z;
        let mut n = (guess.max(1.0) as u64).clamp(N_MIN, limit);
        while !covers(n) {
            n += 1;
            if n > limit {
                return domain(format!("|z| lies beyond annulus index {limit}"));
            }
        }
        while n > N_MIN && covers(n - 1) {
            n -= 1;
        }
        Ok(AnnulusIndex::Annulus(n))
    }

    /// Natural log of `F(n+1) p(n+1)^k r_n^(p(n+1)-4k) / (dr_n/r_n)^k`.
    pub fn smoothness_criterion(&self, n: u64, k: u64) -> Result<f64> {
        self.check(n)?;
        let p = self.degree_ext(n + 1);
        if p <= 4 * k {
            return domain(format!(
                "p({}) = {p} <= 4k = {}; criterion defined only for larger n",
                n + 1,
                4 * k
            ));
        }
        let kf = k as f64;
        Ok(self.log_amplitude_ext(n + 1)
            + kf * (p as f64).ln()
            + (p - 4 * k) as f64 * self.log_radius_unchecked(n)
            - kf * self.relative_width(n)?.ln())
    }

    /// `(dr_n/r_n) / (dr_{n+2}/r_{n+2})`.
    pub fn hypothesis_ratio(&self, n: u64) -> Result<f64> {
        Ok(self.relative_width(n)? / self.relative_width(n + 2)?)
    }

    /// `(dr_n/r_n) n ln(n+2)`, which tends to 1 for loglog.
    pub fn normalized_relative_width(&self, n: u64) -> Result<f64> {
        if self.kind != SchemeKind::Loglog {
            return domain("normalized relative width is defined for the loglog scheme");
        }
        let m = n as f64;
        Ok(self.relative_width(n)? * m * (m + 2.0).ln())
    }
}
