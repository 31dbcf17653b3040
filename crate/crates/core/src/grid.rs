//! Fixed sampling grids over the annuli and the per-point scan record.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::beltrami::{dq22_dzbar, q_matrix, QMatrix, Q22Derivative};
use crate::error::{domain, Result};
use crate::logscalar::LogComplex;
use crate::map::{u_jet_in, UJet};
use crate::scheme::Scheme;
use crate::step::SmoothStep;

/// Radial positions sampled in every annulus, as fractions of its span
/// measured from the inner edge.
pub const RADIUS_FRACTIONS: [f64; 3] = [0.25, 0.5, 0.75];

/// Interior fractions used where finite differences must not straddle the
/// flat collars.
pub const INTERIOR_FRACTIONS: [f64; 3] = [0.4, 0.5, 0.6];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub n: u64,
    pub radius_fraction: f64,
    pub angle_index: usize,
    pub angle: f64,
    pub z: LogComplex,
}

/// `fractions x angles` points of annulus `n`, ordered by fraction, then angle.
pub fn annulus_points(
    scheme: &Scheme,
    n: u64,
    fractions: &[f64],
    angles: usize,
) -> Result<Vec<SamplePoint>> {
    if angles == 0 {
        return domain("at least one angle sample is needed");
    }
    let annulus = scheme.annulus(n)?;
    let mut out = Vec::with_capacity(fractions.len() * angles);
    for &f in fractions {
        if !(0.0..=1.0).contains(&f) {
            return domain(format!("radius fraction {f} outside [0, 1]"));
        }
        let log_r = annulus.radius_at(f).ln();
        for j in 0..angles {
            let angle = TAU * j as f64 / angles as f64;
            out.push(SamplePoint {
                n,
                radius_fraction: f,
                angle_index: j,
                angle,
                z: LogComplex::from_polar(log_r, angle),
            });
        }
    }
    Ok(out)
}

/// The standard grid over `n_min..=n_max`, ordered by `(n, fraction, angle)`.
pub fn scan_points(scheme: &Scheme, n_min: u64, n_max: u64, angles: usize) -> Result<Vec<SamplePoint>> {
    if n_min == 0 || n_min > n_max {
        return domain(format!("invalid annulus range [{n_min}, {n_max}]"));
    }
    let mut out = Vec::new();
    for n in n_min..=n_max {
        out.extend(annulus_points(scheme, n, &RADIUS_FRACTIONS, angles)?);
    }
    Ok(out)
}

/// Everything computed at one sample point.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub point: SamplePoint,
    pub jet: UJet,
    pub q: QMatrix,
    pub dq: Q22Derivative,
}

pub fn evaluate(step: &SmoothStep, scheme: &Scheme, point: SamplePoint) -> Result<Sample> {
    let jet = u_jet_in(step, scheme, point.n, point.z)?;
    Ok(Sample {
        point,
        jet,
        q: q_matrix(&jet),
        dq: dq22_dzbar(&jet),
    })
}

/// Evaluates points in parallel; the output keeps the input order.
pub fn evaluate_all(step: &SmoothStep, scheme: &Scheme, points: &[SamplePoint]) -> Result<Vec<Sample>> {
    points.par_iter().map(|p| evaluate(step, scheme, *p)).collect()
}

/// One CSV row of a scan. Logs of exact zeros are `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub radius_fraction: f64,
    pub angle: f64,
    pub log_ratio: f64,
    pub log_q11: f64,
    pub log_q12: f64,
    pub log_q21: f64,
    pub log_q22: f64,
    pub log_dq22: f64,
}

impl ScanRow {
    pub const COLUMNS: [&'static str; 9] = [
        "n",
        "radius_fraction",
        "angle",
        "log_ratio",
        "log_q11",
        "log_q12",
        "log_q21",
        "log_q22",
        "log_dq22",
    ];
}

impl From<&Sample> for ScanRow {
    fn from(s: &Sample) -> Self {
        ScanRow {
            n: s.point.n,
            radius_fraction: s.point.radius_fraction,
            angle: s.point.angle,
            log_ratio: s.jet.log_ratio(),
            log_q11: s.q.q11().log_mag(),
            log_q12: s.q.q12().log_mag(),
            log_q21: s.q.q21().log_mag(),
            log_q22: s.q.q22().log_mag(),
            log_dq22: s.dq.total.log_mag(),
        }
    }
}

pub fn scan(step: &SmoothStep, scheme: &Scheme, n_min: u64, n_max: u64, angles: usize) -> Result<Vec<ScanRow>> {
    let points = scan_points(scheme, n_min, n_max, angles)?;
    Ok(evaluate_all(step, scheme, &points)?.iter().map(ScanRow::from).collect())
}
