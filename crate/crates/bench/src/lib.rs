//! Shared fixtures for the benchmarks.

use suc_core::grid::{annulus_points, SamplePoint, INTERIOR_FRACTIONS};
use suc_core::step::DEFAULT_QUADRATURE_TOL;
use suc_core::{Scheme, SchemeKind, SmoothStep};

pub fn step() -> SmoothStep {
    SmoothStep::build(DEFAULT_QUADRATURE_TOL).expect("step table")
}

/// Interior points of annulus `n`, one per fraction, at a fixed angle.
pub fn interior_points(kind: SchemeKind, n: u64) -> (Scheme, Vec<SamplePoint>) {
    let scheme = Scheme::new(kind);
    let pts = annulus_points(&scheme, n, &INTERIOR_FRACTIONS, 1).expect("annulus points");
    (scheme, pts)
}
