//! Annular cutoffs `chi(z) = s((|z| - r) / dr)` and their Wirtinger jets.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::fd;
use crate::logscalar::LogComplex;
use crate::step::SmoothStep;

/// Relative slack accepted on the annulus edges, absorbing the rounding of
/// `exp(ln r)`.
const EDGE_SLACK: f64 = 1e-12;

/// Closed annulus `r_inner <= |z| <= r_outer`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    r_inner: f64,
    r_outer: f64,
}

impl Annulus {
    pub fn new(r_inner: f64, r_outer: f64) -> Result<Self> {
        if !(r_inner > 0.0 && r_inner < r_outer && r_outer.is_finite()) {
            return domain(format!(
                "annulus needs 0 < r_inner < r_outer, got [{r_inner}, {r_outer}]"
            ));
        }
        Ok(Self { r_inner, r_outer })
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    pub fn delta_r(&self) -> f64 {
        self.r_outer - self.r_inner
    }

    /// Radius at `fraction` of the radial span.
    pub fn radius_at(&self, fraction: f64) -> f64 {
        self.r_inner + fraction * self.delta_r()
    }

    /// Normalized radial coordinate `(|z| - r_inner) / dr`, clamped to `[0, 1]`.
    pub fn coordinate(&self, modulus: f64) -> Result<f64> {
        let lo = self.r_inner * (1.0 - EDGE_SLACK);
        let hi = self.r_outer * (1.0 + EDGE_SLACK);
        if !(modulus >= lo && modulus <= hi) {
            return domain(format!(
                "|z| = {modulus} outside annulus [{}, {}]",
                self.r_inner, self.r_outer
            ));
        }
        Ok(((modulus - self.r_inner) / self.delta_r()).clamp(0.0, 1.0))
    }
}

/// Value and Wirtinger derivatives of `chi` through total order 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiJet {
    pub value: f64,
    pub d_z: LogComplex,
    pub d_zbar: LogComplex,
    pub d_zz: LogComplex,
    pub d_zzbar: LogComplex,
    pub d_zbarzbar: LogComplex,
}

impl ChiJet {
    /// Entry `d_z^i d_zbar^j chi`, `i + j <= 2`.
    pub fn entry(&self, i: u32, j: u32) -> Option<LogComplex> {
        match (i, j) {
            (0, 0) => Some(LogComplex::from_real(self.value)),
            (1, 0) => Some(self.d_z),
            (0, 1) => Some(self.d_zbar),
            (2, 0) => Some(self.d_zz),
            (1, 1) => Some(self.d_zzbar),
            (0, 2) => Some(self.d_zbarzbar),
            _ => None,
        }
    }
}

/// Jet of `chi` for `annulus` at `z` (given in log-polar form).
pub fn chi_jet(step: &SmoothStep, annulus: &Annulus, z: LogComplex) -> Result<ChiJet> {
    if z.is_zero() {
        return Err(crate::Error::Origin);
    }
    let modulus = z.log_mag().exp();
    let x = annulus.coordinate(modulus)?;
    let dr = annulus.delta_r();
    let s1 = step.density(x);
    let s2 = step.density_derivative(x);
    let theta = z.phase();
    let log_dr = dr.ln();

    // d_zbar chi = s'(x) z / (2 |z| dr)
    let d_zbar = LogComplex::from_real(s1) * LogComplex::from_polar(-(2.0 * dr).ln(), theta);
    // d_zbar^2 chi = (s''/dr - s'/|z|) z^2 / (4 |z|^2 dr)
    let d_zbarzbar = LogComplex::from_real(s2 / dr - s1 / modulus)
        * LogComplex::from_polar(-(4f64.ln() + log_dr), 2.0 * theta);
    // d_z d_zbar chi = (s''/dr + s'/|z|) / (4 dr)
    let d_zzbar = LogComplex::from_real(s2 / dr + s1 / modulus)
        * LogComplex::from_polar(-(4f64.ln() + log_dr), 0.0);

    Ok(ChiJet {
        value: step.value(x),
        d_z: d_zbar.conj(),
        d_zbar,
        d_zz: d_zbarzbar.conj(),
        d_zzbar,
        d_zbarzbar,
    })
}

/// Empirical constant `sup |d_z^i d_zbar^j chi| |z|^(2k) dr^k`, `k = i + j`,
/// over `samples` radii and 8 angles.
pub fn chi_bound_estimate(
    step: &SmoothStep,
    annulus: &Annulus,
    order: (u32, u32),
    samples: usize,
) -> Result<f64> {
    let (i, j) = order;
    if i + j > 2 {
        return domain(format!("analytic cutoff jets stop at order 2, got ({i}, {j})"));
    }
    if samples < 16 {
        return domain(format!("need at least 16 radial samples, got {samples}"));
    }
    let k = f64::from(i + j);
    let log_dr = annulus.delta_r().ln();
    let mut best = f64::NEG_INFINITY;
    for r in 0..samples {
        let radius = annulus.radius_at(r as f64 / (samples - 1) as f64);
        for a in 0..8 {
            let z = LogComplex::from_polar(radius.ln(), std::f64::consts::TAU * a as f64 / 8.0);
            let jet = chi_jet(step, annulus, z)?;
            let e = jet.entry(i, j).expect("order checked above");
            best = best.max(e.log_mag() + 2.0 * k * radius.ln() + k * log_dr);
        }
    }
    Ok(best.exp())
}

/// Third-order Wirtinger derivative `d_z^i d_zbar^j chi` (`i + j = 3`) by
/// central differences of the analytic second-order entries.
pub fn chi_third_fd(
    step: &SmoothStep,
    annulus: &Annulus,
    z: LogComplex,
    order: (u32, u32),
    h: f64,
) -> Result<Complex64> {
    // Differentiate a second-order entry once more: (base entry, in z or in zbar).
    let (base, in_z) = match order {
        (3, 0) => ((2, 0), true),
        (2, 1) => ((2, 0), false),
        (1, 2) => ((1, 1), false),
        (0, 3) => ((0, 2), false),
        _ => return domain(format!("third-order spot checks need i + j = 3, got {order:?}")),
    };
    let shift = chi_jet(step, annulus, z)?
        .entry(base.0, base.1)
        .expect("valid order")
        .log_mag();
    let shift = if shift.is_finite() { shift } else { 0.0 };
    let c = z.to_complex_scaled(0.0);
    let entry = |x: f64, y: f64| {
        let w = LogComplex::from_cartesian(x, y);
        chi_jet(step, annulus, w)
            .map(|j| j.entry(base.0, base.1).expect("valid order").to_complex_scaled(shift))
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let (dz, dzb) = fd::wirtinger_first(&entry, c.re, c.im, h);
    let d = if in_z { dz } else { dzb };
    Ok(d * shift.exp())
}
