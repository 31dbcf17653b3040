//! Finite-difference oracles for the closed-form jets.
//!
//! The map is re-evaluated in plain Cartesian arithmetic from point values
//! of the step and the scheme data only. Every value is divided by
//! `exp(shift)`, the size of the monomial component at the base point, and
//! `z^p` is formed as `z0^p (1 + d/z0)^p` with the second factor taken
//! through `ln_1p`, so large degrees stay in range.

use num_complex::Complex64;

use crate::beltrami::{dq22_dzbar, q_matrix};
use crate::cutoff::{chi_jet, Annulus};
use crate::error::{domain, Result};
use crate::fd::{rel_error, wirtinger_first, wirtinger_second};
use crate::logscalar::LogComplex;
use crate::map::{u_jet_in, ComponentJet, Parity};
use crate::scheme::Scheme;
use crate::step::SmoothStep;

/// Below this fraction of the largest entry of the same order, errors are
/// measured against that fraction instead of the entry itself.
pub const RELATIVE_FLOOR: f64 = 1e-3;

/// Step of the first-derivative stencils, in units of [`RescaledMap::length_scale`].
pub const FIRST_STEP: f64 = 1e-3;
/// Step of the second-derivative stencils, in units of [`RescaledMap::length_scale`].
pub const SECOND_STEP: f64 = 5e-3;

/// Second-derivative step for the cutoff alone, in units of `dr`. The cutoff
/// is `O(1)` and carries no large-degree rounding, so a finer step pays off.
pub const CHI_SECOND_STEP: f64 = 1e-3;

/// Rescaled Cartesian evaluation of `u` on annulus `n` near `z0`.
pub struct RescaledMap<'a> {
    step: &'a SmoothStep,
    n: u64,
    annulus: Annulus,
    z0: LogComplex,
    /// `|z0| - r_{n+1}`, from the sampling fraction.
    inner_offset: f64,
    shift: f64,
    /// `p` for indices `n - 1`, `n`, `n + 1`.
    degrees: [u64; 3],
    /// `F z0^p exp(-shift)` for the same indices. Factoring these out keeps
    /// the rounding that varies across a stencil at the level of `p ln(1 + d/z0)`.
    bases: [Complex64; 3],
}

impl<'a> RescaledMap<'a> {
    pub fn new(step: &'a SmoothStep, scheme: &Scheme, n: u64, fraction: f64, angle: f64) -> Result<Self> {
        if !(fraction > 0.0 && fraction < 1.0) {
            return domain(format!("oracle base point needs an interior fraction, got {fraction}"));
        }
        let annulus = scheme.annulus(n)?;
        let inner_offset = fraction * annulus.delta_r();
        let z0 = LogComplex::from_polar(annulus.radius_at(fraction).ln(), angle);
        let indices = [n - 1, n, n + 1];
        let degrees = indices.map(|m| scheme.degree_ext(m));
        let shift = scheme.log_amplitude_ext(n) + degrees[1] as f64 * z0.log_mag();
        let bases = [0, 1, 2].map(|i| {
            let p = degrees[i] as f64;
            let mag = scheme.log_amplitude_ext(indices[i]) - shift + p * z0.log_mag();
            Complex64::from_polar(mag.exp(), p * z0.phase())
        });
        Ok(Self {
            step,
            n,
            annulus,
            z0,
            inner_offset,
            shift,
            degrees,
            bases,
        })
    }

    pub fn z0(&self) -> LogComplex {
        self.z0
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// `min(dr, |z0| / p(n+1))`, the shortest length over which `u` changes.
    pub fn length_scale(&self) -> f64 {
        let p = self.degrees[2].max(1) as f64;
        self.annulus.delta_r().min(self.z0.log_mag().exp() / p)
    }

    /// `ln(1 + d/z0)` for the Cartesian offset `d = dx + i dy`.
    fn log_w(&self, dx: f64, dy: f64) -> Complex64 {
        let z0 = self.z0.to_complex_scaled(0.0);
        let delta = Complex64::new(dx, dy) / z0;
        let re = 0.5 * (2.0 * delta.re + delta.norm_sqr()).ln_1p();
        let im = delta.im.atan2(1.0 + delta.re);
        Complex64::new(re, im)
    }

    fn monomial(&self, i: usize, log_w: Complex64) -> Complex64 {
        let p = self.degrees[i] as f64;
        self.bases[i] * Complex64::from_polar((p * log_w.re).exp(), p * log_w.im)
    }

    /// `chi` at `z0 + d`.
    pub fn chi(&self, dx: f64, dy: f64) -> f64 {
        let lw = self.log_w(dx, dy);
        let offset = self.inner_offset + self.z0.log_mag().exp() * lw.re.exp_m1();
        self.step.value((offset / self.annulus.delta_r()).clamp(0.0, 1.0))
    }

    /// `u(z0 + d) exp(-shift)`.
    pub fn eval(&self, dx: f64, dy: f64) -> [Complex64; 2] {
        let lw = self.log_w(dx, dy);
        let c = self.chi(dx, dy);
        let a = self.monomial(0, lw);
        let m = self.monomial(1, lw);
        let b = self.monomial(2, lw);
        let blend = a * c + b * (1.0 - c);
        match Parity::of(self.n) {
            Parity::Even => [m, blend],
            Parity::Odd => [blend, m],
        }
    }
}

/// Largest relative errors of one jet against its oracle, grouped by order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OracleErrors {
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

impl OracleErrors {
    fn merge(self, o: OracleErrors) -> OracleErrors {
        OracleErrors {
            value: self.value.max(o.value),
            first: self.first.max(o.first),
            second: self.second.max(o.second),
        }
    }
}

fn max_error(pairs: &[(Complex64, Complex64)]) -> f64 {
    let scale = pairs.iter().map(|(_, e)| e.norm()).fold(0.0, f64::max);
    let floor = RELATIVE_FLOOR * scale;
    pairs
        .iter()
        .map(|&(a, e)| if scale == 0.0 { a.norm() } else { rel_error(a, e, floor) })
        .fold(0.0, f64::max)
}

/// Errors of the analytic `u` jet (both components) at the oracle base point.
pub fn u_jet_errors(step: &SmoothStep, scheme: &Scheme, oracle: &RescaledMap) -> Result<OracleErrors> {
    let jet = u_jet_in(step, scheme, oracle.n, oracle.z0)?;
    let shift = oracle.shift;
    let ell = oracle.length_scale();
    let exact = |c: &ComponentJet| c.entries().map(|e| e.to_complex_scaled(shift));

    let mut out = OracleErrors::default();
    for i in 0..2 {
        let f = |x: f64, y: f64| oracle.eval(x, y)[i];
        let e = exact(&jet.components[i]);
        let (dz, dzb) = wirtinger_first(&f, 0.0, 0.0, FIRST_STEP * ell);
        let (dzz, dzzb, dzbzb) = wirtinger_second(&f, 0.0, 0.0, SECOND_STEP * ell);
        out = out.merge(OracleErrors {
            value: max_error(&[(f(0.0, 0.0), e[0])]),
            first: max_error(&[(dz, e[1]), (dzb, e[2])]),
            second: max_error(&[(dzz, e[3]), (dzzb, e[4]), (dzbzb, e[5])]),
        });
    }
    Ok(out)
}

/// Errors of the analytic cutoff jet at the oracle base point.
pub fn chi_jet_errors(step: &SmoothStep, oracle: &RescaledMap) -> Result<OracleErrors> {
    let jet = chi_jet(step, &oracle.annulus, oracle.z0)?;
    let ell = oracle.annulus.delta_r();
    let f = |x: f64, y: f64| Complex64::new(oracle.chi(x, y), 0.0);
    let c = |l: LogComplex| l.to_complex_scaled(0.0);
    let (dz, dzb) = wirtinger_first(&f, 0.0, 0.0, FIRST_STEP * ell);
    let (dzz, dzzb, dzbzb) = wirtinger_second(&f, 0.0, 0.0, CHI_SECOND_STEP * ell);
    Ok(OracleErrors {
        value: max_error(&[(f(0.0, 0.0), Complex64::new(jet.value, 0.0))]),
        first: max_error(&[(dz, c(jet.d_z)), (dzb, c(jet.d_zbar))]),
        second: max_error(&[(dzz, c(jet.d_zz)), (dzzb, c(jet.d_zzbar)), (dzbzb, c(jet.d_zbarzbar))]),
    })
}

/// Relative error of the closed-form `d q_bb / dzbar` against a central
/// difference of `q_bb` assembled from jets at neighbouring points.
pub fn dq22_error(step: &SmoothStep, scheme: &Scheme, oracle: &RescaledMap) -> Result<f64> {
    let n = oracle.n;
    let base = u_jet_in(step, scheme, n, oracle.z0)?;
    let b = base.blend_index();
    let z0 = oracle.z0.to_complex_scaled(0.0);
    let q = |x: f64, y: f64| {
        let z = LogComplex::from_complex(z0 + Complex64::new(x, y));
        let jet = u_jet_in(step, scheme, n, z).expect("oracle stencil stays inside the annulus");
        q_matrix(&jet).q[b][b].to_complex_scaled(0.0)
    };
    let (_, fd) = wirtinger_first(&q, 0.0, 0.0, FIRST_STEP * oracle.length_scale());
    let exact = dq22_dzbar(&base).total.to_complex_scaled(0.0);
    Ok(rel_error(fd, exact, 0.0))
}

/// Combined errors over several base points.
pub fn merged<I: IntoIterator<Item = OracleErrors>>(errs: I) -> OracleErrors {
    errs.into_iter().fold(OracleErrors::default(), OracleErrors::merge)
}
