//! The map `u = (u1, u2)` and its order-2 Wirtinger jet.
//!
//! On `A_n` with `n` even, `u1 = F(n) z^p(n)` and
//! `u2 = chi_n F(n-1) z^p(n-1) + (1 - chi_n) F(n+1) z^p(n+1)`; for odd `n`
//! the two formulas trade places.

use std::f64::consts::TAU;

use crate::cutoff::{chi_jet, ChiJet};
use crate::error::{domain, Error, Result};
use crate::logscalar::{norm_sq_log, LogComplex};
use crate::scheme::{AnnulusIndex, Scheme};
use crate::step::SmoothStep;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Value and Wirtinger derivatives through order 2 of one component.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComponentJet {
    pub value: LogComplex,
    pub d_z: LogComplex,
    pub d_zbar: LogComplex,
    pub d_zz: LogComplex,
    pub d_zzbar: LogComplex,
    pub d_zbarzbar: LogComplex,
}

impl ComponentJet {
    pub const ENTRY_NAMES: [&'static str; 6] =
        ["value", "d_z", "d_zbar", "d_zz", "d_zzbar", "d_zbarzbar"];

    pub fn entries(&self) -> [LogComplex; 6] {
        [
            self.value,
            self.d_z,
            self.d_zbar,
            self.d_zz,
            self.d_zzbar,
            self.d_zbarzbar,
        ]
    }
}

/// The jet of `u` at one point of annulus `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UJet {
    pub n: u64,
    pub parity: Parity,
    pub z: LogComplex,
    /// `p(n)`, the degree of the monomial component.
    pub monomial_degree: u64,
    pub chi: ChiJet,
    /// `[u1, u2]`.
    pub components: [ComponentJet; 2],
}

impl UJet {
    /// Index of the pure monomial component (0 for even `n`).
    pub fn monomial_index(&self) -> usize {
        match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Index of the cutoff-blended component.
    pub fn blend_index(&self) -> usize {
        1 - self.monomial_index()
    }

    pub fn monomial(&self) -> &ComponentJet {
        &self.components[self.monomial_index()]
    }

    pub fn blend(&self) -> &ComponentJet {
        &self.components[self.blend_index()]
    }

    pub fn u_z(&self) -> [LogComplex; 2] {
        [self.components[0].d_z, self.components[1].d_z]
    }

    pub fn u_zbar(&self) -> [LogComplex; 2] {
        [self.components[0].d_zbar, self.components[1].d_zbar]
    }

    /// `ln |u|`.
    pub fn log_norm(&self) -> f64 {
        0.5 * norm_sq_log(self.components[0].value, self.components[1].value)
    }

    /// `ln |u_z|^2`.
    pub fn log_norm_sq_z(&self) -> f64 {
        norm_sq_log(self.components[0].d_z, self.components[1].d_z)
    }

    /// `ln |u_zbar|^2`.
    pub fn log_norm_sq_zbar(&self) -> f64 {
        norm_sq_log(self.components[0].d_zbar, self.components[1].d_zbar)
    }

    /// `ln(|u_zbar| / |u_z|)`; `-inf` where `u` is locally holomorphic.
    pub fn log_ratio(&self) -> f64 {
        0.5 * (self.log_norm_sq_zbar() - self.log_norm_sq_z())
    }
}

/// `F z^p` with its first two `z`-derivatives.
fn monomial(log_f: f64, p: u64, z: LogComplex) -> Result<[LogComplex; 3]> {
    let pf = p as f64;
    let p = p as i64;
    let value = LogComplex::from_polar(log_f, 0.0) * z.pow_int(p)?;
    let d1 = if p >= 1 {
        LogComplex::from_polar(log_f + pf.ln(), 0.0) * z.pow_int(p - 1)?
    } else {
        LogComplex::ZERO
    };
    let d2 = if p >= 2 {
        LogComplex::from_polar(log_f + (pf * (pf - 1.0)).ln(), 0.0) * z.pow_int(p - 2)?
    } else {
        LogComplex::ZERO
    };
    Ok([value, d1, d2])
}

fn monomial_jet(m: [LogComplex; 3]) -> ComponentJet {
    ComponentJet {
        value: m[0],
        d_z: m[1],
        d_zz: m[2],
        ..ComponentJet::default()
    }
}

/// Product-rule jet of `chi A + (1 - chi) B`.
fn blend_jet(chi: &ChiJet, a: [LogComplex; 3], b: [LogComplex; 3]) -> ComponentJet {
    let c = LogComplex::from_real(chi.value);
    let cc = LogComplex::from_real(1.0 - chi.value);
    let two = LogComplex::from_real(2.0);
    let diff0 = a[0] - b[0];
    let diff1 = a[1] - b[1];
    ComponentJet {
        value: LogComplex::sum(&[c * a[0], cc * b[0]]),
        d_z: LogComplex::sum(&[chi.d_z * diff0, c * a[1], cc * b[1]]),
        d_zbar: chi.d_zbar * diff0,
        d_zz: LogComplex::sum(&[chi.d_zz * diff0, two * chi.d_z * diff1, c * a[2], cc * b[2]]),
        d_zzbar: LogComplex::sum(&[chi.d_zzbar * diff0, chi.d_zbar * diff1]),
        d_zbarzbar: chi.d_zbarzbar * diff0,
    }
}

/// Jet of `u` at `z`, using the formulas of annulus `n`. `|z|` must lie in
/// `A_n` (edges included).
pub fn u_jet_in(step: &SmoothStep, scheme: &Scheme, n: u64, z: LogComplex) -> Result<UJet> {
    if z.is_zero() {
        return Err(Error::Origin);
    }
    let annulus = scheme.annulus(n)?;
    let chi = chi_jet(step, &annulus, z)?;
    let mono = monomial(scheme.log_amplitude_ext(n), scheme.degree_ext(n), z)?;
    let a = monomial(scheme.log_amplitude_ext(n - 1), scheme.degree_ext(n - 1), z)?;
    let b = monomial(scheme.log_amplitude_ext(n + 1), scheme.degree_ext(n + 1), z)?;
    let mono = monomial_jet(mono);
    let blend = blend_jet(&chi, a, b);
    let parity = Parity::of(n);
    let components = match parity {
        Parity::Even => [mono, blend],
        Parity::Odd => [blend, mono],
    };
    Ok(UJet {
        n,
        parity,
        z,
        monomial_degree: scheme.degree_ext(n),
        chi,
        components,
    })
}

/// Jet of `u` at `z != 0`, `|z| <= r_1`.
pub fn u_jet(step: &SmoothStep, scheme: &Scheme, z: LogComplex) -> Result<UJet> {
    match scheme.annulus_of(z.log_mag())? {
        AnnulusIndex::Origin => Err(Error::Origin),
        AnnulusIndex::Annulus(n) => u_jet_in(step, scheme, n, z),
    }
}

/// `ln(|u_zbar(z)| / |u_z(z)|)`.
pub fn ratio_first_derivatives(step: &SmoothStep, scheme: &Scheme, z: LogComplex) -> Result<f64> {
    Ok(u_jet(step, scheme, z)?.log_ratio())
}

/// Largest relative discrepancy between the jets computed from `A_n` and
/// from `A_{n-1}` on their shared circle `|z| = r_n`, over `angles`
/// equally spaced angles, both components and every jet entry.
pub fn boundary_consistency(
    step: &SmoothStep,
    scheme: &Scheme,
    n: u64,
    angles: usize,
) -> Result<f64> {
    if n < 2 {
        return domain(format!("boundary consistency needs n >= 2, got {n}"));
    }
    if angles == 0 {
        return domain("need at least one angle");
    }
    let log_r = scheme.log_radius(n)?;
    let mut worst = 0.0f64;
    for j in 0..angles {
        let z = LogComplex::from_polar(log_r, TAU * j as f64 / angles as f64);
        let inner = u_jet_in(step, scheme, n, z)?;
        let outer = u_jet_in(step, scheme, n - 1, z)?;
        for (ci, co) in inner.components.iter().zip(&outer.components) {
            for (a, b) in ci.entries().iter().zip(co.entries()) {
                worst = worst.max(a.rel_diff(b));
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::SchemeKind;
    use crate::step::DEFAULT_QUADRATURE_TOL;
    use crate::logscalar::wrap_phase;

    fn step() -> SmoothStep {
        SmoothStep::build(DEFAULT_QUADRATURE_TOL).unwrap()
    }

    fn polar(r: f64, theta: f64) -> LogComplex {
        LogComplex::from_polar(r.ln(), theta)
    }

    #[test]
    fn rosay_point_value() {
        let s = step();
        let sch = Scheme::new(SchemeKind::Rosay);
        let jet = u_jet(&s, &sch, polar(0.4, 0.0)).unwrap();
        assert_eq!(jet.n, 2);
        assert_eq!(jet.parity, Parity::Even);
        // u1 = F(2) z^2 = 4 * 0.16
        let u1 = jet.components[0].value;
        assert!((u1.log_mag() - 0.64f64.ln()).abs() < 1e-14);
        assert_eq!(u1.phase(), 0.0);
        assert!(jet.log_ratio().is_finite());
    }

    #[test]
    fn monomial_component_is_holomorphic() {
        let s = step();
        for kind in [SchemeKind::Rosay, SchemeKind::Loglog] {
            let sch = Scheme::new(kind);
            for n in 1..30 {
                let a = sch.annulus(n).unwrap();
                for f in [0.0, 0.3, 0.5, 0.9, 1.0] {
                    let z = polar(a.radius_at(f), 0.3 * n as f64);
                    let jet = u_jet_in(&s, &sch, n, z).unwrap();
                    let m = jet.monomial();
                    assert!(m.d_zbar.is_zero() && m.d_zzbar.is_zero() && m.d_zbarzbar.is_zero());
                    // |u_z| >= F(n) p(n) |z|^(p(n)-1)
                    let p = sch.degree(n).unwrap() as f64;
                    let lower = sch.log_amplitude(n).unwrap() + p.ln() + (p - 1.0) * z.log_mag();
                    assert!(0.5 * jet.log_norm_sq_z() >= lower - 1e-12);
                }
            }
        }
    }

    #[test]
    fn flat_collars() {
        let s = step();
        let sch = Scheme::new(SchemeKind::Loglog);
        let n = 7;
        let a = sch.annulus(n).unwrap();
        // Inner edge: chi = 0, the blend is F(n+1) z^p(n+1).
        let z = polar(a.r_inner(), 0.4);
        let jet = u_jet_in(&s, &sch, n, z).unwrap();
        let b = monomial(
            sch.log_amplitude(n + 1).unwrap(),
            sch.degree(n + 1).unwrap(),
            z,
        )
        .unwrap();
        assert!(jet.blend().value.rel_diff(b[0]) < 1e-15);
        assert!(jet.blend().d_zbar.is_zero());
        assert_eq!(jet.log_ratio(), f64::NEG_INFINITY);
        // Quarter radius: still inside the collar where s is flat.
        let z = polar(a.radius_at(0.2), 1.0);
        assert_eq!(u_jet_in(&s, &sch, n, z).unwrap().log_ratio(), f64::NEG_INFINITY);
    }

    #[test]
    fn shared_circles_agree() {
        let s = step();
        let rosay = Scheme::new(SchemeKind::Rosay);
        assert!(boundary_consistency(&s, &rosay, 3, 16).unwrap() <= 1e-10);
        let loglog = Scheme::new(SchemeKind::Loglog);
        assert!(boundary_consistency(&s, &loglog, 10, 16).unwrap() <= 1e-10);
        assert!(boundary_consistency(&s, &loglog, 1, 16).is_err());
        // The located jet at a shared circle is the outer annulus' one, and it
        // matches the inner annulus' formulas.
        let z = LogComplex::from_polar(loglog.log_radius(10).unwrap(), 0.2);
        let located = u_jet(&s, &loglog, z).unwrap();
        assert_eq!(located.n, 9);
        let other = u_jet_in(&s, &loglog, 10, z).unwrap();
        for (a, b) in located.components.iter().zip(&other.components) {
            for (x, y) in a.entries().iter().zip(b.entries()) {
                assert!(x.rel_diff(y) <= 1e-10);
            }
        }
    }

    #[test]
    fn origin_and_outside_are_errors() {
        let s = step();
        let sch = Scheme::new(SchemeKind::Rosay);
        assert_eq!(u_jet(&s, &sch, LogComplex::ZERO), Err(Error::Origin));
        assert!(u_jet(&s, &sch, polar(10.0, 0.0)).is_err());
        assert!(u_jet_in(&s, &sch, 3, polar(0.4, 0.0)).is_err());
    }

    #[test]
    fn rotation_covariance() {
        // d_z^a d_zbar^b of c z^q (chi radial) picks up exp(i (q - a + b) phi).
        let s = step();
        for kind in [SchemeKind::Rosay, SchemeKind::Loglog] {
            let sch = Scheme::new(kind);
            let n = 6;
            let a = sch.annulus(n).unwrap();
            let z = polar(a.radius_at(0.45), 0.2);
            let base = u_jet_in(&s, &sch, n, z).unwrap();
            let shifts = [0i64, -1, 1, -2, 0, 2];
            let check = |jet: &UJet, comp: usize, q: i64, phi: f64| {
                for (k, (x, y)) in jet.components[comp]
                    .entries()
                    .iter()
                    .zip(base.components[comp].entries())
                    .enumerate()
                {
                    if y.is_zero() {
                        assert!(x.is_zero());
                        continue;
                    }
                    assert!((x.log_mag() - y.log_mag()).abs() < 1e-12 * y.log_mag().abs().max(1.0));
                    let expect = wrap_phase(y.phase() + (q + shifts[k]) as f64 * phi);
                    assert!(wrap_phase(x.phase() - expect).abs() < 1e-12, "{kind} entry {k}");
                }
            };
            let p = sch.degree(n).unwrap() as i64;
            for j in 1..=8 {
                let phi = 0.37 * j as f64;
                let rot = u_jet_in(&s, &sch, n, LogComplex::from_polar(z.log_mag(), z.phase() + phi)).unwrap();
                check(&rot, base.monomial_index(), p, phi);
            }
            // The blend rotates coherently when both degrees see the same phase.
            let lo = sch.degree(n - 1).unwrap() as i64;
            let span = sch.degree(n + 1).unwrap() as i64 - lo;
            for j in 1..=8 {
                let phi = TAU * j as f64 / span as f64;
                let rot = u_jet_in(&s, &sch, n, LogComplex::from_polar(z.log_mag(), z.phase() + phi)).unwrap();
                check(&rot, base.blend_index(), lo, phi);
            }
        }
    }
}
