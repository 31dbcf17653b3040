//! The coefficient matrix `Q(z) = u_zbar conj(u_z)^T / |u_z|^2` of the
//! Beltrami-type system `u_zbar = Q u_z`, and the `zbar`-derivative of its
//! blend-diagonal entry.

use crate::error::{domain, Result};
use crate::logscalar::{log_add_exp, LogComplex};
use crate::map::{u_jet_in, UJet};
use crate::scheme::{Scheme, SchemeKind};
use crate::step::SmoothStep;

/// `Q(z)` in log-polar form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMatrix {
    /// `q[i][j] = u^i_zbar conj(u^j_z) / |u_z|^2`.
    pub q: [[LogComplex; 2]; 2],
    /// `ln sum |q_ij|^2`.
    pub log_frobenius_sq: f64,
}

impl QMatrix {
    /// `Q(0)`, the zero matrix.
    pub const ORIGIN: QMatrix = QMatrix {
        q: [[LogComplex::ZERO; 2]; 2],
        log_frobenius_sq: f64::NEG_INFINITY,
    };

    pub fn q11(&self) -> LogComplex {
        self.q[0][0]
    }
    pub fn q12(&self) -> LogComplex {
        self.q[0][1]
    }
    pub fn q21(&self) -> LogComplex {
        self.q[1][0]
    }
    pub fn q22(&self) -> LogComplex {
        self.q[1][1]
    }

    /// Largest `ln |q_ij|`.
    pub fn log_max_entry(&self) -> f64 {
        self.q
            .iter()
            .flatten()
            .map(|q| q.log_mag())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `Q u_z`.
    pub fn apply(&self, u_z: [LogComplex; 2]) -> [LogComplex; 2] {
        [0, 1].map(|i| LogComplex::sum(&[self.q[i][0] * u_z[0], self.q[i][1] * u_z[1]]))
    }
}

/// Builds `Q` from a jet at `z != 0`.
pub fn q_matrix(jet: &UJet) -> QMatrix {
    let denom = LogComplex::from_polar(jet.log_norm_sq_z(), 0.0);
    let u_z = jet.u_z();
    let u_zbar = jet.u_zbar();
    let mut q = [[LogComplex::ZERO; 2]; 2];
    let mut log_frob = f64::NEG_INFINITY;
    for i in 0..2 {
        for j in 0..2 {
            q[i][j] = (u_zbar[i] * u_z[j].conj())
                .checked_div(denom)
                .expect("|u_z| > 0 away from the origin");
            log_frob = log_add_exp(log_frob, 2.0 * q[i][j].log_mag());
        }
    }
    QMatrix {
        q,
        log_frobenius_sq: log_frob,
    }
}

/// Entrywise `|u_zbar - Q u_z| / |u_zbar|`; zero where `u_zbar` vanishes
/// and the residual is exactly zero.
pub fn residual(jet: &UJet, q: &QMatrix) -> [f64; 2] {
    let u_zbar = jet.u_zbar();
    let applied = q.apply(jet.u_z());
    let scale = 0.5 * jet.log_norm_sq_zbar();
    [0, 1].map(|i| {
        let r = u_zbar[i] - applied[i];
        if r.is_zero() {
            0.0
        } else {
            (r.log_mag() - scale).exp()
        }
    })
}

/// `d/dzbar` of the blend-diagonal entry of `Q` (`q22` for even annuli,
/// `q11` for odd ones) split into its three terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Q22Derivative {
    /// Component index of the blend (1 for even annuli).
    pub index: usize,
    pub total: LogComplex,
    /// `u_zbarzbar conj(u_z) / N`
    pub term1: LogComplex,
    /// `u_zbar um_z conj(um_z) conj(u_zz - (p-1) u_z / z) / N^2`
    pub term2: LogComplex,
    /// `u_zbar conj(u_z) u_zzbar conj(u_z) / N^2`
    pub term3: LogComplex,
}

/// `total = term1 + term2 - term3`, where `u` is the blend component, `um`
/// the monomial one, `p` the monomial degree and `N = |u_z|^2`.
pub fn dq22_dzbar(jet: &UJet) -> Q22Derivative {
    let b = jet.blend();
    let m = jet.monomial();
    let n_log = jet.log_norm_sq_z();
    let inv_n = LogComplex::from_polar(-n_log, 0.0);
    let inv_n2 = LogComplex::from_polar(-2.0 * n_log, 0.0);
    let p = jet.monomial_degree as f64;
    let z_inv = LogComplex::ONE
        .checked_div(jet.z)
        .expect("jets are evaluated away from the origin");
    // u_zz - (p-1) u_z / z as one sum, which keeps its cancellation exact
    // up to a single rounding.
    let reduced = b.d_zz - LogComplex::from_real(p - 1.0) * b.d_z * z_inv;

    let term1 = b.d_zbarzbar * b.d_z.conj() * inv_n;
    let term2 = b.d_zbar * m.d_z * m.d_z.conj() * reduced.conj() * inv_n2;
    let term3 = b.d_zbar * b.d_z.conj() * b.d_zzbar * b.d_z.conj() * inv_n2;
    Q22Derivative {
        index: jet.blend_index(),
        total: LogComplex::sum(&[term1, term2, -term3]),
        term1,
        term2,
        term3,
    }
}

/// Log-magnitudes of the three terms of `d q22 / dzbar` at `x_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermDominance {
    pub n: u64,
    pub x_n: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub log_total: f64,
}

/// `x_n = r_{n+1} + dr_n / 2` on the positive real axis.
pub fn midpoint(scheme: &Scheme, n: u64) -> Result<f64> {
    Ok(scheme.annulus(n)?.radius_at(0.5))
}

/// Evaluates the three terms at `x_n` for even `n` of the loglog scheme.
pub fn term_dominance(step: &SmoothStep, scheme: &Scheme, n: u64) -> Result<TermDominance> {
    if scheme.kind() != SchemeKind::Loglog {
        return domain("term dominance is defined for the loglog scheme");
    }
    if n % 2 != 0 {
        return domain(format!("term dominance needs an even annulus index, got {n}"));
    }
    let x_n = midpoint(scheme, n)?;
    let jet = u_jet_in(step, scheme, n, LogComplex::from_polar(x_n.ln(), 0.0))?;
    let d = dq22_dzbar(&jet);
    Ok(TermDominance {
        n,
        x_n,
        t1: d.term1.log_mag(),
        t2: d.term2.log_mag(),
        t3: d.term3.log_mag(),
        log_total: d.total.log_mag(),
    })
}
