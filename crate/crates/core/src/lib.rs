//! Smooth maps `u: C -> C^2` with an isolated zero of infinite order at the
//! origin, built annulus by annulus from monomials glued with smooth radial
//! cutoffs, together with the Beltrami-type coefficient matrix
//! `Q = u_zbar conj(u_z)^T / |u_z|^2` and numerical verification suites for
//! the inequalities the construction satisfies.
//!
//! All magnitudes are carried as [`LogComplex`] values: the amplitudes grow
//! like `exp(n^2)` while the monomials shrink at a comparable rate, far
//! outside binary64 range.
//!
//! ```
//! use suc_core::{LogComplex, Scheme, SchemeKind, SmoothStep, map};
//!
//! let step = SmoothStep::build(1e-12).unwrap();
//! let scheme = Scheme::new(SchemeKind::Rosay);
//! let z = LogComplex::from_polar(0.4f64.ln(), 0.0);
//! let jet = map::u_jet(&step, &scheme, z).unwrap();
//! assert_eq!(jet.n, 2);
//! assert!((jet.components[0].value.log_mag() - 0.64f64.ln()).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is used deliberately so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beltrami;
pub mod cutoff;
pub mod error;
pub mod fd;
pub mod grid;
pub mod logscalar;
pub mod map;
pub mod oracle;
mod quadrature;
pub mod scheme;
pub mod step;
pub mod verify;

pub use beltrami::{dq22_dzbar, q_matrix, term_dominance, QMatrix, Q22Derivative, TermDominance};
pub use cutoff::{chi_jet, Annulus, ChiJet};
pub use error::{Error, Result};
pub use logscalar::{norm_sq_log, LogComplex};
pub use map::{u_jet, ComponentJet, Parity, UJet};
pub use scheme::{AnnulusIndex, Scheme, SchemeKind};
pub use step::SmoothStep;
pub use verify::{SuiteConfig, SuiteName, SuiteRecord, Tolerances, VerificationReport};
