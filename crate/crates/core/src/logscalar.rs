//! Extended-range complex arithmetic in log-polar form.
//!
//! A [`LogComplex`] stores `ln|w|` and `arg w`. Products, quotients, powers
//! and conjugates are exact in this representation; sums go through a
//! factored Cartesian accumulation, see [`LogComplex::sum`].
//!
//! Zero is encoded canonically as `log_mag = -inf, phase = 0`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Complex scalar `exp(log_mag) * exp(i * phase)`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    log_mag: f64,
    phase: f64,
}

/// Reduces an angle into `[-pi, pi)`.
#[inline]
pub fn wrap_phase(phase: f64) -> f64 {
    if (-PI..PI).contains(&phase) {
        return phase;
    }
    let r = (phase + PI).rem_euclid(TAU) - PI;
    if r >= PI {
        -PI
    } else {
        r
    }
}

/// `ln(e^a + e^b)` without overflow.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

impl LogComplex {
    pub const ZERO: Self = Self {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };
    pub const ONE: Self = Self {
        log_mag: 0.0,
        phase: 0.0,
    };

    /// Builds a value from its log-magnitude and phase; the phase is
    /// canonicalized. Panics on NaN or `+inf` log-magnitude.
    pub fn from_polar(log_mag: f64, phase: f64) -> Self {
        assert!(
            !log_mag.is_nan() && log_mag != f64::INFINITY,
            "invalid log-magnitude {log_mag}"
        );
        if log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        assert!(phase.is_finite(), "invalid phase {phase}");
        Self {
            log_mag,
            phase: wrap_phase(phase),
        }
    }

    pub fn from_real(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else if x > 0.0 {
            Self::from_polar(x.ln(), 0.0)
        } else {
            Self::from_polar((-x).ln(), -PI)
        }
    }

    pub fn from_cartesian(re: f64, im: f64) -> Self {
        if re == 0.0 && im == 0.0 {
            return Self::ZERO;
        }
        Self::from_polar(re.hypot(im).ln(), im.atan2(re))
    }

    #[inline]
    pub fn log_mag(self) -> f64 {
        self.log_mag
    }

    #[inline]
    pub fn phase(self) -> f64 {
        self.phase
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    /// Cartesian value; overflows to infinity or underflows to zero outside
    /// the binary64 range.
    pub fn to_cartesian(self) -> (f64, f64) {
        self.to_cartesian_scaled(0.0)
    }

    /// Cartesian value of `self * exp(-shift)`.
    pub fn to_cartesian_scaled(self, shift: f64) -> (f64, f64) {
        if self.is_zero() {
            return (0.0, 0.0);
        }
        let m = (self.log_mag - shift).exp();
        (m * self.phase.cos(), m * self.phase.sin())
    }

    /// `self * exp(-shift)` as a `Complex64`.
    pub fn to_complex_scaled(self, shift: f64) -> Complex64 {
        let (re, im) = self.to_cartesian_scaled(shift);
        Complex64::new(re, im)
    }

    pub fn from_complex(c: Complex64) -> Self {
        Self::from_cartesian(c.re, c.im)
    }

    #[inline]
    pub fn conj(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::from_polar(self.log_mag, -self.phase)
    }

    /// Multiplies by a real scalar.
    pub fn scale(self, x: f64) -> Self {
        self * Self::from_real(x)
    }

    /// Quotient `self / rhs`; division by zero is a domain error.
    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.is_zero() {
            return domain("division of a log-complex value by zero");
        }
        if self.is_zero() {
            return Ok(Self::ZERO);
        }
        Ok(Self::from_polar(
            self.log_mag - rhs.log_mag,
            self.phase - rhs.phase,
        ))
    }

    /// Integer power by de Moivre; `0^0 = 1`, negative powers of zero fail.
    pub fn pow_int(self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::ONE);
        }
        if self.is_zero() {
            if k < 0 {
                return domain("negative power of zero");
            }
            return Ok(Self::ZERO);
        }
        let kf = k as f64;
        Ok(Self::from_polar(kf * self.log_mag, kf * self.phase))
    }

    /// Sum of `terms`.
    ///
    /// The largest log-magnitude `M` is factored out and the rescaled terms
    /// are accumulated in Cartesian form in input order. An exactly
    /// cancelling sum returns [`LogComplex::ZERO`], as does an empty slice.
    pub fn sum(terms: &[Self]) -> Self {
        let mut max = f64::NEG_INFINITY;
        let mut live = 0usize;
        let mut last = Self::ZERO;
        for t in terms {
            if !t.is_zero() {
                live += 1;
                last = *t;
                max = max.max(t.log_mag);
            }
        }
        match live {
            0 => return Self::ZERO,
            1 => return last,
            _ => {}
        }
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for t in terms.iter().filter(|t| !t.is_zero()) {
            let w = (t.log_mag - max).exp();
            let (s, c) = unit(t.phase);
            re += w * c;
            im += w * s;
        }
        if re == 0.0 && im == 0.0 {
            return Self::ZERO;
        }
        Self::from_polar(max + re.hypot(im).ln(), im.atan2(re))
    }

    /// Relative distance `|a - b| / max(|a|, |b|)`; zero when both vanish.
    pub fn rel_diff(self, other: Self) -> f64 {
        let scale = self.log_mag.max(other.log_mag);
        if scale == f64::NEG_INFINITY {
            return 0.0;
        }
        ((self - other).log_mag - scale).exp()
    }
}

/// `(sin, cos)` with exact values on the axes, so that `1 + (-1)` cancels
/// to an exact zero.
fn unit(phase: f64) -> (f64, f64) {
    if phase == 0.0 {
        (0.0, 1.0)
    } else if phase == -PI {
        (0.0, -1.0)
    } else if phase == FRAC_PI_2 {
        (1.0, 0.0)
    } else if phase == -FRAC_PI_2 {
        (-1.0, 0.0)
    } else {
        phase.sin_cos()
    }
}

/// `ln(|a|^2 + |b|^2)`; `-inf` only when both vanish.
pub fn norm_sq_log(a: LogComplex, b: LogComplex) -> f64 {
    log_add_exp(2.0 * a.log_mag, 2.0 * b.log_mag)
}

impl Mul for LogComplex {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::from_polar(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

impl Add for LogComplex {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::sum(&[self, rhs])
    }
}

impl Sub for LogComplex {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::sum(&[self, -rhs])
    }
}

impl Neg for LogComplex {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::from_polar(self.log_mag, self.phase + PI)
    }
}

impl Default for LogComplex {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for LogComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogComplex({:e}, {})", self.log_mag, self.phase)
    }
}

impl fmt::Display for LogComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.log_mag, self.phase)
    }
}
