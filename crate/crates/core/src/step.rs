//! The smooth step `s` behind every annular cutoff.
//!
//! `s` is the primitive of a density `g` built from three copies of the
//! bump `psi(u) = exp(1 - 1/(1 - u^2))` (`|u| < 1`, zero elsewhere): a core
//! bump of height `core_coeff` centred at 1/2 and two side bumps placed
//! symmetrically so that they vanish on a neighbourhood of 1/2. The side
//! coefficient is solved from `int g = 1`, which gives
//!
//! * `s = 0` on `(-inf, 1/4]`, `s = 1` on `[3/4, inf)`;
//! * `s(1/2) = 1/2`, `s'(1/2) = core_coeff = 2`, `s''(1/2) = 0`;
//! * `s` strictly increasing on `(1/4, 3/4)`.
//!
//! `s` itself is tabulated once on a uniform grid over `[1/4, 3/4]`;
//! queries between nodes integrate the remaining piece adaptively.

use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;

/// Number of grid cells used for the tabulated primitive.
pub const GRID_CELLS: usize = 4096;
/// Default absolute quadrature tolerance.
pub const DEFAULT_QUADRATURE_TOL: f64 = 1e-12;

const LOWER: f64 = 0.25;
const UPPER: f64 = 0.75;
const CENTER: f64 = 0.5;

/// The base bump `psi(u) = exp(1 - 1/(1 - u^2))` on `|u| < 1`.
#[inline]
pub fn bump(u: f64) -> f64 {
    let d = 1.0 - u * u;
    if d <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / d).exp()
    }
}

/// `psi'(u) = -2u / (1 - u^2)^2 * psi(u)`.
#[inline]
pub fn bump_derivative(u: f64) -> f64 {
    let d = 1.0 - u * u;
    if d <= 0.0 {
        return 0.0;
    }
    let p = (1.0 - 1.0 / d).exp();
    if p == 0.0 {
        return 0.0;
    }
    -2.0 * u / (d * d) * p
}

/// Placement of the three bumps making up `s'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepGeometry {
    pub core_halfwidth: f64,
    pub side_centers: (f64, f64),
    pub side_halfwidth: f64,
    pub core_coeff: f64,
}

impl Default for StepGeometry {
    fn default() -> Self {
        Self {
            core_halfwidth: 0.06,
            side_centers: (0.36, 0.64),
            side_halfwidth: 0.11,
            core_coeff: 2.0,
        }
    }
}

impl StepGeometry {
    fn validate(&self) -> Result<()> {
        let cfg = |m: &str| Err(Error::Config(m.to_string()));
        let (c1, c2) = self.side_centers;
        if !(self.core_halfwidth > 0.0 && self.side_halfwidth > 0.0) {
            return cfg("bump half-widths must be positive");
        }
        if !(self.core_coeff > 0.0) {
            return cfg("core coefficient must be positive");
        }
        if (c1 + c2 - 1.0).abs() > 1e-14 {
            return cfg("side centres must be symmetric about 1/2");
        }
        if c1 - self.side_halfwidth < LOWER - 1e-15 || CENTER - self.core_halfwidth < LOWER {
            return cfg("bump supports must lie inside [1/4, 3/4]");
        }
        if c1 + self.side_halfwidth >= CENTER {
            return cfg("side bumps must vanish on a neighbourhood of 1/2");
        }
        if c1 + self.side_halfwidth <= CENTER - self.core_halfwidth {
            return cfg("bump supports must overlap so that s is strictly increasing");
        }
        Ok(())
    }
}

/// Concrete smooth step with cached primitive.
#[derive(Debug, Clone)]
pub struct SmoothStep {
    geometry: StepGeometry,
    side_coeff: f64,
    bump_mass: f64,
    quadrature_tol: f64,
    grid: Vec<f64>,
}

fn check_tol(quadrature_tol: f64) -> Result<()> {
    if !(quadrature_tol > 0.0 && quadrature_tol <= 1e-6) {
        return Err(Error::Config(format!(
            "quadrature tolerance {quadrature_tol} outside (0, 1e-6]"
        )));
    }
    Ok(())
}

impl SmoothStep {
    /// Builds the step with the default geometry.
    pub fn build(quadrature_tol: f64) -> Result<Self> {
        Self::with_geometry(StepGeometry::default(), quadrature_tol)
    }

    pub fn with_geometry(geometry: StepGeometry, quadrature_tol: f64) -> Result<Self> {
        check_tol(quadrature_tol)?;
        geometry.validate()?;
        let bump_mass = adaptive_simpson(&bump, -1.0, 1.0, 1e-3 * quadrature_tol);
        let core_mass = geometry.core_coeff * geometry.core_halfwidth * bump_mass;
        let side_coeff = (1.0 - core_mass) / (2.0 * geometry.side_halfwidth * bump_mass);
        if side_coeff < 0.0 {
            return Err(Error::Config(format!(
                "core mass {core_mass} exceeds 1; side coefficient would be {side_coeff}"
            )));
        }
        let mut step = Self {
            geometry,
            side_coeff,
            bump_mass,
            quadrature_tol,
            grid: Vec::new(),
        };
        step.grid = step.tabulate();
        Ok(step)
    }

    fn cell_width() -> f64 {
        (UPPER - LOWER) / GRID_CELLS as f64
    }

    fn cell_tol(&self) -> f64 {
        self.quadrature_tol / GRID_CELLS as f64
    }

    fn tabulate(&self) -> Vec<f64> {
        let h = Self::cell_width();
        let g = |t: f64| self.density(t);
        let mut grid = Vec::with_capacity(GRID_CELLS + 1);
        let mut acc = 0.0;
        grid.push(acc);
        for i in 0..GRID_CELLS {
            let a = LOWER + i as f64 * h;
            acc += adaptive_simpson(&g, a, a + h, self.cell_tol());
            grid.push(acc);
        }
        grid
    }

    pub fn geometry(&self) -> &StepGeometry {
        &self.geometry
    }

    pub fn core_center(&self) -> f64 {
        CENTER
    }

    /// The solved side-bump coefficient `lambda`.
    pub fn side_coeff(&self) -> f64 {
        self.side_coeff
    }

    pub fn quadrature_tol(&self) -> f64 {
        self.quadrature_tol
    }

    /// `int_{-1}^{1} psi`.
    pub fn bump_mass(&self) -> f64 {
        self.bump_mass
    }

    /// `int_0^1 g` as accumulated by the tabulation.
    pub fn total_mass(&self) -> f64 {
        self.grid[GRID_CELLS]
    }

    /// `s'(t) = g(t)` in closed form.
    pub fn density(&self, t: f64) -> f64 {
        let geo = &self.geometry;
        let (c1, c2) = geo.side_centers;
        let ws = geo.side_halfwidth;
        geo.core_coeff * bump((t - CENTER) / geo.core_halfwidth)
            + self.side_coeff * (bump((t - c1) / ws) + bump((t - c2) / ws))
    }

    /// `s''(t) = g'(t)` in closed form.
    pub fn density_derivative(&self, t: f64) -> f64 {
        let geo = &self.geometry;
        let (c1, c2) = geo.side_centers;
        let ws = geo.side_halfwidth;
        let wc = geo.core_halfwidth;
        geo.core_coeff / wc * bump_derivative((t - CENTER) / wc)
            + self.side_coeff / ws * (bump_derivative((t - c1) / ws) + bump_derivative((t - c2) / ws))
    }

    /// `s(x)`.
    pub fn value(&self, x: f64) -> f64 {
        if x <= LOWER {
            return 0.0;
        }
        if x >= UPPER {
            return 1.0;
        }
        let h = Self::cell_width();
        let i = (((x - LOWER) / h) as usize).min(GRID_CELLS - 1);
        let node = LOWER + i as f64 * h;
        if x == node {
            return self.grid[i];
        }
        let g = |t: f64| self.density(t);
        (self.grid[i] + adaptive_simpson(&g, node, x, self.cell_tol())).min(1.0)
    }

    /// `s^(order)(x)` for `order` in `{0, 1, 2}`.
    pub fn eval(&self, x: f64, order: u32) -> Result<f64> {
        match order {
            0 => Ok(self.value(x)),
            1 => Ok(self.density(x)),
            2 => Ok(self.density_derivative(x)),
            _ => Err(Error::Domain(format!(
                "analytic step derivatives stop at order 2, got {order}"
            ))),
        }
    }

    /// `s^(order)(x)` for `order` in `{3, 4}` by central differences of `s''`
    /// with one Richardson level; the error after extrapolation is `O(h^4)`.
    pub fn eval_fd(&self, x: f64, order: u32, h: f64) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::Domain(format!("finite-difference step must be positive, got {h}")));
        }
        let d2 = |t: f64| self.density_derivative(t);
        let stencil = |h: f64| match order {
            3 => (d2(x + h) - d2(x - h)) / (2.0 * h),
            _ => (d2(x + h) - 2.0 * d2(x) + d2(x - h)) / (h * h),
        };
        match order {
            3 | 4 => Ok((4.0 * stencil(0.5 * h) - stencil(h)) / 3.0),
            _ => Err(Error::Domain(format!(
                "finite-difference step derivatives cover orders 3 and 4, got {order}"
            ))),
        }
    }
}
