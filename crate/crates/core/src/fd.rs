//! Finite-difference Wirtinger derivatives of Cartesian functions.
//!
//! Every stencil is a central difference evaluated at `h` and `h/2` and
//! combined with one Richardson step.

use num_complex::Complex64;

#[inline]
fn richardson(coarse: Complex64, fine: Complex64) -> Complex64 {
    (fine * 4.0 - coarse) / 3.0
}

/// First Wirtinger derivatives `(f_z, f_zbar)` at `(x, y)`.
pub fn wirtinger_first<F>(f: &F, x: f64, y: f64, h: f64) -> (Complex64, Complex64)
where
    F: Fn(f64, f64) -> Complex64,
{
    let dx = |h: f64| (f(x + h, y) - f(x - h, y)) / (2.0 * h);
    let dy = |h: f64| (f(x, y + h) - f(x, y - h)) / (2.0 * h);
    let fx = richardson(dx(h), dx(0.5 * h));
    let fy = richardson(dy(h), dy(0.5 * h));
    let i = Complex64::i();
    ((fx - i * fy) * 0.5, (fx + i * fy) * 0.5)
}

/// Second Wirtinger derivatives `(f_zz, f_zzbar, f_zbarzbar)` at `(x, y)`.
pub fn wirtinger_second<F>(f: &F, x: f64, y: f64, h: f64) -> (Complex64, Complex64, Complex64)
where
    F: Fn(f64, f64) -> Complex64,
{
    let centre = f(x, y);
    let dxx = |h: f64| (f(x + h, y) - centre * 2.0 + f(x - h, y)) / (h * h);
    let dyy = |h: f64| (f(x, y + h) - centre * 2.0 + f(x, y - h)) / (h * h);
    let dxy = |h: f64| {
        (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h)
    };
    let fxx = richardson(dxx(h), dxx(0.5 * h));
    let fyy = richardson(dyy(h), dyy(0.5 * h));
    let fxy = richardson(dxy(h), dxy(0.5 * h));
    let i = Complex64::i();
    (
        (fxx - fyy - i * fxy * 2.0) * 0.25,
        (fxx + fyy) * 0.25,
        (fxx - fyy + i * fxy * 2.0) * 0.25,
    )
}

/// `|a - b| / max(|b|, floor)`.
#[inline]
pub fn rel_error(approx: Complex64, exact: Complex64, floor: f64) -> f64 {
    (approx - exact).norm() / exact.norm().max(floor)
}
