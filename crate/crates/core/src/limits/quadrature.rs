//! Adaptive Simpson quadrature and the integral constants built on it.

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson rule on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut ok = true;
    let v = simpson_step(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH, &mut ok);
    if !ok || !v.is_finite() {
        return Err(Error::NoConvergence(format!(
            "adaptive Simpson on [{a}, {b}] at tol {tol:e}"
        )));
    }
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    ok: &mut bool,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    if depth == 0 {
        *ok = false;
        return left + right;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, ok)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, ok)
}

/// Sine integral `Si(x) = int_0^x sin(t)/t dt`.
pub fn sine_integral(x: f64) -> Result<f64> {
    adaptive_simpson(|t| if t == 0.0 { 1.0 } else { t.sin() / t }, 0.0, x, 1e-12)
}

/// Variance of the perimeter of the planar Brownian bridge hull,
/// `(pi^2/6)(2 pi Si(pi) - 2 - 3 pi)`.
pub fn goldman_bridge_variance() -> f64 {
    let si = sine_integral(PI).expect("smooth integrand");
    PI * PI / 6.0 * (2.0 * PI * si - 2.0 - 3.0 * PI)
}

/// Inner kernel `c(sin theta)`:
/// `cos theta * int_0^inf cosh(u theta)/sinh(u pi/2) * tanh((2 theta + pi) u / 4) du`.
///
/// With `delta = pi/2 - |theta|` the integrand decays like `exp(-u delta)`, so
/// the integral is taken in `t = u delta` and truncated where `exp(-t) < tol`.
pub fn rogers_shepp_kernel(theta: f64, tol: f64) -> Result<f64> {
    let delta = FRAC_PI_2 - theta.abs();
    if delta <= 0.0 {
        return Ok(if theta > 0.0 { 1.0 } else { 2.0 * LN_2 - 1.0 });
    }
    let abs = theta.abs();
    let scale = theta.cos() / delta;
    let g = |t: f64| {
        if t == 0.0 {
            return scale * (2.0 * theta + PI) / (2.0 * PI);
        }
        let u = t / delta;
        let ratio =
            ((u * (abs - FRAC_PI_2)).exp() + (-u * (abs + FRAC_PI_2)).exp()) / -(-u * PI).exp_m1();
        scale * ratio * ((2.0 * theta + PI) * u / 4.0).tanh()
    };
    let t_max = (1.0 / tol).ln() + 5.0;
    adaptive_simpson(g, 0.0, t_max, tol)
}

/// Second moment of the perimeter of the planar Brownian hull at time 1,
/// `4 pi int_{-pi/2}^{pi/2} c(sin theta) d theta`.
pub fn rogers_shepp_second_moment(tol: f64) -> Result<f64> {
    if !(tol >= 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol:e} below 1e-12"
        )));
    }
    let inner_tol = tol * 1e-2;
    let failure = RefCell::new(None);
    let outer = adaptive_simpson(
        |theta| match rogers_shepp_kernel(theta, inner_tol) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        -FRAC_PI_2,
        FRAC_PI_2,
        tol / (4.0 * PI),
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(4.0 * PI * outer?)
}
