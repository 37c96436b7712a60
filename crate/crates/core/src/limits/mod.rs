//! Exact expectation formulas, limit constants, variance bounds and the
//! verdict tables comparing them with simulation.

pub mod brownian;
pub mod quadrature;
pub mod report;

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use serde::{Deserialize, Serialize};

pub use brownian::{
    brownian_constant_estimates, degenerate_experiment, BrownianConstants, BrownianEstimates,
    DegenerateFit, DEGENERATE_REFERENCE_SLOPE,
};
pub use quadrature::{
    adaptive_simpson, goldman_bridge_variance, rogers_shepp_kernel, rogers_shepp_second_moment,
    sine_integral,
};
pub use report::{
    assemble_report, report_for_row, report_targets, scaled_estimates, CheckpointRow, LimitReport,
    NamedEstimate, ReportTarget, Verdict, Q_U0, Q_V0, Q_VPLUS,
};

use crate::error::{Error, Result};
use crate::geom2d::Vec2;
use crate::walkgen::{MomentSummary, SymMat2};

/// `2 sum_{k=1}^n E||S_k|| / k`.
pub fn sw_expected_perimeter(norm_means: &[f64]) -> Result<f64> {
    if norm_means.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(2.0
        * norm_means
            .iter()
            .enumerate()
            .map(|(i, m)| m / (i + 1) as f64)
            .sum::<f64>())
}

/// `sum_{k=1}^n E T_k^+ / k`: the expected maximum of a one-dimensional walk.
pub fn kac_expected_max(plus_part_means: &[f64]) -> Result<f64> {
    if plus_part_means.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(plus_part_means
        .iter()
        .enumerate()
        .map(|(i, m)| m / (i + 1) as f64)
        .sum())
}

/// `sum_{k=2}^n sum_{m=1}^{k-1} E T(S_m, S_k - S_m) / (m (k - m))`.
pub fn bnb_expected_area(triangle_means: impl Fn(usize, usize) -> f64, n: usize) -> f64 {
    let mut total = 0.0;
    for k in 2..=n {
        for m in 1..k {
            total += triangle_means(m, k) / (m * (k - m)) as f64;
        }
    }
    total
}

/// `sum_{m=1}^{k-1} 1 / sqrt(m (k - m))`, which tends to `pi`.
pub fn partial_sum_pi(k: usize) -> f64 {
    (1..k)
        .map(|m| 1.0 / ((m as f64) * ((k - m) as f64)).sqrt())
        .sum()
}

/// Exact `E A_n` for the walk with increments `(1, N(0,1))`.
pub fn gaussian_spacetime_area_exact(n: usize) -> f64 {
    (2..=n)
        .map(|k| (k as f64).sqrt() * partial_sum_pi(k))
        .sum::<f64>()
        / (2.0 * PI).sqrt()
}

/// `E||Y||` for `Y ~ N(0, Sigma)` with the elementary bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormMean {
    pub value: f64,
    /// `sqrt(tr Sigma / pi)`.
    pub lower: f64,
    /// `sqrt(tr Sigma)`.
    pub upper: f64,
}

/// `E||Y|| = (8 pi)^{-1/2} int_0^{2 pi} sqrt(e^T Sigma e) d theta`, to absolute
/// tolerance 1e-8.
pub fn expected_norm_gaussian(sigma: SymMat2) -> Result<NormMean> {
    if !sigma.is_psd() {
        return Err(Error::NotPsd);
    }
    // the integrand is smooth between consecutive eigen-directions
    let phi = sigma.principal_angle();
    let norm = (8.0 * PI).sqrt();
    let mut value = 0.0;
    for k in 0..4 {
        let a = phi + k as f64 * FRAC_PI_2;
        value += adaptive_simpson(
            |t| sigma.quad_form(Vec2::from_angle(t)).max(0.0).sqrt(),
            a,
            a + FRAC_PI_2,
            1e-9 * norm / 4.0,
        )?;
    }
    let tr = sigma.trace().max(0.0);
    Ok(NormMean {
        value: value / norm,
        lower: (tr / PI).sqrt(),
        upper: tr.sqrt(),
    })
}

pub const C_TWO_NORM_MU: &str = "2norm_mu";
pub const C_FOUR_NORM_Y: &str = "4E_norm_Y";
pub const C_FOUR_SIGMA2_MU: &str = "4sigma2_mu";
pub const C_AREA_ZERO: &str = "pi_over_2_sqrt_det";
pub const C_AREA_DRIFT: &str = "norm_mu_sqrt_2pi_sigma2_perp_over_3";
pub const C_SNYDER_STEELE: &str = "snyder_steele_bound";

/// Limit constants for a finite-variance increment law:
///
/// | name | value | limit of |
/// |---|---|---|
/// | `2norm_mu` | `2 ||mu||` | `E L_n / n` (drift) |
/// | `4sigma2_mu` | `4 sigma2_mu` | `Var L_n / n` (drift) |
/// | `norm_mu_sqrt_2pi_sigma2_perp_over_3` | `||mu|| sqrt(2 pi sigma2_perp) / 3` | `E A_n / n^{3/2}` (drift) |
/// | `4E_norm_Y` | `4 E||Y||` | `E L_n / sqrt(n)` (zero drift) |
/// | `pi_over_2_sqrt_det` | `(pi/2) sqrt(det Sigma)` | `E A_n / n` (zero drift) |
/// | `snyder_steele_bound` | `(pi^2/2) sigma^2` | upper bound on `Var L_n / n` |
pub fn limit_constants(m: &MomentSummary) -> Result<Vec<(&'static str, f64)>> {
    if !m.finite_variance {
        return Err(Error::InfiniteVariance);
    }
    let mut out = Vec::new();
    if m.has_drift() {
        let drift = m.drift();
        out.push((C_TWO_NORM_MU, 2.0 * drift));
        out.push((C_FOUR_SIGMA2_MU, 4.0 * m.sigma2_mu.unwrap_or(0.0)));
        out.push((
            C_AREA_DRIFT,
            drift * (2.0 * PI * m.sigma2_perp.unwrap_or(0.0)).sqrt() / 3.0,
        ));
    } else {
        out.push((C_FOUR_NORM_Y, 4.0 * expected_norm_gaussian(m.sigma)?.value));
        out.push((C_AREA_ZERO, FRAC_PI_2 * m.det_sigma.sqrt()));
    }
    out.push((C_SNYDER_STEELE, PI * PI / 2.0 * m.sigma2));
    Ok(out)
}

/// Closed interval `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub low: f64,
    pub high: f64,
}

impl Bounds {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    pub fn scaled(self, k: f64) -> Bounds {
        Bounds {
            low: self.low * k,
            high: self.high * k,
        }
    }
}

/// Bounds on `u0(Sigma) = Var l(Sigma^{1/2} b)`, the limit of `Var L_n / n`
/// without drift. For `Sigma = I` the lower bound is the sharper one.
pub fn u0_bounds(trace: f64, is_identity: bool) -> Bounds {
    let high = PI * PI / 2.0 * trace;
    let low = if is_identity {
        0.4 * (1.0 - 8.0 / (25.0 * PI)) * (-25.0 * PI / 16.0).exp()
    } else {
        263.0 / 1080.0 * PI.powf(-1.5) * (-144.0f64 / 25.0).exp() * trace
    };
    Bounds { low, high }
}

/// Bounds on `v0 = Var a_1`.
pub fn v0_bounds() -> Bounds {
    let pi2 = PI * PI;
    let inner = (-7.0 * pi2 / 12.0).exp() - (-21.0 * pi2 / 4.0).exp() / 3.0;
    Bounds {
        low: 4.0 / 49.0 * inner * inner,
        high: 16.0 * LN_2 * LN_2 - pi2 / 4.0,
    }
}

/// Bounds on `v+ = Var a~_1`.
pub fn vplus_bounds() -> Bounds {
    Bounds {
        low: 2.0 / 225.0 * ((-25.0 * PI / 9.0).exp() - (-25.0 * PI).exp() / 3.0),
        high: 4.0 * LN_2 - 2.0 * PI / 9.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceBounds {
    pub u0: Bounds,
    pub v0: Bounds,
    pub vplus: Bounds,
}

pub fn variance_bounds(trace: f64, is_identity: bool) -> VarianceBounds {
    VarianceBounds {
        u0: u0_bounds(trace, is_identity),
        v0: v0_bounds(),
        vplus: vplus_bounds(),
    }
}
