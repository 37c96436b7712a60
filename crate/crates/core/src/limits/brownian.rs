//! Brownian hull constants and their Monte Carlo estimates.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{assemble_report, LimitReport, NamedEstimate, ReportTarget};
use super::{goldman_bridge_variance, u0_bounds, v0_bounds, vplus_bounds};
use crate::error::{Error, Result};
use crate::geom2d::Vec2;
use crate::hullstream::{stream_series, CheckpointSchedule};
use crate::montecarlo::{simulate, Moments, Process};
use crate::walkgen::{
    bridge_path, Gaussian, RngStream, SpacetimeBinary, SpacetimeGaussian, SymMat2, Walk,
};

/// Closed-form expectations for the standard planar Brownian motion `b` on
/// `[0, 1]` and the one-dimensional motion `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct BrownianConstants {
    /// Mean hull perimeter, `sqrt(8 pi)`.
    pub E_l1: f64,
    /// Mean hull area, `pi / 2`.
    pub E_a1: f64,
    /// Mean area of the hull of the graph `(t, w_t)`, `sqrt(2 pi) / 3`.
    pub E_atilde1: f64,
    /// `E sup w`, `sqrt(2 / pi)`.
    pub E_sup_w: f64,
    /// Mean squared range of `w`, `4 log 2`.
    pub E_range_sq: f64,
}

impl Default for BrownianConstants {
    fn default() -> Self {
        BrownianConstants {
            E_l1: (8.0 * PI).sqrt(),
            E_a1: FRAC_PI_2,
            E_atilde1: (2.0 * PI).sqrt() / 3.0,
            E_sup_w: (2.0 / PI).sqrt(),
            E_range_sq: 4.0 * LN_2,
        }
    }
}

/// Smallest grid accepted by [`brownian_constant_estimates`].
pub const MIN_GRID: usize = 1 << 14;

/// Per-replicate samples of the Brownian hull functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrownianEstimates {
    pub grid_n: usize,
    pub replicates: usize,
    /// Perimeter of the hull of `b` on `[0, 1]`.
    pub l1: Moments,
    /// Area of the hull of `b`.
    pub a1: Moments,
    /// Area of the hull of `(t, w_t)`.
    pub atilde1: Moments,
    /// Squared range of the first coordinate of `b`.
    pub range_sq: Moments,
    /// Perimeter of the hull of the planar bridge.
    pub bridge_l: Moments,
}

/// Monte Carlo estimates of the Brownian hull functionals on a grid of
/// `grid_n` steps. Replicate `i` uses streams `3i`, `3i + 1`, `3i + 2` for
/// the free motion, the space-time graph and the bridge.
pub fn brownian_constant_estimates(
    grid_n: usize,
    replicates: usize,
    master_seed: u64,
) -> Result<BrownianEstimates> {
    if grid_n < MIN_GRID {
        return Err(Error::InvalidArgument(format!(
            "grid_n = {grid_n} below {MIN_GRID}"
        )));
    }
    if replicates < 2 {
        return Err(Error::InvalidReplicates(replicates));
    }
    let n = grid_n as f64;
    let step = Gaussian::new(Vec2::ZERO, SymMat2::IDENTITY.scaled(1.0 / n))?;
    let last = [grid_n];
    let rows: Vec<[f64; 5]> = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let (mut xmin, mut xmax) = (0.0f64, 0.0f64);
            let free = Walk::new(&step, grid_n, RngStream::new(master_seed, 3 * i)).inspect(|p| {
                xmin = xmin.min(p.x);
                xmax = xmax.max(p.x);
            });
            let free = stream_series(free, &last)?;
            let graph = stream_series(
                Walk::new(
                    &SpacetimeGaussian,
                    grid_n,
                    RngStream::new(master_seed, 3 * i + 1),
                ),
                &last,
            )?;
            let bridge = bridge_path(grid_n, RngStream::new(master_seed, 3 * i + 2))?;
            let bridge = stream_series(bridge.into_positions(), &last)?;
            let range = xmax - xmin;
            Ok([
                free.perimeter[0],
                free.area[0],
                graph.area[0] / (n * n.sqrt()),
                range * range,
                bridge.perimeter[0],
            ])
        })
        .collect::<Result<_>>()?;
    let col = |j: usize| Moments::from_slice(&rows.iter().map(|r| r[j]).collect::<Vec<_>>());
    Ok(BrownianEstimates {
        grid_n,
        replicates,
        l1: col(0),
        a1: col(1),
        atilde1: col(2),
        range_sq: col(3),
        bridge_l: col(4),
    })
}

impl BrownianEstimates {
    /// Means against the closed forms, variances against their bounds, and
    /// the bridge perimeter variance against its closed form.
    pub fn reports(&self) -> Result<Vec<LimitReport>> {
        let c = BrownianConstants::default();
        let u0 = u0_bounds(2.0, true);
        let v0 = v0_bounds();
        let vp = vplus_bounds();
        let targets = [
            ReportTarget::exact("E_l1", c.E_l1),
            ReportTarget::bounded("Var_l1", Some(u0.low), Some(u0.high)),
            ReportTarget::exact("E_a1", c.E_a1),
            ReportTarget::bounded("Var_a1", Some(v0.low), Some(v0.high)),
            ReportTarget::exact("E_atilde1", c.E_atilde1),
            ReportTarget::bounded("Var_atilde1", Some(vp.low), Some(vp.high)),
            ReportTarget::exact("E_range_sq", c.E_range_sq),
            ReportTarget::exact("Var_bridge_l", goldman_bridge_variance()),
        ];
        let m = |q: &str, x: &Moments| NamedEstimate::new(q, x.mean, x.std_error());
        let v = |q: &str, x: &Moments| NamedEstimate::new(q, x.variance(), x.variance_std_error());
        let ests = [
            m("E_l1", &self.l1),
            v("Var_l1", &self.l1),
            m("E_a1", &self.a1),
            v("Var_a1", &self.a1),
            m("E_atilde1", &self.atilde1),
            v("Var_atilde1", &self.atilde1),
            m("E_range_sq", &self.range_sq),
            v("Var_bridge_l", &self.bridge_l),
        ];
        assemble_report(&ests, &targets)
    }
}

/// Reference slope of `Var L_n` against `log n` for the space-time binary walk.
pub const DEGENERATE_REFERENCE_SLOPE: f64 = 0.6612;

/// Least-squares fit of `Var L_n = intercept + slope log n` for the
/// space-time binary walk, where the drift direction carries no variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegenerateFit {
    /// `(n, Var L_n, s.e.)` at each checkpoint used in the fit.
    pub points: Vec<(usize, f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub reference_slope: f64,
}

/// Checkpoints below this size are left out of the fit.
pub const DEGENERATE_MIN_N: usize = 100;

pub fn degenerate_experiment(
    steps: usize,
    replicates: usize,
    master_seed: u64,
) -> Result<DegenerateFit> {
    let stats = simulate(
        &SpacetimeBinary,
        steps,
        &CheckpointSchedule::default(),
        replicates,
        master_seed,
        Process::Walk,
    )?;
    let points: Vec<(usize, f64, f64)> = stats
        .iter()
        .filter(|s| s.n >= DEGENERATE_MIN_N)
        .map(|s| {
            (
                s.n,
                s.perimeter.variance(),
                s.perimeter.variance_std_error(),
            )
        })
        .collect();
    if points.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two checkpoints >= {DEGENERATE_MIN_N}, got {}",
            points.len()
        )));
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(DegenerateFit {
        points,
        slope,
        intercept: my - slope * mx,
        reference_slope: DEGENERATE_REFERENCE_SLOPE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let c = BrownianConstants::default();
        assert!((c.E_l1 - 5.013_256_549).abs() < 1e-9);
        assert!((c.E_atilde1 - 0.835_542_758).abs() < 1e-8);
        assert!((c.E_range_sq - 2.772_588_722).abs() < 1e-9);
    }

    #[test]
    fn grid_guard() {
        assert!(brownian_constant_estimates(1000, 10, 1).is_err());
    }

    #[test]
    fn small_run_is_plausible() {
        let e = brownian_constant_estimates(MIN_GRID, 40, 11).unwrap();
        let c = BrownianConstants::default();
        assert!((e.l1.mean / c.E_l1 - 1.0).abs() < 0.1);
        assert!((e.a1.mean / c.E_a1 - 1.0).abs() < 0.3);
        assert_eq!(e.reports().unwrap().len(), 8);
    }

    #[test]
    fn degenerate_fit_runs() {
        let fit = degenerate_experiment(2000, 200, 3).unwrap();
        assert!(fit.slope.is_finite());
        assert_eq!(fit.reference_slope, DEGENERATE_REFERENCE_SLOPE);
        assert!(degenerate_experiment(50, 20, 3).is_err());
    }
}
