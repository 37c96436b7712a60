use serde::{Deserialize, Serialize};

use super::{limit_constants, u0_bounds, v0_bounds, vplus_bounds, C_SNYDER_STEELE};
use super::{C_AREA_DRIFT, C_AREA_ZERO, C_FOUR_NORM_Y, C_FOUR_SIGMA2_MU, C_TWO_NORM_MU};
use crate::error::{Error, Result};
use crate::montecarlo::CheckpointStats;
use crate::walkgen::{MomentSummary, SymMat2};

/// Width of the acceptance band around an estimate, in standard errors.
pub const VERDICT_STD_ERRORS: f64 = 5.0;

/// Bound-only quantities: `Var L_n / n` without drift, `Var A_n / n^2`
/// without drift and `Var A_n / n^3` with drift.
pub const Q_U0: &str = "u0";
pub const Q_V0: &str = "v0";
pub const Q_VPLUS: &str = "vplus";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Violated,
    Untested,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportTarget {
    pub quantity: String,
    pub theoretical: Option<f64>,
    pub bound_low: Option<f64>,
    pub bound_high: Option<f64>,
}

impl ReportTarget {
    pub fn exact(quantity: &str, value: f64) -> Self {
        ReportTarget {
            quantity: quantity.into(),
            theoretical: Some(value),
            bound_low: None,
            bound_high: None,
        }
    }

    pub fn bounded(quantity: &str, low: Option<f64>, high: Option<f64>) -> Self {
        ReportTarget {
            quantity: quantity.into(),
            theoretical: None,
            bound_low: low,
            bound_high: high,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedEstimate {
    pub quantity: String,
    pub value: f64,
    pub std_error: f64,
}

impl NamedEstimate {
    pub fn new(quantity: &str, value: f64, std_error: f64) -> Self {
        NamedEstimate {
            quantity: quantity.into(),
            value,
            std_error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub quantity: String,
    pub theoretical: Option<f64>,
    pub bound_low: Option<f64>,
    pub bound_high: Option<f64>,
    pub estimate: Option<f64>,
    pub std_error: Option<f64>,
    pub verdict: Verdict,
}

fn verdict(target: &ReportTarget, est: &NamedEstimate) -> Verdict {
    let lo = est.value - VERDICT_STD_ERRORS * est.std_error;
    let hi = est.value + VERDICT_STD_ERRORS * est.std_error;
    let off_value = target.theoretical.is_some_and(|t| t < lo || t > hi);
    let below = target.bound_low.is_some_and(|b| hi < b);
    let above = target.bound_high.is_some_and(|b| lo > b);
    if off_value || below || above || !est.value.is_finite() {
        Verdict::Violated
    } else {
        Verdict::Consistent
    }
}

/// Pairs each target with the estimate of the same quantity. Targets without
/// an estimate are `untested`; an estimate without a target is an error.
pub fn assemble_report(
    estimates: &[NamedEstimate],
    targets: &[ReportTarget],
) -> Result<Vec<LimitReport>> {
    for e in estimates {
        if !targets.iter().any(|t| t.quantity == e.quantity) {
            return Err(Error::MismatchedQuantities(format!(
                "no target for estimate '{}'",
                e.quantity
            )));
        }
    }
    targets
        .iter()
        .map(|t| {
            if let (Some(th), Some(lo)) = (t.theoretical, t.bound_low) {
                if th < lo {
                    return Err(Error::MismatchedQuantities(format!(
                        "{}: theoretical below bound",
                        t.quantity
                    )));
                }
            }
            if let (Some(th), Some(hi)) = (t.theoretical, t.bound_high) {
                if th > hi {
                    return Err(Error::MismatchedQuantities(format!(
                        "{}: theoretical above bound",
                        t.quantity
                    )));
                }
            }
            let est = estimates.iter().find(|e| e.quantity == t.quantity);
            Ok(LimitReport {
                quantity: t.quantity.clone(),
                theoretical: t.theoretical,
                bound_low: t.bound_low,
                bound_high: t.bound_high,
                estimate: est.map(|e| e.value),
                std_error: est.map(|e| e.std_error),
                verdict: est.map_or(Verdict::Untested, |e| verdict(t, e)),
            })
        })
        .collect()
}

/// One row of the simulation CSV.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckpointRow {
    pub n: usize,
    pub mean_L: f64,
    pub se_L: f64,
    pub var_L: f64,
    pub se_varL: f64,
    pub mean_A: f64,
    pub se_A: f64,
    pub var_A: f64,
    pub se_varA: f64,
    pub mean_r: f64,
}

impl From<&CheckpointStats> for CheckpointRow {
    fn from(s: &CheckpointStats) -> Self {
        CheckpointRow {
            n: s.n,
            mean_L: s.perimeter.mean,
            se_L: s.perimeter.std_error(),
            var_L: s.perimeter.variance(),
            se_varL: s.perimeter.variance_std_error(),
            mean_A: s.area.mean,
            se_A: s.area.std_error(),
            var_A: s.area.variance(),
            se_varA: s.area.variance_std_error(),
            mean_r: s.inradius.mean,
        }
    }
}

/// Targets for every limit constant and variance bound that applies to the law.
pub fn report_targets(m: &MomentSummary) -> Result<Vec<ReportTarget>> {
    let mut out = Vec::new();
    for (name, value) in limit_constants(m)? {
        if name == C_SNYDER_STEELE {
            out.push(ReportTarget::bounded(name, None, Some(value)));
        } else {
            out.push(ReportTarget::exact(name, value));
        }
    }
    if m.has_drift() {
        let k = m.drift().powi(2) * m.sigma2_perp.unwrap_or(0.0);
        let b = vplus_bounds().scaled(k);
        out.push(ReportTarget::bounded(Q_VPLUS, Some(b.low), Some(b.high)));
    } else {
        let u = u0_bounds(m.sigma2, m.sigma == SymMat2::IDENTITY);
        out.push(ReportTarget::bounded(Q_U0, Some(u.low), Some(u.high)));
        let v = v0_bounds().scaled(m.det_sigma);
        out.push(ReportTarget::bounded(Q_V0, Some(v.low), Some(v.high)));
    }
    Ok(out)
}

/// Every scaled functional a checkpoint row can estimate, named after the
/// constant it converges to.
pub fn scaled_estimates(row: &CheckpointRow) -> Vec<NamedEstimate> {
    let n = row.n as f64;
    let sn = n.sqrt();
    let e = NamedEstimate::new;
    vec![
        e(C_TWO_NORM_MU, row.mean_L / n, row.se_L / n),
        e(C_FOUR_NORM_Y, row.mean_L / sn, row.se_L / sn),
        e(C_FOUR_SIGMA2_MU, row.var_L / n, row.se_varL / n),
        e(C_SNYDER_STEELE, row.var_L / n, row.se_varL / n),
        e(Q_U0, row.var_L / n, row.se_varL / n),
        e(C_AREA_ZERO, row.mean_A / n, row.se_A / n),
        e(C_AREA_DRIFT, row.mean_A / (n * sn), row.se_A / (n * sn)),
        e(Q_V0, row.var_A / (n * n), row.se_varA / (n * n)),
        e(Q_VPLUS, row.var_A / (n * n * n), row.se_varA / (n * n * n)),
    ]
}

/// Report for one checkpoint against the given targets; estimates of
/// quantities without a target are dropped.
pub fn report_for_row(row: &CheckpointRow, targets: &[ReportTarget]) -> Result<Vec<LimitReport>> {
    let ests: Vec<NamedEstimate> = scaled_estimates(row)
        .into_iter()
        .filter(|e| targets.iter().any(|t| t.quantity == e.quantity))
        .collect();
    assemble_report(&ests, targets)
}
