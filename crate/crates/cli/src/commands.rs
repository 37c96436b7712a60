use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Args;
use hullwalk::limits::{
    brownian_constant_estimates, degenerate_experiment, limit_constants, report_for_row,
    report_targets, variance_bounds, BrownianConstants, CheckpointRow, LimitReport, ReportTarget,
    VarianceBounds,
};
use hullwalk::montecarlo::{
    clt_test, enumerate_exact, martingale_decomposition_check, simulate as run_simulation,
    CltOutcome,
};
use hullwalk::walkgen::{parse_model, IncrementModel, MomentSummary, SymMat2};
use hullwalk::Error;
use serde::{Deserialize, Serialize};

use crate::config::{format_schedule, RunConfig};
use crate::output::{csv_text, emit, emit_json};
use crate::Failure;

/// Comment line carrying the wall-clock time; ignored when comparing runs.
pub const TIMESTAMP_PREFIX: &str = "# timestamp=";

fn model(spec: &str) -> Result<Box<dyn IncrementModel>, Failure> {
    Ok(parse_model(spec)?)
}

pub fn simulate(cfg: &RunConfig) -> Result<(), Failure> {
    let m = model(&cfg.model)?;
    let sched = cfg.checkpoint_schedule()?;
    if cfg.steps == 0 {
        return Err(Failure::Config("--steps must be at least 1".into()));
    }
    cfg.check_budget()?;
    let stats = run_simulation(
        m.as_ref(),
        cfg.steps,
        &sched,
        cfg.replicates,
        cfg.seed,
        cfg.process.into(),
    )?;
    let rows: Vec<CheckpointRow> = stats.iter().map(CheckpointRow::from).collect();
    if let Some(r) = rows.iter().find(|r| !row_is_finite(r)) {
        return Err(Failure::Numeric(format!(
            "non-finite statistic at n = {}",
            r.n
        )));
    }

    let mut text = String::new();
    text.push_str("# hullwalk simulate\n");
    text.push_str(&format!("# version={}\n", env!("CARGO_PKG_VERSION")));
    text.push_str(&format!("# model={}\n", m.spec()));
    text.push_str(&format!(
        "# steps={} replicates={} seed={} schedule={} process={}\n",
        cfg.steps,
        cfg.replicates,
        cfg.seed,
        format_schedule(&sched),
        cfg.process.as_str()
    ));
    let rerun = RunConfig {
        out: None,
        ..cfg.clone()
    };
    text.push_str(&format!("# args={}\n", rerun.to_args().join(" ")));
    if m.heavy_tailed() {
        text.push_str("# heavy_tail=true\n");
    }
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    text.push_str(&format!("{TIMESTAMP_PREFIX}{now}\n"));
    text.push_str(&csv_text(&rows)?);
    emit(cfg.out.as_deref(), &text)
}

fn row_is_finite(r: &CheckpointRow) -> bool {
    [
        r.mean_L, r.se_L, r.var_L, r.se_varL, r.mean_A, r.se_A, r.var_A, r.se_varA, r.mean_r,
    ]
    .iter()
    .all(|v| v.is_finite())
}

#[derive(Args)]
pub struct LimitsArgs {
    #[arg(long)]
    pub model: String,
    /// Accept infinite-variance models; only the moment summary is printed.
    #[arg(long)]
    pub allow_heavy: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LimitsOutput {
    pub model: String,
    pub heavy_tail: bool,
    pub finite_variance: bool,
    pub moments: Option<MomentSummary>,
    pub constants: BTreeMap<String, f64>,
    pub bounds: Option<VarianceBounds>,
    pub targets: Vec<ReportTarget>,
}

pub fn limits(a: &LimitsArgs) -> Result<(), Failure> {
    let m = model(&a.model)?;
    let mom = m.moments();
    let out = if mom.finite_variance {
        LimitsOutput {
            model: m.spec(),
            heavy_tail: m.heavy_tailed(),
            finite_variance: true,
            moments: Some(mom),
            constants: limit_constants(&mom)?
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            bounds: Some(variance_bounds(mom.sigma2, mom.sigma == SymMat2::IDENTITY)),
            targets: report_targets(&mom)?,
        }
    } else if a.allow_heavy {
        LimitsOutput {
            model: m.spec(),
            heavy_tail: true,
            finite_variance: false,
            moments: None,
            constants: BTreeMap::new(),
            bounds: None,
            targets: Vec::new(),
        }
    } else {
        return Err(Failure::Config(format!(
            "{} has infinite variance, so no limit constants apply; pass --allow-heavy to continue",
            m.spec()
        )));
    };
    emit_json(a.out.as_deref(), &out)
}

pub const HIST_BINS: usize = 64;
pub const HIST_RANGE: f64 = 4.0;

#[derive(Args)]
pub struct CltArgs {
    #[arg(long, default_value = "pr:0.2,0")]
    pub model: String,
    #[arg(long, default_value_t = 5_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 10_000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Histogram CSV of the standardized perimeters.
    #[arg(long)]
    pub hist: Option<PathBuf>,
    /// Verdict JSON; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistBin {
    pub low: f64,
    pub high: f64,
    pub count: u64,
    /// Count divided by sample size and bin width.
    pub density: f64,
    /// Standard normal density at the bin centre.
    pub normal_density: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CltVerdict {
    pub model: String,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    #[serde(rename = "D")]
    pub d: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Standardized values outside the histogram range.
    pub outside: u64,
    pub histogram: Vec<HistBin>,
}

pub fn histogram(values: &[f64]) -> (Vec<HistBin>, u64) {
    let width = 2.0 * HIST_RANGE / HIST_BINS as f64;
    let mut counts = [0u64; HIST_BINS];
    let mut outside = 0;
    for &v in values {
        let k = ((v + HIST_RANGE) / width).floor();
        if (0.0..HIST_BINS as f64).contains(&k) {
            counts[k as usize] += 1;
        } else {
            outside += 1;
        }
    }
    let total = values.len().max(1) as f64;
    let bins = counts
        .iter()
        .enumerate()
        .map(|(k, &count)| {
            let low = -HIST_RANGE + k as f64 * width;
            let mid = low + 0.5 * width;
            HistBin {
                low,
                high: low + width,
                count,
                density: count as f64 / (total * width),
                normal_density: (-0.5 * mid * mid).exp() / (2.0 * std::f64::consts::PI).sqrt(),
            }
        })
        .collect();
    (bins, outside)
}

pub fn clt(a: &CltArgs) -> Result<(), Failure> {
    let m = model(&a.model)?;
    let CltOutcome { d, threshold, pass, standardized } = match clt_test(m.as_ref(), a.steps, a.replicates, a.seed) {
        Ok(o) => o,
        Err(Error::DegenerateDrift) => {
            return Err(Failure::Config(format!(
                "{} is degenerate: the step has no variance along the drift, so the perimeter has no Gaussian \
                 limit on the sqrt(n) scale (Var L_n grows like log n); try `hullwalk degenerate`",
                m.spec()
            )))
        }
        Err(Error::ZeroDrift) => {
            return Err(Failure::Config(format!(
                "{} has zero drift; the perimeter CLT needs a drifting walk, e.g. pr:0.2,0",
                m.spec()
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let (bins, outside) = histogram(&standardized);
    if let Some(path) = &a.hist {
        emit(Some(path), &csv_text(&bins)?)?;
    }
    let verdict = CltVerdict {
        model: m.spec(),
        n: a.steps,
        replicates: a.replicates,
        seed: a.seed,
        d,
        threshold,
        pass,
        outside,
        histogram: bins,
    };
    emit_json(a.out.as_deref(), &verdict)
}

#[derive(Args)]
pub struct ConstantsArgs {
    #[arg(long, default_value_t = 1 << 17)]
    pub grid: usize,
    #[arg(long, default_value_t = 2_000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ConstantsOutput {
    pub grid_n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub closed_forms: BrownianConstants,
    pub reports: Vec<LimitReport>,
}

pub fn constants(a: &ConstantsArgs) -> Result<(), Failure> {
    let work = a.grid as f64 * a.replicates as f64 * 3.0;
    if work > crate::config::DEFAULT_BUDGET {
        return Err(Failure::Config(format!(
            "grid * replicates * 3 = {work:e} exceeds the budget"
        )));
    }
    let e = brownian_constant_estimates(a.grid, a.replicates, a.seed)?;
    let out = ConstantsOutput {
        grid_n: a.grid,
        replicates: a.replicates,
        seed: a.seed,
        closed_forms: BrownianConstants::default(),
        reports: e.reports()?,
    };
    if out
        .reports
        .iter()
        .any(|r| r.estimate.is_some_and(|v| !v.is_finite()))
    {
        return Err(Failure::Numeric("non-finite Brownian estimate".into()));
    }
    emit_json(a.out.as_deref(), &out)
}

#[derive(Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Largest `|lhs - rhs|` accepted by the martingale check.
pub const MDIFF_TOL: f64 = 1e-9;

#[derive(Debug, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct ExactOutput {
    pub model: String,
    pub n: usize,
    pub EL: f64,
    pub EA: f64,
    pub VarL: f64,
    /// `ok`, `failed`, or `skipped` when the nested enumeration is too large.
    pub mdiff_check: String,
    pub mdiff_sum: Option<f64>,
}

pub fn exact(a: &ExactArgs) -> Result<(), Failure> {
    let m = model(&a.model)?;
    let e = enumerate_exact(m.as_ref(), a.steps)?;
    let (status, sum) = match martingale_decomposition_check(m.as_ref(), a.steps) {
        Ok(c) if (c.lhs - c.rhs).abs() <= MDIFF_TOL * c.lhs.abs().max(1.0) => ("ok", Some(c.rhs)),
        Ok(c) => {
            return Err(Failure::Numeric(format!(
                "martingale decomposition mismatch: Var L = {} but sum of E D^2 = {}",
                c.lhs, c.rhs
            )))
        }
        Err(Error::SupportTooLarge { .. }) => ("skipped", None),
        Err(err) => return Err(err.into()),
    };
    let out = ExactOutput {
        model: m.spec(),
        n: e.n,
        EL: e.el,
        EA: e.ea,
        VarL: e.var_l,
        mdiff_check: status.into(),
        mdiff_sum: sum,
    };
    emit_json(a.out.as_deref(), &out)
}

#[derive(Args)]
pub struct ReportArgs {
    /// CSV written by `simulate`.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// JSON written by `limits`.
    #[arg(long)]
    pub limits: PathBuf,
    /// Checkpoint to evaluate; the last one when absent.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportOutput {
    pub model: String,
    pub n: usize,
    pub reports: Vec<LimitReport>,
}

pub fn report(a: &ReportArgs) -> Result<(), Failure> {
    let csv_raw = std::fs::read_to_string(&a.input)
        .map_err(|e| Failure::Config(format!("cannot read {}: {e}", a.input.display())))?;
    let csv_model = csv_raw
        .lines()
        .find_map(|l| l.strip_prefix("# model="))
        .map(str::trim);
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(csv_raw.as_bytes());
    let rows = reader
        .deserialize()
        .collect::<Result<Vec<CheckpointRow>, _>>()?;

    let limits_raw = std::fs::read_to_string(&a.limits)
        .map_err(|e| Failure::Config(format!("cannot read {}: {e}", a.limits.display())))?;
    let lim: LimitsOutput = serde_json::from_str(&limits_raw)?;
    if let Some(cm) = csv_model {
        if cm != lim.model {
            return Err(Failure::Config(format!(
                "simulation is for {cm} but limits are for {}",
                lim.model
            )));
        }
    }
    let row = match a.n {
        Some(n) => rows.iter().find(|r| r.n == n).ok_or_else(|| {
            Failure::Config(format!("no checkpoint n = {n} in {}", a.input.display()))
        })?,
        None => rows
            .last()
            .ok_or_else(|| Failure::Config(format!("{} has no rows", a.input.display())))?,
    };
    let out = ReportOutput {
        model: lim.model.clone(),
        n: row.n,
        reports: report_for_row(row, &lim.targets)?,
    };
    emit_json(a.out.as_deref(), &out)
}

#[derive(Args)]
pub struct DegenerateArgs {
    #[arg(long, default_value_t = 100_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 1_000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn degenerate(a: &DegenerateArgs) -> Result<(), Failure> {
    let fit = degenerate_experiment(a.steps, a.replicates, a.seed)?;
    emit_json(a.out.as_deref(), &fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_counts_everything() {
        let values = [-5.0, -4.0, -0.01, 0.0, 3.99, 4.0, 7.0];
        let (bins, outside) = histogram(&values);
        assert_eq!(bins.len(), HIST_BINS);
        assert_eq!(outside, 3);
        assert_eq!(bins.iter().map(|b| b.count).sum::<u64>(), 4);
        assert_eq!(bins[0].count, 1);
        assert_eq!(bins[31].count, 1);
        assert_eq!(bins[32].count, 1);
        assert_eq!(bins[63].count, 1);
        assert!((bins[0].low + 4.0).abs() < 1e-15 && (bins[63].high - 4.0).abs() < 1e-15);
    }

    #[test]
    fn failure_codes() {
        assert_eq!(Failure::from(Error::NotPsd).exit_code(), 1);
        assert_eq!(
            Failure::from(Error::NumericFailure("x".into())).exit_code(),
            2
        );
    }
}
