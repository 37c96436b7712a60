//! Parallel replication, aggregation with standard errors, distribution tests
//! and exact enumeration oracles.
//!
//! Replicate `i` always draws from `RngStream::new(master_seed, i)` and the
//! per-replicate results are reduced in index order, so every estimate is a
//! deterministic function of `(model, steps, schedule, replicates, seed)`
//! whatever the size of the rayon pool.

pub mod enumerate;
pub mod stats;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

pub use enumerate::{
    enumerate_exact, exact_norm_means, exact_triangle_mean, martingale_decomposition_check,
    position_law, ExactMoments, MartingaleCheck, ENUMERATION_LIMIT,
};
pub use stats::{correlation, Moments};

use crate::error::{Error, Result};
use crate::geom2d::Vec2;
use crate::hullstream::{stream_series, CheckpointSchedule, FunctionalSeries};
use crate::walkgen::{IncrementModel, RngStream, Walk};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "HULLWALK_THREADS";

/// Asymptotic 5% critical value of the one-sample KS statistic, times sqrt(m).
pub const KS_CRITICAL_5PCT: f64 = 1.36;

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Worker cap from `HULLWALK_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
}

/// Which point process is fed to the hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Process {
    #[default]
    Walk,
    /// Running centre of mass `G_n = (1/n) sum_{k<=n} S_k`.
    CenterOfMass,
}

struct CenterOfMassIter<I> {
    inner: I,
    sum: Vec2,
    k: usize,
}

impl<I: Iterator<Item = Vec2>> Iterator for CenterOfMassIter<I> {
    type Item = Vec2;

    fn next(&mut self) -> Option<Vec2> {
        let s = self.inner.next()?;
        if self.k == 0 {
            self.k = 1;
            return Some(Vec2::ZERO);
        }
        self.sum = self.sum + s;
        let g = self.sum * (1.0 / self.k as f64);
        self.k += 1;
        Some(g)
    }
}

fn replicate_series(
    model: &dyn IncrementModel,
    steps: usize,
    checkpoints: &[usize],
    process: Process,
    stream: RngStream,
) -> Result<FunctionalSeries> {
    let walk = Walk::new(model, steps, stream);
    match process {
        Process::Walk => stream_series(walk, checkpoints),
        Process::CenterOfMass => stream_series(
            CenterOfMassIter {
                inner: walk,
                sum: Vec2::ZERO,
                k: 0,
            },
            checkpoints,
        ),
    }
}

fn check_finite(series: &FunctionalSeries, replicate: u64) -> Result<()> {
    let ok = series
        .perimeter
        .iter()
        .chain(&series.area)
        .chain(&series.inradius)
        .all(|v| v.is_finite());
    if ok {
        Ok(())
    } else {
        Err(Error::NumericFailure(format!(
            "non-finite functional in replicate {replicate}"
        )))
    }
}

/// Aggregated functionals at one checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckpointStats {
    pub n: usize,
    pub perimeter: Moments,
    pub area: Moments,
    pub inradius: Moments,
}

/// Simulates `replicates` independent walks and aggregates their functional
/// series checkpoint by checkpoint.
pub fn simulate(
    model: &dyn IncrementModel,
    steps: usize,
    sched: &CheckpointSchedule,
    replicates: usize,
    master_seed: u64,
    process: Process,
) -> Result<Vec<CheckpointStats>> {
    if replicates < 2 {
        return Err(Error::InvalidReplicates(replicates));
    }
    let checkpoints = sched.resolve(steps)?;
    let per_replicate: Vec<FunctionalSeries> = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let s = replicate_series(
                model,
                steps,
                &checkpoints,
                process,
                RngStream::new(master_seed, i),
            )?;
            check_finite(&s, i)?;
            Ok(s)
        })
        .collect::<Result<_>>()?;

    let column = |k: usize, f: fn(&FunctionalSeries) -> &Vec<f64>| -> Vec<f64> {
        per_replicate.iter().map(|s| f(s)[k]).collect()
    };
    Ok(checkpoints
        .iter()
        .enumerate()
        .map(|(k, &n)| CheckpointStats {
            n,
            perimeter: Moments::from_slice(&column(k, |s| &s.perimeter)),
            area: Moments::from_slice(&column(k, |s| &s.area)),
            inradius: Moments::from_slice(&column(k, |s| &s.inradius)),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistic {
    MeanL,
    VarL,
    MeanA,
    VarA,
    MeanR,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub n: usize,
    pub statistic: Statistic,
    pub value: f64,
    pub std_error: f64,
    pub replicates: usize,
}

impl CheckpointStats {
    pub fn estimates(&self) -> [MonteCarloEstimate; 5] {
        let r = self.perimeter.count as usize;
        let e = |statistic, value, std_error| MonteCarloEstimate {
            n: self.n,
            statistic,
            value,
            std_error,
            replicates: r,
        };
        [
            e(
                Statistic::MeanL,
                self.perimeter.mean,
                self.perimeter.std_error(),
            ),
            e(
                Statistic::VarL,
                self.perimeter.variance(),
                self.perimeter.variance_std_error(),
            ),
            e(Statistic::MeanA, self.area.mean, self.area.std_error()),
            e(
                Statistic::VarA,
                self.area.variance(),
                self.area.variance_std_error(),
            ),
            e(
                Statistic::MeanR,
                self.inradius.mean,
                self.inradius.std_error(),
            ),
        ]
    }
}

/// Mean and variance estimates of `L` and `A`, and mean of `r`, per checkpoint.
pub fn estimate(
    model: &dyn IncrementModel,
    steps: usize,
    sched: &CheckpointSchedule,
    replicates: usize,
    master_seed: u64,
) -> Result<Vec<MonteCarloEstimate>> {
    let stats = simulate(model, steps, sched, replicates, master_seed, Process::Walk)?;
    Ok(stats.iter().flat_map(|s| s.estimates()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Functional {
    Perimeter,
    Area,
}

/// Terminal values of one functional, one per replicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub n: usize,
    pub values: Vec<f64>,
}

pub fn collect_samples(
    model: &dyn IncrementModel,
    n: usize,
    replicates: usize,
    master_seed: u64,
    functional: Functional,
) -> Result<SampleSet> {
    if replicates < 1 {
        return Err(Error::InvalidReplicates(replicates));
    }
    let values = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let s = replicate_series(
                model,
                n,
                &[n],
                Process::Walk,
                RngStream::new(master_seed, i),
            )?;
            check_finite(&s, i)?;
            Ok(match functional {
                Functional::Perimeter => s.perimeter[0],
                Functional::Area => s.area[0],
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SampleSet { n, values })
}

/// One-sample Kolmogorov–Smirnov distance between the empirical distribution
/// of `samples` and `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    Ok(xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (((i + 1) as f64 / m) - f).max(f - i as f64 / m)
        })
        .fold(0.0, f64::max))
}

/// Standard normal distribution function.
pub fn std_normal_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltOutcome {
    pub d: f64,
    pub threshold: f64,
    pub pass: bool,
    /// `(L - mean L) / sqrt(4 sigma2_mu n)` per replicate.
    pub standardized: Vec<f64>,
}

/// Gaussian fluctuation test for the perimeter of a drifting walk: standardizes
/// `L_n` by its sample mean and the limiting scale `sqrt(4 sigma2_mu n)` and
/// compares with the standard normal at the asymptotic 5% level.
pub fn clt_test(
    model: &dyn IncrementModel,
    n: usize,
    replicates: usize,
    master_seed: u64,
) -> Result<CltOutcome> {
    let m = model.moments();
    if !m.finite_variance {
        return Err(Error::InfiniteVariance);
    }
    if !m.has_drift() {
        return Err(Error::ZeroDrift);
    }
    let s2 = m.sigma2_mu.unwrap_or(0.0);
    if s2 <= 1e-12 * m.sigma2.max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateDrift);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let samples = collect_samples(model, n, replicates, master_seed, Functional::Perimeter)?;
    let mean = Moments::from_slice(&samples.values).mean;
    let scale = (4.0 * s2 * n as f64).sqrt();
    let standardized: Vec<f64> = samples.values.iter().map(|l| (l - mean) / scale).collect();
    let d = ks_statistic(&standardized, std_normal_cdf)?;
    let threshold = KS_CRITICAL_5PCT / (replicates as f64).sqrt();
    Ok(CltOutcome {
        d,
        threshold,
        pass: d < threshold,
        standardized,
    })
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < xs.len() && j < ys.len() {
        let t = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= t {
            i += 1;
        }
        while j < ys.len() && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walkgen::{LatticeSrw, PearsonRayleigh, SpacetimeBinary};

    #[test]
    fn ks_hand_example() {
        let d = ks_statistic(&[0.25, 0.5, 0.75], |x| x.clamp(0.0, 1.0)).unwrap();
        assert!((d - 0.25).abs() < 1e-15);
        assert_eq!(ks_statistic(&[0.5], |x| x), Err(Error::TooFewSamples(1)));
    }

    #[test]
    fn ks_constant_sample() {
        let d = ks_statistic(&[0.0; 100], std_normal_cdf).unwrap();
        assert!(d >= 0.5);
    }

    #[test]
    fn ks_two_sample_basics() {
        assert_eq!(ks_two_sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
    }

    #[test]
    fn lattice_one_step_perimeter() {
        let est = estimate(&LatticeSrw, 1, &CheckpointSchedule::default(), 100, 3).unwrap();
        let mean_l = est
            .iter()
            .find(|e| e.statistic == Statistic::MeanL)
            .unwrap();
        assert_eq!(mean_l.n, 1);
        assert_eq!(mean_l.value, 2.0);
        assert_eq!(mean_l.std_error, 0.0);
    }

    #[test]
    fn replicate_validation() {
        assert_eq!(
            estimate(&LatticeSrw, 5, &CheckpointSchedule::default(), 1, 0),
            Err(Error::InvalidReplicates(1))
        );
        assert_eq!(
            collect_samples(&LatticeSrw, 5, 1, 0, Functional::Area)
                .unwrap()
                .values
                .len(),
            1
        );
    }

    #[test]
    fn clt_preconditions() {
        assert_eq!(
            clt_test(&SpacetimeBinary, 100, 100, 1),
            Err(Error::DegenerateDrift)
        );
        assert_eq!(
            clt_test(&PearsonRayleigh::default(), 100, 100, 1),
            Err(Error::ZeroDrift)
        );
    }

    #[test]
    fn center_of_mass_process_is_inside_walk_hull() {
        let model = PearsonRayleigh {
            drift: Vec2::new(0.1, 0.0),
        };
        let sched = CheckpointSchedule::Explicit(vec![200]);
        let walk = simulate(&model, 200, &sched, 20, 5, Process::Walk).unwrap();
        let com = simulate(&model, 200, &sched, 20, 5, Process::CenterOfMass).unwrap();
        assert!(com[0].perimeter.mean < walk[0].perimeter.mean);
        assert!(com[0].area.mean < walk[0].area.mean);
    }
}
