//! Perimeter, area and inradius of the hull of a walk prefix, recorded at a
//! checkpoint schedule.

mod incremental;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use incremental::IncrementalHull;

use crate::error::{Error, Result};
use crate::geom2d::{area, convex_hull, dist_origin_to_boundary, perimeter, Vec2};
use crate::walkgen::WalkPath;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CheckpointSchedule {
    /// `start, ceil(start * ratio), ...` up to and always including the final step.
    Geometric { start: usize, ratio: f64 },
    /// Explicit strictly increasing step counts.
    Explicit(Vec<usize>),
}

impl Default for CheckpointSchedule {
    fn default() -> Self {
        CheckpointSchedule::Geometric {
            start: 10,
            ratio: 1.25,
        }
    }
}

impl CheckpointSchedule {
    /// Resolves the schedule against a walk of `steps` steps.
    pub fn resolve(&self, steps: usize) -> Result<Vec<usize>> {
        match self {
            CheckpointSchedule::Geometric { start, ratio } => {
                if !(*ratio > 1.0) || !ratio.is_finite() {
                    return Err(Error::InvalidSchedule(format!(
                        "ratio {ratio} must exceed 1"
                    )));
                }
                let mut out = Vec::new();
                let mut k = *start;
                while k < steps {
                    out.push(k);
                    k = ((k as f64 * ratio).ceil() as usize).max(k + 1);
                }
                out.push(steps);
                Ok(out)
            }
            CheckpointSchedule::Explicit(list) => {
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidSchedule(
                        "checkpoints must be strictly increasing".into(),
                    ));
                }
                if let Some(&last) = list.last() {
                    if last > steps {
                        return Err(Error::ScheduleOutOfRange {
                            checkpoint: last,
                            steps,
                        });
                    }
                }
                Ok(list.clone())
            }
        }
    }
}

impl fmt::Display for CheckpointSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckpointSchedule::Geometric { start, ratio } => write!(f, "geom:{start},{ratio}"),
            CheckpointSchedule::Explicit(list) => {
                let items: Vec<String> = list.iter().map(|k| k.to_string()).collect();
                write!(f, "list:{}", items.join(","))
            }
        }
    }
}

impl FromStr for CheckpointSchedule {
    type Err = Error;

    /// `geom:START,RATIO` or `list:N1,N2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidSchedule(format!(
                "cannot parse '{s}' (expected geom:START,RATIO or list:N1,N2,...)"
            ))
        };
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "geom" => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                let start = a.trim().parse().map_err(|_| bad())?;
                let ratio: f64 = b.trim().parse().map_err(|_| bad())?;
                Ok(CheckpointSchedule::Geometric { start, ratio })
            }
            "list" if args.trim().is_empty() => Ok(CheckpointSchedule::Explicit(Vec::new())),
            "list" => args
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()
                .map(CheckpointSchedule::Explicit),
            _ => Err(bad()),
        }
    }
}

/// Hull functionals of a walk at its checkpoints.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FunctionalSeries {
    pub checkpoints: Vec<usize>,
    pub perimeter: Vec<f64>,
    pub area: Vec<f64>,
    pub inradius: Vec<f64>,
}

impl FunctionalSeries {
    fn with_capacity(n: usize) -> Self {
        FunctionalSeries {
            checkpoints: Vec::with_capacity(n),
            perimeter: Vec::with_capacity(n),
            area: Vec::with_capacity(n),
            inradius: Vec::with_capacity(n),
        }
    }

    // Hulls only grow, so a drop here is rounding; keep the running maximum.
    fn push(&mut self, n: usize, l: f64, a: f64, r: f64) {
        let (l, a, r) = match self.checkpoints.len() {
            0 => (l, a, r),
            k => (
                l.max(self.perimeter[k - 1]),
                a.max(self.area[k - 1]),
                r.max(self.inradius[k - 1]),
            ),
        };
        self.checkpoints.push(n);
        self.perimeter.push(l);
        self.area.push(a);
        self.inradius.push(r);
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }
}

/// Feeds a stream of walk positions `S_0, S_1, ...` through an incremental
/// hull and records the functionals whenever the step count hits a checkpoint.
pub fn stream_series<I>(positions: I, checkpoints: &[usize]) -> Result<FunctionalSeries>
where
    I: IntoIterator<Item = Vec2>,
{
    let mut series = FunctionalSeries::with_capacity(checkpoints.len());
    let mut hull = IncrementalHull::new();
    let mut next = checkpoints.iter().copied().peekable();
    for (step, p) in positions.into_iter().enumerate() {
        if next.peek().is_none() {
            break;
        }
        hull.push(p);
        if next.peek() == Some(&step) {
            next.next();
            series.push(step, hull.perimeter(), hull.area(), hull.inradius());
        }
    }
    if let Some(&k) = next.peek() {
        return Err(Error::ScheduleOutOfRange {
            checkpoint: k,
            steps: hull.len().saturating_sub(1),
        });
    }
    Ok(series)
}

fn check_schedule(path: &WalkPath, sched: &CheckpointSchedule) -> Result<Vec<usize>> {
    let cps = sched.resolve(path.steps())?;
    if let Some(&last) = cps.last() {
        if last > path.steps() {
            return Err(Error::ScheduleOutOfRange {
                checkpoint: last,
                steps: path.steps(),
            });
        }
    }
    Ok(cps)
}

/// Single pass over the path with an incremental hull.
pub fn functional_series(path: &WalkPath, sched: &CheckpointSchedule) -> Result<FunctionalSeries> {
    let cps = check_schedule(path, sched)?;
    stream_series(path.positions().iter().copied(), &cps)
}

/// Reference implementation: rebuilds the hull from scratch at every checkpoint.
pub fn batch_series(path: &WalkPath, sched: &CheckpointSchedule) -> Result<FunctionalSeries> {
    let cps = check_schedule(path, sched)?;
    let mut series = FunctionalSeries::with_capacity(cps.len());
    for &n in &cps {
        let hull = convex_hull(&path.positions()[..=n])?;
        series.push(
            n,
            perimeter(&hull),
            area(&hull),
            dist_origin_to_boundary(&hull)?,
        );
    }
    Ok(series)
}

/// A way of turning a walk path into its functional series.
pub trait SeriesStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn series(&self, path: &WalkPath, sched: &CheckpointSchedule) -> Result<FunctionalSeries>;
}

pub struct Incremental;

impl SeriesStrategy for Incremental {
    fn name(&self) -> &'static str {
        "incremental"
    }
    fn series(&self, path: &WalkPath, sched: &CheckpointSchedule) -> Result<FunctionalSeries> {
        functional_series(path, sched)
    }
}

pub struct Batch;

impl SeriesStrategy for Batch {
    fn name(&self) -> &'static str {
        "batch"
    }
    fn series(&self, path: &WalkPath, sched: &CheckpointSchedule) -> Result<FunctionalSeries> {
        batch_series(path, sched)
    }
}

pub struct SeriesRegistry {
    strategies: BTreeMap<&'static str, Box<dyn SeriesStrategy>>,
}

impl Default for SeriesRegistry {
    fn default() -> Self {
        let mut reg = SeriesRegistry {
            strategies: BTreeMap::new(),
        };
        reg.register(Incremental);
        reg.register(Batch);
        reg
    }
}

impl SeriesRegistry {
    pub fn register<S: SeriesStrategy + 'static>(&mut self, s: S) {
        self.strategies.insert(s.name(), Box::new(s));
    }

    pub fn get(&self, name: &str) -> Result<&dyn SeriesStrategy> {
        self.strategies
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown hull strategy '{name}'")))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.strategies.keys().copied()
    }
}
