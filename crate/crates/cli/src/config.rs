use std::path::PathBuf;

use clap::{Args, ValueEnum};
use hullwalk::hullstream::CheckpointSchedule;
use hullwalk::montecarlo::Process;
use serde::{Deserialize, Serialize};

use crate::Failure;

/// Default cap on `steps * replicates`.
pub const DEFAULT_BUDGET: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProcessArg {
    Walk,
    CenterOfMass,
}

impl From<ProcessArg> for Process {
    fn from(p: ProcessArg) -> Self {
        match p {
            ProcessArg::Walk => Process::Walk,
            ProcessArg::CenterOfMass => Process::CenterOfMass,
        }
    }
}

impl ProcessArg {
    pub fn as_str(self) -> &'static str {
        match self {
            ProcessArg::Walk => "walk",
            ProcessArg::CenterOfMass => "center-of-mass",
        }
    }
}

/// Settings of one `simulate` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct RunConfig {
    /// lattice | hex6 | pr[:dx,dy] | gauss[:s11,s12,s22[,mx,my]] | st-binary | st-gauss | pareto:alpha[,dx,dy]
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value_t = 1000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// geom:START,RATIO or list:N1,N2,...
    #[arg(long, default_value = "geom:10,1.25")]
    pub schedule: String,
    #[arg(long, value_enum, default_value_t = ProcessArg::Walk)]
    pub process: ProcessArg,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest allowed steps * replicates.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: f64,
    /// Skip the budget check.
    #[arg(long)]
    pub force: bool,
}

impl RunConfig {
    /// Command-line arguments that parse back to this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![
            "--model".into(),
            self.model.clone(),
            "--steps".into(),
            self.steps.to_string(),
            "--replicates".into(),
            self.replicates.to_string(),
            "--seed".into(),
            self.seed.to_string(),
            "--schedule".into(),
            self.schedule.clone(),
            "--process".into(),
            self.process.as_str().into(),
            "--budget".into(),
            self.budget.to_string(),
        ];
        if let Some(out) = &self.out {
            args.push("--out".into());
            args.push(out.display().to_string());
        }
        if self.force {
            args.push("--force".into());
        }
        args
    }

    pub fn check_budget(&self) -> Result<(), Failure> {
        let work = self.steps as f64 * self.replicates as f64;
        if !self.force && work > self.budget {
            return Err(Failure::Config(format!(
                "steps * replicates = {work:e} exceeds the budget of {:e}; pass --force to run anyway",
                self.budget
            )));
        }
        Ok(())
    }

    pub fn checkpoint_schedule(&self) -> Result<CheckpointSchedule, Failure> {
        parse_schedule(&self.schedule)
    }
}

pub fn parse_schedule(spec: &str) -> Result<CheckpointSchedule, Failure> {
    let bad = || {
        Failure::Config(format!(
            "bad schedule '{spec}' (expected geom:START,RATIO or list:N1,N2,...)"
        ))
    };
    let (kind, body) = spec.trim().split_once(':').ok_or_else(bad)?;
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    match kind {
        "geom" => {
            let [start, ratio] = parts[..] else {
                return Err(bad());
            };
            Ok(CheckpointSchedule::Geometric {
                start: start.parse().map_err(|_| bad())?,
                ratio: ratio.parse().map_err(|_| bad())?,
            })
        }
        "list" => {
            let list = parts
                .iter()
                .map(|p| p.parse())
                .collect::<Result<Vec<usize>, _>>();
            Ok(CheckpointSchedule::Explicit(list.map_err(|_| bad())?))
        }
        _ => Err(bad()),
    }
}

pub fn format_schedule(s: &CheckpointSchedule) -> String {
    match s {
        CheckpointSchedule::Geometric { start, ratio } => format!("geom:{start},{ratio}"),
        CheckpointSchedule::Explicit(list) => {
            let items: Vec<String> = list.iter().map(|n| n.to_string()).collect();
            format!("list:{}", items.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::Parser;

    use super::*;
    use crate::{Cli, Command};

    fn sample() -> RunConfig {
        RunConfig {
            model: "gauss:2,0.5,1,0.1,0".into(),
            steps: 12_345,
            replicates: 77,
            seed: 9,
            schedule: "list:10,100,12345".into(),
            process: ProcessArg::CenterOfMass,
            out: Some(PathBuf::from("runs/out.csv")),
            budget: 2.5e9,
            force: true,
        }
    }

    #[test]
    fn args_round_trip() {
        for cfg in [
            sample(),
            RunConfig {
                out: None,
                force: false,
                ..sample()
            },
        ] {
            let argv = ["hullwalk", "simulate"]
                .into_iter()
                .map(String::from)
                .chain(cfg.to_args());
            match Cli::try_parse_from(argv).unwrap().command {
                Command::Simulate(parsed) => assert_eq!(parsed, cfg),
                _ => panic!("wrong subcommand"),
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let cfg = sample();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
    }

    #[test]
    fn schedules() {
        for spec in ["geom:10,1.25", "list:1,5,9"] {
            assert_eq!(format_schedule(&parse_schedule(spec).unwrap()), spec);
        }
        for bad in ["geom:10", "list:a", "log:1,2", "geom"] {
            assert!(parse_schedule(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn budget_guard() {
        let big = RunConfig {
            steps: 1_000_000,
            replicates: 100_000,
            force: false,
            budget: DEFAULT_BUDGET,
            ..sample()
        };
        assert!(big.check_budget().is_err());
        assert!(RunConfig {
            force: true,
            ..big.clone()
        }
        .check_budget()
        .is_ok());
        assert!(RunConfig {
            replicates: 10_000,
            ..big
        }
        .check_budget()
        .is_ok());
    }
}
