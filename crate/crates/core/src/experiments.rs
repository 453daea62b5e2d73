//! The studies behind the CLI: solving for the optimal policy, its threshold
//! structure, the energy-arrival sweep, the horizon-error study and plain
//! policy evaluation.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::str::FromStr;

use crate::config::{Config, PolicyChoice};
use crate::error::{Error, Result};
use crate::export::{self, HorizonRow, MetricsRow};
use crate::mdp::{build_kernel, extract_thresholds, solve_rvia_with, SolverResult, ThresholdStructure};
use crate::params::{check_probability, SystemParams};
use crate::policy::{greedy_policy, rs_policy, PolicyTable};
use crate::rng::RunStreams;
use crate::sim::{evaluate_policy_from, simulate_link, MetricsSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Solve,
    Structure,
    BetaSweep,
    HorizonError,
    Evaluate,
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "solve" => Self::Solve,
            "structure" => Self::Structure,
            "beta-sweep" => Self::BetaSweep,
            "horizon-error" => Self::HorizonError,
            "evaluate" => Self::Evaluate,
            other => return Err(Error::Experiment(format!("unknown experiment {other:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub config: Config,
    pub out_dir: PathBuf,
    /// `evaluate` only: also dump the first run's link trace.
    pub dump_trace: bool,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind, config: Config, out_dir: impl Into<PathBuf>) -> Result<Self> {
        let spec = Self { kind, config, out_dir: out_dir.into(), dump_trace: false };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let c = &self.config;
        match self.kind {
            ExperimentKind::BetaSweep => {
                if c.betas.is_empty() {
                    return Err(Error::Experiment("beta grid is empty".into()));
                }
                for &b in &c.betas {
                    c.params.with_energy(b)?;
                }
                for &a in &c.alphas {
                    check_probability("alpha", a)?;
                }
            }
            ExperimentKind::HorizonError => {
                if c.horizons.is_empty() {
                    return Err(Error::Experiment("horizon grid is empty".into()));
                }
                for &t in &c.horizons {
                    c.params.with_horizon(t)?;
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn create(&self, name: &str) -> Result<BufWriter<File>> {
        fs::create_dir_all(&self.out_dir)?;
        Ok(BufWriter::new(File::create(self.out_dir.join(name))?))
    }
}

pub fn solve(config: &Config, params: &SystemParams) -> Result<SolverResult> {
    solve_rvia_with(&build_kernel(params), &config.solver)
}

fn policy_for(config: &Config, params: &SystemParams, choice: PolicyChoice) -> Result<(String, Option<f64>, PolicyTable)> {
    Ok(match choice {
        PolicyChoice::Optimal => ("optimal".into(), None, solve(config, params)?.policy),
        PolicyChoice::Greedy => ("greedy".into(), None, greedy_policy(params)),
        PolicyChoice::Randomized(alpha) => ("rs".into(), Some(alpha), rs_policy(params, alpha)?),
    })
}

/// Solves at the configured parameters; writes `policy.csv` and `values.csv`.
pub fn run_solve(spec: &ExperimentSpec) -> Result<SolverResult> {
    let result = solve(&spec.config, &spec.config.params)?;
    export::write_policy(spec.create("policy.csv")?, &result.policy)?;
    export::write_values(spec.create("values.csv")?, result.policy.space(), &result.relative_values)?;
    Ok(result)
}

pub struct StructureReport {
    pub solution: SolverResult,
    pub structure: ThresholdStructure,
}

/// Solves and extracts thresholds; writes `structure.csv` (the action map)
/// and, when the policy is threshold-type, `thresholds.csv`.
pub fn run_structure(spec: &ExperimentSpec) -> Result<StructureReport> {
    let solution = solve(&spec.config, &spec.config.params)?;
    let structure = extract_thresholds(&solution.policy);
    export::write_policy(spec.create("structure.csv")?, &solution.policy)?;
    if let ThresholdStructure::Threshold(t) = &structure {
        export::write_thresholds(spec.create("thresholds.csv")?, t)?;
    }
    Ok(StructureReport { solution, structure })
}

/// Network VAoI of the optimal, greedy and every RS(alpha) policy at each
/// energy arrival probability of the grid.
pub fn beta_sweep(config: &Config) -> Result<Vec<MetricsRow>> {
    let mut rows = Vec::new();
    for &beta in &config.betas {
        let params = config.params.with_energy(beta)?;
        let mut choices = vec![PolicyChoice::Optimal, PolicyChoice::Greedy];
        choices.extend(config.alphas.iter().map(|&a| PolicyChoice::Randomized(a)));
        for choice in choices {
            let (name, alpha, policy) = policy_for(config, &params, choice)?;
            let m = evaluate_policy_from(&params, &policy, config.start)?;
            rows.push(MetricsRow::new(name, beta, alpha, &m));
        }
    }
    Ok(rows)
}

/// Writes `beta_sweep.csv`.
pub fn run_beta_sweep(spec: &ExperimentSpec) -> Result<Vec<MetricsRow>> {
    let rows = beta_sweep(&spec.config)?;
    export::write_rows(spec.create("beta_sweep.csv")?, &rows)?;
    Ok(rows)
}

/// Exact (shifted) against large-horizon network VAoI for each horizon,
/// evaluated on the same simulated runs.
pub fn horizon_error(config: &Config) -> Result<Vec<HorizonRow>> {
    // the solver does not depend on T
    let (_, _, policy) = policy_for(config, &config.params, config.policy)?;
    config
        .horizons
        .iter()
        .map(|&t| {
            let params = config.params.with_horizon(t)?;
            let m = evaluate_policy_from(&params, &policy, config.start)?;
            let exact = m.network_exact.mean;
            let approx = m.network_approx.mean;
            Ok(HorizonRow {
                horizon: t,
                avg_vaoi_exact: exact,
                avg_vaoi_approx: approx,
                error_pct: 100.0 * (approx - exact).abs() / exact,
                se_exact: m.network_exact.se,
            })
        })
        .collect()
}

/// Writes `horizon_error.csv`.
pub fn run_horizon_error(spec: &ExperimentSpec) -> Result<Vec<HorizonRow>> {
    let rows = horizon_error(&spec.config)?;
    export::write_rows(spec.create("horizon_error.csv")?, &rows)?;
    Ok(rows)
}

/// Evaluates the configured policy; writes `metrics.csv`, `nodes.csv` and
/// optionally `trace.csv`.
pub fn run_evaluate(spec: &ExperimentSpec) -> Result<(MetricsRow, MetricsSummary)> {
    let c = &spec.config;
    let (name, alpha, policy) = policy_for(c, &c.params, c.policy)?;
    let summary = evaluate_policy_from(&c.params, &policy, c.start)?;
    let row = MetricsRow::new(name, c.params.p_energy(), alpha, &summary);
    export::write_rows(spec.create("metrics.csv")?, std::slice::from_ref(&row))?;
    export::write_nodes(spec.create("nodes.csv")?, &summary)?;
    if spec.dump_trace {
        let trace = simulate_link(&c.params, &policy, &mut RunStreams::for_run(&c.params, 0));
        export::write_trace(spec.create("trace.csv")?, &trace)?;
    }
    Ok((row, summary))
}
