use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};

use vaoi_core::config::Config;
use vaoi_core::experiments::{self, ExperimentKind, ExperimentSpec};
use vaoi_core::mdp::ThresholdStructure;
use vaoi_core::network::{network_avg_approx, network_constant};

#[derive(Parser)]
#[command(name = "vaoi", version, about = "Optimal VAoI update policies for an energy-harvesting source and a LEO ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// TOML scenario file; omitted keys take the reference defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for CSV outputs.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the optimal policy (policy.csv, values.csv).
    Solve(Common),
    /// Optimal action map and per-battery thresholds.
    Structure(Common),
    /// Network VAoI of optimal, greedy and RS policies across beta.
    BetaSweep(Common),
    /// Exact vs large-horizon network VAoI across T.
    HorizonError(Common),
    /// Monte Carlo evaluation of one policy (metrics.csv, nodes.csv).
    Evaluate {
        #[command(flatten)]
        common: Common,
        /// Also write the first run's slot trace to trace.csv.
        #[arg(long)]
        trace: bool,
    },
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let (kind, common, trace) = match cli.command {
        Command::Solve(c) => (ExperimentKind::Solve, c, false),
        Command::Structure(c) => (ExperimentKind::Structure, c, false),
        Command::BetaSweep(c) => (ExperimentKind::BetaSweep, c, false),
        Command::HorizonError(c) => (ExperimentKind::HorizonError, c, false),
        Command::Evaluate { common, trace } => (ExperimentKind::Evaluate, common, trace),
    };
    let config = match &common.config {
        Some(path) => Config::load(path).with_context(|| format!("loading {}", path.display()))?,
        None => Config::from_params(vaoi_core::RawParams::default().validate()?),
    };
    let mut spec = ExperimentSpec::new(kind, config, &common.out)?;
    spec.dump_trace = trace;
    let started = Instant::now();

    match kind {
        ExperimentKind::Solve => {
            let r = experiments::run_solve(&spec)?;
            let params = &spec.config.params;
            println!("average VAoI at CS      {:.6}", r.average_cost);
            println!("network VAoI (large T)  {:.6}", network_avg_approx(r.average_cost, params));
            println!("network constant        {:.6}", network_constant(params));
            println!("iterations {}  span {:.3e}", r.iterations_used, r.span_at_exit);
        }
        ExperimentKind::Structure => {
            let report = experiments::run_structure(&spec)?;
            println!("average VAoI at CS {:.6}", report.solution.average_cost);
            match report.structure {
                ThresholdStructure::Threshold(t) => {
                    for (b, th) in t.0.iter().enumerate() {
                        println!("b={b:<3} threshold {}", th.map_or("inf".into(), |v| v.to_string()));
                    }
                    println!("non-increasing in battery: {}", t.non_increasing_in_battery());
                }
                ThresholdStructure::NotThreshold { battery, vaoi } => {
                    println!("not threshold-type: action drops back to idle at b={battery}, delta={vaoi}");
                }
            }
        }
        ExperimentKind::BetaSweep => {
            for r in experiments::run_beta_sweep(&spec)? {
                let alpha = r.alpha.map_or(String::new(), |a| format!("({a})"));
                println!(
                    "beta={:.2} {:>8}{:<6} network {:.4} ± {:.4}",
                    r.beta, r.policy, alpha, r.avg_vaoi_network, r.se
                );
            }
        }
        ExperimentKind::HorizonError => {
            for r in experiments::run_horizon_error(&spec)? {
                println!(
                    "T={:<6} exact {:.4} approx {:.4} error {:.2}%",
                    r.horizon, r.avg_vaoi_exact, r.avg_vaoi_approx, r.error_pct
                );
            }
        }
        ExperimentKind::Evaluate => {
            let (row, _) = experiments::run_evaluate(&spec)?;
            println!(
                "{} CS {:.4} ± {:.4}  network {:.4} ± {:.4} (large-T {:.4})  updates {:.1}",
                row.policy, row.avg_vaoi_cs, row.se_cs, row.avg_vaoi_network, row.se, row.avg_vaoi_network_approx, row.updates
            );
        }
    }
    eprintln!("wrote {} in {:.1?}", spec.out_dir.display(), started.elapsed());
    Ok(())
}
