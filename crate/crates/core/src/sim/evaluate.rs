use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::State;
use crate::network::{network_avg_approx, network_avg_exact, time_average, NodeIndex};
use crate::params::SystemParams;
use crate::policy::PolicyTable;
use crate::rng::RunStreams;
use crate::sim::link::LinkStepper;
use crate::sim::ring::RingNetwork;
use crate::stats::{CompensatedSum, Estimate};

/// Where each Monte Carlo run starts recording.
///
/// The link is started in `state` and advanced `burn_in` slots before slot 0
/// of the horizon; the ring then starts with every satellite holding the
/// CS's version.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InitialCondition {
    pub state: State,
    pub burn_in: usize,
}

impl InitialCondition {
    /// `b = 0`, `delta = 0`, no burn-in.
    pub const COLD: Self = Self { state: State::new(0, 0), burn_in: 0 };

    pub fn with_burn_in(burn_in: usize) -> Self {
        Self { burn_in, ..Self::COLD }
    }
}

impl Default for InitialCondition {
    fn default() -> Self {
        Self::COLD
    }
}

/// Time averages from one simulated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub cs_avg: f64,
    /// Indexed like [`NodeIndex::all`].
    pub node_avg: Vec<f64>,
    /// Mean over satellites of the flooded per-node averages.
    pub network_avg: f64,
    /// Ring-average formula applied to this run's CS trace (expected
    /// in-transit versions in place of the sampled ones).
    pub network_avg_exact: f64,
    /// Large-horizon form computed from `cs_avg`.
    pub network_avg_approx: f64,
    pub updates: u64,
    pub harvested: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeMetrics {
    pub node: NodeIndex,
    /// Monte Carlo mean of the simulated time average.
    pub avg: Estimate,
    /// `|n| p_g` plus the unshifted CS average.
    pub approx: f64,
}

/// Aggregates over `mc_iterations` independent runs.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsSummary {
    pub runs: usize,
    pub cs: Estimate,
    /// Flooded ring simulation.
    pub network: Estimate,
    /// Closed form with shifted CS averages.
    pub network_exact: Estimate,
    /// Closed form with unshifted CS averages.
    pub network_approx: Estimate,
    pub nodes: Vec<NodeMetrics>,
    /// Mean transmissions attempted per run.
    pub updates: f64,
    /// Mean energy units spent per run; one per attempt.
    pub energy: f64,
    pub harvested: f64,
}

fn run_once(params: &SystemParams, policy: &PolicyTable, run: u64, start: InitialCondition) -> RunMetrics {
    let t_len = params.horizon();
    let m = params.satellites();
    let mut streams = RunStreams::for_run(params, run);
    let mut stepper = LinkStepper::new(params, policy, &mut streams, start.state);
    for _ in 0..start.burn_in {
        stepper.step();
    }
    let initial = stepper.state();
    let mut ring = RingNetwork::new(m, 0);
    let mut source = initial.vaoi as u64;
    let mut node_sums = vec![0u64; m];
    let mut cs_trace = Vec::with_capacity(t_len);
    let mut updates = 0u64;
    let mut harvested = 0u64;

    for _ in 0..t_len {
        for (sum, v) in node_sums.iter_mut().zip(ring.stored()) {
            *sum += source - v;
        }
        let r = stepper.step();
        cs_trace.push(r.state.vaoi);
        updates += r.action.transmits() as u64;
        harvested += r.draws.energy as u64;
        source += r.draws.version as u64;
        ring.step(source - stepper.state().vaoi as u64);
    }

    let t = t_len as f64;
    let cs_avg = time_average(&cs_trace);
    let node_avg: Vec<f64> = NodeIndex::all(params)
        .map(|n| node_sums[ring.position(n)] as f64 / t)
        .collect();
    let network_avg = node_sums.iter().sum::<u64>() as f64 / (t * m as f64);
    RunMetrics {
        cs_avg,
        node_avg,
        network_avg,
        network_avg_exact: network_avg_exact(&cs_trace, params),
        network_avg_approx: network_avg_approx(cs_avg, params),
        updates,
        harvested,
    }
}

/// Monte Carlo evaluation from the cold start `b = 0`, `delta = 0`.
pub fn evaluate_policy(params: &SystemParams, policy: &PolicyTable) -> Result<MetricsSummary> {
    evaluate_policy_from(params, policy, InitialCondition::COLD)
}

/// Runs are simulated in parallel; run `i` always uses sub-streams `i`, and
/// the reduction is in run order, so results are bit-reproducible.
pub fn evaluate_policy_from(
    params: &SystemParams,
    policy: &PolicyTable,
    start: InitialCondition,
) -> Result<MetricsSummary> {
    let runs = params.mc_iterations();
    if runs < 2 {
        return Err(Error::TooFewIterations(runs));
    }
    let per_run: Vec<RunMetrics> = (0..runs as u64)
        .into_par_iter()
        .map(|i| run_once(params, policy, i, start))
        .collect();

    let column = |f: &dyn Fn(&RunMetrics) -> f64| -> Vec<f64> { per_run.iter().map(f).collect() };
    let mean = |f: &dyn Fn(&RunMetrics) -> f64| -> f64 {
        per_run.iter().map(f).collect::<CompensatedSum>().value() / runs as f64
    };
    let cs = Estimate::from_samples(&column(&|r| r.cs_avg));
    let nodes = NodeIndex::all(params)
        .enumerate()
        .map(|(k, node)| NodeMetrics {
            node,
            avg: Estimate::from_samples(&column(&|r| r.node_avg[k])),
            approx: node.hops() as f64 * params.p_generate() + cs.mean,
        })
        .collect();
    let updates = mean(&|r| r.updates as f64);
    Ok(MetricsSummary {
        runs,
        cs,
        network: Estimate::from_samples(&column(&|r| r.network_avg)),
        network_exact: Estimate::from_samples(&column(&|r| r.network_avg_exact)),
        network_approx: Estimate::from_samples(&column(&|r| r.network_avg_approx)),
        nodes,
        updates,
        energy: updates,
        harvested: mean(&|r| r.harvested as f64),
    })
}
