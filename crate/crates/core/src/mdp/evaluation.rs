use crate::mdp::TransitionKernel;
use crate::model::{Action, State};
use crate::policy::PolicyTable;
use crate::stats::CompensatedSum;

/// Pushes a state distribution one slot forward under `policy`.
fn advance(kernel: &TransitionKernel, policy: &PolicyTable, dist: &[f64]) -> Vec<f64> {
    let space = kernel.space();
    let mut next = vec![0.0; space.len()];
    for (i, &mass) in dist.iter().enumerate() {
        if mass == 0.0 {
            continue;
        }
        let tx = policy.transmit_probability(space.state(i));
        for (action, weight) in [(Action::Idle, 1.0 - tx), (Action::Transmit, tx)] {
            if weight == 0.0 {
                continue;
            }
            for t in kernel.row_by_index(i, action) {
                next[t.next_index] += mass * weight * t.probability;
            }
        }
    }
    next
}

fn mean_vaoi(kernel: &TransitionKernel, dist: &[f64]) -> f64 {
    let space = kernel.space();
    dist.iter()
        .enumerate()
        .map(|(i, p)| p * space.state(i).vaoi as f64)
        .collect::<CompensatedSum>()
        .value()
}

/// `(1/T) sum_{t<T} E[delta(t)]` from a fixed start, computed exactly by
/// propagating the state distribution.
pub fn finite_horizon_average(kernel: &TransitionKernel, policy: &PolicyTable, start: State, horizon: usize) -> f64 {
    let space = kernel.space();
    let mut dist = vec![0.0; space.len()];
    dist[space.index(start)] = 1.0;
    let mut total = CompensatedSum::default();
    for _ in 0..horizon {
        total.add(mean_vaoi(kernel, &dist));
        dist = advance(kernel, policy, &dist);
    }
    total.value() / horizon as f64
}

/// Long-run state distribution under `policy` by power iteration from
/// `start`; stops when successive iterates differ by less than `tolerance`
/// in total variation.
pub fn stationary_distribution(
    kernel: &TransitionKernel,
    policy: &PolicyTable,
    start: State,
    tolerance: f64,
    max_iterations: usize,
) -> Option<Vec<f64>> {
    let space = kernel.space();
    let mut dist = vec![0.0; space.len()];
    dist[space.index(start)] = 1.0;
    for _ in 0..max_iterations {
        let next = advance(kernel, policy, &dist);
        let tv: f64 = next.iter().zip(&dist).map(|(a, b)| (a - b).abs()).sum();
        dist = next;
        if tv < tolerance {
            return Some(dist);
        }
    }
    None
}

/// Stationary mean VAoI, the long-run average cost of `policy`.
pub fn stationary_average(kernel: &TransitionKernel, dist: &[f64]) -> f64 {
    mean_vaoi(kernel, dist)
}
