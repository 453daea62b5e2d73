use crate::model::{Action, State, StateSpace};
use crate::params::SystemParams;

/// One successor of a `(state, action)` row. `cost` is the successor's VAoI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub next: State,
    pub next_index: usize,
    pub probability: f64,
    pub cost: f64,
}

/// Sparse kernel: one row per `(state, action)`, at most eight successors.
/// Rows for illegal pairs (transmit on an empty battery) are empty.
#[derive(Debug, Clone)]
pub struct TransitionKernel {
    space: StateSpace,
    offsets: Vec<usize>,
    transitions: Vec<Transition>,
}

impl TransitionKernel {
    pub fn space(&self) -> StateSpace {
        self.space
    }

    fn row(&self, state_index: usize, action: Action) -> &[Transition] {
        let r = 2 * state_index + action.as_bit() as usize;
        &self.transitions[self.offsets[r]..self.offsets[r + 1]]
    }

    /// Successors of `(state, action)`, or `None` if the action is illegal.
    pub fn successors(&self, state: State, action: Action) -> Option<&[Transition]> {
        action
            .is_legal(state)
            .then(|| self.row(self.space.index(state), action))
    }

    pub(crate) fn row_by_index(&self, state_index: usize, action: Action) -> &[Transition] {
        self.row(state_index, action)
    }
}

pub fn build_kernel(params: &SystemParams) -> TransitionKernel {
    let space = StateSpace::from_params(params);
    let cap_b = params.battery_capacity();
    let cap_d = params.vaoi_cap();
    let beta = params.p_energy();
    let pg = params.p_generate();
    let ps = params.p_success();

    let mut offsets = Vec::with_capacity(2 * space.len() + 1);
    let mut transitions = Vec::with_capacity(space.len() * 12);
    offsets.push(0);
    let mut row: Vec<(State, f64)> = Vec::with_capacity(8);

    for s in space.states() {
        for action in [Action::Idle, Action::Transmit] {
            row.clear();
            if action.is_legal(s) {
                let (b, d) = (s.battery, s.vaoi);
                let battery: [(u32, f64); 2] = match action {
                    Action::Idle => [((b + 1).min(cap_b), beta), (b, 1.0 - beta)],
                    Action::Transmit => [(b, beta), (b - 1, 1.0 - beta)],
                };
                let up = (d + 1).min(cap_d);
                let vaoi: &[(u32, f64)] = match action {
                    Action::Idle => &[(up, pg), (d, 1.0 - pg)],
                    Action::Transmit => &[
                        (up, pg * (1.0 - ps)),
                        (d, (1.0 - pg) * (1.0 - ps)),
                        (1, pg * ps),
                        (0, (1.0 - pg) * ps),
                    ],
                };
                for &(nb, pb) in &battery {
                    for &(nd, pd) in vaoi {
                        let p = pb * pd;
                        if p > 0.0 {
                            row.push((State::new(nb, nd), p));
                        }
                    }
                }
                // merge branches that land on the same successor
                row.sort_by_key(|(st, _)| *st);
                let mut merged: Vec<(State, f64)> = Vec::with_capacity(row.len());
                for &(st, p) in &row {
                    match merged.last_mut() {
                        Some((last, acc)) if *last == st => *acc += p,
                        _ => merged.push((st, p)),
                    }
                }
                transitions.extend(merged.into_iter().map(|(next, probability)| Transition {
                    next,
                    next_index: space.index(next),
                    probability,
                    cost: next.vaoi as f64,
                }));
            }
            offsets.push(transitions.len());
        }
    }
    TransitionKernel { space, offsets, transitions }
}
