use crate::model::{evolve, Action, State};
use crate::params::SystemParams;
use crate::policy::{act, PolicyTable};
use crate::rng::{draw_slot, BernoulliDraws, RunStreams};

/// What happened in one slot: state at the start, action, and draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotRecord {
    pub state: State,
    pub action: Action,
    pub draws: BernoulliDraws,
}

/// Slot-by-slot driver of the device/CS dynamics.
pub struct LinkStepper<'a> {
    params: &'a SystemParams,
    policy: &'a PolicyTable,
    streams: &'a mut RunStreams,
    state: State,
}

impl<'a> LinkStepper<'a> {
    pub fn new(
        params: &'a SystemParams,
        policy: &'a PolicyTable,
        streams: &'a mut RunStreams,
        initial: State,
    ) -> Self {
        Self { params, policy, streams, state: initial }
    }

    pub fn state(&self) -> State {
        self.state
    }

    /// Acts in the current state, draws the slot's randomness and advances.
    pub fn step(&mut self) -> SlotRecord {
        let action = act(self.policy, self.state, self.streams.decision());
        let draws = draw_slot(self.streams, self.params);
        let record = SlotRecord { state: self.state, action, draws };
        self.state = evolve(self.state, action, draws, self.params);
        record
    }
}

/// Slots `0..T` of one run. Entry `t` of `draws` drives the move to `t + 1`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinkTrace {
    pub battery: Vec<u32>,
    pub action: Vec<Action>,
    pub draws: Vec<BernoulliDraws>,
    pub vaoi: Vec<u32>,
}

impl LinkTrace {
    pub fn len(&self) -> usize {
        self.vaoi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vaoi.is_empty()
    }

    /// `V_S(t) - V_S(t-1)`; zero at slot 0.
    pub fn version_increments(&self) -> Vec<u8> {
        std::iter::once(0)
            .chain(self.draws.iter().take(self.len().saturating_sub(1)).map(|d| d.version as u8))
            .collect()
    }

    pub fn updates(&self) -> usize {
        self.action.iter().filter(|a| a.transmits()).count()
    }

    pub fn harvested(&self) -> usize {
        self.draws.iter().filter(|d| d.energy).count()
    }
}

/// Runs `T` slots from the cold start `b = 0`, `delta = 0`.
pub fn simulate_link(params: &SystemParams, policy: &PolicyTable, streams: &mut RunStreams) -> LinkTrace {
    simulate_link_from(params, policy, streams, State::new(0, 0))
}

pub fn simulate_link_from(
    params: &SystemParams,
    policy: &PolicyTable,
    streams: &mut RunStreams,
    initial: State,
) -> LinkTrace {
    let t_len = params.horizon();
    let mut trace = LinkTrace {
        battery: Vec::with_capacity(t_len),
        action: Vec::with_capacity(t_len),
        draws: Vec::with_capacity(t_len),
        vaoi: Vec::with_capacity(t_len),
    };
    let mut stepper = LinkStepper::new(params, policy, streams, initial);
    for _ in 0..t_len {
        let r = stepper.step();
        trace.battery.push(r.state.battery);
        trace.action.push(r.action);
        trace.draws.push(r.draws);
        trace.vaoi.push(r.state.vaoi);
    }
    trace
}
