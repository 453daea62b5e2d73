//! MDP state, action and the slot-to-slot evolution of the device/CS pair.

use crate::params::SystemParams;
use crate::rng::BernoulliDraws;

/// Battery level and VAoI at the Connected Satellite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub battery: u32,
    pub vaoi: u32,
}

impl State {
    pub const fn new(battery: u32, vaoi: u32) -> Self {
        Self { battery, vaoi }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Action {
    #[default]
    Idle,
    Transmit,
}

impl Action {
    pub fn transmits(self) -> bool {
        self == Action::Transmit
    }

    pub fn as_bit(self) -> u8 {
        self.transmits() as u8
    }

    pub fn from_bit(transmit: bool) -> Self {
        if transmit {
            Action::Transmit
        } else {
            Action::Idle
        }
    }

    /// Idle is always legal; transmitting needs at least one energy unit.
    pub fn is_legal(self, state: State) -> bool {
        !self.transmits() || state.battery > 0
    }
}

/// Finite state grid `{0..=B} x {0..=delta_max}` with a dense row-major index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpace {
    battery_capacity: u32,
    vaoi_cap: u32,
}

impl StateSpace {
    pub fn new(battery_capacity: u32, vaoi_cap: u32) -> Self {
        Self { battery_capacity, vaoi_cap }
    }

    pub fn from_params(params: &SystemParams) -> Self {
        Self::new(params.battery_capacity(), params.vaoi_cap())
    }

    pub fn battery_capacity(&self) -> u32 {
        self.battery_capacity
    }

    pub fn vaoi_cap(&self) -> u32 {
        self.vaoi_cap
    }

    pub fn len(&self) -> usize {
        (self.battery_capacity as usize + 1) * (self.vaoi_cap as usize + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, s: State) -> bool {
        s.battery <= self.battery_capacity && s.vaoi <= self.vaoi_cap
    }

    pub fn index(&self, s: State) -> usize {
        debug_assert!(self.contains(s), "{s:?} outside {self:?}");
        s.battery as usize * (self.vaoi_cap as usize + 1) + s.vaoi as usize
    }

    pub fn state(&self, index: usize) -> State {
        let width = self.vaoi_cap as usize + 1;
        State::new((index / width) as u32, (index % width) as u32)
    }

    /// States in index order.
    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.len()).map(move |i| self.state(i))
    }
}

/// One slot of the device/CS dynamics.
///
/// `b' = min(b + e - a, B)`; `delta' = z` after a successful transmission,
/// otherwise `min(delta + z, delta_max)`. Energy is spent on every attempt,
/// whatever the channel outcome.
pub fn evolve(state: State, action: Action, draws: BernoulliDraws, params: &SystemParams) -> State {
    debug_assert!(action.is_legal(state));
    let a = action.as_bit() as u32;
    let battery = (state.battery + draws.energy as u32 - a).min(params.battery_capacity());
    let vaoi = if action.transmits() && draws.channel {
        draws.version as u32
    } else {
        (state.vaoi + draws.version as u32).min(params.vaoi_cap())
    };
    State { battery, vaoi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::RawParams;

    fn draws(e: bool, c: bool, z: bool) -> BernoulliDraws {
        BernoulliDraws { energy: e, channel: c, version: z }
    }

    #[test]
    fn index_round_trips_over_grid() {
        let space = StateSpace::new(20, 30);
        assert_eq!(space.len(), 21 * 31);
        for (i, s) in space.states().enumerate() {
            assert_eq!(space.index(s), i);
            assert!(space.contains(s));
        }
        assert!(!space.contains(State::new(21, 0)));
        assert!(!space.contains(State::new(0, 31)));
    }

    #[test]
    fn transmit_illegal_on_empty_battery() {
        assert!(!Action::Transmit.is_legal(State::new(0, 5)));
        assert!(Action::Idle.is_legal(State::new(0, 5)));
        assert!(Action::Transmit.is_legal(State::new(1, 0)));
    }

    #[test]
    fn evolution_caps_both_coordinates() {
        let p = RawParams::default().validate().unwrap();
        let top = State::new(20, 30);
        assert_eq!(evolve(top, Action::Idle, draws(true, false, true), &p), top);
    }

    #[test]
    fn successful_update_resets_to_fresh_version_draw() {
        let p = RawParams::default().validate().unwrap();
        let s = State::new(3, 12);
        assert_eq!(evolve(s, Action::Transmit, draws(false, true, false), &p), State::new(2, 0));
        assert_eq!(evolve(s, Action::Transmit, draws(true, true, true), &p), State::new(3, 1));
        // failed attempt still costs energy
        assert_eq!(evolve(s, Action::Transmit, draws(false, false, true), &p), State::new(2, 13));
    }
}
