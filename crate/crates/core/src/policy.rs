//! Stationary update policies as per-state transmit probabilities.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{Action, State, StateSpace};
use crate::params::{check_probability, SystemParams};

/// Transmit probability for every state of the grid, including states a
/// given policy never reaches. Battery-0 rows are always zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyTable {
    space: StateSpace,
    transmit: Vec<f64>,
}

impl PolicyTable {
    pub fn new(space: StateSpace, transmit: Vec<f64>) -> Result<Self> {
        if transmit.len() != space.len() {
            return Err(Error::Policy(format!(
                "expected {} entries, got {}",
                space.len(),
                transmit.len()
            )));
        }
        for (i, &p) in transmit.iter().enumerate() {
            let s = space.state(i);
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Policy(format!("probability {p} at {s:?}")));
            }
            if s.battery == 0 && p != 0.0 {
                return Err(Error::Policy(format!("nonzero transmit probability at empty battery {s:?}")));
            }
        }
        Ok(Self { space, transmit })
    }

    /// Builds a table from a per-state probability; battery-0 rows are zeroed.
    pub fn from_fn(space: StateSpace, mut f: impl FnMut(State) -> f64) -> Self {
        let transmit = space
            .states()
            .map(|s| if s.battery == 0 { 0.0 } else { f(s) })
            .collect();
        Self { space, transmit }
    }

    pub fn from_actions(space: StateSpace, actions: &[Action]) -> Self {
        assert_eq!(actions.len(), space.len());
        Self::from_fn(space, |s| actions[space.index(s)].as_bit() as f64)
    }

    pub fn all_idle(space: StateSpace) -> Self {
        Self::from_fn(space, |_| 0.0)
    }

    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn transmit_probability(&self, state: State) -> f64 {
        self.transmit[self.space.index(state)]
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.transmit
    }

    pub fn is_deterministic(&self) -> bool {
        self.transmit.iter().all(|&p| p == 0.0 || p == 1.0)
    }

    /// Deterministic action at `state`; `None` for strictly randomized entries.
    pub fn action(&self, state: State) -> Option<Action> {
        match self.transmit_probability(state) {
            0.0 => Some(Action::Idle),
            1.0 => Some(Action::Transmit),
            _ => None,
        }
    }
}

/// Transmit whenever the battery is nonempty.
pub fn greedy_policy(params: &SystemParams) -> PolicyTable {
    PolicyTable::from_fn(StateSpace::from_params(params), |_| 1.0)
}

/// Randomized stationary policy: transmit with probability `alpha` whenever
/// the battery is nonempty.
pub fn rs_policy(params: &SystemParams, alpha: f64) -> Result<PolicyTable> {
    check_probability("alpha", alpha)?;
    Ok(PolicyTable::from_fn(StateSpace::from_params(params), |_| alpha))
}

/// Samples an action. Deterministic entries consume no randomness.
pub fn act<R: Rng + ?Sized>(policy: &PolicyTable, state: State, rng: &mut R) -> Action {
    if state.battery == 0 {
        return Action::Idle;
    }
    let p = policy.transmit_probability(state);
    if p <= 0.0 {
        Action::Idle
    } else if p >= 1.0 {
        Action::Transmit
    } else {
        Action::from_bit(rng.random_bool(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::RawParams;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params() -> SystemParams {
        RawParams::default().validate().unwrap()
    }

    #[test]
    fn greedy_entries() {
        let g = greedy_policy(&params());
        assert_eq!(g.transmit_probability(State::new(0, 10)), 0.0);
        assert_eq!(g.transmit_probability(State::new(1, 0)), 1.0);
        assert_eq!(g.transmit_probability(State::new(20, 30)), 1.0);
        assert!(g.is_deterministic());
    }

    #[test]
    fn rs_entries_and_limits() {
        let p = params();
        assert_eq!(rs_policy(&p, 1.0).unwrap(), greedy_policy(&p));
        let idle = rs_policy(&p, 0.0).unwrap();
        assert_eq!(idle, PolicyTable::all_idle(StateSpace::from_params(&p)));
        let rs = rs_policy(&p, 0.3).unwrap();
        assert_eq!(rs.transmit_probability(State::new(5, 2)), 0.3);
        assert_eq!(rs.transmit_probability(State::new(0, 2)), 0.0);
        assert!(!rs.is_deterministic());
        assert!(rs_policy(&p, 1.01).is_err());
        assert!(rs_policy(&p, -0.5).is_err());
    }

    #[test]
    fn deterministic_act() {
        let space = StateSpace::new(5, 10);
        let table = PolicyTable::from_fn(space, |s| (s.vaoi >= 7) as u8 as f64);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(act(&table, State::new(3, 7), &mut rng), Action::Transmit);
        assert_eq!(act(&table, State::new(3, 6), &mut rng), Action::Idle);
        assert_eq!(act(&table, State::new(0, 9), &mut rng), Action::Idle);
    }

    #[test]
    fn randomized_act_frequency() {
        let table = rs_policy(&params(), 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| act(&table, State::new(4, 4), &mut rng).transmits())
            .count();
        let frac = hits as f64 / n as f64;
        assert!((frac - 0.5).abs() < 0.01, "{frac}");
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        let space = StateSpace::new(2, 2);
        let mut probs = vec![0.0; space.len()];
        probs[0] = 1.0;
        assert!(PolicyTable::new(space, probs).is_err());
        assert!(PolicyTable::new(space, vec![0.0; 3]).is_err());
        let mut probs = vec![0.0; space.len()];
        probs[5] = 1.5;
        assert!(PolicyTable::new(space, probs).is_err());
    }

    proptest! {
        #[test]
        fn never_transmits_on_empty_battery(
            probs in prop::collection::vec(0.0f64..=1.0, 4 * 6),
            vaoi in 0u32..=5,
            seed in any::<u64>(),
        ) {
            let space = StateSpace::new(3, 5);
            // bypass the constructor's battery-0 check on purpose
            let table = PolicyTable { space, transmit: probs };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..20 {
                prop_assert_eq!(act(&table, State::new(0, vaoi), &mut rng), Action::Idle);
            }
        }
    }
}
