use crate::policy::PolicyTable;

/// Per-battery switching point: the smallest VAoI at which the policy
/// transmits, `None` when it never does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds(pub Vec<Option<u32>>);

impl Thresholds {
    pub fn get(&self, battery: u32) -> Option<u32> {
        self.0[battery as usize]
    }

    /// Thresholds never rise as the battery fills. `None` ranks above every
    /// finite threshold. The empty-battery row is excluded.
    pub fn non_increasing_in_battery(&self) -> bool {
        let rank = |t: Option<u32>| t.map_or(u64::MAX, u64::from);
        self.0.iter().skip(1).zip(self.0.iter().skip(2)).all(|(a, b)| rank(*b) <= rank(*a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThresholdStructure {
    Threshold(Thresholds),
    /// First place where the action drops from transmit back to idle as VAoI
    /// grows.
    NotThreshold { battery: u32, vaoi: u32 },
}

impl ThresholdStructure {
    pub fn thresholds(&self) -> Option<&Thresholds> {
        match self {
            ThresholdStructure::Threshold(t) => Some(t),
            ThresholdStructure::NotThreshold { .. } => None,
        }
    }
}

/// Checks that, for every battery level, actions are non-decreasing in VAoI.
///
/// Panics on a randomized policy.
pub fn extract_thresholds(policy: &PolicyTable) -> ThresholdStructure {
    assert!(policy.is_deterministic(), "threshold extraction needs a deterministic policy");
    let space = policy.space();
    let mut out = Vec::with_capacity(space.battery_capacity() as usize + 1);
    for b in 0..=space.battery_capacity() {
        let mut first = None;
        for d in 0..=space.vaoi_cap() {
            let tx = policy.transmit_probability(crate::model::State::new(b, d)) == 1.0;
            match (first, tx) {
                (None, true) => first = Some(d),
                (Some(_), false) => return ThresholdStructure::NotThreshold { battery: b, vaoi: d },
                _ => {}
            }
        }
        out.push(first);
    }
    ThresholdStructure::Threshold(Thresholds(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StateSpace;

    #[test]
    fn all_idle_has_infinite_thresholds() {
        let t = extract_thresholds(&PolicyTable::all_idle(StateSpace::new(4, 9)));
        assert_eq!(t, ThresholdStructure::Threshold(Thresholds(vec![None; 5])));
    }

    #[test]
    fn constructed_threshold_policy() {
        let space = StateSpace::new(4, 9);
        let p = PolicyTable::from_fn(space, |s| (s.vaoi >= 3) as u8 as f64);
        let t = extract_thresholds(&p);
        let th = t.thresholds().unwrap();
        assert_eq!(th.0, vec![None, Some(3), Some(3), Some(3), Some(3)]);
        assert!(th.non_increasing_in_battery());
    }

    #[test]
    fn detects_non_monotone_row() {
        let space = StateSpace::new(2, 5);
        let p = PolicyTable::from_fn(space, |s| (s.battery == 2 && s.vaoi == 1) as u8 as f64);
        assert_eq!(extract_thresholds(&p), ThresholdStructure::NotThreshold { battery: 2, vaoi: 2 });
    }

    #[test]
    fn battery_ordering() {
        assert!(Thresholds(vec![None, None, Some(4), Some(2)]).non_increasing_in_battery());
        assert!(!Thresholds(vec![None, Some(2), Some(4)]).non_increasing_in_battery());
        assert!(!Thresholds(vec![None, Some(2), None]).non_increasing_in_battery());
    }
}
