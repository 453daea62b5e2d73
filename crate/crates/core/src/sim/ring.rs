use crate::model::State;
use crate::network::NodeIndex;
use crate::params::SystemParams;
use crate::policy::PolicyTable;
use crate::rng::RunStreams;
use crate::sim::link::{LinkStepper, LinkTrace};

/// Satellites on a bidirectional ring, position 0 being the Connected
/// Satellite. Every slot each node sends its stored version to both
/// neighbours; a message takes one slot to cross a link and the receiver
/// keeps the freshest version it has seen.
#[derive(Debug, Clone)]
pub struct RingNetwork {
    stored: Vec<u64>,
    /// Messages in flight, one per sender, delivered next slot.
    in_flight: Vec<u64>,
}

impl RingNetwork {
    /// All satellites start out holding `initial_version`.
    pub fn new(satellites: usize, initial_version: u64) -> Self {
        Self {
            stored: vec![initial_version; satellites],
            in_flight: vec![initial_version; satellites],
        }
    }

    pub fn satellites(&self) -> usize {
        self.stored.len()
    }

    /// Ring position of a signed hop offset.
    pub fn position(&self, node: NodeIndex) -> usize {
        node.value().rem_euclid(self.satellites() as i32) as usize
    }

    pub fn stored(&self) -> &[u64] {
        &self.stored
    }

    /// Advances one slot: delivers last slot's messages, sends new ones, and
    /// installs the CS's new version.
    pub fn step(&mut self, cs_version: u64) {
        let m = self.satellites();
        self.in_flight.copy_from_slice(&self.stored);
        for pos in 1..m {
            let left = self.in_flight[pos - 1];
            let right = self.in_flight[(pos + 1) % m];
            self.stored[pos] = self.stored[pos].max(left).max(right);
        }
        self.stored[0] = cs_version;
    }
}

/// Per-slot versions at the source and every satellite.
#[derive(Debug, Clone)]
pub struct RingTrace {
    pub link: LinkTrace,
    pub source_version: Vec<u64>,
    /// `[ring position][slot]`.
    pub stored_version: Vec<Vec<u64>>,
}

impl RingTrace {
    pub fn satellites(&self) -> usize {
        self.stored_version.len()
    }

    fn position(&self, node: NodeIndex) -> usize {
        node.value().rem_euclid(self.satellites() as i32) as usize
    }

    pub fn node_versions(&self, node: NodeIndex) -> &[u64] {
        &self.stored_version[self.position(node)]
    }

    /// `V_S(t) - V_n(t)` for every slot.
    pub fn node_vaoi(&self, node: NodeIndex) -> Vec<u64> {
        self.source_version
            .iter()
            .zip(self.node_versions(node))
            .map(|(s, v)| s - v)
            .collect()
    }
}

pub fn simulate_ring(params: &SystemParams, policy: &PolicyTable, streams: &mut RunStreams) -> RingTrace {
    simulate_ring_from(params, policy, streams, State::new(0, 0))
}

/// The CS holds `V_S(t) - delta_0(t)`; when the cap truncates delta_0 the CS
/// is treated as having skipped forward to the oldest still-counted version.
pub fn simulate_ring_from(
    params: &SystemParams,
    policy: &PolicyTable,
    streams: &mut RunStreams,
    initial: State,
) -> RingTrace {
    let t_len = params.horizon();
    let m = params.satellites();
    let mut link = LinkTrace::default();
    let mut source_version = Vec::with_capacity(t_len);
    let mut stored_version = vec![Vec::with_capacity(t_len); m];

    let mut source = initial.vaoi as u64;
    let mut ring = RingNetwork::new(m, 0);
    let mut stepper = LinkStepper::new(params, policy, streams, initial);
    for _ in 0..t_len {
        for (pos, v) in ring.stored().iter().enumerate() {
            stored_version[pos].push(*v);
        }
        source_version.push(source);

        let r = stepper.step();
        link.battery.push(r.state.battery);
        link.action.push(r.action);
        link.draws.push(r.draws);
        link.vaoi.push(r.state.vaoi);

        source += r.draws.version as u64;
        ring.step(source - stepper.state().vaoi as u64);
    }
    RingTrace { link, source_version, stored_version }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::node_vaoi_from_cs;
    use crate::params::RawParams;
    use crate::policy::{greedy_policy, rs_policy};

    fn params(n: u32, t: usize, seed: u64) -> SystemParams {
        RawParams { n_ring_nodes_minus_one: n, horizon: t, rng_seed: seed, p_energy: 0.3, ..Default::default() }
            .validate()
            .unwrap()
    }

    #[test]
    fn single_satellite_reduces_to_link() {
        let p = params(0, 400, 3);
        let policy = greedy_policy(&p);
        let ring = simulate_ring(&p, &policy, &mut RunStreams::for_run(&p, 0));
        let link = crate::sim::simulate_link(&p, &policy, &mut RunStreams::for_run(&p, 0));
        assert_eq!(ring.link, link);
        let d0: Vec<u64> = link.vaoi.iter().map(|&d| d as u64).collect();
        assert_eq!(ring.node_vaoi(NodeIndex::CONNECTED), d0);
    }

    #[test]
    fn frozen_cs_floods_initial_version() {
        // N = 8: the farthest satellites are 4 hops out
        let mut ring = RingNetwork::new(9, 0);
        for _ in 0..3 {
            ring.step(5);
        }
        assert_eq!(ring.stored(), &[5, 5, 5, 0, 0, 0, 0, 5, 5]);
        for _ in 0..2 {
            ring.step(5);
        }
        assert!(ring.stored().iter().all(|&v| v == 5));
    }

    #[test]
    fn versions_monotone_and_vaoi_nonnegative() {
        let p = params(8, 300, 9);
        let ring = simulate_ring(&p, &greedy_policy(&p), &mut RunStreams::for_run(&p, 4));
        for w in ring.source_version.windows(2) {
            assert!(w[1] - w[0] <= 1);
        }
        for node in NodeIndex::all(&p) {
            let v = ring.node_versions(node);
            assert!(v.windows(2).all(|w| w[0] <= w[1]));
            assert!(v.iter().zip(&ring.source_version).all(|(n, s)| n <= s));
        }
    }

    #[test]
    fn flooding_matches_closed_form_shift() {
        let p = params(8, 200, 21);
        let policy = rs_policy(&p, 0.6).unwrap();
        for run in 0..10 {
            let ring = simulate_ring(&p, &policy, &mut RunStreams::for_run(&p, run));
            let inc = ring.link.version_increments();
            for node in NodeIndex::all(&p) {
                assert_eq!(ring.node_vaoi(node), node_vaoi_from_cs(&ring.link.vaoi, node, &inc));
            }
        }
    }

    #[test]
    fn cap_truncation_keeps_ring_consistent() {
        // tiny cap and no energy: delta_0 saturates and the CS version creeps up
        let p = RawParams {
            n_ring_nodes_minus_one: 6,
            horizon: 120,
            vaoi_cap: 2,
            p_energy: 0.0,
            p_generate: 0.8,
            ..Default::default()
        }
        .validate()
        .unwrap();
        let ring = simulate_ring(&p, &greedy_policy(&p), &mut RunStreams::for_run(&p, 0));
        let inc = ring.link.version_increments();
        assert!(ring.link.vaoi.contains(&2));
        for node in NodeIndex::all(&p) {
            assert_eq!(ring.node_vaoi(node), node_vaoi_from_cs(&ring.link.vaoi, node, &inc));
        }
    }
}
