//! Closed-form VAoI propagation over the satellite ring.
//!
//! A node `|n|` hops from the Connected Satellite holds the CS's version from
//! `|n|` slots earlier, so its VAoI is the CS's VAoI at `t - |n|` plus the
//! versions the source generated meanwhile. Slots before 0 repeat slot 0
//! (`delta_0(t) = delta_0(0)`) and generate no versions.

use crate::error::ParamError;
use crate::params::SystemParams;

/// Signed hop offset from the Connected Satellite, `-N/2 ..= N/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeIndex(i32);

impl NodeIndex {
    pub const CONNECTED: NodeIndex = NodeIndex(0);

    pub fn new(n: i32, params: &SystemParams) -> Result<Self, ParamError> {
        if n.unsigned_abs() <= params.max_hops() {
            Ok(Self(n))
        } else {
            Err(ParamError::NodeOutOfRange { index: n as i64, ring: params.ring_n() })
        }
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn hops(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    /// Every node of the ring, `-N/2` first.
    pub fn all(params: &SystemParams) -> impl Iterator<Item = NodeIndex> {
        let h = params.max_hops() as i32;
        (-h..=h).map(NodeIndex)
    }
}

/// Number of versions generated over `hops` slots: Binomial(hops, p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialShift {
    pub hops: u32,
    pub p: f64,
}

impl BinomialShift {
    pub fn mean(&self) -> f64 {
        self.hops as f64 * self.p
    }

    pub fn variance(&self) -> f64 {
        self.hops as f64 * self.p * (1.0 - self.p)
    }

    pub fn pmf(&self, k: u32) -> f64 {
        if k > self.hops {
            return 0.0;
        }
        let coeff = (0..k.min(self.hops - k))
            .fold(1.0, |c, i| c * (self.hops - i) as f64 / (i + 1) as f64);
        coeff * self.p.powi(k as i32) * (1.0 - self.p).powi((self.hops - k) as i32)
    }
}

/// Per-slot VAoI at `node` from the CS trace.
///
/// `version_increments[t]` is `V_S(t) - V_S(t-1)`: the version draw of slot
/// `t - 1`, zero at `t = 0`.
pub fn node_vaoi_from_cs(cs_trace: &[u32], node: NodeIndex, version_increments: &[u8]) -> Vec<u64> {
    assert_eq!(cs_trace.len(), version_increments.len());
    let hops = node.hops();
    // running sum of increments over the window (t - hops, t]
    let mut window: u64 = 0;
    (0..cs_trace.len())
        .map(|t| {
            window += version_increments[t] as u64;
            if t >= hops {
                window -= version_increments[t - hops] as u64;
            }
            window + cs_trace[t.saturating_sub(hops)] as u64
        })
        .collect()
}

/// `(1/T) sum_{t<T} delta_0(t - hops)` under the slot-0 warm start.
pub fn shifted_time_average(cs_trace: &[u32], hops: usize) -> f64 {
    shifted_sum(cs_trace, hops) as f64 / cs_trace.len() as f64
}

fn shifted_sum(cs_trace: &[u32], hops: usize) -> u64 {
    let t = cs_trace.len();
    let head = hops.min(t);
    let warm = head as u64 * cs_trace[0] as u64;
    warm + cs_trace[..t - head].iter().map(|&d| d as u64).sum::<u64>()
}

pub fn time_average(cs_trace: &[u32]) -> f64 {
    shifted_time_average(cs_trace, 0)
}

/// `|n| p_g + cs_time_avg`. Pass the `|n|`-shifted CS average for the exact
/// per-node value, the unshifted one for the large-horizon approximation.
pub fn avg_vaoi_node(cs_time_avg: f64, node: NodeIndex, params: &SystemParams) -> f64 {
    node.hops() as f64 * params.p_generate() + cs_time_avg
}

/// `N (N + 2) / (4 (N + 1)) p_g`, the ring-averaged `|n| p_g`.
pub fn network_constant(params: &SystemParams) -> f64 {
    let n = params.ring_n() as f64;
    n * (n + 2.0) / (4.0 * (n + 1.0)) * params.p_generate()
}

/// Ring-averaged VAoI over the horizon, averaging the `|n|`-shifted CS time
/// averages node by node.
pub fn network_avg_exact(cs_trace: &[u32], params: &SystemParams) -> f64 {
    // Integer sums are exact; only the final divide rounds.
    let total: u128 = NodeIndex::all(params)
        .map(|n| shifted_sum(cs_trace, n.hops()) as u128)
        .sum();
    let denom = cs_trace.len() as f64 * params.satellites() as f64;
    network_constant(params) + total as f64 / denom
}

/// Large-horizon form: every shifted average replaced by the unshifted one.
pub fn network_avg_approx(cs_time_avg: f64, params: &SystemParams) -> f64 {
    network_constant(params) + cs_time_avg
}
