//! Monte Carlo simulation of the device/CS link and of version flooding
//! around the ring.

mod evaluate;
mod link;
mod ring;

pub use evaluate::{evaluate_policy, evaluate_policy_from, InitialCondition, MetricsSummary, NodeMetrics, RunMetrics};
pub use link::{simulate_link, simulate_link_from, LinkStepper, LinkTrace, SlotRecord};
pub use ring::{simulate_ring, simulate_ring_from, RingNetwork, RingTrace};
