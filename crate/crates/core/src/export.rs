//! Comma-separated outputs, each with a one-line header.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::mdp::Thresholds;
use crate::model::StateSpace;
use crate::policy::PolicyTable;
use crate::sim::{LinkTrace, MetricsSummary};

/// `b,delta,action`, plus `probability` for randomized policies (where
/// `action` marks states that may transmit).
pub fn write_policy<W: Write>(out: W, policy: &PolicyTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let randomized = !policy.is_deterministic();
    if randomized {
        w.write_record(["b", "delta", "action", "probability"])?;
    } else {
        w.write_record(["b", "delta", "action"])?;
    }
    for s in policy.space().states() {
        let p = policy.transmit_probability(s);
        let action = (p > 0.0) as u8;
        if randomized {
            w.serialize((s.battery, s.vaoi, action, p))?;
        } else {
            w.serialize((s.battery, s.vaoi, action))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `b,delta,h`.
pub fn write_values<W: Write>(out: W, space: StateSpace, values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["b", "delta", "h"])?;
    for (s, h) in space.states().zip(values) {
        w.serialize((s.battery, s.vaoi, h))?;
    }
    w.flush()?;
    Ok(())
}

/// `b,threshold`; `inf` where the policy never transmits.
pub fn write_thresholds<W: Write>(out: W, thresholds: &Thresholds) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["b", "threshold"])?;
    for (b, t) in thresholds.0.iter().enumerate() {
        let t = t.map_or_else(|| "inf".to_string(), |t| t.to_string());
        w.write_record([b.to_string(), t])?;
    }
    w.flush()?;
    Ok(())
}

/// `t,b,a,e,c,z,delta0`.
pub fn write_trace<W: Write>(out: W, trace: &LinkTrace) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "b", "a", "e", "c", "z", "delta0"])?;
    for t in 0..trace.len() {
        let d = trace.draws[t];
        w.serialize((
            t,
            trace.battery[t],
            trace.action[t].as_bit(),
            d.energy as u8,
            d.channel as u8,
            d.version as u8,
            trace.vaoi[t],
        ))?;
    }
    w.flush()?;
    Ok(())
}

/// `n,avg_vaoi_exact,avg_vaoi_approx`.
pub fn write_nodes<W: Write>(out: W, summary: &MetricsSummary) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "avg_vaoi_exact", "avg_vaoi_approx"])?;
    for node in &summary.nodes {
        w.serialize((node.node.value(), node.avg.mean, node.approx))?;
    }
    w.flush()?;
    Ok(())
}

/// One row of `metrics.csv` / `beta_sweep.csv`. `avg_vaoi_network` comes from
/// the flooded ring and `se` is its standard error; the `_exact` and
/// `_approx` columns apply the shifted and unshifted closed forms to the same
/// CS traces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRow {
    pub policy: String,
    pub beta: f64,
    pub alpha: Option<f64>,
    pub avg_vaoi_cs: f64,
    pub avg_vaoi_network: f64,
    pub se: f64,
    pub updates: f64,
    pub energy: f64,
    pub avg_vaoi_network_exact: f64,
    pub avg_vaoi_network_approx: f64,
    pub se_cs: f64,
}

impl MetricsRow {
    pub fn new(policy: impl Into<String>, beta: f64, alpha: Option<f64>, m: &MetricsSummary) -> Self {
        Self {
            policy: policy.into(),
            beta,
            alpha,
            avg_vaoi_cs: m.cs.mean,
            avg_vaoi_network: m.network.mean,
            se: m.network.se,
            updates: m.updates,
            energy: m.energy,
            avg_vaoi_network_exact: m.network_exact.mean,
            avg_vaoi_network_approx: m.network_approx.mean,
            se_cs: m.cs.se,
        }
    }
}

/// One row of `horizon_error.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HorizonRow {
    #[serde(rename = "T")]
    pub horizon: usize,
    pub avg_vaoi_exact: f64,
    pub avg_vaoi_approx: f64,
    pub error_pct: f64,
    pub se_exact: f64,
}

pub fn write_rows<W: Write, R: Serialize>(out: W, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
