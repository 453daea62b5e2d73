//! TOML scenario files.
//!
//! ```toml
//! [ring]
//! N = 64
//! [source]
//! p_g = 0.3
//! [link]
//! p_s = 0.5
//! [energy]
//! beta = 0.1
//! [device]
//! B = 20
//! [mdp]
//! delta_max = 30
//! [sim]
//! T = 3000
//! iterations = 2000
//! seed = 1
//! ```
//!
//! Every key is optional and falls back to [`RawParams::default`]. Optional
//! `[sweep]` (`betas`, `alphas`, `horizons`), `[evaluate]` (`policy`,
//! `alpha`), solver keys `mdp.tolerance` / `mdp.max_iterations` and
//! `sim.burn_in` (unrecorded warm-up slots per run) control the experiments.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::mdp::RviaOptions;
use crate::sim::InitialCondition;
use crate::params::{check_probability, RawParams, SystemParams};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    ring: RingSection,
    #[serde(default)]
    source: SourceSection,
    #[serde(default)]
    link: LinkSection,
    #[serde(default)]
    energy: EnergySection,
    #[serde(default)]
    device: DeviceSection,
    #[serde(default)]
    mdp: MdpSection,
    #[serde(default)]
    sim: SimSection,
    #[serde(default)]
    sweep: SweepSection,
    #[serde(default)]
    evaluate: EvaluateSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingSection {
    #[serde(rename = "N")]
    n: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceSection {
    p_g: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkSection {
    p_s: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnergySection {
    beta: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceSection {
    #[serde(rename = "B")]
    b: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MdpSection {
    delta_max: Option<u32>,
    tolerance: Option<f64>,
    max_iterations: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimSection {
    #[serde(rename = "T")]
    t: Option<usize>,
    iterations: Option<usize>,
    seed: Option<u64>,
    burn_in: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    betas: Option<Vec<f64>>,
    alphas: Option<Vec<f64>>,
    horizons: Option<Vec<usize>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluateSection {
    policy: Option<String>,
    alpha: Option<f64>,
}

/// Which policy `evaluate` and `horizon-error` run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicyChoice {
    Optimal,
    Greedy,
    Randomized(f64),
}

/// A parsed and validated config file.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub params: SystemParams,
    pub solver: RviaOptions,
    pub betas: Vec<f64>,
    pub alphas: Vec<f64>,
    pub horizons: Vec<usize>,
    pub policy: PolicyChoice,
    pub start: InitialCondition,
}

impl Config {
    /// Defaults throughout, for the given scenario.
    pub fn from_params(params: SystemParams) -> Self {
        let horizons = default_horizons(params.ring_n());
        Self {
            params,
            solver: RviaOptions::default(),
            betas: default_betas(),
            alphas: vec![0.1, 0.2, 0.3],
            horizons,
            policy: PolicyChoice::Optimal,
            start: InitialCondition::COLD,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text)?;
        let d = RawParams::default();
        let raw = RawParams {
            n_ring_nodes_minus_one: file.ring.n.unwrap_or(d.n_ring_nodes_minus_one),
            p_generate: file.source.p_g.unwrap_or(d.p_generate),
            p_success: file.link.p_s.unwrap_or(d.p_success),
            p_energy: file.energy.beta.unwrap_or(d.p_energy),
            battery_capacity: file.device.b.unwrap_or(d.battery_capacity),
            vaoi_cap: file.mdp.delta_max.unwrap_or(d.vaoi_cap),
            horizon: file.sim.t.unwrap_or(d.horizon),
            mc_iterations: file.sim.iterations.unwrap_or(d.mc_iterations),
            rng_seed: file.sim.seed.unwrap_or(d.rng_seed),
        };
        let mut config = Self::from_params(raw.validate()?);
        if let Some(tol) = file.mdp.tolerance {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Experiment(format!("mdp.tolerance must be positive, got {tol}")));
            }
            config.solver.tolerance = tol;
        }
        if let Some(max) = file.mdp.max_iterations {
            config.solver.max_iterations = max;
        }
        if let Some(burn_in) = file.sim.burn_in {
            config.start = InitialCondition::with_burn_in(burn_in);
        }
        if let Some(betas) = file.sweep.betas {
            config.betas = betas;
        }
        if let Some(alphas) = file.sweep.alphas {
            config.alphas = alphas;
        }
        if let Some(horizons) = file.sweep.horizons {
            config.horizons = horizons;
        }
        config.policy = match file.evaluate.policy.as_deref() {
            None | Some("optimal") => PolicyChoice::Optimal,
            Some("greedy") => PolicyChoice::Greedy,
            Some("rs") => PolicyChoice::Randomized(file.evaluate.alpha.ok_or_else(|| {
                Error::Experiment("evaluate.policy = \"rs\" needs evaluate.alpha".into())
            })?),
            Some(other) => {
                return Err(Error::Experiment(format!(
                    "unknown evaluate.policy {other:?}; expected optimal, greedy or rs"
                )))
            }
        };
        if let PolicyChoice::Randomized(alpha) = config.policy {
            check_probability("alpha", alpha)?;
        }
        Ok(config)
    }
}

fn default_betas() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

/// Horizons from N/2 to 50N, covering both 2N and 10N.
fn default_horizons(ring_n: u32) -> Vec<usize> {
    let n = ring_n.max(2) as usize;
    let mut h: Vec<usize> = [n / 2, n, 2 * n, 5 * n, 10 * n, 20 * n, 50 * n].to_vec();
    h.dedup();
    h
}
