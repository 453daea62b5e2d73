//! Scenario constants and their validation.

use serde::{Deserialize, Serialize};

use crate::error::ParamError;

/// Unvalidated parameter record, as read from a config file or built by hand.
///
/// `Default` is the reference scenario: a 65-satellite ring, `p_g = 0.3`,
/// `p_s = 0.5`, `B = 20`, `delta_max = 30`, `T = 3000`, with `beta = 0.1`
/// and 2000 Monte Carlo runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub n_ring_nodes_minus_one: u32,
    pub p_generate: f64,
    pub p_success: f64,
    pub p_energy: f64,
    pub battery_capacity: u32,
    pub vaoi_cap: u32,
    pub horizon: usize,
    pub mc_iterations: usize,
    pub rng_seed: u64,
}

impl Default for RawParams {
    fn default() -> Self {
        Self {
            n_ring_nodes_minus_one: 64,
            p_generate: 0.3,
            p_success: 0.5,
            p_energy: 0.1,
            battery_capacity: 20,
            vaoi_cap: 30,
            horizon: 3000,
            mc_iterations: 2000,
            rng_seed: 1,
        }
    }
}

impl RawParams {
    pub fn validate(self) -> Result<SystemParams, ParamError> {
        validate_params(self)
    }
}

/// Validated scenario. Immutable once built; derive variants through
/// [`SystemParams::to_raw`] and re-validate.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    raw: RawParams,
}

pub fn validate_params(raw: RawParams) -> Result<SystemParams, ParamError> {
    if !raw.n_ring_nodes_minus_one.is_multiple_of(2) {
        return Err(ParamError::OddRing(raw.n_ring_nodes_minus_one));
    }
    for (name, value) in [
        ("p_g", raw.p_generate),
        ("p_s", raw.p_success),
        ("beta", raw.p_energy),
    ] {
        check_probability(name, value)?;
    }
    if raw.p_success == 0.0 {
        return Err(ParamError::DegenerateChannel);
    }
    if raw.battery_capacity < 1 {
        return Err(ParamError::ZeroBattery);
    }
    if raw.vaoi_cap < 1 {
        return Err(ParamError::ZeroVaoiCap);
    }
    if raw.horizon < 1 {
        return Err(ParamError::ZeroHorizon);
    }
    if raw.mc_iterations < 1 {
        return Err(ParamError::ZeroIterations);
    }
    Ok(SystemParams { raw })
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<(), ParamError> {
    // NaN fails the range test too.
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ParamError::ProbabilityOutOfRange { name, value })
    }
}

impl SystemParams {
    /// N; the ring holds N + 1 satellites.
    pub fn ring_n(&self) -> u32 {
        self.raw.n_ring_nodes_minus_one
    }

    pub fn satellites(&self) -> usize {
        self.raw.n_ring_nodes_minus_one as usize + 1
    }

    /// Largest hop distance from the Connected Satellite, N / 2.
    pub fn max_hops(&self) -> u32 {
        self.raw.n_ring_nodes_minus_one / 2
    }

    pub fn p_generate(&self) -> f64 {
        self.raw.p_generate
    }

    pub fn p_success(&self) -> f64 {
        self.raw.p_success
    }

    pub fn p_energy(&self) -> f64 {
        self.raw.p_energy
    }

    pub fn battery_capacity(&self) -> u32 {
        self.raw.battery_capacity
    }

    pub fn vaoi_cap(&self) -> u32 {
        self.raw.vaoi_cap
    }

    pub fn horizon(&self) -> usize {
        self.raw.horizon
    }

    pub fn mc_iterations(&self) -> usize {
        self.raw.mc_iterations
    }

    pub fn rng_seed(&self) -> u64 {
        self.raw.rng_seed
    }

    pub fn to_raw(&self) -> RawParams {
        self.raw.clone()
    }

    pub fn with_energy(&self, beta: f64) -> Result<Self, ParamError> {
        RawParams { p_energy: beta, ..self.to_raw() }.validate()
    }

    pub fn with_horizon(&self, horizon: usize) -> Result<Self, ParamError> {
        RawParams { horizon, ..self.to_raw() }.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_scenario_is_valid() {
        let p = RawParams::default().validate().unwrap();
        assert_eq!(p.ring_n(), 64);
        assert_eq!(p.satellites(), 65);
        assert_eq!(p.max_hops(), 32);
        assert_eq!(p.p_generate(), 0.3);
        assert_eq!(p.p_success(), 0.5);
        assert_eq!(p.battery_capacity(), 20);
        assert_eq!(p.vaoi_cap(), 30);
        assert_eq!(p.horizon(), 3000);
    }

    #[test]
    fn odd_ring_rejected() {
        let err = RawParams { n_ring_nodes_minus_one: 63, ..Default::default() }
            .validate()
            .unwrap_err();
        assert_eq!(err, ParamError::OddRing(63));
        assert!(err.to_string().contains("N must be even"));
    }

    #[test]
    fn zero_success_probability_is_degenerate() {
        let err = RawParams { p_success: 0.0, ..Default::default() }.validate().unwrap_err();
        assert_eq!(err, ParamError::DegenerateChannel);
        assert!(err.to_string().contains("degenerate channel"));
    }

    #[test]
    fn probabilities_out_of_range() {
        for raw in [
            RawParams { p_generate: -0.1, ..Default::default() },
            RawParams { p_success: 1.5, ..Default::default() },
            RawParams { p_energy: f64::NAN, ..Default::default() },
        ] {
            assert!(matches!(
                raw.validate(),
                Err(ParamError::ProbabilityOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn capacity_and_cap_must_be_positive() {
        let b = RawParams { battery_capacity: 0, ..Default::default() }.validate();
        assert_eq!(b.unwrap_err(), ParamError::ZeroBattery);
        let d = RawParams { vaoi_cap: 0, ..Default::default() }.validate();
        assert_eq!(d.unwrap_err(), ParamError::ZeroVaoiCap);
        let t = RawParams { horizon: 0, ..Default::default() }.validate();
        assert_eq!(t.unwrap_err(), ParamError::ZeroHorizon);
    }

    #[test]
    fn single_satellite_ring_allowed() {
        let p = RawParams { n_ring_nodes_minus_one: 0, ..Default::default() }
            .validate()
            .unwrap();
        assert_eq!(p.satellites(), 1);
        assert_eq!(p.max_hops(), 0);
    }

    #[test]
    fn variants_revalidate() {
        let p = RawParams::default().validate().unwrap();
        assert_eq!(p.with_energy(0.7).unwrap().p_energy(), 0.7);
        assert!(p.with_energy(1.2).is_err());
        assert_eq!(p.with_horizon(128).unwrap().horizon(), 128);
    }
}
