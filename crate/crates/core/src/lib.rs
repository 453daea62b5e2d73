//! Version Age of Information (VAoI) for an energy-harvesting IoT device that
//! updates a ring of LEO satellites through one Connected Satellite (CS).
//!
//! The crate builds the average-cost MDP for the device/CS link, solves it
//! with relative value iteration, propagates CS VAoI around the ring in
//! closed form, and checks both against Monte Carlo simulation.

pub mod config;
pub mod error;
pub mod experiments;
pub mod export;
pub mod mdp;
pub mod model;
pub mod network;
pub mod params;
pub mod policy;
pub mod rng;
pub mod sim;
pub mod stats;

pub use error::{Error, ParamError, Result};
pub use model::{Action, State, StateSpace};
pub use params::{validate_params, RawParams, SystemParams};
pub use policy::{greedy_policy, rs_policy, PolicyTable};
