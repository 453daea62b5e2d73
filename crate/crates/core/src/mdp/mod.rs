//! The average-cost MDP for the device/Connected-Satellite link: exact
//! transition kernel, relative value iteration and threshold extraction.

mod evaluation;
mod kernel;
mod rvia;
mod threshold;

pub use evaluation::{finite_horizon_average, stationary_average, stationary_distribution};
pub use kernel::{build_kernel, Transition, TransitionKernel};
pub use rvia::{bellman_apply, solve_rvia, solve_rvia_with, RviaOptions, SolverResult};
pub use threshold::{extract_thresholds, ThresholdStructure, Thresholds};
