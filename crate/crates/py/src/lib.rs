//! Python module `vaoi`: scenario parameters, the optimal-policy solver,
//! baseline policies, Monte Carlo evaluation and the ring closed forms.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use vaoi_core::mdp::{self, ThresholdStructure};
use vaoi_core::network::{self, NodeIndex};
use vaoi_core::rng::RunStreams;
use vaoi_core::sim::{self, InitialCondition};
use vaoi_core::{RawParams, State};

fn to_py(err: vaoi_core::Error) -> PyErr {
    match err {
        vaoi_core::Error::Params(e) => PyValueError::new_err(e.to_string()),
        vaoi_core::Error::Policy(e) => PyValueError::new_err(e),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn param_err(err: vaoi_core::ParamError) -> PyErr {
    PyValueError::new_err(err.to_string())
}

#[pyclass(name = "SystemParams", frozen, from_py_object)]
#[derive(Clone)]
struct PySystemParams {
    inner: vaoi_core::SystemParams,
}

#[pymethods]
impl PySystemParams {
    #[new]
    #[pyo3(signature = (N=64, p_g=0.3, p_s=0.5, beta=0.1, B=20, delta_max=30, T=3000, iterations=2000, seed=1))]
    #[allow(non_snake_case, clippy::too_many_arguments)]
    fn new(
        N: u32,
        p_g: f64,
        p_s: f64,
        beta: f64,
        B: u32,
        delta_max: u32,
        T: usize,
        iterations: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let raw = RawParams {
            n_ring_nodes_minus_one: N,
            p_generate: p_g,
            p_success: p_s,
            p_energy: beta,
            battery_capacity: B,
            vaoi_cap: delta_max,
            horizon: T,
            mc_iterations: iterations,
            rng_seed: seed,
        };
        Ok(Self { inner: raw.validate().map_err(param_err)? })
    }

    #[getter(N)]
    fn ring_n(&self) -> u32 {
        self.inner.ring_n()
    }

    #[getter]
    fn p_g(&self) -> f64 {
        self.inner.p_generate()
    }

    #[getter]
    fn p_s(&self) -> f64 {
        self.inner.p_success()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.p_energy()
    }

    #[getter(B)]
    fn battery_capacity(&self) -> u32 {
        self.inner.battery_capacity()
    }

    #[getter]
    fn delta_max(&self) -> u32 {
        self.inner.vaoi_cap()
    }

    #[getter(T)]
    fn horizon(&self) -> usize {
        self.inner.horizon()
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.mc_iterations()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.rng_seed()
    }

    fn with_beta(&self, beta: f64) -> PyResult<Self> {
        Ok(Self { inner: self.inner.with_energy(beta).map_err(param_err)? })
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "SystemParams(N={}, p_g={}, p_s={}, beta={}, B={}, delta_max={}, T={}, iterations={}, seed={})",
            p.ring_n(),
            p.p_generate(),
            p.p_success(),
            p.p_energy(),
            p.battery_capacity(),
            p.vaoi_cap(),
            p.horizon(),
            p.mc_iterations(),
            p.rng_seed()
        )
    }
}

/// Per-state transmit probabilities.
#[pyclass(name = "Policy", frozen, from_py_object)]
#[derive(Clone)]
struct PyPolicy {
    inner: vaoi_core::PolicyTable,
}

#[pymethods]
impl PyPolicy {
    fn probability(&self, b: u32, delta: u32) -> PyResult<f64> {
        let s = State::new(b, delta);
        if !self.inner.space().contains(s) {
            return Err(PyValueError::new_err(format!("state ({b}, {delta}) outside the grid")));
        }
        Ok(self.inner.transmit_probability(s))
    }

    /// Rows indexed by battery, columns by VAoI.
    fn table(&self) -> Vec<Vec<f64>> {
        let space = self.inner.space();
        (0..=space.battery_capacity())
            .map(|b| {
                (0..=space.vaoi_cap())
                    .map(|d| self.inner.transmit_probability(State::new(b, d)))
                    .collect()
            })
            .collect()
    }

    #[getter]
    fn deterministic(&self) -> bool {
        self.inner.is_deterministic()
    }

    /// Smallest transmitting VAoI per battery level (`None` = never), or
    /// `None` overall when the policy is not threshold-type.
    fn thresholds(&self) -> PyResult<Option<Vec<Option<u32>>>> {
        if !self.inner.is_deterministic() {
            return Err(PyValueError::new_err("thresholds need a deterministic policy"));
        }
        Ok(match mdp::extract_thresholds(&self.inner) {
            ThresholdStructure::Threshold(t) => Some(t.0),
            ThresholdStructure::NotThreshold { .. } => None,
        })
    }
}

#[pyclass(name = "Solution", frozen, get_all)]
struct PySolution {
    policy: PyPolicy,
    average_cost: f64,
    relative_values: Vec<f64>,
    iterations: usize,
    span: f64,
}

#[pyclass(name = "Metrics", frozen, get_all)]
struct PyMetrics {
    runs: usize,
    cs_mean: f64,
    cs_se: f64,
    network_mean: f64,
    network_se: f64,
    network_exact: f64,
    network_approx: f64,
    updates: f64,
    energy: f64,
    /// `(n, simulated mean, large-horizon approximation)` per satellite.
    nodes: Vec<(i32, f64, f64)>,
}

#[pyfunction]
#[pyo3(signature = (params, tolerance=1e-9, max_iterations=100_000))]
fn solve(params: &PySystemParams, tolerance: f64, max_iterations: usize) -> PyResult<PySolution> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(PyValueError::new_err("tolerance must be positive"));
    }
    let kernel = mdp::build_kernel(&params.inner);
    let r = mdp::solve_rvia(&kernel, tolerance, max_iterations).map_err(to_py)?;
    Ok(PySolution {
        policy: PyPolicy { inner: r.policy },
        average_cost: r.average_cost,
        relative_values: r.relative_values,
        iterations: r.iterations_used,
        span: r.span_at_exit,
    })
}

#[pyfunction]
fn greedy_policy(params: &PySystemParams) -> PyPolicy {
    PyPolicy { inner: vaoi_core::greedy_policy(&params.inner) }
}

#[pyfunction]
fn rs_policy(params: &PySystemParams, alpha: f64) -> PyResult<PyPolicy> {
    Ok(PyPolicy { inner: vaoi_core::rs_policy(&params.inner, alpha).map_err(to_py)? })
}

#[pyfunction]
#[pyo3(signature = (params, policy, burn_in=0))]
fn evaluate(py: Python<'_>, params: &PySystemParams, policy: &PyPolicy, burn_in: usize) -> PyResult<PyMetrics> {
    if policy.inner.space() != vaoi_core::StateSpace::from_params(&params.inner) {
        return Err(PyValueError::new_err("policy grid does not match params"));
    }
    let start = InitialCondition::with_burn_in(burn_in);
    let m = py
        .detach(|| sim::evaluate_policy_from(&params.inner, &policy.inner, start))
        .map_err(to_py)?;
    Ok(PyMetrics {
        runs: m.runs,
        cs_mean: m.cs.mean,
        cs_se: m.cs.se,
        network_mean: m.network.mean,
        network_se: m.network.se,
        network_exact: m.network_exact.mean,
        network_approx: m.network_approx.mean,
        updates: m.updates,
        energy: m.energy,
        nodes: m.nodes.iter().map(|n| (n.node.value(), n.avg.mean, n.approx)).collect(),
    })
}

/// One run's link trace as a dict of equal-length lists.
#[pyfunction]
#[pyo3(signature = (params, policy, run=0))]
fn simulate_link(params: &PySystemParams, policy: &PyPolicy, run: u64) -> PyResult<std::collections::BTreeMap<&'static str, Vec<u32>>> {
    if policy.inner.space() != vaoi_core::StateSpace::from_params(&params.inner) {
        return Err(PyValueError::new_err("policy grid does not match params"));
    }
    let t = sim::simulate_link(&params.inner, &policy.inner, &mut RunStreams::for_run(&params.inner, run));
    let bits = |f: &dyn Fn(usize) -> bool| (0..t.len()).map(|i| f(i) as u32).collect::<Vec<_>>();
    Ok([
        ("b", t.battery.clone()),
        ("a", bits(&|i| t.action[i].transmits())),
        ("e", bits(&|i| t.draws[i].energy)),
        ("c", bits(&|i| t.draws[i].channel)),
        ("z", bits(&|i| t.draws[i].version)),
        ("delta0", t.vaoi.clone()),
    ]
    .into_iter()
    .collect())
}

#[pyfunction]
fn network_constant(params: &PySystemParams) -> f64 {
    network::network_constant(&params.inner)
}

#[pyfunction]
fn network_avg_exact(cs_trace: Vec<u32>, params: &PySystemParams) -> PyResult<f64> {
    if cs_trace.is_empty() {
        return Err(PyValueError::new_err("empty trace"));
    }
    Ok(network::network_avg_exact(&cs_trace, &params.inner))
}

#[pyfunction]
fn network_avg_approx(cs_time_avg: f64, params: &PySystemParams) -> f64 {
    network::network_avg_approx(cs_time_avg, &params.inner)
}

#[pyfunction]
fn node_vaoi_from_cs(params: &PySystemParams, cs_trace: Vec<u32>, n: i32, version_increments: Vec<u8>) -> PyResult<Vec<u64>> {
    let node = NodeIndex::new(n, &params.inner).map_err(param_err)?;
    if cs_trace.len() != version_increments.len() {
        return Err(PyValueError::new_err("trace lengths differ"));
    }
    Ok(network::node_vaoi_from_cs(&cs_trace, node, &version_increments))
}

#[pymodule]
pub fn vaoi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystemParams>()?;
    m.add_class::<PyPolicy>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PyMetrics>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_policy, m)?)?;
    m.add_function(wrap_pyfunction!(rs_policy, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_link, m)?)?;
    m.add_function(wrap_pyfunction!(network_constant, m)?)?;
    m.add_function(wrap_pyfunction!(network_avg_exact, m)?)?;
    m.add_function(wrap_pyfunction!(network_avg_approx, m)?)?;
    m.add_function(wrap_pyfunction!(node_vaoi_from_cs, m)?)?;
    Ok(())
}
