use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(vaoi::vaoi)(py);
        let globals = PyDict::new(py);
        globals.set_item("vaoi", module).unwrap();
        if let Err(e) = py.run(&std::ffi::CString::new(code).unwrap(), Some(&globals), None) {
            e.print(py);
            panic!("python code failed");
        }
    });
}

#[test]
fn params_defaults_and_validation() {
    with_module(
        r#"
p = vaoi.SystemParams()
assert (p.N, p.p_g, p.p_s, p.beta, p.B, p.delta_max, p.T) == (64, 0.3, 0.5, 0.1, 20, 30, 3000)
assert p.with_beta(0.5).beta == 0.5
for bad in (dict(N=63), dict(p_s=0.0), dict(beta=1.5), dict(B=0)):
    try:
        vaoi.SystemParams(**bad)
    except ValueError:
        pass
    else:
        raise AssertionError(bad)
"#,
    );
}

#[test]
fn solver_matches_threshold_shape() {
    with_module(
        r#"
p = vaoi.SystemParams(B=5, delta_max=12)
s = vaoi.solve(p)
assert s.span < 1e-9 and s.iterations > 0
assert len(s.relative_values) == 6 * 13
th = s.policy.thresholds()
assert th[0] is None
assert all(th[b] is None or th[b - 1] is None or th[b] <= th[b - 1] for b in range(2, 6))
t = s.policy.table()
assert all(x == 0.0 for x in t[0])
try:
    s.policy.probability(6, 0)
except ValueError:
    pass
else:
    raise AssertionError("out of grid")
"#,
    );
}

#[test]
fn baselines_and_closed_forms() {
    with_module(
        r#"
p = vaoi.SystemParams(T=200, iterations=4)
g = vaoi.greedy_policy(p)
assert g.table() == vaoi.rs_policy(p, 1.0).table()
r = vaoi.rs_policy(p, 0.25)
assert not r.deterministic and r.probability(3, 5) == 0.25
try:
    r.thresholds()
except ValueError:
    pass
else:
    raise AssertionError("randomized thresholds")
c = vaoi.network_constant(p)
assert abs(c - 4.873846153846154) < 1e-12
assert abs(vaoi.network_avg_exact([3] * 10, p) - (c + 3)) < 1e-12
m = vaoi.evaluate(p, g)
assert m.runs == 4 and len(m.nodes) == 65 and m.nodes[32][0] == 0
tr = vaoi.simulate_link(p, g, 1)
assert sorted(tr) == ["a", "b", "c", "delta0", "e", "z"] and len(tr["b"]) == 200
"#,
    );
}
