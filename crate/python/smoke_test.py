"""Smoke test for the `vaoi` extension module.

Build and install first:  maturin develop -m crates/py/Cargo.toml
"""

import math

import vaoi


def main():
    p = vaoi.SystemParams(beta=0.1, T=640, iterations=50, seed=7)
    assert p.N == 64 and p.B == 20 and p.delta_max == 30

    sol = vaoi.solve(p)
    assert sol.span < 1e-9
    th = sol.policy.thresholds()
    assert th is not None and th[0] is None
    finite = [t for t in th[1:] if t is not None]
    assert all(a >= b for a, b in zip(finite, finite[1:])), th
    assert sol.policy.probability(0, 30) == 0.0

    greedy = vaoi.greedy_policy(p)
    rs1 = vaoi.rs_policy(p, 1.0)
    assert greedy.table() == rs1.table()

    m_opt = vaoi.evaluate(p, sol.policy, burn_in=2000)
    m_greedy = vaoi.evaluate(p, greedy, burn_in=2000)
    assert m_opt.runs == 50 and len(m_opt.nodes) == 65
    assert m_opt.network_mean < m_greedy.network_mean

    c = vaoi.network_constant(p)
    assert math.isclose(c, 64 * 66 / (4 * 65) * 0.3, rel_tol=1e-12)
    assert math.isclose(vaoi.network_avg_exact([7] * 500, p), c + 7, rel_tol=1e-12)
    assert math.isclose(vaoi.network_avg_approx(2.0, p), c + 2.0, rel_tol=1e-12)

    trace = vaoi.simulate_link(p, sol.policy)
    assert len(trace["delta0"]) == p.T
    inc = [0] + trace["z"][:-1]
    node = vaoi.node_vaoi_from_cs(p, trace["delta0"], 3, inc)
    assert len(node) == p.T and all(x >= y for x, y in zip(node, trace["delta0"]))

    try:
        vaoi.SystemParams(N=63)
    except ValueError:
        pass
    else:
        raise AssertionError("odd N accepted")

    print(f"gain {sol.average_cost:.4f}, thresholds {th}")
    print(f"network VAoI: optimal {m_opt.network_mean:.3f} ± {m_opt.network_se:.3f}, "
          f"greedy {m_greedy.network_mean:.3f}")
    print("smoke test OK")


if __name__ == "__main__":
    main()
