"""Smoke test for the sonine extension module.

Build and install first:  pip install maturin && maturin develop -m crates/python/Cargo.toml
"""

import math
import tempfile

import sonine


def close(a, b, tol):
    assert abs(a - b) <= tol * max(1.0, abs(b)), f"{a} vs {b}"


def main():
    close(sonine.gamma(0.5), math.sqrt(math.pi), 1e-14)
    close(sonine.mittag_leffler(0.5, 1.0, -1.0), 0.4275835762, 1e-9)
    close(sonine.exp_integral_e1(1.0), 0.2193839344, 1e-9)
    value, _ = sonine.mv_mittag_leffler([0.5], 1.0, [-1.0])
    close(value, 0.4275835762, 1e-9)

    pair = sonine.KernelPair.fractional(0.5)
    close(pair.cumulative_l(4.0), 2.0 / math.gamma(1.5), 1e-12)
    dev, ok = pair.verify([0.1, 1.0, 10.0])
    assert ok, dev

    grid = sonine.TimeGrid.for_pair(1.0, 512, pair)
    s = sonine.solve_relaxation(pair, 1.0, grid)
    close(s[-1], 0.4275835762, 1e-4)
    r, big_r = sonine.solve_resolvent(pair, 1.0, grid)
    close(s[-1], 1.0 - big_r[-1], 1e-5)

    unit = sonine.KernelPair.custom("unit", lambda t: 1.0)
    g = sonine.TimeGrid.for_pair(2.0, 400, unit)
    close(sonine.solve_relaxation(unit, 1.0, g)[-1], math.exp(-2.0), 1e-5)

    lap = sonine.Symbol("laplacian", 2)
    assert lap([1.0, 1.0]) == 2.0 and lap.nu == 2.0 and lap.q == 2.0
    assert sonine.spectral_counting(lap, 2.5, 4) == 8
    slope, expected, _ = sonine.fit_counting_exponent(lap, [10.0 * 10 ** (3 * i / 30) for i in range(31)])
    assert abs(slope - expected) < 0.03

    u0 = sonine.Field.random(2, 16, seed=3, band=4)
    grid = sonine.TimeGrid.for_pair(5.0, 64, pair)
    states = sonine.evolve(u0, pair, lap, grid, [grid.nodes[32], 5.0])
    norms = [u0.lp_norm(2.0)] + [u.lp_norm(2.0) for u in states]
    assert norms[0] > norms[1] > norms[2]
    assert abs(states[-1].coefficients()[0]) < 1e-14

    value, vstar = sonine.sup_bound(1.0, 2.0, 1.0)
    close(value, 0.5, 1e-14)
    close(vstar, 1.0, 1e-14)
    close(sonine.predict_decay_rate(4.0 / 3.0, 4.0, 2.0, 2.0, pair), -0.5, 1e-14)

    try:
        sonine.KernelPair.two_term(0.7, 0.3)
    except ValueError:
        pass
    else:
        raise AssertionError("two_term(0.7, 0.3) should be rejected")

    with tempfile.TemporaryDirectory() as out:
        code = sonine.run_cli(["kernel-verify", "--set", "kernel.family=fractional", "--set", "kernel.alpha=0.3", "--out", out])
        assert code == 0, code

    print("sonine", sonine.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
