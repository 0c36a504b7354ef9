import math

import pytest

from lpplab.analysis import identity_suite
from lpplab.fredholm import bofo_limit_probe
from lpplab.kernels import FiniteN, HardEdge, evaluate_grid, phi_finite, phi_gaussian
from lpplab.params import ParamSeq

from tests.benchmarks.common import log_table, timed

POINTS = [(0.0, 0.0), (0.5, 1.0), (1.0, -0.5), (2.0, 2.0)]


def test_identity_suite_benchmark():
    with timed("identity suite"):
        results = identity_suite(seed=0)
    log_table("IDENTITIES", ["name", "error", "tol"],
              [[r.name, r.error, r.tol] for r in results])
    assert all(r.passed for r in results)


def test_hard_edge_convergence_benchmark():
    seq = ParamSeq.linear(0)
    xs = [x for x, _ in POINTS]
    ys = [y for _, y in POINTS]
    with timed("hard-edge limit"):
        limit = evaluate_grid(HardEdge(seq), xs, ys)
    errors = {}
    for N in (100, 400):
        with timed(f"finite-N kernel N={N}"):
            finite = evaluate_grid(FiniteN(seq, N), xs, ys)
        errors[N] = [abs(finite[i, i] - limit[i, i]) for i in range(len(POINTS))]
    log_table("HARD-EDGE CONVERGENCE", ["x", "y", "err(100)", "err(400)"],
              [[x, y, errors[100][i], errors[400][i]] for i, (x, y) in enumerate(POINTS)])
    for small, large in zip(errors[100], errors[400]):
        assert large < small
        assert large <= 5e-3


def test_heat_kernel_benchmark():
    alpha, N, tau, sigma = 0.45, 300, 0.0, 0.5
    seq = ParamSeq.power(alpha)
    s = math.floor(sigma * N ** (2 * alpha))
    rows = []
    for gap in (0.0, 0.5, 1.0):
        with timed(f"phi_finite gap={gap}"):
            finite = phi_finite(seq, N, 0, s, 0.0, gap)
        limit = float(phi_gaussian(sigma - tau, gap))
        rows.append([gap, finite, limit])
        assert finite == pytest.approx(limit, abs=5e-2)
    log_table("HEAT-KERNEL LIMIT", ["gap", "finite", "gaussian"], rows)


def test_hard_to_soft_benchmark():
    rows = []
    for beta in (2.0, 5.0, 10.0, 20.0):
        hard, soft = bofo_limit_probe(beta, 0.0)
        rows.append([beta, hard, soft, abs(hard - soft)])
    log_table("HARD TO SOFT EDGE", ["beta", "U_beta", "F_TW", "gap"], rows)
    gaps = [row[3] for row in rows]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert max(bofo_limit_probe(10.0, -6.0)) < 0.01
    assert min(bofo_limit_probe(10.0, 5.0)) > 0.99
