"""
Named cross-formula checks run by `lpplab verify`. Every check evaluates two
independent routes to the same number and compares them to a tolerance.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from lpplab.analysis.combinatorics import circular_placements, circular_placements_formula, \
    hockey_stick
from lpplab.analysis.traces import trace_identity_check
from lpplab.fredholm import hard_edge_gap_closed_form, u_beta_cdf
from lpplab.kernels import (airy_kernel, bessel_kernel, extended_airy, extended_airy_contour,
                            extended_airy_laplace, hard_edge_grid, okounkov_integral,
                            rescaled_case_c_limit)
from lpplab.params import ParamSeq, bessel_shift
from lpplab.specfun import airy

logger = logging.getLogger(__name__)


@dataclass
class IdentityResult:
    name: str
    value: float
    reference: float
    tol: float

    @property
    def error(self) -> float:
        return abs(self.value - self.reference)

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tol)

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "reference": self.reference,
                "error": self.error, "tol": self.tol, "passed": self.passed}


def _worst(name: str, values, references, tol: float) -> IdentityResult:
    """The pair with the largest discrepancy stands for the whole check."""
    values, references = np.ravel(values), np.ravel(references)
    i = int(np.argmax(np.abs(values - references)))
    return IdentityResult(name, float(values[i]), float(references[i]), tol)


def bessel_relation(beta: float, rng: np.random.Generator, points: int = 5) -> IdentityResult:
    """(uv)^{-1/2} K(log 1/u + delta, log 1/v + delta) = 4 K_Bessel(4u, 4v)."""
    u = rng.uniform(0.02, 0.5, points)
    v = rng.uniform(0.02, 0.5, points)
    delta = bessel_shift(beta)
    K = hard_edge_grid(ParamSeq.linear(beta), np.log(1 / u) + delta, np.log(1 / v) + delta)
    left = np.diag(K) / np.sqrt(u * v)
    right = 4 * bessel_kernel(2 * beta + 1, 4 * u, 4 * v)
    return _worst(f"bessel_relation[beta={beta:g}]", left, right, 1e-5)


def extended_airy_identity(rng: np.random.Generator, points: int = 5) -> IdentityResult:
    params = rng.uniform(-1.0, 1.0, (points, 4))
    left = [extended_airy_contour(*p) for p in params]
    right = [extended_airy_laplace(*p) for p in params]
    return _worst("extended_airy_contour", left, right, 1e-6)


def extended_airy_static() -> IdentityResult:
    pairs = [(-1.0, 0.5), (0.0, 0.0), (1.5, -2.0)]
    left = [extended_airy(0.7, x, 0.7, y) for x, y in pairs]
    right = [float(airy_kernel(x, y)) for x, y in pairs]
    return _worst("extended_airy_equal_times", left, right, 1e-8)


def okounkov_identity() -> IdentityResult:
    points = [(0.5, 0.0, 0.0), (1.0, -1.0, 0.5), (1.5, 0.3, -0.7)]
    left = [okounkov_integral(c, x, y, method="quadrature") for c, x, y in points]
    right = [okounkov_integral(c, x, y) for c, x, y in points]
    return _worst("okounkov_integral", left, right, 1e-6)


def okounkov_adaptive() -> IdentityResult:
    """The Gaussian-Airy integral once more by adaptive quadrature."""
    c, xi, eta = 1.0, 0.2, -0.4

    def integrand(lam):
        return math.exp(c * lam) * float(airy(xi + lam)) * float(airy(eta + lam))

    head, _ = quad(integrand, -36.0, 0.0, limit=400)
    tail, _ = quad(integrand, 0.0, 20.0, limit=200)
    return IdentityResult("okounkov_adaptive", head + tail, okounkov_integral(c, xi, eta), 1e-6)


def case_c_chain() -> IdentityResult:
    points = [(-0.5, 0.3, 0.5, -0.2), (0.4, -0.1, -0.3, 0.6)]
    left = [rescaled_case_c_limit(*p) for p in points]
    right = [extended_airy(*p) for p in points]
    return _worst("case_c_conjugation", left, right, 1e-6)


def circular_sweep(m_max: int = 12) -> IdentityResult:
    mismatches = sum(circular_placements(m, r) != circular_placements_formula(m, r)
                     for m in range(1, m_max + 1) for r in range(m + 1))
    return IdentityResult("circular_placements", float(mismatches), 0.0, 0.0)


def hockey_stick_sweep(limit: int = 20) -> IdentityResult:
    mismatches = 0
    for n in range(limit + 1):
        for m in range(limit + 1):
            left, right = hockey_stick(n, m)
            mismatches += left != right
    return IdentityResult("hockey_stick", float(mismatches), 0.0, 0.0)


def trace_identity_sweep(seeds: int = 100, n: int = 6) -> IdentityResult:
    """Number of instances in which det(I - K_ext phi) misses the minus sign."""
    matches = [trace_identity_check(n, seed).match for seed in range(seeds)]
    misses = sum(match != "minus" for match in matches)
    return IdentityResult("two_line_determinant", float(misses), 0.0, 0.0)


def gumbel_point(xis=(-1.0, 0.0, 1.0, 2.0, 4.0)) -> IdentityResult:
    left = [u_beta_cdf(-0.5, xi) for xi in xis]
    right = [hard_edge_gap_closed_form(-0.5, xi) for xi in xis]
    return _worst("gumbel_closed_form", left, right, 1e-4)


def dual_paths(beta: float = 1.0, xi: float = 1.0) -> IdentityResult:
    return IdentityResult(f"u_beta_paths[beta={beta:g}]", u_beta_cdf(beta, xi, path="contour"),
                          u_beta_cdf(beta, xi, path="bessel"), 1e-4)


def identity_suite(seed: int = 0) -> list[IdentityResult]:
    rng = np.random.Generator(np.random.Philox(key=seed))
    checks = [
        lambda: bessel_relation(0.0, rng),
        lambda: bessel_relation(1.0, rng),
        lambda: extended_airy_identity(rng),
        extended_airy_static,
        okounkov_identity,
        okounkov_adaptive,
        case_c_chain,
        circular_sweep,
        hockey_stick_sweep,
        trace_identity_sweep,
        gumbel_point,
        dual_paths,
    ]
    results = []
    for check in checks:
        result = check()
        logger.info(f"{result.name}: error {result.error:.3g} (tol {result.tol:g}) "
                    f"{'ok' if result.passed else 'FAILED'}")
        results.append(result)
    return results
