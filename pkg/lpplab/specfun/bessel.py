import math

import numpy as np

from lpplab.errors import DomainError
from lpplab.quadrature import composite_rule, panel_breakpoints

SERIES_LIMIT = 8.0
HANKEL_LIMIT = 60.0
SERIES_TERMS = 48
HANKEL_TERMS = 30


def _series(nu: float, x: np.ndarray) -> np.ndarray:
    # sum_k (-1)^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1))
    half = 0.5 * x
    with np.errstate(divide="ignore"):
        lead = np.where(half > 0, np.exp(nu * np.log(np.where(half > 0, half, 1.0))
                                         - math.lgamma(nu + 1)), 0.0)
    if nu == 0:
        lead = np.where(half > 0, lead, 1.0)
    q = -half * half
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, SERIES_TERMS):
        term = term * q / (k * (k + nu))
        total += term
    return lead * total


def _schlafli(nu: float, x: np.ndarray) -> np.ndarray:
    # J = 1/pi int_0^pi cos(nu s - x sin s) ds - sin(nu pi)/pi int_0^inf e^{-x sinh t - nu t} dt
    panels = 4 + int(math.ceil(float(np.max(x)) / 3.0))
    s, ws = composite_rule(panel_breakpoints(math.pi, panels))
    first = np.cos(nu * s[None, :] - x[:, None] * np.sin(s)[None, :]) @ ws / math.pi
    if nu == int(nu):
        return first
    t_max = math.asinh(45.0 / float(np.min(x)))
    t, wt = composite_rule(panel_breakpoints(t_max, 6))
    second = np.exp(-x[:, None] * np.sinh(t)[None, :] - nu * t[None, :]) @ wt
    return first - math.sin(nu * math.pi) / math.pi * second


def _hankel(nu: float, x: np.ndarray) -> np.ndarray:
    mu = 4.0 * nu * nu
    b = np.ones_like(x)
    p = np.ones_like(x)
    q = np.zeros_like(x)
    for k in range(1, HANKEL_TERMS):
        b = b * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * b
        else:
            p += sign * b
    chi = x - (0.5 * nu + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def _evaluate(nu: float, x: np.ndarray, branch: str | None) -> np.ndarray:
    out = np.empty_like(x)
    if branch is None:
        small = x <= SERIES_LIMIT
        large = x > HANKEL_LIMIT
    else:
        small = np.full(x.shape, branch == "series")
        large = np.full(x.shape, branch == "asymptotic")
    mid = ~(small | large)
    if small.any():
        out[small] = _series(nu, x[small])
    if mid.any():
        out[mid] = _schlafli(nu, x[mid])
    if large.any():
        out[large] = _hankel(nu, x[large])
    return out


def _check_box(nu: float, x: np.ndarray, nu_max: float = 10.0):
    if not 0 <= nu <= nu_max:
        raise DomainError(f"Bessel order must lie in [0, {nu_max}], got {nu}")
    if np.any(x < 0) or np.any(x > 1000) or np.any(np.isnan(x)):
        raise DomainError("Bessel argument must lie in [0, 1000]")


def bessel_j(nu: float, x, branch: str | None = None):
    """
    J_nu(x) for nu in [0, 10], x in [0, 1000]: ascending series up to x = 8,
    Schlafli's integral up to x = 60, Hankel's expansion beyond.
    `branch` forces "series", "integral" or "asymptotic".
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    _check_box(nu, x_arr)
    out = _evaluate(float(nu), x_arr, branch)
    return float(out[0]) if np.ndim(x) == 0 else out


def bessel_j_prime(nu: float, x):
    """J'_nu(x) = (nu/x) J_nu(x) - J_{nu+1}(x); the x = 0 limit is taken exactly."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    _check_box(nu, x_arr)
    positive = x_arr > 0
    out = np.empty_like(x_arr)
    xp = x_arr[positive]
    if xp.size:
        out[positive] = (nu / xp * _evaluate(nu, xp, None)
                         - _evaluate(nu + 1.0, xp, None))
    if nu == 1:
        at_zero = 0.5
    elif nu == 0 or nu > 1:
        at_zero = 0.0
    else:
        at_zero = math.inf
    out[~positive] = at_zero
    return float(out[0]) if np.ndim(x) == 0 else out


def bessel_i0(x):
    """Modified Bessel I_0(x) = sum_k (x/2)^{2k} / (k!)^2 for moderate x."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 50):
        raise DomainError("bessel_i0 is summed for |x| <= 50 only")
    q = 0.25 * x_arr * x_arr
    term = np.ones_like(x_arr)
    total = np.ones_like(x_arr)
    for k in range(1, 120):
        term = term * q / (k * k)
        total = total + term
    return total[()] if total.ndim == 0 else total
