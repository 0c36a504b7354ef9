"""
Airy function Ai and its derivative on the real line.

Three branches, chosen for relative accuracy near 1e-10:

- x < -7: oscillatory asymptotic expansion,
- -7 <= x <= 3: Maclaurin series,
- x > 3: Macdonald integral Ai(x) = sqrt(x/3)/pi * K_{1/3}(zeta), with
  K_nu(zeta) = int_0^inf exp(-zeta cosh t) cosh(nu t) dt summed by the
  trapezoidal rule, which converges geometrically for this integrand.
"""
import math

import numpy as np

from lpplab.errors import require_in_range

AI0 = 0.355028053887817239  # Ai(0) = 3^{-2/3} / Gamma(2/3)
AIP0 = -0.258819403792806798  # Ai'(0) = -3^{-1/3} / Gamma(1/3)

NEGATIVE_SWITCH = -7.0
POSITIVE_SWITCH = 3.0

MACLAURIN_TERMS = 60
ASYMPTOTIC_TERMS = 24
TRAPEZOID_STEP = 0.1


def _asymptotic_coefficients(n: int) -> tuple[np.ndarray, np.ndarray]:
    """u_k and v_k = -(6k+1)/(6k-1) u_k for k < n."""
    u = np.empty(n)
    u[0] = 1.0
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
    k = np.arange(n)
    v = -(6 * k + 1) / (6 * k - 1) * u
    return u, v


U_COEF, V_COEF = _asymptotic_coefficients(ASYMPTOTIC_TERMS)


def _maclaurin_coefficients(n: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.ones(n)
    b = np.ones(n)
    for k in range(1, n):
        a[k] = a[k - 1] / ((3 * k) * (3 * k - 1))
        b[k] = b[k - 1] / ((3 * k + 1) * (3 * k))
    return a, b


A_COEF, B_COEF = _maclaurin_coefficients(MACLAURIN_TERMS)


def _maclaurin(x: np.ndarray, derivative: bool) -> np.ndarray:
    # Ai = AI0 f + AIP0 g, f = sum a_k x^{3k}, g = sum b_k x^{3k+1}; Horner in x^3
    y = x ** 3
    k = np.arange(MACLAURIN_TERMS)
    if derivative:
        f_coef = (3 * k * A_COEF)[1:]        # f' = x^2 sum_{k>=1} 3k a_k y^{k-1}
        g_coef = (3 * k + 1) * B_COEF        # g' = sum (3k+1) b_k y^k
    else:
        f_coef, g_coef = A_COEF, B_COEF
    f = np.zeros_like(x)
    for c in f_coef[::-1]:
        f = f * y + c
    g = np.zeros_like(x)
    for c in g_coef[::-1]:
        g = g * y + c
    if derivative:
        return AI0 * x ** 2 * f + AIP0 * g
    return AI0 * f + AIP0 * x * g


def _macdonald(x: np.ndarray, nu: float) -> np.ndarray:
    """exp(zeta) * K_nu(zeta) at zeta = 2/3 x^{3/2}, for x > 0."""
    zeta = 2.0 / 3.0 * x ** 1.5
    t_max = math.acosh(1.0 + 50.0 / float(np.min(zeta)))
    # the peak at t = 0 has width zeta^{-1/2}; aliasing error ~ exp(-2 pi^2 / (zeta h^2))
    h = min(TRAPEZOID_STEP, 0.7 / math.sqrt(float(np.max(zeta))))
    t = np.arange(0.0, t_max + h, h)
    w = np.full(t.shape, h)
    w[0] *= 0.5
    integrand = np.exp(-zeta[:, None] * (np.cosh(t)[None, :] - 1.0)) * np.cosh(nu * t)[None, :]
    return integrand @ w


def _positive(x: np.ndarray, derivative: bool) -> np.ndarray:
    zeta = 2.0 / 3.0 * x ** 1.5
    if derivative:
        return -x / (math.pi * math.sqrt(3.0)) * np.exp(-zeta) * _macdonald(x, 2.0 / 3.0)
    return np.sqrt(x / 3.0) / math.pi * np.exp(-zeta) * _macdonald(x, 1.0 / 3.0)


def _negative(x: np.ndarray, derivative: bool) -> np.ndarray:
    z = -x
    zeta = 2.0 / 3.0 * z ** 1.5
    inv = 1.0 / zeta
    coef = V_COEF if derivative else U_COEF
    even = np.zeros_like(z)
    odd = np.zeros_like(z)
    for k in range(ASYMPTOTIC_TERMS // 2):
        sign = (-1) ** k
        even += sign * coef[2 * k] * inv ** (2 * k)
        odd += sign * coef[2 * k + 1] * inv ** (2 * k + 1)
    phase = zeta - math.pi / 4
    if derivative:
        return z ** 0.25 / math.sqrt(math.pi) * (np.sin(phase) * even - np.cos(phase) * odd)
    return z ** -0.25 / math.sqrt(math.pi) * (np.cos(phase) * even + np.sin(phase) * odd)


def _evaluate(x, derivative: bool, branch: str | None = None):
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x_arr)
    if branch is None:
        neg = x_arr < NEGATIVE_SWITCH
        pos = x_arr > POSITIVE_SWITCH
    else:
        neg = np.full(x_arr.shape, branch == "asymptotic")
        pos = np.full(x_arr.shape, branch == "integral")
    mid = ~(neg | pos)
    if neg.any():
        out[neg] = _negative(x_arr[neg], derivative)
    if pos.any():
        out[pos] = _positive(x_arr[pos], derivative)
    if mid.any():
        out[mid] = _maclaurin(x_arr[mid], derivative)
    return float(out[0]) if np.ndim(x) == 0 else out


@require_in_range("x", 0, -40.0, 200.0)
def airy(x, branch: str | None = None):
    """
    Ai(x) for real x in [-40, 200].
    `branch` forces "series", "asymptotic" or "integral" for switchover checks.
    """
    return _evaluate(x, derivative=False, branch=branch)


@require_in_range("x", 0, -40.0, 200.0)
def airy_prime(x, branch: str | None = None, method: str = "analytic"):
    """
    Ai'(x). method="fd" takes a central difference of airy, with the step
    chosen so the Ai'' = x Ai correction stays below 1e-10.
    """
    if method == "fd":
        h = 1e-5
        x_arr = np.asarray(x, dtype=float)
        return (airy(x_arr + h) - airy(x_arr - h)) / (2 * h)
    return _evaluate(x, derivative=True, branch=branch)
