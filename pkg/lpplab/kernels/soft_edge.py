"""
Airy-type kernels: the static Airy kernel, the extended Airy kernel, the
Gaussian-Airy integral and the cubic contour integrals that produce them.
"""
import logging
import math

import numpy as np

from lpplab.errors import ConvergenceError, DomainError
from lpplab.kernels.contour import MIN_U_MAX, ContourSpec, double_contour, envelope_radius, \
    single_contour
from lpplab.kernels.finite import x_bound_of
from lpplab.kernels.limits import phi_gaussian
from lpplab.quadrature import composite_rule, panel_breakpoints
from lpplab.specfun import airy, airy_prime

logger = logging.getLogger(__name__)

AIRY_LOW, AIRY_HIGH = -40.0, 200.0

# Ai(12)^2 < 1e-26, so the integrals over [0, inf) stop once both arguments pass it
AIRY_NEGLIGIBLE_ARG = 12.0
TAIL_LOG = math.log(1e-14)
PANEL_WIDTH = 0.25
DIAGONAL_GAP = 1e-6
DIRECT_TAIL_TOL = 1e-10


def airy_kernel(x, y):
    """
    A(x, y) = (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y), Ai'(x)^2 - x Ai(x)^2 on
    the diagonal. Broadcasts over x and y.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    near = np.abs(x - y) < DIAGONAL_GAP
    d = np.where(near, 1.0, x - y)
    off = (airy(x) * airy_prime(y) - airy_prime(x) * airy(y)) / d
    m = 0.5 * (x + y)
    diag = airy_prime(m) ** 2 - m * airy(m) ** 2
    out = np.where(near, diag, off)
    return out[()] if out.ndim == 0 else out


def airy_product_integral(c: float, xi: float, eta: float, low: float, high: float) -> float:
    """int_low^high e^{c lam} Ai(xi + lam) Ai(eta + lam) d lam by composite Gauss-Legendre."""
    if high <= low:
        return 0.0
    panels = max(1, math.ceil((high - low) / PANEL_WIDTH))
    lam, w = composite_rule(low + panel_breakpoints(high - low, panels))
    return float(np.sum(w * np.exp(c * lam) * airy(xi + lam) * airy(eta + lam)))


def laplace_airy(c: float, xi: float, eta: float) -> float:
    """
    int_0^inf e^{c lam} Ai(xi + lam) Ai(eta + lam) d lam, with the cutoff
    pushed out until the integrand bound drops below 1e-14.
    """
    cutoff = max(AIRY_NEGLIGIBLE_ARG - min(xi, eta), 1.0)
    if c > 0:
        while True:
            top = max(xi, eta) + cutoff
            if top > AIRY_HIGH:
                raise ConvergenceError(
                    f"Airy tail bound unachievable for c={c}, xi={xi}, eta={eta}")
            with np.errstate(divide="ignore"):
                log_bound = (c * cutoff + math.log(abs(airy(xi + cutoff)))
                             + math.log(abs(airy(eta + cutoff))))
            if log_bound < TAIL_LOG:
                break
            cutoff += 2.0
    return airy_product_integral(c, xi, eta, 0.0, cutoff)


def okounkov_integral(c: float, xi: float, eta: float, method: str = "closed") -> float:
    """
    int_R e^{c lam} Ai(xi + lam) Ai(eta + lam) d lam for c > 0:

        (4 pi c)^{-1/2} exp(-(xi-eta)^2/(4c) - c(xi+eta)/2 + c^3/12).

    method="quadrature" integrates directly, truncating the oscillatory left
    tail where e^{c lam} < 1e-16 or at the edge of the Airy range.
    """
    if not c > 0:
        raise DomainError(f"okounkov_integral needs c > 0, got {c}")
    if method == "closed":
        return (4 * math.pi * c) ** -0.5 * math.exp(
            -(xi - eta) ** 2 / (4 * c) - c * (xi + eta) / 2 + c ** 3 / 12)
    if method != "quadrature":
        raise DomainError(f"Unknown method '{method}'")
    low = max(AIRY_LOW - min(xi, eta), -37.0 / c)
    if c * low > -20:
        logger.warning(f"okounkov_integral: left tail truncated at e^(c lam)={math.exp(c * low):.3g}")
    return airy_product_integral(c, xi, eta, low, 0.0) + laplace_airy(c, xi, eta)


def _check_box(**values):
    for name, value in values.items():
        if not -6 <= value <= 6:
            raise DomainError(f"{name}={value} outside the supported box [-6, 6]")


def direct_tail_bound(c: float, xi: float, eta: float, low: float) -> float:
    """
    Bound on the dropped piece int_{-inf}^low e^{c lam} Ai(xi+lam) Ai(eta+lam) d lam
    from the envelope |Ai(-x)| <= pi^{-1/2} max(x, 1)^{-1/4}.
    """
    nearest = max(-(max(xi, eta) + low), 1.0)
    return math.exp(c * low) / (c * math.pi * math.sqrt(nearest))


def extended_airy(tau: float, xi: float, sigma: float, eta: float,
                  path: str = "closed") -> float:
    """
    A(tau, xi; sigma, eta)
      = int_0^inf e^{-lam(tau-sigma)} Ai(xi+lam) Ai(eta+lam) d lam,     tau >= sigma
      = -int_{-inf}^0 e^{-lam(tau-sigma)} Ai(xi+lam) Ai(eta+lam) d lam, tau < sigma

    For tau < sigma, path="closed" subtracts the Gaussian-Airy closed form
    from the [0, inf) part and path="direct" integrates over (-inf, 0]. The
    direct integral stops where Ai leaves its range; when the envelope bound
    on the dropped tail exceeds DIRECT_TAIL_TOL the closed path is used.
    """
    _check_box(tau=tau, xi=xi, sigma=sigma, eta=eta)
    c = sigma - tau
    if c <= 0:
        return laplace_airy(c, xi, eta)
    if path not in ("closed", "direct"):
        raise DomainError(f"Unknown path '{path}'")
    if path == "direct":
        low = max(-37.0 / c, AIRY_LOW - min(xi, eta))
        tail = direct_tail_bound(c, xi, eta, low)
        if tail <= DIRECT_TAIL_TOL:
            return -airy_product_integral(c, xi, eta, low, 0.0)
        logger.info(f"extended_airy: direct tail bound {tail:.3g} at c={c:g}, using closed path")
    return laplace_airy(c, xi, eta) - okounkov_integral(c, xi, eta)


def shifted_airy(xi, tau: float = 0.0):
    """e^{-2 tau^3/3 - xi tau} Ai(xi + tau^2)."""
    xi = np.asarray(xi, dtype=float)
    out = np.exp(-2 * tau ** 3 / 3 - xi * tau) * airy(xi + tau ** 2)
    return out[()] if np.ndim(out) == 0 else out


def cubic_exponent(quadratic: float):
    """zeta -> quadratic * zeta^2 + zeta^3 / 3."""
    def exponent(z):
        return quadratic * z ** 2 + z ** 3 / 3
    return exponent


def contour_airy(xi, tau: float = 0.0, contour: ContourSpec | None = None):
    """(1/(2 pi i)) int_Gamma e^{-zeta xi - tau zeta^2 + zeta^3/3} d zeta."""
    xis = np.atleast_1d(np.asarray(xi, dtype=float))
    exponent = cubic_exponent(-tau)
    if contour is None:
        u_max = max(envelope_radius(exponent, x_bound_of(xis), what="cubic"), MIN_U_MAX)
        contour = ContourSpec.build(u_max)
    out = single_contour(exponent, xis, contour)
    return float(out[0]) if np.ndim(xi) == 0 else out


def extended_airy_contour_grid(tau: float, sigma: float, xis, etas,
                               contour: ContourSpec | None = None) -> np.ndarray:
    """
    (1/(2 pi i)^2) int int e^{-xi zeta - eta omega}/(zeta + omega)
                   e^{-tau zeta^2 + zeta^3/3 + sigma omega^2 + omega^3/3}
    on the grid xis x etas.
    """
    z_exponent, w_exponent = cubic_exponent(-tau), cubic_exponent(sigma)
    if contour is None:
        u_max = max(envelope_radius(z_exponent, x_bound_of(xis), 0.25, what="cubic z"),
                    envelope_radius(w_exponent, x_bound_of(etas), what="cubic w"),
                    MIN_U_MAX)
        contour = ContourSpec.build(u_max)
    return double_contour(z_exponent, w_exponent, xis, etas, contour)


def extended_airy_contour(tau: float, xi: float, sigma: float, eta: float,
                          contour: ContourSpec | None = None) -> float:
    return float(extended_airy_contour_grid(tau, sigma, [xi], [eta], contour)[0, 0])


def extended_airy_laplace(tau: float, xi: float, sigma: float, eta: float) -> float:
    """
    The same double integral through the Laplace representation of 1/(zeta+omega):
    e^{2(sigma^3-tau^3)/3 + sigma eta - xi tau}
        int_0^inf e^{(sigma-tau) lam} Ai(xi+tau^2+lam) Ai(eta+sigma^2+lam) d lam.
    """
    prefactor = math.exp(2 * (sigma ** 3 - tau ** 3) / 3 + sigma * eta - xi * tau)
    return prefactor * laplace_airy(sigma - tau, xi + tau ** 2, eta + sigma ** 2)


def case_c_conjugation(tau: float, xi: float, sigma: float, eta: float,
                       d_N: float = 1.0, form: str = "resolved") -> float:
    """
    d_N e^{-tau^3/3 + sigma^3/3 - sigma eta + tau xi}, the factor carrying the
    rescaled finite-N kernel onto the extended Airy kernel. form="printed"
    gives the variant with +tau^3/3, which agrees only at tau = 0.
    """
    forms = {"resolved": -1.0, "printed": 1.0}
    if form not in forms:
        raise DomainError(f"Unknown conjugation form '{form}'")
    return d_N * math.exp(forms[form] * tau ** 3 / 3 + sigma ** 3 / 3
                          - sigma * eta + tau * xi)


def rescaled_case_c_limit(tau: float, xi: float, sigma: float, eta: float,
                          contour: ContourSpec | None = None, form: str = "resolved") -> float:
    """
    The case-c limit object assembled from its parts: the double contour limit
    of d_N K~_N at (xi - tau^2, eta - sigma^2), minus the heat-kernel limit of
    d_N phi when tau < sigma, times the conjugation factor.
    """
    xi_shift, eta_shift = xi - tau ** 2, eta - sigma ** 2
    value = extended_airy_contour(tau, xi_shift, sigma, eta_shift, contour)
    if tau < sigma:
        value -= float(phi_gaussian(sigma - tau, eta_shift - xi_shift))
    return case_c_conjugation(tau, xi, sigma, eta, form=form) * value
