"""
Limits of the two-line kernel when the parameters decay fast enough for the
canonical products to converge: the hard-edge kernel, its Gaussian-deformed
case-b version with the heat kernel, and the Bessel kernel it is conjugate to.
"""
import logging
import math

import numpy as np

from lpplab.errors import DomainError, require_in_range, require_power_family
from lpplab.kernels.contour import MAX_SHIFT, MIN_U_MAX, ContourSpec, double_contour, envelope_radius
from lpplab.kernels.finite import x_bound_of
from lpplab.params import ParamSeq
from lpplab.specfun import bessel_j, bessel_j_prime, canonical_product_log, required_genus

logger = logging.getLogger(__name__)

# |x - y| below which the Bessel kernel uses its diagonal at the midpoint
DIAGONAL_GAP = 1e-6


def reflection_exponent(seq: ParamSeq, genus: int):
    """z -> log G(-z) - log G(z)."""
    def exponent(z):
        log_minus, _ = canonical_product_log(seq, genus, -z)
        log_plus, _ = canonical_product_log(seq, genus, z)
        return log_minus - log_plus
    return exponent


def _genus_for(seq: ParamSeq, genus: int | None) -> int:
    if genus is None:
        genus = required_genus(seq)
        if genus != 1:
            raise DomainError(
                f"hard-edge limit needs Linear(beta) or Power(alpha > 1/2), got {seq}")
    elif genus < required_genus(seq):
        raise DomainError(f"genus {genus} is too small for {seq}")
    return genus


def limit_contour(z_exponent, w_exponent, t1: float, xs, ys,
                  nodes_per_panel: int = 16) -> ContourSpec:
    eps = min(t1 / 2, MAX_SHIFT)
    u_max = max(envelope_radius(z_exponent, x_bound_of(xs), eps, what="z exponent"),
                envelope_radius(w_exponent, x_bound_of(ys), 0.0, what="w exponent"),
                MIN_U_MAX)
    return ContourSpec.build(u_max, t1, nodes_per_panel)


def hard_edge_contour(seq: ParamSeq, xs, ys, genus: int | None = None,
                      nodes_per_panel: int = 16) -> ContourSpec:
    exponent = reflection_exponent(seq, _genus_for(seq, genus))
    return limit_contour(exponent, exponent, seq.t1, xs, ys, nodes_per_panel)


def hard_edge_grid(seq: ParamSeq, xs, ys, contour: ContourSpec | None = None,
                   genus: int | None = None) -> np.ndarray:
    """
    K(x, y) = (1/(2 pi i)^2) int int e^{-xz-yw}/(z+w) G(-z)G(-w)/(G(z)G(w))
    on the grid xs x ys. `genus` overrides the product genus, which lets a
    case-b sequence be evaluated in hard-edge form.
    """
    exponent = reflection_exponent(seq, _genus_for(seq, genus))
    if contour is None:
        contour = limit_contour(exponent, exponent, seq.t1, xs, ys)
    return double_contour(exponent, exponent, xs, ys, contour)


def hard_edge_limit(seq: ParamSeq, x: float, y: float, contour: ContourSpec | None = None,
                    genus: int | None = None) -> float:
    return float(hard_edge_grid(seq, [x], [y], contour, genus)[0, 0])


def _check_times(tau: float, sigma: float):
    for name, value in (("tau", tau), ("sigma", sigma)):
        if not -3 <= value <= 3:
            raise DomainError(f"{name}={value} outside the supported box [-3, 3]")


def _case_b_exponents(seq: ParamSeq, tau: float, sigma: float):
    """e^{-tau z^2 + sigma w^2} on top of the genus-2 reflection."""
    _check_times(tau, sigma)
    reflection = reflection_exponent(seq, 2)

    def z_exponent(z):
        return reflection(z) - tau * z ** 2

    def w_exponent(w):
        return reflection(w) + sigma * w ** 2

    return z_exponent, w_exponent


@require_power_family(1 / 3, 1 / 2)
def case_b_contour(seq: ParamSeq, tau: float, sigma: float, xs, ys,
                   nodes_per_panel: int = 16) -> ContourSpec:
    z_exponent, w_exponent = _case_b_exponents(seq, tau, sigma)
    return limit_contour(z_exponent, w_exponent, seq.t1, xs, ys, nodes_per_panel)


@require_power_family(1 / 3, 1 / 2)
def case_b_grid(seq: ParamSeq, tau: float, sigma: float, xs, ys,
                contour: ContourSpec | None = None) -> np.ndarray:
    """The hard-edge form with e^{-tau z^2 + sigma w^2} and genus-2 products."""
    z_exponent, w_exponent = _case_b_exponents(seq, tau, sigma)
    if contour is None:
        contour = limit_contour(z_exponent, w_exponent, seq.t1, xs, ys)
    return double_contour(z_exponent, w_exponent, xs, ys, contour)


def case_b_limit(seq: ParamSeq, tau: float, sigma: float, x: float, y: float,
                 contour: ContourSpec | None = None) -> float:
    return float(case_b_grid(seq, tau, sigma, [x], [y], contour)[0, 0])


def phi_gaussian(sigma_minus_tau: float, t):
    """Heat kernel e^{-t^2/(4c)} / sqrt(4 pi c) at time c = sigma - tau."""
    if not sigma_minus_tau > 0:
        raise DomainError(f"phi_gaussian needs sigma - tau > 0, got {sigma_minus_tau}")
    c = sigma_minus_tau
    return np.exp(-np.square(t) / (4 * c)) / math.sqrt(4 * math.pi * c)


@require_in_range("nu", 0, 0.0, 9.0)
def bessel_kernel(nu: float, x, y):
    """
    K(x,y) = [J(sqrt x) sqrt y J'(sqrt y) - sqrt x J'(sqrt x) J(sqrt y)] / (2(x-y))
    with J = J_nu, and (J'^2 + (1 - nu^2/x) J^2)/4 on the diagonal.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("bessel_kernel needs x > 0 and y > 0")
    near = np.abs(x - y) < DIAGONAL_GAP * np.maximum(1.0, np.abs(x))
    # off-diagonal formula with a harmless denominator on the diagonal
    d = np.where(near, 1.0, x - y)
    sx, sy = np.sqrt(x), np.sqrt(y)
    Jx, Jy = bessel_j(nu, sx), bessel_j(nu, sy)
    dJx, dJy = bessel_j_prime(nu, sx), bessel_j_prime(nu, sy)
    off = (Jx * sy * dJy - sx * dJx * Jy) / (2 * d)

    m = np.sqrt(0.5 * (x + y))
    Jm, dJm = bessel_j(nu, m), bessel_j_prime(nu, m)
    diag = 0.25 * (dJm ** 2 + (1 - nu ** 2 / m ** 2) * Jm ** 2)
    out = np.where(near, diag, off)
    return out[()] if out.ndim == 0 else out
