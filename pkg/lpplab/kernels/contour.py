"""
Discretization of Gamma = -Gamma_- + Gamma_+, the rays u -> u e^{+-i pi/4},
and the single and double contour quadratures built on it.

A double contour kernel is always of the form

    (1/(2 pi i)^2) int_Gamma dw int_{Gamma + eps} dz  e^{-xz - yw + a(z) + b(w)} / (z + w)

with the z-contour moved right by eps so that z + w never vanishes. The
integrand is separable apart from 1/(z+w), so a whole (x, y) grid costs
two matrix products.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from lpplab.errors import ConvergenceError, DomainError
from lpplab.quadrature import composite_rule, graded_breakpoints

logger = logging.getLogger(__name__)

RAY = np.exp(0.25j * np.pi)

# e^-37 < 1e-16
NEGLIGIBLE_LOG = -37.0
MIN_U_MAX = 37.0

MAX_SHIFT = 0.25
MIN_NEAR = 0.05
IMAG_TOL = 1e-8

SCAN_STOP = 128.0
SCAN_LIMIT = 65536.0


@dataclass(frozen=True)
class ContourSpec:
    """
    Panels on [0, u_max] shared by both rays, Gauss-Legendre nodes on every
    panel, and the shift eps of the z-contour.
    """
    u_max: float
    origin_shift: float
    breakpoints: tuple[float, ...]
    nodes_per_panel: int = 16

    @property
    def panels(self) -> int:
        return len(self.breakpoints) - 1

    @classmethod
    def build(cls, u_max: float, t1: float = math.inf, nodes_per_panel: int = 16,
              origin_shift: float | None = None) -> "ContourSpec":
        """
        Graded panels for a contour whose integrand has poles at t_k >= t1 on
        the positive axis and the pinch of 1/(z+w) at the origin.
        """
        eps = min(t1 / 2, MAX_SHIFT) if origin_shift is None else origin_shift
        if not 0 <= eps < t1:
            raise DomainError(f"Contour shift {eps} must lie in [0, t_1={t1})")
        if u_max <= 0:
            raise DomainError(f"u_max must be positive, got {u_max}")
        near = max(min(eps, t1 - eps) / math.sqrt(2), MIN_NEAR)
        breakpoints = graded_breakpoints(u_max, near)
        return cls(float(u_max), float(eps), tuple(breakpoints), nodes_per_panel)

    def refined(self) -> "ContourSpec":
        """Every panel split in two."""
        b = np.asarray(self.breakpoints)
        mid = 0.5 * (b[1:] + b[:-1])
        points = np.empty(2 * len(b) - 1)
        points[0::2] = b
        points[1::2] = mid
        return ContourSpec(self.u_max, self.origin_shift, tuple(points), self.nodes_per_panel)

    def extended(self, extra_panels: int = 1) -> "ContourSpec":
        """Panels of the last width appended beyond u_max."""
        b = self.breakpoints
        width = b[-1] - b[-2]
        points = b + tuple(b[-1] + width * k for k in range(1, extra_panels + 1))
        return ContourSpec(points[-1], self.origin_shift, points, self.nodes_per_panel)

    def nodes(self, shift: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        """
        Points and oriented weights on shift + Gamma. The Gamma_+ ray runs
        outwards with weight e^{i pi/4} du; Gamma_- runs inwards, which is
        the sign -1 in front of e^{-i pi/4} du.
        """
        u, du = composite_rule(self.breakpoints, self.nodes_per_panel)
        points = np.concatenate((shift + u * RAY, shift + u * RAY.conjugate()))
        weights = np.concatenate((du * RAY, -du * RAY.conjugate()))
        return points, weights

    def to_dict(self) -> dict:
        return {"u_max": self.u_max, "origin_shift": self.origin_shift,
                "panels": self.panels, "nodes_per_panel": self.nodes_per_panel}


def _real_part(values: np.ndarray, what: str) -> np.ndarray:
    residue = np.abs(values.imag)
    if np.any(residue > IMAG_TOL * (1 + np.abs(values.real))):
        raise ConvergenceError(
            f"{what}: imaginary residue {residue.max():.3g} above tolerance")
    return values.real


def double_contour(z_exponent: Callable, w_exponent: Callable, xs, ys,
                   contour: ContourSpec) -> np.ndarray:
    """
    The double contour kernel on the grid xs x ys as a real matrix.
    z_exponent and w_exponent map arrays of contour points to a(z), b(w).
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    Z, dZ = contour.nodes(contour.origin_shift)
    W, dW = contour.nodes(0.0)
    a = z_exponent(Z)
    b = w_exponent(W)
    A = np.exp(-xs[:, None] * Z[None, :] + a[None, :]) * dZ[None, :]
    B = np.exp(-ys[:, None] * W[None, :] + b[None, :]) * dW[None, :]
    C = 1.0 / (Z[:, None] + W[None, :])
    K = -(A @ C @ B.T) / (4 * np.pi ** 2)
    return _real_part(K, "double contour")


def single_contour(exponent: Callable, xs, contour: ContourSpec,
                   shift: float = 0.0) -> np.ndarray:
    """(1/(2 pi i)) int_{shift + Gamma} e^{-x z + a(z)} dz on the points xs."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    Z, dZ = contour.nodes(shift)
    a = exponent(Z)
    values = np.exp(-xs[:, None] * Z[None, :] + a[None, :]) @ dZ
    return _real_part(values / (2j * np.pi), "single contour")


def envelope_radius(exponent: Callable, x_bound: float, shift: float = 0.0,
                    what: str = "integrand") -> float:
    """
    Smallest scanned u_0 such that the integrand bound

        log|e^{-xz + a(z)}| <= -u,   z = shift + u e^{+-i pi/4},

    holds on every scanned u >= u_0 for all |x| / sqrt(2) <= x_bound. The
    scan doubles its range until the bound dominates at the far end.
    """
    stop = SCAN_STOP
    while stop <= SCAN_LIMIT:
        u = np.concatenate((np.linspace(0.25, 64.0, 256),
                            np.geomspace(64.0, stop, 128)[1:]))
        z = shift + u * RAY
        envelope = np.real(exponent(z)) + x_bound * (u + math.sqrt(2) * shift)
        failing = np.nonzero(envelope > -u)[0]
        if failing.size == 0:
            return float(u[0])
        last = failing[-1]
        if last < len(u) - 1:
            radius = float(u[last + 1])
            logger.debug(f"{what}: envelope radius {radius:.3g} (scan to {stop:g})")
            return radius
        logger.debug(f"{what}: bound not dominant up to u={stop:g}, doubling the scan")
        stop *= 2
    raise ConvergenceError(
        f"{what}: decay bound e^(-u) never dominates up to u={SCAN_LIMIT:g}")
