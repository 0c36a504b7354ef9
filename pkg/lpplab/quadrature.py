"""
Composite Gauss-Legendre rules shared by the contour, Fourier and
Fredholm discretizations.
"""
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the order-point rule on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_rule(breakpoints, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights of the order-point Gauss-Legendre rule applied on every
    panel [b_k, b_{k+1}] of the increasing breakpoint sequence.
    """
    b = np.asarray(breakpoints, dtype=float)
    x, w = gauss_legendre(order)
    half = 0.5 * np.diff(b)
    mid = 0.5 * (b[1:] + b[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def graded_breakpoints(length: float, near: float, ratio: float = 0.8,
                       max_width: float = 1.0, slope: float = 2 ** -0.5) -> np.ndarray:
    """
    Breakpoints on [0, length] whose panel widths are at most `ratio` times
    the distance to the nearest singularity, bounded below by
    max(slope * u, near), and never wider than max_width.
    """
    points = [0.0]
    while points[-1] < length:
        u = points[-1]
        width = min(max_width, ratio * max(slope * u, near))
        points.append(min(length, u + width))
    return np.array(points)


def panel_breakpoints(length: float, panels: int) -> np.ndarray:
    return np.linspace(0.0, length, panels + 1)
