"""
The finite-N two-line kernel K_N = K~_N - phi_{r,s}.

K~_N is evaluated in centered coordinates, where the parameter products
collapse to e^{H_{N+r}(z) - H_{N-r}(-z)} and e^{H_{N-s}(w) - H_{N+s}(-w)}.
"""
import logging
import math

import numpy as np
from scipy.optimize import brentq

from lpplab.errors import ConvergenceError, require_line_index
from lpplab.kernels.contour import (MAX_SHIFT, MIN_U_MAX, ContourSpec, double_contour,
                                    envelope_radius)
from lpplab.params import ParamSeq, centering
from lpplab.quadrature import composite_rule
from lpplab.specfun import H_M, primary_factor_log

logger = logging.getLogger(__name__)

# sum log(1 + lambda^2/t_k^2) at which |F_{N,r,s}(lambda)| = 1e-14
FOURIER_NEGLIGIBLE = 2 * 14 * math.log(10)
LAMBDA_CAP = 1e4
PHI_TOL = 1e-9


def line_exponent(seq: ParamSeq, N: int, r: int):
    """z -> H_{N+r}(z) - H_{N-r}(-z); with r -> -s it is the w-exponent."""
    def exponent(z):
        return H_M(seq, N + r, z) - H_M(seq, N - r, -z)
    return exponent


@require_line_index("r", "s")
def F_log(seq: ParamSeq, N: int, r: int, s: int, z, w, centered: bool = False):
    """
    log F(z, w) for F = prod_{k<=N+r}(1+z/t_k) prod_{k<=N-s}(1+w/t_k)
                        / prod_{k<=N-r}(1-z/t_k) prod_{k<=N+s}(1-w/t_k).

    With centered=True the factor e^{z c_{N,r} + w c_{N,s}} is removed, which
    is the integrand of the kernel in centered coordinates.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    value = line_exponent(seq, N, r)(z) + line_exponent(seq, N, -s)(w)
    if not centered:
        value = value + z * centering(seq, N, r) + w * centering(seq, N, s)
    return value[()] if np.ndim(value) == 0 else value


@require_line_index("r")
def truncation_radius(seq: ParamSeq, N: int, r: int, x_bound: float,
                      shift: float = 0.0) -> float:
    """
    Radius L beyond which |e^{-xz + H_{N+r}(z) - H_{N-r}(-z)}| <= e^{-u} on
    both rays, for every |x|/sqrt(2) <= x_bound.
    """
    radius = envelope_radius(line_exponent(seq, N, r), x_bound, shift,
                             what=f"line exponent {seq} N={N} r={r}")
    t_M = seq.t(N - abs(r))
    regime = "u >= t_M" if radius >= t_M else "u < t_M"
    logger.debug(f"truncation radius {radius:.4g} for {seq}, N={N}, r={r}, "
                 f"x_bound={x_bound:g} ({regime}, t_M={t_M:.4g})")
    return radius


def x_bound_of(xs) -> float:
    """Only negative x make e^{-x Re z} grow on the contour."""
    return max(0.0, -float(np.min(xs))) / math.sqrt(2)


def finite_contour(seq: ParamSeq, N: int, r: int, s: int, xs, ys,
                   nodes_per_panel: int = 16) -> ContourSpec:
    eps = min(seq.t1 / 2, MAX_SHIFT)
    u_max = max(truncation_radius(seq, N, r, x_bound_of(xs), eps),
                truncation_radius(seq, N, -s, x_bound_of(ys)),
                MIN_U_MAX)
    return ContourSpec.build(u_max, seq.t1, nodes_per_panel)


@require_line_index("r", "s")
def ktilde_grid(seq: ParamSeq, N: int, r: int, s: int, xs, ys,
                contour: ContourSpec | None = None) -> np.ndarray:
    """K~_N(r, x + c_{N,r}; s, y + c_{N,s}) on the grid xs x ys."""
    if contour is None:
        contour = finite_contour(seq, N, r, s, xs, ys)
    return double_contour(line_exponent(seq, N, r), line_exponent(seq, N, -s),
                          xs, ys, contour)


def ktilde_finite(seq: ParamSeq, N: int, r: int, s: int, x: float, y: float,
                  contour: ContourSpec | None = None) -> float:
    return float(ktilde_grid(seq, N, r, s, [x], [y], contour)[0, 0])


def _fourier_sets(seq: ParamSeq, N: int, r: int, s: int) -> tuple[np.ndarray, np.ndarray]:
    """t_k over k = N-s+1..N-r and over k = N+r+1..N+s."""
    return seq.values(N - s + 1, N - r), seq.values(N + r + 1, N + s)


@require_line_index("r", "s")
def fourier_factor_log(seq: ParamSeq, N: int, r: int, s: int, lam):
    """
    log F_{N,r,s}(lambda) = -sum_A log E(i lambda/t_k; 1) - sum_B log E(-i lambda/t_k; 1).
    Empty (zero) when r >= s.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    if r >= s:
        return np.zeros(lam.shape, dtype=complex)
    A, B = _fourier_sets(seq, N, r, s)
    u = 1j * lam[:, None]
    return -(primary_factor_log(u / A[None, :], 1).sum(axis=1)
             + primary_factor_log(-u / B[None, :], 1).sum(axis=1))


def _fourier_cutoff(t: np.ndarray) -> float:
    def excess(lam):
        return float(np.sum(np.log1p((lam / t) ** 2))) - FOURIER_NEGLIGIBLE

    if excess(LAMBDA_CAP) < 0:
        logger.warning(
            f"|F_N,r,s| stays above 1e-14 up to lambda={LAMBDA_CAP:g}; "
            "truncating the Fourier integral there")
        return LAMBDA_CAP
    return brentq(excess, 0.0, LAMBDA_CAP, xtol=1e-6)


def _psi(seq: ParamSeq, N: int, r: int, s: int, gaps: np.ndarray, width: float,
         cutoff: float) -> np.ndarray:
    """(1/pi) int_0^cutoff Re(e^{i lambda t} F(lambda)) d lambda for every gap t."""
    panels = max(1, math.ceil(cutoff / width))
    lam, dlam = composite_rule(np.linspace(0.0, cutoff, panels + 1))
    F = np.exp(fourier_factor_log(seq, N, r, s, lam))
    phase = np.exp(1j * np.outer(gaps, lam))
    return np.real(phase @ (F * dlam)) / np.pi


@require_line_index("r", "s")
def phi_grid(seq: ParamSeq, N: int, r: int, s: int, xs, ys) -> np.ndarray:
    """
    phi_{r,s}(x + c_{N,r}, y + c_{N,s}) = psi_{r,s}(y - x) on the grid xs x ys,
    identically zero when r >= s.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    if r >= s:
        return np.zeros((len(xs), len(ys)))

    gaps = (ys[None, :] - xs[:, None]).ravel()
    A, B = _fourier_sets(seq, N, r, s)
    t = np.concatenate((A, B))
    cutoff = _fourier_cutoff(t)
    width = min(1.0 / (1.0 + np.max(np.abs(gaps))), float(t.min()) / 2)

    coarse = _psi(seq, N, r, s, gaps, width, cutoff)
    fine = _psi(seq, N, r, s, gaps, width / 2, cutoff)
    error = np.max(np.abs(fine - coarse))
    if error > PHI_TOL * (1 + np.max(np.abs(fine))):
        raise ConvergenceError(
            f"phi_{r},{s}: Fourier quadrature changed by {error:.3g} under refinement")
    return fine.reshape(len(xs), len(ys))


def phi_finite(seq: ParamSeq, N: int, r: int, s: int, x: float, y: float) -> float:
    return float(phi_grid(seq, N, r, s, [x], [y])[0, 0])


def two_line_grid(seq: ParamSeq, N: int, r: int, s: int, xs, ys,
                  contour: ContourSpec | None = None) -> np.ndarray:
    """K_N = K~_N - phi_{r,s} in centered coordinates."""
    return ktilde_grid(seq, N, r, s, xs, ys, contour) - phi_grid(seq, N, r, s, xs, ys)


def two_line_kernel(seq: ParamSeq, N: int, r: int, s: int, x: float, y: float,
                    contour: ContourSpec | None = None) -> float:
    return float(two_line_grid(seq, N, r, s, [x], [y], contour)[0, 0])
