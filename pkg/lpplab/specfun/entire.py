"""
Weierstrass primary factors and the log-space products built from them.

All products over the parameter sequence are evaluated as sums of logarithms
of primary factors. Only exp of these sums is ever used downstream, so the
branch of the principal logarithm never matters.
"""
import logging
import math

import numpy as np

from lpplab.errors import DomainError, PoleError
from lpplab.params import Family, ParamSeq, counting, tail_sum

logger = logging.getLogger(__name__)

# |z| below which log E(z;p) is summed as a power series
SERIES_RADIUS = 0.5
SERIES_TERMS = 64

# k-chunk size when summing over the parameter sequence
K_CHUNK = 1024


def _log_primary(u: np.ndarray, p: int) -> np.ndarray:
    """log E(u;p) elementwise; -inf at u = 1."""
    u = np.asarray(u, dtype=complex)
    out = np.empty(u.shape, dtype=complex)
    small = np.abs(u) <= SERIES_RADIUS

    us = u[small]
    acc = np.zeros(us.shape, dtype=complex)
    power = us ** p
    radius = float(np.max(np.abs(us))) if us.size else 0.0
    n_terms = SERIES_TERMS
    if 0 < radius < SERIES_RADIUS:
        n_terms = min(SERIES_TERMS, int(math.ceil(-39 / math.log(radius))))
    for j in range(p + 1, p + n_terms + 1):
        power = power * us
        acc -= power / j
    out[small] = acc

    ub = u[~small]
    with np.errstate(divide="ignore"):
        direct = np.log(1 - ub)
    power = np.ones(ub.shape, dtype=complex)
    for j in range(1, p + 1):
        power = power * ub
        direct = direct + power / j
    out[~small] = direct
    return out


def primary_factor_log(z, p: int):
    """
    log E(z;p) = log(1-z) + z + z^2/2 + ... + z^p/p, principal branch.
    """
    if p not in (1, 2, 3):
        raise DomainError(f"primary factor order must be 1, 2 or 3, got {p}")
    z_arr = np.asarray(z, dtype=complex)
    if np.any(z_arr == 1):
        raise PoleError("log E(z;p) has a logarithmic pole at z = 1")
    out = _log_primary(z_arr, p)
    return out[()] if out.ndim == 0 else out


def _sum_over_k(seq: ParamSeq, M: int, z: np.ndarray, p: int, sign: float) -> np.ndarray:
    """sum_{k=1}^M log E(sign * z / t_k; p)."""
    total = np.zeros(z.shape, dtype=complex)
    flat = z.ravel()
    acc = np.zeros(flat.shape, dtype=complex)
    for start in range(1, M + 1, K_CHUNK):
        stop = min(start + K_CHUNK - 1, M)
        tk = seq.values(start, stop)
        acc += _log_primary(sign * flat[:, None] / tk[None, :], p).sum(axis=1)
    total[...] = acc.reshape(z.shape)
    return total


def H_M(seq: ParamSeq, M: int, z):
    """
    H_M(z) = sum_{k=1}^M log E(-z/t_k; 1), so that
    exp(H_M(z)) = prod_{k<=M} (1 + z/t_k) e^{-z/t_k}.
    """
    if M < 0:
        raise DomainError(f"H_M needs M >= 0, got {M}")
    z_arr = np.asarray(z, dtype=complex)
    if M > 0 and np.any(np.isin(-z_arr, seq.values(1, M))):
        raise PoleError(f"H_{M}: z hits a point -t_k")
    out = _sum_over_k(seq, M, z_arr, 1, -1.0)
    return out[()] if out.ndim == 0 else out


def required_genus(seq: ParamSeq) -> int:
    """Smallest genus p with sum_k t_k^{-(p+1)} finite."""
    if seq.family is Family.LINEAR:
        return 1
    if seq.family is Family.POWER:
        alpha = seq.alpha
        if alpha > 0.5:
            return 1
        if alpha > 1 / 3:
            return 2
        if alpha > 0.25:
            return 3
    raise DomainError(f"{seq} has no canonical product of genus <= 3")


def canonical_product_log(seq: ParamSeq, genus: int, z, tol: float = 1e-12,
                          M: int | None = None) -> tuple[np.ndarray, int]:
    """
    log G(z) for G(z) = prod_{k>=1} E(z/t_k; genus), with the certified
    number M of explicit factors.

    The factors beyond M are summed exactly as
    -sum_{j>genus} z^j/j * sum_{k>M} t_k^{-j}, which converges once
    |z| <= t_{M+1}/2. Points of the zero set give -inf.
    """
    if genus < required_genus(seq) or genus > 3:
        raise DomainError(
            f"genus {genus} does not give a convergent product for {seq}")
    z_arr = np.asarray(z, dtype=complex)
    zmax = float(np.max(np.abs(z_arr))) if z_arr.size else 0.0

    if M is None:
        M = max(8, counting(seq, 2 * zmax))
    q = zmax / seq.t(M + 1)
    if q > 0.75:
        raise DomainError(
            f"M={M} too small for |z|={zmax:g}: need t_(M+1) >= {zmax / 0.75:g}")

    with np.errstate(divide="ignore", invalid="ignore"):
        head = _sum_over_k(seq, M, z_arr, genus, 1.0)

    # tail terms decay like q^j times the first one
    first = zmax ** (genus + 1) * tail_sum(seq, M, genus + 1) if zmax else 0.0
    n_terms = 1
    if first > tol and q > 0:
        n_terms = int(math.ceil(math.log(first / (tol * (1 - q))) / -math.log(q))) + 1
    n_terms = min(max(n_terms, 1), 400)
    js = np.arange(genus + 1, genus + 1 + n_terms)
    T = tail_sum(seq, M, js.astype(float))

    tail = np.zeros(z_arr.shape, dtype=complex)
    for j, Tj in zip(js[::-1], T[::-1]):
        # Horner in z: tail = sum_j z^j Tj / j
        tail = (tail + Tj / j) * z_arr
    tail = tail * z_arr ** genus

    logger.debug(
        f"canonical product {seq} genus {genus}: M={M}, q={q:.3f}, tail terms={n_terms}")
    out = head - tail
    return (out[()] if out.ndim == 0 else out), M


def canonical_product(seq: ParamSeq, genus: int, z, tol: float = 1e-12,
                      M: int | None = None):
    """G(z) and its certified M; exactly 0 on the zero set {t_k}."""
    log_value, M = canonical_product_log(seq, genus, z, tol, M)
    with np.errstate(over="ignore"):
        value = np.where(np.isneginf(np.real(log_value)), 0.0, np.exp(log_value))
    return (value[()] if np.ndim(value) == 0 else value), M
