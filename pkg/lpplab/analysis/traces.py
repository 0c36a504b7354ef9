"""
Finite-matrix check of the two-line determinant: a point process on two
copies of a line with kernel K_ext against single-line determinants with
the combined weights g = phi_1 + phi_2 -+ phi_1 phi_2.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from lpplab.errors import DomainError

logger = logging.getLogger(__name__)

MAX_SIZE = 12
KERNEL_NORM = 0.4
RADIUS_GUARD = 0.6
MATCH_TOL = 1e-10
SERIES_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class TwoLineKernelMatrix:
    """
    K_ext(i, x; j, y) = K(x, y) - delta(x - y) 1[i < j] on two lines, with the
    discrete delta equal to the identity.
    """
    base: np.ndarray

    def __post_init__(self):
        K = np.asarray(self.base, dtype=float)
        if K.ndim != 2 or K.shape[0] != K.shape[1]:
            raise DomainError(f"Base kernel must be square, got shape {K.shape}")
        if not np.allclose(K, K.T, atol=0.0, rtol=0.0):
            raise DomainError("Base kernel must be symmetric")

    @property
    def n(self) -> int:
        return self.base.shape[0]

    def extended(self) -> np.ndarray:
        K = np.asarray(self.base, dtype=float)
        return np.block([[K, K - np.eye(self.n)], [K, K]])


@dataclass
class TraceReport:
    n: int
    seed: int
    det_ext: float
    det_plus: float
    det_minus: float
    match: str
    spectral_radius: float
    trace_gaps: list[float] = field(default_factory=list)
    series_ext: float = 0.0
    series_single: float = 0.0

    @property
    def series_agree(self) -> bool:
        return (abs(self.series_ext - np.log(self.det_ext)) < SERIES_TOL
                and abs(self.series_single - np.log(self.det_ext)) < SERIES_TOL)

    def to_dict(self) -> dict:
        return {"n": self.n, "seed": self.seed, "det_ext": self.det_ext,
                "det_plus": self.det_plus, "det_minus": self.det_minus,
                "match": self.match, "spectral_radius": self.spectral_radius,
                "trace_gaps": self.trace_gaps, "series_ext": self.series_ext,
                "series_single": self.series_single, "series_agree": self.series_agree}


def random_contraction(n: int, rng: np.random.Generator, norm: float = KERNEL_NORM) -> np.ndarray:
    """A random symmetric matrix scaled to spectral norm `norm`."""
    A = rng.standard_normal((n, n))
    K = 0.5 * (A + A.T)
    return K * (norm / np.linalg.norm(K, 2))


def log_det_series(M: np.ndarray, terms: int) -> float:
    """-sum_{m <= terms} Tr(M^m) / m."""
    total, power = 0.0, np.eye(M.shape[0])
    for m in range(1, terms + 1):
        power = power @ M
        total -= np.trace(power) / m
    return float(total)


def trace_identity_check(n: int, seed: int, phi1=None, phi2=None, terms: int = 60,
                         max_power: int = 6) -> TraceReport:
    """
    det(I - K_ext diag(phi_1, phi_2)) against det(I - K diag(g+-)) for a random
    symmetric K with ||K|| = 0.4 and weights drawn from [0, 1/2), plus the
    per-power trace differences and both truncated log-det series.
    """
    if not 1 <= n <= MAX_SIZE:
        raise DomainError(f"trace_identity_check needs 1 <= n <= {MAX_SIZE}, got {n}")
    rng = np.random.Generator(np.random.Philox(key=seed))
    K = random_contraction(n, rng)
    phi1 = rng.uniform(0.0, 0.5, n) if phi1 is None else np.asarray(phi1, dtype=float)
    phi2 = rng.uniform(0.0, 0.5, n) if phi2 is None else np.asarray(phi2, dtype=float)

    M_ext = TwoLineKernelMatrix(K).extended() @ np.diag(np.concatenate((phi1, phi2)))
    radius = float(np.max(np.abs(np.linalg.eigvals(M_ext))))
    if radius >= RADIUS_GUARD:
        raise DomainError(f"Spectral radius {radius:.3f} of K_ext phi is above {RADIUS_GUARD}")

    identity = np.eye(n)
    g_plus = phi1 + phi2 + phi1 * phi2
    g_minus = phi1 + phi2 - phi1 * phi2
    det_ext = float(np.linalg.det(np.eye(2 * n) - M_ext))
    det_plus = float(np.linalg.det(identity - K @ np.diag(g_plus)))
    det_minus = float(np.linalg.det(identity - K @ np.diag(g_minus)))

    plus_ok = abs(det_ext - det_plus) <= MATCH_TOL
    minus_ok = abs(det_ext - det_minus) <= MATCH_TOL
    match = {(True, True): "both", (True, False): "plus",
             (False, True): "minus", (False, False): "none"}[(plus_ok, minus_ok)]

    M_single = K @ np.diag(g_plus if match == "plus" else g_minus)
    gaps = []
    P_ext, P_single = np.eye(2 * n), identity
    for _ in range(max_power):
        P_ext, P_single = P_ext @ M_ext, P_single @ M_single
        gaps.append(float(np.trace(P_ext) - np.trace(P_single)))

    report = TraceReport(n, seed, det_ext, det_plus, det_minus, match, radius, gaps,
                         log_det_series(M_ext, terms), log_det_series(M_single, terms))
    logger.debug(f"trace identity n={n} seed={seed}: match={match}, radius={radius:.3f}")
    return report
