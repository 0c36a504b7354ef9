import logging
import math

import numpy as np

from lpplab.errors import DomainError, require_line_index
from lpplab.params.sequences import Family, ParamSeq

logger = logging.getLogger(__name__)

# B_2, B_4, ..., B_16
BERNOULLI_EVEN = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6,
                  -3617 / 510)

# Terms summed explicitly before the Euler-Maclaurin tail of an infinite sum.
INFINITE_SUM_HEAD = 1000

# Chunk size for compensated summation of long partial sums.
SUM_CHUNK = 1 << 20


def partial_sum(seq: ParamSeq, M: int | float, j: int) -> float:
    """
    c_M^{(j)} = sum_{k=1}^M 1/t_k^j.

    M may be math.inf, in which case the sum is taken to INFINITE_SUM_HEAD
    terms and completed with tail_sum.
    """
    if j < 1:
        raise DomainError(f"partial_sum needs j >= 1, got {j}")
    if M == math.inf:
        head = partial_sum(seq, INFINITE_SUM_HEAD, j)
        return head + float(tail_sum(seq, INFINITE_SUM_HEAD, j))
    if M < 0:
        raise DomainError(f"partial_sum needs M >= 0, got {M}")

    chunk_sums = []
    for start in range(1, int(M) + 1, SUM_CHUNK):
        stop = min(start + SUM_CHUNK - 1, int(M))
        chunk_sums.append(math.fsum(seq.values(start, stop) ** (-float(j))))
    return math.fsum(chunk_sums)


def tail_sum(seq: ParamSeq, M: int, s) -> np.ndarray | float:
    """
    sum_{k>M} t_k^{-s} for a scalar or array of exponents s.

    The head of the tail is summed explicitly and the rest by Euler-Maclaurin
    on f(x) = (x + shift)^{-a}, whose derivatives are closed form.
    """
    if seq.family is Family.CONSTANT:
        raise DomainError(f"tail_sum diverges for {seq}")
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    shift, _ = seq.power_law(1.0)
    a = s_arr * (seq.alpha if seq.family is Family.POWER else 1.0)
    if np.any(a <= 1):
        raise DomainError(
            f"tail_sum diverges for {seq} with exponents {s_arr[a <= 1]}")

    K0 = M + max(16, int(math.ceil(2 * a.max())))
    k = np.arange(M + 1, K0 + 1, dtype=float) + shift
    head = np.sum(k[None, :] ** (-a[:, None]), axis=1)

    x = K0 + 1 + shift
    total = x ** (1 - a) / (a - 1) + 0.5 * x ** (-a)
    rising = a.copy()
    for p, b2p in enumerate(BERNOULLI_EVEN, start=1):
        # rising = (a)_{2p-1}
        total = total + b2p / math.factorial(2 * p) * rising * x ** (-a - 2 * p + 1)
        rising = rising * (a + 2 * p - 1) * (a + 2 * p)

    result = head + total
    if np.ndim(s) == 0:
        return float(result[0])
    return result


@require_line_index("r")
def centering(seq: ParamSeq, N: int, r: int) -> float:
    """c_{N,r} = c_{N+r}^{(1)} + c_{N-r}^{(1)}."""
    return partial_sum(seq, N + r, 1) + partial_sum(seq, N - r, 1)


def centering_profile(seq: ParamSeq, N: int) -> np.ndarray:
    """c_{N,k} for k = -(N-1), ..., N-1, from one cumulative sum."""
    cumulative = np.concatenate(([0.0], np.cumsum(1.0 / seq.values(1, 2 * N - 1))))
    k = np.arange(-(N - 1), N)
    return cumulative[N + k] + cumulative[N - k]


def variance_heuristic(alpha: float, m: int, n: int | float) -> float:
    """
    Approximate variance of sum_{j=m}^n X_j with X_j ~ Exp(j^alpha).
    n may be math.inf; the alpha <= 1/2 branch then diverges.
    """
    if not 0 < alpha <= 1:
        raise DomainError(f"variance_heuristic needs alpha in (0, 1], got {alpha}")
    if not 1 <= m <= n:
        raise DomainError(f"variance_heuristic needs 1 <= m <= n, got m={m}, n={n}")
    if alpha == 0.5:
        return math.log(n / m)
    e = 1 - 2 * alpha
    n_term = 0.0 if n == math.inf and e < 0 else float(n) ** e
    if alpha > 0.5:
        return (m ** e - n_term) / (2 * alpha - 1)
    return (n_term - m ** e) / e


def bessel_shift(beta: float) -> float:
    """
    Shift delta between the hard-edge limit kernel and the Bessel kernel:
    delta = 2 (beta * sum_k 1/(k(k+beta)) - gamma), which equals 2 psi(1+beta).

    The series is summed with g(x) = 1/x - 1/(x+beta) = beta/(x(x+beta)),
    whose Euler-Maclaurin tail needs no division by beta.
    """
    if beta <= -1:
        raise DomainError(f"bessel_shift needs beta > -1, got {beta}")
    K = 64
    k = np.arange(1, K + 1, dtype=float)
    head = math.fsum(beta / (k * (k + beta)))

    a = K + 1.0
    tail = math.log((a + beta) / a) + 0.5 * (1 / a - 1 / (a + beta))
    for p, b2p in enumerate(BERNOULLI_EVEN, start=1):
        tail += b2p / (2 * p) * (a ** (-2 * p) - (a + beta) ** (-2 * p))

    delta = 2 * (head + tail - np.euler_gamma)
    logger.debug(f"bessel_shift(beta={beta}) = {delta}")
    return delta
