"""
Max-plus dynamic programming for last-passage times

    G(i,j) = w(i,j) + max(G(i-1,j), G(i,j-1)),  G(0,.) = G(.,0) = 0.
"""
import logging

import numpy as np

from lpplab.errors import DomainError
from lpplab.lpp.model import LppResult, SimConfig
from lpplab.lpp.sampling import WeightField, iter_diagonals, substream
from lpplab.params import ParamSeq

logger = logging.getLogger(__name__)


def frontier_sweep(diagonals) -> tuple[int, np.ndarray]:
    """
    Run the recursion one anti-diagonal at a time keeping only the frontier.
    Returns (lo, G) for the last diagonal consumed, G[k] = G(lo + k, d - lo - k).
    """
    prev_lo, prev = 1, np.zeros(0)
    for d, lo, weights in diagonals:
        hi = lo + len(weights) - 1
        # ext[k] = G(lo - 1 + k, d - lo - k) on diagonal d - 1, zero off the corner
        ext = np.zeros(hi - lo + 2)
        offset = prev_lo - (lo - 1)
        ext[offset:offset + len(prev)] = prev
        prev = weights + np.maximum(ext[:-1], ext[1:])
        prev_lo = lo
    return prev_lo, prev


def last_passage_surface(field: WeightField) -> np.ndarray:
    """
    The full surface G(i, j) of a materialized field, zero-padded so that
    G[i, j] is G(i, j) and row/column 0 are the boundary.
    """
    m, n = field.shape
    G = np.zeros((m + 1, n + 1))
    w = field.w
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            G[i, j] = w[i - 1, j - 1] + max(G[i - 1, j], G[i, j - 1])
    return G


def last_passage(config: SimConfig, realization: WeightField | None = None,
                 substream_index: int = 0) -> LppResult:
    """
    G(m, n) of one realization: the given materialized field, or a streamed
    draw from substream (config.seed, substream_index) in O(min(m, n)) memory.
    """
    if realization is not None:
        m, n = realization.shape
        g = float(last_passage_surface(realization)[m, n])
    else:
        rng = substream(config.seed, substream_index)
        diagonals = iter_diagonals(config.seq, config.m, config.n, rng)
        _, frontier = frontier_sweep(diagonals)
        g = float(frontier[0])
    return LppResult(g=g, seed_used=(config.seed, substream_index))


def antidiagonal_process(seq: ParamSeq, N: int, seed: int, substream_index: int = 0,
                         realization: WeightField | None = None) -> list[tuple[int, float]]:
    """
    (k, G(N+k, N-k)) for |k| < N from one shared realization.

    The sweep covers the triangle i + j <= 2N of the (2N-1) x (2N-1) corner
    and stops on the anti-diagonal d = 2N, where row i holds k = i - N.
    """
    if N < 2:
        raise DomainError(f"Anti-diagonal process needs N >= 2, got {N}")
    size = 2 * N - 1
    if realization is not None:
        m, n = realization.shape
        if m < size or n < size:
            raise DomainError(
                f"Field of shape {realization.shape} is too small for N={N}")
        G = last_passage_surface(realization)
        return [(k, float(G[N + k, N - k])) for k in range(-N + 1, N)]

    logger.debug("Anti-diagonal sweep N=%d substream=%d", N, substream_index)
    rng = substream(seed, substream_index)
    lo, frontier = frontier_sweep(iter_diagonals(seq, size, size, rng, last=2 * N))
    return [(i - N, float(value)) for i, value in enumerate(frontier, start=lo)]
