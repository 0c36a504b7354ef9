"""
Seeded exponential weights w(i,j) with rate t_i + t_j.

Every realization is drawn anti-diagonal by anti-diagonal (d = i + j from 2
upwards, i ascending within a diagonal) from a Philox substream, so a
materialized field and the streaming sweep consume identical uniforms.
"""
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from lpplab.config import max_cells
from lpplab.errors import DomainError, ResourceError
from lpplab.params import ParamSeq


def substream(seed: int, index: int) -> np.random.Generator:
    """
    Counter-based generator for sample `index` of a run seeded with `seed`.
    The 128-bit Philox key packs the seed in the low word and the index in
    the high word, so substreams never overlap.
    """
    if not 0 <= seed < 1 << 64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if not 0 <= index < 1 << 64:
        raise DomainError(f"substream index out of range: {index}")
    return np.random.Generator(np.random.Philox(key=seed | (index << 64)))


def open_closed_uniform(rng: np.random.Generator, size=None):
    """Uniforms on (0, 1]."""
    return 1.0 - rng.random(size)


def weight_from_uniform(u, rate):
    """Inverse CDF of Exp(rate); u = 1 maps to 0."""
    return -np.log(u) / rate


def sample_weight(seq: ParamSeq, i: int, j: int, rng: np.random.Generator) -> float:
    if i < 1 or j < 1:
        raise DomainError(f"Cell indices must be positive, got ({i}, {j})")
    return float(weight_from_uniform(open_closed_uniform(rng), seq.t(i) + seq.t(j)))


def diagonal_bounds(d: int, m: int, n: int) -> tuple[int, int]:
    """Row range [lo, hi] of the cells (i, d - i) inside the m x n corner."""
    return max(1, d - n), min(m, d - 1)


def iter_diagonals(seq: ParamSeq, m: int, n: int, rng: np.random.Generator,
                   last: int | None = None) -> Iterator[tuple[int, int, np.ndarray]]:
    """
    Yield (d, lo, weights) for d = 2 .. last (default m + n), where
    weights[k] = w(lo + k, d - lo - k).
    """
    tv = seq.values(1, max(m, n))
    last = m + n if last is None else last
    for d in range(2, last + 1):
        lo, hi = diagonal_bounds(d, m, n)
        i = np.arange(lo, hi + 1)
        rates = tv[i - 1] + tv[d - i - 1]
        yield d, lo, weight_from_uniform(open_closed_uniform(rng, hi - lo + 1), rates)


@dataclass
class WeightField:
    """A materialized realization; w[i-1, j-1] holds w(i, j)."""
    w: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.w.shape

    @classmethod
    def sample(cls, seq: ParamSeq, m: int, n: int,
               rng: np.random.Generator) -> "WeightField":
        budget = max_cells()
        if m * n > budget:
            raise ResourceError(
                f"Materializing {m}x{n} weights exceeds the budget of {budget} cells")
        w = np.empty((m, n))
        for d, lo, weights in iter_diagonals(seq, m, n, rng):
            i = np.arange(lo, lo + len(weights))
            w[i - 1, d - i - 1] = weights
        return cls(w)

    @classmethod
    def from_rows(cls, rows) -> "WeightField":
        w = np.array(rows, dtype=float)
        if w.ndim != 2 or w.size == 0:
            raise DomainError("A weight field needs a non-empty 2-d array")
        if np.any(w < 0):
            raise DomainError("Weights must be nonnegative")
        return cls(w)

    def diagonals(self, last: int | None = None):
        m, n = self.shape
        last = m + n if last is None else last
        for d in range(2, last + 1):
            lo, hi = diagonal_bounds(d, m, n)
            i = np.arange(lo, hi + 1)
            yield d, lo, self.w[i - 1, d - i - 1]
