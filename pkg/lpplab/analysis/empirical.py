from dataclasses import dataclass
from typing import Callable

import numpy as np

from lpplab.errors import DomainError


@dataclass(frozen=True, eq=False)
class EmpiricalDist:
    """Sorted samples and the right-continuous step function they define."""
    samples: np.ndarray

    @property
    def n(self) -> int:
        return len(self.samples)

    def cdf(self, x):
        out = np.searchsorted(self.samples, x, side="right") / self.n
        return float(out) if np.ndim(out) == 0 else out

    @property
    def mean(self) -> float:
        return float(np.mean(self.samples))

    @property
    def variance(self) -> float:
        return float(np.var(self.samples, ddof=1)) if self.n > 1 else 0.0

    def to_dict(self) -> dict:
        q = np.quantile(self.samples, [0.05, 0.25, 0.5, 0.75, 0.95])
        return {"n": self.n, "mean": self.mean, "variance": self.variance,
                "quantiles": {"0.05": q[0], "0.25": q[1], "0.5": q[2], "0.75": q[3],
                              "0.95": q[4]}}


def empirical_dist(samples) -> EmpiricalDist:
    values = np.sort(np.asarray(samples, dtype=float).ravel())
    if values.size == 0:
        raise DomainError("An empirical distribution needs at least one sample")
    if not np.all(np.isfinite(values)):
        raise DomainError("Samples must be finite")
    values.setflags(write=False)
    return EmpiricalDist(values)


def ks_distance(dist: EmpiricalDist, cdf: Callable[[float], float]) -> float:
    """sup |F_n - F|, attained at a sample point from one side or the other."""
    F = np.fromiter((cdf(float(x)) for x in dist.samples), dtype=float, count=dist.n)
    i = np.arange(1, dist.n + 1)
    return float(max(np.max(i / dist.n - F), np.max(F - (i - 1) / dist.n)))


def ks_two_sample(a: EmpiricalDist, b: EmpiricalDist) -> float:
    points = np.concatenate((a.samples, b.samples))
    return float(np.max(np.abs(a.cdf(points) - b.cdf(points))))
