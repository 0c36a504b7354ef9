from dataclasses import dataclass, field
from enum import Enum

from lpplab.config import max_cells
from lpplab.errors import DomainError, ResourceError
from lpplab.params import ParamSeq

SEED_LIMIT = 1 << 64


class Statistic(Enum):
    GMN = "gmn"
    ANTIDIAGONAL = "antidiagonal"


@dataclass(frozen=True)
class SimConfig:
    """
    One Monte Carlo job: a parameter sequence, the corner (m, n) or the
    anti-diagonal size N, a 64-bit seed and a sample count.
    """
    seq: ParamSeq
    m: int = 1
    n: int = 1
    seed: int = 0
    samples: int = 1
    N: int | None = None

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError(f"Corner must be positive, got ({self.m}, {self.n})")
        if self.samples < 1:
            raise DomainError(f"samples must be >= 1, got {self.samples}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.N is not None and self.N < 2:
            raise DomainError(f"Anti-diagonal mode needs N >= 2, got {self.N}")
        budget = max_cells()
        if self.cells > budget:
            raise ResourceError(
                f"Realization touches {self.cells} cells, above the budget of {budget}")

    @property
    def cells(self) -> int:
        """Weight cells drawn by one realization in the configured mode."""
        if self.N is not None:
            return self.N * (2 * self.N - 1)
        return self.m * self.n

    def to_dict(self) -> dict:
        return {"seq": self.seq.to_dict(), "m": self.m, "n": self.n,
                "N": self.N, "seed": self.seed, "samples": self.samples}


@dataclass
class LppResult:
    g: float
    seed_used: tuple[int, int]
    antidiagonal: list[tuple[int, float]] | None = field(default=None)
