"""
Quadrature grids on (xi, inf) built by mapping Gauss-Legendre nodes from (0, 1).
"""
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from lpplab.errors import DomainError
from lpplab.quadrature import gauss_legendre


class GridMap(Enum):
    EXP = "exp"              # x = xi - L log(1 - t)
    ALGEBRAIC = "algebraic"  # x = xi + L t / (1 - t)
    FINITE = "finite"        # x = xi + L t, the bounded interval (xi, xi + L)


@dataclass(frozen=True)
class QuadGrid:
    xi: float
    map: GridMap = GridMap.EXP
    order: int = 60
    scale: float = 1.0

    def __post_init__(self):
        if self.order < 2:
            raise DomainError(f"Grid order must be at least 2, got {self.order}")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise DomainError(f"Grid scale must be positive, got {self.scale}")
        if not math.isfinite(self.xi):
            raise DomainError(f"Grid endpoint must be finite, got {self.xi}")

    @cached_property
    def _rule(self) -> tuple[np.ndarray, np.ndarray]:
        x, w = gauss_legendre(self.order)
        t = 0.5 * (x + 1.0)
        wt = 0.5 * w
        L = self.scale
        if self.map is GridMap.EXP:
            nodes = self.xi - L * np.log1p(-t)
            weights = wt * L / (1.0 - t)
        elif self.map is GridMap.ALGEBRAIC:
            nodes = self.xi + L * t / (1.0 - t)
            weights = wt * L / (1.0 - t) ** 2
        else:
            nodes = self.xi + L * t
            weights = wt * L
        return nodes, weights

    @property
    def nodes(self) -> np.ndarray:
        return self._rule[0]

    @property
    def weights(self) -> np.ndarray:
        return self._rule[1]

    def with_order(self, order: int) -> "QuadGrid":
        return QuadGrid(self.xi, self.map, order, self.scale)

    def to_dict(self) -> dict:
        return {"xi": self.xi, "map": self.map.value, "order": self.order,
                "scale": self.scale}
