import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from lpplab.errors import DomainError


class Family(Enum):
    LINEAR = "linear"
    POWER = "power"
    CONSTANT = "constant"


@dataclass(frozen=True)
class ParamSeq:
    """
    The parameter sequence t_1, t_2, ... of the weight model.
    Weights w(i,j) are exponential with rate t_i + t_j.

    - LINEAR: t_i = i + beta, beta > -1
    - POWER: t_i = i**alpha, 0 < alpha <= 1
    - CONSTANT: t_i = c, c > 0 (classical control, not a decaying family)
    """
    family: Family
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError(f"Parameter value must be finite, got {self.value}")
        if self.family is Family.LINEAR and self.value <= -1:
            raise DomainError(f"Linear family needs beta > -1, got {self.value}")
        if self.family is Family.POWER and not 0 < self.value <= 1:
            raise DomainError(
                f"Power family needs alpha in (0, 1], got {self.value}")
        if self.family is Family.CONSTANT and self.value <= 0:
            raise DomainError(f"Constant family needs c > 0, got {self.value}")

    @classmethod
    def linear(cls, beta: float) -> "ParamSeq":
        return cls(Family.LINEAR, float(beta))

    @classmethod
    def power(cls, alpha: float) -> "ParamSeq":
        return cls(Family.POWER, float(alpha))

    @classmethod
    def constant(cls, c: float) -> "ParamSeq":
        return cls(Family.CONSTANT, float(c))

    @classmethod
    def from_dict(cls, data: dict) -> "ParamSeq":
        try:
            family = Family(data["family"])
            return cls(family, float(data["value"]))
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"Invalid parameter sequence {data!r}: {e}")

    def to_dict(self) -> dict:
        return {"family": self.family.value, "value": self.value}

    @property
    def beta(self) -> float:
        if self.family is not Family.LINEAR:
            raise DomainError(f"{self} has no beta")
        return self.value

    @property
    def alpha(self) -> float:
        """Decay exponent; Linear counts as alpha = 1."""
        if self.family is Family.POWER:
            return self.value
        if self.family is Family.LINEAR:
            return 1.0
        raise DomainError(f"{self} has no alpha")

    @property
    def t1(self) -> float:
        return self.t(1)

    def t(self, i: int) -> float:
        if i < 1:
            raise DomainError(f"Index must be >= 1, got {i}")
        if self.family is Family.LINEAR:
            return i + self.value
        if self.family is Family.POWER:
            return float(i) ** self.value
        return self.value

    def values(self, start: int, stop: int) -> np.ndarray:
        """t_k for k = start, ..., stop (inclusive) as a float array."""
        k = np.arange(start, stop + 1, dtype=float)
        if self.family is Family.LINEAR:
            return k + self.value
        if self.family is Family.POWER:
            return k ** self.value
        return np.full(k.shape, self.value)

    def power_law(self, j: float) -> tuple[float, float]:
        """
        Write t_k**(-j) as (k + shift)**(-a) and return (shift, a).
        Only defined for the decaying families.
        """
        if self.family is Family.LINEAR:
            return self.value, float(j)
        if self.family is Family.POWER:
            return 0.0, self.value * j
        raise DomainError(f"{self} has no power-law tail")

    def __str__(self):
        return f"{self.family.value}({self.value:g})"


def t(seq: ParamSeq, i: int) -> float:
    return seq.t(i)


def counting(seq: ParamSeq, tval: float) -> int:
    """
    n(t) = #{k >= 1 : t_k <= t}.
    """
    if tval < 0:
        raise DomainError(f"counting needs t >= 0, got {tval}")
    if seq.family is Family.CONSTANT:
        if tval >= seq.value:
            raise DomainError(f"counting diverges for {seq} at t={tval}")
        return 0
    if seq.family is Family.LINEAR:
        n = max(math.floor(tval - seq.value), 0)
    else:
        n = math.floor(tval ** (1.0 / seq.value))
    # undo rounding in the inversion, e.g. 9**(1/2) landing below 3
    while seq.t(n + 1) <= tval:
        n += 1
    while n > 0 and seq.t(n) > tval:
        n -= 1
    return n
