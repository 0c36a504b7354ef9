import math
from dataclasses import dataclass
from enum import Enum

from lpplab.errors import DomainError
from lpplab.params.sequences import Family, ParamSeq
from lpplab.params.sums import centering


class Regime(Enum):
    CASE_A = "a"
    CASE_B = "b"
    CASE_C = "c"


class LineScaling(Enum):
    """How a slow variable tau is turned into a line index r."""
    TANH = "tanh"  # [N tanh tau] at alpha = 1/2, [N tau] below
    POWER_LAW = "power-law"  # [tau N^{2 alpha}]


def regime_of(seq: ParamSeq) -> Regime:
    if seq.family is Family.LINEAR:
        return Regime.CASE_A
    if seq.family is Family.CONSTANT:
        raise DomainError(f"{seq} is not a decaying family")
    if seq.alpha > 0.5:
        return Regime.CASE_A
    if seq.alpha > 1 / 3:
        return Regime.CASE_B
    return Regime.CASE_C


@dataclass(frozen=True)
class ScalingPlan:
    seq: ParamSeq
    N: int
    line_scaling: LineScaling = LineScaling.TANH

    @property
    def regime(self) -> Regime:
        return regime_of(self.seq)

    @property
    def d_N(self) -> float:
        """Case-c fluctuation scale; 1 in the other regimes."""
        if self.regime is not Regime.CASE_C:
            return 1.0
        alpha = self.seq.alpha
        if math.isclose(alpha, 1 / 3):
            return (2 * math.log(self.N)) ** (1 / 3)
        return 2 ** (1 / 3) * (1 - 3 * alpha) ** (-1 / 3) * self.N ** (1 / 3 - alpha)

    def r_of(self, tau: float) -> int:
        N = self.N
        if self.regime is Regime.CASE_C:
            r = math.floor(self.d_N ** 2 * N ** (2 * self.seq.alpha) * tau)
        elif self.line_scaling is LineScaling.POWER_LAW and self.regime is Regime.CASE_B:
            r = math.floor(tau * N ** (2 * self.seq.alpha))
        elif self.regime is Regime.CASE_B and math.isclose(self.seq.alpha, 0.5):
            r = math.floor(N * math.tanh(tau))
        else:
            r = math.floor(N * tau)
        if abs(r) >= N:
            raise DomainError(f"tau={tau} maps to line r={r} outside |r| < N={N}")
        return r

    def c_Nr(self, r: int) -> float:
        return centering(self.seq, self.N, r)

    def describe(self) -> dict:
        return {
            "seq": self.seq.to_dict(),
            "N": self.N,
            "regime": self.regime.value,
            "line_scaling": self.line_scaling.value,
            "d_N": self.d_N,
        }
