from .scaling import LineScaling, Regime, ScalingPlan, regime_of
from .sequences import Family, ParamSeq, counting, t
from .sums import (bessel_shift, centering, centering_profile, partial_sum,
                   tail_sum, variance_heuristic)

__all__ = ["Family", "ParamSeq", "t", "counting", "partial_sum", "tail_sum",
           "centering", "centering_profile", "variance_heuristic",
           "bessel_shift", "ScalingPlan", "Regime", "LineScaling", "regime_of"]
