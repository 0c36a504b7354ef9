from lpplab.lpp.dp import antidiagonal_process, frontier_sweep, last_passage, last_passage_surface
from lpplab.lpp.model import LppResult, SimConfig, Statistic
from lpplab.lpp.monte_carlo import monte_carlo, sample_statistic, write_samples_csv
from lpplab.lpp.sampling import (WeightField, iter_diagonals, open_closed_uniform,
                                 sample_weight, substream, weight_from_uniform)

__all__ = [
    "antidiagonal_process",
    "frontier_sweep",
    "last_passage",
    "last_passage_surface",
    "LppResult",
    "SimConfig",
    "Statistic",
    "monte_carlo",
    "sample_statistic",
    "write_samples_csv",
    "WeightField",
    "iter_diagonals",
    "open_closed_uniform",
    "sample_weight",
    "substream",
    "weight_from_uniform",
]
