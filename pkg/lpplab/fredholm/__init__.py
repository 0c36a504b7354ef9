from .determinant import (FredholmResult, det_fredholm, det_identity_minus,
                          nystrom_matrix)
from .distributions import (bofo_argument, bofo_limit_probe, distribution_table,
                            hard_edge_gap_closed_form, tracy_widom,
                            tracy_widom_cdf, u_beta, u_beta_cdf,
                            write_distribution_table)
from .grid import GridMap, QuadGrid

__all__ = ["GridMap", "QuadGrid", "FredholmResult", "det_fredholm",
           "det_identity_minus", "nystrom_matrix", "tracy_widom",
           "tracy_widom_cdf", "u_beta", "u_beta_cdf", "hard_edge_gap_closed_form",
           "bofo_argument", "bofo_limit_probe", "distribution_table",
           "write_distribution_table"]
