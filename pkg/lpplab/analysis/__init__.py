from .combinatorics import circular_placements, circular_placements_formula, hockey_stick
from .empirical import EmpiricalDist, empirical_dist, ks_distance, ks_two_sample
from .experiments import (ExperimentReport, exponent_fit, exponent_fit_synthetic,
                          fit_log_variance, gumbel_experiment, symmetry_ks,
                          triviality_probe, u_beta_limit_cdf, variance_profile)
from .identities import IdentityResult, identity_suite
from .reports import write_json_report
from .traces import TraceReport, TwoLineKernelMatrix, log_det_series, trace_identity_check

__all__ = ["EmpiricalDist", "empirical_dist", "ks_distance", "ks_two_sample",
           "gumbel_experiment", "u_beta_limit_cdf", "variance_profile",
           "fit_log_variance", "exponent_fit", "exponent_fit_synthetic",
           "triviality_probe", "symmetry_ks", "ExperimentReport",
           "circular_placements", "circular_placements_formula", "hockey_stick",
           "TwoLineKernelMatrix", "TraceReport", "log_det_series",
           "trace_identity_check", "IdentityResult", "identity_suite",
           "write_json_report"]
