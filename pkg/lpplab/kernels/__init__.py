from .contour import ContourSpec, double_contour, envelope_radius, single_contour
from .finite import (F_log, finite_contour, fourier_factor_log, ktilde_finite,
                     ktilde_grid, line_exponent, phi_finite, phi_grid,
                     truncation_radius, two_line_grid, two_line_kernel)
from .handles import (Airy, Bessel, CaseB, ExtendedAiry, FiniteN, HardEdge,
                      KernelEvaluator, KernelHandle, PhiFiniteN, PhiGaussian,
                      decay_scale, evaluate_grid, write_grid)
from .limits import (bessel_kernel, case_b_contour, case_b_grid, case_b_limit, hard_edge_contour,
                     hard_edge_grid, hard_edge_limit, phi_gaussian, reflection_exponent)
from .soft_edge import (airy_kernel, case_c_conjugation, contour_airy,
                        extended_airy, extended_airy_contour,
                        extended_airy_contour_grid, extended_airy_laplace,
                        laplace_airy, okounkov_integral, rescaled_case_c_limit,
                        shifted_airy)

__all__ = ["ContourSpec", "double_contour", "single_contour", "envelope_radius",
           "F_log", "line_exponent", "truncation_radius", "finite_contour",
           "ktilde_grid", "ktilde_finite", "fourier_factor_log", "phi_grid",
           "phi_finite", "two_line_grid", "two_line_kernel",
           "reflection_exponent", "hard_edge_grid", "hard_edge_limit",
           "hard_edge_contour", "case_b_contour", "case_b_grid", "case_b_limit",
           "phi_gaussian", "bessel_kernel",
           "airy_kernel", "laplace_airy", "okounkov_integral", "extended_airy",
           "shifted_airy", "contour_airy", "extended_airy_contour",
           "extended_airy_contour_grid", "extended_airy_laplace",
           "case_c_conjugation", "rescaled_case_c_limit",
           "KernelHandle", "FiniteN", "HardEdge", "CaseB", "ExtendedAiry", "Airy",
           "Bessel", "PhiFiniteN", "PhiGaussian", "KernelEvaluator",
           "decay_scale", "evaluate_grid", "write_grid"]
