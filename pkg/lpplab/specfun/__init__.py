from .airy import airy, airy_prime
from .bessel import bessel_i0, bessel_j, bessel_j_prime
from .entire import (H_M, canonical_product, canonical_product_log,
                     primary_factor_log, required_genus)

__all__ = ["primary_factor_log", "H_M", "canonical_product",
           "canonical_product_log", "required_genus", "airy", "airy_prime",
           "bessel_j", "bessel_j_prime", "bessel_i0"]
