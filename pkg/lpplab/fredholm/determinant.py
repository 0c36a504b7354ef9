import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import lu_factor

from lpplab.errors import ConvergenceError
from lpplab.fredholm.grid import QuadGrid
from lpplab.kernels import KernelEvaluator, KernelHandle

logger = logging.getLogger(__name__)

# a determinant below -NEGATIVE_TOL means the kernel or the grid is wrong
NEGATIVE_TOL = 1e-8


@dataclass(frozen=True)
class FredholmResult:
    value: float
    error: float
    order: int

    def to_dict(self) -> dict:
        return {"value": self.value, "error": self.error, "order": self.order}


def nystrom_matrix(kernel: KernelHandle | Callable, grid: QuadGrid,
                   evaluator: KernelEvaluator | None = None,
                   symmetric: bool | None = None) -> np.ndarray:
    """
    W^{1/2} K W^{1/2} on the grid nodes. `kernel` is a handle or any
    callable (xs, ys) -> matrix; symmetric kernels are symmetrized exactly.
    """
    x, w = grid.nodes, grid.weights
    if isinstance(kernel, KernelHandle):
        K = (evaluator or KernelEvaluator()).matrix(kernel, x, x)
        if symmetric is None:
            symmetric = kernel.symmetric
    else:
        K = np.asarray(kernel(x, x), dtype=float)
    root = np.sqrt(w)
    M = root[:, None] * K * root[None, :]
    if symmetric:
        M = 0.5 * (M + M.T)
    return M


def det_identity_minus(M: np.ndarray) -> float:
    """det(I - M) from an LU factorization with partial pivoting."""
    n = M.shape[0]
    lu, piv = lu_factor(np.eye(n) - M)
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    sign = -1.0 if swaps % 2 else 1.0
    return float(sign * np.prod(np.diag(lu)))


def det_fredholm(kernel: KernelHandle | Callable, grid: QuadGrid,
                 evaluator: KernelEvaluator | None = None, tol: float | None = None,
                 strict: bool = False, symmetric: bool | None = None) -> FredholmResult:
    """
    det(I - K) on L^2 of the grid's interval by Nystrom discretization, with
    the change against the half-order grid as error estimate. An estimate
    above `tol` is logged, or raised when `strict`.
    """
    value = det_identity_minus(nystrom_matrix(kernel, grid, evaluator, symmetric))
    coarse_grid = grid.with_order(max(2, grid.order // 2))
    coarse = det_identity_minus(nystrom_matrix(kernel, coarse_grid, evaluator, symmetric))
    error = abs(value - coarse)
    logger.debug(f"det(I-K) on {grid.to_dict()}: {value!r} (half order: {coarse!r})")

    if value < -NEGATIVE_TOL:
        raise ConvergenceError(
            f"Fredholm determinant {value:.3g} is negative at xi={grid.xi}")
    if tol is not None and error > tol:
        message = (f"Fredholm determinant at xi={grid.xi} changed by {error:.3g} "
                   f"between orders {coarse_grid.order} and {grid.order}")
        if strict:
            raise ConvergenceError(message)
        logger.warning(message)
    return FredholmResult(value, error, grid.order)
