"""
The limit laws as Fredholm determinants: Tracy-Widom through the Airy kernel,
U_beta through the hard-edge kernel or its Bessel form, and the closed forms
at the Gumbel point and at beta = 0.
"""
import csv
import json
import logging
import math
from pathlib import Path

from lpplab.errors import DomainError
from lpplab.fredholm.determinant import FredholmResult, det_fredholm
from lpplab.fredholm.grid import GridMap, QuadGrid
from lpplab.kernels import Airy, Bessel, HardEdge, decay_scale
from lpplab.params import ParamSeq, bessel_shift
from lpplab.specfun import bessel_i0

logger = logging.getLogger(__name__)

TW_RANGE = (-8.0, 6.0)
U_BETA_RANGE = (-6.0, 12.0)
BETA_MAX = 20.0
BESSEL_NU_MAX = 9.0
PROBE_BETA_RANGE = (2.0, 20.0)


def _check_xi(xi: float, bounds: tuple[float, float], what: str):
    if not bounds[0] <= xi <= bounds[1]:
        raise DomainError(f"{what} is tabulated for xi in {list(bounds)}, got {xi}")


def tracy_widom(xi: float, order: int = 60, grid_map: GridMap | str = GridMap.EXP,
                tol: float | None = None) -> FredholmResult:
    _check_xi(xi, TW_RANGE, "F_TW")
    kernel = Airy()
    grid = QuadGrid(xi, GridMap(grid_map), order, decay_scale(kernel, xi))
    return det_fredholm(kernel, grid, tol=tol)


def tracy_widom_cdf(xi: float, order: int = 60, grid_map: GridMap | str = GridMap.EXP) -> float:
    """F_TW(xi) = det(I - A) on L^2(xi, inf)."""
    return tracy_widom(xi, order, grid_map).value


def _hard_edge_determinant(beta: float, xi: float, order: int, grid_map: GridMap,
                           tol: float | None) -> FredholmResult:
    kernel = HardEdge(ParamSeq.linear(beta))
    start = xi + bessel_shift(beta)
    grid = QuadGrid(start, grid_map, order, decay_scale(kernel, start))
    return det_fredholm(kernel, grid, tol=tol)


def _bessel_determinant(beta: float, xi: float, order: int,
                        tol: float | None) -> FredholmResult:
    nu = 2 * beta + 1
    if not 0 <= nu <= BESSEL_NU_MAX:
        raise DomainError(
            f"Bessel path needs nu = 2 beta + 1 in [0, {BESSEL_NU_MAX:g}], got beta={beta}")
    grid = QuadGrid(0.0, GridMap.FINITE, order, 4 * math.exp(-xi))
    return det_fredholm(Bessel(nu), grid, tol=tol)


def u_beta(beta: float, xi: float, path: str = "contour", order: int = 60,
           grid_map: GridMap | str = GridMap.EXP, tol: float | None = None) -> FredholmResult:
    """
    U_beta(xi), the law of G(N,N) - 2 log N for t_i = i + beta. path="contour"
    integrates the hard-edge kernel over (xi + delta(beta), inf); path="bessel"
    integrates the Bessel kernel of order 2 beta + 1 over (0, 4 e^{-xi}).
    """
    if not -1 < beta <= BETA_MAX:
        raise DomainError(f"U_beta needs beta in (-1, {BETA_MAX:g}], got {beta}")
    _check_xi(xi, U_BETA_RANGE, "U_beta")
    if path == "contour":
        return _hard_edge_determinant(beta, xi, order, GridMap(grid_map), tol)
    if path == "bessel":
        return _bessel_determinant(beta, xi, order, tol)
    raise DomainError(f"Unknown U_beta path '{path}'")


def u_beta_cdf(beta: float, xi: float, path: str = "contour", order: int = 60,
               grid_map: GridMap | str = GridMap.EXP) -> float:
    return u_beta(beta, xi, path, order, grid_map).value


def hard_edge_gap_closed_form(beta: float, xi) -> float:
    """
    U_beta where the Bessel gap probability is elementary:
    exp(-e^{-xi}) at nu = 0 and exp(-e^{-xi}) I_0(2 e^{-xi/2}) at nu = 1.
    """
    nu = 2 * beta + 1
    if nu == 0:
        return math.exp(-math.exp(-xi))
    if nu == 1:
        return math.exp(-math.exp(-xi)) * float(bessel_i0(2 * math.exp(-xi / 2)))
    raise DomainError(f"No closed form for nu = 2 beta + 1 = {nu:g}")


def bofo_argument(beta: float, s: float, scaling: str = "matched") -> float:
    """
    The U_beta argument that lines the hard edge up with F_TW(s), or +inf when
    the matched edge lies beyond the Bessel support.
    """
    if scaling == "printed":
        return -2 * math.log(4 * beta) + (2 * beta) ** (-2 / 3) * s
    if scaling != "matched":
        raise DomainError(f"Unknown scaling '{scaling}'")
    nu = 2 * beta + 1
    root = (nu - (nu / 2) ** (1 / 3) * s) / 2
    return -2 * math.log(root) if root > 0 else math.inf


def bofo_limit_probe(beta: float, s: float, scaling: str = "matched",
                     order: int = 60) -> tuple[float, float]:
    """(U_beta at the rescaled argument, F_TW(s)) for large beta."""
    if not PROBE_BETA_RANGE[0] <= beta <= PROBE_BETA_RANGE[1]:
        raise DomainError(f"bofo_limit_probe needs beta in {list(PROBE_BETA_RANGE)}, got {beta}")
    xi = bofo_argument(beta, s, scaling)
    if math.isinf(xi):
        hard = 1.0
    else:
        hard = _hard_edge_determinant(beta, xi, order, GridMap.EXP, None).value
    soft = tracy_widom_cdf(s, order)
    logger.debug(f"bofo probe beta={beta}, s={s}: xi={xi:.6g}, U={hard:.8g}, F_TW={soft:.8g}")
    return hard, soft


def distribution_table(distribution: str, xis, beta: float | None = None,
                       path: str = "contour", order: int = 60,
                       grid_map: GridMap | str = GridMap.EXP) -> list[FredholmResult]:
    """One determinant per xi for distribution "tw" or "u_beta"."""
    if distribution == "tw":
        return [tracy_widom(float(xi), order, grid_map) for xi in xis]
    if distribution == "u_beta":
        if beta is None:
            raise DomainError("u_beta table needs beta")
        return [u_beta(beta, float(xi), path, order, grid_map) for xi in xis]
    raise DomainError(f"Unknown distribution '{distribution}'")


def write_distribution_table(path: str | Path, xis, results: list[FredholmResult],
                             meta: dict, header: str | None = None) -> Path:
    """CSV `xi,cdf,err_estimate` plus a JSON sidecar holding `meta`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        if header is not None:
            f.write(f"# config: {header}\n")
        f.write("# xi,cdf,err_estimate\n")
        writer = csv.writer(f)
        for xi, result in zip(xis, results):
            writer.writerow([repr(float(xi)), repr(result.value), repr(result.error)])

    sidecar = path.with_suffix(".json")
    with open(sidecar, "w") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
    logger.info(f"Wrote {len(results)} distribution values to {path}")
    return sidecar
