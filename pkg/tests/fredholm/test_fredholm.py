import json
import math
import tempfile
from pathlib import Path

import numpy as np
import pytest

from lpplab.errors import ConvergenceError, DomainError
from lpplab.fredholm import (GridMap, QuadGrid, bofo_argument, bofo_limit_probe,
                             det_fredholm, det_identity_minus, distribution_table,
                             hard_edge_gap_closed_form, tracy_widom, tracy_widom_cdf,
                             u_beta, u_beta_cdf, write_distribution_table)


def rank_one(scale: float, f):
    def kernel(xs, ys):
        return scale * np.outer(f(xs), f(ys))
    return kernel


def test_grid_maps():
    grid = QuadGrid(2.0, GridMap.EXP, order=20)
    # int_xi^inf e^{-(x - xi)} dx = 1 is exact on the exponential map with L = 1
    assert np.sum(grid.weights * np.exp(-(grid.nodes - 2.0))) == pytest.approx(1.0, abs=1e-13)
    assert grid.nodes.min() > 2.0

    finite = QuadGrid(0.0, GridMap.FINITE, order=10, scale=3.0)
    assert finite.weights.sum() == pytest.approx(3.0)
    assert finite.nodes.max() < 3.0

    algebraic = QuadGrid(0.0, GridMap.ALGEBRAIC, order=40)
    assert np.sum(algebraic.weights / (1 + algebraic.nodes) ** 2) == pytest.approx(1.0, abs=1e-12)
    assert grid.with_order(30).order == 30
    assert grid.to_dict() == {"xi": 2.0, "map": "exp", "order": 20, "scale": 1.0}


def test_grid_validation():
    with pytest.raises(DomainError, match="order"):
        QuadGrid(0.0, order=1)
    with pytest.raises(DomainError, match="scale"):
        QuadGrid(0.0, scale=0.0)
    with pytest.raises(DomainError, match="finite"):
        QuadGrid(math.inf)


def test_det_identity_minus():
    assert det_identity_minus(np.diag([0.5, 2.0, 3.0])) == pytest.approx(1.0)
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert det_identity_minus(np.eye(2) - swap) == pytest.approx(-1.0)


def test_zero_kernel():
    result = det_fredholm(lambda xs, ys: np.zeros((len(xs), len(ys))), QuadGrid(0.0))
    assert result.value == 1.0
    assert result.error == 0.0
    assert result.to_dict() == {"value": 1.0, "error": 0.0, "order": 60}


def test_rank_one_kernel():
    # det(I - f (x) f) = 1 - int_0^inf e^{-2x} dx
    result = det_fredholm(rank_one(1.0, lambda x: np.exp(-x)), QuadGrid(0.0, order=20))
    assert result.value == pytest.approx(0.5, abs=1e-12)


def test_negative_determinant_raises():
    with pytest.raises(ConvergenceError, match="negative"):
        det_fredholm(rank_one(3.0, lambda x: np.exp(-x)), QuadGrid(0.0, order=20))


def test_tolerance_is_enforced_when_strict():
    kernel = rank_one(1.0, lambda x: 0.5 / (1 + x))
    grid = QuadGrid(0.0, order=4)
    loose = det_fredholm(kernel, grid, tol=1e-14)
    assert loose.error > 1e-14
    with pytest.raises(ConvergenceError, match="changed by"):
        det_fredholm(kernel, grid, tol=1e-14, strict=True)


@pytest.mark.parametrize("xi, expected", [(-2.0, 0.413224), (0.0, 0.969373)])
def test_tracy_widom_values(xi, expected):
    assert tracy_widom_cdf(xi) == pytest.approx(expected, abs=2e-4)


def test_tracy_widom_is_monotone():
    values = [tracy_widom_cdf(xi) for xi in np.linspace(-5.0, 3.0, 9)]
    assert np.all(np.diff(values) >= -1e-10)
    assert 0 <= values[0] < values[-1] <= 1 + 1e-10
    assert tracy_widom(1.0, order=40).order == 40


@pytest.mark.parametrize("path", ["contour", "bessel"])
@pytest.mark.parametrize("xi", [-1.0, 0.5, 3.0])
def test_gumbel_point(path, xi):
    assert u_beta_cdf(-0.5, xi, path=path) == pytest.approx(
        hard_edge_gap_closed_form(-0.5, xi), abs=1e-4)
    assert hard_edge_gap_closed_form(-0.5, xi) == pytest.approx(math.exp(-math.exp(-xi)))


@pytest.mark.parametrize("xi", [-0.5, 1.0])
def test_beta_zero_closed_form(xi):
    assert u_beta_cdf(0.0, xi) == pytest.approx(hard_edge_gap_closed_form(0.0, xi), abs=1e-4)


def test_u_beta_errors():
    with pytest.raises(DomainError, match="beta in"):
        u_beta(-1.0, 0.0)
    with pytest.raises(DomainError, match="tabulated"):
        u_beta(0.0, 20.0)
    with pytest.raises(DomainError, match="Unknown U_beta path"):
        u_beta(0.0, 0.0, path="series")
    with pytest.raises(DomainError, match="Bessel path"):
        u_beta(5.0, 0.0, path="bessel")
    with pytest.raises(DomainError, match="No closed form"):
        hard_edge_gap_closed_form(1.0, 0.0)
    with pytest.raises(DomainError, match="F_TW"):
        tracy_widom(7.0)


def test_bofo_argument():
    assert bofo_argument(2.0, 0.0) == pytest.approx(-2 * math.log(2.5))
    assert bofo_argument(2.0, 0.0, scaling="printed") == pytest.approx(-2 * math.log(8.0))
    assert bofo_argument(2.0, 10.0) == math.inf
    with pytest.raises(DomainError, match="Unknown scaling"):
        bofo_argument(2.0, 0.0, scaling="other")
    with pytest.raises(DomainError, match="bofo_limit_probe"):
        bofo_limit_probe(1.0, 0.0)


def test_distribution_table():
    results = distribution_table("tw", [-1.0, 0.0], order=40)
    assert [r.order for r in results] == [40, 40]
    assert results[0].value < results[1].value
    with pytest.raises(DomainError, match="needs beta"):
        distribution_table("u_beta", [0.0])
    with pytest.raises(DomainError, match="Unknown distribution"):
        distribution_table("gamma", [0.0])


def test_write_distribution_table():
    xis = [-1.0, 0.0]
    results = distribution_table("tw", xis, order=30)
    with tempfile.TemporaryDirectory() as temp_dir:
        path = Path(temp_dir) / "tables" / "tw.csv"
        sidecar = write_distribution_table(path, xis, results, {"distribution": "tw"})
        lines = path.read_text().splitlines()
        meta = json.loads(sidecar.read_text())
    assert lines[0] == "# xi,cdf,err_estimate"
    xi, cdf, err = lines[2].split(",")
    assert (float(xi), float(cdf), float(err)) == (0.0, results[1].value, results[1].error)
    assert meta == {"distribution": "tw"}
