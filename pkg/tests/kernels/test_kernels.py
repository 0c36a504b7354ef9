import json
import math
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import airy as scipy_airy
from scipy.special import jv, jvp

from lpplab.errors import DomainError
from lpplab.kernels import (Airy, Bessel, ContourSpec, ExtendedAiry, FiniteN, HardEdge,
                            KernelEvaluator, KernelHandle, PhiGaussian, F_log, airy_kernel,
                            bessel_kernel, case_b_grid, case_b_limit, case_c_conjugation,
                            contour_airy, decay_scale, hard_edge_grid,
                            evaluate_grid, extended_airy, extended_airy_contour, finite_contour,
                            extended_airy_laplace, ktilde_finite, ktilde_grid, okounkov_integral,
                            phi_finite, phi_gaussian, truncation_radius, two_line_kernel,
                            phi_grid, rescaled_case_c_limit, shifted_airy, write_grid)
from lpplab.kernels.soft_edge import direct_tail_bound
from lpplab.params import ParamSeq, centering


def test_F_log_matches_direct_products():
    seq, N, r, s = ParamSeq.linear(0.5), 3, 1, -1
    z, w = 0.3 + 0.2j, -0.1 + 0.4j
    t = seq.values(1, N + 2)
    expected = (np.prod(1 + z / t[:N + r]) * np.prod(1 + w / t[:N - s])
                / (np.prod(1 - z / t[:N - r]) * np.prod(1 - w / t[:N + s])))
    assert np.exp(F_log(seq, N, r, s, z, w)) == pytest.approx(expected, rel=1e-12)


def test_contour_spec():
    contour = ContourSpec.build(40.0, t1=1.0)
    assert contour.origin_shift == 0.25
    assert contour.breakpoints[0] == 0.0
    assert contour.breakpoints[-1] == pytest.approx(40.0)
    assert contour.refined().panels == 2 * contour.panels
    assert contour.extended(2).panels == contour.panels + 2

    _, weights = contour.nodes()
    # int_Gamma dz = u_max (e^{i pi/4} - e^{-i pi/4})
    assert np.sum(weights) == pytest.approx(40.0j * math.sqrt(2), abs=1e-10)

    with pytest.raises(DomainError, match="Contour shift"):
        ContourSpec.build(40.0, t1=1.0, origin_shift=1.0)
    with pytest.raises(DomainError, match="u_max"):
        ContourSpec.build(0.0)


@pytest.mark.parametrize("xi", [-4.0, -1.0, 0.0, 1.5, 3.0])
def test_contour_airy(xi):
    assert contour_airy(xi) == pytest.approx(scipy_airy(xi)[0], abs=1e-10)


def test_contour_airy_with_quadratic_term():
    xis = np.array([-2.0, 0.0, 1.5])
    assert np.allclose(contour_airy(xis, tau=0.5), shifted_airy(xis, 0.5), atol=1e-9)
    assert shifted_airy(1.0) == pytest.approx(scipy_airy(1.0)[0])


def test_airy_kernel():
    x, y = 0.4, -1.3
    Ai_x, dAi_x, _, _ = scipy_airy(x)
    Ai_y, dAi_y, _, _ = scipy_airy(y)
    assert airy_kernel(x, y) == pytest.approx((Ai_x * dAi_y - dAi_x * Ai_y) / (x - y), rel=1e-9)
    assert airy_kernel(x, y) == pytest.approx(airy_kernel(y, x), rel=1e-12)
    assert airy_kernel(x, x) == pytest.approx(dAi_x ** 2 - x * Ai_x ** 2, rel=1e-9)
    assert airy_kernel(x, x + 1e-4) == pytest.approx(airy_kernel(x, x), abs=1e-6)
    assert airy_kernel(np.zeros(3), np.ones((2, 1))).shape == (2, 3)


@pytest.mark.parametrize("xi, eta", [(-1.0, 0.5), (0.0, 0.0), (1.5, -2.0)])
def test_extended_airy_equal_times_is_airy_kernel(xi, eta):
    assert extended_airy(0.3, xi, 0.3, eta) == pytest.approx(float(airy_kernel(xi, eta)), abs=1e-9)


def test_extended_airy_paths_agree():
    closed = extended_airy(-0.5, 0.5, 0.5, -1.0, path="closed")
    direct = extended_airy(-0.5, 0.5, 0.5, -1.0, path="direct")
    assert closed == pytest.approx(direct, abs=1e-8)

    def integrand(lam):
        return math.exp(lam) * scipy_airy(0.5 + lam)[0] * scipy_airy(-1.0 + lam)[0]

    reference, _ = quad(integrand, -37.0, 0.0, limit=400)
    assert closed == pytest.approx(-reference, abs=1e-7)
    with pytest.raises(DomainError, match="Unknown path"):
        extended_airy(-0.5, 0.5, 0.5, -1.0, path="scenic")
    with pytest.raises(DomainError, match="supported box"):
        extended_airy(0.0, 7.0, 0.0, 0.0)


@pytest.mark.parametrize("tau, xi, sigma, eta", [(-0.5, 0.3, 0.5, -0.2), (0.4, -0.1, -0.3, 0.6)])
def test_extended_airy_matches_case_c_limit(tau, xi, sigma, eta):
    closed = extended_airy(tau, xi, sigma, eta)
    assert closed == pytest.approx(extended_airy(tau, xi, sigma, eta, path="direct"), abs=1e-8)
    assert closed == pytest.approx(rescaled_case_c_limit(tau, xi, sigma, eta), abs=1e-6)


def test_extended_airy_sign_for_increasing_times():
    assert extended_airy(-0.5, 0.3, 0.5, -0.2) == pytest.approx(-0.170875, abs=1e-5)


def test_extended_airy_direct_path_small_time_gap():
    # c = 0.9: the left limit is clipped at the Airy range, the dropped tail is negligible
    assert direct_tail_bound(0.9, 0.3, -0.2, -39.8) < 1e-14
    assert extended_airy(-0.45, 0.3, 0.45, -0.2, path="direct") == pytest.approx(
        extended_airy(-0.45, 0.3, 0.45, -0.2), abs=1e-8)

    # c = 0.2: the tail bound is too large, so the closed form answers
    assert direct_tail_bound(0.2, 0.0, 0.4, -40.0) > 1e-10
    assert extended_airy(-0.3, 0.0, -0.1, 0.4, path="direct") == extended_airy(-0.3, 0.0, -0.1, 0.4)


@pytest.mark.parametrize("tau, xi, sigma, eta", [(0.2, 0.5, -0.3, -0.5), (-0.2, 0.5, 0.4, -0.5)])
def test_extended_airy_contour_matches_laplace(tau, xi, sigma, eta):
    assert extended_airy_contour(tau, xi, sigma, eta) == pytest.approx(
        extended_airy_laplace(tau, xi, sigma, eta), abs=1e-6)


def test_okounkov_integral():
    assert okounkov_integral(1.0, -1.0, 0.5, method="quadrature") == pytest.approx(
        okounkov_integral(1.0, -1.0, 0.5), abs=1e-8)
    with pytest.raises(DomainError, match="c > 0"):
        okounkov_integral(0.0, 0.0, 0.0)


def test_case_c_conjugation_forms():
    assert case_c_conjugation(0.0, 0.3, 0.5, -0.2) == pytest.approx(
        case_c_conjugation(0.0, 0.3, 0.5, -0.2, form="printed"))
    assert case_c_conjugation(0.5, 0.3, 0.5, -0.2) != pytest.approx(
        case_c_conjugation(0.5, 0.3, 0.5, -0.2, form="printed"))
    # equal times and eta = xi: the factor is 1
    assert case_c_conjugation(0.4, 0.2, 0.4, 0.2) == pytest.approx(1.0)
    with pytest.raises(DomainError, match="conjugation form"):
        case_c_conjugation(0.0, 0.0, 0.0, 0.0, form="other")


def test_phi_gaussian():
    t = np.linspace(-30, 30, 6001)
    values = phi_gaussian(1.5, t)
    assert np.sum(values) * (t[1] - t[0]) == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(DomainError, match="sigma - tau > 0"):
        phi_gaussian(0.0, t)


def test_phi_finite_single_exchange():
    # A = {t_2}, B = {t_3}: psi is a two-sided exponential centred at 1/3 - 1/2
    seq, a, b = ParamSeq.linear(0.0), 2.0, 3.0
    d = 1 / b - 1 / a

    def psi(t):
        u = t + d
        return a * b / (a + b) * (math.exp(-b * u) if u >= 0 else math.exp(a * u))

    for gap in (-1.0, 0.5, 2.0):
        assert phi_finite(seq, 2, 0, 1, 0.0, gap) == pytest.approx(psi(gap), abs=5e-4)
    assert not phi_grid(seq, 3, 1, 0, [0.0, 1.0], [0.5]).any()


def test_bessel_kernel():
    x = 1.7
    expected = 0.25 * (jvp(0, math.sqrt(x)) ** 2 + jv(0, math.sqrt(x)) ** 2)
    assert bessel_kernel(0.0, x, x) == pytest.approx(expected, rel=1e-10)
    assert bessel_kernel(2.0, 0.5, 3.0) == pytest.approx(bessel_kernel(2.0, 3.0, 0.5), rel=1e-12)
    assert bessel_kernel(1.0, 2.0, 2.0 + 1e-5) == pytest.approx(bessel_kernel(1.0, 2.0, 2.0), abs=1e-6)
    with pytest.raises(DomainError, match="x > 0 and y > 0"):
        bessel_kernel(0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        bessel_kernel(12.0, 1.0, 1.0)


def test_handle_symmetry_flags():
    seq = ParamSeq.linear(0)
    assert FiniteN(seq, 4).symmetric
    assert not FiniteN(seq, 4, r=1, s=1).symmetric
    assert HardEdge(seq).symmetric
    assert ExtendedAiry(0.5, 0.5).symmetric
    assert not ExtendedAiry(0.0, 0.5).symmetric
    assert Airy().symmetric


def test_hard_edge_grid_is_symmetric():
    xs = [0.3, 1.0, 2.5]
    values = hard_edge_grid(ParamSeq.linear(0.5), xs, xs)
    assert np.allclose(values, values.T, atol=1e-8)


def test_case_b_relabel():
    seq = ParamSeq.power(0.4)
    xs, ys = [0.2, 1.5], [0.5, 1.0, 3.0]
    forward = case_b_grid(seq, 0.3, 0.8, xs, ys)
    backward = case_b_grid(seq, -0.8, -0.3, ys, xs)
    assert np.allclose(forward, backward.T, atol=1e-5)
    assert case_b_limit(seq, 0.3, 0.8, 0.2, 1.0) == pytest.approx(forward[0, 1], abs=1e-5)


def test_case_b_domain():
    with pytest.raises(DomainError, match="needs a power sequence"):
        case_b_grid(ParamSeq.power(0.7), 0.0, 0.0, [1.0], [1.0])
    with pytest.raises(DomainError, match="needs a power sequence"):
        case_b_grid(ParamSeq.linear(0), 0.0, 0.0, [1.0], [1.0])
    with pytest.raises(DomainError, match="tau=4"):
        case_b_grid(ParamSeq.power(0.4), 4.0, 0.0, [1.0], [1.0])


def test_handle_to_dict():
    data = FiniteN(ParamSeq.power(0.7), 5, r=1).to_dict()
    assert data == {"variant": "FiniteN", "seq": {"family": "power", "value": 0.7},
                    "N": 5, "r": 1, "s": 0, "include_phi": True}
    assert Airy().to_dict() == {"variant": "Airy"}


def test_evaluator_dispatch():
    xs, ys = [-1.0, 0.0, 2.0], [0.5, 250.0]
    values = evaluate_grid(Airy(), xs, ys)
    assert values.shape == (3, 2)
    assert values[1, 0] == pytest.approx(float(airy_kernel(0.0, 0.5)))
    assert not values[:, 1].any()

    gauss = KernelEvaluator().matrix(PhiGaussian(2.0), [0.0], [1.0, -1.0])
    assert gauss[0, 0] == pytest.approx(gauss[0, 1])
    assert KernelEvaluator().evaluate(Bessel(1.0), 1.0, 2.0) == pytest.approx(
        float(bessel_kernel(1.0, 1.0, 2.0)))


def test_evaluator_rejects_unknown_handle():
    @dataclass(frozen=True)
    class Unknown(KernelHandle):
        pass

    with pytest.raises(DomainError, match="Unknown not supported"):
        evaluate_grid(Unknown(), [0.0], [0.0])


def test_decay_scale():
    assert decay_scale(Airy(), 2.0) == pytest.approx(2.0)
    assert decay_scale(Airy(), -4.0) == pytest.approx(3.0)
    assert decay_scale(Bessel(0.0), 1.0) == 1.0
    assert decay_scale(HardEdge(ParamSeq.linear(0)), 30.0) == pytest.approx(1.5)


def test_write_grid():
    xs, ys = [0.0, 1.0], [-1.0, 0.5, 2.0]
    handle = Airy()
    values = evaluate_grid(handle, xs, ys)
    with tempfile.TemporaryDirectory() as temp_dir:
        path = Path(temp_dir) / "kernel.csv"
        sidecar = write_grid(path, handle, xs, ys, values, header="{}")
        lines = path.read_text().splitlines()
        meta = json.loads(sidecar.read_text())
    assert lines[:3] == ["# config: {}", '# kernel: {"variant": "Airy"}', "# x,y,value"]
    assert len(lines) == 3 + 6
    x, y, value = lines[4].split(",")
    assert (float(x), float(y), float(value)) == (0.0, 0.5, values[0, 1])
    assert meta == {"kernel": {"variant": "Airy"}, "contour": None, "tolerances": {},
                    "shape": [2, 3], "config": {}}


def test_write_grid_records_resolved_contour():
    seq, xs = ParamSeq.linear(0), [0.0, 0.5]
    handle = FiniteN(seq, 3, r=0, s=1)
    evaluator = KernelEvaluator(nodes_per_panel=12)
    contour = evaluator.resolve_contour(handle, xs, xs)
    assert contour == finite_contour(seq, 3, 0, 1, xs, xs, 12)
    assert evaluator.resolve_contour(Airy(), xs, xs) is None
    assert KernelEvaluator(contour).resolve_contour(HardEdge(seq), xs, xs) is contour

    tolerances = evaluator.tolerances(handle)
    assert set(tolerances) == {"integrand_bound", "imaginary_residue", "phi_refinement"}
    assert "phi_refinement" not in evaluator.tolerances(FiniteN(seq, 3, include_phi=False, s=1))
    assert evaluator.tolerances(ExtendedAiry(0.0, 0.5))["direct_tail"] == 1e-10

    values = KernelEvaluator(contour).matrix(handle, xs, xs)
    with tempfile.TemporaryDirectory() as temp_dir:
        sidecar = write_grid(Path(temp_dir) / "k.csv", handle, xs, xs, values, contour=contour,
                             header='{"N":3}', tolerances=tolerances)
        meta = json.loads(sidecar.read_text())
    assert meta["contour"] == contour.to_dict()
    assert meta["contour"]["nodes_per_panel"] == 12
    assert meta["tolerances"] == tolerances
    assert meta["config"] == {"N": 3}


def test_ktilde_single_site_closed_form():
    # N = 1: G = w_11 ~ Exp(2 t_1) and K~(x, y) = 2 t_1 e^{-t_1 (x + y + 2c)}
    seq = ParamSeq.linear(0)
    c = centering(seq, 1, 0)
    assert c == pytest.approx(2.0)
    for x, y in [(0.0, 0.5), (1.0, 0.2), (0.4, 0.4)]:
        assert ktilde_finite(seq, 1, 0, 0, x, y) == pytest.approx(
            2 * math.exp(-(x + y + 2 * c)), abs=1e-10)


def test_ktilde_refinement():
    seq, xs = ParamSeq.power(0.7), [0.0, 0.5, 1.5]
    contour = finite_contour(seq, 6, 0, 1, xs, xs)
    coarse = ktilde_grid(seq, 6, 0, 1, xs, xs, contour)
    fine = ktilde_grid(seq, 6, 0, 1, xs, xs, contour.refined())
    assert np.allclose(coarse, fine, atol=1e-10)
    longer = ktilde_grid(seq, 6, 0, 1, xs, xs, contour.extended(4))
    assert np.allclose(coarse, longer, atol=1e-10)


def test_finite_kernel_symmetric_on_one_line():
    seq, xs = ParamSeq.linear(0.5), [0.0, 0.5, 1.5]
    values = ktilde_grid(seq, 4, 0, 0, xs, xs)
    assert np.allclose(values, values.T, atol=1e-10)
    assert np.allclose(evaluate_grid(FiniteN(seq, 4), xs, xs), values, atol=1e-12)


def test_truncation_radius_grows_with_x_bound():
    seq = ParamSeq.linear(0)
    radii = [truncation_radius(seq, 8, 0, bound) for bound in (0.0, 0.5, 1.0, 2.0)]
    assert radii == sorted(radii)
    assert radii[-1] > radii[0] > 0


def test_two_line_kernel_on_one_line_is_ktilde():
    seq = ParamSeq.linear(0)
    assert two_line_kernel(seq, 3, 1, 1, 0.5, 1.0) == pytest.approx(
        ktilde_finite(seq, 3, 1, 1, 0.5, 1.0), abs=1e-12)
    with_phi = evaluate_grid(FiniteN(seq, 3, r=1, s=1), [0.5], [1.0])
    without_phi = evaluate_grid(FiniteN(seq, 3, r=1, s=1, include_phi=False), [0.5], [1.0])
    assert np.allclose(with_phi, without_phi, atol=1e-12)


def test_two_line_kernel_subtracts_phi():
    seq = ParamSeq.linear(0)
    assert two_line_kernel(seq, 3, 0, 1, 0.5, 1.0) == pytest.approx(
        ktilde_finite(seq, 3, 0, 1, 0.5, 1.0) - phi_finite(seq, 3, 0, 1, 0.5, 1.0), abs=1e-9)
