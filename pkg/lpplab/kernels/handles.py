"""
Uniform handles on every kernel the package evaluates, and the evaluator
that dispatches a handle to its grid routine.
"""
import csv
import json
import logging
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from lpplab.errors import DomainError
from lpplab.kernels.contour import IMAG_TOL, NEGLIGIBLE_LOG, ContourSpec
from lpplab.kernels.finite import (PHI_TOL, finite_contour, ktilde_grid, phi_grid,
                                   two_line_grid)
from lpplab.kernels.limits import (bessel_kernel, case_b_contour, case_b_grid, hard_edge_contour,
                                   hard_edge_grid, phi_gaussian)
from lpplab.kernels.soft_edge import (AIRY_HIGH, DIRECT_TAIL_TOL, TAIL_LOG, airy_kernel,
                                      extended_airy)
from lpplab.params import Family, ParamSeq, bessel_shift

logger = logging.getLogger(__name__)


class KernelHandle:
    """Base class for all kernel handles."""

    symmetric = False

    @property
    def variant(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        data = {"variant": self.variant}
        for f in fields(self):
            value = getattr(self, f.name)
            data[f.name] = value.to_dict() if isinstance(value, ParamSeq) else value
        return data


@dataclass(frozen=True)
class FiniteN(KernelHandle):
    """K_N(r, x; s, y) in centered coordinates; include_phi=False gives K~_N."""
    seq: ParamSeq
    N: int
    r: int = 0
    s: int = 0
    include_phi: bool = True

    @property
    def symmetric(self) -> bool:
        return self.r == 0 and self.s == 0


@dataclass(frozen=True)
class HardEdge(KernelHandle):
    seq: ParamSeq
    genus: int | None = None
    symmetric = True


@dataclass(frozen=True)
class CaseB(KernelHandle):
    seq: ParamSeq
    tau: float = 0.0
    sigma: float = 0.0

    @property
    def symmetric(self) -> bool:
        return self.tau == 0 and self.sigma == 0


@dataclass(frozen=True)
class ExtendedAiry(KernelHandle):
    tau: float = 0.0
    sigma: float = 0.0
    path: str = "closed"

    @property
    def symmetric(self) -> bool:
        return self.tau == self.sigma


@dataclass(frozen=True)
class Airy(KernelHandle):
    symmetric = True


@dataclass(frozen=True)
class Bessel(KernelHandle):
    nu: float
    symmetric = True


@dataclass(frozen=True)
class PhiFiniteN(KernelHandle):
    seq: ParamSeq
    N: int
    r: int
    s: int


@dataclass(frozen=True)
class PhiGaussian(KernelHandle):
    """The heat kernel at time c = sigma - tau, as a function of y - x."""
    c: float
    symmetric = True


def decay_scale(handle: KernelHandle, xi: float) -> float:
    """
    Scale L of the semi-infinite grid maps: roughly the length over which the
    kernel decays by e beyond the edge of its support.
    """
    if isinstance(handle, (Airy, ExtendedAiry)):
        return (max(xi, 0.0) + 8.0 - xi) / 4.0
    if isinstance(handle, (HardEdge, CaseB, FiniteN)):
        t1 = handle.seq.t1
        x_edge = 0.0
        if handle.seq.family is Family.LINEAR:
            beta = handle.seq.beta
            x_edge = bessel_shift(beta) - 2 * math.log(max(2 * beta + 1, 1.0) / 2)
        return max(3 / (2 * t1), (x_edge - xi + 18 / (2 * t1)) / 7)
    return 1.0


@dataclass
class KernelEvaluator:
    """Dispatches a handle to the routine that evaluates it on a grid."""
    contour: ContourSpec | None = None
    nodes_per_panel: int = 16

    def matrix(self, handle: KernelHandle, xs, ys) -> np.ndarray:
        operations = {
            FiniteN: self.evaluate_finite_n,
            HardEdge: self.evaluate_hard_edge,
            CaseB: self.evaluate_case_b,
            ExtendedAiry: self.evaluate_extended_airy,
            Airy: self.evaluate_airy,
            Bessel: self.evaluate_bessel,
            PhiFiniteN: self.evaluate_phi_finite_n,
            PhiGaussian: self.evaluate_phi_gaussian,
        }

        if type(handle) not in operations:
            raise DomainError(f"Kernel handle {type(handle).__name__} not supported.")

        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        return operations[type(handle)](handle, xs, ys)

    def evaluate(self, handle: KernelHandle, x: float, y: float) -> float:
        return float(self.matrix(handle, [x], [y])[0, 0])

    def resolve_contour(self, handle: KernelHandle, xs, ys) -> ContourSpec | None:
        """
        The contour `matrix` would integrate on for this grid, or None for
        kernels evaluated without one.
        """
        if self.contour is not None:
            return self.contour
        n = self.nodes_per_panel
        builders = {
            FiniteN: lambda h: finite_contour(h.seq, h.N, h.r, h.s, xs, ys, n),
            HardEdge: lambda h: hard_edge_contour(h.seq, xs, ys, h.genus, n),
            CaseB: lambda h: case_b_contour(h.seq, h.tau, h.sigma, xs, ys, n),
        }
        builder = builders.get(type(handle))
        return builder(handle) if builder is not None else None

    def tolerances(self, handle: KernelHandle) -> dict:
        contour = {"integrand_bound": math.exp(NEGLIGIBLE_LOG), "imaginary_residue": IMAG_TOL}
        phi = {"phi_refinement": PHI_TOL}
        tables = {
            FiniteN: lambda h: {**contour, **phi} if h.include_phi and h.r < h.s else contour,
            HardEdge: lambda h: contour,
            CaseB: lambda h: contour,
            ExtendedAiry: lambda h: {"airy_tail": math.exp(TAIL_LOG),
                                     "direct_tail": DIRECT_TAIL_TOL},
            PhiFiniteN: lambda h: phi,
        }
        table = tables.get(type(handle))
        return table(handle) if table is not None else {}

    def evaluate_finite_n(self, handle: FiniteN, xs, ys) -> np.ndarray:
        contour = self.resolve_contour(handle, xs, ys)
        if not handle.include_phi:
            return ktilde_grid(handle.seq, handle.N, handle.r, handle.s, xs, ys, contour)
        return two_line_grid(handle.seq, handle.N, handle.r, handle.s, xs, ys, contour)

    def evaluate_hard_edge(self, handle: HardEdge, xs, ys) -> np.ndarray:
        contour = self.resolve_contour(handle, xs, ys)
        return hard_edge_grid(handle.seq, xs, ys, contour, handle.genus)

    def evaluate_case_b(self, handle: CaseB, xs, ys) -> np.ndarray:
        contour = self.resolve_contour(handle, xs, ys)
        return case_b_grid(handle.seq, handle.tau, handle.sigma, xs, ys, contour)

    def evaluate_extended_airy(self, handle: ExtendedAiry, xs, ys) -> np.ndarray:
        return np.array([[extended_airy(handle.tau, x, handle.sigma, y, handle.path)
                          for y in ys] for x in xs])

    def evaluate_airy(self, handle: Airy, xs, ys) -> np.ndarray:
        # Ai(x) < 1e-800 past the top of its range
        inside_x, inside_y = xs <= AIRY_HIGH, ys <= AIRY_HIGH
        out = np.zeros((len(xs), len(ys)))
        out[np.ix_(inside_x, inside_y)] = airy_kernel(xs[inside_x][:, None], ys[inside_y][None, :])
        return out

    def evaluate_bessel(self, handle: Bessel, xs, ys) -> np.ndarray:
        return bessel_kernel(handle.nu, xs[:, None], ys[None, :])

    def evaluate_phi_finite_n(self, handle: PhiFiniteN, xs, ys) -> np.ndarray:
        return phi_grid(handle.seq, handle.N, handle.r, handle.s, xs, ys)

    def evaluate_phi_gaussian(self, handle: PhiGaussian, xs, ys) -> np.ndarray:
        return phi_gaussian(handle.c, ys[None, :] - xs[:, None])


def evaluate_grid(handle: KernelHandle, xs, ys, contour: ContourSpec | None = None) -> np.ndarray:
    """Kernel values on the grid xs x ys, shape (len(xs), len(ys))."""
    return KernelEvaluator(contour).matrix(handle, xs, ys)


def write_grid(path: str | Path, handle: KernelHandle, xs, ys, values: np.ndarray,
               contour: ContourSpec | None = None, header: str | None = None,
               tolerances: dict | None = None) -> Path:
    """
    Write `x,y,value` rows to `path` and a JSON sidecar next to it holding
    the handle, the contour actually used, the tolerances, the grid shape
    and the run config. Returns the sidecar path.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        if header is not None:
            f.write(f"# config: {header}\n")
        f.write(f"# kernel: {json.dumps(handle.to_dict(), sort_keys=True)}\n")
        f.write("# x,y,value\n")
        writer = csv.writer(f)
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                writer.writerow([repr(float(x)), repr(float(y)), repr(float(values[i, j]))])

    sidecar = path.with_suffix(".json")
    meta = {"kernel": handle.to_dict(),
            "contour": contour.to_dict() if contour is not None else None,
            "tolerances": tolerances or {},
            "shape": [len(xs), len(ys)],
            "config": json.loads(header) if header is not None else None}
    with open(sidecar, "w") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
    logger.info(f"Wrote {len(xs) * len(ys)} kernel values to {path}")
    return sidecar
