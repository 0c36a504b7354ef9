"""
Command line entry point: `lpplab <subcommand> [--config file] [flags]`.

Exit codes: 0 success, 1 failed verification, 2 bad configuration or
arguments, 3 numerical non-convergence, 4 resource guard.
"""
import argparse
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from lpplab.analysis import (ExperimentReport, exponent_fit, gumbel_experiment, identity_suite,
                             symmetry_ks, triviality_probe, write_json_report)
from lpplab.config import EXECUTION_FIELDS, RunConfig, load_config
from lpplab.errors import ConfigError, ConvergenceError, LpplabError, ResourceError
from lpplab.fredholm import (GridMap, bofo_limit_probe, distribution_table,
                             write_distribution_table)
from lpplab.kernels import (Airy, Bessel, CaseB, ExtendedAiry, FiniteN, HardEdge,
                            KernelEvaluator, KernelHandle, PhiFiniteN, PhiGaussian, write_grid)
from lpplab.lpp import SimConfig, Statistic, monte_carlo, write_samples_csv
from lpplab.params import ParamSeq

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("simulate", "kernel", "fredholm", "dist-table", "experiment", "verify")
BOFO_BETAS = (2.0, 5.0, 10.0, 20.0)


def parse_grid(spec: str) -> np.ndarray:
    """'a:b:step' -> a, a+step, ..., up to and including b."""
    try:
        a, b, step = (float(part) for part in spec.split(":"))
    except ValueError:
        raise ConfigError(f"Grid '{spec}' must have the form a:b:step")
    if step <= 0 or b < a:
        raise ConfigError(f"Grid '{spec}' needs step > 0 and a <= b")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return a + step * np.arange(count)


def seq_from_config(config: RunConfig) -> ParamSeq:
    if config.family == "linear":
        return ParamSeq.linear(config.beta if config.beta is not None else 0.0)
    if config.family == "power":
        if config.alpha is None:
            raise ConfigError("Power family needs 'alpha'")
        return ParamSeq.power(config.alpha)
    if config.family == "constant":
        return ParamSeq.constant(config.constant if config.constant is not None else 0.5)
    raise ConfigError(f"Unknown family '{config.family}'")


def handle_from_config(config: RunConfig) -> KernelHandle:
    def finite_n():
        if config.N is None:
            raise ConfigError(f"Kernel '{config.kernel}' needs 'N'")
        return seq_from_config(config), config.N, config.r, config.s

    handles = {
        "finite-n": lambda: FiniteN(*finite_n()),
        "ktilde": lambda: FiniteN(*finite_n(), include_phi=False),
        "phi-finite-n": lambda: PhiFiniteN(*finite_n()),
        "hard-edge": lambda: HardEdge(seq_from_config(config)),
        "case-b": lambda: CaseB(seq_from_config(config), config.tau, config.sigma),
        "extended-airy": lambda: ExtendedAiry(config.tau, config.sigma),
        "airy": lambda: Airy(),
        "bessel": lambda: Bessel(config.nu),
        "phi-gaussian": lambda: PhiGaussian(config.sigma - config.tau),
    }
    if config.kernel not in handles:
        raise ConfigError(f"Unknown kernel '{config.kernel}', expected one of {sorted(handles)}")
    return handles[config.kernel]()


@dataclass
class Runner:
    config: RunConfig

    @property
    def out(self) -> Path:
        return Path(self.config.out)

    @property
    def header(self) -> str:
        return self.config.to_json(exclude=EXECUTION_FIELDS)

    def run(self, subcommand: str) -> int:
        operations = {
            "simulate": self.run_simulate,
            "kernel": self.run_kernel,
            "fredholm": self.run_fredholm,
            "dist-table": self.run_dist_table,
            "experiment": self.run_experiment,
            "verify": self.run_verify,
        }

        if subcommand not in operations:
            raise ConfigError(f"Subcommand '{subcommand}' not supported.")

        return operations[subcommand]()

    def run_simulate(self) -> int:
        c = self.config
        try:
            statistic = Statistic(c.statistic)
        except ValueError:
            raise ConfigError(f"Unknown statistic '{c.statistic}'")
        if statistic is Statistic.ANTIDIAGONAL:
            if c.N is None:
                raise ConfigError("Anti-diagonal statistic needs 'N'")
            sim = SimConfig(seq_from_config(c), seed=c.seed, samples=c.samples, N=c.N)
        else:
            m, n = c.m or c.N, c.n or c.N
            if m is None or n is None:
                raise ConfigError("simulate needs 'm' and 'n', or 'N'")
            sim = SimConfig(seq_from_config(c), m, n, c.seed, c.samples)
        samples = monte_carlo(sim, statistic, c.workers)
        write_samples_csv(self.out / "samples.csv", sim, statistic, samples, self.header)
        return 0

    def run_kernel(self) -> int:
        c = self.config
        handle = handle_from_config(c)
        xs = parse_grid(c.x_grid)
        ys = parse_grid(c.y_grid or c.x_grid)
        resolver = KernelEvaluator(nodes_per_panel=c.nodes_per_panel)
        contour = resolver.resolve_contour(handle, xs, ys)
        evaluator = KernelEvaluator(contour, c.nodes_per_panel)
        values = evaluator.matrix(handle, xs, ys)
        write_grid(self.out / "kernel.csv", handle, xs, ys, values, contour=contour,
                   header=self.header, tolerances=evaluator.tolerances(handle))
        return 0

    def _distribution(self) -> str:
        return "u_beta" if self.config.beta is not None else self.config.distribution

    def _table(self, name: str, xis) -> int:
        c = self.config
        distribution = self._distribution()
        path = "bessel" if c.kernel == "bessel" else "contour"
        try:
            grid_map = GridMap(c.grid_map)
        except ValueError:
            raise ConfigError(f"Unknown grid map '{c.grid_map}'")
        results = distribution_table(distribution, xis, c.beta, path, c.order, grid_map)
        meta = {"distribution": distribution, "beta": c.beta, "path": path,
                "order": c.order, "map": c.grid_map, "config": self.header}
        write_distribution_table(self.out / f"{name}.csv", xis, results, meta, self.header)
        return 0

    def run_fredholm(self) -> int:
        if not self.config.xi:
            raise ConfigError("fredholm needs at least one 'xi'")
        return self._table("fredholm", self.config.xi)

    def run_dist_table(self) -> int:
        if self.config.xi_grid is None:
            raise ConfigError("dist-table needs 'xi_grid'")
        return self._table("dist-table", parse_grid(self.config.xi_grid))

    def run_experiment(self) -> int:
        experiments = {
            "gumbel": self.experiment_gumbel,
            "exponent": self.experiment_exponent,
            "triviality": self.experiment_triviality,
            "bofo": self.experiment_bofo,
            "symmetry": self.experiment_symmetry,
        }
        name = self.config.experiment
        if name not in experiments:
            raise ConfigError(f"Unknown experiment '{name}', expected one of {sorted(experiments)}")
        report = experiments[name]()
        report.inputs["config"] = self.header
        write_json_report(self.out / f"experiment-{name}.json", report.to_dict())
        return 0

    def experiment_gumbel(self) -> ExperimentReport:
        c = self.config
        beta = c.beta if c.beta is not None else -0.5
        report = ExperimentReport("gumbel", {"beta": beta, "N_list": c.N_list,
                                             "samples": c.samples, "seed": c.seed})
        ks = {}
        for N in c.N_list:
            dist, ks[N] = gumbel_experiment(N, c.samples, c.seed, beta, c.workers)
            report.statistics[str(N)] = {"ks": ks[N], **dist.to_dict()}
        report.checks["ks_largest_N_below_0.1"] = ks[max(ks)] < 0.1
        return report

    def experiment_exponent(self) -> ExperimentReport:
        c = self.config
        if c.family == "constant":
            seq = seq_from_config(c)
            target = 2 / 3
        else:
            if c.alpha is None:
                raise ConfigError("exponent experiment needs 'alpha' or family 'constant'")
            seq = ParamSeq.power(c.alpha)
            target = 2 * max(0.0, 1 / 3 - c.alpha)
        slope, stderr = exponent_fit(seq.value, c.N_list, c.samples, c.seed, seq, c.workers)
        report = ExperimentReport("exponent", {"seq": seq.to_dict(), "N_list": c.N_list,
                                               "samples": c.samples, "seed": c.seed})
        report.statistics.update(slope=slope, stderr=stderr, target=target)
        report.checks["slope_within_0.2"] = abs(slope - target) <= 0.2
        return report

    def experiment_triviality(self) -> ExperimentReport:
        c = self.config
        seq = seq_from_config(c)
        report = ExperimentReport("triviality", {"seq": seq.to_dict(), "N_list": c.N_list,
                                                 "samples": c.samples, "seed": c.seed})
        for N in c.N_list:
            offsets = c.offsets or [0, N // 2]
            corr = triviality_probe(seq, N, offsets, c.samples, c.seed, c.workers)
            report.statistics[str(N)] = {"offsets": offsets, "correlation": corr.tolist()}
        return report

    def experiment_bofo(self) -> ExperimentReport:
        c = self.config
        s_values = c.xi or [0.0]
        report = ExperimentReport("bofo", {"betas": list(BOFO_BETAS), "s": s_values,
                                           "order": c.order})
        for s in s_values:
            pairs = [bofo_limit_probe(beta, s, order=c.order) for beta in BOFO_BETAS]
            gaps = [abs(u - f) for u, f in pairs]
            report.statistics[str(s)] = {"pairs": pairs, "gaps": gaps}
            report.checks[f"gap_decreasing_at_s={s:g}"] = all(
                later < earlier for earlier, later in zip(gaps, gaps[1:]))
        return report

    def experiment_symmetry(self) -> ExperimentReport:
        c = self.config
        if c.m is None or c.n is None:
            raise ConfigError("symmetry experiment needs 'm' and 'n'")
        seq = seq_from_config(c)
        ks = symmetry_ks(seq, c.m, c.n, c.samples, c.seed, c.workers)
        report = ExperimentReport("symmetry", {"seq": seq.to_dict(), "m": c.m, "n": c.n,
                                               "samples": c.samples, "seed": c.seed})
        report.statistics["ks"] = ks
        return report

    def run_verify(self) -> int:
        results = identity_suite(self.config.seed)
        passed = all(result.passed for result in results)
        write_json_report(self.out / "verify.json",
                          {"passed": passed, "config": self.header,
                           "identities": [result.to_dict() for result in results]})
        for result in results:
            if not result.passed:
                logger.error(f"{result.name} failed: error {result.error:.3g} > {result.tol:g}")
        return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config file")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--N", type=int, dest="N")
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--family", choices=["linear", "power", "constant"])
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--kernel")
    common.add_argument("--distribution", choices=["tw", "u_beta"])
    common.add_argument("--xi", type=float, action="append", help="repeatable")
    common.add_argument("--xi-grid", dest="xi_grid", help="a:b:step")
    common.add_argument("--x-grid", dest="x_grid", help="a:b:step")
    common.add_argument("--y-grid", dest="y_grid", help="a:b:step")
    common.add_argument("--order", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--out")
    common.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    parser = argparse.ArgumentParser(prog="lpplab", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        command = sub.add_parser(name, parents=[common])
        if name == "experiment":
            command.add_argument("experiment", nargs="?",
                                 choices=["gumbel", "exponent", "triviality", "bofo", "symmetry"])
    return parser


OVERRIDES = ("seed", "samples", "N", "m", "n", "family", "alpha", "beta", "kernel",
             "distribution", "xi", "xi_grid", "x_grid", "y_grid", "order", "workers", "out",
             "experiment")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    logging.basicConfig(level=args.log_level.upper(),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    overrides = {key: getattr(args, key, None) for key in OVERRIDES}
    if args.alpha is not None and args.family is None:
        overrides["family"] = "power"

    try:
        config = load_config(args.config, overrides)
        return Runner(config).run(args.subcommand)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return 2
    except ConvergenceError as e:
        logger.error(f"Did not converge: {e}")
        return 3
    except ResourceError as e:
        logger.error(f"Resource guard: {e}")
        return 4
    except LpplabError as e:
        logger.error(f"Invalid arguments: {e}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
