"""Command-line front end.

    foq coeffs --omega 0 --nodes 2 --format json
    foq norm --omega 1 --nodes 10 --brute-force
    foq integrate --omega 3 --nodes 40 --function x2 --with-bound
    foq integrate --omega 3 --samples data.csv
    foq validate [--omega 1 --nodes 10] [--brute-force]
    foq convergence --omega 1 --min-nodes 10 --max-nodes 160 --factor 2

Reports go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 validation failure, 2 usage error, 3 I/O or input-data error.
``FOQ_TOLERANCE_PROFILE`` (``default`` or ``strict``) selects the
certification tolerances used by ``validate``.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import io as fio
from .coefficients import CoefficientSet, optimal_coefficients
from .error_norm import error_norm_report
from .errors import ConvergenceError, SampleError
from .grid import UniformGrid
from .oracle import oracle_coefficients
from .quadrature import BUILTINS, apply, error_bound, integrate_fourier, reference_integral
from .validation import (
    CERTIFICATION_NODES,
    CERTIFICATION_OMEGAS,
    TOLERANCES,
    convergence_slope,
    run_certification,
)

log = logging.getLogger("foq")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("coeffs", "norm", "integrate", "validate", "convergence")


class UsageError(Exception):
    pass


class _IOProblem(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    omega: Optional[float] = None
    nodes: Optional[int] = None
    interval: tuple = (0.0, 1.0)
    format: str = "json"
    function: Optional[str] = None
    samples_path: Optional[str] = None
    sweep: Optional[tuple] = None
    generator: str = "closed-form"
    brute_force: bool = False
    with_bound: bool = False
    profile: str = "default"

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.profile not in TOLERANCES:
            raise UsageError(f"FOQ_TOLERANCE_PROFILE must be one of {sorted(TOLERANCES)}, got {self.profile!r}")
        if self.omega is not None and not math.isfinite(self.omega):
            raise UsageError("--omega must be finite")
        if self.nodes is not None and self.nodes < 1:
            raise UsageError("--nodes must be >= 1")
        a, b = self.interval
        if not (math.isfinite(a) and math.isfinite(b) and b > a):
            raise UsageError(f"--interval needs finite a < b, got {a} {b}")

        needs = {"coeffs": ("omega", "nodes"), "norm": ("omega", "nodes"), "convergence": ("omega",)}
        for name in needs.get(self.command, ()):
            if getattr(self, name) is None:
                raise UsageError(f"{self.command} requires --{name}")
        if self.command == "norm" and self.interval != (0.0, 1.0):
            raise UsageError("norm is reported on the unit interval only")
        if self.command == "integrate":
            if (self.function is None) == (self.samples_path is None):
                raise UsageError("integrate needs exactly one of --function / --samples")
            if self.omega is None:
                raise UsageError("integrate requires --omega")
            if self.function is not None:
                if self.function not in BUILTINS:
                    raise UsageError(f"unknown function {self.function!r}; choose from {sorted(BUILTINS)}")
                if self.nodes is None:
                    raise UsageError("integrate --function requires --nodes")
        if self.command == "validate" and (self.omega is None) != (self.nodes is None):
            raise UsageError("validate takes both --omega and --nodes, or neither (full grid)")
        if self.command == "convergence":
            n_min, n_max, factor = self.sweep
            if not (1 <= n_min < n_max) or factor < 2:
                raise UsageError("convergence needs 1 <= --min-nodes < --max-nodes and --factor >= 2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foq", description="Sard-optimal quadrature for Fourier integrals.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--omega", type=float, help="frequency of exp(2 pi i omega x)")
        p.add_argument("--nodes", type=int, help="number of intervals N (N+1 nodes)")
        p.add_argument("--interval", type=float, nargs=2, metavar=("A", "B"), default=(0.0, 1.0))
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("coeffs", help="emit optimal coefficients")
    common(p)
    p.add_argument("--generator", choices=fio.GENERATORS, default="closed-form")

    p = sub.add_parser("norm", help="error-functional norm")
    common(p)
    p.add_argument("--brute-force", action="store_true", help="add the numerical quadratic-form value")

    p = sub.add_parser("integrate", help="integrate a builtin function or sample file")
    common(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--function", help=f"builtin: {', '.join(BUILTINS)}")
    src.add_argument("--samples", dest="samples_path", help="CSV with header x,re,im")
    p.add_argument("--with-bound", action="store_true")

    p = sub.add_parser("validate", help="certify closed forms against the oracle")
    common(p)
    p.add_argument("--brute-force", action="store_true", help="include numerical norm, extremal and minimality checks")

    p = sub.add_parser("convergence", help="norm and observed errors over a sweep of N")
    common(p)
    p.add_argument("--min-nodes", type=int, default=10)
    p.add_argument("--max-nodes", type=int, default=160)
    p.add_argument("--factor", type=int, default=2)
    return parser


def config_from_args(args) -> RunConfig:
    sweep = None
    if args.command == "convergence":
        sweep = (args.min_nodes, args.max_nodes, args.factor)
    return RunConfig(
        command=args.command,
        omega=args.omega,
        nodes=args.nodes,
        interval=tuple(float(v) for v in args.interval),
        format=args.format,
        function=getattr(args, "function", None),
        samples_path=getattr(args, "samples_path", None),
        sweep=sweep,
        generator=getattr(args, "generator", "closed-form"),
        brute_force=getattr(args, "brute_force", False),
        with_bound=getattr(args, "with_bound", False),
        profile=os.environ.get("FOQ_TOLERANCE_PROFILE", "default"),
    )


def run(config: RunConfig) -> tuple[int, str]:
    """Execute a validated config; returns ``(exit_status, report_text)``."""
    config.validate()
    handler = {
        "coeffs": _coeffs,
        "norm": _norm,
        "integrate": _integrate,
        "validate": _validate,
        "convergence": _convergence,
    }[config.command]
    return handler(config)


def _render(config, document: dict, rows=None, columns=None) -> str:
    if config.format == "csv":
        if rows is None:
            rows, columns = [document], list(document)
        return fio.table_to_csv(rows, columns)
    return fio.dumps(document) + "\n"


def _coeffs(config):
    grid = UniformGrid(*config.interval, config.nodes)
    if config.generator == "oracle":
        if not grid.is_unit:
            raise UsageError("the oracle generator works on the unit interval only")
        solution = oracle_coefficients(config.omega, config.nodes)
        coeffs = CoefficientSet(solution.coefficients, config.omega, grid, "oracle")
    else:
        coeffs = optimal_coefficients(config.omega, grid)
    if config.format == "csv":
        return EXIT_OK, fio.coefficients_to_csv(coeffs)
    return EXIT_OK, fio.coefficients_to_json(coeffs) + "\n"


def _norm(config):
    report = error_norm_report(config.omega, config.nodes, brute_force=config.brute_force)
    doc = {
        "omega": report.omega,
        "n_intervals": report.grid.n_intervals,
        "h": report.grid.h,
        "norm_squared": report.norm_squared,
        "norm": report.norm,
        "asymptotic_estimate": report.asymptotic_estimate,
        "brute_force_value": report.brute_force_value,
    }
    return EXIT_OK, _render(config, doc)


def _integrate(config):
    if config.samples_path is not None:
        try:
            samples = fio.load_samples(config.samples_path)
        except OSError as exc:
            raise _IOProblem(f"cannot read samples: {exc}") from exc
        coeffs = optimal_coefficients(config.omega, samples.grid)
        result = apply(coeffs, samples)
        norm_used = bound = None
        if config.with_bound:
            norm_used, bound = error_bound(samples, config.omega)
        grid = samples.grid
    else:
        fn = BUILTINS[config.function]
        grid = UniformGrid(*config.interval, config.nodes)
        result = integrate_fourier(
            lambda x: complex(fn.f(np.float64(x))),
            config.omega,
            grid,
            with_bound=config.with_bound,
            derivative=lambda x: complex(fn.df(np.float64(x))),
        )
        norm_used, bound = result.norm_used, result.error_bound
    doc = {
        "omega": config.omega,
        "a": grid.a,
        "b": grid.b,
        "n_intervals": grid.n_intervals,
        "function": config.function,
        "re": result.value.real,
        "im": result.value.imag,
        "error_bound": bound,
        "norm_used": norm_used,
    }
    return EXIT_OK, _render(config, doc)


def _validate(config):
    if config.omega is None:
        cases = [(w, n) for w in CERTIFICATION_OMEGAS for n in CERTIFICATION_NODES]
    else:
        cases = [(config.omega, config.nodes)]
    report = run_certification(cases, TOLERANCES[config.profile], brute_force=config.brute_force)
    report["profile"] = config.profile
    for v in report["violations"]:
        log.error("violation: %s at %s: %.3e > %.1e", v["name"], v["case"], v["value"], v["tolerance"])
    status = EXIT_OK if report["passed"] else EXIT_FAILED
    if config.format == "csv":
        rows = [{"name": k, "value": v["value"], "tolerance": v["tolerance"]} for k, v in report["worst"].items()]
        return status, fio.table_to_csv(rows, ["name", "value", "tolerance"])
    return status, fio.dumps(report) + "\n"


def _convergence(config):
    n_min, n_max, factor = config.sweep
    nodes = []
    n = n_min
    while n <= n_max:
        nodes.append(n)
        n *= factor
    if len(nodes) < 2:
        raise UsageError("sweep yields fewer than two node counts")
    a, b = config.interval
    length = b - a
    truth = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name, fn in BUILTINS.items():
            truth[name] = reference_integral(fn.f, config.omega, a, b)

    rows = []
    for n in nodes:
        grid = UniformGrid(a, b, n)
        report = error_norm_report(config.omega * length, n)
        row = {"n_intervals": n, "h": grid.h, "error_norm": report.norm}
        coeffs = optimal_coefficients(config.omega, grid)
        x = grid.nodes()
        for name, fn in BUILTINS.items():
            value = complex(np.sum(coeffs.values * fn.f(x)))
            row[name] = abs(value - truth[name])
        rows.append(row)

    slope = convergence_slope(config.omega * length, nodes)
    columns = ["n_intervals", "h", "error_norm", *BUILTINS]
    if config.format == "csv":
        fit = {"n_intervals": "slope", "error_norm": slope}
        return EXIT_OK, fio.table_to_csv(rows + [fit], columns)
    doc = {"omega": config.omega, "a": a, "b": b, "columns": columns, "rows": rows, "fitted_slope": slope}
    return EXIT_OK, fio.dumps(doc) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        status, text = run(config_from_args(args))
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"foq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (_IOProblem, SampleError, OSError) as exc:
        print(f"foq: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConvergenceError as exc:
        print(f"foq: numerical error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
