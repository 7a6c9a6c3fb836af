"""Certification sweep behind ``foq validate``.

Each check compares a closed-form quantity against an independent route
(linear-system oracle, transcribed special-case formulas, numerical
quadrature) and records the observed deviation next to a fixed tolerance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ._integrate import gauss_refine
from .coefficients import (
    check_exactness,
    cosine_coefficients,
    optimal_coefficients,
    optimal_coefficients_unit,
    sine_coefficients,
    trapezoid_coefficients,
)
from .error_norm import norm_squared_bruteforce, norm_squared_closed
from .grid import UniformGrid
from .oracle import (
    discrete_operator_D,
    extremal_function_check,
    kernel_G,
    oracle_coefficients,
    rhs_f,
    verify_discrete_identities,
)

log = logging.getLogger(__name__)

CERTIFICATION_OMEGAS = (0.0, 0.3, -0.3, 1.0, -1.0, 2.7, -2.7, 10.0, -10.0, 50.0, -50.0)
CERTIFICATION_NODES = (1, 2, 5, 10, 50, 200)
CONVERGENCE_NODES = (10, 20, 40, 80, 160)
INTERVALS = ((-1.0, 1.0), (2.0, 5.0))

TOLERANCES = {
    "default": {
        "coefficients": 1e-10,
        "lagrange_d": 1e-10,
        "residual": 1e-10,
        "exactness": 1e-12,
        "decomposition": 1e-12,
        "symmetry": 1e-14,
        "modulation": 1e-12,
        "trapezoid": 1e-14,
        "small_omega": 1e-6,
        "rhs_f": 1e-10,
        "interval": 1e-10,
        "identities": 1e-12,
        "slope": 0.05,
        "bruteforce": 1e-8,
        "extremal": 1e-6,
        "minimality": 0.0,
    },
}
TOLERANCES["strict"] = {
    key: (value if key in ("slope", "minimality", "small_omega") else value / 10.0)
    for key, value in TOLERANCES["default"].items()
}


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    case: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "case": self.case,
            "value": float(self.value),
            "tolerance": float(self.tolerance),
            "passed": self.passed,
        }


def explicit_cosine(omega: float, n: int) -> np.ndarray:
    """Real parts of the optimal weights, written out term by term.

    The last weight uses ``cos(2 pi omega - 2 pi omega h)``; the ``+`` sign
    sometimes quoted for it disagrees with the linear-system solution.
    """
    h = 1.0 / n
    w = 2.0 * np.pi * omega
    den = (np.exp(2 * h) - 1.0) * (w * w + 1.0)
    common = 1.0 + np.exp(2 * h) - 2.0 * np.exp(h) * np.cos(w * h)
    out = 2.0 * common / den * np.cos(w * h * np.arange(n + 1))
    out[0] = common / den
    out[n] = (
        -2.0 * np.exp(h) * np.cos(w - w * h)
        + (1.0 + np.exp(2 * h)) * np.cos(w)
        + w * np.sin(w) * (np.exp(2 * h) - 1.0)
    ) / den
    return out


def explicit_sine(omega: float, n: int) -> np.ndarray:
    """Imaginary parts of the optimal weights, written out term by term (``sin(2 pi omega - 2 pi omega h)`` at the end)."""
    h = 1.0 / n
    w = 2.0 * np.pi * omega
    den = (np.exp(2 * h) - 1.0) * (w * w + 1.0)
    common = 1.0 + np.exp(2 * h) - 2.0 * np.exp(h) * np.cos(w * h)
    out = 2.0 * common / den * np.sin(w * h * np.arange(n + 1))
    out[0] = (w * (np.exp(2 * h) - 1.0) - 2.0 * np.exp(h) * np.sin(w * h)) / den
    out[n] = (
        -2.0 * np.exp(h) * np.sin(w - w * h)
        + (1.0 + np.exp(2 * h)) * np.sin(w)
        - w * np.cos(w) * (np.exp(2 * h) - 1.0)
    ) / den
    return out


def trapezoid_norm_squared(n: int) -> float:
    """Squared error norm of the ``omega = 0`` rule: ``1 - 2 (e^h - 1) / (h (e^h + 1))``."""
    h = 1.0 / n
    return 1.0 - 2.0 * np.tanh(h / 2.0) / h


def rhs_f_quadrature(omega: float, n: int) -> np.ndarray:
    """``int_0^1 exp(2 pi i omega x) G(x - h beta) dx`` by node-aligned Gauss-Legendre."""
    h = 1.0 / n
    shifts = h * np.arange(n + 1)
    w = 2.0 * np.pi * omega

    def integrand(x):
        return np.exp(1j * w * x)[None, :] * kernel_G(x[None, :] - shifts[:, None])

    return gauss_refine(integrand, np.linspace(0.0, 1.0, n + 1), tol=1e-13)


def feasible_perturbations(n: int, count: int, scale: float, seed: int = 0) -> np.ndarray:
    """Random complex perturbations orthogonal to ``exp(-h beta)`` and ``exp(h beta)``."""
    rng = np.random.default_rng(seed)
    x = np.arange(n + 1) / n
    basis, _ = np.linalg.qr(np.column_stack([np.exp(-x), np.exp(x)]))
    out = []
    for _ in range(count):
        z = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
        z -= basis @ (basis.T @ z)
        out.append(scale * z / np.max(np.abs(z)))
    return np.array(out)


def certify_case(omega: float, n: int, tol: dict, brute_force: bool = False) -> list[Check]:
    """All per-``(omega, N)`` checks; ``brute_force`` adds the numerical-norm ones."""
    case = {"omega": float(omega), "n_intervals": int(n)}
    checks = []

    def add(name, value, key):
        checks.append(Check(name, float(value), tol[key], dict(case)))

    coeffs = optimal_coefficients_unit(omega, n)
    c = coeffs.values
    solution = oracle_coefficients(omega, n)
    add("closed_vs_oracle", np.max(np.abs(c - solution.coefficients)), "coefficients")
    add("lagrange_d", abs(solution.lagrange_d), "lagrange_d")
    add("solve_residual", solution.relative_residual, "residual")

    minus, plus = check_exactness(coeffs)
    add("exactness_exp_neg", minus, "exactness")
    add("exactness_exp_pos", plus, "exactness")

    add("cosine_decomposition", np.max(np.abs(cosine_coefficients(omega, n) - explicit_cosine(omega, n))), "decomposition")
    add("sine_decomposition", np.max(np.abs(sine_coefficients(omega, n) - explicit_sine(omega, n))), "decomposition")
    add("conjugate_symmetry", np.max(np.abs(optimal_coefficients_unit(-omega, n).values - np.conj(c))), "symmetry")
    if n >= 3:
        phase = np.exp(2j * np.pi * omega * np.arange(n - 1) / n)
        add("interior_modulation", np.max(np.abs(c[1:n] - c[1] * phase)) / abs(c[1]), "modulation")
    if omega == 0.0:
        add("trapezoid_limit", np.max(np.abs(c - trapezoid_coefficients(n))), "trapezoid")
        add("norm_trapezoid", abs(norm_squared_closed(0.0, n) - trapezoid_norm_squared(n)), "trapezoid")

    nsq = norm_squared_closed(omega, n)
    checks.append(Check("norm_nonnegative", max(0.0, -nsq), 0.0, dict(case)))
    checks.append(Check("norm_even", abs(nsq - norm_squared_closed(-omega, n)), 0.0, dict(case)))

    add("rhs_f_consistency", np.max(np.abs(rhs_f(omega, 1.0 / n, np.arange(n + 1)) - rhs_f_quadrature(omega, n))), "rhs_f")

    for a, b in INTERVALS:
        length = b - a
        got = optimal_coefficients(omega, UniformGrid(a, b, n)).values
        ref = length * np.exp(2j * np.pi * omega * a) * oracle_coefficients(omega * length, n).coefficients
        checks.append(
            Check("interval_vs_oracle", np.max(np.abs(got - ref)) / length, tol["interval"], {**case, "a": a, "b": b})
        )

    if brute_force:
        brute = norm_squared_bruteforce(coeffs)
        add("norm_bruteforce", abs(brute - nsq), "bruteforce")
        add("extremal_function", extremal_function_check(coeffs), "extremal")
        if n >= 3:
            worst = 0.0
            for delta in feasible_perturbations(n, 4, 1e-3):
                moved = type(coeffs)(c + delta, coeffs.omega, coeffs.grid)
                worst = max(worst, brute - norm_squared_bruteforce(moved))
            add("constrained_minimality", worst, "minimality")
    return checks


def certify_global(tol: dict, convergence_omegas=(1.0,)) -> list[Check]:
    """Checks that do not depend on a particular ``(omega, N)`` case."""
    checks = []
    for h in (1.0, 0.1, 0.01):
        report = verify_discrete_identities(h, (-50, 50))
        for name, value in report.relative.items():
            checks.append(Check(f"identity {name}", value, tol["identities"], {"h": h}))
        beta = np.arange(-5, 6)
        d = discrete_operator_D(h, beta)
        asym = np.max(np.abs(d - d[::-1])) + np.max(np.abs(d[np.abs(beta) >= 2]))
        checks.append(Check("D_symmetry_support", asym, 0.0, {"h": h}))

    for n in CERTIFICATION_NODES:
        for eps in (1e-8, -1e-8):
            dev = np.max(np.abs(optimal_coefficients_unit(eps, n).values - trapezoid_coefficients(n)))
            checks.append(Check("small_omega_continuity", dev, tol["small_omega"], {"omega": eps, "n_intervals": n}))

    for omega in convergence_omegas:
        slope = convergence_slope(omega, CONVERGENCE_NODES)
        checks.append(Check("convergence_order", abs(slope - 1.0), tol["slope"], {"omega": omega, "slope": slope}))
    return checks


def convergence_slope(omega: float, nodes) -> float:
    """Least-squares slope of ``log ||l||`` against ``log h``."""
    nodes = np.asarray(nodes, dtype=float)
    norms = [np.sqrt(norm_squared_closed(omega, int(n))) for n in nodes]
    return float(np.polyfit(np.log(1.0 / nodes), np.log(norms), 1)[0])


def run_certification(cases, tol: dict, brute_force: bool = False) -> dict:
    checks = certify_global(tol)
    for omega, n in cases:
        log.info("certifying omega=%g N=%d", omega, n)
        checks.extend(certify_case(omega, n, tol, brute_force))
    violations = [chk.to_dict() for chk in checks if not chk.passed]
    return {
        "passed": not violations,
        "n_checks": len(checks),
        "n_cases": len(cases),
        "violations": violations,
        "worst": _worst_by_name(checks),
    }


def _worst_by_name(checks) -> dict:
    worst = {}
    for chk in checks:
        if chk.name not in worst or chk.value > worst[chk.name]["value"]:
            worst[chk.name] = {"value": chk.value, "tolerance": chk.tolerance, "case": chk.case}
    return worst
