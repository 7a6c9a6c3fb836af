"""Norm of the quadrature error functional.

Three routes are provided: the closed form for the optimal weights, its
two-term small-``h`` expansion, and a brute-force evaluation of the quadratic
form in the weights (valid for *any* weights on the unit grid), which serves
as the independent check of the closed form.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._integrate import simpson_refine
from .coefficients import CoefficientSet, optimal_coefficients_unit
from .grid import UniformGrid, as_intervals, as_omega

__all__ = [
    "ErrorNormReport",
    "norm_squared_closed",
    "norm_squared_asymptotic",
    "norm_squared_bruteforce",
    "error_norm_report",
]

BRUTE_FORCE_TOL = 1e-10


def norm_squared_closed(omega, N: int) -> float:
    """Squared norm of the error functional of the optimal formula on ``[0, 1]``.

    Even in ``omega``; behaves like ``h**2 / 12`` as ``h = 1/N`` shrinks.
    """
    omega = as_omega(omega)
    n = as_intervals(N)
    h = 1.0 / n
    w = (2.0 * np.pi * omega) ** 2 + 1.0
    half_sin = np.sin(np.pi * np.fmod(abs(omega) / n, 1.0))
    p = np.expm1(h) ** 2 + 4.0 * np.exp(h) * half_sin * half_sin
    return float((w - 2.0 * p / (h * np.expm1(2.0 * h))) / (w * w))


def norm_squared_asymptotic(omega, h: float) -> float:
    """``h**2/12 - (4 pi^2 omega^2 + 3) h**4 / 360``."""
    omega = as_omega(omega)
    h = float(h)
    if not h >= 0.0:
        raise ValueError(f"step h must be non-negative, got {h}")
    return h * h / 12.0 - (4.0 * np.pi**2 * omega**2 + 3.0) * h**4 / 360.0


def _kernel(x):
    return 0.5 * np.sinh(np.abs(x))


@functools.lru_cache(maxsize=64)
def _kernel_moments(omega: float, n: int):
    """Integrals the quadratic form needs, by node-aligned Simpson.

    Returns ``I`` with ``I[beta] = int_0^1 exp(2 pi i omega x) G(x - h beta) dx``
    (real part: cosine moment, imaginary part: sine moment) and the double
    integral reduced to ``int_0^1 (1 - t) cos(2 pi omega t) sinh(t) dt``.
    """
    h = 1.0 / n
    shifts = h * np.arange(n + 1)
    breaks = np.linspace(0.0, 1.0, n + 1)
    two_pi_w = 2.0 * np.pi * omega

    def single(x):
        return np.exp(1j * two_pi_w * x)[None, :] * _kernel(x[None, :] - shifts[:, None])

    def double(x):
        return ((1.0 - x) * np.cos(two_pi_w * x) * np.sinh(x))[None, :]

    moments = simpson_refine(single, breaks, BRUTE_FORCE_TOL)
    diag = float(simpson_refine(double, breaks, BRUTE_FORCE_TOL)[0])
    moments.setflags(write=False)
    return moments, diag


def norm_squared_bruteforce(coeffs: CoefficientSet) -> float:
    """Squared error-functional norm of arbitrary weights on the unit grid.

    Evaluates

        -[ sum_{b,g} Re(C_b conj C_g) G(h b - h g)
           - 2 sum_b Re(C_b conj I_b)
           + int_0^1 int_0^1 cos(2 pi omega (x - y)) G(x - y) dx dy ]

    with the integrals computed numerically. For weights that are not exact
    on ``exp(-x)`` the functional is unbounded and this quantity is not a norm.

    Raises
    ------
    ConvergenceError
        If an integral does not settle within the refinement budget.
    """
    if not coeffs.grid.is_unit:
        raise ValueError("brute-force norm is defined for weights on the unit grid [0, 1]")
    n = coeffs.grid.n_intervals
    moments, diag = _kernel_moments(coeffs.omega, n)
    c = coeffs.values
    x = coeffs.grid.nodes()
    gram = _kernel(x[:, None] - x[None, :])
    quadratic = float(np.real(np.conj(c) @ gram @ c))
    linear = float(np.real(np.sum(c * np.conj(moments))))
    return -(quadratic - 2.0 * linear + diag)


@dataclass(frozen=True)
class ErrorNormReport:
    norm_squared: float
    asymptotic_estimate: float
    omega: float
    grid: UniformGrid
    brute_force_value: Optional[float] = None

    @property
    def norm(self) -> float:
        return float(np.sqrt(max(self.norm_squared, 0.0)))


def error_norm_report(omega, N: int, brute_force: bool = False) -> ErrorNormReport:
    """Collect the closed, asymptotic and (optionally) brute-force norms."""
    omega = as_omega(omega)
    n = as_intervals(N)
    brute = None
    if brute_force:
        brute = norm_squared_bruteforce(optimal_coefficients_unit(omega, n))
    return ErrorNormReport(
        norm_squared=norm_squared_closed(omega, n),
        asymptotic_estimate=norm_squared_asymptotic(omega, 1.0 / n),
        omega=omega,
        grid=UniformGrid.unit(n),
        brute_force_value=brute,
    )
