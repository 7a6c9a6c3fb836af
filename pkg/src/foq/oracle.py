"""Independent certification of the closed-form weights.

Nothing here imports :mod:`foq.coefficients`. The optimal weights are
recovered by assembling and solving the bordered ``(N+2) x (N+2)`` Lagrange
system

    sum_g C_g G(h b - h g) + d exp(-h b) = int_0^1 exp(2 pi i omega x) G(x - h b) dx
    sum_g C_g exp(-h g)                 = int_0^1 exp(2 pi i omega x) exp(-x) dx

with ``G(x) = sign(x) sinh(x) / 2``. The three-point discrete operator that
inverts ``G`` on the grid and a numerical evaluation of the Riesz
representer of the error functional complete the toolbox.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._integrate import gauss_refine, gauss_rule
from .error_norm import norm_squared_closed
from .errors import ConvergenceError, SingularSystemError
from .grid import UniformGrid, as_intervals, as_omega

__all__ = [
    "kernel_G",
    "rhs_f",
    "rhs_g0",
    "OptimalitySystem",
    "OracleSolution",
    "build_system",
    "solve_system",
    "oracle_coefficients",
    "discrete_operator_D",
    "IdentityReport",
    "verify_discrete_identities",
    "extremal_function_check",
]


def kernel_G(x):
    """``sign(x) * sinh(x) / 2``; even, with ``G(0) = 0``."""
    x = np.asarray(x, dtype=float)
    out = 0.5 * np.sinh(np.abs(x))
    return float(out) if out.ndim == 0 else out


def rhs_f(omega, h: float, beta):
    """``int_0^1 exp(2 pi i omega x) G(x - h beta) dx`` in closed form.

    ``beta`` may be an integer or an integer array; every node ``h*beta``
    must lie in ``[0, 1]``.
    """
    omega = as_omega(omega)
    h = float(h)
    if not h > 0.0:
        raise ValueError(f"step h must be positive, got {h}")
    beta_arr = np.asarray(beta)
    if not np.issubdtype(beta_arr.dtype, np.integer):
        raise ValueError("beta must be integer-valued")
    x = h * beta_arr
    if np.any(beta_arr < 0) or np.any(x > 1.0 + 1e-12):
        raise ValueError("node h*beta must lie in [0, 1]")
    z = 2j * np.pi * omega
    e_iw = np.exp(z)
    out = (
        np.exp(-x) / 4.0 * (e_iw * np.e + 1.0) / (z + 1.0)
        - np.exp(x) / 4.0 * (e_iw / np.e + 1.0) / (z - 1.0)
        + np.exp(z * x) / ((z + 1.0) * (z - 1.0))
    )
    return complex(out) if out.ndim == 0 else out


def rhs_g0(omega) -> complex:
    """``int_0^1 exp(2 pi i omega x) exp(-x) dx``."""
    z = 2j * np.pi * as_omega(omega)
    return complex((np.exp(z - 1.0) - 1.0) / (z - 1.0))


@dataclass(frozen=True)
class OptimalitySystem:
    """Bordered system; unknowns ordered ``(C_0, ..., C_N, d)``."""

    matrix: np.ndarray
    rhs: np.ndarray
    omega: float
    n_intervals: int


@dataclass(frozen=True)
class OracleSolution:
    coefficients: np.ndarray
    lagrange_d: complex
    residual_norm: float
    omega: float
    grid: UniformGrid
    matrix_norm: float
    solution_norm: float

    @property
    def relative_residual(self) -> float:
        return self.residual_norm / (self.matrix_norm * self.solution_norm)


def build_system(omega, N: int) -> OptimalitySystem:
    omega = as_omega(omega)
    n = as_intervals(N)
    h = 1.0 / n
    beta = np.arange(n + 1)
    x = h * beta
    decay = np.exp(-x)

    matrix = np.zeros((n + 2, n + 2))
    matrix[: n + 1, : n + 1] = kernel_G(x[:, None] - x[None, :])
    matrix[: n + 1, n + 1] = decay
    matrix[n + 1, : n + 1] = decay

    rhs = np.empty(n + 2, dtype=complex)
    rhs[: n + 1] = rhs_f(omega, h, beta)
    rhs[n + 1] = rhs_g0(omega)
    return OptimalitySystem(matrix, rhs, omega, n)


def solve_system(system: OptimalitySystem) -> OracleSolution:
    """Dense LU solve with partial pivoting (LAPACK ``gesv``).

    Raises
    ------
    SingularSystemError
        If LAPACK reports a singular matrix or the solution is not finite.
        The system is known to be uniquely solvable, so this signals a bug.
    """
    a = system.matrix
    try:
        sol = np.linalg.solve(a, system.rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"optimality system singular: {exc}") from exc
    if not np.all(np.isfinite(sol)):
        raise SingularSystemError("optimality system solve produced non-finite values")
    n = system.n_intervals
    residual = float(np.linalg.norm(a @ sol - system.rhs))
    coefficients = sol[: n + 1].copy()
    coefficients.setflags(write=False)
    return OracleSolution(
        coefficients=coefficients,
        lagrange_d=complex(sol[n + 1]),
        residual_norm=residual,
        omega=system.omega,
        grid=UniformGrid.unit(n),
        matrix_norm=float(np.linalg.norm(a, 2)),
        solution_norm=float(np.linalg.norm(sol)),
    )


def oracle_coefficients(omega, N: int) -> OracleSolution:
    """Shortcut for ``solve_system(build_system(omega, N))``."""
    return solve_system(build_system(omega, N))


def discrete_operator_D(h: float, beta):
    """Three-point discrete analogue of ``d^2/dx^2 - 1`` on step ``h``.

    ``D(0) = -2 (1 + e^{2h}) / (e^{2h} - 1)``, ``D(+-h) = 2 e^h / (e^{2h} - 1)``,
    zero elsewhere.
    """
    h = float(h)
    if not h > 0.0:
        raise ValueError(f"step h must be positive, got {h}")
    beta = np.asarray(beta)
    e2m1 = np.expm1(2.0 * h)
    centre = -2.0 * (2.0 + e2m1) / e2m1
    side = 2.0 * np.exp(h) / e2m1
    out = np.where(beta == 0, centre, np.where(np.abs(beta) == 1, side, 0.0))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class IdentityReport:
    """Worst violations of ``D*G = delta``, ``D*e^{h beta} = 0``, ``D*e^{-h beta} = 0``.

    ``relative`` divides each violation by the sum of the magnitudes of the
    three convolution terms, i.e. by the scale at which cancellation happens.
    """

    h: float
    beta_min: int
    beta_max: int
    absolute: dict
    relative: dict

    @property
    def max_absolute(self) -> float:
        return max(self.absolute.values())

    @property
    def max_relative(self) -> float:
        return max(self.relative.values())


def verify_discrete_identities(h: float, beta_range: tuple[int, int]) -> IdentityReport:
    """Check the three convolution identities of the discrete operator on ``beta_range``."""
    lo, hi = (int(b) for b in beta_range)
    if hi < lo:
        raise ValueError(f"empty beta range {beta_range}")
    beta = np.arange(lo, hi + 1)
    taps = np.array([-1, 0, 1])
    d = discrete_operator_D(h, taps)
    targets = {
        "D*G=delta": (lambda b: kernel_G(h * b), (beta == 0).astype(float)),
        "D*exp(h beta)=0": (lambda b: np.exp(h * b), np.zeros(beta.size)),
        "D*exp(-h beta)=0": (lambda b: np.exp(-h * b), np.zeros(beta.size)),
    }
    absolute, relative = {}, {}
    for name, (fn, want) in targets.items():
        terms = d[None, :] * fn(beta[:, None] - taps[None, :])
        err = np.abs(terms.sum(axis=1) - want)
        absolute[name] = float(err.max())
        relative[name] = float((err / np.abs(terms).sum(axis=1)).max())
    return IdentityReport(h, lo, hi, absolute, relative)


EXTREMAL_TOL = 1e-14


def extremal_function_check(coeffs) -> float:
    """Relative gap between ``(l, psi_l)`` and the squared norm of ``l``.

    ``psi_l(x) = -int_0^1 exp(-2 pi i omega t) G(x - t) dt + sum conj(C_b) G(x - h b)``
    is the Riesz representer of the error functional ``l`` (the ``exp(-x)``
    component vanishes for the optimal weights). It is evaluated pointwise,
    with the continuous convolution split at ``t = x``, and then paired with
    ``l`` by node-aligned Gauss-Legendre quadrature.

    ``coeffs`` needs ``.values``, ``.omega`` and a unit ``.grid``.
    The reference norm is the closed form for the optimal weights, so the
    result is only meaningful for optimal ``coeffs``.
    """
    grid = coeffs.grid
    if not grid.is_unit:
        raise ValueError("extremal function check needs weights on the unit grid [0, 1]")
    omega = float(coeffs.omega)
    c = np.asarray(coeffs.values, dtype=complex)
    nodes = grid.nodes()
    two_pi_w = 2.0 * np.pi * omega
    panels = max(1, int(np.ceil(abs(omega))))

    def psi(x, level):
        s, ws = gauss_rule([0.0, 1.0], panels << level)
        left_t = x[:, None] * s[None, :]
        right_t = x[:, None] + (1.0 - x)[:, None] * s[None, :]
        g = lambda t: np.exp(-1j * two_pi_w * t) * kernel_G(x[:, None] - t)  # noqa: E731
        conv = x * (g(left_t) @ ws) + (1.0 - x) * (g(right_t) @ ws)
        return -conv + kernel_G(x[:, None] - nodes[None, :]) @ np.conj(c)

    def pairing(level):
        # x-integral on node-aligned panels, then minus the node sum
        def integrand(x):
            return (np.exp(1j * two_pi_w * x) * psi(x, level))[None, :]

        continuous = gauss_refine(integrand, nodes, tol=EXTREMAL_TOL)[0]
        return continuous - np.sum(c * psi(nodes, level))

    previous = pairing(0)
    for level in range(1, 6):
        value = pairing(level)
        if abs(value - previous) < EXTREMAL_TOL:
            break
        previous = value
    else:
        raise ConvergenceError(
            "inner convolution did not converge",
            levels=level,
            last_change=abs(value - previous),
            estimate=value,
        )

    reference = norm_squared_closed(omega, grid.n_intervals)
    return float(abs(value - reference) / reference)

