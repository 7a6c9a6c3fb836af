"""Applying optimal weights to sampled data, with a Cauchy-Schwarz error bound.

For ``phi`` in W2^(1,0) the quadrature error obeys

    |error| <= ||phi|| * ||l||,   ||phi||^2 = int |phi' + phi|^2 dx,

where ``||l||`` is the closed-form error-functional norm. Here ``||phi||`` is
estimated from node data, so the attached bound is itself approximate unless
exact derivatives are supplied.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .coefficients import CoefficientSet, optimal_coefficients
from .error_norm import norm_squared_closed
from .errors import SampleError
from .grid import UniformGrid, as_omega

__all__ = [
    "SampledFunction",
    "QuadratureResult",
    "TestFunction",
    "BUILTINS",
    "apply",
    "integrate_fourier",
    "seminorm_w210",
    "error_bound",
    "reference_integral",
    "sample",
]


@dataclass(frozen=True)
class SampledFunction:
    """Values ``phi(x_beta)`` (and optionally ``phi'(x_beta)``) on a uniform grid."""

    values: np.ndarray
    grid: UniformGrid
    derivative_values: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "values", self._check(self.values, "values"))
        if self.derivative_values is not None:
            object.__setattr__(
                self, "derivative_values", self._check(self.derivative_values, "derivative_values")
            )

    def _check(self, data, name):
        arr = np.array(data, dtype=complex)
        if arr.ndim != 1 or arr.size != self.grid.size:
            raise SampleError(f"{name}: expected {self.grid.size} samples, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise SampleError(f"{name}: samples must be finite")
        arr.setflags(write=False)
        return arr


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_bound: Optional[float] = None
    norm_used: Optional[float] = None


@dataclass(frozen=True)
class TestFunction:
    """A builtin integrand with its exact derivative."""

    name: str
    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]

    __test__ = False  # not a pytest class


BUILTINS = {
    fn.name: fn
    for fn in (
        TestFunction("exp_neg", lambda x: np.exp(-x), lambda x: -np.exp(-x)),
        TestFunction("exp", np.exp, np.exp),
        TestFunction("one", lambda x: np.ones_like(x), lambda x: np.zeros_like(x)),
        TestFunction("x", lambda x: np.asarray(x, dtype=float), lambda x: np.ones_like(x)),
        TestFunction("x2", lambda x: x * x, lambda x: 2.0 * x),
        TestFunction("sin_pi", lambda x: np.sin(np.pi * x), lambda x: np.pi * np.cos(np.pi * x)),
        TestFunction(
            "runge",
            lambda x: 1.0 / (1.0 + 25.0 * x * x),
            lambda x: -50.0 * x / (1.0 + 25.0 * x * x) ** 2,
        ),
    )
}


def apply(coeffs: CoefficientSet, samples: SampledFunction) -> QuadratureResult:
    """``sum_beta C_beta phi(x_beta)``."""
    if coeffs.grid != samples.grid:
        raise ValueError(f"grid mismatch: weights on {coeffs.grid}, samples on {samples.grid}")
    # pairwise summation over a fixed index order: reproducible bit for bit
    return QuadratureResult(complex(np.sum(coeffs.values * samples.values)))


def seminorm_w210(samples: SampledFunction) -> float:
    """Estimate ``(int_a^b |phi' + phi|^2 dx)^(1/2)`` from node data.

    Uses the trapezoid rule on ``|phi' + phi|^2``. Without supplied
    derivatives, ``phi'`` comes from second-order finite differences
    (central inside, one-sided at the ends), which needs ``N >= 2``.
    """
    grid = samples.grid
    phi = samples.values
    if samples.derivative_values is not None:
        dphi = samples.derivative_values
    else:
        if grid.n_intervals < 2:
            raise ValueError("finite-difference derivatives need at least 2 intervals")
        dphi = np.gradient(phi, grid.h, edge_order=2)
    density = np.abs(dphi + phi) ** 2
    return float(math.sqrt(integrate.trapezoid(density, dx=grid.h)))


def sample(sampler, grid: UniformGrid, pure: bool = False) -> np.ndarray:
    """Evaluate ``sampler`` at the grid nodes, one call per node.

    Calls are sequential unless ``pure`` is set, in which case they are
    spread over a thread pool (results keep node order).
    """
    nodes = grid.nodes()
    if pure:
        with ThreadPoolExecutor() as pool:
            values = list(pool.map(sampler, nodes))
    else:
        values = [sampler(x) for x in nodes]
    out = np.array(values, dtype=complex)
    if out.shape != nodes.shape or not np.all(np.isfinite(out)):
        raise SampleError("sampler must return one finite scalar per node")
    return out


def integrate_fourier(
    sampler,
    omega,
    grid: UniformGrid,
    with_bound: bool = False,
    derivative=None,
    pure: bool = False,
) -> QuadratureResult:
    """Approximate ``int_a^b exp(2 pi i omega x) phi(x) dx`` with the optimal weights.

    Parameters
    ----------
    sampler : callable
        ``x -> phi(x)`` for scalar ``x``.
    omega : float
    grid : UniformGrid
    with_bound : bool
        Attach ``error_bound = norm_used * ||l||``.
    derivative : callable, optional
        ``x -> phi'(x)``; improves the norm estimate behind the bound.
    pure : bool
        Declare ``sampler`` (and ``derivative``) safe to call concurrently.

    See :func:`error_bound` for how the bound is formed on ``[a, b]``.
    """
    omega = as_omega(omega)
    values = sample(sampler, grid, pure)
    result = apply(optimal_coefficients(omega, grid), SampledFunction(values, grid))
    if not with_bound:
        return result

    dvalues = None if derivative is None else sample(derivative, grid, pure)
    norm_used, bound = error_bound(SampledFunction(values, grid, dvalues), omega)
    return QuadratureResult(result.value, bound, norm_used)


def error_bound(samples: SampledFunction, omega) -> tuple[float, float]:
    """``(norm_used, norm_used * ||l||)`` for the optimal weights on ``samples.grid``.

    On ``[a, b]`` the weights come from the unit interval via ``x = a + L y``,
    ``L = b - a``, so the bound is the unit-interval one for
    ``psi(y) = phi(a + L y)`` at frequency ``omega * L``, scaled by ``L``:
    ``norm_used = L * (int_0^1 |L phi'(a + L y) + phi(a + L y)|^2 dy)^(1/2)``.
    With ``L = 1`` this is exactly :func:`seminorm_w210`.
    """
    grid = samples.grid
    length = grid.length
    dvalues = samples.derivative_values
    pulled_back = SampledFunction(
        samples.values,
        UniformGrid.unit(grid.n_intervals),
        None if dvalues is None else length * dvalues,
    )
    norm_used = length * seminorm_w210(pulled_back)
    functional = math.sqrt(max(norm_squared_closed(as_omega(omega) * length, grid.n_intervals), 0.0))
    return norm_used, norm_used * functional


def reference_integral(f, omega, a: float = 0.0, b: float = 1.0) -> complex:
    """``int_a^b exp(2 pi i omega x) f(x) dx`` by adaptive QUADPACK quadrature.

    Uses the oscillatory (QAWO) weights for ``omega != 0``. Independent of the
    optimal weights; used as the truth in tests and convergence studies.
    """
    omega = as_omega(omega)
    opts = dict(epsabs=1e-14, epsrel=1e-13, limit=500)
    fr = lambda x: float(np.real(f(x)))  # noqa: E731
    fi = lambda x: float(np.imag(f(x)))  # noqa: E731
    if omega == 0.0:
        return complex(integrate.quad(fr, a, b, **opts)[0], integrate.quad(fi, a, b, **opts)[0])
    w = 2.0 * np.pi * omega
    c = lambda g: integrate.quad(g, a, b, weight="cos", wvar=w, **opts)[0]  # noqa: E731
    s = lambda g: integrate.quad(g, a, b, weight="sin", wvar=w, **opts)[0]  # noqa: E731
    return complex(c(fr) - s(fi), s(fr) + c(fi))
