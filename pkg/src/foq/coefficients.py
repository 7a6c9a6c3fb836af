"""Closed-form optimal coefficients for Fourier integrals in W2^(1,0).

The quadrature

    int_a^b exp(2 pi i omega x) phi(x) dx  ~  sum_beta C_beta phi(a + h beta)

is optimal in the sense of Sard: for fixed equally spaced nodes the weights
minimise the dual norm of the error functional in the space of absolutely
continuous functions with inner product ``int (phi' + phi)(psi' + psi)-bar``.
The weights are exact for ``exp(-x)`` and ``exp(x)`` on the unit interval.

Every formula is evaluated in a cancellation-free form::

    1 + e^{2h} - 2 e^h cos(theta)  ==  expm1(h)**2 + 4 e^h sin(theta/2)**2

with ``theta = 2 pi omega h``, and ``e^{2h} - 1`` is always ``expm1(2h)``.
Phases ``exp(2 pi i t)`` are evaluated from ``t mod 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import UniformGrid, as_intervals, as_omega

__all__ = [
    "CoefficientSet",
    "optimal_coefficients_unit",
    "optimal_coefficients",
    "cosine_coefficients",
    "sine_coefficients",
    "trapezoid_coefficients",
    "exactness_sums",
    "exactness_targets",
    "check_exactness",
]

TWO_PI = 2.0 * np.pi


def _turns(t):
    """``exp(2 pi i t)`` with the argument reduced modulo one full turn."""
    return np.exp(1j * TWO_PI * np.fmod(t, 1.0))


@dataclass(frozen=True)
class CoefficientSet:
    """``N + 1`` complex weights together with the frequency and grid they belong to.

    ``values`` is stored read-only. ``generator`` records how the weights
    were obtained (``"closed-form"`` or ``"oracle"``).
    """

    values: np.ndarray
    omega: float
    grid: UniformGrid
    generator: str = field(default="closed-form")

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.ndim != 1 or values.size != self.grid.size:
            raise ValueError(
                f"expected {self.grid.size} coefficients for N={self.grid.n_intervals}, "
                f"got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "omega", as_omega(self.omega))

    def __len__(self):
        return self.values.size

    def __getitem__(self, beta):
        return self.values[beta]

    @property
    def real(self) -> np.ndarray:
        return self.values.real.copy()

    @property
    def imag(self) -> np.ndarray:
        return self.values.imag.copy()


def _unit_values(omega: float, n: int) -> np.ndarray:
    # Weights on [0, 1] with h = 1/n.
    h = 1.0 / n
    t = omega / n                       # theta / (2 pi)
    big_omega = TWO_PI * omega
    em1 = np.expm1(h)
    e2m1 = np.expm1(2.0 * h)
    eh = np.exp(h)
    half_sin = np.sin(np.pi * np.fmod(t, 1.0))
    sin_theta = np.sin(TWO_PI * np.fmod(t, 1.0))

    p = em1 * em1 + 4.0 * eh * half_sin * half_sin
    q = big_omega * e2m1 - 2.0 * eh * sin_theta
    denom = e2m1 * (big_omega * big_omega + 1.0)

    values = np.empty(n + 1, dtype=complex)
    values[1:n] = (2.0 * p / denom) * _turns(t * np.arange(1, n))
    values[0] = complex(p, q) / denom
    values[n] = _turns(omega) * complex(p, -q) / denom
    return values


def optimal_coefficients_unit(omega, N: int) -> CoefficientSet:
    """Optimal weights on ``[0, 1]`` with ``N`` equal intervals.

    Parameters
    ----------
    omega : float or FourierWeight
        Frequency of the weight ``exp(2 pi i omega x)``. Any finite value,
        including zero, where the weights coincide with
        :func:`trapezoid_coefficients`.
    N : int
        Number of intervals, ``h = 1/N``.

    Returns
    -------
    CoefficientSet
        ``C_0, ..., C_N``.
    """
    omega = as_omega(omega)
    n = as_intervals(N)
    return CoefficientSet(_unit_values(omega, n), omega, UniformGrid.unit(n))


def optimal_coefficients(omega, grid: UniformGrid) -> CoefficientSet:
    """Optimal weights for ``int_a^b exp(2 pi i omega x) phi(x) dx``.

    Obtained from the unit-interval weights through ``x = a + (b - a) y``::

        C_beta[a, b] = (b - a) exp(2 pi i omega a) C_beta[0, 1](omega (b - a))

    The result is therefore exact for ``exp(+-(x - a)/(b - a))``, which is
    ``exp(+-x)`` only when ``b - a == 1``.
    """
    omega = as_omega(omega)
    if not isinstance(grid, UniformGrid):
        raise ValueError(f"grid must be a UniformGrid, got {type(grid).__name__}")
    length = grid.length
    values = length * _turns(omega * grid.a) * _unit_values(omega * length, grid.n_intervals)
    return CoefficientSet(values, omega, grid)


def cosine_coefficients(omega, N: int) -> np.ndarray:
    """Weights for ``int_0^1 cos(2 pi omega x) phi(x) dx`` (real parts)."""
    return optimal_coefficients_unit(omega, N).real


def sine_coefficients(omega, N: int) -> np.ndarray:
    """Weights for ``int_0^1 sin(2 pi omega x) phi(x) dx`` (imaginary parts)."""
    return optimal_coefficients_unit(omega, N).imag


def trapezoid_coefficients(N: int) -> np.ndarray:
    """Optimal weights for ``int_0^1 phi(x) dx``.

    A trapezoid-like rule with end weights ``tanh(h/2)`` and interior
    weights ``2 tanh(h/2)``; kept as a formula of its own so it can
    cross-check the ``omega = 0`` limit of the general weights.
    """
    n = as_intervals(N)
    h = 1.0 / n
    end = np.expm1(h) / (np.exp(h) + 1.0)
    values = np.full(n + 1, 2.0 * end)
    values[0] = values[-1] = end
    return values


def exactness_targets(omega) -> tuple[complex, complex]:
    """``int_0^1 exp(2 pi i omega x) exp(-x) dx`` and the same with ``exp(x)``."""
    omega = as_omega(omega)
    z = TWO_PI * omega * 1j
    phase = _turns(omega)
    minus = (phase * np.exp(-1.0) - 1.0) / (z - 1.0)
    plus = (phase * np.e - 1.0) / (z + 1.0)
    return complex(minus), complex(plus)


def exactness_sums(coeffs: CoefficientSet) -> tuple[complex, complex]:
    """``sum C_beta exp(-h beta)`` and ``sum C_beta exp(h beta)`` over a unit grid."""
    if not coeffs.grid.is_unit:
        raise ValueError("exactness sums are defined for the unit grid [0, 1]")
    x = coeffs.grid.nodes()
    return complex(np.sum(coeffs.values * np.exp(-x))), complex(np.sum(coeffs.values * np.exp(x)))


def check_exactness(coeffs: CoefficientSet) -> tuple[float, float]:
    """Relative errors of the two exactness identities for ``exp(-x)`` and ``exp(x)``."""
    got = exactness_sums(coeffs)
    want = exactness_targets(coeffs.omega)
    return tuple(abs(g - w) / abs(w) for g, w in zip(got, want))
