"""Frequency and grid value types shared by every module."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FourierWeight:
    """Real frequency ``omega`` of the weight ``exp(2*pi*i*omega*x)``."""

    omega: float

    def __post_init__(self):
        object.__setattr__(self, "omega", as_omega(self.omega))

    def __float__(self):
        return self.omega


def as_omega(omega) -> float:
    """Coerce ``omega`` (float or :class:`FourierWeight`) to a finite float."""
    try:
        value = float(omega)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"omega must be a real number, got {omega!r}") from exc
    if not math.isfinite(value):
        raise ValueError(f"omega must be finite, got {value!r}")
    return value


def as_intervals(n) -> int:
    """Validate a number of grid intervals ``N >= 1``."""
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"number of intervals must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValueError(f"number of intervals must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class UniformGrid:
    """Equally spaced nodes ``x_beta = a + h*beta``, ``beta = 0..N``, ``h = (b - a)/N``."""

    a: float
    b: float
    n_intervals: int

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValueError(f"interval endpoints must be finite, got ({a}, {b})")
        if not b > a:
            raise ValueError(f"need b > a, got a={a}, b={b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "n_intervals", as_intervals(self.n_intervals))

    @classmethod
    def unit(cls, n_intervals: int) -> "UniformGrid":
        return cls(0.0, 1.0, n_intervals)

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n_intervals

    @property
    def size(self) -> int:
        """Number of nodes, ``N + 1``."""
        return self.n_intervals + 1

    @property
    def is_unit(self) -> bool:
        return self.a == 0.0 and self.b == 1.0

    def node(self, beta: int) -> float:
        if not 0 <= beta <= self.n_intervals:
            raise ValueError(f"node index {beta} outside 0..{self.n_intervals}")
        if beta == self.n_intervals:
            return self.b
        return self.a + self.h * beta

    def nodes(self) -> np.ndarray:
        x = self.a + self.h * np.arange(self.size, dtype=float)
        x[-1] = self.b
        return x
