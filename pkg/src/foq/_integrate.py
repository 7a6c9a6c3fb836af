"""Composite quadrature on user-supplied panel breaks.

Integrands here are smooth inside each panel but may have a derivative kink
at a break, so every rule keeps the breaks as panel endpoints.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError

MAX_LEVELS = 20
MAX_POINTS = 1 << 24


def _as_breaks(breaks) -> np.ndarray:
    breaks = np.asarray(breaks, dtype=float)
    if breaks.ndim != 1 or breaks.size < 2 or np.any(np.diff(breaks) <= 0):
        raise ValueError("panel breaks must be a strictly increasing 1-d array")
    return breaks


def simpson_rule(breaks, level: int):
    """Composite Simpson nodes/weights, ``2**level`` subintervals per panel (level >= 1)."""
    breaks = _as_breaks(breaks)
    m = 1 << level
    left, width = breaks[:-1], np.diff(breaks)
    frac = np.arange(m + 1) / m
    x = (left[:, None] + width[:, None] * frac[None, :]).ravel()
    pattern = np.ones(m + 1)
    pattern[1:-1:2] = 4.0
    pattern[2:-1:2] = 2.0
    w = ((width / (3.0 * m))[:, None] * pattern[None, :]).ravel()
    return x, w


def gauss_rule(breaks, subdivisions: int = 1, order: int = 16):
    """Gauss-Legendre nodes/weights with each panel split into ``subdivisions`` pieces."""
    breaks = _as_breaks(breaks)
    fine = np.concatenate(
        [np.linspace(p, q, subdivisions + 1)[:-1] for p, q in zip(breaks[:-1], breaks[1:])]
        + [breaks[-1:]]
    )
    t, wt = np.polynomial.legendre.leggauss(order)
    left, width = fine[:-1], np.diff(fine)
    x = (left[:, None] + 0.5 * width[:, None] * (t + 1.0)[None, :]).ravel()
    w = (0.5 * width[:, None] * wt[None, :]).ravel()
    return x, w


def _refine(rule, func, breaks, tol, start, max_levels, what):
    previous = None
    change = np.inf
    for level in range(start, start + max_levels):
        x, w = rule(breaks, level)
        if x.size > MAX_POINTS:
            break
        estimate = np.asarray(func(x)) @ w
        if previous is not None:
            change = float(np.max(np.abs(estimate - previous)))
            if change < tol:
                return estimate
        previous = estimate
    raise ConvergenceError(
        f"{what} did not reach tolerance {tol:g} (last change {change:.3e})",
        levels=level - start + 1,
        last_change=change,
        estimate=previous,
    )


def simpson_refine(func, breaks, tol: float = 1e-10, max_levels: int = MAX_LEVELS):
    """Integrate ``func`` with dyadically refined Simpson until successive values agree.

    ``func`` maps a 1-d array of abscissae to an array whose last axis runs
    over them; every leading component is integrated and the stopping rule
    uses the largest change among them.
    """
    return _refine(simpson_rule, func, breaks, tol, 1, max_levels, "Simpson refinement")


def gauss_refine(func, breaks, tol: float = 1e-13, max_levels: int = 12, order: int = 16):
    """Like :func:`simpson_refine` but with Gauss-Legendre panels (doubling subdivisions)."""
    rule = lambda b, level: gauss_rule(b, 1 << level, order)  # noqa: E731
    return _refine(rule, func, breaks, tol, 0, max_levels, "Gauss-Legendre refinement")
