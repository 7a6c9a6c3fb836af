"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import json
import time

import numpy as np
import pytest

from foq import cli
from foq.coefficients import check_exactness, optimal_coefficients, optimal_coefficients_unit
from foq.error_norm import norm_squared_asymptotic, norm_squared_bruteforce, norm_squared_closed
from foq.grid import UniformGrid
from foq.io import coefficients_from_json, coefficients_to_json
from foq.oracle import extremal_function_check, oracle_coefficients, verify_discrete_identities
from foq.quadrature import BUILTINS, integrate_fourier, reference_integral
from foq.validation import convergence_slope

EPS = np.finfo(float).eps


def verdict(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_c01_closed_form_matches_oracle(capsys):
    omegas = (0.0, 0.3, -0.3, 1.0, -1.0, 2.7, -2.7, 10.0, -10.0, 50.0, -50.0)
    nodes = (1, 2, 5, 10, 50, 200)
    start = time.perf_counter()
    worst_c = worst_d = 0.0
    for omega in omegas:
        for n in nodes:
            sol = oracle_coefficients(omega, n)
            worst_c = max(worst_c, np.max(np.abs(sol.coefficients - optimal_coefficients_unit(omega, n).values)))
            worst_d = max(worst_d, abs(sol.lagrange_d))
    elapsed = time.perf_counter() - start
    ok = worst_c <= 1e-10 and worst_d <= 1e-10 and elapsed < 30
    verdict(capsys, 1, ok, f"max|C-oracle|={worst_c:.2e} max|d|={worst_d:.2e} time={elapsed:.2f}s")


def test_c02_norm_matches_bruteforce(capsys):
    start = time.perf_counter()
    worst = 0.0
    for omega in (0.0, 0.3, 1.0, 2.7, 10.0):
        for n in (2, 5, 10, 50):
            brute = norm_squared_bruteforce(optimal_coefficients_unit(omega, n))
            worst = max(worst, abs(brute - norm_squared_closed(omega, n)))
    elapsed = time.perf_counter() - start
    verdict(capsys, 2, worst <= 1e-8 and elapsed < 60, f"max|closed-brute|={worst:.2e} time={elapsed:.2f}s")


def test_c03_asymptotics(capsys):
    worst = max(abs(norm_squared_closed(1.0, n) - norm_squared_asymptotic(1.0, 1 / n)) for n in (100, 150, 200, 400, 1000, 10**4, 10**5))
    at10 = norm_squared_closed(1.0, 10)
    gap10 = abs(at10 - norm_squared_asymptotic(1.0, 0.1))
    ok = worst <= 5e-12 and gap10 < 1e-6 and abs(at10 - 8.216e-4) < 5e-8
    verdict(capsys, 3, ok, f"max gap N>=100: {worst:.2e}; N=10: {at10:.4e}, gap {gap10:.2e}")


def test_c04_convergence_order(capsys):
    nodes = (10, 20, 40, 80, 160)
    slopes = {omega: convergence_slope(omega, nodes) for omega in (1.0, 5.0)}
    ok = all(0.95 <= s <= 1.05 for s in slopes.values())
    verdict(capsys, 4, ok, "slopes " + ", ".join(f"omega={w:g}: {s:.4f}" for w, s in slopes.items()) + " (band [0.95, 1.05])")


def test_c05_exactness_random(capsys):
    rng = np.random.default_rng(20261019)
    worst = 0.0
    for _ in range(20):
        omega = rng.uniform(-50, 50)
        n = int(rng.integers(1, 501))
        worst = max(worst, *check_exactness(optimal_coefficients_unit(omega, n)))
    verdict(capsys, 5, worst <= 1e-11, f"max relative error on exp(-x), exp(x) over 20 cases: {worst:.2e}")


def test_c06_discrete_operator(capsys):
    reports = [verify_discrete_identities(h, (-50, 50)) for h in (1.0, 0.1, 0.01)]
    worst = max(r.max_relative for r in reports)
    verdict(capsys, 6, worst <= 1e-12, f"max relative identity violation: {worst:.2e}")


def test_c07_extremal_function(capsys):
    gaps = {(w, n): extremal_function_check(optimal_coefficients_unit(w, n)) for w, n in ((0.0, 4), (1.0, 10), (2.7, 20))}
    worst = max(gaps.values())
    verdict(capsys, 7, worst <= 1e-6, f"max relative gap (l, psi) vs norm: {worst:.2e}")


def test_c08_error_bound(capsys):
    worst_ratio = 0.0
    failures = []
    for name, fn in BUILTINS.items():
        for omega in (1.0, 3.0):
            truth = reference_integral(fn.f, omega)
            for n in (10, 40):
                grid = UniformGrid.unit(n)
                res = integrate_fourier(fn.f, omega, grid, with_bound=True, derivative=fn.df)
                err = abs(res.value - truth)
                coeffs = optimal_coefficients_unit(omega, n).values
                # rounding allowance for bounds that are exactly zero
                floor = 16 * EPS * (np.sum(np.abs(coeffs * fn.f(grid.nodes()))) + abs(truth))
                if err > 1.05 * res.error_bound + floor:
                    failures.append((name, omega, n, err, res.error_bound))
                if res.error_bound > 0:
                    worst_ratio = max(worst_ratio, err / res.error_bound)
    verdict(capsys, 8, not failures, f"max err/bound={worst_ratio:.3f}; violations={failures}")


def test_c09_interval_transport(capsys):
    omega, n = 0.5, 8
    worst_map = 0.0
    worst_exp = 0.0
    for a, b in ((-1.0, 1.0), (2.0, 5.0)):
        length = b - a
        got = optimal_coefficients(omega, UniformGrid(a, b, n)).values
        want = length * np.exp(2j * np.pi * omega * a) * optimal_coefficients_unit(omega * length, n).values
        worst_map = max(worst_map, np.max(np.abs(got - want)) / np.max(np.abs(want)))
        truth = reference_integral(lambda x: np.exp(-x), omega, a, b)
        value = np.sum(got * np.exp(-UniformGrid(a, b, n).nodes()))
        worst_exp = max(worst_exp, abs(value - truth) / abs(truth))
    ok = worst_map <= 1e-12 and worst_exp <= 1e-11
    verdict(capsys, 9, ok, f"transport rel={worst_map:.2e}; exp(-x) on [a,b] rel={worst_exp:.2e} (needs 1e-11)")


def test_c10_cli_contract(capsys):
    code = cli.main(["validate"])
    doc = json.loads(capsys.readouterr().out)
    coeffs = optimal_coefficients(2.7, UniformGrid(-1.0, 1.0, 50))
    text = coefficients_to_json(coeffs)
    back = coefficients_from_json(text)
    identical = back.values.tobytes() == coeffs.values.tobytes() and coefficients_to_json(back) == text
    ok = code == 0 and doc["passed"] and identical
    verdict(capsys, 10, ok, f"validate exit={code} checks={doc['n_checks']} cases={doc['n_cases']}; JSON round-trip identical={identical}")
