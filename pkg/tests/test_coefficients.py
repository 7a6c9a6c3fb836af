import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from foq.coefficients import (
    check_exactness,
    cosine_coefficients,
    exactness_sums,
    optimal_coefficients,
    optimal_coefficients_unit,
    sine_coefficients,
    trapezoid_coefficients,
)
from foq.grid import FourierWeight, UniformGrid
from foq.oracle import oracle_coefficients
from foq.validation import explicit_cosine, explicit_sine

# tanh(1/4), tanh(1/2) and the e^{-x} moment at omega = 1, from 30-digit mpmath
TANH_QUARTER = 0.244918662403709129277801131491
TANH_HALF = 0.462117157260009758502318483644
EXP_NEG_MOMENT_1 = 0.015616236904490825484783844383 + 0.0981197102717323819708031563726j

omegas = st.floats(-100, 100, allow_nan=False)
intervals = st.integers(1, 1000)


def test_omega_zero_two_intervals():
    c = optimal_coefficients_unit(0, 2).values
    assert_allclose(c, [TANH_QUARTER, 2 * TANH_QUARTER, TANH_QUARTER], rtol=1e-15, atol=0)


def test_trapezoid_single_interval():
    assert_allclose(trapezoid_coefficients(1), [TANH_HALF, TANH_HALF], rtol=1e-15)


@pytest.mark.parametrize("n", [1, 3, 10, 257])
def test_trapezoid_weights_integrate_exp_neg(n):
    x = np.arange(n + 1) / n
    assert np.sum(trapezoid_coefficients(n) * np.exp(-x)) == pytest.approx(1 - np.exp(-1), rel=1e-14)


def test_trapezoid_end_weight_is_half_step_to_first_order():
    n = 10**5
    h = 1 / n
    assert abs(trapezoid_coefficients(n)[0] - h / 2) < h**2


@pytest.mark.parametrize("n", [1, 2, 7, 40])
def test_general_formula_reduces_to_trapezoid(n):
    assert_allclose(optimal_coefficients_unit(0.0, n).values, trapezoid_coefficients(n), rtol=1e-14, atol=0)


@pytest.mark.parametrize("n", [1, 4, 13, 100])
def test_exp_neg_moment_at_unit_frequency(n):
    minus, _ = exactness_sums(optimal_coefficients_unit(1.0, n))
    assert minus == pytest.approx(EXP_NEG_MOMENT_1, rel=1e-13)


def test_interior_weights_share_modulus():
    c = optimal_coefficients_unit(1.0, 10).values
    mods = np.abs(c[1:10])
    assert_allclose(mods, mods[0], rtol=1e-14)
    assert_allclose(c[1:10] / mods, np.exp(2j * np.pi * 0.1 * np.arange(1, 10)), atol=1e-14)


@pytest.mark.parametrize("n", [0, -3])
def test_invalid_interval_count(n):
    with pytest.raises(ValueError):
        optimal_coefficients_unit(1.0, n)
    with pytest.raises(ValueError):
        trapezoid_coefficients(n)


def test_non_finite_frequency_rejected():
    with pytest.raises(ValueError):
        optimal_coefficients_unit(np.nan, 4)


def test_accepts_fourier_weight():
    assert_allclose(optimal_coefficients_unit(FourierWeight(2.5), 6).values, optimal_coefficients_unit(2.5, 6).values)


def test_coefficient_set_is_read_only():
    c = optimal_coefficients_unit(1.0, 4)
    with pytest.raises(ValueError):
        c.values[0] = 0


class TestDecompositions:
    @pytest.mark.parametrize("omega, n", [(0.3, 1), (2.0, 16), (-7.1, 33), (12.5, 5)])
    def test_cosine_matches_written_out_formula(self, omega, n):
        assert_allclose(cosine_coefficients(omega, n), explicit_cosine(omega, n), atol=1e-13)

    @pytest.mark.parametrize("omega, n", [(0.3, 1), (1.5, 20), (-7.1, 33), (12.5, 5)])
    def test_sine_matches_written_out_formula(self, omega, n):
        assert_allclose(sine_coefficients(omega, n), explicit_sine(omega, n), atol=1e-13)

    def test_cosine_at_zero_frequency_is_trapezoid(self):
        assert_allclose(cosine_coefficients(0, 4), trapezoid_coefficients(4), rtol=1e-14)

    def test_sine_vanishes_at_zero_frequency(self):
        assert np.all(sine_coefficients(0, 9) == 0)

    def test_cosine_against_oracle(self):
        assert_allclose(cosine_coefficients(2, 16), oracle_coefficients(2, 16).coefficients.real, atol=1e-10)

    def test_sine_against_oracle(self):
        assert_allclose(sine_coefficients(1.5, 20), oracle_coefficients(1.5, 20).coefficients.imag, atol=1e-10)

    @pytest.mark.parametrize("omega", [0.3, 2.7])
    def test_endpoint_with_plus_sign_is_rejected_by_oracle(self, omega):
        # cos(2 pi omega + 2 pi omega h) in the last weight does not solve the system
        n = 10
        h = 1 / n
        w = 2 * np.pi * omega
        den = np.expm1(2 * h) * (w * w + 1)
        plus = (-2 * np.exp(h) * np.cos(w + w * h) + (1 + np.exp(2 * h)) * np.cos(w) + w * np.sin(w) * np.expm1(2 * h)) / den
        truth = oracle_coefficients(omega, n).coefficients[n].real
        assert abs(plus - truth) > 1e-3
        assert abs(explicit_cosine(omega, n)[n] - truth) < 1e-12


@given(omegas, intervals)
def test_conjugate_symmetry(omega, n):
    assert_allclose(
        optimal_coefficients_unit(-omega, n).values,
        np.conj(optimal_coefficients_unit(omega, n).values),
        rtol=0,
        atol=1e-15,
    )


@given(omegas, st.integers(3, 1000))
def test_interior_modulation(omega, n):
    c = optimal_coefficients_unit(omega, n).values
    phase = np.exp(2j * np.pi * omega * np.arange(n - 1) / n)
    assert np.max(np.abs(c[1:n] - c[1] * phase)) <= 1e-12 * abs(c[1])


@given(omegas, intervals)
def test_exactness_on_exponentials(omega, n):
    coeffs = optimal_coefficients_unit(omega, n)
    x = coeffs.grid.nodes()
    for sign, err in zip((-1, 1), check_exactness(coeffs)):
        terms = np.abs(coeffs.values * np.exp(sign * x))
        target = abs(np.sum(coeffs.values * np.exp(sign * x)))
        # rounding in the sum scales with its condition number
        assert err <= 1e-13 + 64 * np.finfo(float).eps * np.sum(terms) / target


@pytest.mark.parametrize("omega, n", [(0.0, 1), (0.3, 17), (-2.7, 50), (10.0, 200)])
def test_exactness_moderate_frequencies(omega, n):
    assert max(check_exactness(optimal_coefficients_unit(omega, n))) <= 1e-13


@pytest.mark.parametrize("n", [1, 2, 5, 50, 1000])
def test_small_frequency_continuity(n):
    for omega in (1e-8, -1e-8):
        dev = np.max(np.abs(optimal_coefficients_unit(omega, n).values - trapezoid_coefficients(n)))
        assert dev < 1e-6


def _interval_formula(omega, a, b, n):
    # weights on [a, b] written out directly, term by term
    L = b - a
    h = L / n
    u = h / L
    w = 2 * np.pi * omega
    den = (4 * np.pi**2 * omega**2 * L**2 + 1) * (np.exp(2 * u) - 1)
    c = 2 * L * (1 + np.exp(2 * u) - 2 * np.exp(u) * np.cos(w * h)) / den * np.exp(1j * w * (h * np.arange(n + 1) + a))
    c[0] = L * np.exp(1j * w * a) * (1 + np.exp(2 * u) + 1j * w * L * (np.exp(2 * u) - 1) - 2 * np.exp(u) * np.exp(1j * w * h)) / den
    c[n] = L * np.exp(1j * w * b) * (1 + np.exp(2 * u) - 1j * w * L * (np.exp(2 * u) - 1) - 2 * np.exp(u - 1j * w * h)) / den
    return c


class TestInterval:
    @pytest.mark.parametrize("n", [1, 6, 31])
    def test_unit_interval_is_identity(self, n):
        for omega in (0.0, 0.7, -3.0):
            assert_allclose(
                optimal_coefficients(omega, UniformGrid(0, 1, n)).values,
                optimal_coefficients_unit(omega, n).values,
                rtol=0,
                atol=0,
            )

    @pytest.mark.parametrize("a, b", [(-1.0, 1.0), (2.0, 5.0), (0.25, 0.5)])
    @pytest.mark.parametrize("omega", [0.0, 0.5, -1.3, 4.0])
    @pytest.mark.parametrize("n", [8, 16])
    def test_matches_written_out_formula(self, a, b, omega, n):
        got = optimal_coefficients(omega, UniformGrid(a, b, n)).values
        want = _interval_formula(omega, a, b, n)
        assert np.max(np.abs(got - want)) <= 1e-12 * np.max(np.abs(want))

    @pytest.mark.parametrize("n", [3, 8, 40])
    def test_zero_frequency_closed_form(self, n):
        a, b = -2.0, 1.5
        L = b - a
        end = L * np.tanh(1 / (2 * n))
        want = np.full(n + 1, 2 * end)
        want[0] = want[-1] = end
        assert_allclose(optimal_coefficients(0.0, UniformGrid(a, b, n)).values, want, rtol=1e-14)

    def test_against_oracle_by_change_of_variables(self):
        omega, a, b, n = 0.5, -1.0, 1.0, 8
        L = b - a
        ref = L * np.exp(2j * np.pi * omega * a) * oracle_coefficients(omega * L, n).coefficients
        assert_allclose(optimal_coefficients(omega, UniformGrid(a, b, n)).values, ref, rtol=0, atol=1e-10)

    @given(st.floats(-20, 20), st.floats(-5, 5), st.floats(0.1, 5), st.integers(1, 300))
    def test_scaling_identity(self, omega, a, length, n):
        b = a + length
        got = optimal_coefficients(omega, UniformGrid(a, b, n)).values
        L = UniformGrid(a, b, n).length
        want = L * np.exp(2j * np.pi * omega * a) * optimal_coefficients_unit(omega * L, n).values
        assert np.max(np.abs(got - want)) <= 1e-12 * np.max(np.abs(want))

    @pytest.mark.parametrize("a, b", [(-1.0, 1.0), (2.0, 5.0)])
    def test_exact_for_pulled_back_exponentials(self, a, b):
        from foq.quadrature import reference_integral

        omega, n = 0.5, 12
        grid = UniformGrid(a, b, n)
        c = optimal_coefficients(omega, grid).values
        x = grid.nodes()
        for sign in (-1, 1):
            f = lambda t: np.exp(sign * (t - a) / (b - a))  # noqa: E731
            truth = reference_integral(f, omega, a, b)
            assert abs(np.sum(c * f(x)) - truth) <= 1e-11 * abs(truth)
