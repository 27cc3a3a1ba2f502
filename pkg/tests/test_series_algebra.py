"""Tests for truncated Laurent series arithmetic and the finite-part limit."""

import cmath
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from lerchphi.errors import ResidualPole
from lerchphi.series_algebra import (
    TruncatedLaurentSeries,
    add,
    cot_pi_laurent,
    differentiate,
    exp_series,
    finite_part_limit,
    monomial,
    mul,
    sub,
)


def series(min_degree, *coeffs):
    return TruncatedLaurentSeries(min_degree, tuple(coeffs))


class TestExpSeries:
    def test_exp_of_zero(self):
        s = exp_series(0.0, 3)
        assert s.min_degree == 0
        assert s.coeffs == (1, 0, 0, 0)

    def test_exp_of_one(self):
        s = exp_series(1.0, 2)
        assert s.coeffs == (1, 1, 0.5)

    def test_coefficients_are_powers_over_factorials(self):
        c = math.log(2)
        s = exp_series(c, 4)
        for k in range(5):
            assert abs(s.coefficient(k) - c**k / math.factorial(k)) < 1e-15

    def test_pointwise_against_exp(self):
        # oracle: evaluate the window at eps = 0.1 against exp(0.1 ln 2)
        s = exp_series(math.log(2), 12)
        assert abs(s.eval_at(0.1) - 2**0.1) < 1e-12


class TestCotPiLaurent:
    def test_pole_only(self):
        s = cot_pi_laurent(-1)
        assert s.min_degree == -1 and s.order == -1
        assert abs(s.coefficient(-1) - 1 / math.pi) < 1e-16

    def test_order_one_window(self):
        s = cot_pi_laurent(1)
        assert abs(s.coefficient(-1) - 1 / math.pi) < 1e-16
        assert s.coefficient(0) == 0
        assert abs(s.coefficient(1) - (-math.pi / 3)) < 1e-15

    def test_order_three_coefficient(self):
        s = cot_pi_laurent(3)
        assert abs(s.coefficient(3) - (-math.pi**3 / 45)) < 1e-14

    @pytest.mark.parametrize("eps,tol", [(1e-3, 1e-9), (5e-3, 1e-6)])
    def test_pointwise_against_cot(self, eps, tol):
        # oracle: cot(pi eps) = cos(pi eps)/sin(pi eps) evaluated directly
        s = cot_pi_laurent(5)
        direct = math.cos(math.pi * eps) / math.sin(math.pi * eps)
        assert abs(s.eval_at(eps) - direct) < tol

    def test_even_coefficients_vanish_exactly(self):
        s = cot_pi_laurent(10)
        for d in range(0, 11, 2):
            assert s.coefficient(d) == 0


class TestMul:
    def test_one_plus_eps_times_one_minus_eps(self):
        p = mul(series(0, 1, 1), series(0, 1, -1))
        assert p.min_degree == 0
        # window truncates at order 1: only 1 + 0 eps is reliable
        assert p.coefficient(0) == 1
        assert p.coefficient(1) == 0

    def test_degree_bookkeeping_with_shift(self):
        # cot window times the exact monomial eps shifts every degree up one
        p = mul(cot_pi_laurent(1), monomial(1.0, 1, 4))
        assert p.min_degree == 0
        assert abs(p.coefficient(0) - 1 / math.pi) < 1e-16
        assert p.coefficient(1) == 0
        assert abs(p.coefficient(2) - (-math.pi / 3)) < 1e-15

    def test_full_product_window(self):
        p = mul(series(0, 1, 1, 0, 0, 0), series(0, 1, -1, 0, 0, 0))
        assert p.coefficient(2) == -1
        assert p.order == 4

    def test_pointwise_product_oracle(self):
        rng = random.Random(42)
        for _ in range(5):
            a = series(0, *(complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                            for _ in range(5)))
            b = series(0, *(complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                            for _ in range(5)))
            p = mul(a, b)
            eps = 0.05
            # truncated degrees contribute at most ~eps^5 ~ 3e-7; compare the
            # retained window against the product of the full windows minus
            # the dropped cross terms by using a tighter eps bound
            direct = a.eval_at(eps) * b.eval_at(eps)
            dropped = sum(
                a.coefficient(i) * b.coefficient(j) * eps ** (i + j)
                for i in range(5)
                for j in range(5)
                if i + j > p.order
            )
            assert abs(p.eval_at(eps) - (direct - dropped)) < 1e-12


class TestDifferentiate:
    def test_derivative_of_eps_squared(self):
        d = differentiate(series(2, 1))
        assert d.min_degree == 1
        assert d.coefficient(1) == 2

    def test_derivative_of_inverse_eps(self):
        d = differentiate(series(-1, 1))
        assert d.min_degree == -2
        assert d.coefficient(-2) == -1

    def test_constant_term_vanishes(self):
        d = differentiate(series(0, 7, 3))
        assert d.coefficient(-1) == 0
        assert d.coefficient(0) == 3

    def test_second_derivative_of_cot_window(self):
        # oracle: symmetric second difference of pointwise cot(pi eps);
        # truncation error of the difference is (h/eps)^2 ~ 1e-7
        s = differentiate(cot_pi_laurent(5), 2)
        eps, h = 1e-2, 3e-6

        def cot(x):
            return math.cos(math.pi * x) / math.sin(math.pi * x)

        fd = (cot(eps + h) - 2 * cot(eps) + cot(eps - h)) / h**2
        assert abs(s.eval_at(eps) - fd) / abs(fd) < 1e-6


class TestFinitePart:
    def test_plain_constant(self):
        assert finite_part_limit(series(-1, 0, 3)) == 3

    def test_residual_pole_raises(self):
        with pytest.raises(ResidualPole):
            finite_part_limit(series(-1, 0.1, 3))

    def test_window_must_contain_zero(self):
        with pytest.raises(ValueError):
            finite_part_limit(series(1, 1, 2))

    def test_integer_shift_combination_n2(self):
        # lim_{eps->0} { pi/(n-1)! d^{n-1}(-w^eps cot(pi eps)) - (-1)^n/eps^n }
        # for n = 2, w = 2i must equal pi^2/3 - (ln w)^2/2
        w = 2j
        lw = cmath.log(w)
        prod = mul(exp_series(lw, 4), cot_pi_laurent(4))
        deriv = differentiate(prod, 1).scale(-math.pi)
        combo = sub(deriv, monomial(1.0, -2, deriv.order))
        expected = math.pi**2 / 3 - lw**2 / 2
        assert abs(finite_part_limit(combo) - expected) < 1e-12

    def test_wrong_pole_subtraction_detected(self):
        w = 2j
        prod = mul(exp_series(cmath.log(w), 4), cot_pi_laurent(4))
        deriv = differentiate(prod, 1).scale(-math.pi)
        bad = sub(deriv, monomial(-1.0, -2, deriv.order))  # wrong sign
        with pytest.raises(ResidualPole):
            finite_part_limit(bad)


finite_complex = st.complex_numbers(
    max_magnitude=10, allow_nan=False, allow_infinity=False
)


@st.composite
def laurent_series(draw, min_len=2, max_len=6):
    min_degree = draw(st.integers(min_value=-3, max_value=2))
    coeffs = draw(
        st.lists(finite_complex, min_size=min_len, max_size=max_len)
    )
    return TruncatedLaurentSeries(min_degree, tuple(coeffs))


@given(laurent_series(), laurent_series())
@settings(max_examples=100, deadline=None)
def test_product_rule(f, g):
    lhs = differentiate(mul(f, g))
    rhs = add(mul(differentiate(f), g), mul(f, differentiate(g)))
    scale = max(1.0, max(abs(c) for c in lhs.coeffs))
    for d in range(max(lhs.min_degree, rhs.min_degree),
                   min(lhs.order, rhs.order) + 1):
        assert abs(lhs.coefficient(d) - rhs.coefficient(d)) <= 1e-12 * scale


@given(laurent_series(), laurent_series())
@settings(max_examples=100, deadline=None)
def test_mul_commutes(f, g):
    assert mul(f, g) == mul(g, f)


@given(laurent_series(), laurent_series(), laurent_series())
@settings(max_examples=60, deadline=None)
def test_mul_associates_on_common_window(f, g, h):
    lhs = mul(mul(f, g), h)
    rhs = mul(f, mul(g, h))
    scale = max(1.0, max(abs(c) for c in lhs.coeffs))
    for d in range(max(lhs.min_degree, rhs.min_degree),
                   min(lhs.order, rhs.order) + 1):
        assert abs(lhs.coefficient(d) - rhs.coefficient(d)) <= 1e-9 * scale
