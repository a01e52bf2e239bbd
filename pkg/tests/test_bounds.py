"""Closed-form cost expressions: worked examples, exact-rational
identities, and parameter validation."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selbroadcast import (
    ModularBoundParams,
    bit_cost_ratio,
    detectable_cost_bits,
    message_lower_bound,
    modular_bound,
    static_db_lower_bound_bits,
    total_bb_cost_bits,
)


def test_detectable_cost_examples():
    assert detectable_cost_bits(4, 1, 6) == 15
    assert detectable_cost_bits(7, 2, 9) == 27
    # D + (n-1)D/(n-2t) at a non-integer point stays exact
    assert detectable_cost_bits(7, 2, 3) == 3 + Fraction(18, 3)


def test_total_cost_examples():
    assert total_bb_cost_bits(4, 1, 12) == 30
    assert total_bb_cost_bits(7, 2, 18) == 54
    assert total_bb_cost_bits(10, 3, 160) == 520


def test_bit_cost_ratio_examples():
    assert bit_cost_ratio(4, 1) == Fraction(5, 2)
    assert 2 < bit_cost_ratio(4, 1) < 4


def test_ratio_in_open_interval_over_parameter_region():
    for t in range(1, 6):
        for n in range(3 * t + 1, 3 * t + 11):
            assert 2 < bit_cost_ratio(n, t) < 4, (n, t)


def test_static_lower_bound_examples():
    assert static_db_lower_bound_bits(4, 1, 6) == 12
    assert static_db_lower_bound_bits(7, 2, 15) == 33
    # at most 2L whenever at most one node may fail
    for n, L in ((4, 6), (7, 15), (10, 40)):
        assert static_db_lower_bound_bits(n, 1, L) <= 2 * L


def test_message_lower_bound():
    assert message_lower_bound(0) == 1
    assert message_lower_bound(1) == 2
    assert message_lower_bound(5) == 6


def test_modular_bound_examples():
    cubic = lambda m: m**3
    assert modular_bound(ModularBoundParams(B=3, i=0, alpha=1, m_star=cubic), 4) == 2197
    assert modular_bound(ModularBoundParams(B=2, i=1, alpha=1, m_star=cubic), 4) == 694
    assert modular_bound(ModularBoundParams(B=2, i=2, alpha=1, m_star=cubic), 4) == 272


def test_modular_bound_decreases_with_depth_for_cubic_cost():
    cubic = lambda m: m**3
    t, B = 81, 3
    values = [
        modular_bound(ModularBoundParams(B=B, i=i, alpha=1, m_star=cubic), t)
        for i in range(5)
    ]
    assert values == sorted(values, reverse=True)


def test_validation_errors():
    with pytest.raises(ValueError):
        detectable_cost_bits(3, 1, 6)  # n < 3t + 1
    with pytest.raises(ValueError):
        detectable_cost_bits(4, 1, 7)  # D not a multiple of n - 2t
    with pytest.raises(ValueError):
        total_bb_cost_bits(4, 1, 0)
    with pytest.raises(ValueError):
        static_db_lower_bound_bits(4, 4, 6)  # f >= n
    with pytest.raises(ValueError):
        message_lower_bound(-1)
    with pytest.raises(ValueError):
        modular_bound(ModularBoundParams(B=1, i=0, alpha=1, m_star=lambda m: m), 4)
    with pytest.raises(ValueError):
        modular_bound(ModularBoundParams(B=3, i=2, alpha=1, m_star=lambda m: m), 4)


@given(st.integers(1, 8), st.integers(0, 20), st.integers(1, 40))
def test_per_generation_cost_sums_to_total(t, extra, gens):
    # L/D generations of one D-bit detectable broadcast equal the total
    n = 3 * t + 1 + extra
    D = n - 2 * t  # c = 1 symbol-width keeps the identity generic
    L = gens * D
    assert detectable_cost_bits(n, t, D) * Fraction(L, D) == total_bb_cost_bits(n, t, L)


@given(st.integers(1, 8), st.integers(0, 20))
def test_ratio_bounds_hold_generally(t, extra):
    n = 3 * t + 1 + extra
    assert 2 < bit_cost_ratio(n, t) < 4
