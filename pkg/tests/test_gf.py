import itertools

import pytest
from hypothesis import given, strategies as st

from selbroadcast.gf import DEFAULT_POLYNOMIALS, GF, is_irreducible


@pytest.fixture(scope="module")
def gf8():
    return GF(3)  # x^3 + x + 1


def test_add_is_xor(gf8):
    assert gf8.add(3, 5) == 6  # 011 ^ 101


def test_add_self_inverse_and_identity(gf8):
    for a in range(8):
        assert gf8.add(a, a) == 0
        assert gf8.add(a, 0) == a


def test_mul_examples(gf8):
    assert gf8.mul(3, 5) == 4  # (x+1)(x^2+1) mod x^3+x+1
    assert gf8.mul(7, 4) == 1
    for a in range(8):
        assert gf8.mul(a, 1) == a


def test_inv_examples(gf8):
    assert gf8.inv(1) == 1
    assert gf8.inv(2) == 5
    assert gf8.inv(7) == 4


def test_inv_of_zero_raises(gf8):
    with pytest.raises(ZeroDivisionError):
        gf8.inv(0)


def test_out_of_range_element_rejected(gf8):
    with pytest.raises(ValueError):
        gf8.mul(8, 1)
    with pytest.raises(ValueError):
        gf8.add(3, 200)


def test_field_laws_exhaustive_gf8(gf8):
    elems = range(8)
    for a, b in itertools.product(elems, repeat=2):
        assert gf8.mul(a, b) == gf8.mul(b, a)
    for a, b, d in itertools.product(elems, repeat=3):
        assert gf8.mul(gf8.mul(a, b), d) == gf8.mul(a, gf8.mul(b, d))
        assert gf8.mul(a, gf8.add(b, d)) == gf8.add(gf8.mul(a, b), gf8.mul(a, d))


def test_inverse_law_exhaustive(gf8):
    for a in range(1, 8):
        assert gf8.mul(a, gf8.inv(a)) == 1


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
def test_field_laws_gf256(a, b, d):
    f = GF(8)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d))
    assert f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d))


@pytest.mark.parametrize("c", sorted(DEFAULT_POLYNOMIALS))
def test_default_polynomials_are_irreducible(c):
    assert is_irreducible(DEFAULT_POLYNOMIALS[c], c)


@pytest.mark.parametrize("c", [2, 3, 4, 5, 6, 7, 8])
def test_multiplicative_group_is_cyclic(c):
    f = GF(c)
    assert f.element_order(f.generator) == f.order


def test_reducible_polynomial_rejected():
    with pytest.raises(ValueError):
        GF(3, polynomial=0b1111)  # x^3+x^2+x+1 = (x+1)(x^2+1)
