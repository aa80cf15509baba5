from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algdoe import CoefficientFieldError, InputError, QQ, cyclotomic_field, embed, omega

rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)


def test_root_sum_is_zero():
    w = omega(3)
    assert 1 + w + w**2 == 0
    assert not (1 + w + w**2)


def test_root_power_cycles():
    w = omega(3)
    assert w**3 == 1
    assert w**4 == w
    w5 = omega(5)
    assert w5**5 == 1
    assert sum((w5**k for k in range(5)), cyclotomic_field(5).zero) == 0


def test_order_two_degenerates_to_rational():
    w = omega(2)
    assert w == Fraction(-1)
    assert w * w == 1
    assert w.is_rational()


@given(rationals, rationals, rationals)
def test_three_coords_zero_iff_equal(q1, q2, q3):
    w = omega(3)
    value = q1 + q2 * w + q3 * w**2
    assert (not value) == (q1 == q2 == q3)


@given(rationals, rationals, st.sampled_from([2, 3, 5]))
def test_inverse(a, b, s):
    z = cyclotomic_field(s).coerce(a) + b * omega(s)
    if not z:
        return
    assert z * z.inverse() == 1
    assert z**-1 == z.inverse()


def test_composite_order_rejected():
    with pytest.raises(InputError):
        omega(4)
    with pytest.raises(InputError):
        cyclotomic_field(6)


def test_embed_and_mixing():
    f3 = cyclotomic_field(3)
    e = embed(Fraction(2, 3), f3)
    assert e == Fraction(2, 3)
    assert e.is_rational()
    with pytest.raises(CoefficientFieldError):
        QQ.coerce(omega(3))
    with pytest.raises(CoefficientFieldError):
        omega(3) + omega(5)


def test_rational_valued_hash_matches_fraction():
    z = cyclotomic_field(3).coerce(Fraction(7, 2))
    assert hash(z) == hash(Fraction(7, 2))


@given(rationals, rationals, rationals, rationals)
def test_field_axioms_sampled(a1, a2, b1, b2):
    w = omega(3)
    x = a1 + a2 * w
    y = b1 + b2 * w
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + 1) == x * y + x
