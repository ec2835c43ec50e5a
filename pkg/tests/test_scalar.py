from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from z3super.scalar import ONE, ZERO, Q, CycScalar, q_pow
from z3super.expr import parse_scalar, render_scalar

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(CycScalar, fracs, fracs)


def test_cube_root_identities():
    assert ONE + Q + Q * Q == ZERO
    assert Q**3 == ONE
    assert Q + Q * Q == CycScalar(-1)
    assert CycScalar(1) + CycScalar(0, 1) == CycScalar(1, 1)


def test_products_by_hand():
    assert Q * Q * Q == ONE
    # (q - 1)(q^2 - 1) = q^3 - q^2 - q + 1 = 3
    assert (Q - 1) * (Q * Q - 1) == CycScalar(3)


def test_inverse_of_one_minus_q2():
    # (1 - q^2)(1 - q) = 2 - q - q^2 = 3
    inv = (ONE - Q * Q).inv()
    assert inv == CycScalar(Fraction(1, 3), Fraction(-1, 3))
    assert inv * (ONE - Q * Q) == ONE


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


@pytest.mark.parametrize("n,expected", [(3, ONE), (-1, Q * Q), (4, Q), (0, ONE), (-5, Q)])
def test_q_pow(n, expected):
    assert q_pow(n) == expected


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(scalars)
def test_inverse_and_norm(a):
    if a:
        assert a * a.inv() == ONE
        assert (a * a.conjugate()).is_rational()


@given(scalars)
def test_render_parse_round_trip(a):
    assert parse_scalar(render_scalar(a)) == a


@pytest.mark.parametrize("c,text", [(Q * Q, "q^2"), (CycScalar(-3) * Q, "-3*q"), (ONE - Q, "1 - q"),
                                    (CycScalar(Fraction(2, 3), Fraction(1, 3)), "(2/3) + (1/3)*q")])
def test_render_canonical(c, text):
    assert render_scalar(c) == text


def test_hash_agrees_with_equality():
    assert hash(CycScalar(-1, -1)) == hash(Q * Q)
    assert {Q * Q: 1}[CycScalar(-1, -1)] == 1
