from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from quasihopf.errors import DivisionByZero, FieldMismatch
from quasihopf.scalar import Scalar, cyclotomic_polynomial, make_field

z = sympy.symbols("z")
ORDERS = [1, 2, 3, 4, 5, 6, 8, 12]


def to_sympy(c: Scalar):
    return sympy.Poly(sum(sympy.Rational(a, c.den) * z**k for k, a in enumerate(c.num)), z, domain="QQ")


def from_sympy(F, poly) -> Scalar:
    coeffs = list(reversed(poly.all_coeffs())) if not poly.is_zero else [0]
    coeffs = [Fraction(int(sympy.numer(x)), int(sympy.denom(x))) for x in coeffs]
    coeffs += [Fraction(0)] * (F.degree - len(coeffs))
    return F.from_fractions(coeffs)


def minpoly(N):
    return sympy.Poly(sympy.cyclotomic_poly(N, z), z, domain="QQ")


@st.composite
def scalars(draw, N):
    F = make_field(N)
    num = draw(st.lists(st.integers(-20, 20), min_size=F.degree, max_size=F.degree))
    den = draw(st.integers(1, 12))
    return Scalar(F, num, den)


field_and_pair = st.sampled_from(ORDERS).flatmap(lambda N: st.tuples(scalars(N), scalars(N)))


@pytest.mark.parametrize("N", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(N):
    expected = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(N, z), z).all_coeffs())]
    assert list(cyclotomic_polynomial(N)) == expected


@pytest.mark.parametrize("N", ORDERS)
def test_zeta_is_primitive(N):
    F = make_field(N)
    assert F.is_primitive_root()
    assert F.zeta(N) == F.one
    assert F.zeta(-1) * F.zeta(1) == F.one


def test_fields_are_cached():
    assert make_field(6) is make_field(6)
    assert make_field(1).is_rational and make_field(2).is_rational and not make_field(3).is_rational


@given(field_and_pair)
def test_product_matches_sympy(pair):
    a, b = pair
    F = a.field
    expected = (to_sympy(a) * to_sympy(b)).rem(minpoly(F.N))
    assert a * b == from_sympy(F, expected)


@given(field_and_pair)
def test_sum_matches_sympy(pair):
    a, b = pair
    assert a + b == from_sympy(a.field, to_sympy(a) + to_sympy(b))
    assert a - b == from_sympy(a.field, to_sympy(a) - to_sympy(b))


@given(st.sampled_from(ORDERS).flatmap(scalars))
def test_inverse_matches_sympy(a):
    if not a:
        with pytest.raises(DivisionByZero):
            a.inverse()
        return
    F = a.field
    expected = sympy.invert(to_sympy(a).as_expr(), minpoly(F.N).as_expr(), z)
    assert a.inverse() == from_sympy(F, sympy.Poly(expected, z, domain="QQ"))
    assert a * a.inverse() == F.one


@given(st.sampled_from(ORDERS).flatmap(lambda N: st.tuples(scalars(N), scalars(N), scalars(N))))
def test_field_axioms(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == a.field.zero


@given(st.sampled_from(ORDERS).flatmap(scalars))
def test_json_round_trip(a):
    assert Scalar.from_json(a.field, a.to_json()) == a


def test_normalization_and_equality():
    F = make_field(4)
    assert Scalar(F, [2, 4], 6) == Scalar(F, [1, 2], 3)
    assert Scalar(F, [1, 0], -2) == Scalar(F, [-1, 0], 2)
    assert F.zeta(2) == -1
    assert F(3) == 3 and F(Fraction(1, 2)) == Fraction(1, 2)


def test_zero_denominator_and_mismatch():
    F = make_field(3)
    with pytest.raises(DivisionByZero):
        Scalar(F, [1, 0], 0)
    with pytest.raises(FieldMismatch):
        F.one + make_field(4).one
    with pytest.raises(ValueError):
        Scalar(F, [1, 2, 3])


def test_as_fraction():
    F = make_field(6)
    assert (F.zeta(1) + F.zeta(-1)).as_fraction() == 1
    with pytest.raises(ValueError):
        F.zeta(1).as_fraction()


def test_malformed_json_scalars():
    F = make_field(3)
    for bad in ({"num": [1]}, {"num": [1, 2], "den": 0}, {"num": [1, 2, 3], "den": 1}, {"num": ["a", 1], "den": 1}):
        with pytest.raises(ValueError):
            Scalar.from_json(F, bad)
