from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import exact_scalars
from zxcal.errors import InexactParameter
from zxcal.scalars import (
    I,
    INV_SQRT2,
    ONE,
    SQRT2,
    ExactScalar,
    exact_mul,
    exact_to_float,
    float_close,
    phase,
    scalar_from_json,
    scalar_to_json,
)

HALF = Fraction(1, 2)


def test_half_root_two_squared():
    x = ExactScalar(0, HALF)
    assert exact_mul(x, x) == ExactScalar(HALF, 0)


def test_one_is_multiplicative_identity():
    x = ExactScalar((3, -2), (Fraction(1, 7), 5))
    assert exact_mul(ONE, x) == x


def test_conjugate_pair_product():
    assert exact_mul(ExactScalar(1, 1), ExactScalar(1, -1)) == ExactScalar(-1, 0)


def test_to_float_values():
    assert exact_to_float(ExactScalar(0, HALF)) == 0.7071067811865476
    assert exact_to_float(ExactScalar(1, 0)) == 1.0
    assert exact_to_float(ExactScalar((0, 1), 0)) == 1j


def test_float_close():
    assert float_close(1.0, 1.0 + 1e-12j, 1e-9)
    assert not float_close(1.0, 1.1, 1e-9)
    assert float_close(cmath.exp(1j * math.pi / 4), (1 + 1j) / math.sqrt(2), 1e-12)
    with pytest.raises(ValueError):
        float_close(1, 1, -1.0)


def test_canonical_equality_and_hash():
    a = ExactScalar((Fraction(2, 4), 0), 0)
    b = ExactScalar(HALF, 0)
    assert a == b and hash(a) == hash(b)
    assert ExactScalar(0, 1) != ExactScalar(1, 0)


def test_floats_are_rejected():
    with pytest.raises(InexactParameter):
        ExactScalar.coerce(0.5)


def test_constants():
    assert SQRT2 * INV_SQRT2 == ONE
    assert I * I == -ONE


def test_exact_phases_are_eighth_roots():
    r = phase(Fraction(1, 4))
    assert isinstance(r, ExactScalar)
    assert r * r == I
    assert float_close(complex(r), cmath.exp(1j * math.pi / 4), 1e-15)


@given(exact_scalars, exact_scalars, exact_scalars)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@given(exact_scalars, exact_scalars)
def test_conjugation(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(exact_scalars)
def test_inverse(a):
    if a == ExactScalar(0, 0):
        return
    assert a * a.inverse() == ONE


@given(st.lists(exact_scalars, min_size=1, max_size=16))
def test_float_homomorphism(xs):
    prod_exact = ONE
    prod_float = 1 + 0j
    for x in xs:
        prod_exact = prod_exact * x
        prod_float *= complex(x)
    scale = max(1.0, abs(prod_float))
    assert abs(complex(prod_exact) - prod_float) <= 1e-12 * scale


@given(exact_scalars)
def test_json_round_trip(a):
    obj = scalar_to_json(a)
    assert set(obj) == {"p", "q"}
    assert scalar_from_json(obj) == a


def test_float_json():
    assert scalar_to_json(1.5 - 2j) == {"re": 1.5, "im": -2.0}
    assert scalar_from_json({"re": 1.5, "im": -2.0}) == 1.5 - 2j
