import random
from fractions import Fraction

import pytest

from vertexcalc.scalars import (
    Vec,
    binom,
    format_scalar,
    linear_combine,
    multinomial,
    parse_scalar,
)


def test_binom_small_factorial_case():
    assert binom(3, 2) == 3


def test_binom_negative_upper_index():
    # (-1)(-2)/2! computed by hand from the falling-factorial formula
    assert binom(-1, 2) == 1


def test_binom_empty_product():
    for n in (-7, -1, 0, 4, 123):
        assert binom(n, 0) == 1


def test_binom_rejects_negative_k():
    with pytest.raises(ValueError):
        binom(2, -1)


def test_binom_pascal_recurrence():
    for n in range(-10, 11):
        for k in range(1, 11):
            assert binom(n, k) == binom(n - 1, k) + binom(n - 1, k - 1)


def test_binom_always_integer_valued():
    for n in range(-12, 13):
        for k in range(0, 9):
            assert isinstance(binom(n, k), int)


def test_multinomial():
    assert multinomial(()) == 1
    assert multinomial((2, 1)) == 3
    assert multinomial((1, 1, 1)) == 6


def test_rational_arithmetic_is_exact():
    rng = random.Random(20240817)
    for _ in range(200):
        a = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
        b = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
        assert (a + b) - b == a


def test_rational_string_round_trip():
    assert format_scalar(Fraction(1, 2)) == "1/2"
    assert format_scalar(Fraction(-3, 1)) == "-3"
    assert parse_scalar("7/3") == Fraction(7, 3)
    assert parse_scalar("-4") == Fraction(-4)
    assert parse_scalar(format_scalar(Fraction(-10, 4))) == Fraction(-5, 2)


def test_linear_combine_cancellation():
    v = Vec({"e1": Fraction(2, 3), "e2": 1})
    assert linear_combine([(1, v), (-1, v)]) == Vec()


def test_linear_combine_disjoint_supports():
    out = linear_combine([(2, Vec.unit("e1")), (3, Vec.unit("e2"))])
    assert out == Vec({"e1": 2, "e2": 3})


def test_linear_combine_exact_rational_product():
    out = linear_combine([(Fraction(1, 2), Vec({"e1": Fraction(2, 3)}))])
    assert out == Vec({"e1": Fraction(1, 3)})


def test_vec_never_stores_zeros():
    v = Vec({"a": 0, "b": 1})
    assert v.entries == {"b": 1}
    w = v + Vec({"b": -1})
    assert w.entries == {}
    assert not w


def test_vec_json_round_trip():
    v = Vec({"e0": Fraction(-1, 2), "e3": 4})
    assert Vec.from_json(v.to_json()) == v
