"""Exact scalars: rationals, generalized binomial coefficients, basis vectors.

The ground field is Q throughout.  Scalars are plain ``int`` where possible and
``fractions.Fraction`` otherwise; the two mix freely.  Rationals serialize as
"p/q" (or "p" when the denominator is 1).
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

Scalar = (int, Fraction)


def binom(n: int, k: int) -> int:
    """Generalized binomial coefficient n(n-1)...(n-k+1)/k! for any integer n.

    Integer-valued for all inputs; k must be nonnegative.
    """
    if k < 0:
        raise ValueError(f"binom requires k >= 0, got k={k}")
    num = 1
    for i in range(k):
        num *= n - i
    q = Fraction(num, factorial(k))
    assert q.denominator == 1
    return int(q)


def multinomial(parts) -> int:
    """(sum parts)! / prod(part!) for nonnegative integer parts."""
    total = sum(parts)
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def parse_scalar(s) -> Fraction:
    """Parse "p/q" or "p" into an exact rational."""
    if isinstance(s, Scalar):
        return Fraction(s)
    return Fraction(str(s))


def format_scalar(q) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Vec:
    """Sparse vector over a named basis with exact rational entries.

    Entries equal to zero are never stored; equality is entrywise.
    """

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = {}
        if entries:
            for name, value in entries.items():
                if value:
                    self.entries[name] = value

    @classmethod
    def unit(cls, name):
        return cls({name: 1})

    def __add__(self, other):
        out = dict(self.entries)
        for name, value in other.entries.items():
            new = out.get(name, 0) + value
            if new:
                out[name] = new
            else:
                out.pop(name, None)
        v = Vec.__new__(Vec)
        v.entries = out
        return v

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        v = Vec.__new__(Vec)
        v.entries = {name: -value for name, value in self.entries.items()}
        return v

    def scale(self, c):
        if not c:
            return Vec()
        v = Vec.__new__(Vec)
        v.entries = {name: c * value for name, value in self.entries.items()}
        return v

    def __eq__(self, other):
        if isinstance(other, Vec):
            return self.entries == other.entries
        if other == 0:
            return not self.entries
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((k, Fraction(v)) for k, v in self.entries.items()))

    def __bool__(self):
        return bool(self.entries)

    def get(self, name):
        return self.entries.get(name, 0)

    def support(self):
        return set(self.entries)

    def __repr__(self):
        if not self.entries:
            return "Vec(0)"
        body = ", ".join(f"{k}: {format_scalar(v)}" for k, v in sorted(self.entries.items()))
        return f"Vec({{{body}}})"

    def to_json(self):
        return {k: format_scalar(v) for k, v in sorted(self.entries.items())}

    @classmethod
    def from_json(cls, data):
        return cls({k: parse_scalar(v) for k, v in data.items()})


def linear_combine(terms) -> Vec:
    """Exact linear combination of (scalar, Vec) pairs, canonical result."""
    out = Vec()
    for c, v in terms:
        out = out + v.scale(c)
    return out


def coeff_mul(a, b):
    """Multiply two coefficients; at most one of them may be a Vec."""
    if isinstance(a, Vec):
        if isinstance(b, Vec):
            raise TypeError("cannot multiply two vector coefficients")
        return a.scale(b)
    if isinstance(b, Vec):
        return b.scale(a)
    return a * b


def coeff_add(a, b):
    if isinstance(a, Vec) or isinstance(b, Vec):
        if not isinstance(a, Vec):
            if a != 0:
                raise TypeError("cannot add scalar and vector coefficients")
            return b
        if not isinstance(b, Vec):
            if b != 0:
                raise TypeError("cannot add scalar and vector coefficients")
            return a
        return a + b
    return a + b


def coeff_is_zero(a):
    if isinstance(a, Vec):
        return not a.entries
    return a == 0


def coeff_to_json(a):
    if isinstance(a, Vec):
        return a.to_json()
    return format_scalar(a)


def coeff_from_json(data):
    if isinstance(data, dict):
        return Vec.from_json(data)
    return parse_scalar(data)
