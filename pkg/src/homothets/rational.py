"""Exact scalars and coordinate vectors.

Scalars are :class:`fractions.Fraction`; points are plain tuples of
fractions. Everything here is a small pure helper.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
Point = Tuple[Fraction, ...]
Number = Union[int, str, Fraction]


def to_rational(value: Number) -> Fraction:
    """Parse ``value`` exactly.

    Accepts ints, Fractions, ``"p/q"`` strings and decimal strings
    (``"0.125"``, ``"-3e-2"``). Floats are rejected on purpose: use
    ``Fraction(x)`` explicitly when a binary float is really meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        return Fraction(text)
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def point(coords: Iterable[Number]) -> Point:
    return tuple(to_rational(c) for c in coords)


def format_point(p: Sequence[Fraction]) -> list:
    return [format_rational(c) for c in p]


def add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Sequence[Fraction], q: Sequence[Fraction]) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def neg(p: Sequence[Fraction]) -> Point:
    return tuple(-a for a in p)


def scale(c: Fraction, p: Sequence[Fraction]) -> Point:
    return tuple(c * a for a in p)


def dot(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def zero(n: int) -> Point:
    return (Fraction(0),) * n


def cross(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def primitive(v: Sequence[Fraction]) -> Tuple[Tuple[int, ...], Fraction]:
    """Scale ``v`` to a primitive integer vector.

    Returns ``(w, c)`` with ``w = c * v``, ``c > 0`` and gcd of ``w`` equal to 1.
    """
    from math import gcd, lcm

    den = 1
    for a in v:
        den = lcm(den, a.denominator)
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(a // g for a in ints), Fraction(den, g)
