"""Shared strategies and independent oracles.

The oracles avoid the package's own predicates: brute-force orientation
tests, interval arithmetic for boxes and scipy's floating-point hulls.
"""

from fractions import Fraction
from itertools import combinations

import hypothesis.strategies as st
import numpy as np
from hypothesis import settings
from scipy.spatial import ConvexHull

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F = Fraction


def dyadic(bits=4, lo=-4, hi=4):
    den = 1 << bits
    return st.integers(lo * den, hi * den).map(lambda k: F(k, den))


def points(dim, min_size, max_size, bits=3, lo=-2, hi=2):
    return st.lists(st.tuples(*[dyadic(bits, lo, hi)] * dim), min_size=min_size, max_size=max_size, unique=True)


def orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def in_triangle(a, b, c, p):
    s = (orient(a, b, p), orient(b, c, p), orient(c, a, p))
    return all(x >= 0 for x in s) or all(x <= 0 for x in s)


def on_segment(a, b, p):
    return (
        orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def in_hull_2d(pts, p):
    """Carathéodory: ``p`` is in the hull iff it is in a triangle (or segment) of the points."""
    pts = list(pts)
    if p in pts:
        return True
    if any(on_segment(a, b, p) for a, b in combinations(pts, 2)):
        return True
    return any(in_triangle(a, b, c, p) and orient(a, b, c) != 0 for a, b, c in combinations(pts, 3))


def extreme_points_2d(pts):
    pts = list(set(pts))
    return sorted(p for p in pts if not in_hull_2d([q for q in pts if q != p], p))


def float_volume(pts):
    return ConvexHull(np.array([[float(x) for x in p] for p in pts])).volume


def box_overlap(a_lo, a_hi, b_lo, b_hi):
    return all(max(x, y) <= min(u, v) for x, y, u, v in zip(a_lo, b_lo, a_hi, b_hi))
