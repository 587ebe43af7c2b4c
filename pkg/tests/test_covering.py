import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from homothets import rational as R
from homothets.covering import (
    COUNTEREXAMPLE,
    UNRESOLVED,
    VERIFIED,
    Cover,
    covering_bounds,
    inscribed_cube,
    rz_factor,
    scaled,
    tile_cover,
    verify_cover,
)
from homothets.geometry import (
    DegenerateBody,
    box,
    contains_point,
    convex_hull,
    standard_triangle,
    unit_cube,
    unit_square,
    volume,
)

from conftest import points

SQ = unit_square()
T = standard_triangle()
BIG = box((0, 0), (2, 2))


def test_rz_factor_natural_log():
    assert rz_factor(2) == 2 * math.log(2) + math.log(math.log(2)) + 10


def test_four_squares():
    cover = tile_cover(BIG, SQ)
    assert len(cover.translations) == 4
    assert cover.cells_certified()
    assert verify_cover(cover).status == VERIFIED


def test_missing_translate_gives_counterexample():
    cover = tile_cover(BIG, SQ)
    short = Cover(BIG, SQ, cover.translations[:-1], ())
    check = verify_cover(short)
    assert check.status == COUNTEREXAMPLE
    p = check.point
    assert contains_point(BIG, p)
    assert not any(contains_point(t, p) for t in short.tiles())


def test_single_translate_cases():
    assert len(tile_cover(SQ, SQ).translations) == 1
    assert len(tile_cover(T, T).translations) == 1
    assert len(tile_cover(box(("1/4", "1/4"), ("3/4", "1/2")), SQ).translations) == 1


def test_tiles_meeting_on_a_diagonal():
    assert verify_cover(Cover(SQ, T, (R.zero(2),), ())).status == COUNTEREXAMPLE
    assert verify_cover(Cover(SQ, SQ, (R.zero(2),), ())).status == VERIFIED
    # two translates of a diamond whose edges meet along the square's diagonal;
    # without any cuts the answer cannot be verified
    diamond = convex_hull([(0, 0), (1, 1), (2, 0), (1, -1)], 2)
    halves = Cover(SQ, diamond, (R.point((-1, 0)), R.point((0, 1))), ())
    shallow = verify_cover(halves, max_depth=0)
    assert shallow.status in (UNRESOLVED, VERIFIED)
    if shallow.status == UNRESOLVED:
        assert shallow.tolerance > 0
    assert verify_cover(halves).status == VERIFIED


def test_degenerate_tile():
    with pytest.raises(DegenerateBody):
        tile_cover(SQ, convex_hull([(0, 0), (1, 1)], 2))


def test_inscribed_cube():
    corner, side = inscribed_cube(T)
    assert side == F(1, 2)
    corner, side = inscribed_cube(unit_cube())
    assert side == 1


def test_bounds_square():
    b = covering_bounds(BIG, SQ)
    assert b.lower == b.constructive_upper == 4
    assert b.difference_ratio == 9
    assert abs(b.rz_upper - 9 * (2 * math.log(2) + math.log(math.log(2)) + 10)) < 1e-6
    assert b.to_json()["logConvention"] == "natural logarithm"


def test_bounds_identity_and_triple():
    b = covering_bounds(SQ, SQ)
    assert b.lower == b.constructive_upper == 1
    b = covering_bounds(scaled(SQ, 3), SQ)
    assert b.lower == 9 and b.constructive_upper >= 9


def test_3d_cube():
    cover = tile_cover(box((0, 0, 0), (2, 2, 2)), unit_cube())
    assert len(cover.translations) == 8
    assert verify_cover(cover).status == VERIFIED


@given(points(2, 3, 6, bits=2, lo=0, hi=2), points(2, 3, 5, bits=2, lo=0, hi=1))
@settings(max_examples=25)
def test_cover_sound(c, l):
    C, L = convex_hull(c, 2), convex_hull(l, 2)
    if not (C.is_body and L.is_body):
        return
    cover = tile_cover(C, L)
    assert cover.cells_certified()
    assert verify_cover(cover).status != COUNTEREXAMPLE
    # no cover can beat the volume bound
    assert len(cover.translations) >= math.ceil(volume(C) / volume(L))


@given(st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=9)
def test_monotone_in_covered_body(a, b):
    small, large = box((0, 0), (a, b)), box((0, 0), (a + 1, b + 1))
    grid = (R.zero(2), F(1))
    ns = len(tile_cover(small, SQ, grid=grid, prune=False).translations)
    nl = len(tile_cover(large, SQ, grid=grid, prune=False).translations)
    assert ns == a * b and nl == (a + 1) * (b + 1) and ns <= nl
