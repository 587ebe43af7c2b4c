from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import assume, given
import hypothesis.strategies as st

from homothets import rational as R
from homothets.geometry import (
    ConvexPolytope,
    DimensionMismatch,
    Homothety,
    apply_homothety,
    box,
    common_point,
    contains_point,
    convex_hull,
    halfspace_vertices,
    in_hull_lp,
    intersection,
    intersects,
    minkowski_sum,
    reflect,
    simplex,
    standard_triangle,
    support,
    translate,
    unit_cube,
    unit_square,
    volume,
)

from conftest import extreme_points_2d, float_volume, in_hull_2d, points

T = standard_triangle()


def pts(*ps):
    return [R.point(p) for p in ps]


class TestHull:
    def test_square_with_centre(self):
        h = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), ("1/2", "1/2")], 2)
        assert h.vertices == tuple(sorted(pts((0, 0), (1, 0), (0, 1), (1, 1))))

    def test_triangle_kept(self):
        assert len(convex_hull([(0, 0), (1, 0), (0, 1)], 2).vertices) == 3

    def test_cube_with_centroid(self):
        corners = list(product((0, 1), repeat=3)) + [("1/2", "1/2", "1/2")]
        assert len(convex_hull(corners, 3).vertices) == 8

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            convex_hull([(0, 0), (1, 0, 0)], 2)

    def test_lower_dimensional(self):
        seg = convex_hull([(0, 0), (1, 1), (2, 2)], 2)
        assert seg.vertices == tuple(pts((0, 0), (2, 2)))
        assert seg.affine_dim == 1 and not seg.is_body

    def test_coplanar_in_3d(self):
        sq = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), ("1/2", "1/2", 0)], 3)
        assert len(sq.vertices) == 4 and sq.affine_dim == 2

    @given(points(2, 1, 9))
    def test_matches_brute_force(self, ps):
        assert list(convex_hull(ps, 2).vertices) == extreme_points_2d(ps)

    @given(points(2, 1, 9))
    def test_idempotent(self, ps):
        h = convex_hull(ps, 2)
        assert convex_hull(h.vertices, 2) == h

    @given(points(3, 4, 10))
    def test_3d_volume_matches_scipy(self, ps):
        h = convex_hull(ps, 3)
        assume(h.is_body)
        assert abs(float(volume(h)) - float_volume(ps)) < 1e-9
        # every input point is inside, every vertex is an input point
        assert all(contains_point(h, p) for p in ps)
        assert set(h.vertices) <= set(ps)


class TestMinkowski:
    def test_squares(self):
        assert minkowski_sum(unit_square(), unit_square()) == box((0, 0), (2, 2))

    def test_difference_hexagon(self):
        hexagon = minkowski_sum(T, reflect(T))
        expected = pts((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))
        assert set(hexagon.vertices) == set(expected)
        # brute hull over all nine vertex differences
        diffs = [R.sub(a, b) for a in T.vertices for b in T.vertices]
        assert list(hexagon.vertices) == extreme_points_2d(diffs)

    def test_identity(self):
        o = ConvexPolytope(2, (R.zero(2),))
        assert minkowski_sum(T, o) == T

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            minkowski_sum(T, unit_cube())

    @given(points(2, 3, 6), points(2, 3, 6))
    def test_brunn_minkowski(self, a, b):
        A, B = convex_hull(a, 2), convex_hull(b, 2)
        assume(A.is_body and B.is_body)
        s = volume(minkowski_sum(A, B))
        # vol(A+B)^(1/2) >= vol(A)^(1/2) + vol(B)^(1/2), squared out exactly
        va, vb = volume(A), volume(B)
        assert (s - va - vb) ** 2 >= 4 * va * vb and s >= va + vb


class TestHomothety:
    def test_identity(self):
        assert apply_homothety(T, Homothety(F(1), R.zero(2))) == T

    def test_doubling(self):
        assert apply_homothety(unit_square(), Homothety(F(2), R.zero(2))) == box((0, 0), (2, 2))

    def test_centre(self):
        assert Homothety(F(2), R.point((-1, 0))).center == R.point((1, 0))
        assert Homothety(F(1), R.point((3, 0))).center is None

    def test_bad_ratio(self):
        with pytest.raises(ValueError):
            Homothety(F(0), R.zero(2))
        with pytest.raises(ValueError):
            Homothety(F(-1), R.zero(2))

    @given(st.integers(1, 16).map(lambda k: F(k, 4)), st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
    def test_facets_carry_over(self, lam, t):
        sq = unit_square()
        sq.facets  # populate the cached structure
        moved = apply_homothety(sq, Homothety(lam, R.point(t)))
        fresh = convex_hull(moved.vertices, 2)
        assert sorted(moved.facets, key=repr) == sorted(fresh.facets, key=repr)


class TestVolume:
    def test_values(self):
        assert volume(unit_square()) == 1
        assert volume(T) == F(1, 2)
        assert volume(minkowski_sum(T, reflect(T))) == 3
        assert volume(simplex(3)) == F(1, 6)
        assert volume(convex_hull([(0, 0), (1, 1)], 2)) == 0

    @given(points(2, 3, 9))
    def test_matches_scipy(self, ps):
        h = convex_hull(ps, 2)
        assume(h.is_body)
        assert abs(float(volume(h)) - float_volume(ps)) < 1e-9

    @given(points(2, 3, 7), st.integers(1, 12).map(lambda k: F(k, 4)))
    def test_scaling(self, ps, lam):
        h = convex_hull(ps, 2)
        assert volume(apply_homothety(h, Homothety(lam, R.zero(2)))) == lam**2 * volume(h)


class TestPredicates:
    def test_contains(self):
        sq = unit_square()
        assert contains_point(sq, R.point(("1/2", "1/2")))
        assert contains_point(sq, R.point((0, 0)))
        assert not contains_point(sq, R.point((2, 0)))

    def test_intersects(self):
        w = intersects(unit_square(), box((1, 0), (2, 1)))
        assert w is not None and w[0] == 1
        assert intersects(unit_square(), box((2, 2), (3, 3))) is None
        w = intersects(T, T)
        assert w is not None and contains_point(T, w)

    def test_support(self):
        sq = unit_square()
        assert support(sq, R.point((1, 0))) == 1
        assert support(sq, R.point((-1, -1))) == 0
        assert support(minkowski_sum(T, reflect(T)), R.point((1, 0))) == 1
        with pytest.raises(ValueError):
            support(sq, R.zero(2))

    @given(points(2, 1, 7), st.tuples(*[st.integers(-20, 20).map(lambda k: F(k, 8))] * 2))
    def test_contains_matches_oracles(self, ps, q):
        h = convex_hull(ps, 2)
        expected = in_hull_2d(ps, q)
        assert contains_point(h, q) == expected
        assert (in_hull_lp(h.vertices, q) is not None) == expected

    @given(points(2, 1, 6), points(2, 1, 6), st.tuples(st.integers(-8, 8), st.integers(-8, 8)))
    def test_support_sublinear(self, a, b, u):
        assume(any(u))
        A, B = convex_hull(a, 2), convex_hull(b, 2)
        u = R.point(u)
        assert support(minkowski_sum(A, B), u) == support(A, u) + support(B, u)
        assert support(A, R.scale(F(3), u)) == 3 * support(A, u)

    @given(points(2, 3, 6), points(2, 3, 6))
    def test_intersection_witness(self, a, b):
        A, B = convex_hull(a, 2), convex_hull(b, 2)
        w = intersects(A, B)
        if w is not None:
            assert contains_point(A, w) and contains_point(B, w)
        else:
            # disjoint polytopes: no vertex of one inside the other
            assert not any(contains_point(B, v) for v in A.vertices)
            assert not any(contains_point(A, v) for v in B.vertices)

    def test_common_point_triples(self):
        a, b, c = unit_square(), box((1, 0), (2, 1)), box((0, 1), (1, 2))
        assert common_point([a, b]) is not None
        assert common_point([a, b, c]) == R.point((1, 1))
        assert common_point([a, b, box((0, 2), (1, 3))]) is None


class TestHalfspaces:
    def test_intersection_of_squares(self):
        got = intersection(unit_square(), box(("1/2", "1/2"), (2, 2)))
        assert got == box(("1/2", "1/2"), (1, 1))

    def test_halfspace_vertices(self):
        verts = halfspace_vertices(list(unit_cube().facets), 3)
        assert sorted(verts) == list(unit_cube().vertices)

    @given(points(2, 3, 6), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
    def test_intersection_matches_vertex_oracle(self, a, t):
        A = convex_hull(a, 2)
        assume(A.is_body)
        B = translate(A, R.point(t))
        got = intersection(A, B)
        if got is None or not got.is_body:
            return
        for v in got.vertices:
            assert contains_point(A, v) and contains_point(B, v)
