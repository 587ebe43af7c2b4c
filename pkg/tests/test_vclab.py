from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st
from scipy.optimize import linprog

from homothets import rational as R
from homothets.family import HomothetFamily
from homothets.geometry import box, contains_point, convex_hull, in_hull_lp, standard_triangle, unit_square
from homothets.cli import regular_polygon
from homothets.vclab import (
    SizeCapExceeded,
    build_paraboloid,
    build_touching_family,
    dual_shatter_lower,
    duality_consistent,
    fit_homothet,
    hull_position,
    is_strictly_antipodal,
    max_dual_witness,
    on_paraboloid,
    paraboloid_samples,
    search_four_points_2d,
    shatter_with_fits,
    shatters,
    subset_of_index,
    u_point,
    v_point,
    verify_paraboloid,
)

from conftest import in_hull_2d

SQ = unit_square()
T = standard_triangle()


def float_in_hull(vertices, q):
    """scipy feasibility of convex weights reproducing ``q``."""
    v = np.array([[float(c) for c in p] for p in vertices]).T
    a_eq = np.vstack([v, np.ones(v.shape[1])])
    b_eq = np.concatenate([[float(c) for c in q], [1.0]])
    return linprog(np.zeros(v.shape[1]), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs").status == 0


class TestShatter:
    def test_single_point(self):
        fam = [SQ, box((2, 2), (3, 3))]
        cert = shatters(fam, [("1/2", "1/2")])
        assert cert is not None and cert.validate(fam)

    def test_pair_always_together(self):
        fam = [SQ, box((2, 2), (3, 3))]
        assert shatters(fam, [(0, 0), (1, 1)]) is None

    def test_cap(self):
        with pytest.raises(SizeCapExceeded):
            shatters([SQ], [(i, 0) for i in range(21)])

    def test_restrict(self):
        inst = build_paraboloid(3)
        cert = verify_paraboloid(inst)
        sub = cert.restrict([0, 2])
        assert len(sub.witnesses) == 4 and sub.validate(inst.family.bodies)


class TestParaboloid:
    def test_index_sets(self):
        assert subset_of_index(1) == frozenset()
        assert subset_of_index(2) == {1}
        assert subset_of_index(3) == {2}
        assert subset_of_index(4) == {1, 2}

    def test_m1(self):
        inst = build_paraboloid(1)
        assert inst.pairs == ((1, 2),)
        assert inst.generators == (R.point((1, "1/2", "5/4")),)
        assert len(inst.family) == 2
        fam = inst.family.bodies
        assert contains_point(fam[1], u_point(1)) and not contains_point(fam[0], u_point(1))

    def test_m2(self):
        inst = build_paraboloid(2)
        assert inst.pairs == ((1, 2), (2, 3), (1, 4), (2, 4))
        cert = verify_paraboloid(inst)
        assert len(cert.witnesses) == 4
        body3 = inst.family.bodies[2]
        assert [contains_point(body3, p) for p in inst.points] == [False, True]

    def test_pair_count_identity(self):
        for m in range(1, 6):
            assert len(build_paraboloid(m).pairs) == m * 2 ** (m - 1)

    def test_generators_on_paraboloid(self):
        assert all(on_paraboloid(g) for g in build_paraboloid(4).generators)

    def test_excluded_pair(self):
        for m in range(1, 5):
            inst = build_paraboloid(m)
            assert in_hull_lp(inst.generators, R.add(u_point(1), v_point(1))) is None

    def test_range(self):
        with pytest.raises(ValueError):
            build_paraboloid(0)
        with pytest.raises(ValueError):
            build_paraboloid(9)

    @pytest.mark.parametrize("m", [2, 3])
    def test_membership_matches_float_oracle(self, m):
        inst = build_paraboloid(m)
        pairs = set(inst.pairs)
        for n in range(1, inst.size + 1):
            for k in range(1, m + 1):
                q = R.add(u_point(k), v_point(n))
                assert float_in_hull(inst.generators, q) == ((k, n) in pairs)


class TestFit:
    def test_any_translate(self):
        fit = fit_homothet(SQ, [(0, 0)], [])
        assert fit is not None and contains_point(fit.body, R.zero(2))

    def test_midpoint_forced(self):
        assert fit_homothet(T, [(0, 0), (2, 0)], [(1, 0)]) is None

    def test_gon_shatters_three_points(self):
        gon = regular_polygon(64)
        pts = [R.point(p) for p in [(0, 0), (1, 0), ("1/2", 1)]]
        cert, failed, fits = shatter_with_fits(gon, pts)
        assert failed is None and len(cert.witnesses) == 8
        assert cert.validate([f.body for f in fits])

    @given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=4, unique=True), st.data())
    @settings(max_examples=25)
    def test_fits_are_exact(self, pts, data):
        pts = [R.point(p) for p in pts]
        inc = data.draw(st.lists(st.sampled_from(pts), unique=True))
        exc = [p for p in pts if p not in inc]
        fit = fit_homothet(T, inc, exc, budget=256, guided=4)
        if fit is not None:
            assert all(contains_point(fit.body, p) for p in inc)
            assert not any(contains_point(fit.body, p) for p in exc)
        if inc and any(in_hull_2d(inc, p) for p in exc):
            assert fit is None


class TestFourPoint:
    def test_hull_position(self):
        pts = [R.point(p) for p in [(0, 0), (4, 0), (0, 4), (1, 1)]]
        assert hull_position(pts) == 3
        pts[3] = R.point((3, 3))
        assert hull_position(pts) is None

    @given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=4, max_size=4, unique=True))
    def test_hull_position_oracle(self, pts):
        pts = [R.point(p) for p in pts]
        expected = any(in_hull_2d(pts[:i] + pts[i + 1 :], pts[i]) for i in range(4))
        assert (hull_position(pts) is not None) == expected

    def test_small_runs(self):
        for k in (SQ, T):
            rep = search_four_points_2d(k, 40, 3)
            assert rep.counterexample is None
            assert rep.hull_rejections + rep.search_rejections == 40

    def test_deterministic(self):
        a = search_four_points_2d(SQ, 30, 11).to_json()
        b = search_four_points_2d(SQ, 30, 11).to_json()
        assert a == b


class TestAntipodal:
    def test_triangle(self):
        wit = is_strictly_antipodal(T.vertices)
        assert wit is not None and set(wit) == {(0, 1), (0, 2), (1, 2)}
        assert all(w.validate(list(T.vertices)) for w in wit.values())

    def test_square_fails(self):
        assert is_strictly_antipodal(SQ.vertices) is None

    def test_collinear_fails(self):
        assert is_strictly_antipodal([(0, 0), (1, 0), (2, 0)]) is None

    def test_duplicates(self):
        with pytest.raises(ValueError):
            is_strictly_antipodal([(0, 0), (0, 0), (1, 0)])

    def test_touching_triangle(self):
        fam, rep = build_touching_family(T.vertices)
        assert len(fam) == 3 and rep.ok
        assert rep.nu_exact == 1 and rep.tau_exact == 2 >= rep.tau_lower == 2
        # no member contains the contact point of the other two
        b = fam.bodies
        s = list(T.vertices)
        for i, j in combinations(range(3), 2):
            (m,) = set(range(3)) - {i, j}
            assert not contains_point(b[m], R.add(s[i], s[j]))

    def test_two_points(self):
        fam, rep = build_touching_family([(0, 0), (1, 0)])
        assert rep.ok and rep.tau_exact == 1

    def test_not_antipodal_rejected(self):
        with pytest.raises(ValueError):
            build_touching_family(SQ.vertices)

    def test_tetrahedron(self):
        fam, rep = build_touching_family([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert rep.ok and rep.nu_exact == 1 and rep.tau_exact == 2


class TestDual:
    def test_overlapping_squares(self):
        fam = [SQ, box(("1/2", "1/2"), ("3/2", "3/2"))]
        grid = [(F(i, 4), F(j, 4)) for i in range(-1, 8) for j in range(-1, 8)]
        w = dual_shatter_lower(fam, 2, grid)
        assert w is not None and w.k == 2 and w.validate(fam)

    def test_nested_rejected(self):
        fam = [box(("1/4", "1/4"), ("3/4", "3/4")), SQ]
        grid = [(F(i, 4), F(j, 4)) for i in range(-1, 8) for j in range(-1, 8)]
        assert dual_shatter_lower(fam, 2, grid) is None

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_paraboloid_consistent(self, m):
        inst = build_paraboloid(m)
        w = max_dual_witness(inst.family, paraboloid_samples(inst))
        k = w.k if w is not None else 0
        assert w is None or w.validate(inst.family)
        assert duality_consistent(m, k)
