"""Exact convex polytopes in dimensions 2 and 3.

A :class:`ConvexPolytope` stores its extreme points in lexicographic order.
Facets (outward integer normals with rational offsets), the boundary
triangulation and the affine dimension are derived on first use and cached.
All predicates treat polytopes as closed sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import rational as R
from .lp import Constraint, LinearProgram, lp_solve
from .rational import Point


class DimensionMismatch(ValueError):
    pass


class DegenerateBody(ValueError):
    """A positive-volume body was required."""


@dataclass(frozen=True)
class Facet:
    normal: Tuple[int, ...]
    offset: Fraction

    def value(self, q: Sequence[Fraction]) -> Fraction:
        return R.dot(self.normal, q) - self.offset


@dataclass(frozen=True)
class _Structure:
    affine_dim: int
    facets: Tuple[Facet, ...]
    # 2D: ccw cycle of vertex indices; 3D: outward-oriented triangles
    faces: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class ConvexPolytope:
    """Convex hull of ``vertices``.

    Use :func:`convex_hull` to build one from arbitrary points; the raw
    constructor trusts that ``vertices`` are distinct extreme points (it
    only sorts them).
    """

    dimension: int
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise ValueError("only dimensions 2 and 3 are supported")
        if not self.vertices:
            raise ValueError("a polytope needs at least one vertex")
        for v in self.vertices:
            if len(v) != self.dimension:
                raise DimensionMismatch(f"vertex {v} is not {self.dimension}-dimensional")
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))

    @cached_property
    def _structure(self) -> _Structure:
        return _build_structure(self.dimension, self.vertices)

    @property
    def affine_dim(self) -> int:
        return self._structure.affine_dim

    @property
    def is_body(self) -> bool:
        return self._structure.affine_dim == self.dimension

    @property
    def facets(self) -> Tuple[Facet, ...]:
        """Half-spaces ``normal . x <= offset``; empty for lower-dimensional hulls."""
        return self._structure.facets

    def require_body(self) -> "ConvexPolytope":
        if not self.is_body:
            raise DegenerateBody("polytope has empty interior")
        return self

    def centroid_of_vertices(self) -> Point:
        k = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / k for i in range(self.dimension))

    def bounding_box(self) -> Tuple[Point, Point]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.dimension))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.dimension))
        return lo, hi

    def __neg__(self) -> "ConvexPolytope":
        out = ConvexPolytope(self.dimension, tuple(R.neg(v) for v in self.vertices))
        return out

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "vertices": [R.format_point(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "ConvexPolytope":
        n = int(data["dimension"])
        return convex_hull([R.point(v) for v in data["vertices"]], n)


@dataclass(frozen=True)
class Homothety:
    """The map ``x -> ratio * x + translation``."""

    ratio: Fraction
    translation: Point

    def __post_init__(self):
        if self.ratio <= 0:
            raise ValueError("homothety ratio must be positive")

    @property
    def center(self) -> Optional[Point]:
        """Fixed point ``t / (1 - ratio)``; ``None`` for a pure translation."""
        if self.ratio == 1:
            return None
        return R.scale(1 / (1 - self.ratio), self.translation)

    def __call__(self, p: Sequence[Fraction]) -> Point:
        return tuple(self.ratio * a + b for a, b in zip(p, self.translation))


# --------------------------------------------------------------------------
# hulls


def _orient2(a: Point, b: Point, c: Point) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _orient3(a: Point, b: Point, c: Point, d: Point) -> Fraction:
    u = R.sub(b, a)
    v = R.sub(c, a)
    w = R.sub(d, a)
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def _chain2(pts: List[Point]) -> List[Point]:
    """Monotone chain on sorted distinct points; ccw, collinear points dropped."""
    if len(pts) <= 2:
        return list(pts)
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _orient2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _orient2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _affine_rank(pts: Sequence[Point]) -> int:
    if not pts:
        return -1
    base = pts[0]
    rows = [list(R.sub(p, base)) for p in pts[1:]]
    rank = 0
    ncols = len(base)
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / pr[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


def _incremental3(pts: Sequence[Point]) -> Tuple[Tuple[int, int, int], ...]:
    """Outward boundary triangles of the hull of full-dimensional distinct points."""
    p0, p1 = pts[0], pts[1]
    i2 = next(i for i in range(2, len(pts)) if any(R.cross(R.sub(p1, p0), R.sub(pts[i], p0))))
    p2 = pts[i2]
    i3 = next(i for i in range(2, len(pts)) if _orient3(p0, p1, p2, pts[i]) != 0)
    if _orient3(p0, p1, p2, pts[i3]) > 0:
        faces = {(0, i2, 1), (0, 1, i3), (1, i2, i3), (i2, 0, i3)}
    else:
        faces = {(0, 1, i2), (0, i3, 1), (1, i3, i2), (i2, i3, 0)}
    used = {0, 1, i2, i3}
    for k, p in enumerate(pts):
        if k in used:
            continue
        visible = [f for f in faces if _orient3(pts[f[0]], pts[f[1]], pts[f[2]], p) > 0]
        if not visible:
            continue
        edges = set()
        for a, b, c in visible:
            edges.update(((a, b), (b, c), (c, a)))
        faces.difference_update(visible)
        for a, b in edges:
            if (b, a) not in edges:
                faces.add((a, b, k))
    return tuple(sorted(faces))


def _hull3(pts: List[Point]) -> List[Point]:
    faces = _incremental3(pts)
    # a vertex is extreme iff its incident face normals span R^3
    normals: Dict[int, set] = {}
    for a, b, c in faces:
        nrm, _ = R.primitive(R.cross(R.sub(pts[b], pts[a]), R.sub(pts[c], pts[a])))
        for v in (a, b, c):
            normals.setdefault(v, set()).add(nrm)
    origin = (Fraction(0),) * 3
    extreme = sorted(
        v for v, ns in normals.items()
        if _affine_rank([origin] + [tuple(map(Fraction, x)) for x in ns]) == 3
    )
    return [pts[v] for v in extreme]


def _extreme_points(n: int, pts: List[Point]) -> List[Point]:
    rank = _affine_rank(pts)
    if rank == 0:
        return pts[:1]
    if rank == 1:
        return [pts[0], pts[-1]]
    if n == 2:
        return sorted(_chain2(pts))
    if rank == 2:
        # coplanar in R^3: project along a coordinate the plane is not parallel to
        base = pts[0]
        a = next(R.sub(p, base) for p in pts if p != base)
        b = next(R.sub(p, base) for p in pts if any(R.cross(a, R.sub(p, base))))
        nrm = R.cross(a, b)
        drop = next(i for i in range(3) if nrm[i] != 0)
        keep = [i for i in range(3) if i != drop]
        proj = {tuple(p[i] for i in keep): p for p in pts}
        hull2 = _chain2(sorted(proj))
        return sorted(proj[q] for q in hull2)
    return _hull3(pts)


def convex_hull(points: Iterable[Sequence], dim: Optional[int] = None) -> ConvexPolytope:
    """Polytope whose vertices are the extreme points of ``points``."""
    pts = [p if isinstance(p, tuple) and all(isinstance(c, Fraction) for c in p) else R.point(p) for p in points]
    if not pts:
        raise ValueError("convex_hull needs at least one point")
    n = dim if dim is not None else len(pts[0])
    for p in pts:
        if len(p) != n:
            raise DimensionMismatch(f"point {p} is not {n}-dimensional")
    pts = sorted(set(pts))
    return ConvexPolytope(n, tuple(_extreme_points(n, pts)))


def _build_structure(n: int, verts: Tuple[Point, ...]) -> _Structure:
    rank = _affine_rank(list(verts))
    if rank < n:
        return _Structure(rank, (), ())
    if n == 2:
        cyc = _chain2(list(verts))
        index = {v: i for i, v in enumerate(verts)}
        facets = []
        for k in range(len(cyc)):
            p, q = cyc[k], cyc[(k + 1) % len(cyc)]
            nrm, c = R.primitive((q[1] - p[1], p[0] - q[0]))
            facets.append(Facet(nrm, c * R.dot((q[1] - p[1], p[0] - q[0]), p)))
        return _Structure(2, tuple(sorted(set(facets), key=lambda f: f.normal)), (tuple(index[v] for v in cyc),))
    faces = _incremental3(verts)
    facets = set()
    for a, b, c in faces:
        raw = R.cross(R.sub(verts[b], verts[a]), R.sub(verts[c], verts[a]))
        nrm, s = R.primitive(raw)
        facets.add(Facet(nrm, s * R.dot(raw, verts[a])))
    return _Structure(3, tuple(sorted(facets, key=lambda f: f.normal)), faces)


# --------------------------------------------------------------------------
# operations


def _same_dim(a: ConvexPolytope, b: ConvexPolytope) -> None:
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"dimensions {a.dimension} and {b.dimension} differ")


def minkowski_sum(a: ConvexPolytope, b: ConvexPolytope) -> ConvexPolytope:
    _same_dim(a, b)
    return convex_hull([R.add(p, q) for p in a.vertices for q in b.vertices], a.dimension)


def reflect(a: ConvexPolytope) -> ConvexPolytope:
    out = ConvexPolytope(a.dimension, tuple(R.neg(v) for v in a.vertices))
    return out


def apply_homothety(a: ConvexPolytope, h: Homothety) -> ConvexPolytope:
    if h.ratio <= 0:
        raise ValueError("homothety ratio must be positive")
    if len(h.translation) != a.dimension:
        raise DimensionMismatch("translation dimension differs from polytope")
    out = ConvexPolytope(a.dimension, tuple(h(v) for v in a.vertices))
    # a positive homothety preserves lexicographic order, so the cached
    # structure carries over index for index
    if "_structure" in a.__dict__:
        st = a._structure
        facets = tuple(
            Facet(f.normal, h.ratio * f.offset + R.dot(f.normal, h.translation)) for f in st.facets
        )
        out.__dict__["_structure"] = _Structure(st.affine_dim, facets, st.faces)
    return out


def translate(a: ConvexPolytope, t: Sequence[Fraction]) -> ConvexPolytope:
    return apply_homothety(a, Homothety(Fraction(1), tuple(t)))


def volume(a: ConvexPolytope) -> Fraction:
    """Exact Lebesgue measure; zero for lower-dimensional polytopes."""
    st = a._structure
    if st.affine_dim < a.dimension:
        return Fraction(0)
    v = a.vertices
    if a.dimension == 2:
        cyc = st.faces[0]
        s = Fraction(0)
        for k in range(len(cyc)):
            p, q = v[cyc[k]], v[cyc[(k + 1) % len(cyc)]]
            s += p[0] * q[1] - p[1] * q[0]
        return s / 2
    ref = v[0]
    s = Fraction(0)
    for i, j, k in st.faces:
        s += _orient3(ref, v[i], v[j], v[k])
    return s / 6


def support(a: ConvexPolytope, u: Sequence[Fraction]) -> Fraction:
    if len(u) != a.dimension:
        raise DimensionMismatch("direction dimension differs from polytope")
    if not any(u):
        raise ValueError("support needs a nonzero direction")
    return max(R.dot(u, v) for v in a.vertices)


def in_hull_lp(vertices: Sequence[Point], q: Sequence[Fraction]) -> Optional[Tuple[Fraction, ...]]:
    """Convex-combination weights expressing ``q`` over ``vertices``, if any."""
    k = len(vertices)
    n = len(q)
    rows = [Constraint(tuple(v[i] for v in vertices), "=", Fraction(q[i])) for i in range(n)]
    rows.append(Constraint((Fraction(1),) * k, "=", Fraction(1)))
    res = lp_solve(LinearProgram(k, tuple(rows), nonneg=True))
    return res.x if res.feasible else None


def contains_point(a: ConvexPolytope, q: Sequence[Fraction]) -> bool:
    """Closed membership; facet test for bodies, LP otherwise."""
    if len(q) != a.dimension:
        raise DimensionMismatch("point dimension differs from polytope")
    if a.is_body:
        return all(f.value(q) <= 0 for f in a.facets)
    return in_hull_lp(a.vertices, q) is not None


def strictly_outside(a: ConvexPolytope, q: Sequence[Fraction]) -> bool:
    return not contains_point(a, q)


def common_point(polytopes: Sequence[ConvexPolytope]) -> Optional[Point]:
    """A point in every polytope (closed sets), decided by one exact LP."""
    if not polytopes:
        raise ValueError("need at least one polytope")
    n = polytopes[0].dimension
    for p in polytopes:
        if p.dimension != n:
            raise DimensionMismatch("polytopes of different dimensions")
    if all(p.is_body for p in polytopes):
        rows = tuple(
            Constraint(tuple(Fraction(c) for c in f.normal), "<=", f.offset)
            for p in polytopes
            for f in p.facets
        )
        res = lp_solve(LinearProgram(n, rows))
        return res.x if res.feasible else None
    # V-representation: x = sum_i w_i v_i for every polytope, weights convex
    sizes = [len(p.vertices) for p in polytopes]
    nv = n + sum(sizes)
    rows = []
    off = n
    for p, k in zip(polytopes, sizes):
        for i in range(n):
            coeffs = [Fraction(0)] * nv
            coeffs[i] = Fraction(-1)
            for j, v in enumerate(p.vertices):
                coeffs[off + j] = v[i]
            rows.append(Constraint(tuple(coeffs), "=", Fraction(0)))
        coeffs = [Fraction(0)] * nv
        for j in range(k):
            coeffs[off + j] = Fraction(1)
        rows.append(Constraint(tuple(coeffs), "=", Fraction(1)))
        off += k
    nonneg = (False,) * n + (True,) * (nv - n)
    res = lp_solve(LinearProgram(nv, tuple(rows), nonneg=nonneg))
    return res.x[:n] if res.feasible else None


def intersects(a: ConvexPolytope, b: ConvexPolytope) -> Optional[Point]:
    """A common point of the closed polytopes, or ``None`` when disjoint."""
    _same_dim(a, b)
    return common_point([a, b])


# --------------------------------------------------------------------------
# half-space systems


def _solve_square(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Point]:
    n = len(rows)
    m = [[Fraction(a) for a in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pr = m[col]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col] / pr[col]
                m[i] = [a - f * b for a, b in zip(m[i], pr)]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def halfspace_vertices(halfspaces: Sequence[Facet], n: int) -> List[Point]:
    """Vertices of the bounded polyhedron ``{x : normal . x <= offset}``.

    Brute-force enumeration over ``n``-subsets of bounding hyperplanes; fine
    for the handful of half-spaces met in dimensions 2 and 3.
    """
    out = set()
    hs = list(halfspaces)
    for combo in combinations(range(len(hs)), n):
        x = _solve_square([hs[i].normal for i in combo], [hs[i].offset for i in combo])
        if x is None or x in out:
            continue
        if all(h.value(x) <= 0 for h in hs):
            out.add(x)
    return sorted(out)


def prune_halfspaces(halfspaces: Sequence[Facet], vertices: Sequence[Point]) -> List[Facet]:
    """Drop half-spaces tight at no vertex; they are redundant for a bounded set."""
    seen = set()
    out = []
    for h in halfspaces:
        if h in seen:
            continue
        if any(h.value(v) == 0 for v in vertices):
            seen.add(h)
            out.append(h)
    return out


def intersection(a: ConvexPolytope, b: ConvexPolytope) -> Optional[ConvexPolytope]:
    """Exact intersection of two bodies, possibly lower dimensional."""
    _same_dim(a, b)
    a.require_body()
    b.require_body()
    verts = halfspace_vertices(list(a.facets) + list(b.facets), a.dimension)
    if not verts:
        return None
    return convex_hull(verts, a.dimension)


def interiors_meet(a: ConvexPolytope, b: ConvexPolytope) -> bool:
    """True iff the two bodies overlap in a set of positive volume."""
    _same_dim(a, b)
    n = a.dimension
    hs = list(a.require_body().facets) + list(b.require_body().facets)
    rows = tuple(Constraint(tuple(Fraction(c) for c in h.normal) + (Fraction(1),), "<=", h.offset) for h in hs)
    rows += (Constraint((Fraction(0),) * n + (Fraction(1),), "<=", Fraction(1)),)
    res = lp_solve(LinearProgram(n + 1, rows, objective=(Fraction(0),) * n + (Fraction(1),)))
    return res.status == "optimal" and res.value > 0


# --------------------------------------------------------------------------
# standard bodies


def box(lo: Sequence, hi: Sequence) -> ConvexPolytope:
    lo = R.point(lo)
    hi = R.point(hi)
    n = len(lo)
    corners = []
    for mask in range(1 << n):
        corners.append(tuple(hi[i] if mask >> i & 1 else lo[i] for i in range(n)))
    return convex_hull(corners, n)


def unit_square() -> ConvexPolytope:
    return box((0, 0), (1, 1))


def unit_cube() -> ConvexPolytope:
    return box((0, 0, 0), (1, 1, 1))


def standard_triangle() -> ConvexPolytope:
    return convex_hull([(0, 0), (1, 0), (0, 1)], 2)


def simplex(n: int) -> ConvexPolytope:
    pts = [(0,) * n] + [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    return convex_hull(pts, n)
