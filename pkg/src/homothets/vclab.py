"""Shattering experiments with exact certificates.

* :func:`shatters` and :class:`ShatterCertificate` for finite families.
* The paraboloid construction: translates of one polytope in R^3 that
  shatter ``M`` points, checked exactly by LP.
* A randomized search (floating point, every hit re-verified exactly) for
  homothets of a planar body realizing prescribed point subsets, and the
  four-point falsification suite built on it.
* Strict antipodality and the family of pairwise touching translates.
* Dual shattering lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from . import rational as R
from .family import (
    DEFAULT_CAP,
    HomothetFamily,
    exact_independence_number,
    exact_transversal,
    intersection_graph,
)
from .geometry import (
    ConvexPolytope,
    Homothety,
    apply_homothety,
    common_point,
    contains_point,
    convex_hull,
    in_hull_lp,
)
from .lp import Constraint, LinearProgram, lp_solve
from .rational import Point

MAX_SHATTER_POINTS = 20
MAX_PARABOLOID_M = 8


class SizeCapExceeded(ValueError):
    pass


class ConstructionFalsified(AssertionError):
    """An exact membership test disagreed with the paraboloid construction."""


# --------------------------------------------------------------------------
# shattering


@dataclass(frozen=True)
class ShatterCertificate:
    points: Tuple[Point, ...]
    witnesses: Dict[FrozenSet[int], int]  # subset of point indices -> member index

    def validate(self, bodies: Sequence[ConvexPolytope]) -> bool:
        k = len(self.points)
        if len(self.witnesses) != 1 << k:
            return False
        for subset, i in self.witnesses.items():
            trace = frozenset(j for j, p in enumerate(self.points) if contains_point(bodies[i], p))
            if trace != subset:
                return False
        return True

    def restrict(self, keep: Sequence[int]) -> "ShatterCertificate":
        """Certificate for the sub-configuration ``keep`` (indices into points)."""
        keep = list(keep)
        pos = {j: r for r, j in enumerate(keep)}
        wit = {}
        for r in range(len(keep) + 1):
            for sub in combinations(keep, r):
                wit[frozenset(pos[j] for j in sub)] = self.witnesses[frozenset(sub)]
        return ShatterCertificate(tuple(self.points[j] for j in keep), wit)

    def to_json(self) -> dict:
        return {
            "points": [R.format_point(p) for p in self.points],
            "witnesses": [
                {"subset": sorted(s), "member": i}
                for s, i in sorted(self.witnesses.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
            ],
        }


def _bodies(fam) -> Sequence[ConvexPolytope]:
    return fam.bodies if isinstance(fam, HomothetFamily) else fam


def traces(fam, points: Sequence[Point]) -> List[FrozenSet[int]]:
    return [
        frozenset(j for j, p in enumerate(points) if contains_point(b, p)) for b in _bodies(fam)
    ]


def shatters(fam, points: Sequence[Sequence]) -> Optional[ShatterCertificate]:
    """Certificate that ``fam`` (a family or a list of polytopes) shatters ``points``."""
    pts = tuple(R.point(p) for p in points)
    if len(pts) > MAX_SHATTER_POINTS:
        raise SizeCapExceeded(f"at most {MAX_SHATTER_POINTS} points can be enumerated")
    wit: Dict[FrozenSet[int], int] = {}
    for i, t in enumerate(traces(fam, pts)):
        wit.setdefault(t, i)
    if len(wit) < 1 << len(pts):
        return None
    return ShatterCertificate(pts, wit)


# --------------------------------------------------------------------------
# paraboloid construction


def subset_of_index(n: int) -> FrozenSet[int]:
    """The bijection from positive integers to finite subsets: bits of ``n - 1``."""
    k = n - 1
    return frozenset(i + 1 for i in range(k.bit_length()) if k >> i & 1)


def u_point(m: int) -> Point:
    return (Fraction(1, m), Fraction(0), Fraction(1, m * m))


def v_point(n: int) -> Point:
    return (Fraction(0), Fraction(1, n), Fraction(1, n * n))


@dataclass(frozen=True)
class ParaboloidInstance:
    M: int
    pairs: Tuple[Tuple[int, int], ...]  # (m, n) with m in E(n), m <= M, n <= 2^M
    generators: Tuple[Point, ...]  # u_m + v_n for each pair, same order
    body: ConvexPolytope
    points: Tuple[Point, ...]  # u_1 .. u_M

    @property
    def size(self) -> int:
        return 1 << self.M

    @property
    def family(self) -> HomothetFamily:
        """Translates ``body - v_n`` for ``n = 1 .. 2^M``."""
        return HomothetFamily.translates(self.body, [R.neg(v_point(n)) for n in range(1, self.size + 1)])

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "generators": [R.format_point(g) for g in self.generators],
            "pairs": [list(p) for p in self.pairs],
            "translations": [R.format_point(R.neg(v_point(n))) for n in range(1, self.size + 1)],
            "points": [R.format_point(p) for p in self.points],
        }


def build_paraboloid(M: int) -> ParaboloidInstance:
    if not 1 <= M <= MAX_PARABOLOID_M:
        raise ValueError(f"M must lie in 1..{MAX_PARABOLOID_M}")
    pairs = tuple(
        (m, n) for n in range(1, (1 << M) + 1) for m in sorted(subset_of_index(n)) if m <= M
    )
    gens = tuple(R.add(u_point(m), v_point(n)) for m, n in pairs)
    # every generator lies on the strictly convex paraboloid z = x^2 + y^2,
    # hence all of them are extreme points of their hull
    body = ConvexPolytope(3, gens)
    return ParaboloidInstance(M, pairs, gens, body, tuple(u_point(m) for m in range(1, M + 1)))


def on_paraboloid(p: Sequence[Fraction]) -> bool:
    return p[2] == p[0] * p[0] + p[1] * p[1]


def verify_paraboloid(inst: ParaboloidInstance) -> ShatterCertificate:
    """Check every ``u_m + v_n`` against the hull by LP and assemble the certificate.

    Raises :class:`ConstructionFalsified` if membership ever disagrees with
    the pair set.
    """
    pairs = set(inst.pairs)
    gens = list(inst.generators)
    wit: Dict[FrozenSet[int], int] = {}
    for n in range(1, inst.size + 1):
        trace = set()
        for m in range(1, inst.M + 1):
            inside = in_hull_lp(gens, R.add(u_point(m), v_point(n))) is not None
            if inside != ((m, n) in pairs):
                raise ConstructionFalsified(f"membership of u_{m} + v_{n} contradicts the pair set")
            if inside:
                trace.add(m - 1)
        key = frozenset(trace)
        if key != frozenset(m - 1 for m in subset_of_index(n) if m <= inst.M):
            raise ConstructionFalsified(f"trace of member {n} is not its assigned subset")
        wit.setdefault(key, n - 1)
    if len(wit) != inst.size:
        raise ConstructionFalsified("some subset of the points is not realized")
    return ShatterCertificate(inst.points, wit)


# --------------------------------------------------------------------------
# randomized search over planar homothets


@dataclass(frozen=True)
class Fit:
    homothety: Homothety
    body: ConvexPolytope


def _float_facets(k: ConvexPolytope) -> Tuple[np.ndarray, np.ndarray]:
    a = np.array([[float(c) for c in f.normal] for f in k.facets])
    b = np.array([float(f.offset) for f in k.facets])
    return a, b


def _exact_fit(
    k: ConvexPolytope, lam: float, t: Sequence[float], include: Sequence[Point], exclude: Sequence[Point]
) -> Optional[Fit]:
    h = Homothety(Fraction(lam), tuple(Fraction(x) for x in t))
    body = apply_homothety(k, h)
    if all(contains_point(body, p) for p in include) and not any(contains_point(body, p) for p in exclude):
        return Fit(h, body)
    return None


def fit_homothet(
    k: ConvexPolytope,
    include: Sequence[Sequence],
    exclude: Sequence[Sequence],
    budget: int = 2048,
    seed: int = 0,
    batch: int = 512,
    guided: int = 64,
) -> Optional[Fit]:
    """Search for ``lam * k + t`` containing ``include`` and missing ``exclude``.

    Candidates are sampled in floating point: ``lam`` log-uniform in
    [1/8, 8], and ``t`` either places the body's vertex centroid in the
    include points' bounding box or pins a random point of the body onto a
    random include point. If sampling misses, up to ``guided`` margin LPs
    are tried (see :func:`_guided_fit`). A hit is returned only after exact
    verification; ``None`` proves nothing.
    """
    if k.dimension != 2:
        raise ValueError("fit_homothet works in the plane")
    k.require_body()
    inc = [R.point(p) for p in include]
    exc = [R.point(p) for p in exclude]
    a, b = _float_facets(k)
    verts = np.array([[float(c) for c in v] for v in k.vertices])
    centroid = verts.mean(axis=0)
    inc_f = np.array([[float(c) for c in p] for p in inc]).reshape(-1, 2)
    exc_f = np.array([[float(c) for c in p] for p in exc]).reshape(-1, 2)
    ref = inc_f if len(inc_f) else (exc_f if len(exc_f) else np.zeros((1, 2)))
    lo, hi = ref.min(axis=0), ref.max(axis=0)
    pad = 0.25 * max(float((hi - lo).max()), 1.0)
    if not len(inc_f):
        pad *= 8
    lo, hi = lo - pad, hi + pad
    scale = float(np.abs(b).max()) + float(np.abs(a).max()) * float(np.abs(np.concatenate([ref, verts])).max() + 1)
    tol = 1e-9 * scale
    rng = np.random.default_rng(seed)
    done = 0
    while done < budget:
        size = min(batch, budget - done)
        done += size
        lam = np.exp(rng.uniform(math.log(1 / 8), math.log(8), size))
        t = rng.uniform(lo, hi, (size, 2)) - lam[:, None] * centroid
        if len(inc_f):
            anchored = rng.random(size) < 0.5
            w = rng.dirichlet(np.ones(len(verts)), size)
            kpt = w @ verts
            pin = inc_f[rng.integers(0, len(inc_f), size)]
            t = np.where(anchored[:, None], pin - lam[:, None] * kpt, t)
        ok = np.ones(size, dtype=bool)
        # p in lam*K + t  <=>  a.(p - t) <= lam * b for every facet
        for p in inc_f:
            slack = (p[None, :] - t) @ a.T - lam[:, None] * b[None, :]
            ok &= slack.max(axis=1) <= -tol
        for p in exc_f:
            slack = (p[None, :] - t) @ a.T - lam[:, None] * b[None, :]
            ok &= slack.max(axis=1) >= tol
        for i in np.flatnonzero(ok):
            fit = _exact_fit(k, float(lam[i]), t[i], inc, exc)
            if fit is not None:
                return fit
    if len(inc_f):
        return _guided_fit(k, a, b, inc, exc, inc_f, exc_f, guided)
    return None


def _guided_fit(k, a, b, inc, exc, inc_f, exc_f, attempts) -> Optional[Fit]:
    """Margin LPs in (lam, t) with one separating facet fixed per excluded point.

    For each excluded point the four facets facing most directly from the
    include points towards it are candidates; combinations are tried in
    order of total rank.
    """
    norms = np.linalg.norm(a, axis=1)
    an, bn = a / norms[:, None], b / norms
    centre = inc_f.mean(axis=0)
    ranked = [np.argsort(-(an @ (e - centre)), kind="stable")[:4] for e in exc_f]
    order = sorted(product(*(range(len(r)) for r in ranked)), key=lambda c: (sum(c), c))
    combos = [tuple(r[j] for r, j in zip(ranked, c)) for c in order]
    # variables: lam, t1, t2, margin
    inc_rows = [np.concatenate(([-bn[i]], -an[i], [1.0])) for _ in inc_f for i in range(len(an))]
    inc_rhs = [-(an[i] @ p) for p in inc_f for i in range(len(an))]
    for combo in combos[:attempts]:
        rows = list(inc_rows)
        rhs = list(inc_rhs)
        for e, i in zip(exc_f, combo):
            rows.append(np.concatenate(([bn[i]], an[i], [1.0])))
            rhs.append(an[i] @ e)
        res = linprog(
            c=[0, 0, 0, -1],
            A_ub=np.array(rows),
            b_ub=np.array(rhs),
            bounds=[(1 / 8, 8), (None, None), (None, None), (None, 1)],
            method="highs",
        )
        if res.status != 0 or -res.fun <= 1e-9:
            continue
        lam, t1, t2, _ = res.x
        fit = _exact_fit(k, float(lam), (float(t1), float(t2)), inc, exc)
        if fit is not None:
            return fit
    return None


def hull_position(points: Sequence[Point]) -> Optional[int]:
    """Index of a point lying in the (closed) hull of the others, if any."""
    pts = [R.point(p) for p in points]
    for i, p in enumerate(pts):
        rest = pts[:i] + pts[i + 1 :]
        if len(p) == 2 and len(rest) == 3 and _orient(*rest) != 0:
            inside = _in_triangle(rest, p)
        else:
            inside = contains_point(convex_hull(rest, len(p)), p)
        if inside:
            return i
    return None


def _orient(a: Point, b: Point, c: Point) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _in_triangle(tri: Sequence[Point], p: Point) -> bool:
    a, b, c = tri
    signs = (_orient(a, b, p), _orient(b, c, p), _orient(c, a, p))
    return all(x >= 0 for x in signs) or all(x <= 0 for x in signs)


def _ccw_order(points: Sequence[Point]) -> List[int]:
    c = tuple(sum(p[i] for p in points) / len(points) for i in range(2))
    return sorted(range(len(points)), key=lambda i: math.atan2(float(points[i][1] - c[1]), float(points[i][0] - c[0])))


def shatter_with_fits(
    k: ConvexPolytope,
    points: Sequence[Point],
    budget: int = 2048,
    seed: int = 0,
    order: Optional[Sequence[FrozenSet[int]]] = None,
    guided: int = 64,
) -> Tuple[Optional[ShatterCertificate], Optional[FrozenSet[int]], List[Fit]]:
    """Try to realize every subset of ``points`` by a homothet of ``k``.

    Returns ``(certificate, first failing subset, fits found)``. The subsets
    are tried in ``order`` (all subsets by size otherwise) and the search
    stops at the first one the heuristic cannot realize.
    """
    pts = [R.point(p) for p in points]
    idx = range(len(pts))
    if order is None:
        order = [frozenset(s) for r in range(len(pts) + 1) for s in combinations(idx, r)]
    seeds = np.random.SeedSequence(seed).generate_state(len(order))
    fits: List[Fit] = []
    wit: Dict[FrozenSet[int], int] = {}
    for s, sd in zip(order, seeds):
        inc = [pts[j] for j in sorted(s)]
        exc = [pts[j] for j in idx if j not in s]
        fit = fit_homothet(k, inc, exc, budget=budget, seed=int(sd), guided=guided)
        if fit is None:
            return None, s, fits
        wit[s] = len(fits)
        fits.append(fit)
    cert = ShatterCertificate(tuple(pts), wit)
    if not cert.validate([f.body for f in fits]):
        raise AssertionError("fit-based certificate failed exact validation")
    return cert, None, fits


@dataclass
class FourPointReport:
    trials: int
    hull_rejections: int = 0
    search_rejections: int = 0
    counterexample: Optional[ShatterCertificate] = None
    counterexample_bodies: Optional[List[ConvexPolytope]] = None

    def to_json(self) -> dict:
        out = {
            "trials": self.trials,
            "hullRejections": self.hull_rejections,
            "searchRejections": self.search_rejections,
            "counterexample": None,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
        return out


def random_dyadic_points(rng: np.random.Generator, count: int, bits: int = 10) -> List[Point]:
    den = 1 << bits
    raw = rng.integers(0, den + 1, size=(count, 2))
    return [(Fraction(int(x), den), Fraction(int(y), den)) for x, y in raw]


def search_four_points_2d(
    k: ConvexPolytope, trials: int, seed: int, budget: int = 1024, guided: int = 4
) -> FourPointReport:
    """Look for four points shattered by homothets of ``k``.

    Configurations with one point in the hull of the others are rejected
    outright (the complementary triple cannot be cut off). Otherwise the
    two diagonal pairs are tried first, then the remaining subsets. A
    counterexample is reported only with an exactly verified certificate.
    """
    report = FourPointReport(trials)
    root = np.random.SeedSequence(seed)
    for trial_seed in root.spawn(trials):
        rng = np.random.default_rng(trial_seed)
        pts = random_dyadic_points(rng, 4)
        if len(set(pts)) < 4 or hull_position(pts) is not None:
            report.hull_rejections += 1
            continue
        a, b, c, d = _ccw_order(pts)
        first = [frozenset((a, c)), frozenset((b, d))]
        rest = [frozenset(s) for r in range(5) for s in combinations(range(4), r) if frozenset(s) not in first]
        cert, failed, fits = shatter_with_fits(
            k, pts, budget=budget, seed=int(rng.integers(2**32)), order=first + rest, guided=guided
        )
        if cert is None:
            report.search_rejections += 1
            continue
        report.counterexample = cert
        report.counterexample_bodies = [f.body for f in fits]
        break
    return report


# --------------------------------------------------------------------------
# strict antipodality and touching translates


@dataclass(frozen=True)
class AntipodalWitness:
    pair: Tuple[Point, Point]
    direction: Point

    def validate(self, s: Sequence[Point]) -> bool:
        top, bottom = self.pair
        u = self.direction
        hi = R.dot(u, top)
        lo = R.dot(u, bottom)
        return all(R.dot(u, x) < hi for x in s if x != top) and all(
            R.dot(u, x) > lo for x in s if x != bottom
        )


def antipodal_direction(s: Sequence[Point], i: int, j: int) -> Optional[Point]:
    """Direction making ``s[i]`` the unique maximiser and ``s[j]`` the unique minimiser.

    Maximises the smallest gap over ``u`` in the unit box and accepts only a
    strictly positive optimum.
    """
    n = len(s[0])
    rows = []
    for r, x in enumerate(s):
        if r != i:
            rows.append(Constraint(R.sub(s[i], x) + (Fraction(-1),), ">=", Fraction(0)))
        if r != j:
            rows.append(Constraint(R.sub(x, s[j]) + (Fraction(-1),), ">=", Fraction(0)))
    for k in range(n):
        e = tuple(Fraction(int(k == c)) for c in range(n)) + (Fraction(0),)
        rows.append(Constraint(e, "<=", Fraction(1)))
        rows.append(Constraint(e, ">=", Fraction(-1)))
    res = lp_solve(LinearProgram(n + 1, tuple(rows), objective=(Fraction(0),) * n + (Fraction(1),)))
    if res.status != "optimal" or res.value <= 0:
        return None
    return res.x[:n]


def is_strictly_antipodal(points: Sequence[Sequence]) -> Optional[Dict[Tuple[int, int], AntipodalWitness]]:
    s = [R.point(p) for p in points]
    if len(s) < 2:
        raise ValueError("need at least two points")
    if len(set(s)) != len(s):
        raise ValueError("points must be distinct")
    out = {}
    for i, j in combinations(range(len(s)), 2):
        u = antipodal_direction(s, i, j)
        if u is None:
            return None
        out[(i, j)] = AntipodalWitness((s[i], s[j]), u)
    return out


def _extent_is_point(bodies: Sequence[ConvexPolytope], target: Point) -> bool:
    """Every coordinate is pinned to ``target`` over the common part of ``bodies``."""
    n = len(target)
    sizes = [len(b.vertices) for b in bodies]
    nv = n + sum(sizes)
    base_rows = []
    off = n
    for b, k in zip(bodies, sizes):
        for c in range(n):
            coeffs = [Fraction(0)] * nv
            coeffs[c] = Fraction(-1)
            for r, v in enumerate(b.vertices):
                coeffs[off + r] = v[c]
            base_rows.append(Constraint(tuple(coeffs), "=", Fraction(0)))
        coeffs = [Fraction(0)] * nv
        for r in range(k):
            coeffs[off + r] = Fraction(1)
        base_rows.append(Constraint(tuple(coeffs), "=", Fraction(1)))
        off += k
    nonneg = (False,) * n + (True,) * (nv - n)
    for c in range(n):
        obj = tuple(Fraction(int(r == c)) for r in range(nv))
        for maximize in (True, False):
            res = lp_solve(LinearProgram(nv, tuple(base_rows), objective=obj, maximize=maximize, nonneg=nonneg))
            if res.status != "optimal" or res.value != target[c]:
                return False
    return True


@dataclass
class TouchingReport:
    points: Tuple[Point, ...]
    contact_in_both: bool
    single_point: bool
    no_triple: bool
    nu_exact: Optional[int] = None
    tau_exact: Optional[int] = None

    @property
    def tau_lower(self) -> int:
        return math.ceil(len(self.points) / 2)

    @property
    def ok(self) -> bool:
        ok = self.contact_in_both and self.single_point and self.no_triple
        if self.nu_exact is not None:
            ok = ok and self.nu_exact == 1
        if self.tau_exact is not None:
            ok = ok and self.tau_exact >= self.tau_lower
        return ok

    def to_json(self) -> dict:
        return {
            "points": [R.format_point(p) for p in self.points],
            "contactInBoth": self.contact_in_both,
            "singlePointContacts": self.single_point,
            "noTripleIntersection": self.no_triple,
            "nuExact": self.nu_exact,
            "tauExact": self.tau_exact,
            "tauLowerBound": self.tau_lower,
            "verified": self.ok,
        }


def build_touching_family(
    points: Sequence[Sequence], limit: int = DEFAULT_CAP
) -> Tuple[HomothetFamily, TouchingReport]:
    """Translates ``conv(S) + s`` for a strictly antipodal ``S``, with exact checks.

    For each pair the report confirms that ``x1 + x2`` lies in both
    translates and that the antipodal direction pins the contact down to
    that single point (cross-checked by optimising every coordinate over the
    intersection); it also confirms that no three translates share a point.
    """
    s = [R.point(p) for p in points]
    wit = is_strictly_antipodal(s)
    if wit is None:
        raise ValueError("points are not strictly antipodal")
    k = convex_hull(s, len(s[0]))
    fam = HomothetFamily.translates(k, s)
    bodies = fam.bodies
    in_both = True
    single = True
    for (i, j), w in wit.items():
        contact = R.add(s[i], s[j])
        in_both &= contains_point(bodies[i], contact) and contains_point(bodies[j], contact)
        u = w.direction
        level = R.dot(u, contact)
        # K + x_j lies below the level through the contact, K + x_i above it,
        # and each meets that level only at the contact
        above = [R.dot(u, v) for v in bodies[i].vertices]
        below = [R.dot(u, v) for v in bodies[j].vertices]
        single &= min(above) == level and above.count(level) == 1
        single &= max(below) == level and below.count(level) == 1
        single &= _extent_is_point([bodies[i], bodies[j]], contact)
    no_triple = all(common_point([bodies[a], bodies[b], bodies[c]]) is None for a, b, c in combinations(range(len(s)), 3))
    report = TouchingReport(tuple(s), in_both, single, no_triple)
    if len(fam) <= limit:
        g = intersection_graph(fam)
        report.nu_exact = exact_independence_number(fam, limit, g)[0]
        report.tau_exact = exact_transversal(fam, limit, g)[0]
    return fam, report


# --------------------------------------------------------------------------
# dual shattering


@dataclass(frozen=True)
class DualWitness:
    members: Tuple[int, ...]
    witnesses: Dict[Tuple[bool, ...], Point]  # membership pattern -> sample point

    @property
    def k(self) -> int:
        return len(self.members)

    def validate(self, fam) -> bool:
        bodies = _bodies(fam)
        if len(self.witnesses) != 1 << self.k:
            return False
        return all(
            tuple(contains_point(bodies[i], p) for i in self.members) == pattern
            for pattern, p in self.witnesses.items()
        )

    def to_json(self) -> dict:
        return {
            "members": list(self.members),
            "witnesses": [
                {"pattern": [int(b) for b in pat], "point": R.format_point(p)}
                for pat, p in sorted(self.witnesses.items())
            ],
        }


def membership_matrix(fam, samples: Sequence[Point]) -> List[Tuple[bool, ...]]:
    bodies = _bodies(fam)
    return [tuple(contains_point(b, p) for b in bodies) for p in samples]


def dual_shatter_lower(
    fam, k: int, samples: Sequence[Sequence], max_subsets: int = 20000, matrix=None
) -> Optional[DualWitness]:
    """Find ``k`` members and samples realizing all ``2^k`` membership patterns.

    Success certifies that the dual VC-dimension is at least ``k``; failure
    proves nothing.
    """
    bodies = _bodies(fam)
    if k > len(bodies):
        raise ValueError("k exceeds the number of members")
    pts = [R.point(p) for p in samples]
    rows = matrix if matrix is not None else membership_matrix(bodies, pts)
    for tried, subset in enumerate(combinations(range(len(bodies)), k)):
        if tried >= max_subsets:
            break
        seen: Dict[Tuple[bool, ...], Point] = {}
        for p, row in zip(pts, rows):
            seen.setdefault(tuple(row[i] for i in subset), p)
        if len(seen) == 1 << k:
            return DualWitness(subset, seen)
    return None


def max_dual_witness(fam, samples: Sequence[Sequence], max_subsets: int = 20000) -> Optional[DualWitness]:
    """Largest ``k`` reached by :func:`dual_shatter_lower` on ``samples``."""
    bodies = _bodies(fam)
    pts = [R.point(p) for p in samples]
    rows = membership_matrix(bodies, pts)
    best = None
    for k in range(1, len(bodies) + 1):
        if 1 << k > len(pts):
            break
        w = dual_shatter_lower(bodies, k, pts, max_subsets, rows)
        if w is None:
            break
        best = w
    return best


def paraboloid_samples(inst: ParaboloidInstance) -> List[Point]:
    """The shattered points plus every generator pulled back by every ``v_n``."""
    out = list(inst.points)
    seen = set(out)
    for g in inst.generators:
        for n in range(1, inst.size + 1):
            p = R.sub(g, v_point(n))
            if p not in seen:
                seen.add(p)
                out.append(p)
    return out


def duality_consistent(primal: int, dual: int) -> bool:
    """The exhibited sizes respect ``vcdim < 2^(dual vcdim + 1)``."""
    return primal < 2 ** (dual + 1)
