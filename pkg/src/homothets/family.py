"""Finite families of positive homothets of one convex body.

Exact oracles for the independence and transversal numbers, the greedy
transversal built from coverings, and the bound report tying them to the
volume constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import rational as R
from .covering import LOG_CONVENTION, Cover, rz_factor, tile_cover
from .geometry import (
    ConvexPolytope,
    Facet,
    Homothety,
    apply_homothety,
    common_point,
    contains_point,
    halfspace_vertices,
    intersects,
    minkowski_sum,
    prune_halfspaces,
    reflect,
    translate,
    volume,
)
from .rational import Point

DEFAULT_CAP = 15
DEFAULT_EPSILON = Fraction(1, 100)


class CapExceeded(ValueError):
    """The family is larger than an exact oracle's member cap."""


class CertificateError(AssertionError):
    pass


@dataclass(frozen=True)
class Member:
    ratio: Fraction
    center: Point

    def to_json(self) -> dict:
        return {"lambda": R.format_rational(self.ratio), "center": R.format_point(self.center)}


@dataclass(frozen=True)
class HomothetFamily:
    """Members ``ratio * base + center``."""

    base: ConvexPolytope
    members: Tuple[Member, ...]

    def __post_init__(self):
        for m in self.members:
            if m.ratio <= 0:
                raise ValueError("member ratios must be positive")
            if len(m.center) != self.base.dimension:
                raise ValueError("member center has wrong dimension")

    @classmethod
    def of(cls, base: ConvexPolytope, members: Sequence[Tuple]) -> "HomothetFamily":
        return cls(base, tuple(Member(R.to_rational(lam), R.point(x)) for lam, x in members))

    @classmethod
    def translates(cls, base: ConvexPolytope, centers: Sequence[Sequence]) -> "HomothetFamily":
        return cls.of(base, [(1, c) for c in centers])

    @property
    def dimension(self) -> int:
        return self.base.dimension

    @property
    def translates_only(self) -> bool:
        return len({m.ratio for m in self.members}) <= 1

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def bodies(self) -> Tuple[ConvexPolytope, ...]:
        self.base.facets  # build the base structure once; members inherit it
        return tuple(apply_homothety(self.base, Homothety(m.ratio, m.center)) for m in self.members)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "body": self.base.to_json(),
            "members": [m.to_json() for m in self.members],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HomothetFamily":
        base = ConvexPolytope.from_json(data["body"])
        if int(data.get("dimension", base.dimension)) != base.dimension:
            raise ValueError("family dimension disagrees with its body")
        return cls.of(base, [(m["lambda"], m["center"]) for m in data["members"]])


@dataclass(frozen=True)
class TransversalCertificate:
    points: Tuple[Point, ...]
    assignment: Tuple[int, ...]  # member index -> point index

    def validate(self, fam: HomothetFamily) -> bool:
        if len(self.assignment) != len(fam):
            return False
        return all(contains_point(b, self.points[k]) for b, k in zip(fam.bodies, self.assignment))

    def to_json(self) -> dict:
        return {"points": [R.format_point(p) for p in self.points], "assignment": list(self.assignment)}


@dataclass(frozen=True)
class IndependenceCertificate:
    indices: Tuple[int, ...]

    def validate(self, fam: HomothetFamily) -> bool:
        b = fam.bodies
        return all(intersects(b[i], b[j]) is None for i, j in combinations(self.indices, 2))

    def to_json(self) -> dict:
        return {"indices": list(self.indices)}


@dataclass(frozen=True)
class IntersectionGraph:
    adjacency: Tuple[FrozenSet[int], ...]
    witnesses: Dict[Tuple[int, int], Point] = field(compare=False)

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, nb in enumerate(self.adjacency) for j in sorted(nb) if i < j]


def intersection_graph(fam: HomothetFamily) -> IntersectionGraph:
    """Edge ``(i, j)`` iff members ``i`` and ``j`` share a point."""
    b = fam.bodies
    adj = [set() for _ in b]
    wit = {}
    for i, j in combinations(range(len(b)), 2):
        x = intersects(b[i], b[j])
        if x is not None:
            adj[i].add(j)
            adj[j].add(i)
            wit[(i, j)] = x
    return IntersectionGraph(tuple(frozenset(a) for a in adj), wit)


def _graph(fam: HomothetFamily, graph: Optional[IntersectionGraph]) -> IntersectionGraph:
    return graph if graph is not None else intersection_graph(fam)


def greedy_max_independent(
    fam: HomothetFamily, graph: Optional[IntersectionGraph] = None
) -> IndependenceCertificate:
    """Scan members in index order, keeping each one disjoint from all kept so far."""
    g = _graph(fam, graph)
    chosen: List[int] = []
    for i in range(len(fam)):
        if not any(j in g.adjacency[i] for j in chosen):
            chosen.append(i)
    return IndependenceCertificate(tuple(chosen))


def _check_cap(fam: HomothetFamily, limit: int) -> None:
    if len(fam) > limit:
        raise CapExceeded(f"family has {len(fam)} members, oracle cap is {limit}")


def exact_independence_number(
    fam: HomothetFamily, limit: int = DEFAULT_CAP, graph: Optional[IntersectionGraph] = None
) -> Tuple[int, IndependenceCertificate]:
    _check_cap(fam, limit)
    g = _graph(fam, graph)
    best: List[int] = []

    def branch(chosen: List[int], cand: List[int]) -> None:
        nonlocal best
        if len(chosen) + len(cand) <= len(best):
            return
        if not cand:
            best = list(chosen)
            return
        v, rest = cand[0], cand[1:]
        branch(chosen + [v], [u for u in rest if u not in g.adjacency[v]])
        branch(chosen, rest)

    branch([], list(range(len(fam))))
    return len(best), IndependenceCertificate(tuple(best))


def _member_halfspaces(fam: HomothetFamily, i: int) -> List[Facet]:
    return list(fam.bodies[i].facets)


def maximal_intersecting_subfamilies(
    fam: HomothetFamily, graph: Optional[IntersectionGraph] = None
) -> List[Tuple[Tuple[int, ...], Point]]:
    """All inclusion-maximal subfamilies with a common point, each with a witness.

    Depth-first over index-increasing extensions. A candidate must meet every
    member already chosen, and every ``(n+1)``-subset containing it must
    have a common point (Helly filter) before the exact test.
    """
    g = _graph(fam, graph)
    n = fam.dimension
    m = len(fam)
    feasible: Dict[FrozenSet[int], Tuple[List[Facet], List[Point]]] = {}

    exact_clip = fam.base.is_body

    def extend(chosen: Tuple[int, ...], hs: List[Facet], j: int) -> Optional[Tuple[List[Facet], List[Point]]]:
        """Region of ``chosen + (j,)`` as pruned half-spaces and its vertices."""
        if not exact_clip:
            # lower-dimensional base: no facets, one LP per node instead
            x = common_point([fam.bodies[i] for i in chosen + (j,)])
            return None if x is None else ([], [x])
        cand = hs + _member_halfspaces(fam, j)
        verts = halfspace_vertices(cand, n)
        if not verts:
            return None
        return prune_halfspaces(cand, verts), verts

    small: Dict[FrozenSet[int], bool] = {}

    def small_feasible(key: FrozenSet[int]) -> bool:
        if key not in small:
            *rest, last = sorted(key)
            hs = [h for i in rest for h in _member_halfspaces(fam, i)] if exact_clip else []
            small[key] = extend(tuple(rest), hs, last) is not None
        return small[key]

    def helly_ok(chosen: Tuple[int, ...], j: int) -> bool:
        if len(chosen) < n + 1:
            return True
        return all(small_feasible(frozenset(sub + (j,))) for sub in combinations(chosen, n))

    def dfs(chosen: Tuple[int, ...], hs: List[Facet]) -> None:
        start = chosen[-1] + 1 if chosen else 0
        for j in range(start, m):
            if any(j not in g.adjacency[i] for i in chosen):
                continue
            if not helly_ok(chosen, j):
                continue
            res = extend(chosen, hs, j)
            if res is None:
                continue
            nxt = chosen + (j,)
            feasible[frozenset(nxt)] = res
            dfs(nxt, res[0])

    dfs((), [])
    out = []
    for key, (_, verts) in feasible.items():
        if any(k not in key and (key | {k}) in feasible for k in range(m)):
            continue
        out.append((tuple(sorted(key)), verts[0]))
    out.sort()
    return out


def _min_set_cover(universe: int, sets: Sequence[FrozenSet[int]]) -> List[int]:
    """Exact minimum cover of ``range(universe)`` by ``sets`` (indices returned)."""
    containing = [[s for s, members in enumerate(sets) if e in members] for e in range(universe)]
    # greedy cover as the initial incumbent
    left = set(range(universe))
    best: List[int] = []
    while left:
        s = max(range(len(sets)), key=lambda k: (len(sets[k] & left), -k))
        best.append(s)
        left -= sets[s]
    biggest = max(len(s) for s in sets)

    def branch(uncovered: FrozenSet[int], chosen: List[int]) -> None:
        nonlocal best
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + math.ceil(len(uncovered) / biggest) >= len(best):
            return
        e = min(uncovered, key=lambda x: (len(containing[x]), x))
        for s in sorted(containing[e], key=lambda k: (-len(sets[k] & uncovered), k)):
            branch(uncovered - sets[s], chosen + [s])

    branch(frozenset(range(universe)), [])
    return sorted(best)


def exact_transversal(
    fam: HomothetFamily, limit: int = DEFAULT_CAP, graph: Optional[IntersectionGraph] = None
) -> Tuple[int, TransversalCertificate]:
    """Minimum piercing set via maximal intersecting subfamilies and set cover."""
    _check_cap(fam, limit)
    if len(fam) == 0:
        return 0, TransversalCertificate((), ())
    subs = maximal_intersecting_subfamilies(fam, graph)
    sets = [frozenset(s) for s, _ in subs]
    chosen = _min_set_cover(len(fam), sets)
    points = tuple(subs[k][1] for k in chosen)
    assignment = []
    for i in range(len(fam)):
        assignment.append(next(r for r, k in enumerate(chosen) if i in sets[k]))
    cert = TransversalCertificate(points, tuple(assignment))
    if not cert.validate(fam):
        raise CertificateError("exact transversal failed to validate")
    return len(points), cert


@dataclass(frozen=True)
class Group:
    anchor: int  # the member K_i or F_i the group is built around
    members: Tuple[int, ...]
    ratio: Fraction  # smallest ratio in the group; the tile is -ratio * base
    residual_min: Fraction  # smallest ratio left when the anchor was chosen
    points: Tuple[Point, ...]  # translations of the cover, a transversal of the group

    def to_json(self) -> dict:
        return {
            "anchor": self.anchor,
            "members": list(self.members),
            "lambda": R.format_rational(self.ratio),
            "residualMin": R.format_rational(self.residual_min),
            "points": len(self.points),
        }


@dataclass(frozen=True)
class GreedyTransversal:
    certificate: TransversalCertificate
    groups: Tuple[Group, ...]
    branch: str  # "translates" or "homothets"

    @property
    def size(self) -> int:
        return len(self.certificate.points)


def s_minus_k(s: ConvexPolytope, k: ConvexPolytope) -> ConvexPolytope:
    """``S + (-K)``: the translations ``x`` with ``K + x`` meeting ``S``."""
    return minkowski_sum(s, reflect(k))


def _group_cover(
    fam: HomothetFamily, anchor: int, ratio: Fraction, cache: Dict[Tuple[Fraction, Fraction], Cover]
) -> Tuple[Point, ...]:
    """Translations ``T`` with ``F - ratio*K`` covered by ``T - ratio*K``."""
    m = fam.members[anchor]
    key = (m.ratio, ratio)
    if key not in cache:
        tile = reflect(apply_homothety(fam.base, Homothety(ratio, R.zero(fam.dimension))))
        scaled = apply_homothety(fam.base, Homothety(m.ratio, R.zero(fam.dimension)))
        cache[key] = tile_cover(minkowski_sum(scaled, tile), tile)
    return tuple(R.add(t, m.center) for t in cache[key].translations)


def greedy_transversal(
    fam: HomothetFamily,
    epsilon: Fraction = DEFAULT_EPSILON,
    graph: Optional[IntersectionGraph] = None,
) -> GreedyTransversal:
    """Transversal assembled group by group from covers of difference bodies.

    Translates: groups are built around a greedy maximal independent set.
    Homothets: each group is built around a small member of what is left,
    i.e. one whose ratio is below ``(1 + epsilon)`` times the smallest
    remaining ratio (lowest index among those).
    """
    epsilon = R.to_rational(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    g = _graph(fam, graph)
    bodies = fam.bodies
    cache: Dict[Tuple[Fraction, Fraction], Cover] = {}
    groups: List[Group] = []
    grouped = [False] * len(fam)

    def take_group(anchor: int, residual_min: Fraction) -> None:
        members = [i for i in range(len(fam)) if not grouped[i] and (i == anchor or i in g.adjacency[anchor])]
        for i in members:
            grouped[i] = True
        ratio = min(fam.members[i].ratio for i in members)
        pts = _group_cover(fam, anchor, ratio, cache)
        groups.append(Group(anchor, tuple(members), ratio, residual_min, pts))

    if fam.translates_only:
        branch = "translates"
        for anchor in greedy_max_independent(fam, g).indices:
            lam = fam.members[anchor].ratio
            take_group(anchor, lam)
    else:
        branch = "homothets"
        while not all(grouped):
            residual = [i for i in range(len(fam)) if not grouped[i]]
            low = min(fam.members[i].ratio for i in residual)
            anchor = next(i for i in residual if fam.members[i].ratio < (1 + epsilon) * low)
            take_group(anchor, low)

    points: List[Point] = []
    index: Dict[Point, int] = {}
    for grp in groups:
        for p in grp.points:
            if p not in index:
                index[p] = len(points)
                points.append(p)
    assignment = [-1] * len(fam)
    for grp in groups:
        for i in grp.members:
            hit = next((p for p in grp.points if contains_point(bodies[i], p)), None)
            if hit is None:
                raise CertificateError(f"member {i} is not pierced by its group's cover")
            assignment[i] = index[hit]
    cert = TransversalCertificate(tuple(points), tuple(assignment))
    if not cert.validate(fam):
        raise CertificateError("greedy transversal failed to validate")
    return GreedyTransversal(cert, tuple(groups), branch)


def is_centrally_symmetric(k: ConvexPolytope) -> bool:
    c = k.centroid_of_vertices()
    mirrored = sorted(R.sub(R.scale(Fraction(2), c), v) for v in k.vertices)
    return mirrored == list(k.vertices)


def difference_ratio(k: ConvexPolytope) -> Fraction:
    """``vol(2K - K) / vol(K)``."""
    two_k = apply_homothety(k, Homothety(Fraction(2), R.zero(k.dimension)))
    return volume(minkowski_sum(two_k, reflect(k))) / volume(k)


@dataclass
class BoundReport:
    n: int
    vol_ratio: Fraction
    rz_factor: float
    symmetric: bool
    symmetric_cap: int
    general_cap: int
    log_convention: str = LOG_CONVENTION
    nu_greedy: Optional[int] = None
    nu_exact: Optional[int] = None
    tau_greedy: Optional[int] = None
    tau_exact: Optional[int] = None
    groups: Optional[int] = None

    @property
    def bound_factor(self) -> float:
        return float(self.vol_ratio) * self.rz_factor

    def chain_holds(self) -> bool:
        """Check every link of the chain that was computed."""
        ok = self.vol_ratio <= self.general_cap
        if self.symmetric:
            ok = ok and self.vol_ratio == self.symmetric_cap
        if self.nu_exact is not None and self.tau_exact is not None:
            ok = ok and self.nu_exact <= self.tau_exact
        if self.tau_exact is not None and self.tau_greedy is not None:
            ok = ok and self.tau_exact <= self.tau_greedy
        if self.tau_greedy is not None and self.groups is not None:
            ok = ok and self.tau_greedy <= self.bound_factor * self.groups
        if self.groups is not None and self.nu_exact is not None:
            ok = ok and self.groups <= self.nu_exact
        if self.nu_greedy is not None and self.nu_exact is not None:
            ok = ok and self.nu_greedy <= self.nu_exact
        return ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "volRatio": R.format_rational(self.vol_ratio),
            "rzFactor": self.rz_factor,
            "logConvention": self.log_convention,
            "symmetric": self.symmetric,
            "symmetricCap": self.symmetric_cap,
            "generalCap": self.general_cap,
            "nuGreedy": self.nu_greedy,
            "nuExact": self.nu_exact,
            "tauGreedy": self.tau_greedy,
            "tauExact": self.tau_exact,
            "groups": self.groups,
        }


def bound_report(
    fam: HomothetFamily,
    limit: int = DEFAULT_CAP,
    epsilon: Fraction = DEFAULT_EPSILON,
    graph: Optional[IntersectionGraph] = None,
) -> BoundReport:
    """Constants of the transversal bound, plus observed numbers for ``fam``.

    Exact oracles run only when the family is within ``limit`` members.
    """
    n = fam.dimension
    rep = BoundReport(
        n=n,
        vol_ratio=difference_ratio(fam.base),
        rz_factor=rz_factor(n),
        symmetric=is_centrally_symmetric(fam.base),
        symmetric_cap=3**n,
        general_cap=2**n * math.comb(2 * n, n),
    )
    if len(fam) == 0:
        return rep
    g = _graph(fam, graph)
    rep.nu_greedy = len(greedy_max_independent(fam, g).indices)
    gt = greedy_transversal(fam, epsilon, g)
    rep.tau_greedy = gt.size
    rep.groups = len(gt.groups)
    if len(fam) <= limit:
        rep.nu_exact = exact_independence_number(fam, limit, g)[0]
        rep.tau_exact = exact_transversal(fam, limit, g)[0]
    return rep
