"""Covering a convex body by translates of another.

:func:`tile_cover` builds a sound cover from an axis-aligned cube grid:
every grid cube that overlaps the covered body is placed inside one
translate of the tile. :func:`verify_cover` checks any cover independently
by recursive subdivision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from collections import deque
from itertools import product
from typing import List, Optional, Sequence, Tuple

from . import rational as R
from .geometry import (
    ConvexPolytope,
    DegenerateBody,
    Facet,
    box,
    contains_point,
    convex_hull,
    halfspace_vertices,
    intersection,
    interiors_meet,
    intersects,
    minkowski_sum,
    reflect,
    translate,
    volume,
)
from .lp import Constraint, LinearProgram, lp_solve
from .rational import Point

LOG_CONVENTION = "natural logarithm"

VERIFIED = "verified"
COUNTEREXAMPLE = "counterexample"
UNRESOLVED = "unresolved"


def rz_factor(n: int) -> float:
    """``n ln n + ln ln n + 5n``, natural logarithms throughout."""
    return n * math.log(n) + math.log(math.log(n)) + 5 * n


@dataclass(frozen=True)
class Cover:
    covered: ConvexPolytope
    tile: ConvexPolytope
    translations: Tuple[Point, ...]
    # (cell, index into translations); each cell lies inside tile + translation
    cells: Tuple[Tuple[ConvexPolytope, int], ...]

    def tiles(self) -> List[ConvexPolytope]:
        return [translate(self.tile, t) for t in self.translations]

    def cells_certified(self) -> bool:
        tiles = self.tiles()
        return all(
            all(contains_point(tiles[k], v) for v in cell.vertices) for cell, k in self.cells
        )

    def to_json(self) -> dict:
        return {
            "covered": self.covered.to_json(),
            "tile": self.tile.to_json(),
            "translations": [R.format_point(t) for t in self.translations],
        }


@dataclass(frozen=True)
class CoverCheck:
    status: str
    point: Optional[Point] = None
    cells_examined: int = 0
    # for unresolved checks: widest bounding-box side of a piece left open
    tolerance: Optional[Fraction] = None

    def to_json(self) -> dict:
        out = {"status": self.status, "cells_examined": self.cells_examined}
        if self.point is not None:
            out["point"] = R.format_point(self.point)
        if self.tolerance is not None:
            out["tolerance"] = R.format_rational(self.tolerance)
        return out


def _single_translate(c: ConvexPolytope, tile: ConvexPolytope) -> Optional[Point]:
    """A translation ``t`` with ``c`` inside ``tile + t``, if one exists."""
    n = c.dimension
    rows = tuple(
        Constraint(tuple(Fraction(-a) for a in f.normal), "<=", f.offset - R.dot(f.normal, v))
        for f in tile.facets
        for v in c.vertices
    )
    res = lp_solve(LinearProgram(n, rows))
    return res.x if res.feasible else None


def inscribed_cube(tile: ConvexPolytope) -> Tuple[Point, Fraction]:
    """Largest axis-aligned cube ``[c, c + s]^n`` inside ``tile`` (exact LP)."""
    n = tile.dimension
    rows = []
    for f in tile.facets:
        reach = sum((Fraction(a) for a in f.normal if a > 0), Fraction(0))
        rows.append(Constraint(tuple(Fraction(a) for a in f.normal) + (reach,), "<=", f.offset))
    res = lp_solve(LinearProgram(n + 1, tuple(rows), objective=(Fraction(0),) * n + (Fraction(1),)))
    corner, side = res.x[:n], res.x[n]
    return corner, side


def _grid_cells(lo: Point, hi: Point, delta: Fraction) -> List[ConvexPolytope]:
    counts = [max(1, math.ceil((h - l) / delta)) for l, h in zip(lo, hi)]
    cells = []
    for idx in product(*(range(k) for k in counts)):
        a = tuple(l + i * delta for l, i in zip(lo, idx))
        cells.append(box(a, tuple(x + delta for x in a)))
    return cells


def _overlaps(cell: ConvexPolytope, c: ConvexPolytope) -> bool:
    if c.is_body:
        return interiors_meet(cell, c)
    return intersects(cell, c) is not None


def tile_cover(
    covered: ConvexPolytope,
    tile: ConvexPolytope,
    grid: Optional[Tuple[Point, Fraction]] = None,
    prune: bool = True,
) -> Cover:
    """Cover ``covered`` by translates of ``tile``.

    ``grid`` fixes ``(origin, side)`` of the cube grid; by default the grid
    starts at the lower corner of the bounding box with side equal to the
    largest cube that fits in ``tile``. With ``prune`` set, translates whose
    cells all fit into other translates are removed greedily.
    """
    if covered.dimension != tile.dimension:
        raise ValueError("covered body and tile differ in dimension")
    try:
        tile.require_body()
    except DegenerateBody:
        raise DegenerateBody("tile must have positive volume") from None
    if grid is None:
        t = _single_translate(covered, tile)
        if t is not None:
            return Cover(covered, tile, (t,), ((covered, 0),))
    corner, side = inscribed_cube(tile)
    if grid is None:
        origin, delta = covered.bounding_box()[0], side
    else:
        origin, delta = grid
        if delta > side:
            raise ValueError("grid cubes do not fit inside the tile")
    hi = covered.bounding_box()[1]
    cells = [cell for cell in _grid_cells(origin, hi, delta) if _overlaps(cell, covered)]
    translations = [R.sub(cell.vertices[0], corner) for cell in cells]
    assign = list(range(len(cells)))
    if prune:
        tiles = [translate(tile, t) for t in translations]
        alive = [True] * len(translations)
        for j in range(len(translations)):
            mine = [i for i, a in enumerate(assign) if a == j]
            moves = {}
            for i in mine:
                dest = next(
                    (
                        k
                        for k in range(len(translations))
                        if k != j and alive[k] and all(contains_point(tiles[k], v) for v in cells[i].vertices)
                    ),
                    None,
                )
                if dest is None:
                    break
                moves[i] = dest
            else:
                alive[j] = False
                for i, k in moves.items():
                    assign[i] = k
        keep = [j for j in range(len(translations)) if alive[j]]
        renumber = {j: r for r, j in enumerate(keep)}
        translations = [translations[j] for j in keep]
        assign = [renumber[a] for a in assign]
    return Cover(covered, tile, tuple(translations), tuple(zip(cells, assign)))


def _cut(piece: ConvexPolytope, h: Facet) -> Tuple[Optional[ConvexPolytope], Optional[ConvexPolytope]]:
    """Split a body by the hyperplane of ``h`` into its two closed sides."""
    n = piece.dimension
    flipped = Facet(tuple(-a for a in h.normal), -h.offset)
    halves = []
    for side in (h, flipped):
        verts = halfspace_vertices(list(piece.facets) + [side], n)
        halves.append(convex_hull(verts, n) if verts else None)
    return halves[0], halves[1]


def verify_cover(cover: Cover, max_depth: int = 12) -> CoverCheck:
    """Decide whether the translates cover the body.

    Starting from the body (its bounding box clipped to it), a piece is
    settled once all its vertices lie in a single translate. Otherwise the
    piece is cut along a facet hyperplane of the translate holding its
    centroid, and both halves are examined. Pieces still open after
    ``max_depth`` cuts make the answer ``unresolved``, with the widest such
    piece as tolerance; a probe point of the
    body outside every translate is returned as a counterexample.
    """
    c = cover.covered
    tiles = cover.tiles()
    if not tiles:
        return CoverCheck(COUNTEREXAMPLE, c.vertices[0], 0)

    def in_some_tile(q: Point) -> bool:
        return any(contains_point(t, q) for t in tiles)

    if not c.is_body:
        if any(all(contains_point(t, v) for v in c.vertices) for t in tiles):
            return CoverCheck(VERIFIED, None, 1)
        bad = next((v for v in c.vertices if not in_some_tile(v)), None)
        if bad is not None:
            return CoverCheck(COUNTEREXAMPLE, bad, 1)
        a, b = c.bounding_box()
        return CoverCheck(UNRESOLVED, None, 1, max(y - x for x, y in zip(a, b)))

    lo, hi = c.bounding_box()
    root = intersection(box(lo, hi), c)
    queue = deque([(root, 0)])
    examined = 0
    width = None
    while queue:
        piece, depth = queue.popleft()
        examined += 1
        if any(all(contains_point(t, v) for v in piece.vertices) for t in tiles):
            continue
        centre = piece.centroid_of_vertices()
        probes = list(piece.vertices) + [centre]
        bad = next((q for q in probes if not in_some_tile(q)), None)
        if bad is not None:
            return CoverCheck(COUNTEREXAMPLE, bad, examined)
        if depth >= max_depth:
            a, b = piece.bounding_box()
            w = max(y - x for x, y in zip(a, b))
            width = w if width is None else max(width, w)
            continue
        home = next(t for t in tiles if contains_point(t, centre))
        # a vertex of the piece lies outside ``home``, so some facet of it
        # separates that vertex from the centroid and cuts the piece strictly
        h = max(home.facets, key=lambda f: max(f.value(v) for v in piece.vertices))
        for half in _cut(piece, h):
            if half is not None and half.is_body:
                queue.append((half, depth + 1))
    if width is not None:
        return CoverCheck(UNRESOLVED, None, examined, width)
    return CoverCheck(VERIFIED, None, examined)


@dataclass(frozen=True)
class CoveringBounds:
    lower: int
    constructive_upper: int
    rz_upper: float
    difference_ratio: Fraction  # vol(C - L) / vol(L)

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "constructiveUpper": self.constructive_upper,
            "rzUpper": self.rz_upper,
            "differenceRatio": R.format_rational(self.difference_ratio),
            "logConvention": LOG_CONVENTION,
        }


def covering_bounds(covered: ConvexPolytope, tile: ConvexPolytope) -> CoveringBounds:
    vc = volume(covered.require_body())
    vl = volume(tile.require_body())
    ratio = volume(minkowski_sum(covered, reflect(tile))) / vl
    lower = math.ceil(vc / vl)
    upper = len(tile_cover(covered, tile).translations)
    return CoveringBounds(lower, upper, float(ratio) * rz_factor(covered.dimension), ratio)


def scaled(c: ConvexPolytope, k) -> ConvexPolytope:
    k = R.to_rational(k)
    return convex_hull([R.scale(k, v) for v in c.vertices], c.dimension)
