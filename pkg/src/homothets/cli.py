"""Command-line front end.

    homothets gen --body square --members 10 --seed 7 --out fam.json
    homothets analyze fam.json [--exact-cap 15] [--epsilon 1/100] [--csv table.csv]
    homothets cover COVERED TILE [--scale 2]
    homothets vc paraboloid 4
    homothets vc four-point square 10000 1
    homothets vc antipodal triangle.json

Reports are JSON, written with sorted keys so the same command and seed
give the same bytes; wall-clock timings live under ``"timings"`` only.
Exit codes: 0 all certificates valid, 2 validation failure, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import rational as R
from .covering import VERIFIED, covering_bounds, scaled, tile_cover, verify_cover
from .family import (
    DEFAULT_CAP,
    DEFAULT_EPSILON,
    BoundReport,
    CapExceeded,
    HomothetFamily,
    bound_report,
    exact_independence_number,
    exact_transversal,
    greedy_max_independent,
    greedy_transversal,
    intersection_graph,
)
from .geometry import ConvexPolytope, DegenerateBody, convex_hull, standard_triangle, unit_cube, unit_square
from .rational import Point
from .vclab import (
    MAX_PARABOLOID_M,
    ConstructionFalsified,
    build_paraboloid,
    build_touching_family,
    duality_consistent,
    is_strictly_antipodal,
    max_dual_witness,
    paraboloid_samples,
    search_four_points_2d,
    verify_paraboloid,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3

# denominators used for generated coordinates
CIRCLE_BITS = 20
GRID_BITS = 8


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# bodies


def regular_polygon(k: int, bits: int = CIRCLE_BITS) -> ConvexPolytope:
    """Regular ``k``-gon with vertices rounded to the ``2^-bits`` grid.

    The rounding keeps every vertex extreme for the sizes used here; this is
    checked rather than assumed.
    """
    if k < 3:
        raise UsageError("a polygon needs at least 3 vertices")
    den = 1 << bits
    pts = [
        (Fraction(round(math.cos(2 * math.pi * i / k) * den), den), Fraction(round(math.sin(2 * math.pi * i / k) * den), den))
        for i in range(k)
    ]
    poly = convex_hull(pts, 2)
    if len(poly.vertices) != k:
        raise UsageError(f"rounded {k}-gon is not in convex position; use fewer vertices")
    return poly


def random_polytope(v: int, dimension: int, rng: np.random.Generator, bits: int = GRID_BITS) -> ConvexPolytope:
    """Hull of ``v`` dyadic points in the unit cube, redrawn until full-dimensional."""
    if v < dimension + 1:
        raise UsageError(f"need at least {dimension + 1} points for a body in dimension {dimension}")
    den = 1 << bits
    for _ in range(100):
        raw = rng.integers(0, den + 1, size=(v, dimension))
        poly = convex_hull([tuple(Fraction(int(a), den) for a in row) for row in raw], dimension)
        if poly.is_body:
            return poly
    raise UsageError("could not draw a full-dimensional random polytope")


_KGON = re.compile(r"^(?:regular-)?(\d+)-gon$|^regular-k-gon\((\d+)\)$")
_RANDOM = re.compile(r"^random-polytope(?:-(\d+)|\((\d+)\))$")


def body_dimension(kind: str, dimension: Optional[int]) -> int:
    if kind == "cube":
        return 3
    if _RANDOM.match(kind):
        return dimension or 2
    return 2


def make_body(kind: str, dimension: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> ConvexPolytope:
    """Body named by ``kind``: square, triangle, cube, ``64-gon`` (or
    ``regular-64-gon``), ``random-polytope-8``."""
    if kind == "square":
        return unit_square()
    if kind == "triangle":
        return standard_triangle()
    if kind == "cube":
        return unit_cube()
    m = _KGON.match(kind)
    if m:
        return regular_polygon(int(m.group(1) or m.group(2)))
    m = _RANDOM.match(kind)
    if m:
        rng = rng if rng is not None else np.random.default_rng(0)
        return random_polytope(int(m.group(1) or m.group(2)), dimension or 2, rng)
    raise UsageError(f"unknown body kind {kind!r}")


def load_body(arg: str) -> ConvexPolytope:
    """A body kind name, or a JSON file holding a polytope or a point list."""
    path = Path(arg)
    if not path.exists():
        return make_body(arg)
    data = json.loads(path.read_text())
    if "vertices" in data:
        return ConvexPolytope.from_json(data)
    if "points" in data:
        pts = [R.point(p) for p in data["points"]]
        return convex_hull(pts, len(pts[0]))
    raise UsageError(f"{arg}: expected 'vertices' or 'points'")


def load_points(arg: str) -> List[Point]:
    path = Path(arg)
    if not path.exists():
        return list(make_body(arg).vertices)
    data = json.loads(path.read_text())
    key = "points" if "points" in data else "vertices"
    if key not in data:
        raise UsageError(f"{arg}: expected 'points' or 'vertices'")
    return [R.point(p) for p in data[key]]


# --------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class InstanceSpec:
    seed: int
    dimension: int
    body_kind: str
    member_count: int
    lambda_range: Tuple[Fraction, Fraction]
    center_box: Tuple[Point, Point]

    def validate(self) -> None:
        lo, hi = self.lambda_range
        if lo <= 0:
            raise UsageError("lambda range must be positive")
        if hi < lo:
            raise UsageError("lambda range is empty")
        if self.member_count < 1:
            raise UsageError("member count must be at least 1")
        if self.dimension != body_dimension(self.body_kind, self.dimension):
            raise UsageError(f"body {self.body_kind!r} does not live in dimension {self.dimension}")
        a, b = self.center_box
        if len(a) != self.dimension or len(b) != self.dimension:
            raise UsageError("center box has wrong dimension")
        if any(x > y for x, y in zip(a, b)):
            raise UsageError("center box is empty")

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "dimension": self.dimension,
            "bodyKind": self.body_kind,
            "memberCount": self.member_count,
            "lambdaRange": [R.format_rational(x) for x in self.lambda_range],
            "centerBox": [R.format_point(p) for p in self.center_box],
        }


def _grid_value(lo: Fraction, hi: Fraction, j: int) -> Fraction:
    return lo + (hi - lo) * Fraction(j, 1 << GRID_BITS)


def generate(spec: InstanceSpec) -> HomothetFamily:
    """Random family for ``spec``; every coordinate sits on a ``2^-8`` grid of its range."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    base = make_body(spec.body_kind, spec.dimension, rng)
    lo, hi = spec.lambda_range
    a, b = spec.center_box
    members = []
    for _ in range(spec.member_count):
        lam = _grid_value(lo, hi, int(rng.integers(0, (1 << GRID_BITS) + 1)))
        centre = tuple(_grid_value(x, y, int(rng.integers(0, (1 << GRID_BITS) + 1))) for x, y in zip(a, b))
        members.append((lam, centre))
    return HomothetFamily.of(base, members)


def family_document(spec: InstanceSpec, fam: HomothetFamily) -> dict:
    doc = fam.to_json()
    doc["instance"] = spec.to_json()
    doc["translatesOnly"] = fam.translates_only
    return doc


# --------------------------------------------------------------------------
# analysis


@dataclass
class AnalysisReport:
    instance: dict
    bound: BoundReport
    certificates: dict
    valid: bool
    timings: dict

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "bounds": self.bound.to_json(),
            "chainHolds": self.bound.chain_holds(),
            "certificates": self.certificates,
            # the bound factor is a proved constant, not something this run certifies
            "boundOnly": {"boundFactor": self.bound.bound_factor},
            "valid": self.valid,
            "timings": self.timings,
        }


def analyze(
    fam: HomothetFamily,
    instance: Optional[dict] = None,
    exact_cap: int = DEFAULT_CAP,
    epsilon: Fraction = DEFAULT_EPSILON,
    require_exact: bool = False,
) -> AnalysisReport:
    """Run greedy and exact oracles, re-validate every certificate and check the chain."""
    if require_exact and len(fam) > exact_cap:
        raise CapExceeded(f"family has {len(fam)} members, exact cap is {exact_cap}")
    timings = {}
    t0 = time.perf_counter()
    g = intersection_graph(fam)
    indep = greedy_max_independent(fam, g)
    gt = greedy_transversal(fam, epsilon, g)
    timings["greedy"] = time.perf_counter() - t0
    certs = {
        "greedyIndependent": indep.to_json(),
        "greedyTransversal": gt.certificate.to_json(),
        "groups": [grp.to_json() for grp in gt.groups],
        "branch": gt.branch,
    }
    valid = indep.validate(fam) and gt.certificate.validate(fam)
    # exact oracles are run here, with their certificates, not inside bound_report
    rep = bound_report(fam, 0, epsilon, g)
    t0 = time.perf_counter()
    if len(fam) <= exact_cap:
        rep.nu_exact, ncert = exact_independence_number(fam, exact_cap, g)
        rep.tau_exact, tcert = exact_transversal(fam, exact_cap, g)
        certs["exactIndependent"] = ncert.to_json()
        certs["exactTransversal"] = tcert.to_json()
        valid = valid and ncert.validate(fam) and tcert.validate(fam)
    else:
        certs["exact"] = "skipped: family exceeds exact cap"
    timings["exact"] = time.perf_counter() - t0
    valid = valid and rep.chain_holds()
    return AnalysisReport(instance or {}, rep, certs, valid, timings)


CSV_FIELDS = ["file", "n", "members", "volRatio", "rzFactor", "logConvention", "nuGreedy", "nuExact",
              "tauExact", "tauGreedy", "groups", "chainHolds"]


def write_csv(path: str, rows: Sequence[Tuple[str, int, BoundReport]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        w.writeheader()
        for name, size, rep in rows:
            j = rep.to_json()
            w.writerow({
                "file": name,
                "n": rep.n,
                "members": size,
                "volRatio": j["volRatio"],
                "rzFactor": repr(rep.rz_factor),
                "logConvention": rep.log_convention,
                "nuGreedy": rep.nu_greedy,
                "nuExact": rep.nu_exact,
                "tauExact": rep.tau_exact,
                "tauGreedy": rep.tau_greedy,
                "groups": rep.groups,
                "chainHolds": rep.chain_holds(),
            })


# --------------------------------------------------------------------------
# commands


def _emit(doc, out: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    lo, hi = (R.to_rational(x) for x in args.lambda_range)
    dim = body_dimension(args.body, args.dim)
    box_lo = R.to_rational(args.center_box[0])
    box_hi = R.to_rational(args.center_box[1])
    spec = InstanceSpec(
        seed=args.seed,
        dimension=dim,
        body_kind=args.body,
        member_count=args.members,
        lambda_range=(lo, hi),
        center_box=((box_lo,) * dim, (box_hi,) * dim),
    )
    _emit(family_document(spec, generate(spec)), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    epsilon = R.to_rational(args.epsilon)
    docs, rows, valid = [], [], True
    for name in args.families:
        data = json.loads(Path(name).read_text())
        fam = HomothetFamily.from_json(data)
        rep = analyze(fam, data.get("instance"), args.exact_cap, epsilon, args.exact)
        out = rep.to_json()
        out["file"] = Path(name).name
        docs.append(out)
        rows.append((Path(name).name, len(fam), rep.bound))
        valid = valid and rep.valid
    _emit(docs[0] if len(docs) == 1 else docs, args.out)
    if args.csv:
        write_csv(args.csv, rows)
    return EXIT_OK if valid else EXIT_INVALID


def cmd_cover(args) -> int:
    covered = load_body(args.covered)
    if args.scale is not None:
        covered = scaled(covered, R.to_rational(args.scale))
    tile = load_body(args.tile)
    bounds = covering_bounds(covered, tile)
    cover = tile_cover(covered, tile)
    check = verify_cover(cover)
    doc = {"bounds": bounds.to_json(), "cover": cover.to_json(), "verification": check.to_json()}
    _emit(doc, args.out)
    return EXIT_OK if check.status == VERIFIED else EXIT_INVALID


def cmd_vc_paraboloid(args) -> int:
    if args.M > MAX_PARABOLOID_M:
        raise CapExceeded(f"M is capped at {MAX_PARABOLOID_M}")
    t0 = time.perf_counter()
    inst = build_paraboloid(args.M)
    try:
        cert = verify_paraboloid(inst)
    except ConstructionFalsified as exc:
        _emit({"M": args.M, "verified": False, "error": str(exc)}, args.out)
        return EXIT_INVALID
    ok = cert.validate(inst.family.bodies)
    doc = {
        "M": args.M,
        "translates": inst.size,
        "instance": inst.to_json(),
        "certificate": cert.to_json(),
        "verified": ok,
    }
    if args.dual:
        w = max_dual_witness(inst.family, paraboloid_samples(inst))
        k = w.k if w is not None else 0
        doc["dual"] = {
            "witness": w.to_json() if w is not None else None,
            "k": k,
            "consistent": duality_consistent(args.M, k),
        }
        ok = ok and (w is None or w.validate(inst.family)) and duality_consistent(args.M, k)
    doc["timings"] = {"total": time.perf_counter() - t0}
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_vc_four_point(args) -> int:
    k = make_body(args.body)
    if k.dimension != 2:
        raise UsageError("four-point search needs a planar body")
    trials = args.trials if args.trials is not None else args.count
    t0 = time.perf_counter()
    rep = search_four_points_2d(k, trials, args.seed)
    doc = {
        "body": args.body,
        "seed": args.seed,
        "result": rep.to_json(),
        "summary": "no counterexample" if rep.counterexample is None else "counterexample found",
        "timings": {"total": time.perf_counter() - t0},
    }
    _emit(doc, args.out)
    if rep.counterexample is not None:
        # an exactly verified shattered 4-set contradicts the expected VC bound
        return EXIT_INVALID
    return EXIT_OK


def cmd_vc_antipodal(args) -> int:
    pts = load_points(args.file)
    wit = is_strictly_antipodal(pts)
    if wit is None:
        _emit({"points": [R.format_point(p) for p in pts], "strictlyAntipodal": False}, args.out)
        return EXIT_INVALID
    fam, rep = build_touching_family(pts, args.exact_cap)
    doc = {
        "strictlyAntipodal": all(w.validate(pts) for w in wit.values()),
        "directions": [
            {"pair": [i, j], "direction": R.format_point(w.direction)} for (i, j), w in sorted(wit.items())
        ],
        "family": fam.to_json(),
        "touching": rep.to_json(),
    }
    _emit(doc, args.out)
    return EXIT_OK if doc["strictlyAntipodal"] and rep.ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homothets", description="Exact tools for families of homothets.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random family")
    g.add_argument("--body", default="square")
    g.add_argument("--dim", type=int, default=None, help="dimension for random-polytope bodies")
    g.add_argument("--members", type=int, default=10)
    g.add_argument("--lambda-range", nargs=2, default=["1", "1"], metavar=("LO", "HI"))
    g.add_argument("--center-box", nargs=2, default=["0", "3"], metavar=("LO", "HI"))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="bounds and certificates for family files")
    a.add_argument("families", nargs="+")
    a.add_argument("--exact-cap", type=int, default=DEFAULT_CAP)
    a.add_argument("--exact", action="store_true", help="fail with exit 3 when exact oracles cannot run")
    a.add_argument("--epsilon", default=R.format_rational(DEFAULT_EPSILON))
    a.add_argument("--csv")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("cover", help="cover a body by translates of a tile")
    c.add_argument("covered")
    c.add_argument("tile")
    c.add_argument("--scale", help="scale the covered body about the origin first")
    c.add_argument("--out")
    c.set_defaults(func=cmd_cover)

    v = sub.add_parser("vc", help="VC-dimension experiments")
    vs = v.add_subparsers(dest="experiment", required=True)
    vp = vs.add_parser("paraboloid")
    vp.add_argument("M", type=int)
    vp.add_argument("--dual", action="store_true", help="also look for dual shattering witnesses")
    vp.add_argument("--out")
    vp.set_defaults(func=cmd_vc_paraboloid)
    vf = vs.add_parser("four-point")
    vf.add_argument("body")
    vf.add_argument("count", type=int, nargs="?", default=10000)
    vf.add_argument("seed_pos", type=int, nargs="?", default=None, metavar="seed")
    vf.add_argument("--trials", type=int)
    vf.add_argument("--seed", type=int, default=None)
    vf.add_argument("--out")
    vf.set_defaults(func=cmd_vc_four_point)
    va = vs.add_parser("antipodal")
    va.add_argument("file", help="JSON with 'points' or 'vertices', or a body kind")
    va.add_argument("--exact-cap", type=int, default=DEFAULT_CAP)
    va.add_argument("--out")
    va.set_defaults(func=cmd_vc_antipodal)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "func", None) is cmd_vc_four_point:
        args.seed = args.seed if args.seed is not None else (args.seed_pos if args.seed_pos is not None else 0)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, DegenerateBody, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
