"""Exact two-phase simplex over the rationals.

Problems here are small (tens of rows and columns), so a dense tableau of
``Fraction`` entries is fine. Pivoting uses the largest reduced cost and
falls back to Bland's rule after a run of degenerate pivots, which rules
out cycling. Ties are broken by lowest column / basic-variable index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .rational import Number, Point, to_rational

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)

# consecutive degenerate pivots tolerated before switching to Bland's rule
_DEGENERATE_STREAK = 8


class MalformedProgram(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: Tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    @classmethod
    def of(cls, coeffs: Sequence[Number], relation: str, rhs: Number) -> "Constraint":
        if relation not in _RELATIONS:
            raise MalformedProgram(f"unknown relation {relation!r}")
        return cls(tuple(to_rational(c) for c in coeffs), relation, to_rational(rhs))


@dataclass(frozen=True)
class LinearProgram:
    """``num_vars`` real variables, free unless ``nonneg`` says otherwise.

    ``nonneg`` is either one flag for all variables or a flag per variable.
    Without an objective the program is solved in feasibility mode.
    """

    num_vars: int
    constraints: Tuple[Constraint, ...]
    objective: Optional[Tuple[Fraction, ...]] = None
    maximize: bool = True
    nonneg: Union[bool, Tuple[bool, ...]] = False

    def __post_init__(self):
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise MalformedProgram(
                    f"constraint row has {len(c.coeffs)} coefficients, expected {self.num_vars}"
                )
            if c.relation not in _RELATIONS:
                raise MalformedProgram(f"unknown relation {c.relation!r}")
        if self.objective is not None and len(self.objective) != self.num_vars:
            raise MalformedProgram("objective length differs from variable count")
        if not isinstance(self.nonneg, bool) and len(self.nonneg) != self.num_vars:
            raise MalformedProgram("nonneg flags differ from variable count")

    def is_nonneg(self, j: int) -> bool:
        if isinstance(self.nonneg, bool):
            return self.nonneg
        return self.nonneg[j]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "feasible" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    x: Optional[Point] = None

    @property
    def feasible(self) -> bool:
        return self.status in ("optimal", "feasible", "unbounded")


class _Tableau:
    def __init__(self, rows: List[List[Fraction]], basis: List[int], ncols: int):
        self.rows = rows  # each row: ncols coefficients followed by rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r: int, c: int, cost: List[Fraction]) -> None:
        prow = self.rows[r]
        piv = prow[c]
        if piv != 1:
            inv = 1 / piv
            prow[:] = [a * inv if a else a for a in prow]
        nz = [j for j, a in enumerate(prow) if a]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        f = cost[c]
        if f:
            for j in nz:
                cost[j] -= f * prow[j]
        self.basis[r] = c

    def run(self, cost: List[Fraction], allowed: int) -> str:
        """Minimise; ``cost`` is the reduced-cost row with the negated
        objective value in its last slot. Columns ``>= allowed`` never enter."""
        streak = 0
        while True:
            entering = -1
            if streak >= _DEGENERATE_STREAK:
                for j in range(allowed):
                    if cost[j] < 0:
                        entering = j
                        break
            else:
                best = Fraction(0)
                for j in range(allowed):
                    if cost[j] < best:
                        best = cost[j]
                        entering = j
            if entering < 0:
                return "optimal"
            leave = -1
            best_ratio = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[leave])
                    ):
                        best_ratio = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            streak = streak + 1 if best_ratio == 0 else 0
            self.pivot(leave, entering, cost)


def lp_solve(prog: LinearProgram) -> LPResult:
    """Solve ``prog`` exactly.

    Returns status ``"infeasible"``, ``"unbounded"``, ``"optimal"`` (with the
    optimum value and a witness) or, when no objective is given,
    ``"feasible"`` with some feasible point.
    """
    n = prog.num_vars
    # map each original variable to one (nonneg) or two (free) columns
    colmap: List[Tuple[int, Optional[int]]] = []
    ncols = 0
    for j in range(n):
        if prog.is_nonneg(j):
            colmap.append((ncols, None))
            ncols += 1
        else:
            colmap.append((ncols, ncols + 1))
            ncols += 2
    nstruct = ncols
    slack_of = {}
    for i, c in enumerate(prog.constraints):
        if c.relation != EQ:
            slack_of[i] = ncols
            ncols += 1
    nreal = ncols

    rows: List[List[Fraction]] = []
    basis: List[int] = []
    needs_art: List[int] = []
    for i, c in enumerate(prog.constraints):
        row = [Fraction(0)] * (nreal + 1)
        for j, a in enumerate(c.coeffs):
            if a:
                p, m = colmap[j]
                row[p] = a
                if m is not None:
                    row[m] = -a
        if c.relation == LE:
            row[slack_of[i]] = Fraction(1)
        elif c.relation == GE:
            row[slack_of[i]] = Fraction(-1)
        row[-1] = c.rhs
        if row[-1] < 0:
            row = [-a for a in row]
        rows.append(row)
        s = slack_of.get(i)
        if s is not None and row[s] == 1:
            basis.append(s)
        else:
            basis.append(-1)
            needs_art.append(i)

    nart = len(needs_art)
    total = nreal + nart
    for row in rows:
        rhs = row.pop()
        row.extend([Fraction(0)] * nart)
        row.append(rhs)
    for k, i in enumerate(needs_art):
        rows[i][nreal + k] = Fraction(1)
        basis[i] = nreal + k
    tab = _Tableau(rows, basis, total)

    if nart:
        cost = [Fraction(0)] * (total + 1)
        for k in range(nart):
            cost[nreal + k] = Fraction(1)
        for i in needs_art:
            row = rows[i]
            for j in range(total + 1):
                if row[j]:
                    cost[j] -= row[j]
        tab.run(cost, total)
        if cost[-1] != 0:
            return LPResult("infeasible")
        # drive zero-level artificials out of the basis, drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= nreal:
                row = tab.rows[i]
                col = next((j for j in range(nreal) if row[j]), -1)
                if col < 0:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col, [Fraction(0)] * (total + 1))
            i += 1
        for row in tab.rows:
            rhs = row[-1]
            del row[nreal:]
            row.append(rhs)
        tab.ncols = nreal

    def witness() -> Point:
        y = [Fraction(0)] * nreal
        for i, b in enumerate(tab.basis):
            y[b] = tab.rows[i][-1]
        out = []
        for p, m in colmap:
            out.append(y[p] - (y[m] if m is not None else 0))
        return tuple(out)

    if prog.objective is None:
        return LPResult("feasible", None, witness())

    sign = -1 if prog.maximize else 1
    cost = [Fraction(0)] * (nreal + 1)
    for j, a in enumerate(prog.objective):
        if a:
            p, m = colmap[j]
            cost[p] += sign * a
            if m is not None:
                cost[m] -= sign * a
    for i, b in enumerate(tab.basis):
        f = cost[b]
        if f:
            row = tab.rows[i]
            for j in range(nreal + 1):
                if row[j]:
                    cost[j] -= f * row[j]
    status = tab.run(cost, nreal)
    if status == "unbounded":
        return LPResult("unbounded", None, witness())
    value = -cost[-1] if not prog.maximize else cost[-1]
    return LPResult("optimal", value, witness())


def feasible_point(
    rows: Sequence[Tuple[Sequence[Fraction], str, Fraction]],
    num_vars: int,
    nonneg: Union[bool, Tuple[bool, ...]] = False,
) -> Optional[Point]:
    prog = LinearProgram(num_vars, tuple(Constraint.of(a, r, b) for a, r, b in rows), nonneg=nonneg)
    res = lp_solve(prog)
    return res.x if res.feasible else None
