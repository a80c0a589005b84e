"""Exact rational linear and integer programming.

Primal simplex on a sparse tableau of exact rationals (gmpy2 ``mpq`` when
available, else ``Fraction``), Bland's rule
for entering/leaving choices, two phases with artificial variables only
where a supplied starting basis cannot cover a row.  Integer programs are
solved by best-bound branch and bound on top of it.

Problems are always ``minimize c.x  subject to  rows,  x >= 0``.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

try:
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover
    _num = Fraction

Row = dict[int, "_num"]

EQ, LE, GE = "=", "<=", ">="


class LPError(RuntimeError):
    pass


@dataclass
class Constraint:
    coeffs: Mapping[int, object]
    sense: str
    rhs: object

    def __post_init__(self):
        if self.sense not in (EQ, LE, GE):
            raise LPError(f"unknown constraint sense {self.sense!r}")


@dataclass
class LPResult:
    status: str
    x: dict[int, Fraction] = field(default_factory=dict)
    value: Fraction | None = None
    basis: list[int] = field(default_factory=list)
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _to_num(v):
    if isinstance(v, Fraction):
        return _num(v.numerator, v.denominator)
    return _num(v)


def _to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def _num_row(coeffs: Mapping[int, object]) -> Row:
    out: Row = {}
    for j, v in coeffs.items():
        f = _to_num(v)
        if f:
            out[j] = f
    return out


class _Tableau:
    """Rows are kept as B^-1 A with ``rhs`` = B^-1 b and ``basis[i]`` basic in row i."""

    def __init__(self, rows: list[Row], rhs: list[Fraction], basis: list[int | None]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, j: int, extra: Sequence[tuple[Row, list]] = ()):
        """Make column ``j`` basic in row ``r``.

        ``extra`` holds objective rows as (row, [value]) pairs updated alongside.
        """
        prow = self.rows[r]
        a = prow[j]
        if a != 1:
            inv = 1 / a
            prow = {k: v * inv for k, v in prow.items()}
            self.rows[r] = prow
            self.rhs[r] *= inv
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(j)
            if f is None:
                continue
            self._eliminate(row, prow, f)
            if prhs:
                self.rhs[i] -= f * prhs
        for row, holder in extra:
            f = row.get(j)
            if f is None:
                continue
            self._eliminate(row, prow, f)
            if prhs:
                holder[0] -= f * prhs
        self.basis[r] = j
        self.pivots += 1

    @staticmethod
    def _eliminate(row: Row, prow: Row, f: Fraction):
        for k, v in prow.items():
            nv = row.get(k)
            if nv is None:
                row[k] = -f * v
            else:
                nv -= f * v
                if nv:
                    row[k] = nv
                else:
                    del row[k]


def _objective_row(tab: _Tableau, cost: Mapping[int, Fraction]) -> tuple[Row, list]:
    """Reduced-cost row ``c - c_B B^-1 A`` and ``[-c_B B^-1 b]``."""
    d: Row = {j: _to_num(v) for j, v in cost.items() if v}
    z = [_num(0)]
    for i, j in enumerate(tab.basis):
        cj = d.get(j)
        if cj is None:
            continue
        _Tableau._eliminate(d, tab.rows[i], cj)
        z[0] -= cj * tab.rhs[i]
    return d, z


def _run(tab: _Tableau, d: Row, z: list, allowed: Callable[[int], bool] | None,
         rule: str, max_pivots: int | None) -> str:
    """Primal simplex iterations on an already feasible tableau."""
    degenerate_run = 0
    while True:
        if max_pivots is not None and tab.pivots >= max_pivots:
            raise LPError(f"pivot limit {max_pivots} reached")
        candidates = [j for j, v in d.items() if v < 0 and (allowed is None or allowed(j))]
        if not candidates:
            return "optimal"
        if rule == "bland" or degenerate_run > 50:
            j = min(candidates)
        else:
            j = min(candidates, key=lambda k: (d[k], k))
        best = None
        for i, row in enumerate(tab.rows):
            a = row.get(j)
            if a is None or a <= 0:
                continue
            ratio = tab.rhs[i] / a
            key = (ratio, tab.basis[i])
            if best is None or key < best[0]:
                best = (key, i)
        if best is None:
            return "unbounded"
        degenerate_run = degenerate_run + 1 if best[0][0] == 0 else 0
        tab.pivot(best[1], j, extra=[(d, z)])


def simplex(cost: Mapping[int, object], constraints: Sequence[Constraint],
            n_vars: int, basis_hint: Iterable[int] = (), rule: str = "bland",
            max_pivots: int | None = None) -> LPResult:
    """Solve ``min cost.x`` over ``x >= 0`` exactly.

    Structural variables are ``0..n_vars-1``; a slack is appended for each
    inequality, numbered in constraint order from ``n_vars``.  ``basis_hint``
    lists columns (structural or slack) to pivot in before phase 1, which
    is how callers supply a warm or known-feasible start.
    """
    if rule not in ("bland", "dantzig"):
        raise LPError(f"unknown pivot rule {rule!r}")
    rows: list[Row] = []
    rhs: list[Fraction] = []
    slack_of: dict[int, int] = {}
    next_col = n_vars
    for i, con in enumerate(constraints):
        row = _num_row(con.coeffs)
        if any(j < 0 or j >= n_vars for j in row):
            raise LPError(f"constraint {i} references an unknown variable")
        if con.sense != EQ:
            row[next_col] = _num(1 if con.sense == LE else -1)
            slack_of[i] = next_col
            next_col += 1
        rows.append(row)
        rhs.append(_to_num(con.rhs))
    n_cols = next_col
    tab = _Tableau(rows, rhs, [None] * len(rows))

    for j in basis_hint:
        if j in tab.basis:
            continue
        free = [i for i, b in enumerate(tab.basis) if b is None and j in tab.rows[i]]
        if free:
            tab.pivot(free[0], j)
    for i, s in slack_of.items():
        if tab.basis[i] is None and s in tab.rows[i]:
            tab.pivot(i, s)

    # rows that are uncovered, or covered with a negative value, get an artificial
    artificial: list[int] = []
    for i in range(len(tab.rows)):
        if tab.basis[i] is not None and tab.rhs[i] >= 0:
            continue
        if tab.rhs[i] < 0:
            tab.rows[i] = {k: -v for k, v in tab.rows[i].items()}
            tab.rhs[i] = -tab.rhs[i]
        col = n_cols + len(artificial)
        tab.rows[i][col] = _num(1)
        tab.basis[i] = col
        artificial.append(col)
    is_art = set(artificial).__contains__

    if artificial:
        d, z = _objective_row(tab, {a: 1 for a in artificial})
        status = _run(tab, d, z, None, rule, max_pivots)
        if status != "optimal":
            raise LPError("phase 1 did not reach an optimum")
        if -z[0] > 0:
            return LPResult("infeasible", pivots=tab.pivots)
        # drive zero-valued artificials out, dropping redundant rows
        keep = []
        for i in range(len(tab.rows)):
            if is_art(tab.basis[i]):
                col = next((k for k in sorted(tab.rows[i]) if not is_art(k)), None)
                if col is None:
                    continue
                tab.pivot(i, col)
            keep.append(i)
        tab.rows = [{k: v for k, v in tab.rows[i].items() if not is_art(k)} for i in keep]
        tab.rhs = [tab.rhs[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    d, z = _objective_row(tab, cost)
    status = _run(tab, d, z, lambda k: not is_art(k), rule, max_pivots)
    if status == "unbounded":
        return LPResult("unbounded", pivots=tab.pivots)
    x = {j: _to_fraction(tab.rhs[i]) for i, j in enumerate(tab.basis)
         if j < n_vars and tab.rhs[i]}
    return LPResult("optimal", x, _to_fraction(-z[0]), list(tab.basis), tab.pivots)


# branch and bound

@dataclass
class ILPResult:
    status: str
    x: dict[int, Fraction] = field(default_factory=dict)
    value: Fraction | None = None
    nodes: int = 0
    root_value: Fraction | None = None
    pivots: int = 0


def _is_integral(v: Fraction) -> bool:
    return v.denominator == 1


def branch_and_bound(
        cost: Mapping[int, object],
        constraints: Sequence[Constraint],
        n_vars: int,
        integer_exprs: Sequence[Mapping[int, int]],
        incumbent: tuple[Fraction, dict[int, Fraction]] | None = None,
        basis_hint: Iterable[int] = (),
        integral_objective: bool = True,
        rule: str = "bland",
        max_nodes: int | None = None,
) -> ILPResult:
    """Best-bound branch and bound on integrality of linear expressions.

    ``integer_exprs[k]`` is a linear form in the variables that must be an
    integer at a solution; branching adds ``expr <= floor`` /
    ``expr >= ceil`` rows.  The most fractional expression is branched on,
    ties going to the smallest ``k``.  With ``integral_objective`` nodes
    whose bound rounds up to the incumbent are pruned.
    """
    exprs = [{j: Fraction(c) for j, c in e.items()} for e in integer_exprs]
    best_val, best_x = (incumbent if incumbent is not None else (None, None))
    counter = itertools.count()
    root = simplex(cost, constraints, n_vars, basis_hint, rule)
    nodes = 1
    pivots = root.pivots
    if root.status != "optimal":
        return ILPResult(root.status, nodes=nodes, pivots=pivots)
    heap = [(root.value, next(counter), (), root)]
    root_value = root.value

    def prunable(bound: Fraction) -> bool:
        if best_val is None:
            return False
        if integral_objective:
            return math.ceil(bound) >= best_val
        return bound >= best_val

    while heap:
        bound, _, extra, res = heapq.heappop(heap)
        if prunable(bound):
            continue
        values = [sum((c * res.x.get(j, 0) for j, c in e.items()), Fraction(0))
                  for e in exprs]
        frac = [(abs((v - math.floor(v)) - Fraction(1, 2)), k)
                for k, v in enumerate(values) if not _is_integral(v)]
        if not frac:
            if best_val is None or res.value < best_val:
                best_val, best_x = res.value, res.x
            continue
        _, k = min(frac)
        v = values[k]
        for sense, rhs in ((LE, math.floor(v)), (GE, math.ceil(v))):
            if max_nodes is not None and nodes >= max_nodes:
                raise LPError(f"node limit {max_nodes} reached")
            child_extra = extra + (Constraint(exprs[k], sense, rhs),)
            child = simplex(cost, list(constraints) + list(child_extra), n_vars,
                            res.basis, rule)
            nodes += 1
            pivots += child.pivots
            if child.status != "optimal" or prunable(child.value):
                continue
            heapq.heappush(heap, (child.value, next(counter), child_extra, child))

    if best_val is None:
        return ILPResult("infeasible", nodes=nodes, root_value=root_value, pivots=pivots)
    return ILPResult("optimal", dict(best_x), best_val, nodes, root_value, pivots)
