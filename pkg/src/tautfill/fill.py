"""Minimum L1 fillings of 2-cycles over the rationals and the integers.

The LP has one column pair ``(m+, m-)`` per 4-subset of ``Vert(X)`` and
one row per triangle avoiding the coning vertex ``r``: a triangle
containing ``r`` is automatically balanced once all the others are, since
a 2-cycle supported on the star of ``r`` is zero.  The tets through ``r``
then form a feasible starting basis: the cone from ``r``.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import (Chain, ChainError, boundary, cone, is_sub_multiset,
                     l1_norm, lcm_denominator, max_degree_vertex, maxdeg, nbhd, vert)
from .lp import Constraint, EQ, LPError, branch_and_bound, simplex

INTEGRAL = "integral"
RATIONAL = "rational"


class FillError(ValueError):
    pass


@dataclass(frozen=True)
class FillProblem:
    target: Chain
    apex: int
    tets: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[int, ...], ...]
    constraints: tuple[Constraint, ...] = field(repr=False)
    hint: tuple[int, ...] = field(repr=False)

    @property
    def n_vars(self) -> int:
        return 2 * len(self.tets)

    def cost(self) -> dict[int, int]:
        return {j: 1 for j in range(self.n_vars)}

    def net_expressions(self) -> list[dict[int, int]]:
        return [{2 * k: 1, 2 * k + 1: -1} for k in range(len(self.tets))]

    def chain_from(self, x: dict[int, Fraction]) -> Chain:
        terms = {}
        for k, tet in enumerate(self.tets):
            v = x.get(2 * k, 0) - x.get(2 * k + 1, 0)
            if v:
                terms[tet] = v
        return Chain(3, terms)


@dataclass(frozen=True)
class FillResult:
    filling: Chain
    value: Fraction
    mode: str
    optimal: bool
    bound_used: Fraction
    nodes: int = 1
    pivots: int = 0
    seconds: float = 0.0


def _require_cycle(X: Chain):
    if X.dimension != 2:
        raise FillError(f"expected a 2-cycle, got dimension {X.dimension}")
    if boundary(X):
        raise FillError("target is not closed")


def coning_bound(X: Chain) -> tuple[int, Chain]:
    """Cone from the smallest vertex of maximal degree."""
    _require_cycle(X)
    if not X:
        raise FillError("zero cycle has no coning vertex")
    x = max_degree_vertex(X)
    return x, cone(x, X)


def fill_problem(X: Chain) -> FillProblem:
    _require_cycle(X)
    apex = max_degree_vertex(X)
    vs = sorted(vert(X))
    tets = tuple(itertools.combinations(vs, 4))
    col = {t: k for k, t in enumerate(tets)}
    rows = tuple(t for t in itertools.combinations(vs, 3) if apex not in t)
    row_of = {t: i for i, t in enumerate(rows)}
    coeffs: list[dict[int, int]] = [{} for _ in rows]
    for k, tet in enumerate(tets):
        for i in range(4):
            face = tet[:i] + tet[i + 1:]
            r = row_of.get(face)
            if r is None:
                continue
            s = 1 if i % 2 == 0 else -1
            coeffs[r][2 * k] = s
            coeffs[r][2 * k + 1] = -s
    constraints = tuple(Constraint(c, EQ, X[t]) for c, t in zip(coeffs, rows))
    # cone basis: tet (apex + t) carries the coefficient of t, up to the sign
    # of apex's slot
    hint = []
    for t in rows:
        tet = tuple(sorted(t + (apex,)))
        pos = tet.index(apex)
        s = 1 if pos % 2 == 0 else -1
        k = col[tet]
        hint.append(2 * k if s * X[t] >= 0 else 2 * k + 1)
    return FillProblem(X, apex, tets, rows, constraints, tuple(hint))


def _zero_result(mode: str) -> FillResult:
    z = Fraction(0)
    return FillResult(Chain.zero(3), z, mode, True, z)


def qvol(X: Chain, rule: str = "bland") -> FillResult:
    """Exact rational optimum of the filling LP."""
    _require_cycle(X)
    if not X:
        return _zero_result(RATIONAL)
    start = time.perf_counter()
    prob = fill_problem(X)
    res = simplex(prob.cost(), prob.constraints, prob.n_vars, prob.hint, rule)
    if res.status != "optimal":
        raise LPError(f"filling LP reported {res.status}; a cone is always feasible")
    filling = prob.chain_from(res.x)
    _check(filling, X, res.value)
    bound = l1_norm(X) - maxdeg(X)
    return FillResult(filling, res.value, RATIONAL, True, bound, 1, res.pivots,
                      time.perf_counter() - start)


def zvol(X: Chain, rule: str = "bland", max_nodes: int | None = None) -> FillResult:
    """Exact integral optimum by branch and bound, warm-started at the coning filling."""
    _require_cycle(X)
    if not X:
        return _zero_result(INTEGRAL)
    if not X.is_integral:
        raise FillError("integral filling needs an integral cycle")
    start = time.perf_counter()
    prob = fill_problem(X)
    apex, cone_chain = prob.apex, cone(prob.apex, X)
    bound = l1_norm(cone_chain)
    incumbent_x = {}
    for k, tet in enumerate(prob.tets):
        c = cone_chain.terms().get(tet)
        if c:
            incumbent_x[2 * k if c > 0 else 2 * k + 1] = abs(c)
    res = branch_and_bound(prob.cost(), prob.constraints, prob.n_vars,
                           prob.net_expressions(), incumbent=(bound, incumbent_x),
                           basis_hint=prob.hint, rule=rule, max_nodes=max_nodes)
    if res.status != "optimal":
        raise LPError(f"filling ILP reported {res.status}; a cone is always feasible")
    filling = prob.chain_from(res.x)
    if not filling.is_integral:
        raise LPError("branch and bound returned a fractional filling")
    _check(filling, X, res.value)
    return FillResult(filling, res.value, INTEGRAL, True, bound, res.nodes, res.pivots,
                      time.perf_counter() - start)


def _check(filling: Chain, X: Chain, value: Fraction):
    if boundary(filling) != X:
        raise LPError("solver filling does not bound the target")
    if l1_norm(filling) != value:
        raise LPError("solver objective disagrees with the filling norm")


def is_taut(M: Chain) -> bool:
    if M.dimension != 3:
        raise FillError("tautness is checked for 3-chains")
    if not M.is_integral:
        raise FillError("integral tautness needs an integral chain")
    return l1_norm(M) == zvol(boundary(M)).value


# propositions about taut fillings

@dataclass
class CheckReport:
    name: str
    passed: bool
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


def verify_no_internal_vertex(M: Chain) -> CheckReport:
    inner = sorted(vert(M) - vert(boundary(M)))
    return CheckReport("no_internal_vertex", not inner, inner)


def verify_no_complete_cone(M: Chain) -> CheckReport:
    """Each vertex's neighbourhood must leave the vertex on its own boundary."""
    bad = []
    for x in sorted(vert(M)):
        star = nbhd(x, M)
        if star and x not in vert(boundary(star)):
            bad.append(x)
    return CheckReport("no_complete_cone", not bad, bad)


def random_sub_multiset(M: Chain, rng: random.Random) -> Chain:
    """Keep a random number of copies of each oriented term of ``M``."""
    terms = {}
    for key, c in M.items():
        n = abs(c)
        if n.denominator != 1:
            raise FillError("sub-multisets are defined for integral chains")
        keep = rng.randint(0, int(n))
        if keep:
            terms[key] = keep if c > 0 else -keep
    return Chain(M.dimension, terms)


def verify_subtaut(M: Chain, trials: int = 10, seed: int = 0) -> CheckReport:
    """Sample sub-multisets of a taut ``M`` and check each is taut."""
    rng = random.Random(seed)
    samples = [M, Chain.zero(M.dimension)]
    samples += [random_sub_multiset(M, rng) for _ in range(trials)]
    bad = []
    for U in samples:
        if not is_sub_multiset(U, M):
            raise FillError("sampled chain is not a sub-multiset")
        if l1_norm(U) != zvol(boundary(U)).value:
            bad.append(U)
    return CheckReport("subtaut", not bad, bad, {"samples": len(samples)})


def denominator_clearing(M: Chain, X: Chain) -> tuple[int, Chain]:
    """Scale a rational filling to an integral one; returns ``(q, qM)``."""
    if boundary(M) != X:
        raise ChainError("M does not fill X")
    q = lcm_denominator(M)
    return q, M * q

