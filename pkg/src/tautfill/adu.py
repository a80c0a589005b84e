"""Almost disjoint unions and the splitting of taut fillings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import Chain, boundary, l1_norm, lcm_denominator, project, vert
from .fill import qvol, zvol

PURE_X = "X"
PURE_Y = "Y"
HYBRID = "hybrid"


class SplitError(RuntimeError):
    pass


@dataclass(frozen=True)
class AduWitness:
    A: frozenset[int]
    B: frozenset[int]
    X: Chain
    Y: Chain

    def __post_init__(self):
        if self.X.dimension != self.Y.dimension:
            raise ValueError("X and Y must have the same dimension")
        if not vert(self.X) <= self.A:
            raise ValueError("X is not supported on A")
        if not vert(self.Y) <= self.B:
            raise ValueError("Y is not supported on B")
        n = self.X.dimension
        if len(self.C) > n + 1:
            raise ValueError(f"|A & B| = {len(self.C)} exceeds n + 1 = {n + 1}")

    @property
    def C(self) -> frozenset[int]:
        return self.A & self.B

    @property
    def n(self) -> int:
        return self.X.dimension

    @property
    def total(self) -> Chain:
        return self.X + self.Y

    def scaled(self, q) -> "AduWitness":
        return AduWitness(self.A, self.B, self.X * q, self.Y * q)


def witness(X: Chain, Y: Chain) -> AduWitness:
    return AduWitness(vert(X), vert(Y), X, Y)


def witness_for_sum(total: Chain, X: Chain, Y: Chain) -> AduWitness:
    """Witness for ``total = +-(X + Y)``, flipping both parts if needed."""
    if X + Y == total:
        return witness(X, Y)
    if X + Y == -total:
        return witness(-X, -Y)
    raise ValueError("parts do not sum to the given cycle")


def _guard(w: AduWitness) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """(A, B, C) with a fresh shared point when A and B are disjoint."""
    if w.C:
        return w.A, w.B, w.C
    fresh = max(w.A | w.B, default=-1) + 1
    return w.A | {fresh}, w.B | {fresh}, frozenset({fresh})


def g_split(M: Chain, w: AduWitness, p: int | None = None, q: int | None = None
            ) -> tuple[Chain, Chain]:
    """Apply ``K(A, p) + K(B, q)`` to ``M``."""
    A, B, C = _guard(w)
    if not w.C:
        p = q = next(iter(C))
    if p not in C or q not in C:
        raise ValueError("projection points must lie in A & B")
    if len(C) >= 2 and p == q:
        raise ValueError("p and q must be distinct when |A & B| >= 2")
    return project(M, A, p), project(M, B, q)


def split_pairs(w: AduWitness) -> list[tuple[int | None, int | None]]:
    """Every admissible ``(p, q)`` for ``g_split``."""
    if not w.C:
        return [(None, None)]
    C = sorted(w.C)
    if len(C) == 1:
        return [(C[0], C[0])]
    return list(itertools.permutations(C, 2))


def tet_type(simplex, w: AduWitness) -> str:
    C = w.C
    nc = sum(1 for x in simplex if x in C)
    nx = sum(1 for x in simplex if x in w.A and x not in C)
    ny = sum(1 for x in simplex if x in w.B and x not in C)
    if nc + nx + ny != len(simplex):
        raise ValueError(f"vertex of {simplex} lies outside A | B")
    return "C" * nc + "X" * nx + "Y" * ny


def side_of(label: str) -> str:
    if "Y" not in label:
        return PURE_X
    if "X" not in label:
        return PURE_Y
    return HYBRID


def classify_tets(M: Chain, w: AduWitness) -> dict[str, Chain]:
    out: dict[str, dict] = {}
    for key, c in M.items():
        out.setdefault(tet_type(key, w), {})[key] = c
    return {label: Chain(M.dimension, terms) for label, terms in sorted(out.items())}


def hybrid_mass(M: Chain, w: AduWitness) -> Fraction:
    return sum((l1_norm(ch) for label, ch in classify_tets(M, w).items()
                if side_of(label) == HYBRID), Fraction(0))


def split_taut(M: Chain, w: AduWitness) -> tuple[Chain, Chain]:
    """Split a taut tet filling of ``X + Y`` into its pure X and pure Y parts.

    Raises SplitError on any hybrid tet: for a taut M that would contradict
    the splitting theorem, so it is never repaired here.
    """
    if M.dimension != 3:
        raise ValueError("split_taut handles fillings of 2-cycles only")
    if boundary(M) != w.total:
        raise ValueError("M does not fill X + Y")
    MX, MY = {}, {}
    for key, c in M.items():
        label = tet_type(key, w)
        side = side_of(label)
        if side == HYBRID:
            raise SplitError(
                f"hybrid tet found in allegedly taut filling: {list(key)} of type {label}")
        (MX if side == PURE_X else MY)[key] = c
    mx, my = Chain(3, MX), Chain(3, MY)
    if boundary(mx) != w.X or boundary(my) != w.Y:
        raise SplitError("pure parts do not fill X and Y")
    return mx, my


@dataclass
class AdditivityReport:
    zvol_x: Fraction
    zvol_y: Fraction
    zvol_sum: Fraction
    split_norms: dict = field(default_factory=dict)
    hybrid_mass: Fraction = Fraction(0)
    mode: str = "integral"

    @property
    def additive(self) -> bool:
        return self.zvol_sum == self.zvol_x + self.zvol_y

    @property
    def inequalities_hold(self) -> bool:
        # |M| >= |M_X| + |M_Y| >= vol(X) + vol(Y), for every (p, q)
        low = self.zvol_x + self.zvol_y
        return all(self.zvol_sum >= a + b >= low for a, b in self.split_norms.values())

    @property
    def passed(self) -> bool:
        return self.additive and self.inequalities_hold and self.hybrid_mass == 0


def additivity_check(w: AduWitness) -> AdditivityReport:
    zx, zy = zvol(w.X), zvol(w.Y)
    total = zvol(w.total)
    M = total.filling
    norms = {}
    for p, q in split_pairs(w):
        mx, my = g_split(M, w, p, q)
        norms[(p, q)] = (l1_norm(mx), l1_norm(my))
    return AdditivityReport(zx.value, zy.value, total.value, norms,
                            hybrid_mass(M, w) if w.n == 2 else Fraction(0))


@dataclass
class QvolAdditivityReport:
    qvol_x: Fraction
    qvol_y: Fraction
    qvol_sum: Fraction
    denominator: int
    parts: tuple[Chain, Chain] | None = None
    error: str | None = None

    @property
    def additive(self) -> bool:
        return self.qvol_sum == self.qvol_x + self.qvol_y

    @property
    def passed(self) -> bool:
        return self.additive and self.error is None


def qvol_additivity_check(w: AduWitness) -> QvolAdditivityReport:
    """Rational additivity, plus the split of a taut rational filling.

    The LP optimum M is cleared of denominators (qM is then a taut integral
    filling of qX + qY), split, and divided back by q.
    """
    qx, qy = qvol(w.X), qvol(w.Y)
    total = qvol(w.total)
    M = total.filling
    q = lcm_denominator(M)
    parts, error = None, None
    try:
        mx, my = split_taut(M * q, w.scaled(q))
        parts = (mx / q, my / q)
        if l1_norm(parts[0]) != qx.value or l1_norm(parts[1]) != qy.value:
            error = "split parts are not taut for X and Y"
    except (SplitError, ValueError) as exc:
        error = str(exc)
    return QvolAdditivityReport(qx.value, qy.value, total.value, q, parts, error)
