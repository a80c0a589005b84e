"""Brute-force minimum fillings for tiny cycles.

Independent of the LP machinery: a depth-first search over integral
coefficients on the tets of ``Vert(X)`` in lexicographic order.  A
triangle is checked as soon as its last tet has been assigned, and a
branch is cut when its norm plus ``ceil(residual / 4)`` exceeds the best
known value (each unit of tet coefficient moves at most 4 units of
boundary).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chains import Chain, boundary, cone, l1_norm, max_degree_vertex, vert

MAX_VERTICES = 7


class OracleError(ValueError):
    pass


@dataclass
class OracleResult:
    value: int
    search_bound: int
    coeff_bound: int
    all_optimal_fillings: list[Chain] = field(default_factory=list)
    nodes: int = 0


def _coefficients(bound: int) -> list[int]:
    out = [0]
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


def _search(X: Chain, coeff_bound: int, collect: bool) -> OracleResult:
    if X.dimension != 2 or boundary(X):
        raise OracleError("oracle needs a 2-cycle")
    if not X.is_integral:
        raise OracleError("oracle needs an integral cycle")
    if coeff_bound < 1:
        raise OracleError("coeff_bound must be at least 1")
    vs = sorted(vert(X))
    if len(vs) > MAX_VERTICES:
        raise OracleError(f"oracle vertex cap {MAX_VERTICES} exceeded ({len(vs)} vertices)")
    if not X:
        return OracleResult(0, 0, coeff_bound, [Chain.zero(3)] if collect else [])

    search_bound = int(l1_norm(cone(max_degree_vertex(X), X)))
    tets = list(itertools.combinations(vs, 4))
    tris = list(itertools.combinations(vs, 3))
    tri_index = {t: i for i, t in enumerate(tris)}
    faces = []
    closes: list[list[int]] = [[] for _ in tets]
    last = {}
    for k, tet in enumerate(tets):
        fs = []
        for i in range(4):
            f = tri_index[tet[:i] + tet[i + 1:]]
            fs.append((f, 1 if i % 2 == 0 else -1))
            last[f] = k
        faces.append(fs)
    for f, k in last.items():
        closes[k].append(f)

    residual = [int(X[t]) for t in tris]
    coeffs = _coefficients(coeff_bound)
    chosen = [0] * len(tets)
    state = {"best": search_bound, "found": [], "hit": False, "nodes": 0,
             "res_l1": sum(abs(r) for r in residual)}

    def lower(norm: int) -> int:
        return norm + -(-state["res_l1"] // 4)

    def dfs(k: int, norm: int):
        state["nodes"] += 1
        if k == len(tets):
            # every triangle is closed here, so the residual is zero
            if norm < state["best"] or not state["hit"]:
                state["best"] = norm
                state["found"] = []
                state["hit"] = True
            if collect:
                state["found"].append(dict(enumerate(chosen)))
            return
        for c in coeffs:
            new_norm = norm + abs(c)
            if new_norm > state["best"]:
                continue
            if c:
                for f, s in faces[k]:
                    old = residual[f]
                    residual[f] = old - s * c
                    state["res_l1"] += abs(residual[f]) - abs(old)
            ok = all(residual[f] == 0 for f in closes[k])
            if ok:
                bound = lower(new_norm)
                # once a filling is known, only equal (collect) or better ones matter
                if state["hit"] and not collect:
                    ok = bound < state["best"]
                else:
                    ok = bound <= state["best"]
            if ok:
                chosen[k] = c
                dfs(k + 1, new_norm)
                chosen[k] = 0
            if c:
                for f, s in faces[k]:
                    old = residual[f]
                    residual[f] = old + s * c
                    state["res_l1"] += abs(residual[f]) - abs(old)

    dfs(0, 0)
    if not state["hit"]:
        raise OracleError(
            f"no filling with coefficients in [-{coeff_bound}, {coeff_bound}] "
            f"and norm <= {search_bound}; raise coeff_bound")
    fillings = []
    if collect:
        for assignment in state["found"]:
            fillings.append(Chain(3, {tets[k]: c for k, c in assignment.items() if c}))
        fillings.sort(key=lambda m: list(m.items()))
    return OracleResult(state["best"], search_bound, coeff_bound, fillings, state["nodes"])


def oracle_zvol(X: Chain, coeff_bound: int = 1, collect: bool = False) -> OracleResult:
    return _search(X, coeff_bound, collect)


def enumerate_taut(X: Chain, coeff_bound: int = 1) -> list[Chain]:
    """Every minimum-norm integral filling with coefficients within the bound."""
    return _search(X, coeff_bound, True).all_optimal_fillings
