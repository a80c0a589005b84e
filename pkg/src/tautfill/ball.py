"""Checks that a tet filling of a sphere is a shellable flag 3-ball.

Tets are handled as sorted 4-tuples; a filling chain supplies their
orientation signs.  The combinatorial core works on plain tet sets so the
recursive disassembly ("shucking") can pass sub-complexes around freely.
"""
from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .chains import Chain, OrientedSimplex, boundary
from .sphere import SphereError, SphereTriangulation, from_triples, orientation_cycle

log = logging.getLogger(__name__)

Tet = tuple[int, int, int, int]
Tri = tuple[int, int, int]


class BallError(ValueError):
    pass


class ShellingError(RuntimeError):
    pass


def faces_of(t: Sequence[int]) -> list[Tri]:
    return [tuple(x for x in t if x != v) for v in t]


def _incidence(tets: Iterable[Tet]) -> dict[Tri, list[Tet]]:
    inc: dict[Tri, list[Tet]] = defaultdict(list)
    for t in tets:
        for f in faces_of(t):
            inc[f].append(t)
    return inc


def _boundary_faces(tets: Iterable[Tet]) -> set[Tri]:
    return {f for f, ts in _incidence(tets).items() if len(ts) == 1}


def _components(tets: Iterable[Tet]) -> list[frozenset[Tet]]:
    """Connected components of the tet graph joined across shared triangles."""
    tets = sorted(tets)
    inc = _incidence(tets)
    seen: set[Tet] = set()
    comps = []
    for start in tets:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for f in faces_of(t):
                for u in inc[f]:
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _surface(chain: Chain) -> SphereTriangulation:
    """Boundary of a tet chain as an oriented sphere, or SphereError."""
    bd = boundary(chain)
    if any(abs(c) != 1 for _, c in bd.items()):
        raise SphereError("boundary has a coefficient other than +-1")
    triples = [OrientedSimplex(k, int(c)).ordered() for k, c in bd.items()]
    return from_triples(triples, keep_orientation=True)


@dataclass(frozen=True)
class BallComplex:
    chain: Chain
    boundary_surface: SphereTriangulation
    face_incidence: dict = field(compare=False, repr=False)

    @property
    def tets(self) -> list[Tet]:
        return self.chain.support()

    def sign(self, t: Tet) -> int:
        return int(self.chain.terms()[t])

    def sub_chain(self, tets: Iterable[Tet]) -> Chain:
        terms = self.chain.terms()
        return Chain(3, {t: terms[t] for t in tets})

    def boundary_faces_of(self, t: Tet) -> list[Tri]:
        return [f for f in faces_of(t) if f in self.boundary_surface.faces]

    def __len__(self) -> int:
        return len(self.chain)


def to_ball_complex(M: Chain, sigma: SphereTriangulation | None = None) -> BallComplex:
    """Check that ``M`` is simplicial, a pseudomanifold and bounds ``sigma``."""
    if M.dimension != 3:
        raise BallError("a ball complex is built from a 3-chain")
    if not M:
        raise BallError("empty chain")
    for key, c in M.items():
        if abs(c) != 1:
            raise BallError(f"coefficient with |value| != 1: {c} on tet {list(key)}")
    inc = _incidence(M.support())
    bd = boundary(M)
    for f, ts in sorted(inc.items()):
        if len(ts) >= 3:
            raise BallError(f"triangle {list(f)} in >= 3 tets")
        if len(ts) == 2 and bd[f] != 0:
            raise BallError(f"interior triangle mismatch at {list(f)}")
    if sigma is None:
        try:
            sigma = _surface(M)
        except SphereError as exc:
            raise BallError(f"boundary is not a sphere: {exc}") from None
    elif bd != orientation_cycle(sigma):
        raise BallError("boundary of the chain is not the orientation cycle of sigma")
    return BallComplex(M, sigma, dict(inc))


def eligible_tets(tau: BallComplex) -> list[Tet]:
    """Tets sharing exactly two faces with the boundary sphere."""
    out = []
    no_deg3 = not _has_degree3(tau.boundary_surface)
    for t in tau.tets:
        n = len(tau.boundary_faces_of(t))
        if n >= 3 and no_deg3:
            raise BallError(f"tet {list(t)} has {n} boundary faces but no vertex has degree 3")
        if n == 2:
            out.append(t)
    return out


def disjointly_eligible(tau: BallComplex) -> list[Tet]:
    """Greedy set of eligible tets with pairwise disjoint boundary-face pairs."""
    used: set[Tri] = set()
    out = []
    for t in eligible_tets(tau):
        pair = set(tau.boundary_faces_of(t))
        if pair & used:
            continue
        used |= pair
        out.append(t)
    return out


def _has_degree3(sigma: SphereTriangulation) -> bool:
    return any(d == 3 for d in sigma.degrees().values())


SPHERE, SPLIT, INVALID = "sphere", "split", "invalid"


@dataclass
class Removal:
    kind: str
    surfaces: list[SphereTriangulation] = field(default_factory=list)
    parts: list[frozenset[Tet]] = field(default_factory=list)
    flipped: tuple | None = None
    diagnostic: str = ""


def remove_tet(tau: BallComplex, t: Sequence[int]) -> Removal:
    """Remove ``t`` and classify what is left.

    ``sphere``: one ball remains (an edge flip, or a degree-3 vertex pulled
    off).  ``split``: two pieces whose boundary spheres meet in at most three
    vertices.  ``invalid`` otherwise.
    """
    t = tuple(sorted(t))
    if t not in tau.chain.terms():
        raise BallError(f"{list(t)} is not a tet of the complex")
    on_bd = tau.boundary_faces_of(t)
    if len(on_bd) < 2:
        raise BallError(f"tet {list(t)} has {len(on_bd)} boundary faces; need at least 2")
    flipped = None
    if len(on_bd) == 2:
        old = tuple(sorted(set(on_bd[0]) & set(on_bd[1])))
        flipped = (old, tuple(sorted(set(t) - set(old))))
    rest = [u for u in tau.tets if u != t]
    if not rest:
        return Removal(INVALID, flipped=flipped, diagnostic="complex would be empty")
    comps = _components(rest)
    if len(comps) > 2:
        return Removal(INVALID, parts=comps, flipped=flipped,
                       diagnostic=f"removal leaves {len(comps)} pieces")
    surfaces = []
    for comp in comps:
        try:
            surfaces.append(_surface(tau.sub_chain(comp)))
        except SphereError as exc:
            return Removal(INVALID, parts=comps, flipped=flipped,
                           diagnostic=f"remaining boundary is not a sphere: {exc}")
    if len(comps) == 1:
        return Removal(SPHERE, surfaces, comps, flipped)
    shared = surfaces[0].vertices & surfaces[1].vertices
    if len(shared) > 3:
        return Removal(INVALID, surfaces, comps, flipped,
                       f"pieces share {len(shared)} vertices")
    return Removal(SPLIT, surfaces, comps, flipped)


# shelling

@dataclass
class ShellingOrder:
    order: list[Tet]
    types: list[int]     # attachment type of order[1:], each 1 or 2

    def __len__(self) -> int:
        return len(self.order)


def _shuck(tets: frozenset[Tet], last: Tet) -> list[Tet]:
    """Removal sequence for ``tets`` ending with ``last``."""
    if len(tets) == 1:
        if last not in tets:
            raise ShellingError("anchor tet is not in the complex")
        return [last]
    inc = _incidence(tets)
    bfaces = {f for f, ts in inc.items() if len(ts) == 1}
    bdeg: dict[int, int] = defaultdict(int)
    for f in bfaces:
        for x in f:
            bdeg[x] += 1
    owners: dict[int, list[Tet]] = defaultdict(list)
    for t in tets:
        for x in t:
            owners[x].append(t)
    deg3 = [x for x in sorted(bdeg) if bdeg[x] == 3 and len(owners[x]) == 1]

    for x in deg3:
        t = owners[x][0]
        if t != last:
            return [t] + _shuck(tets - {t}, last)
    for x in deg3:
        if owners[x][0] == last:
            face = tuple(y for y in last if y != x)
            nxt = [u for u in inc[face] if u != last]
            if len(nxt) != 1:
                continue
            return _shuck(tets - {last}, nxt[0]) + [last]

    def shares_face(t: Tet) -> bool:
        return bool(set(faces_of(t)) & set(faces_of(last)))

    eligible = sorted(t for t in tets if t != last
                      and sum(1 for f in faces_of(t) if f in bfaces) == 2)
    ranked = [t for t in eligible if not shares_face(t)] + [t for t in eligible if shares_face(t)]
    for t in ranked:
        rest = tets - {t}
        comps = _components(rest)
        if len(comps) == 1:
            if _is_sphere_boundary(rest):
                return [t] + _shuck(rest, last)
            continue
        if len(comps) != 2:
            continue
        tau1 = next(c for c in comps if last in c)
        tau2 = next(c for c in comps if last not in c)
        links = [u for f in faces_of(t) for u in inc[f] if u in tau2]
        if len(links) != 1:
            continue
        return _shuck(tau2, links[0]) + [t] + _shuck(tau1, last)
    raise ShellingError(
        f"no admissible tet found while shucking {len(tets)} tets toward {list(last)}")


def _is_sphere_boundary(tets: Iterable[Tet]) -> bool:
    faces = _boundary_faces(tets)
    try:
        from_triples(sorted(faces), keep_orientation=False)
    except SphereError:
        return False
    return True


def certify_shelling(tau: BallComplex, order: Sequence[Tet]) -> ShellingOrder:
    """Re-check a shelling order step by step.

    Each new tet must meet the current ball in one face with its opposite
    vertex new, or in two faces with the complementary edge new; the
    prefix boundary must stay a sphere carrying the chain's orientation.
    """
    order = [tuple(t) for t in order]
    if sorted(order) != tau.tets:
        raise ShellingError("order is not a permutation of the tets")
    inc: dict[Tri, int] = defaultdict(int)
    verts: set[int] = set()
    edges: set[tuple[int, int]] = set()
    types = []
    for k, t in enumerate(order):
        if k:
            shared = [f for f in faces_of(t) if inc[f]]
            if any(inc[f] != 1 for f in shared):
                raise ShellingError(f"step {k + 1}: tet {list(t)} meets an interior face")
            n = len(shared)
            if n == 1:
                (d,) = set(t) - set(shared[0])
                if d in verts:
                    raise ShellingError(f"step {k + 1}: type 1 with old apex {d}")
            elif n == 2:
                common = set(shared[0]) & set(shared[1])
                e = tuple(sorted(set(t) - common))
                if e in edges:
                    raise ShellingError(f"step {k + 1}: type 2 with old edge {list(e)}")
            elif n == 3:
                raise ShellingError(f"step {k + 1}: type 3 attachment of {list(t)}")
            else:
                raise ShellingError(f"step {k + 1}: tet {list(t)} meets the prefix in {n} faces")
            types.append(n)
        for f in faces_of(t):
            inc[f] += 1
        verts.update(t)
        edges.update(itertools.combinations(t, 2))
        prefix = tau.sub_chain(order[:k + 1])
        try:
            surf = _surface(prefix)
        except SphereError as exc:
            raise ShellingError(f"step {k + 1}: prefix boundary is not a sphere: {exc}") from None
        if orientation_cycle(surf) != boundary(prefix):
            raise ShellingError(f"step {k + 1}: prefix boundary orientation mismatch")
    return ShellingOrder(order, types)


def shuck(tau: BallComplex, last: Sequence[int]) -> ShellingOrder:
    """Certified shelling of ``tau`` that starts with ``last``."""
    last = tuple(sorted(last))
    if last not in tau.chain.terms():
        raise BallError(f"{list(last)} is not a tet of the complex")
    removal = _shuck(frozenset(tau.tets), last)
    return certify_shelling(tau, removal[::-1])


@dataclass
class ShellabilityReport:
    results: dict = field(default_factory=dict)    # tet -> ShellingOrder or error text

    @property
    def passed(self) -> bool:
        return all(isinstance(r, ShellingOrder) for r in self.results.values())

    @property
    def failures(self) -> list:
        return [t for t, r in self.results.items() if not isinstance(r, ShellingOrder)]


def verify_freely_shellable(tau: BallComplex) -> ShellabilityReport:
    report = ShellabilityReport()
    for t in tau.tets:
        try:
            report.results[t] = shuck(tau, t)
        except ShellingError as exc:
            report.results[t] = str(exc)
    return report


def eligibility_observation(tau: BallComplex) -> dict:
    """Counts of disjointly eligible tets against the boundary maxdeg."""
    sigma = tau.boundary_surface
    count = len(disjointly_eligible(tau))
    out = {"disjointly_eligible": count, "maxdeg": sigma.maxdeg,
           "degree3": _has_degree3(sigma)}
    if not out["degree3"] and count < sigma.maxdeg:
        log.warning("only %d disjointly eligible tets against maxdeg %d", count, sigma.maxdeg)
    return out


# global ball check

@dataclass
class BallCertificate:
    connected: bool
    boundary_is_sphere: bool
    euler_characteristic: int
    bad_links: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.connected and self.boundary_is_sphere
                and self.euler_characteristic == 1 and not self.bad_links)


def _link_is_disc_or_sphere(link: list[Tri]) -> bool:
    try:
        from_triples(link, keep_orientation=False)
        return True
    except SphereError:
        pass
    edge_count: dict = defaultdict(int)
    for f in link:
        for e in itertools.combinations(f, 2):
            edge_count[e] += 1
    if any(n > 2 for n in edge_count.values()):
        return False
    rim = [e for e, n in edge_count.items() if n == 1]
    adj: dict[int, list[int]] = defaultdict(list)
    for a, b in rim:
        adj[a].append(b)
        adj[b].append(a)
    if not rim or any(len(n) != 2 for n in adj.values()):
        return False
    start = rim[0][0]
    seen, stack = {start}, [start]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(adj):
        return False
    verts = {x for f in link for x in f}
    if len(verts) - len(edge_count) + len(link) != 1:
        return False
    by_edge: dict = defaultdict(list)
    for i, f in enumerate(link):
        for e in itertools.combinations(f, 2):
            by_edge[e].append(i)
    reached, stack = {0}, [0]
    while stack:
        for e in itertools.combinations(link[stack.pop()], 2):
            for j in by_edge[e]:
                if j not in reached:
                    reached.add(j)
                    stack.append(j)
    return len(reached) == len(link)


def certify_ball(tau: BallComplex) -> BallCertificate:
    """From-scratch check: connected, boundary a sphere, chi = 1, vertex links discs."""
    tets = tau.tets
    connected = len(_components(tets)) == 1
    try:
        _surface(tau.chain)
        sphere_ok = True
    except SphereError:
        sphere_ok = False
    verts = {x for t in tets for x in t}
    edges = {e for t in tets for e in itertools.combinations(t, 2)}
    tris = {f for t in tets for f in faces_of(t)}
    chi = len(verts) - len(edges) + len(tris) - len(tets)
    bad = []
    for x in sorted(verts):
        link = [tuple(y for y in t if y != x) for t in tets if x in t]
        if not _link_is_disc_or_sphere(link):
            bad.append(x)
    return BallCertificate(connected, sphere_ok, chi, bad)


# flag condition

@dataclass
class FlagReport:
    empty_triangles: list = field(default_factory=list)
    empty_k4: list = field(default_factory=list)
    k5_cliques: list = field(default_factory=list)

    @property
    def is_flag(self) -> bool:
        return not (self.empty_triangles or self.empty_k4 or self.k5_cliques)


def flag_check(tau: BallComplex | Iterable[Sequence[int]]) -> FlagReport:
    """Look for an empty triangle, an empty K4 and any K5 in the 1-skeleton.

    Besides a ball complex this takes raw simplices (edges, triangles, tets),
    closed downward, so hand-built complexes can be checked too.
    """
    cells = tau.tets if isinstance(tau, BallComplex) else [tuple(sorted(t)) for t in tau]
    if any(not 2 <= len(t) <= 4 for t in cells):
        raise BallError("flag_check takes edges, triangles and tets")
    tet_set = {t for t in cells if len(t) == 4}
    tris = {f for t in tet_set for f in faces_of(t)} | {t for t in cells if len(t) == 3}
    adj: dict[int, set[int]] = defaultdict(set)
    for t in cells:
        for a, b in itertools.combinations(t, 2):
            adj[a].add(b)
            adj[b].add(a)
    report = FlagReport()
    for a in sorted(adj):
        for b in sorted(y for y in adj[a] if y > a):
            ab = adj[a] & adj[b]
            for c in sorted(z for z in ab if z > b):
                if (a, b, c) not in tris:
                    report.empty_triangles.append((a, b, c))
                abc = ab & adj[c]
                for d in sorted(z for z in abc if z > c):
                    q = (a, b, c, d)
                    if q not in tet_set and all(f in tris for f in faces_of(q)):
                        report.empty_k4.append(q)
                    for e in sorted(z for z in abc & adj[d] if z > d):
                        report.k5_cliques.append((a, b, c, d, e))
    return report
