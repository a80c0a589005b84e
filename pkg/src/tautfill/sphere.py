"""Simplicial triangulations of the 2-sphere.

Recognition is combinatorial: every edge lies in exactly two faces, every
vertex link is a single cycle, the face graph is connected and
``v - e + f = 2``.
"""
from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .chains import Chain, boundary, permutation_sign

Triangle = tuple[int, int, int]
Edge = tuple[int, int]


class SphereError(ValueError):
    pass


def _edges_of(face: Sequence[int]) -> list[Edge]:
    a, b, c = sorted(face)
    return [(a, b), (a, c), (b, c)]


@dataclass(frozen=True)
class SphereTriangulation:
    vertices: frozenset[int]
    faces: frozenset[Triangle]
    oriented_faces: tuple[Triangle, ...] = field(compare=False)

    @property
    def v(self) -> int:
        return len(self.vertices)

    @property
    def f(self) -> int:
        return len(self.faces)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(e for t in self.faces for e in _edges_of(t))

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def stats(self) -> dict[str, int]:
        return {"v": self.v, "e": self.e, "f": self.f}

    def degree(self, x: int) -> int:
        return sum(1 for t in self.faces if x in t)

    def degrees(self) -> dict[int, int]:
        out = {x: 0 for x in self.vertices}
        for t in self.faces:
            for x in t:
                out[x] += 1
        return out

    @property
    def maxdeg(self) -> int:
        return max(self.degrees().values())

    def oriented(self, face: Sequence[int]) -> Triangle:
        """The orientation of ``face`` used by ``orientation_cycle``."""
        key = tuple(sorted(face))
        for t in self.oriented_faces:
            if tuple(sorted(t)) == key:
                return t
        raise SphereError(f"{tuple(face)} is not a face")

    def relabel(self, mapping: dict[int, int]) -> "SphereTriangulation":
        return from_triples([tuple(mapping[x] for x in t) for t in self.oriented_faces],
                            keep_orientation=True)


def _orient(faces: Sequence[Triangle]) -> tuple[Triangle, ...] | None:
    """Coherent orientation, smallest face taken positively; None if impossible."""
    ordered = sorted(faces)
    by_edge: dict[Edge, list[Triangle]] = defaultdict(list)
    for t in ordered:
        for e in _edges_of(t):
            by_edge[e].append(t)
    orient: dict[Triangle, Triangle] = {ordered[0]: ordered[0]}
    queue = deque([ordered[0]])
    while queue:
        t = queue.popleft()
        o = orient[t]
        for i in range(3):
            a, b = o[i], o[(i + 1) % 3]
            e = (min(a, b), max(a, b))
            for u in by_edge[e]:
                if u == t:
                    continue
                w = next(x for x in u if x not in e)
                # u must traverse the shared edge as b -> a
                want = (b, a, w)
                if u in orient:
                    if permutation_sign(orient[u]) * permutation_sign(want) != 1:
                        return None
                else:
                    orient[u] = want
                    queue.append(u)
    if len(orient) != len(ordered):
        return None
    return tuple(_rotate_min(orient[t]) for t in ordered)


def _rotate_min(t: Sequence[int]) -> Triangle:
    i = t.index(min(t))
    return (t[i], t[(i + 1) % 3], t[(i + 2) % 3])


def _is_coherent(triples: Sequence[Triangle]) -> bool:
    return not boundary(Chain.from_oriented(triples, dimension=2))


def validate(faces: Iterable[Sequence[int]]) -> SphereTriangulation:
    """Check that ``faces`` triangulate S^2 and return the triangulation."""
    return from_triples(faces, keep_orientation=False)


def from_triples(faces: Iterable[Sequence[int]], keep_orientation: bool = True
                 ) -> SphereTriangulation:
    """Validate a face list, keeping its orientation when it is coherent."""
    triples = [tuple(int(x) for x in t) for t in faces]
    if not triples:
        raise SphereError("empty face set")
    for t in triples:
        if len(t) != 3:
            raise SphereError(f"face {t} is not a triangle")
        if len(set(t)) != 3:
            raise SphereError(f"face {t} has a repeated vertex")
        if min(t) < 0:
            raise SphereError(f"face {t} has a negative vertex label")
    keys = [tuple(sorted(t)) for t in triples]
    if len(set(keys)) != len(keys):
        dup = next(k for k in keys if keys.count(k) > 1)
        raise SphereError(f"duplicate face {dup}")

    edge_count: dict[Edge, int] = defaultdict(int)
    for k in keys:
        for e in _edges_of(k):
            edge_count[e] += 1
    for e, n in sorted(edge_count.items()):
        if n != 2:
            raise SphereError(f"edge {e} lies in {n} faces, expected 2")

    vertices = sorted({x for k in keys for x in k})
    for x in vertices:
        if not _link_is_cycle(x, keys):
            raise SphereError(f"link of vertex {x} is not a single cycle")

    if not _face_graph_connected(keys):
        raise SphereError("triangulation is disconnected")

    v, e, f = len(vertices), len(edge_count), len(keys)
    if v - e + f != 2:
        raise SphereError(f"Euler characteristic {v - e + f} != 2")

    oriented = None
    if keep_orientation and _is_coherent(triples):
        oriented = tuple(sorted((_rotate_min(t) for t in triples),
                                key=lambda t: tuple(sorted(t))))
    if oriented is None:
        oriented = _orient(keys)
    if oriented is None:
        raise SphereError("triangulation is not orientable")
    return SphereTriangulation(frozenset(vertices), frozenset(keys), oriented)


def _link_is_cycle(x: int, keys: Sequence[Triangle]) -> bool:
    link = [tuple(y for y in k if y != x) for k in keys if x in k]
    if len(link) < 3:
        return False
    adj: dict[int, list[int]] = defaultdict(list)
    for a, b in link:
        adj[a].append(b)
        adj[b].append(a)
    if any(len(n) != 2 for n in adj.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for n in adj[stack.pop()]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(adj) == len(link)


def _face_graph_connected(keys: Sequence[Triangle]) -> bool:
    by_edge: dict[Edge, list[int]] = defaultdict(list)
    for i, k in enumerate(keys):
        for e in _edges_of(k):
            by_edge[e].append(i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for e in _edges_of(keys[i]):
            for j in by_edge[e]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(keys)


def orientation_cycle(sigma: SphereTriangulation) -> Chain:
    return Chain.from_oriented(sigma.oriented_faces, dimension=2)


# catalog

CATALOG = ("tetrahedron", "bipyramid", "octahedron", "icosahedron",
           "wheel_double", "stacked")

_DEFAULT_PARAM = {"bipyramid": 3, "wheel_double": 3, "stacked": 1}


def catalog(name: str, parameter: int | None = None) -> SphereTriangulation:
    """Named test triangulations with vertex labels ``0..v-1``.

    ``bipyramid:k``   suspension of a k-gon (k >= 3); ``bipyramid:4`` is the octahedron
    ``wheel_double:k`` k-gonal antiprism with both k-gon ends coned off (k >= 3);
                       ``wheel_double:5`` is the icosahedron
    ``stacked:k``     boundary of the tetrahedron after k vertex stackings (k >= 0)
    """
    if name not in CATALOG:
        raise SphereError(f"unknown catalog name {name!r}")
    if parameter is None:
        parameter = _DEFAULT_PARAM.get(name)
    elif name in ("tetrahedron", "octahedron", "icosahedron"):
        raise SphereError(f"{name} takes no parameter")
    if name == "tetrahedron":
        faces = list(itertools.combinations(range(4), 3))
    elif name == "octahedron":
        faces = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    elif name == "icosahedron":
        faces = _icosahedron()
    elif name == "bipyramid":
        if parameter < 3:
            raise SphereError("bipyramid needs a k-gon with k >= 3")
        k = parameter
        faces = []
        for i in range(k):
            j = (i + 1) % k
            faces += [(i, j, k), (i, j, k + 1)]
    elif name == "wheel_double":
        if parameter < 3:
            raise SphereError("wheel_double needs k >= 3")
        faces = _wheel_double(parameter)
    else:
        if parameter < 0:
            raise SphereError("stacked needs k >= 0")
        faces = _stacked(parameter)
    return validate(faces)


def _icosahedron() -> list[Triangle]:
    top, bottom = 0, 11
    upper = [1, 2, 3, 4, 5]
    lower = [6, 7, 8, 9, 10]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces.append((top, upper[i], upper[j]))
        faces.append((bottom, lower[i], lower[j]))
        faces.append((upper[i], upper[j], lower[i]))
        faces.append((upper[j], lower[i], lower[j]))
    return faces


def _wheel_double(k: int) -> list[Triangle]:
    hub_a, hub_b = 0, 2 * k + 1
    ring_a = list(range(1, k + 1))
    ring_b = list(range(k + 1, 2 * k + 1))
    faces = []
    for i in range(k):
        j = (i + 1) % k
        faces.append((hub_a, ring_a[i], ring_a[j]))
        faces.append((hub_b, ring_b[i], ring_b[j]))
        faces.append((ring_a[i], ring_a[j], ring_b[i]))
        faces.append((ring_a[j], ring_b[i], ring_b[j]))
    return faces


def _stacked(k: int) -> list[Triangle]:
    faces = set(itertools.combinations(range(4), 3))
    for step in range(k):
        new = 4 + step
        last = new - 1
        target = min(t for t in faces if last in t)
        faces.remove(target)
        a, b, c = target
        faces |= {tuple(sorted(p)) for p in ((a, b, new), (a, c, new), (b, c, new))}
    return sorted(faces)


# connected sums and prime decomposition

def relabel_for_sum(sigma1: SphereTriangulation, t1: Sequence[int],
                    sigma2: SphereTriangulation, t2: Sequence[int]) -> SphereTriangulation:
    """Relabel ``sigma2`` so its face ``t2`` lands on ``t1`` with reversed orientation.

    Both faces are taken with the orientation each sphere already carries.
    Vertices off ``t2`` get fresh labels above ``max(sigma1.vertices)``.
    """
    o1 = sigma1.oriented(t1)
    o2 = sigma2.oriented(t2)
    mapping = {o2[0]: o1[1], o2[1]: o1[0], o2[2]: o1[2]}
    fresh = max(sigma1.vertices) + 1
    for x in sorted(sigma2.vertices):
        if x not in mapping:
            mapping[x] = fresh
            fresh += 1
    if len(set(mapping.values())) != len(mapping):
        raise SphereError("relabeling collision")
    out = sigma2.relabel(mapping)
    if set(out.vertices) & set(sigma1.vertices) != set(o1):
        raise SphereError("relabeling collision")
    return out


def connected_sum(sigma1: SphereTriangulation, t1: Sequence[int],
                  sigma2: SphereTriangulation, t2: Sequence[int]) -> SphereTriangulation:
    return glue(sigma1, relabel_for_sum(sigma1, t1, sigma2, t2))


def glue(sigma1: SphereTriangulation, sigma2: SphereTriangulation) -> SphereTriangulation:
    """Connected sum of two spheres already sharing exactly one face."""
    shared = sigma1.faces & sigma2.faces
    if len(shared) != 1 or len(sigma1.vertices & sigma2.vertices) != 3:
        raise SphereError("spheres must share exactly one face and its three vertices")
    t = next(iter(shared))
    o1, o2 = sigma1.oriented(t), sigma2.oriented(t)
    flip = permutation_sign(o1) == permutation_sign(o2)
    faces2 = [(b, a, c) if flip else (a, b, c) for a, b, c in sigma2.oriented_faces]
    triples = [f for f in sigma1.oriented_faces if tuple(sorted(f)) != t]
    triples += [f for f in faces2 if tuple(sorted(f)) != t]
    return from_triples(triples, keep_orientation=True)


def skeleton_triangles(sigma: SphereTriangulation) -> list[Triangle]:
    """All 3-cliques of the 1-skeleton."""
    adj: dict[int, set[int]] = defaultdict(set)
    for a, b in sigma.edges:
        adj[a].add(b)
        adj[b].add(a)
    out = []
    for a in sorted(adj):
        for b in sorted(y for y in adj[a] if y > a):
            for c in sorted(z for z in adj[a] & adj[b] if z > b):
                out.append((a, b, c))
    return out


def separating_triangles(sigma: SphereTriangulation) -> list[Triangle]:
    return [t for t in skeleton_triangles(sigma) if t not in sigma.faces]


def is_prime(sigma: SphereTriangulation) -> bool:
    return not separating_triangles(sigma)


def is_flag(sigma: SphereTriangulation) -> bool:
    """Every clique of the 1-skeleton spans a simplex of ``sigma``."""
    if separating_triangles(sigma):
        return False
    adj: dict[int, set[int]] = defaultdict(set)
    for a, b in sigma.edges:
        adj[a].add(b)
        adj[b].add(a)
    # a 2-complex is flag only if it has no K4
    for a, b, c in skeleton_triangles(sigma):
        if adj[a] & adj[b] & adj[c]:
            return False
    return True


def split_along(sigma: SphereTriangulation, tri: Sequence[int]
                ) -> tuple[SphereTriangulation, SphereTriangulation]:
    """Cut ``sigma`` along a separating triangle into two spheres."""
    tri = tuple(sorted(tri))
    if tri in sigma.faces:
        raise SphereError(f"{tri} is a face, not a separating triangle")
    cut = set(_edges_of(tri))
    faces = sorted(sigma.faces)
    by_edge: dict[Edge, list[int]] = defaultdict(list)
    for i, k in enumerate(faces):
        for e in _edges_of(k):
            by_edge[e].append(i)
    side = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for e in _edges_of(faces[i]):
            if e in cut:
                continue
            for j in by_edge[e]:
                if j not in side:
                    side.add(j)
                    stack.append(j)
    if len(side) == len(faces):
        raise SphereError(f"{tri} does not separate")
    parts = []
    for members in (sorted(side), [i for i in range(len(faces)) if i not in side]):
        oriented = [sigma.oriented(faces[i]) for i in members]
        # orient the cap so it cancels the disc boundary
        disc = Chain.from_oriented(oriented, dimension=2)
        a, b, c = tri
        cap = (a, b, c) if boundary(disc)[(b, c)] == -1 else (a, c, b)
        parts.append(from_triples(oriented + [cap], keep_orientation=True))
    return parts[0], parts[1]


@dataclass(frozen=True)
class PrimeDecomposition:
    components: tuple[SphereTriangulation, ...]
    gluing_tree: tuple[tuple[int, int, Triangle], ...]

    def reglue(self) -> SphereTriangulation:
        """Reassemble the original triangulation along the gluing tree."""
        faces: dict[Triangle, int] = defaultdict(int)
        for comp in self.components:
            for t in comp.faces:
                faces[t] += 1
        for _, _, t in self.gluing_tree:
            faces[t] -= 2
        return validate([t for t, n in faces.items() if n > 0])


def prime_decompose(sigma: SphereTriangulation) -> PrimeDecomposition:
    seps = separating_triangles(sigma)
    if not seps:
        return PrimeDecomposition((sigma,), ())
    tri = seps[0]
    left, right = split_along(sigma, tri)
    dl, dr = prime_decompose(left), prime_decompose(right)
    offset = len(dl.components)
    i = next(k for k, c in enumerate(dl.components) if tri in c.faces)
    j = next(k for k, c in enumerate(dr.components) if tri in c.faces)
    tree = list(dl.gluing_tree)
    tree += [(a + offset, b + offset, t) for a, b, t in dr.gluing_tree]
    tree.append((i, j + offset, tri))
    return PrimeDecomposition(dl.components + dr.components, tuple(tree))


def degree3_vertices(sigma: SphereTriangulation) -> list[int]:
    return sorted(x for x, d in sigma.degrees().items() if d == 3)


def has_vertex_degree3(sigma: SphereTriangulation) -> bool:
    return bool(degree3_vertices(sigma))


# text format

def dumps(sigma: SphereTriangulation) -> str:
    lines = [f"sphere {sigma.v} {sigma.f}"]
    lines += [f"{a} {b} {c}" for a, b, c in sigma.oriented_faces]
    return "\n".join(lines) + "\n"


def loads(text: str) -> SphereTriangulation:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows or rows[0][1][0] != "sphere":
        raise SphereError("line 1: expected header 'sphere <v> <f>'")
    lineno, header = rows[0]
    if len(header) != 3:
        raise SphereError(f"line {lineno}: expected header 'sphere <v> <f>'")
    try:
        v, f = int(header[1]), int(header[2])
    except ValueError:
        raise SphereError(f"line {lineno}: header counts must be integers") from None
    faces = []
    for lineno, toks in rows[1:]:
        if len(toks) != 3:
            raise SphereError(f"line {lineno}: expected three vertex labels")
        try:
            faces.append(tuple(int(t) for t in toks))
        except ValueError:
            raise SphereError(f"line {lineno}: vertex labels must be integers") from None
    if len(faces) != f:
        raise SphereError(f"header declares {f} faces, found {len(faces)}")
    sigma = from_triples(faces, keep_orientation=True)
    if sigma.v != v:
        raise SphereError(f"header declares {v} vertices, found {sigma.v}")
    return sigma


def read(path: str | Path) -> SphereTriangulation:
    return loads(Path(path).read_text())


def write(sigma: SphereTriangulation, path: str | Path) -> None:
    Path(path).write_text(dumps(sigma))
