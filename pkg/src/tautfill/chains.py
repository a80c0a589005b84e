"""Exact simplicial chains on the full simplex over a finite vertex set.

A chain of dimension ``n`` maps unoriented ``n``-simplices (stored as
strictly increasing vertex tuples) to nonzero rational coefficients.  An
oriented simplex ``[x0, ..., xn]`` is normalised to its sorted tuple and a
sign equal to the parity of the sorting permutation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Simplex = tuple[int, ...]


class ChainError(ValueError):
    pass


def permutation_sign(seq: Sequence[int]) -> int:
    """Parity of the permutation sorting ``seq`` (+1 even, -1 odd).

    Returns 0 if ``seq`` has a repeated entry.
    """
    if len(set(seq)) != len(seq):
        return 0
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


@dataclass(frozen=True, order=True)
class OrientedSimplex:
    vertices: Simplex
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ChainError(f"orientation sign must be +1 or -1, got {self.sign}")
        if len(self.vertices) == 0:
            raise ChainError("empty simplex is not modelled")
        if any(a >= b for a, b in zip(self.vertices, self.vertices[1:])):
            raise ChainError(f"vertices must be strictly increasing: {self.vertices}")

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "OrientedSimplex":
        s = permutation_sign(seq)
        if s == 0:
            raise ChainError(f"repeated vertex in simplex {tuple(seq)}")
        return cls(tuple(sorted(seq)), s)

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def __neg__(self) -> "OrientedSimplex":
        return OrientedSimplex(self.vertices, -self.sign)

    def ordered(self) -> Simplex:
        """A vertex ordering representing this orientation."""
        if self.sign == 1 or len(self.vertices) < 2:
            return self.vertices
        v = self.vertices
        return (v[1], v[0]) + v[2:]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ChainError(f"chain coefficients must be exact rationals, got {value!r}")


class Chain:
    """Immutable finite rational chain of a fixed dimension."""

    __slots__ = ("_dim", "_terms", "_hash")

    def __init__(self, dimension: int, terms: Mapping[Simplex, object] | None = None):
        if dimension < 0:
            raise ChainError("chain dimension must be non-negative")
        clean: dict[Simplex, Fraction] = {}
        for simplex, coeff in (terms or {}).items():
            simplex = tuple(simplex)
            if len(simplex) != dimension + 1:
                raise ChainError(
                    f"simplex {simplex} does not have dimension {dimension}")
            if any(a >= b for a, b in zip(simplex, simplex[1:])):
                raise ChainError(f"simplex key must be sorted and repeat-free: {simplex}")
            c = _as_fraction(coeff)
            if c:
                clean[simplex] = c
        self._dim = dimension
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, dimension: int) -> "Chain":
        return cls(dimension)

    @classmethod
    def _trusted(cls, dimension: int, terms: dict[Simplex, Fraction]) -> "Chain":
        obj = cls.__new__(cls)
        obj._dim = dimension
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_oriented(cls, simplices: Iterable[Sequence[int]], coeff=1,
                      dimension: int | None = None) -> "Chain":
        """Sum of ``coeff * [x0, ..., xn]`` over vertex sequences.

        Sequences with a repeated vertex are degenerate and contribute 0.
        """
        c = _as_fraction(coeff)
        terms: dict[Simplex, Fraction] = {}
        dim = dimension
        for seq in simplices:
            seq = tuple(seq)
            if dim is None:
                dim = len(seq) - 1
            elif len(seq) != dim + 1:
                raise ChainError("mixed dimensions in from_oriented")
            s = permutation_sign(seq)
            if s == 0:
                continue
            key = tuple(sorted(seq))
            terms[key] = terms.get(key, Fraction(0)) + s * c
        if dim is None:
            raise ChainError("cannot infer dimension of an empty chain")
        return cls(dim, terms)

    @classmethod
    def simplex(cls, *vertices: int) -> "Chain":
        return cls.from_oriented([vertices])

    # basic accessors

    @property
    def dimension(self) -> int:
        return self._dim

    def terms(self) -> dict[Simplex, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Simplex, Fraction]]:
        return iter(sorted(self._terms.items()))

    def support(self) -> list[Simplex]:
        return sorted(self._terms)

    def __getitem__(self, simplex: Sequence[int]) -> Fraction:
        seq = tuple(simplex)
        s = permutation_sign(seq)
        if s == 0:
            return Fraction(0)
        return s * self._terms.get(tuple(sorted(seq)), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self._terms))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def oriented_terms(self) -> list[tuple[OrientedSimplex, Fraction]]:
        """Terms as (oriented simplex, positive multiplicity) pairs."""
        out = []
        for key, c in self.items():
            out.append((OrientedSimplex(key, 1 if c > 0 else -1), abs(c)))
        return out

    # arithmetic

    def _check_dim(self, other: "Chain"):
        if not isinstance(other, Chain):
            return NotImplemented
        if other._dim != self._dim:
            raise ChainError(
                f"dimension mismatch: {self._dim} vs {other._dim}")
        return None

    def __add__(self, other: "Chain") -> "Chain":
        if self._check_dim(other) is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return Chain._trusted(self._dim, terms)

    def __neg__(self) -> "Chain":
        return Chain._trusted(self._dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        if not isinstance(other, Chain):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "Chain":
        s = _as_fraction(scalar)
        if not s:
            return Chain.zero(self._dim)
        return Chain._trusted(self._dim, {k: s * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Chain":
        s = _as_fraction(scalar)
        if not s:
            raise ZeroDivisionError("chain division by zero")
        return self * (1 / s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return f"Chain({self._dim}, 0)"
        parts = []
        for k, c in self.items():
            parts.append(f"{c}*{list(k)}")
        return f"Chain({self._dim}, " + " + ".join(parts) + ")"

    def restrict(self, keep) -> "Chain":
        """Sub-chain of the terms whose simplex satisfies ``keep``."""
        return Chain._trusted(
            self._dim, {k: c for k, c in self._terms.items() if keep(k)})


def boundary(c: Chain) -> Chain:
    """Alternating-sum boundary of ``c``."""
    if c.dimension < 1:
        raise ChainError("no boundary defined below dimension 0")
    terms: dict[Simplex, Fraction] = {}
    for key, coeff in c._terms.items():
        for i in range(len(key)):
            face = key[:i] + key[i + 1:]
            v = terms.get(face, 0) + (coeff if i % 2 == 0 else -coeff)
            if v:
                terms[face] = v
            else:
                del terms[face]
    return Chain._trusted(c.dimension - 1, terms)


def l1_norm(c: Chain) -> Fraction:
    return sum((abs(v) for v in c._terms.values()), Fraction(0))


def vert(c: Chain) -> frozenset[int]:
    out: set[int] = set()
    for key in c._terms:
        out.update(key)
    return frozenset(out)


def nbhd(x: int, c: Chain) -> Chain:
    return c.restrict(lambda key: x in key)


def deg(x: int, c: Chain) -> Fraction:
    return l1_norm(nbhd(x, c))


def maxdeg(c: Chain) -> Fraction:
    # zero chain has maxdeg 0 by convention
    return max((deg(x, c) for x in vert(c)), default=Fraction(0))


def max_degree_vertex(c: Chain) -> int:
    """Smallest vertex label attaining ``maxdeg(c)``."""
    vs = sorted(vert(c))
    if not vs:
        raise ChainError("zero chain has no vertices")
    best = max(deg(x, c) for x in vs)
    return next(x for x in vs if deg(x, c) == best)


def cone(x: int, c: Chain) -> Chain:
    """Adjoin ``x`` in front of every simplex of ``c`` not containing it."""
    terms: dict[Simplex, Fraction] = {}
    for key, coeff in c._terms.items():
        if x in key:
            continue
        # moving x from the front to its sorted slot costs one
        # transposition per smaller vertex
        pos = sum(1 for v in key if v < x)
        new = key[:pos] + (x,) + key[pos:]
        terms[new] = coeff if pos % 2 == 0 else -coeff
    return Chain._trusted(c.dimension + 1, terms)


def project(c: Chain, A: Iterable[int], p: int) -> Chain:
    """Image of ``c`` under the chain map induced by ``x -> x if x in A else p``."""
    A = frozenset(A)
    if p not in A:
        raise ChainError("projection basepoint outside target set")
    terms: dict[Simplex, Fraction] = {}
    for key, coeff in c._terms.items():
        image = tuple(v if v in A else p for v in key)
        s = permutation_sign(image)
        if s == 0:
            continue
        new = tuple(sorted(image))
        v = terms.get(new, 0) + s * coeff
        if v:
            terms[new] = v
        else:
            del terms[new]
    return Chain._trusted(c.dimension, terms)


def is_sub_multiset(U: Chain, M: Chain) -> bool:
    """``U`` is contained in ``M`` as a multiset of oriented simplices."""
    return l1_norm(M) == l1_norm(U) + l1_norm(M - U)


def lcm_denominator(c: Chain) -> int:
    out = 1
    for v in c._terms.values():
        out = lcm(out, v.denominator)
    return out
