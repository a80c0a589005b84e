from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tautfill.adu import AduWitness, g_split, split_pairs
from tautfill.chains import (Chain, ChainError, OrientedSimplex, boundary, cone, deg, is_sub_multiset,
                             l1_norm, lcm_denominator, maxdeg, max_degree_vertex, nbhd,
                             permutation_sign, project, vert)
from tautfill.sphere import catalog, orientation_cycle

from strategies import chains, cycles, rational_chains, split_universes

PROPERTY = settings(max_examples=1000, deadline=None)

a, b, c, d, x, y, p = 0, 1, 2, 3, 7, 8, 9


class TestOrientedSimplex:
    def test_sign_from_sequence(self):
        assert OrientedSimplex.from_sequence((2, 0, 1)) == OrientedSimplex((0, 1, 2), 1)
        assert OrientedSimplex.from_sequence((1, 0, 2)) == OrientedSimplex((0, 1, 2), -1)

    def test_repeated_vertex_is_rejected(self):
        with pytest.raises(ChainError):
            OrientedSimplex.from_sequence((1, 1, 2))

    def test_permutation_sign(self):
        assert permutation_sign((0, 1, 2, 3)) == 1
        assert permutation_sign((1, 0, 2, 3)) == -1
        assert permutation_sign((3, 2, 1, 0)) == 1
        assert permutation_sign((1, 1)) == 0

    def test_negation(self):
        s = OrientedSimplex((0, 1), 1)
        assert -s == OrientedSimplex((0, 1), -1)


class TestChain:
    def test_eager_cancellation(self):
        ch = Chain.simplex(a, b, c) + Chain.from_oriented([(b, a, c)])
        assert not ch and len(ch) == 0

    def test_oriented_lookup(self):
        ch = Chain.simplex(a, b, c) * 2
        assert ch[(a, b, c)] == 2
        assert ch[(b, a, c)] == -2
        assert ch[(a, b, d)] == 0

    def test_dimension_mismatch(self):
        with pytest.raises(ChainError):
            Chain.simplex(a, b) + Chain.simplex(a, b, c)

    def test_integrality(self):
        assert Chain.simplex(a, b).is_integral
        assert not (Chain.simplex(a, b) / 2).is_integral
        assert lcm_denominator(Chain(1, {(0, 1): Fraction(1, 2), (1, 2): Fraction(1, 3)})) == 6


class TestBoundary:
    def test_triangle(self):
        expected = Chain.simplex(b, c) - Chain.simplex(a, c) + Chain.simplex(a, b)
        assert boundary(Chain.simplex(a, b, c)) == expected

    def test_tet_boundary_closed(self):
        assert not boundary(boundary(Chain.simplex(a, b, c, d)))

    def test_sphere_cycle_closed(self):
        for name in ("tetrahedron", "octahedron", "icosahedron"):
            assert not boundary(orientation_cycle(catalog(name)))

    def test_dimension_zero_errors(self):
        with pytest.raises(ChainError, match="no boundary defined below dimension 0"):
            boundary(Chain.simplex(a))


class TestNormVertDegree:
    def test_norm(self):
        assert l1_norm(Chain.zero(2)) == 0
        assert l1_norm(Chain.simplex(a, b, c) * 2 - Chain.simplex(a, b, d)) == 3
        assert l1_norm(orientation_cycle(catalog("octahedron"))) == 8

    def test_vert(self):
        assert vert(Chain.zero(2)) == frozenset()
        assert vert(Chain.simplex(a, b, c) - Chain.simplex(a, b, d)) == {a, b, c, d}
        s = catalog("icosahedron")
        assert vert(orientation_cycle(s)) == s.vertices

    def test_degree(self):
        ch = Chain.simplex(a, b, c) + Chain.simplex(b, c, d)
        assert deg(a, ch) == 1
        assert deg(b, ch) == 2
        assert not nbhd(x, ch)
        assert maxdeg(orientation_cycle(catalog("octahedron"))) == 4

    def test_maxdeg_of_zero(self):
        assert maxdeg(Chain.zero(2)) == 0

    def test_max_degree_vertex_smallest_label(self):
        assert max_degree_vertex(orientation_cycle(catalog("octahedron"))) == 0
        assert max_degree_vertex(orientation_cycle(catalog("bipyramid", 5))) == 5


class TestCone:
    def test_fresh_apex(self):
        assert cone(x, Chain.simplex(a, b, c)) == Chain.from_oriented([(x, a, b, c)])

    def test_apex_in_simplex(self):
        assert not cone(a, Chain.simplex(a, b, c))

    def test_octahedron_norm(self):
        X = orientation_cycle(catalog("octahedron"))
        for v in range(6):
            assert l1_norm(cone(v, X)) == 4
            assert boundary(cone(v, X)) == X


class TestProject:
    A = {a, b, p}

    def test_identity_on_target(self):
        assert project(Chain.simplex(a, b, c), {a, b, c, p}, p) == Chain.simplex(a, b, c)

    def test_substitution(self):
        assert project(Chain.simplex(a, b, y), self.A, p) == Chain.simplex(a, b, p)

    def test_collapse(self):
        assert not project(Chain.simplex(a, y, p), self.A, p)

    def test_basepoint_outside(self):
        with pytest.raises(ChainError, match="projection basepoint outside target set"):
            project(Chain.simplex(a, b, c), self.A, c)

    def test_orientation_is_tracked(self):
        # y -> p lands p before x in sorted order, flipping the sign
        assert project(Chain.simplex(x, y), {x, 5}, 5) == -Chain.simplex(5, x)


def test_sub_multiset():
    M = Chain.simplex(a, b, c, d) * 2 - Chain.simplex(a, b, c, x)
    assert is_sub_multiset(Chain.simplex(a, b, c, d), M)
    assert is_sub_multiset(M, M)
    assert not is_sub_multiset(-Chain.simplex(a, b, c, d), M)
    assert not is_sub_multiset(Chain.simplex(a, b, c, d) * 3, M)


# property suites

@PROPERTY
@given(st.integers(2, 4).flatmap(chains))
def test_boundary_squared_is_zero(ch):
    assert not boundary(boundary(ch))


@PROPERTY
@given(st.integers(1, 3).flatmap(lambda n: cycles(n)), st.integers(0, 11))
def test_cone_identity(c, v):
    assert boundary(cone(v, c)) == c


@PROPERTY
@given(st.integers(1, 3).flatmap(chains), st.integers(0, 11))
def test_norm_identity(ch, v):
    assert l1_norm(cone(v, ch)) == l1_norm(ch) - deg(v, ch)


@PROPERTY
@given(st.integers(1, 4).flatmap(rational_chains),
       st.sets(st.integers(0, 9), min_size=1), st.data())
def test_project_is_chain_map(ch, A, data):
    p_ = data.draw(st.sampled_from(sorted(A)))
    assert boundary(project(ch, A, p_)) == project(boundary(ch), A, p_)


@PROPERTY
@given(st.integers(0, 4).flatmap(rational_chains),
       st.sets(st.integers(0, 9), min_size=1), st.data())
def test_project_is_idempotent(ch, A, data):
    p_ = data.draw(st.sampled_from(sorted(A)))
    once = project(ch, A, p_)
    assert project(once, A, p_) == once
    assert vert(once) <= A


def _recover(draw, n, shared_max, make):
    A, B, C = draw(split_universes(shared_max))
    X = draw(make(n, tuple(A)))
    Y = draw(make(n, tuple(B)))
    w = AduWitness(frozenset(A), frozenset(B), X, Y)
    p_, q_ = draw(st.sampled_from(split_pairs(w)))
    return w, p_, q_


@PROPERTY
@given(st.data())
def test_recovery_of_cycles(data):
    w, p_, q_ = _recover(data.draw, 2, 3, lambda n, U: cycles(n, U))
    assert g_split(w.total, w, p_, q_) == (w.X, w.Y)


@PROPERTY
@given(st.data())
def test_recovery_of_chains(data):
    w, p_, q_ = _recover(data.draw, 2, 2, lambda n, U: chains(n, U))
    assert g_split(w.total, w, p_, q_) == (w.X, w.Y)
