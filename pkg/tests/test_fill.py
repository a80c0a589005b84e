from fractions import Fraction

import pytest

from tautfill.chains import Chain, boundary, cone, l1_norm, maxdeg
from tautfill.fill import (FillError, coning_bound, denominator_clearing, fill_problem, is_taut,
                           qvol, verify_no_complete_cone, verify_no_internal_vertex,
                           verify_subtaut, zvol)
from tautfill.sphere import catalog, connected_sum, orientation_cycle

EXACT = [("tetrahedron", None, 1), ("bipyramid", 3, 2), ("octahedron", None, 4),
         ("stacked", 2, 3), ("bipyramid", 5, 5)]


@pytest.mark.parametrize("name,param,value", EXACT)
def test_exact_values(name, param, value):
    X = orientation_cycle(catalog(name, param))
    z, q = zvol(X), qvol(X)
    assert z.value == value and q.value == value
    assert boundary(z.filling) == X and l1_norm(z.filling) == value
    assert z.filling.is_integral and z.mode == "integral" and q.mode == "rational"


def test_connected_sum_value():
    s = connected_sum(catalog("octahedron"), (0, 2, 4), catalog("tetrahedron"), (0, 1, 2))
    assert zvol(orientation_cycle(s)).value == 5


def test_coning_bound():
    X = orientation_cycle(catalog("octahedron"))
    apex, c = coning_bound(X)
    assert apex == 0 and boundary(c) == X
    assert l1_norm(c) == l1_norm(X) - maxdeg(X) == 4


def test_bound_dominates():
    for name, param in (("wheel_double", 3), ("stacked", 4), ("bipyramid", 6)):
        X = orientation_cycle(catalog(name, param))
        q, z = qvol(X), zvol(X)
        assert q.value <= z.value <= z.bound_used == l1_norm(X) - maxdeg(X)


def test_zero_cycle():
    assert zvol(Chain.zero(2)).value == 0
    assert qvol(Chain.zero(2)).value == 0
    with pytest.raises(FillError, match="zero cycle"):
        coning_bound(Chain.zero(2))


def test_non_sphere_cycles():
    X = orientation_cycle(catalog("tetrahedron"))
    assert zvol(X * 2).value == 2
    assert qvol(X / 3).value == Fraction(1, 3)
    shifted = Chain(2, {tuple(v + 4 for v in k): c for k, c in X.items()})
    assert zvol(X + shifted).value == 2


def test_rejects_bad_targets():
    with pytest.raises(FillError, match="not closed"):
        zvol(Chain.simplex(0, 1, 2))
    with pytest.raises(FillError, match="expected a 2-cycle"):
        qvol(Chain.simplex(0, 1))
    with pytest.raises(FillError, match="integral cycle"):
        zvol(orientation_cycle(catalog("tetrahedron")) / 2)


def test_problem_shape():
    X = orientation_cycle(catalog("octahedron"))
    prob = fill_problem(X)
    assert len(prob.tets) == 15 and prob.n_vars == 30
    # triangles avoiding the apex: C(5, 3)
    assert len(prob.rows) == 10
    assert len(prob.hint) == len(prob.rows)


def test_taut_filling_propositions():
    X = orientation_cycle(catalog("bipyramid", 5))
    M = zvol(X).filling
    assert is_taut(M)
    assert verify_no_internal_vertex(M).passed
    assert verify_no_complete_cone(M).passed
    rep = verify_subtaut(M, trials=8, seed=3)
    assert rep.passed and rep.details["samples"] == 10


def test_non_taut_detected():
    X = orientation_cycle(catalog("tetrahedron"))
    # complete cone from a fresh vertex: 4 tets where 1 suffices
    M = cone(9, X)
    assert not is_taut(M)
    assert verify_no_internal_vertex(M).violations == [9]
    assert not verify_no_complete_cone(M).passed


def test_denominator_clearing():
    X = orientation_cycle(catalog("octahedron"))
    M = qvol(X).filling / 3
    q, qM = denominator_clearing(M, X / 3)
    assert q == 3 and qM.is_integral
    assert boundary(qM) == X
