import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tautfill.chains import boundary, l1_norm
from tautfill.sphere import (CATALOG, SphereError, catalog, connected_sum, degree3_vertices, dumps,
                             from_triples, glue, is_flag, is_prime, loads, orientation_cycle,
                             prime_decompose, read, relabel_for_sum, separating_triangles,
                             split_along, validate, write)

TET = list(itertools.combinations(range(4), 3))


def test_catalog_stats():
    expected = {"tetrahedron": (4, 6, 4, 3), "bipyramid": (5, 9, 6, 4), "octahedron": (6, 12, 8, 4),
                "icosahedron": (12, 30, 20, 5), "wheel_double": (8, 18, 12, 5),
                "stacked": (5, 9, 6, 4)}
    for name in CATALOG:
        s = catalog(name)
        assert (s.v, s.e, s.f, s.maxdeg) == expected[name]


def test_catalog_parameters():
    assert catalog("bipyramid", 4).f == catalog("octahedron").f
    assert sorted(catalog("wheel_double", 5).degrees().values()) == [5] * 12
    assert catalog("stacked", 9).v == 13
    assert catalog("stacked", 0).faces == catalog("tetrahedron").faces


@pytest.mark.parametrize("name,param,msg", [
    ("dodecahedron", None, "unknown catalog name"),
    ("bipyramid", 2, "k >= 3"),
    ("octahedron", 3, "takes no parameter"),
    ("stacked", -1, "k >= 0"),
])
def test_catalog_errors(name, param, msg):
    with pytest.raises(SphereError, match=msg):
        catalog(name, param)


@pytest.mark.parametrize("faces,msg", [
    ([], "empty face set"),
    ([(0, 1)], "not a triangle"),
    ([(0, 0, 1)], "repeated vertex"),
    ([(-1, 0, 1)], "negative vertex label"),
    (TET + [(0, 1, 2)], "duplicate face"),
    (TET[:3], "lies in 1 faces"),
    (TET + [(t[0] + 4, t[1] + 4, t[2] + 4) for t in TET], "disconnected"),
])
def test_validate_diagnostics(faces, msg):
    with pytest.raises(SphereError, match=msg):
        validate(faces)


def test_pinched_link_rejected():
    # two tetrahedron boundaries sharing vertex 0 only
    faces = TET + [tuple(0 if x == 0 else x + 3 for x in t) for t in TET]
    with pytest.raises(SphereError, match="link of vertex 0"):
        validate(faces)


def test_torus_rejected():
    # 7-vertex torus: every edge in two faces, every link a cycle, chi = 0
    faces = []
    for i in range(7):
        faces += [(i, (i + 1) % 7, (i + 3) % 7), (i, (i + 2) % 7, (i + 3) % 7)]
    with pytest.raises(SphereError, match="Euler characteristic 0"):
        validate(faces)


def test_orientation_cycle_closed_and_canonical():
    for name in CATALOG:
        s = catalog(name)
        X = orientation_cycle(s)
        assert not boundary(X)
        assert l1_norm(X) == s.f
        assert X[min(s.faces)] == 1


def test_keep_orientation():
    reversed_faces = [(b, a, c) for a, b, c in catalog("octahedron").oriented_faces]
    s = from_triples(reversed_faces)
    assert orientation_cycle(s) == -orientation_cycle(catalog("octahedron"))
    assert orientation_cycle(validate(reversed_faces)) == orientation_cycle(catalog("octahedron"))


def test_text_roundtrip(tmp_path):
    s = from_triples([(b, a, c) for a, b, c in catalog("icosahedron").oriented_faces])
    assert loads(dumps(s)) == s
    path = tmp_path / "ico.sphere"
    write(s, path)
    assert read(path) == s


def test_text_comments_and_unoriented_input():
    text = "# a comment\nsphere 4 4\n0 1 2\n0 1 3  # trailing\n0 2 3\n1 2 3\n"
    s = loads(text)
    assert s.v == 4 and not boundary(orientation_cycle(s))


@pytest.mark.parametrize("text,msg", [
    ("", "line 1: expected header"),
    ("sphere 4\n", "expected header"),
    ("sphere x 4\n", "must be integers"),
    ("sphere 4 4\n0 1 2\n0 1\n0 2 3\n1 2 3\n", "line 3: expected three"),
    ("sphere 4 4\n0 1 2\n0 1 a\n0 2 3\n1 2 3\n", "line 3: vertex labels"),
    ("sphere 4 5\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n", "declares 5 faces"),
    ("sphere 5 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n", "declares 5 vertices"),
])
def test_text_errors(text, msg):
    with pytest.raises(SphereError, match=msg):
        loads(text)


def test_connected_sum_cycle_adds():
    s1, s2 = catalog("octahedron"), catalog("tetrahedron")
    t1, t2 = min(s1.faces), min(s2.faces)
    right = relabel_for_sum(s1, t1, s2, t2)
    total = glue(s1, right)
    assert (total.v, total.f) == (7, 10)
    X, Y = orientation_cycle(s1), orientation_cycle(right)
    assert orientation_cycle(total) in (X + Y, -(X + Y))
    assert right.vertices & s1.vertices == set(t1)


def test_glue_requires_one_shared_face():
    with pytest.raises(SphereError, match="exactly one face"):
        glue(catalog("tetrahedron"), catalog("tetrahedron"))


def test_prime_and_flag():
    assert is_prime(catalog("octahedron")) and is_flag(catalog("octahedron"))
    assert is_prime(catalog("icosahedron")) and is_flag(catalog("icosahedron"))
    assert is_prime(catalog("tetrahedron")) and not is_flag(catalog("tetrahedron"))
    s = connected_sum(catalog("octahedron"), (0, 2, 4), catalog("tetrahedron"), (0, 1, 2))
    assert separating_triangles(s) == [(0, 2, 4)]
    assert not is_prime(s)


def test_split_along_and_decompose():
    s = connected_sum(catalog("octahedron"), (0, 2, 4), catalog("icosahedron"), (0, 1, 2))
    left, right = split_along(s, (0, 2, 4))
    assert {left.v, right.v} == {6, 12}
    with pytest.raises(SphereError, match="is a face"):
        split_along(s, min(s.faces))
    d = prime_decompose(s)
    assert len(d.components) == 2 and all(is_prime(c) for c in d.components)
    assert d.reglue() == validate(s.faces)


def test_stacked_decomposes_into_tetrahedra():
    s = catalog("stacked", 3)
    d = prime_decompose(s)
    assert len(d.components) == 4
    assert all(c.v == 4 for c in d.components)
    assert len(d.gluing_tree) == 3
    assert d.reglue().faces == s.faces
    assert degree3_vertices(s)


names = st.sampled_from([("tetrahedron", None), ("octahedron", None), ("bipyramid", 3),
                         ("bipyramid", 5), ("wheel_double", 3), ("stacked", 2)])


@settings(max_examples=60, deadline=None)
@given(names, names, st.data())
def test_random_sums_are_spheres(n1, n2, data):
    s1, s2 = catalog(*n1), catalog(*n2)
    t1 = data.draw(st.sampled_from(sorted(s1.faces)))
    t2 = data.draw(st.sampled_from(sorted(s2.faces)))
    s = connected_sum(s1, t1, s2, t2)
    assert s.v == s1.v + s2.v - 3 and s.f == s1.f + s2.f - 2
    assert not boundary(orientation_cycle(s))
    assert tuple(sorted(t1)) in separating_triangles(s)
    assert prime_decompose(s).reglue().faces == s.faces
