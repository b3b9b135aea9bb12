from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricres.errors import InputError
from toricres.geometry import (
    convex_hull,
    face,
    face_decomposition,
    facet_normals,
    is_completely_developed,
    is_developed,
    is_i_developed,
    lattice_volume,
    minkowski_sum,
    minkowski_sum_all,
    mixed_volume,
    proper_faces,
    support_value,
)

SQUARE = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
TRI = convex_hull([(0, 0), (1, 0), (0, 1)])
E1 = convex_hull([(0, 0), (1, 0)])
E2 = convex_hull([(0, 0), (0, 1)])

points2 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=6)
covec2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


# -- frozen values ---------------------------------------------------------


def test_hull_collinear_1d():
    assert convex_hull([(0,), (1,), (2,)]).vertices == ((0,), (2,))


def test_hull_square_and_edge_point():
    assert set(SQUARE.vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert set(convex_hull([(0, 0), (2, 0), (0, 2), (1, 1)]).vertices) == {(0, 0), (2, 0), (0, 2)}


def test_hull_rejects_bad_input():
    with pytest.raises(InputError):
        convex_hull([])
    with pytest.raises(InputError):
        convex_hull([(0, 0), (1,)])


def test_minkowski_examples():
    assert minkowski_sum(E1, E2) == SQUARE
    assert minkowski_sum(TRI, convex_hull([(2, 3)])) == TRI.translate((2, 3))
    pent = minkowski_sum(TRI, SQUARE)
    assert set(pent.vertices) == {(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)}


def test_support_and_face():
    assert support_value(SQUARE, (1, 1)) == 2
    assert set(face(SQUARE, (0, 1)).vertices) == {(0, 1), (1, 1)}
    assert face(SQUARE, (1, 1)).vertices == ((1, 1),)
    assert face(SQUARE, (0, 0)) == SQUARE


def test_facet_normals():
    assert sorted(facet_normals(convex_hull([(0,), (3,)]))) == [(-1,), (1,)]
    assert sorted(facet_normals(SQUARE)) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert sorted(facet_normals(convex_hull([(0, 0), (2, 0), (0, 2)]))) == [(-1, 0), (0, -1), (1, 1)]


def test_face_decomposition():
    d = face_decomposition([E1, E2], (0, 1))
    assert d.faces == (E1, convex_hull([(0, 1)]))
    assert d.vertex_terms() == (2,)
    assert face_decomposition([E1, E2], (0, 0)).faces == (E1, E2)


def test_lattice_volumes():
    assert lattice_volume(convex_hull([(0,), (3,)])) == 3
    assert lattice_volume(TRI) == 1
    assert lattice_volume(SQUARE) == 2
    assert lattice_volume(convex_hull([(0, 0), (1, 1), (2, 2)])) == 2  # intrinsic length
    assert lattice_volume(convex_hull([(1, 1, 1)])) == 1


def test_mixed_volumes():
    assert mixed_volume([TRI, TRI]) == 1
    assert mixed_volume([SQUARE, TRI]) == 2
    for a in range(1, 4):
        for b in range(1, 4):
            A = convex_hull([(0, 0), (a, 0), (0, a)])
            B = convex_hull([(0, 0), (b, 0), (0, b)])
            assert mixed_volume([A, B]) == a * b
    assert mixed_volume([E1, E1]) == 0
    assert mixed_volume([]) == 1
    cube = convex_hull([(i, j, k) for i in (0, 1) for j in (0, 1) for k in (0, 1)])
    assert mixed_volume([cube, cube, cube]) == 6


def test_mixed_volume_on_a_face_lattice():
    # two collinear segments measured in the rank-1 lattice of their line
    s = convex_hull([(0, 0), (2, 2)])
    t = convex_hull([(5, 5), (6, 6)])
    assert mixed_volume([s], lattice_rank=1) == 2
    assert mixed_volume([t], lattice_rank=1) == 1


def test_developed_examples():
    assert is_developed([E1, E2]).verdict
    cert = is_developed([TRI, TRI])
    assert not cert.verdict and cert.witness == (1, 1)
    assert is_developed([convex_hull([(4, 4)]), SQUARE]).verdict
    for j in (2, 3):
        assert is_i_developed([convex_hull([(0, 0)]), SQUARE, TRI], j).verdict
    ok, certs = is_completely_developed([TRI, TRI, TRI])
    assert not ok and not any(c.verdict for c in certs)


def test_axis_segments_and_triangle_not_completely_developed():
    # removing either segment leaves a segment parallel to an edge of the
    # triangle with the same outer normal
    ok, certs = is_completely_developed([E1, E2, TRI])
    assert not ok
    assert [c.verdict for c in certs] == [False, False, True]
    assert certs[0].witness == (-1, 0)
    assert certs[1].witness == (0, -1)


def test_developed_certificate_lists_vertex_terms():
    cert = is_developed([E1, E2])
    for v, j in cert.cone_witnesses:
        assert face_decomposition([E1, E2], v).faces[j - 1].is_point()


def test_proper_faces_of_square():
    faces = proper_faces(SQUARE)
    assert [f.dim for f in faces].count(0) == 4
    assert [f.dim for f in faces].count(1) == 4


# -- properties ------------------------------------------------------------


@given(points2)
def test_hull_idempotent_and_contains(pts):
    P = convex_hull(pts)
    assert convex_hull(P.vertices) == P
    assert all(p in P for p in pts)


@given(points2, points2, covec2)
def test_support_additive_and_face_additive(a, b, v):
    P, Q = convex_hull(a), convex_hull(b)
    S = minkowski_sum(P, Q)
    assert support_value(S, v) == support_value(P, v) + support_value(Q, v)
    assert face(S, v) == minkowski_sum(face(P, v), face(Q, v))


@given(points2, covec2, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_support_translation(pts, v, t):
    P = convex_hull(pts)
    assert support_value(P.translate(t), v) == support_value(P, v) + v[0] * t[0] + v[1] * t[1]


@given(points2, points2)
def test_mixed_volume_symmetric_and_diagonal(a, b):
    P, Q = convex_hull(a), convex_hull(b)
    assert mixed_volume([P, Q]) == mixed_volume([Q, P])
    expected = lattice_volume(P) if P.dim == 2 else 0
    assert mixed_volume([P, P]) == expected


@given(points2, points2, points2)
def test_mixed_volume_minkowski_linear(a, b, c):
    P, Q, R = convex_hull(a), convex_hull(b), convex_hull(c)
    assert mixed_volume([minkowski_sum(P, Q), R]) == mixed_volume([P, R]) + mixed_volume([Q, R])


@given(points2, points2, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_developedness_translation_invariant(a, b, t):
    P, Q = convex_hull(a), convex_hull(b)
    assert is_developed([P, Q]).verdict == is_developed([P.translate(t), Q]).verdict


def test_mixed_volume_3d_symmetry():
    polys = [
        convex_hull([(0, 0, 0), (1, 0, 0), (0, 2, 0), (0, 0, 1)]),
        convex_hull([(0, 0, 0), (1, 1, 0), (0, 1, 1)]),
        convex_hull([(0, 0, 0), (2, 0, 1), (0, 0, 1), (1, 1, 1)]),
    ]
    values = {mixed_volume(list(p)) for p in permutations(polys)}
    assert len(values) == 1
    total = minkowski_sum_all(polys)
    assert lattice_volume(total) >= next(iter(values))
