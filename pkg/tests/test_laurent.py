from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricres.errors import DegenerateInstanceError, InputError
from toricres.geometry import convex_hull, minkowski_sum
from toricres.laurent import (
    LaurentPoly,
    SystemInstance,
    face_restriction,
    jacobian_det,
    monomial_mul,
    newton_polytope,
    partial_derivative,
    vertex_coefficient,
)

from corpus import X, Y, Z

terms2 = st.dictionaries(
    st.tuples(st.integers(-2, 3), st.integers(-2, 3)),
    st.integers(-5, 5).map(Fraction),
    max_size=5,
)
positive2 = st.dictionaries(
    st.tuples(st.integers(-2, 3), st.integers(-2, 3)),
    st.integers(1, 5).map(Fraction),
    min_size=1,
    max_size=5,
)


def test_arithmetic_examples():
    assert (Z - 1) * (Z - 2) == Z**2 - 3 * Z + 2
    assert ((Z - 1) * LaurentPoly({}, 1)).is_zero()
    assert LaurentPoly.univariate([2, -3, 1]) == Z**2 - 3 * Z + 2


def test_zero_terms_dropped_and_text_form():
    f = LaurentPoly({(1, 0): 1, (0, 1): 0, (0, 0): Fraction(-1, 2)})
    assert f.support() == ((0, 0), (1, 0))
    assert str(f) == "(-1/2) + (1/1)*z1^1"
    assert LaurentPoly.from_json(f.to_json(), 2) == f


def test_newton_polytope_examples():
    f = LaurentPoly.univariate([3, 0, 1, 5], low=-1)
    assert newton_polytope(f).vertices == ((-1,), (2,))
    assert newton_polytope(LaurentPoly.monomial((4,), 7)).vertices == ((4,),)
    assert newton_polytope(1 + X + Y) == convex_hull([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(InputError):
        newton_polytope(LaurentPoly({}, 2))


def test_vertex_coefficient_examples():
    assert vertex_coefficient(2 * X + 3 * Y + 5, (0, 0)) == 5
    assert vertex_coefficient(Z - 2, (1,)) == 1
    assert vertex_coefficient((X + 1) * (Y + 1), (1, 1)) == 1
    with pytest.raises(InputError):
        vertex_coefficient((X + 1) * (Y + 1), (2, 2))


def test_face_restriction_examples():
    f = 1 + X + Y
    assert face_restriction(f, (1, 0)) == X
    assert face_restriction(f, (0, 0)) == f
    assert face_restriction(1 + X + Y + X * Y, (1, 1)) == X * Y


def test_jacobian_examples():
    assert jacobian_det([Z**2 - 3 * Z + 2]) == 2 * Z - 3
    assert jacobian_det([X + Y + 1, X + 2 * Y + 3]) == 1
    assert jacobian_det([X * Y - 1, X - 2]) == -X


def test_laurent_derivative():
    f = LaurentPoly({(-2, 1): 3}, 2)
    assert partial_derivative(f, 0) == LaurentPoly({(-3, 1): -6}, 2)
    with pytest.raises(InputError):
        partial_derivative(f, 2)


def test_evaluation_exact():
    f = X * X * Y - Fraction(1, 3) * LaurentPoly({(-1, 0): 1}, 2)
    assert f(Fraction(1, 2), 3) == Fraction(3, 4) - Fraction(2, 3)


def test_dimension_mismatch():
    with pytest.raises(InputError):
        X + Z
    with pytest.raises(InputError):
        LaurentPoly({(1,): 1, (1, 2): 1})


def test_system_instance_omega():
    inst = SystemInstance.from_polys([X + Y - 3, X * Y - 2])
    assert inst.in_omega()
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    declared = SystemInstance.from_polys([X + Y, X * Y - 2], [tri, square])
    assert not declared.has_full_support(1) and not declared.has_full_support(2)
    assert not declared.in_omega(1)
    with pytest.raises(DegenerateInstanceError) as err:
        declared.require_omega(1)
    assert err.value.certificate["polynomial"] == 2
    with pytest.raises(InputError):
        SystemInstance.from_polys([X * X + Y, X], [tri, tri])


@given(terms2, terms2, terms2)
def test_ring_axioms(a, b, c):
    f, g, h = (LaurentPoly(t, 2) for t in (a, b, c))
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == 0


@given(positive2, positive2)
def test_newton_polytope_of_product(a, b):
    f, g = LaurentPoly(a, 2), LaurentPoly(b, 2)
    assert newton_polytope(f * g) == minkowski_sum(newton_polytope(f), newton_polytope(g))


@given(terms2, st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_monomial_shift_roundtrip(a, t):
    f = LaurentPoly(a, 2)
    assert monomial_mul(monomial_mul(f, t), tuple(-x for x in t)) == f


@given(terms2, terms2)
def test_jacobian_product_rule(a, b):
    # d(fg)/dx = f dg/dx + g df/dx
    f, g = LaurentPoly(a, 2), LaurentPoly(b, 2)
    assert partial_derivative(f * g, 0) == f * partial_derivative(g, 0) + g * partial_derivative(f, 0)
