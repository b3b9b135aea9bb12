import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricres.errors import InputError, NotDevelopedError
from toricres.geometry import is_developed, mixed_volume
from toricres.laurent import LaurentPoly, newton_polytope
from toricres.residues import (
    PowerSumVector,
    VertexSeriesQuery,
    elementary_to_char_poly,
    newton_to_elementary,
    power_sums,
    product_over_roots,
    strict_support_covector,
    sum_over_roots,
    values_characteristic_polynomial,
    vertex_residue,
    vertex_series_coefficient,
)

from corpus import DEVELOPED_2D, X, Y, Z

ONE1 = LaurentPoly.constant(1, 1)
ONE2 = LaurentPoly.constant(1, 2)
QUAD = Z**2 - 3 * Z + 2


def test_series_examples():
    P = 1 - Z
    assert vertex_series_coefficient(VertexSeriesQuery(ONE1, P, (0,), (-1,))) == 0
    assert vertex_series_coefficient(VertexSeriesQuery(ONE1, P, (1,), (-1,))) == -1
    assert vertex_series_coefficient(VertexSeriesQuery(ONE1, P, (0,), (5,))) == 1
    assert vertex_series_coefficient(VertexSeriesQuery(ONE1, P, (1,), (-4,))) == -1
    assert vertex_series_coefficient(VertexSeriesQuery(ONE1, P, (1,), (2,))) == 0
    for A in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        f = (X + 2) * (Y - 3)
        assert vertex_series_coefficient(VertexSeriesQuery(f, f, A, (0, 0))) == 1


def test_series_rejects_non_vertex():
    with pytest.raises(InputError):
        vertex_residue(ONE1, QUAD, (1,))


def test_strict_covector():
    P = (X + 2) * (Y - 3) + X * Y * Y
    for A in newton_polytope(P).vertices:
        xi = strict_support_covector(P, A)
        top = sum(a * b for a, b in zip(xi, A))
        assert all(sum(a * b for a, b in zip(xi, e)) <= top - 1 for e in P.support() if e != A)


def _naive_coefficient(P, A, f, target, depth):
    """Brute force: expand sum_k Q**k up to ``depth`` with no pruning at all."""
    n = P.n
    qA = P.coefficient(A)
    Q = LaurentPoly({tuple(b - a for a, b in zip(A, e)): -c / qA for e, c in P.items() if e != A}, n)
    total = LaurentPoly({}, n)
    power = LaurentPoly.constant(1, n)
    for _ in range(depth + 1):
        total = total + power
        power = power * Q
    series = (f * total) * Fraction(1, 1) * (1 / qA)
    shift = tuple(-a for a in A)
    return LaurentPoly({tuple(e + s for e, s in zip(k, shift)): c for k, c in series.items()}, n).coefficient(target)


@pytest.mark.parametrize(
    "P,f,target",
    [
        ((X + 2) * (Y - 3), ONE2, (-1, -1)),
        (X + Y - 3 + X * Y * Y, X - Y, (-1, -1)),
        ((X + Y - 3) * (X * Y - 2), X * X + 1, (-1, 0)),
        (X * X * Y + X * Y * Y - 3 * X * Y + 2 + X, Y, (0, -1)),
    ],
)
def test_truncation_soundness_against_naive_expansion(P, f, target):
    for A in newton_polytope(P).vertices:
        pruned = vertex_series_coefficient(VertexSeriesQuery(f, P, A, target))
        deeper = vertex_series_coefficient(VertexSeriesQuery(f, P, A, target), extra_depth=4)
        naive = _naive_coefficient(P, A, f, target, depth=9)
        assert pruned == deeper == naive


def test_sum_examples():
    assert sum_over_roots(ONE1, [1 - Z]) == 1
    assert sum_over_roots(Z, [QUAD]) == 3
    assert sum_over_roots(X, [X + Y - 3, X * Y - 2]) == 3
    assert sum_over_roots(ONE1, [QUAD]) == 2


def test_power_sum_examples():
    assert power_sums(Z, [QUAD], K=2).values == (3, 5)
    p = power_sums(ONE2, [X + Y - 3, X * Y - 2], K=3)
    assert p.values == (2, 2, 2) and p[3] == 2 and p.K == 3
    with pytest.raises(IndexError):
        p[0]
    c = Fraction(-7, 3)
    p = power_sums(LaurentPoly.monomial((2,)), [Z - c], K=4)
    assert p.values == tuple(c ** (2 * k) for k in range(1, 5))


def test_newton_examples():
    assert newton_to_elementary(PowerSumVector((Fraction(3), Fraction(5))), 2) == [3, 2]
    assert newton_to_elementary([4, 4, 4, 4], 4) == [comb(4, k) for k in range(1, 5)]
    assert newton_to_elementary([], 0) == []
    with pytest.raises(InputError):
        newton_to_elementary([1], 2)


def test_char_poly_examples():
    t = LaurentPoly.variable(0, 1)
    assert values_characteristic_polynomial(Z, [QUAD]) == t**2 - 3 * t + 2
    assert values_characteristic_polynomial(X, [X + Y - 3, X * Y - 2]) == t**2 - 3 * t + 2
    assert values_characteristic_polynomial(ONE2, [X - 1, (Y - 2) * (Y - 5)]) == (t - 1) ** 2
    assert elementary_to_char_poly([]) == LaurentPoly.constant(1, 1)


def test_product_examples():
    assert product_over_roots(Z - 1, [Z - 2]) == 1
    assert product_over_roots(Z, [QUAD]) == 2
    assert product_over_roots(Z - 1, [QUAD]) == 0
    # empty root set: a monomial equation has no torus roots
    assert product_over_roots(Z - 5, [LaurentPoly.monomial((3,), 2)]) == 1


def test_preconditions():
    tri = 1 + X + Y
    with pytest.raises(NotDevelopedError):
        sum_over_roots(ONE2, [tri, 2 + X - Y])
    with pytest.raises(InputError):
        sum_over_roots(ONE2, [X - 1])
    with pytest.raises(InputError):
        sum_over_roots(ONE2, [X - 1, Y - 2, X - Y])


@pytest.mark.parametrize("name,system,roots", DEVELOPED_2D, ids=[c[0] for c in DEVELOPED_2D])
def test_bkk_corpus(name, system, roots):
    mv = mixed_volume([newton_polytope(f) for f in system])
    assert sum_over_roots(ONE2, system) == mv
    if roots:
        assert len(roots) == mv


@pytest.mark.parametrize("name,system,roots", [c for c in DEVELOPED_2D if c[2]], ids=[c[0] for c in DEVELOPED_2D if c[2]])
def test_power_sums_exact_on_rational_roots(name, system, roots):
    f = X - 2 * Y + 1
    K = min(3, len(roots))
    expected = tuple(sum(Fraction(f(*r)) ** k for r in roots) for k in range(1, K + 1))
    assert power_sums(f, system, K=K).values == expected


def _random_developed_3d(rng):
    while True:
        polys = []
        for _ in range(3):
            pts = {tuple(rng.randint(0, 1) for _ in range(3)) for _ in range(rng.randint(2, 3))}
            polys.append(LaurentPoly({p: rng.choice([1, -2, 3, 5]) for p in pts}, 3))
        if is_developed([newton_polytope(f) for f in polys]).verdict:
            return polys


def test_bkk_3d_random():
    rng = random.Random(7)
    for _ in range(4):
        system = _random_developed_3d(rng)
        mv = mixed_volume([newton_polytope(f) for f in system])
        assert sum_over_roots(LaurentPoly.constant(1, 3), system) == mv


def test_vieta_n1():
    rng = random.Random(5)
    for _ in range(20):
        l = rng.randint(-3, 2)
        m = l + rng.randint(1, 4)
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(m - l + 1)]
        coeffs[0] = coeffs[0] or Fraction(1)
        coeffs[-1] = coeffs[-1] or Fraction(-2)
        f = LaurentPoly.univariate(coeffs, low=l)
        assert product_over_roots(Z, [f]) == (-1) ** (m - l) * coeffs[0] / coeffs[-1]


@given(st.lists(st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4)), min_size=0, max_size=6))
def test_newton_identities_on_multisets(values):
    N = len(values)
    p = [sum(v**k for v in values) for k in range(1, N + 1)]
    e = newton_to_elementary(p, N)
    for k in range(1, N + 1):
        expected = sum((_prod(c) for c in combinations(values, k)), Fraction(0))
        assert e[k - 1] == expected


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out


@given(st.lists(st.builds(Fraction, st.integers(-5, 5).filter(bool), st.integers(1, 3)), min_size=1, max_size=5),
       st.integers(-2, 2))
def test_n1_power_sums_from_planted_roots(roots, shift):
    f1 = LaurentPoly.monomial((shift,), 3)
    for r in roots:
        f1 = f1 * (Z - r)
    g = Z + LaurentPoly.monomial((-1,), 2)
    K = 3
    expected = tuple(sum(g(r) ** k for r in roots) for k in range(1, K + 1))
    assert power_sums(g, [f1], K=K).values == expected
    assert product_over_roots(g, [f1]) == _prod(g(r) for r in roots)
