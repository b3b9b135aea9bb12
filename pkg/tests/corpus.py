"""Fixed instances shared by the test modules."""

from __future__ import annotations

from toricres.laurent import LaurentPoly

X = LaurentPoly.variable(0, 2)
Y = LaurentPoly.variable(1, 2)
Z = LaurentPoly.variable(0, 1)
ONE2 = LaurentPoly.constant(1, 2)


def _p(*factors):
    out = ONE2
    for f in factors:
        out = out * f
    return out


# (name, system, rational roots or None); every system here is developed
DEVELOPED_2D = [
    ("axis segments", [X - 1, Y - 1], [(1, 1)]),
    ("line and hyperbola", [X + Y - 3, X * Y - 2], [(1, 2), (2, 1)]),
    ("segment and diagonal", [_p(X - 1, X - 2), Y - X], [(1, 1), (2, 2)]),
    ("two long axis segments", [_p(X - 1, X - 2, X - 3), _p(Y - 1, Y - 2, Y - 4, Y - 5)],
     [(a, b) for a in (1, 2, 3) for b in (1, 2, 4, 5)]),
    ("triangle and segment", [X + 2 * Y - 5, X * X * Y - 2], None),
    ("square and segment", [_p(X + 1, Y + 2) - 5, X - 3 * Y], None),
    ("skew quadrilateral and triangle", [X * X * Y + X * Y * Y - 3 * X * Y + 2 + X, 2 + X * X * Y - 3 * Y], None),
    ("pentagon pair", [1 + 2 * X + Y + X * Y * Y - X * X * Y, X * Y * Y - 3], None),
    ("laurent triangle", [X + Y + LaurentPoly({(-1, -1): 1}, 2) - 4, X * Y - 2], None),
    ("stretched segments", [X ** 3 * Y - 2, X * Y ** 2 - 3], None),
    ("rational grid", [_p(X - 2, X + 3), _p(Y - 1, Y + 1, Y - 3)],
     [(a, b) for a in (2, -3) for b in (1, -1, 3)]),
    ("shifted hyperbola", [X * Y - X - Y, X + Y - 4], None),
]


def random_completely_developed(n, count, seed, lo=-1, hi=2, coeffs=(1, -1, 2, 3, -5, 7)):
    """Deterministic list of completely developed ``(n+1)``-tuples of Laurent polynomials."""
    import random

    from toricres.geometry import is_completely_developed
    from toricres.laurent import newton_polytope

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        polys = []
        for _ in range(n + 1):
            pts = {tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(rng.randint(1, 3))}
            polys.append(LaurentPoly({p: rng.choice(coeffs) for p in pts}, n))
        if sum(len(f) > 1 for f in polys) < n:
            continue  # keep the root sets nontrivial
        if is_completely_developed([newton_polytope(f) for f in polys])[0]:
            out.append(polys)
    return out
