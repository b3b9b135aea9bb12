"""Floating-point root finding for one and two variables, used only to cross-check.

Roots are computed with numpy (companion-matrix eigenvalues).  Two-variable
systems are reduced to one variable by an exactly interpolated Sylvester
resultant, then back-substituted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, PreconditionError
from .laurent import LaurentPoly, monomial_mul
from .resultants import _sylvester_det

CLUSTER_TOL = 1e-7
REL_TOL = 1e-6


@dataclass(frozen=True)
class NumericRootSet:
    """Distinct torus roots with multiplicities; ``residual`` bounds ``|f_j(root)|``."""

    roots: tuple[tuple[tuple[complex, ...], int], ...]
    residual: float

    def count(self) -> int:
        return sum(m for _, m in self.roots)

    def points(self) -> list[tuple[complex, ...]]:
        return [p for p, _ in self.roots]


def _cluster(values: Sequence[complex], tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    groups: list[list[complex]] = []
    for v in sorted(values, key=lambda c: (c.real, c.imag)):
        for g in groups:
            if abs(g[0] - v) <= tol * max(1.0, abs(v)):
                g.append(v)
                break
        else:
            groups.append([v])
    return [(complex(np.mean(g)), len(g)) for g in groups]


def _poly_roots(coeffs_low_first: Sequence) -> list[complex]:
    """Nonzero roots of ``sum c_i t**i`` (the zero root is discarded)."""
    c = [complex(x) for x in coeffs_low_first]
    while c and c[-1] == 0:
        c.pop()
    lead = next((i for i, x in enumerate(c) if x != 0), None)
    if lead is None:
        raise InputError("zero polynomial has no isolated roots")
    c = c[lead:]
    if len(c) == 1:
        return []
    return [complex(r) for r in np.roots(c[::-1])]


def _trim(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trim(a), _trim(b)
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        quo[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = _trim(a)
    return quo, a


def _gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return [c / a[-1] for c in a]


def squarefree_parts(p: Sequence[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's decomposition ``p = c * prod s_i**i`` with ``s_i`` square-free, lowest degree first."""
    a = _trim([Fraction(x) for x in p])
    if not a:
        raise InputError("zero polynomial has no isolated roots")
    out = []
    da = [i * c for i, c in enumerate(a)][1:]
    c = _gcd(a, da) if _trim(da) else [Fraction(1)]
    w = _divmod(a, c)[0]
    i = 1
    while len(c) > 1:
        y = _gcd(w, c)
        z = _divmod(w, y)[0]
        if len(z) > 1:
            out.append((z, i))
        w, c = y, _divmod(c, y)[0]
        i += 1
    if len(w) > 1:
        out.append((w, i))
    return out


def _exact_roots(p: Sequence[Fraction]) -> list[tuple[complex, int]]:
    """Nonzero roots with multiplicities of an exact polynomial (lowest degree first)."""
    a = _trim([Fraction(x) for x in p])
    lead = next((i for i, x in enumerate(a) if x != 0), None)
    if lead is None:
        raise InputError("zero polynomial has no isolated roots")
    out = []
    for part, mult in squarefree_parts(a[lead:]):
        out.extend((r, mult) for r in _poly_roots(part))
    return out


def univariate_roots(f: LaurentPoly) -> NumericRootSet:
    if f.n != 1:
        raise InputError("expected a polynomial in one variable")
    if f.is_zero():
        raise InputError("zero polynomial")
    low = min(e[0] for e in f.support())
    high = max(e[0] for e in f.support())
    coeffs = [f.coefficient((low + d,)) for d in range(high - low + 1)]
    groups = _exact_roots(coeffs)
    residual = max((abs(f(r)) for r, _ in groups), default=0.0)
    return NumericRootSet(tuple(((r,), m) for r, m in groups), float(residual))


def _as_y_coefficients(f: LaurentPoly) -> list[list[Fraction]]:
    """Shift to nonnegative exponents; return ``c[j][i]`` = coefficient of ``x**i y**j``."""
    lx = min(e[0] for e in f.support())
    ly = min(e[1] for e in f.support())
    g = monomial_mul(f, (-lx, -ly))
    dx = max(e[0] for e in g.support())
    dy = max(e[1] for e in g.support())
    c = [[Fraction(0)] * (dx + 1) for _ in range(dy + 1)]
    for (i, j), v in g.items():
        c[j][i] = v
    return c


def _eval_x(c: list[list[Fraction]], x: Fraction) -> list[Fraction]:
    return [sum(v * x**i for i, v in enumerate(row)) for row in c]


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (lowest first) of the interpolating polynomial, by divided differences."""
    n = len(xs)
    table = list(ys)
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k, a in enumerate(newton):
        for i, b in enumerate(basis):
            coeffs[i] += a * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= xs[k] * b
        basis = nxt
    return coeffs


def resultant_in_y(f1: LaurentPoly, f2: LaurentPoly) -> list[Fraction]:
    """Exact coefficients (in ``x``, lowest first) of the Sylvester resultant eliminating ``y``."""
    c1, c2 = _as_y_coefficients(f1), _as_y_coefficients(f2)
    d1, d2 = len(c1) - 1, len(c2) - 1
    degree = d2 * (len(c1[0]) - 1) + d1 * (len(c2[0]) - 1)
    xs = [Fraction(k) for k in range(1, degree + 2)]
    ys = [_sylvester_det(_eval_x(c1, x), _eval_x(c2, x)) for x in xs]
    return _interpolate(xs, ys)


def _shear(f: LaurentPoly, a: int) -> LaurentPoly:
    """Rewrite ``f`` in coordinates ``u = x y**a, y`` (a torus automorphism)."""
    return LaurentPoly({(i, j - a * i): c for (i, j), c in f.items()}, 2)


def _bivariate_once(f1: LaurentPoly, f2: LaurentPoly):
    if len(_as_y_coefficients(f1)) == 1 and len(_as_y_coefficients(f2)) == 1:
        return None  # neither involves y: shear first
    res = resultant_in_y(f1, f2)
    if not any(res):
        raise PreconditionError("resultant vanishes identically: positive-dimensional intersection")
    xs = _exact_roots(res)
    found = []
    rows1, rows2 = _as_y_coefficients(f1), _as_y_coefficients(f2)
    for x0, mult in xs:
        candidates = []
        columns = []
        for rows in (rows1, rows2):
            c = [sum(complex(v) * x0**i for i, v in enumerate(row)) for row in rows]
            columns.append(c)
            if any(abs(v) > CLUSTER_TOL for v in c[1:]):
                candidates = _cluster(_poly_roots(c))
                break
        else:
            if all(abs(v) <= CLUSTER_TOL for c in columns for v in c):
                raise PreconditionError(
                    "both polynomials vanish on a whole line: positive-dimensional intersection"
                )
        good = [
            y
            for y, _ in candidates
            if all(abs(g(x0, y)) <= 1e-6 * max(1.0, _magnitude(g, (x0, y))) for g in (f1, f2))
        ]
        if len(good) > 1 and len(good) != mult:
            return None
        share = 1 if len(good) > 1 else mult
        found.extend(((x0, y), share) for y in good)
    return found


def _magnitude(f: LaurentPoly, point) -> float:
    return float(sum(abs(complex(c)) * abs(np.prod([p**e for p, e in zip(point, exp)])) for exp, c in f.items()))


def bivariate_roots(f1: LaurentPoly, f2: LaurentPoly) -> NumericRootSet:
    """All torus roots of a two-variable system with a finite zero set."""
    if f1.n != 2 or f2.n != 2:
        raise InputError("expected two polynomials in two variables")
    if f1.is_zero() or f2.is_zero():
        raise InputError("zero polynomial")
    for a in range(0, 8):
        g1, g2 = _shear(f1, a), _shear(f2, a)
        found = _bivariate_once(g1, g2)
        if found is None:
            continue
        roots = [((u * y ** (-a), y), m) for (u, y), m in found]
        residual = max((max(abs(f1(*p)), abs(f2(*p))) for p, _ in roots), default=0.0)
        return NumericRootSet(tuple(roots), float(residual))
    raise PreconditionError("could not separate roots by a shear")  # pragma: no cover


def system_roots(system: Sequence[LaurentPoly]) -> NumericRootSet:
    if len(system) == 1:
        return univariate_roots(system[0])
    if len(system) == 2:
        return bivariate_roots(*system)
    raise InputError("the numeric oracle handles one or two variables only")


def numeric_sum(f: LaurentPoly, roots: NumericRootSet) -> complex:
    return complex(sum(f(*p) * m for p, m in roots.roots))


def numeric_product(f: LaurentPoly, roots: NumericRootSet) -> complex:
    out = complex(1)
    for p, m in roots.roots:
        out *= complex(f(*p)) ** m
    return out


def close(exact, approx: complex, rel: float = REL_TOL) -> bool:
    """Relative comparison of an exact rational with a complex approximation."""
    target = complex(float(exact))
    return abs(target - approx) <= rel * max(1.0, abs(target))
