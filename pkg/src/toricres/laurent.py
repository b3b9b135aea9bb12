"""Exact Laurent polynomials over Q and the bridge to Newton polytopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from ._linalg import dot, leibniz_det
from .errors import DegenerateInstanceError, InputError
from .geometry import ExponentVector, LatticePolytope, convex_hull


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise InputError(f"not an exact rational: {value!r}")


def format_fraction(q: Fraction) -> str:
    """Canonical ``p/q`` form with reduced terms and positive denominator."""
    return f"{q.numerator}/{q.denominator}"


class LaurentPoly:
    """Finite map from exponent vectors in Z^n to nonzero rationals.

    Immutable.  Terms iterate in lexicographic order of exponents, which
    fixes the canonical text form and makes equality exact.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, terms: Mapping[Sequence[int], object] | Iterable = (), n: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExponentVector, Fraction] = {}
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if n is None:
                n = len(exp)
            elif len(exp) != n:
                raise InputError(f"exponent {exp} does not have length {n}")
            acc[exp] = acc.get(exp, Fraction(0)) + as_fraction(coef)
        if n is None:
            raise InputError("dimension of the zero polynomial must be given")
        self.n = n
        self._terms = {e: c for e, c in sorted(acc.items()) if c != 0}

    # constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, n: int) -> "LaurentPoly":
        return cls({(0,) * n: c}, n)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "LaurentPoly":
        return cls({tuple(exp): c}, len(exp))

    @classmethod
    def variable(cls, j: int, n: int) -> "LaurentPoly":
        """The coordinate ``z_{j+1}`` (``j`` is a 0-based axis)."""
        return cls({tuple(int(i == j) for i in range(n)): 1}, n)

    @classmethod
    def univariate(cls, coeffs: Sequence, low: int = 0) -> "LaurentPoly":
        """``sum coeffs[i] * z**(low + i)``."""
        return cls({(low + i,): c for i, c in enumerate(coeffs)}, 1)

    # container protocol -------------------------------------------------

    def items(self):
        return self._terms.items()

    def support(self) -> tuple[ExponentVector, ...]:
        return tuple(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other, self.n)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._terms.items())))

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.n != self.n:
                raise InputError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        return LaurentPoly.constant(as_fraction(other), self.n)

    def __add__(self, other) -> "LaurentPoly":
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return scale(self, -1)

    def __sub__(self, other) -> "LaurentPoly":
        return add(self, scale(self._coerce(other), -1))

    def __rsub__(self, other) -> "LaurentPoly":
        return add(self._coerce(other), scale(self, -1))

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return mul(self, other)
        return scale(self, as_fraction(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise InputError("negative powers of Laurent polynomials are not polynomials")
        result = LaurentPoly.constant(1, self.n)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    def __call__(self, *point):
        """Evaluate at a point of the torus (exact for Fractions, any numeric type works)."""
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if len(point) != self.n:
            raise InputError("point dimension mismatch")
        total = 0
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term = term * x**e
            total = total + term
        return total

    # text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self._terms.items():
            factors = [f"({format_fraction(c)})"]
            factors += [f"z{i + 1}^{e}" for i, e in enumerate(exp) if e]
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r}, n={self.n})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"exp": list(exp), "coef": format_fraction(c)} for exp, c in self._terms.items()
            ]
        }

    @classmethod
    def from_json(cls, doc: Mapping, n: int) -> "LaurentPoly":
        return cls(((t["exp"], t["coef"]) for t in doc["terms"]), n)


def _same_n(f: LaurentPoly, g: LaurentPoly) -> None:
    if f.n != g.n:
        raise InputError(f"dimension mismatch: {f.n} vs {g.n}")


def add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    _same_n(f, g)
    acc = dict(f._terms)
    for e, c in g._terms.items():
        acc[e] = acc.get(e, 0) + c
    return LaurentPoly(acc, f.n)


def mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    _same_n(f, g)
    acc: dict[ExponentVector, Fraction] = {}
    for e1, c1 in f._terms.items():
        for e2, c2 in g._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            acc[e] = acc.get(e, 0) + c1 * c2
    return LaurentPoly(acc, f.n)


def scale(f: LaurentPoly, c) -> LaurentPoly:
    c = as_fraction(c)
    return LaurentPoly({e: c * v for e, v in f._terms.items()}, f.n)


def monomial_mul(f: LaurentPoly, exp: Sequence[int]) -> LaurentPoly:
    if len(exp) != f.n:
        raise InputError("exponent dimension mismatch")
    return LaurentPoly({tuple(a + b for a, b in zip(e, exp)): c for e, c in f._terms.items()}, f.n)


def newton_polytope(f: LaurentPoly) -> LatticePolytope:
    if f.is_zero():
        raise InputError("the zero polynomial has no Newton polytope")
    return convex_hull(f.support())


def vertex_coefficient(f: LaurentPoly, vertex: Sequence[int]) -> Fraction:
    vertex = tuple(vertex)
    if f.is_zero() or vertex not in newton_polytope(f).vertices:
        raise InputError(f"{vertex} is not a vertex of the Newton polytope")
    return f.coefficient(vertex)


def face_restriction(f: LaurentPoly, v: Sequence[int]) -> LaurentPoly:
    """Sum of the terms of ``f`` whose exponents maximise ``<v, .>``."""
    if f.is_zero():
        raise InputError("face restriction of the zero polynomial")
    top = max(dot(v, e) for e in f.support())
    return LaurentPoly({e: c for e, c in f.items() if dot(v, e) == top}, f.n)


def partial_derivative(f: LaurentPoly, j: int) -> LaurentPoly:
    """Derivative in the coordinate with 0-based index ``j``."""
    if not 0 <= j < f.n:
        raise InputError(f"no variable with index {j}")
    acc = {}
    for e, c in f.items():
        if e[j]:
            shifted = list(e)
            shifted[j] -= 1
            acc[tuple(shifted)] = c * e[j]
    return LaurentPoly(acc, f.n)


def jacobian_det(fs: Sequence[LaurentPoly]) -> LaurentPoly:
    """Determinant of the matrix of partial derivatives ``d f_i / d z_j``."""
    if not fs:
        raise InputError("empty system")
    n = fs[0].n
    if len(fs) != n or any(f.n != n for f in fs):
        raise InputError(f"need {n} polynomials in {n} variables")
    matrix = [[partial_derivative(f, j) for j in range(n)] for f in fs]
    return leibniz_det(matrix, LaurentPoly({}, n), LaurentPoly.constant(1, n))


def product(fs: Sequence[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.constant(1, fs[0].n)
    for f in fs:
        out = mul(out, f)
    return out


@dataclass(frozen=True)
class SystemInstance:
    """Ordered Laurent polynomials with their declared ambient polytopes."""

    polys: tuple[LaurentPoly, ...]
    declared_polytopes: tuple[LatticePolytope, ...]
    n: int

    @classmethod
    def from_polys(
        cls, polys: Sequence[LaurentPoly], declared: Sequence[LatticePolytope] | None = None
    ) -> "SystemInstance":
        if not polys:
            raise InputError("empty system")
        n = polys[0].n
        if any(f.n != n for f in polys):
            raise InputError("polynomials in differing numbers of variables")
        if declared is None:
            declared = [newton_polytope(f) for f in polys]
        if len(declared) != len(polys):
            raise InputError("one declared polytope per polynomial is required")
        inst = cls(tuple(polys), tuple(declared), n)
        inst.validate()
        return inst

    def validate(self) -> None:
        for j, (f, P) in enumerate(zip(self.polys, self.declared_polytopes), 1):
            if P.dim_ambient != self.n:
                raise InputError(f"declared polytope {j} has the wrong dimension")
            for e in f.support():
                if e not in P:
                    raise InputError(f"exponent {e} of polynomial {j} lies outside its polytope")

    def has_full_support(self, j: int) -> bool:
        """Whether polynomial ``j`` (1-based) has a nonzero coefficient at every vertex."""
        f = self.polys[j - 1]
        return all(f.coefficient(v) != 0 for v in self.declared_polytopes[j - 1].vertices)

    def in_omega(self, i: int | None = None) -> bool:
        """Membership in the open set where all ``f_j`` (``j != i``) have full support."""
        return all(self.has_full_support(j) for j in range(1, len(self.polys) + 1) if j != i)

    def require_omega(self, i: int | None = None) -> None:
        for j in range(1, len(self.polys) + 1):
            if j != i and not self.has_full_support(j):
                f = self.polys[j - 1]
                missing = [
                    list(v) for v in self.declared_polytopes[j - 1].vertices if f.coefficient(v) == 0
                ]
                raise DegenerateInstanceError(
                    f"polynomial {j} has zero coefficients at vertices of its declared polytope",
                    {"polynomial": j, "vertices": missing},
                )

