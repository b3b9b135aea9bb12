"""Vertex Laurent series, the summation formula over roots, and Newton's identities.

For a developed system ``f_1 = ... = f_n = 0`` with ``P = f_1 ... f_n`` and
``phi = f * det(d f_i / d z_j)``::

    sum over roots of f(z) * mult(z) = (-1)**n * sum_A k_A * res_A(phi / P)

where ``res_A`` is the coefficient of ``(z_1 ... z_n)**-1`` in the Laurent
series of ``phi / P`` expanded at the vertex ``A`` of the Newton polytope
of ``P``.  Nothing here solves the system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from operator import add, ge
from typing import Sequence

from ._linalg import dot
from .combinatorics import CombCoeffTable, combinatorial_coefficients
from .errors import InputError
from .geometry import ExponentVector, mixed_volume, proper_faces
from .laurent import LaurentPoly, SystemInstance, as_fraction, jacobian_det, newton_polytope, product


@dataclass(frozen=True)
class VertexSeriesQuery:
    numerator: LaurentPoly
    denominator: LaurentPoly
    vertex: ExponentVector
    target: ExponentVector


@dataclass(frozen=True)
class PowerSumVector:
    values: tuple[Fraction, ...]

    @property
    def K(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> Fraction:
        """``p_k`` for ``k >= 1``."""
        if not 1 <= k <= len(self.values):
            raise IndexError(k)
        return self.values[k - 1]


def _incident_facet_normals(poly, A) -> list[tuple[int, ...]]:
    return [F.normal for F in proper_faces(poly) if A in F.vertices and F.dim == poly.dim - 1]


def strict_support_covector(P: LaurentPoly, vertex: Sequence[int]) -> tuple[int, ...]:
    """Integral ``xi`` with ``<xi, b - A> <= -1`` for every other exponent ``b`` of ``P``."""
    A = tuple(vertex)
    others = [b for b in P.support() if b != A]
    if not others:
        return (0,) * P.n
    poly = newton_polytope(P)
    if A not in poly.vertices:
        raise InputError(f"{A} is not a vertex of the Newton polytope")
    facets = _incident_facet_normals(poly, A)
    candidates = [F.normal for F in proper_faces(poly) if F.vertices == frozenset([A])]
    for xi in candidates + facets:
        # perturb by incident facet normals until strict
        for extra in [None] + facets:
            trial = xi if extra is None else tuple(a + b for a, b in zip(xi, extra))
            top = dot(trial, A)
            if all(dot(trial, b) <= top - 1 for b in others):
                return trial
    raise RuntimeError(f"no strictly supporting covector at {A}")  # pragma: no cover


class VertexExpansion:
    """The series ``sum_k Q**k`` of ``q_A z^A / P`` at a vertex ``A``, evaluated on demand.

    Writing ``P = q_A z^A (1 - Q)``, every exponent of ``Q`` lies in the
    tangent cone of the Newton polytope at ``A`` and strictly below ``A``
    for a supporting covector ``xi``.  Partial products that drop below the
    lowest requested level of ``xi`` or of any incident facet normal can
    never reach a requested exponent, so the expansion is finite.
    """

    def __init__(self, P: LaurentPoly, vertex: Sequence[int]):
        A = tuple(vertex)
        if P.is_zero():
            raise InputError("zero denominator")
        if len(A) != P.n:
            raise InputError("dimension mismatch in series query")
        poly = newton_polytope(P)
        if A not in poly.vertices:
            raise InputError(f"{A} is not a vertex of the Newton polytope")
        self.n = P.n
        self.vertex = A
        self.q_A = P.coefficient(A)
        self.xi = strict_support_covector(P, A)
        self.walls = [self.xi] + (_incident_facet_normals(poly, A) if poly.dim else [])
        # Q = R / q with integer R, q: powers of Q then share the denominator q**k
        scale = lcm(*(c.denominator for _, c in P.items()))
        self._q = int(self.q_A * scale)
        self._R = {
            tuple(b - a for a, b in zip(A, e)): -int(c * scale) for e, c in P.items() if e != A
        }

    def coefficients(self, needs, extra_depth: int = 0) -> dict[ExponentVector, Fraction]:
        """Coefficients of ``sum_k Q**k`` at the exponents in ``needs``.

        ``extra_depth`` keeps expanding that many powers past the point where
        the pruned expansion is empty (only useful for testing the bound).
        """
        needs = set(needs)
        out = {s: Fraction(0) for s in needs}
        if not needs:
            return out
        floors = tuple(min(dot(w, s) for s in needs) for w in self.walls)
        steps = [(b, tuple(dot(w, b) for w in self.walls), c) for b, c in self._R.items()]
        origin = (0,) * self.n
        # state: exponent -> [levels against each wall, integer numerator over q**depth]
        power = {origin: ((0,) * len(self.walls), 1)}
        denominator = 1
        spare = extra_depth
        while True:
            for s, (_, c) in power.items():
                if s in out:
                    out[s] += Fraction(c, denominator)
            if not power:
                if spare <= 0:
                    break
                spare -= 1
                continue
            nxt: dict[ExponentVector, list] = {}
            for s, (ls, cs) in power.items():
                for b, lb, cb in steps:
                    lu = tuple(map(add, ls, lb))
                    if not all(map(ge, lu, floors)):
                        continue
                    u = tuple(map(add, s, b))
                    slot = nxt.get(u)
                    if slot is None:
                        nxt[u] = [lu, cs * cb]
                    else:
                        slot[1] += cs * cb
            power = {u: (lu, c) for u, (lu, c) in nxt.items() if c}
            denominator *= self._q
        return out

    def needs_for(self, f: LaurentPoly, target: Sequence[int]) -> list[ExponentVector]:
        return [tuple(t - (x - a) for t, x, a in zip(target, e, self.vertex)) for e in f.support()]

    def coefficient(self, f: LaurentPoly, target: Sequence[int], table=None) -> Fraction:
        """Coefficient of ``z**target`` in the expansion of ``f / P``."""
        needs = self.needs_for(f, target)
        if table is None:
            table = self.coefficients(needs)
        return sum(
            (c / self.q_A * table[s] for (_, c), s in zip(f.items(), needs)), Fraction(0)
        )


def vertex_series_coefficient(q: VertexSeriesQuery, *, extra_depth: int = 0) -> Fraction:
    """Coefficient of ``z**target`` in the series of ``numerator/denominator`` at ``vertex``."""
    f, P, t = q.numerator, q.denominator, tuple(q.target)
    if f.n != P.n or len(t) != P.n:
        raise InputError("dimension mismatch in series query")
    exp = VertexExpansion(P, q.vertex)
    if f.is_zero():
        return Fraction(0)
    return exp.coefficient(f, t, exp.coefficients(exp.needs_for(f, t), extra_depth))


def vertex_residue(f: LaurentPoly, P: LaurentPoly, vertex: Sequence[int]) -> Fraction:
    """Coefficient of ``(z_1 ... z_n)**-1`` in the vertex-``A`` series of ``f/P``."""
    return vertex_series_coefficient(VertexSeriesQuery(f, P, tuple(vertex), (-1,) * P.n))


def _prepare(system: Sequence[LaurentPoly], table: CombCoeffTable | None):
    system = list(system)
    inst = SystemInstance.from_polys(system)
    n = inst.n
    if len(system) != n:
        raise InputError(f"need {n} polynomials in {n} variables")
    inst.require_omega()
    if table is None:
        table = combinatorial_coefficients(list(inst.declared_polytopes))
    return system, n, table


def sum_over_roots(
    f: LaurentPoly, system: Sequence[LaurentPoly], table: CombCoeffTable | None = None
) -> Fraction:
    """Sum of ``f`` over the torus roots of a developed system, with multiplicity."""
    system, n, table = _prepare(system, table)
    return _sums([f], n, table, product(system), jacobian_det(system))[0]


def _sums(fs: Sequence[LaurentPoly], n: int, table: CombCoeffTable, P, jac) -> list[Fraction]:
    """Summation formula for several numerators, one series expansion per vertex."""
    phis = [f * jac for f in fs]
    target = (-1,) * n
    totals = [Fraction(0)] * len(fs)
    for A, k in table.items():
        if not k:
            continue
        exp = VertexExpansion(P, A)
        needs = set()
        for phi in phis:
            needs.update(exp.needs_for(phi, target))
        coeffs = exp.coefficients(needs)
        for idx, phi in enumerate(phis):
            totals[idx] += k * exp.coefficient(phi, target, coeffs)
    sign = (-1) ** n
    return [sign * t for t in totals]


def power_sums(
    f: LaurentPoly, system: Sequence[LaurentPoly], table: CombCoeffTable | None = None, K: int = 1
) -> PowerSumVector:
    """``p_k = sum over roots of f**k`` for ``k = 1..K``."""
    if K < 0:
        raise InputError("K must be nonnegative")
    system, n, table = _prepare(system, table)
    powers = []
    fk = LaurentPoly.constant(1, n)
    for _ in range(K):
        fk = fk * f
        powers.append(fk)
    return PowerSumVector(tuple(_sums(powers, n, table, product(system), jacobian_det(system))))


def newton_to_elementary(p: PowerSumVector | Sequence, N: int) -> list[Fraction]:
    """Elementary symmetric values ``e_1..e_N`` from power sums ``p_1..p_K``."""
    values = p.values if isinstance(p, PowerSumVector) else tuple(as_fraction(x) for x in p)
    if N < 0:
        raise InputError("N must be nonnegative")
    if len(values) < N:
        raise InputError(f"need at least {N} power sums, got {len(values)}")
    e = [Fraction(1)]
    for k in range(1, N + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = e[k - i] * values[i - 1]
            acc += term if i % 2 else -term
        e.append(acc / k)
    return e[1:]


def elementary_to_char_poly(e: Sequence[Fraction]) -> LaurentPoly:
    """``t**N - e_1 t**(N-1) + ... + (-1)**N e_N`` as a polynomial in one variable."""
    N = len(e)
    coeffs = [Fraction((-1) ** (N - d)) * ([Fraction(1)] + list(e))[N - d] for d in range(N + 1)]
    return LaurentPoly.univariate(coeffs)


def root_count(system: Sequence[LaurentPoly]) -> int:
    return mixed_volume([newton_polytope(g) for g in system])


def values_characteristic_polynomial(
    f: LaurentPoly, system: Sequence[LaurentPoly], table: CombCoeffTable | None = None
) -> LaurentPoly:
    """Monic polynomial whose roots are the values of ``f`` at the roots of the system."""
    N = root_count(system)
    e = newton_to_elementary(power_sums(f, system, table, N), N)
    return elementary_to_char_poly(e)


def product_over_roots(
    f: LaurentPoly, system: Sequence[LaurentPoly], table: CombCoeffTable | None = None
) -> Fraction:
    """Product of ``f`` over the roots (with multiplicity); 1 for an empty root set."""
    N = root_count(system)
    if N == 0:
        return Fraction(1)
    e = newton_to_elementary(power_sums(f, system, table, N), N)
    return e[-1]

