"""Resultants: Sylvester and product resultants in one variable, products of a
polynomial over the roots of the others, vertex monomials with signs, and the
resultant of a 1-developed collection through the Poisson product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._linalg import frac_det
from .combinatorics import (
    VertexMonomialExpr,
    combinatorial_coefficients,
    combinatorial_coefficients_ij,
    parshin_symbol,
    parshin_symbol_symbolic,
)
from .errors import AmbiguousFacetError, InputError, NotDevelopedError, PreconditionError
from .geometry import (
    Covector,
    LatticePolytope,
    developed_pivots,
    face,
    hyperplane_facets,
    is_completely_developed,
    is_i_developed,
    minkowski_sum_all,
    mixed_volume,
    support_value,
)
from .laurent import LaurentPoly, SystemInstance, as_fraction, newton_polytope
from .residues import product_over_roots

# --------------------------------------------------------------------------
# one variable


def _coeff_list(p, degree: int | None) -> list[Fraction]:
    if isinstance(p, LaurentPoly):
        if p.n != 1:
            raise InputError("expected a polynomial in one variable")
        exps = [e[0] for e in p.support()]
        if exps and min(exps) < 0:
            raise InputError("negative exponent in an ordinary polynomial")
        top = max(exps, default=0)
        coeffs = [p.coefficient((d,)) for d in range(top + 1)]
    else:
        coeffs = [as_fraction(c) for c in p]
    if degree is None:
        degree = max((d for d, c in enumerate(coeffs) if c), default=0)
    if any(c for c in coeffs[degree + 1 :]):
        raise InputError(f"polynomial exceeds the degree bound {degree}")
    coeffs = coeffs[: degree + 1]
    return coeffs + [Fraction(0)] * (degree + 1 - len(coeffs))


def _sylvester_det(p: list[Fraction], q: list[Fraction]) -> Fraction:
    """Determinant of the matrix with ``deg q`` shifted rows of ``p`` over ``deg p`` rows of ``q``."""
    k, n = len(p) - 1, len(q) - 1
    size = k + n
    if size == 0:
        return Fraction(1)
    rows = []
    for shift in range(n):
        row = [Fraction(0)] * size
        for d, c in enumerate(reversed(p)):
            row[shift + d] = c
        rows.append(row)
    for shift in range(k):
        row = [Fraction(0)] * size
        for d, c in enumerate(reversed(q)):
            row[shift + d] = c
        rows.append(row)
    return frac_det(rows)


def sylvester_resultant(P1, P2, k: int | None = None, n: int | None = None) -> tuple[Fraction, Fraction]:
    """``(R1, R2)``: Sylvester determinants of ``(P1, P2)`` and ``(P2, P1)``.

    ``P1``, ``P2`` are coefficient lists ``[a_0, ..., a_k]`` (lowest degree
    first) or one-variable ``LaurentPoly`` with nonnegative exponents;
    ``k`` and ``n`` are their degree bounds (default: actual degrees).
    """
    p = _coeff_list(P1, k)
    q = _coeff_list(P2, n)
    if not any(p) and not any(q):
        raise InputError("both polynomials are zero")
    return _sylvester_det(p, q), _sylvester_det(q, p)


def _segment(f: LaurentPoly, seg) -> tuple[int, int]:
    if f.n != 1:
        raise InputError("expected a polynomial in one variable")
    if f.is_zero():
        raise InputError("zero polynomial")
    lo = min(e[0] for e in f.support())
    hi = max(e[0] for e in f.support())
    if seg is None:
        return lo, hi
    a, b = seg
    if not a <= lo <= hi <= b:
        raise InputError(f"support [{lo}, {hi}] is not inside [{a}, {b}]")
    return a, b


def delta_resultant_1d(f1: LaurentPoly, f2: LaurentPoly, seg1=None, seg2=None) -> tuple[Fraction, Fraction]:
    """Sylvester resultants of the shifted polynomials with the segment sign corrections.

    ``seg1 = (k, n)`` and ``seg2 = (l, m)`` default to the Newton segments.
    Returns ``((-1)**(n(m-l)) R1, (-1)**(m(n-k)) R2)`` where ``R1, R2`` are
    the Sylvester determinants of ``z**-k f1`` and ``z**-l f2``.
    """
    k, n = _segment(f1, seg1)
    l, m = _segment(f2, seg2)
    p = [f1.coefficient((k + d,)) for d in range(n - k + 1)]
    q = [f2.coefficient((l + d,)) for d in range(m - l + 1)]
    r1, r2 = _sylvester_det(p, q), _sylvester_det(q, p)
    return (-1) ** (n * (m - l) % 2) * r1, (-1) ** (m * (n - k) % 2) * r2


def product_resultant_1d(f1: LaurentPoly, f2: LaurentPoly) -> tuple[Fraction, Fraction]:
    """``(b_l**-k b_m**n Pi1, a_k**-l a_n**m Pi2)`` with ``Pi1 = prod f1`` over roots of ``f2`` and vice versa."""
    k, n = _segment(f1, None)
    l, m = _segment(f2, None)
    a_k, a_n = f1.coefficient((k,)), f1.coefficient((n,))
    b_l, b_m = f2.coefficient((l,)), f2.coefficient((m,))
    pi1 = product_over_roots(f1, [f2])
    pi2 = product_over_roots(f2, [f1])
    return b_l ** (-k) * b_m**n * pi1, a_k ** (-l) * a_n**m * pi2


def weil_symbols_at_ends(f1: LaurentPoly, f2: LaurentPoly) -> tuple[Fraction, Fraction]:
    """Weil symbols of ``(f1, f2)`` at ``0`` and at infinity, from their extreme terms."""
    k, n = _segment(f1, None)
    l, m = _segment(f2, None)
    at_zero = parshin_symbol([(f1.coefficient((k,)), (k,)), (f2.coefficient((l,)), (l,))])
    # at infinity the local parameter is 1/z, which negates exponents
    at_inf = parshin_symbol([(f1.coefficient((n,)), (-n,)), (f2.coefficient((m,)), (-m,))])
    return at_zero, at_inf


# --------------------------------------------------------------------------
# n + 1 polynomials in n variables


def as_instance(system) -> SystemInstance:
    if isinstance(system, SystemInstance):
        return system
    return SystemInstance.from_polys(list(system))


def _check_size(inst: SystemInstance) -> None:
    if len(inst.polys) != inst.n + 1:
        raise InputError(f"need {inst.n + 1} polynomials in {inst.n} variables")


def _require_i_developed(polys: Sequence[LatticePolytope], i: int) -> None:
    cert = is_i_developed(polys, i)
    if not cert.verdict:
        raise NotDevelopedError(
            f"collection is not {i}-developed", {"index": i, "witness": list(cert.witness)}
        )


def pi_product(i: int, system) -> Fraction:
    """Product of ``f_i`` over the common torus roots of the other polynomials."""
    inst = as_instance(system)
    _check_size(inst)
    if not 1 <= i <= len(inst.polys):
        raise InputError(f"index {i} out of range")
    polys = inst.declared_polytopes
    _require_i_developed(polys, i)
    inst.require_omega(i)
    sub = [f for j, f in enumerate(inst.polys, 1) if j != i]
    table = combinatorial_coefficients([P for j, P in enumerate(polys, 1) if j != i])
    return product_over_roots(inst.polys[i - 1], sub, table)


def monomial_M_ij(polys: Sequence[LatticePolytope], i: int, j: int) -> tuple[VertexMonomialExpr, int]:
    """Monomial ``M_ij`` and sign ``s_ij`` with ``Pi^[i] / Pi^[j] = M_ij * s_ij``."""
    if i == j:
        raise InputError("M_ij needs two distinct indices")
    if i > j:
        M, s = monomial_M_ij(polys, j, i)
        return M.inverse(), s
    n = polys[0].dim_ambient
    table = combinatorial_coefficients_ij(polys, i, j)
    acc = VertexMonomialExpr()
    sign = (-1) ** ((n + i + j) % 2)
    for A, k in sorted(table.items()):
        if k:
            acc = acc * parshin_symbol_symbolic(table.decomposition[A]) ** (sign * k)
    return acc.unsigned(), acc.sign


def monomials_and_signs(
    polys: Sequence[LatticePolytope],
) -> tuple[tuple[VertexMonomialExpr, ...], tuple[int, ...]]:
    """Monomials ``M_1..M_{n+1}`` and signs with ``s_1 = +1`` making ``Pi^[i] M_i s_i`` independent of ``i``."""
    ok, certs = is_completely_developed(polys)
    if not ok:
        bad = [i for i, c in enumerate(certs, 1) if not c.verdict]
        raise NotDevelopedError(
            "collection is not completely developed",
            {"failing": bad, "witnesses": [list(certs[i - 1].witness) for i in bad]},
        )
    count = len(polys)
    pairs = {j: monomial_M_ij(polys, 1, j) for j in range(2, count + 1)}
    m = VertexMonomialExpr()
    for j, (M, _) in pairs.items():
        m = m * M.restrict(j)
    m_inv = m.inverse()
    monomials = [m_inv] + [pairs[j][0] * m_inv for j in range(2, count + 1)]
    for k, M in enumerate(monomials, 1):
        if k in M.polynomials():
            raise PreconditionError(  # pragma: no cover - would contradict uniqueness
                f"M_{k} involves coefficients of f_{k}", {"index": k}
            )
    signs = (1,) + tuple(pairs[j][1] for j in range(2, count + 1))
    return tuple(monomials), signs


@dataclass(frozen=True)
class FacetFactor:
    normal: Covector
    polynomial: int
    vertex: tuple[int, ...]
    exponent: int
    coefficient: Fraction | None = None

    def to_json(self) -> dict:
        doc = {
            "normal": list(self.normal),
            "polynomial": self.polynomial,
            "vertex": list(self.vertex),
            "exponent": self.exponent,
        }
        if self.coefficient is not None:
            doc["coefficient"] = f"{self.coefficient.numerator}/{self.coefficient.denominator}"
        return doc


def facet_factors(polys: Sequence[LatticePolytope], i: int) -> list[FacetFactor]:
    """Per-facet factors ``a_j(v)**((n-1)! V(v) H_i(v))`` over the facets of the sum without ``P_i``."""
    _require_i_developed(polys, i)
    n = polys[0].dim_ambient
    rest = [(j, P) for j, P in enumerate(polys, 1) if j != i]
    total = minkowski_sum_all([P for _, P in rest])
    out = []
    for v in hyperplane_facets(total):
        faces = {j: face(P, v) for j, P in rest}
        point_js = [j for j, F in faces.items() if F.is_point()]
        if not point_js:
            raise PreconditionError(  # pragma: no cover - excluded by developedness
                "facet without a vertex term", {"normal": list(v)}
            )
        height = support_value(polys[i - 1], v)
        options = []
        for j in point_js:
            others = [F for jj, F in faces.items() if jj != j]
            vol = mixed_volume(others, lattice_rank=n - 1)
            options.append(FacetFactor(v, j, faces[j].vertices[0], vol * height))
        nonzero = [o for o in options if o.exponent]
        if len({(o.polynomial, o.exponent) for o in nonzero}) > 1:
            raise AmbiguousFacetError(
                "several vertex terms give different nonzero contributions",
                {"normal": list(v), "candidates": [o.to_json() for o in nonzero]},
            )
        out.append(nonzero[0] if nonzero else options[0])
    return out


def monomial_M_i_facets(polys: Sequence[LatticePolytope], i: int) -> VertexMonomialExpr:
    """``M_i`` as a product of vertex coefficients over the essential facets."""
    acc: dict = {}
    for ff in facet_factors(polys, i):
        if ff.exponent:
            key = (ff.polynomial, ff.vertex)
            acc[key] = acc.get(key, 0) + ff.exponent
    return VertexMonomialExpr.build(1, acc)


@dataclass(frozen=True)
class SignedResultantValue:
    """A resultant value; ``sign_status`` is ``"up_to_sign"``, ``"+1"`` or ``"-1"``."""

    magnitude: Fraction
    sign_status: str = "up_to_sign"
    provenance: str = ""

    def __eq__(self, other) -> bool:
        if isinstance(other, SignedResultantValue):
            if "up_to_sign" in (self.sign_status, other.sign_status):
                return abs(self.magnitude) == abs(other.magnitude)
            return self.magnitude == other.magnitude
        return NotImplemented

    def __hash__(self) -> int:
        return hash(abs(self.magnitude))

    def is_zero(self) -> bool:
        return self.magnitude == 0


@dataclass(frozen=True)
class PoissonDecomposition:
    pivot: int
    pi_term: Fraction
    facet_factors: tuple[FacetFactor, ...] = field(default_factory=tuple)

    def value(self) -> Fraction:
        v = self.pi_term
        for ff in self.facet_factors:
            if ff.exponent:
                v *= ff.coefficient**ff.exponent
        return v


def suggest_pivots(system) -> list[int]:
    inst = as_instance(system)
    return developed_pivots(list(inst.declared_polytopes))


def delta_resultant_1developed(system, pivot: int = 1) -> tuple[SignedResultantValue, PoissonDecomposition]:
    """Resultant (up to sign) of a collection that is developed once ``P_pivot`` is removed."""
    inst = as_instance(system)
    _check_size(inst)
    polys = list(inst.declared_polytopes)
    _require_i_developed(polys, pivot)
    inst.require_omega(pivot)
    pi = pi_product(pivot, inst)
    factors = []
    for ff in facet_factors(polys, pivot):
        c = inst.polys[ff.polynomial - 1].coefficient(ff.vertex)
        factors.append(FacetFactor(ff.normal, ff.polynomial, ff.vertex, ff.exponent, c))
    deco = PoissonDecomposition(pivot, pi, tuple(factors))
    return SignedResultantValue(deco.value(), "up_to_sign", f"poisson product, pivot {pivot}"), deco


@dataclass(frozen=True)
class PoissonReport:
    values: tuple[Fraction, ...]
    monomials: tuple[VertexMonomialExpr, ...]
    signs: tuple[int, ...]
    pi_products: tuple[Fraction, ...]
    facet_monomials_agree: bool
    mismatches: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return not self.mismatches and self.facet_monomials_agree

    @property
    def common_value(self) -> Fraction | None:
        return self.values[0] if not self.mismatches else None


def signed_poisson_check(system) -> PoissonReport:
    """Evaluate ``Pi^[i] M_i s_i`` for every ``i`` and compare."""
    inst = as_instance(system)
    _check_size(inst)
    polys = list(inst.declared_polytopes)
    monomials, signs = monomials_and_signs(polys)
    inst.require_omega()
    pis = tuple(pi_product(i, inst) for i in range(1, len(polys) + 1))
    values = tuple(
        pi * M.evaluate(inst.polys) * s for pi, M, s in zip(pis, monomials, signs)
    )
    mismatches = tuple(i for i, v in enumerate(values, 1) if v != values[0])
    facets_ok = all(
        monomial_M_i_facets(polys, i) == M for i, M in enumerate(monomials, 1)
    )
    return PoissonReport(values, monomials, signs, pis, facets_ok, mismatches)
