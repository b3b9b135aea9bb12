"""The F_2 function D, Parshin symbols of monomials and combinatorial coefficients.

Index conventions: polynomials and polytopes are numbered from 1, as in
the sign formulas that use their positions.  Orientation conventions
for combinatorial coefficients: polytopes are taken in the given order
and the character space carries its standard orientation; boundaries are
oriented outward-normal-first.  With these choices the summation formula
over the roots of a developed system reproduces the Bernstein count
(see ``residues.sum_over_roots``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from ._linalg import frac_det, gf2_det, gf2_rank_and_kernel, int_det, solve
from .errors import DegenerateInstanceError, InputError, NotDevelopedError
from .geometry import (
    ExponentVector,
    Face,
    LatticePolytope,
    barycenter,
    face,
    is_developed,
    is_i_developed,
    minkowski_sum,
    minkowski_sum_all,
    proper_faces,
)
from .laurent import as_fraction, format_fraction

# --------------------------------------------------------------------------
# the function D


def _check_d_args(vectors: Sequence[Sequence[int]]) -> tuple[int, list[tuple[int, ...]]]:
    if not vectors:
        raise InputError("D needs n+1 vectors")
    n = len(vectors[0])
    if len(vectors) != n + 1 or any(len(v) != n for v in vectors):
        raise InputError(f"D needs exactly {n + 1} vectors of length {n}")
    return n, [tuple(x & 1 for x in v) for v in vectors]


def d_function_kernel(vectors: Sequence[Sequence[int]]) -> int:
    """D through the unique linear relation among the reduced vectors."""
    n, bits = _check_d_args(vectors)
    r, kernel = gf2_rank_and_kernel(bits)
    if r < n:
        return 0
    (lam,) = kernel
    return (1 + sum(lam)) % 2


def d_function_minors(vectors: Sequence[Sequence[int]]) -> int:
    """D as the sum of the minors built from coordinatewise products of pairs."""
    n, bits = _check_d_args(vectors)
    total = 0
    for i, j in combinations(range(n + 1), 2):
        cols = [bits[k] for k in range(n + 1) if k not in (i, j)]
        cols.append(tuple(a & b for a, b in zip(bits[i], bits[j])))
        total ^= gf2_det(cols)
    return total


def d_function(vectors: Sequence[Sequence[int]]) -> int:
    """D of ``n+1`` integer vectors in Z^n (their reductions mod 2); 0 or 1."""
    return d_function_kernel(vectors)


# --------------------------------------------------------------------------
# Parshin symbols


def parshin_exponents(exponents: Sequence[Sequence[int]]) -> list[int]:
    """Power of ``c_j`` in the symbol: ``(-1)**j * det`` of the other exponents."""
    n = len(exponents) - 1
    if any(len(k) != n for k in exponents):
        raise InputError(f"need {n + 1} exponent vectors of length {n}")
    out = []
    for j in range(1, n + 2):
        minor = [list(k) for idx, k in enumerate(exponents, 1) if idx != j]
        out.append((-1) ** j * int_det(minor))
    return out


def parshin_symbol(monomials: Sequence[tuple[object, Sequence[int]]]) -> Fraction:
    """Parshin symbol of ``n+1`` monomials ``c_j z^{k_j}`` in ``n`` variables."""
    coeffs = [as_fraction(c) for c, _ in monomials]
    exps = [tuple(k) for _, k in monomials]
    if any(c == 0 for c in coeffs):
        raise InputError("Parshin symbol of a monomial with zero coefficient")
    value = Fraction(-1 if d_function(exps) else 1)
    for c, e in zip(coeffs, parshin_exponents(exps)):
        value *= c**e
    return value


@dataclass(frozen=True)
class VertexMonomialExpr:
    """``sign * prod a[j, A]**e`` over vertex coefficients ``a[j, A]`` of ``f_j``.

    Keys are ``(j, A)`` with ``j`` the 1-based polynomial index and ``A``
    a vertex of its polytope.  Zero exponents are never stored.
    """

    sign: int = 1
    exponents: tuple[tuple[tuple[int, ExponentVector], int], ...] = ()

    @classmethod
    def build(cls, sign: int, exponents: Mapping[tuple[int, ExponentVector], int]) -> "VertexMonomialExpr":
        items = tuple(sorted((k, e) for k, e in exponents.items() if e))
        return cls(1 if sign > 0 else -1, items)

    def as_dict(self) -> dict[tuple[int, ExponentVector], int]:
        return dict(self.exponents)

    def __mul__(self, other: "VertexMonomialExpr") -> "VertexMonomialExpr":
        acc = self.as_dict()
        for k, e in other.exponents:
            acc[k] = acc.get(k, 0) + e
        return VertexMonomialExpr.build(self.sign * other.sign, acc)

    def __pow__(self, k: int) -> "VertexMonomialExpr":
        return VertexMonomialExpr.build(self.sign ** (k % 2), {key: e * k for key, e in self.exponents})

    def inverse(self) -> "VertexMonomialExpr":
        return self ** -1

    def __truediv__(self, other: "VertexMonomialExpr") -> "VertexMonomialExpr":
        return self * other.inverse()

    def unsigned(self) -> "VertexMonomialExpr":
        return VertexMonomialExpr(1, self.exponents)

    def restrict(self, j: int) -> "VertexMonomialExpr":
        """Unsigned factor involving only the coefficients of ``f_j``."""
        return VertexMonomialExpr(1, tuple((k, e) for k, e in self.exponents if k[0] == j))

    def polynomials(self) -> set[int]:
        return {k[0] for k, _ in self.exponents}

    def evaluate(self, polys: Sequence) -> Fraction:
        value = Fraction(self.sign)
        for (j, vertex), e in self.exponents:
            c = polys[j - 1].coefficient(vertex)
            if c == 0:
                if e < 0:
                    raise DegenerateInstanceError(
                        f"vertex coefficient of f_{j} at {vertex} vanishes",
                        {"polynomial": j, "vertex": list(vertex)},
                    )
                return Fraction(0)
            value *= c**e
        return value

    def __str__(self) -> str:
        body = " * ".join(
            f"a{j}[{','.join(map(str, v))}]^{e}" for (j, v), e in self.exponents
        )
        sign = "-" if self.sign < 0 else "+"
        return f"{sign}1" + (f" * {body}" if body else "")

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "factors": [
                {"polynomial": j, "vertex": list(v), "exponent": e} for (j, v), e in self.exponents
            ],
        }


def parshin_symbol_symbolic(vertices: Sequence[Sequence[int]]) -> VertexMonomialExpr:
    """Parshin symbol of the vertex monomials ``a[j, A_j] z^{A_j}``, unevaluated."""
    exps = [tuple(v) for v in vertices]
    powers = parshin_exponents(exps)
    sign = -1 if d_function(exps) else 1
    return VertexMonomialExpr.build(sign, {(j, A): e for j, (A, e) in enumerate(zip(exps, powers), 1)})


# --------------------------------------------------------------------------
# combinatorial coefficients


@dataclass(frozen=True)
class CombCoeffTable:
    """Combinatorial coefficients ``k_A`` for the vertices of a Minkowski sum.

    ``decomposition`` maps each vertex ``A`` to the vertices ``A_j`` of the
    summands with ``A = sum A_j``.
    """

    coefficients: dict[ExponentVector, int]
    decomposition: dict[ExponentVector, tuple[ExponentVector, ...]]
    order: tuple[int, ...] = ()
    convention: str = "given polytope order; standard orientation; outward normal first"

    def __getitem__(self, vertex) -> int:
        return self.coefficients[tuple(vertex)]

    def __iter__(self) -> Iterator[ExponentVector]:
        return iter(self.coefficients)

    def items(self):
        return self.coefficients.items()

    def nonzero(self) -> dict[ExponentVector, int]:
        return {A: k for A, k in self.coefficients.items() if k}

    def to_json(self) -> list[dict]:
        return [
            {"vertex": list(A), "k": k, "terms": [list(t) for t in self.decomposition[A]]}
            for A, k in sorted(self.coefficients.items())
        ]


def _vertex_normals(total: LatticePolytope) -> dict[ExponentVector, tuple[int, ...]]:
    return {next(iter(F.vertices)): F.normal for F in proper_faces(total) if F.dim == 0 and len(F.vertices) == 1}


def vertex_decomposition(
    polys: Sequence[LatticePolytope], total: LatticePolytope | None = None
) -> dict[ExponentVector, tuple[ExponentVector, ...]]:
    """Split each vertex of the Minkowski sum into vertices of the summands."""
    total = minkowski_sum_all(polys) if total is None else total
    normals = _vertex_normals(total)
    out = {}
    for A in total.vertices:
        v = normals[A]
        parts = tuple(face(P, v).vertices for P in polys)
        assert all(len(p) == 1 for p in parts)
        out[A] = tuple(p[0] for p in parts)
    return out


def _require_developed(polys: Sequence[LatticePolytope]) -> None:
    cert = is_developed(polys)
    if not cert.verdict:
        raise NotDevelopedError(
            "collection is not developed", {"witness": list(cert.witness)}
        )


def combinatorial_coefficients_2d(P1: LatticePolytope, P2: LatticePolytope) -> CombCoeffTable:
    """Edge-label rule for a developed pair of polygons.

    Each edge of ``P1 + P2`` is labelled by the summand contributing a
    vertex to it.  Walking counter-clockwise, a vertex where the label
    switches from 1 to 2 gets ``+1``, from 2 to 1 gets ``-1``, otherwise 0.
    """
    if P1.dim_ambient != 2 or P2.dim_ambient != 2:
        raise InputError("the label rule is for polygons in Z^2")
    polys = (P1, P2)
    _require_developed(polys)
    total = minkowski_sum(P1, P2)
    decomposition = vertex_decomposition(polys, total)
    coeffs = {A: 0 for A in total.vertices}
    if total.dim == 2:
        ring = _ccw(total.vertices)
        labels = []
        for p, q in zip(ring, ring[1:] + ring[:1]):
            v = (q[1] - p[1], p[0] - q[0])
            labels.append(1 if face(P1, v).is_point() else 2)
        for idx, A in enumerate(ring):
            before, after = labels[idx - 1], labels[idx]
            if before != after:
                coeffs[A] = 1 if (before, after) == (1, 2) else -1
    return CombCoeffTable(coeffs, decomposition, (1, 2))


def _ccw(vertices: Sequence[ExponentVector]) -> list[ExponentVector]:
    from .geometry import _monotone_chain

    pts = list(vertices)
    return [pts[i] for i in _monotone_chain(pts)]


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def _generic_target(n: int, attempt: int) -> tuple[int, tuple[Fraction, ...]]:
    r = attempt % n
    primes = [_PRIMES[(attempt + c) % len(_PRIMES)] + attempt // len(_PRIMES) * 100 for c in range(n)]
    y = tuple(Fraction(0) if c == r else Fraction(1, primes[c]) for c in range(n))
    return r, y


class _Degenerate(Exception):
    pass


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def local_degree_coefficients(polys: Sequence[LatticePolytope]) -> CombCoeffTable:
    """Combinatorial coefficients as local degrees of a characteristic map.

    The map is affine on the barycentric subdivision of the boundary of
    the Minkowski sum: at the barycenter of a face its ``i``-th component
    is 0 if the ``i``-th term of the face is a vertex and 1 otherwise.
    The degree at a vertex counts signed preimages of a generic point of
    the boundary of the positive orthant.
    """
    n = polys[0].dim_ambient
    if len(polys) != n:
        raise InputError(f"need {n} polytopes in Z^{n}")
    _require_developed(polys)
    total = minkowski_sum_all(polys)
    decomposition = vertex_decomposition(polys, total)
    if total.dim < n:
        return CombCoeffTable({A: 0 for A in total.vertices}, decomposition, tuple(range(1, n + 1)))

    faces = proper_faces(total)
    covers: dict[frozenset, list[Face]] = {F.vertices: [] for F in faces}
    for F in faces:
        for G in faces:
            if G.dim == F.dim + 1 and F.vertices < G.vertices:
                covers[F.vertices].append(G)
    hval = {
        F.vertices: tuple(0 if face(P, F.normal).is_point() else 1 for P in polys) for F in faces
    }
    bary = {F.vertices: barycenter(F.vertices) for F in faces}

    def chains(F: Face) -> Iterator[list[Face]]:
        if F.dim == n - 1:
            yield [F]
            return
        for G in covers[F.vertices]:
            for rest in chains(G):
                yield [F] + rest

    vertex_faces = {next(iter(F.vertices)): F for F in faces if F.dim == 0}
    coeffs = {}
    for A in total.vertices:
        cells = []
        for chain in chains(vertex_faces[A]):
            top = chain[-1]
            u = [tuple(b - a for a, b in zip(A, bary[G.vertices])) for G in chain[1:]]
            src = _sign(frac_det([list(top.normal)] + [list(x) for x in u]))
            cells.append((src, [hval[G.vertices] for G in chain[1:]]))
        for attempt in range(200):
            try:
                coeffs[A] = _count_preimages(cells, n, attempt)
                break
            except _Degenerate:
                continue
        else:  # pragma: no cover - would need 200 degenerate primes
            raise RuntimeError("no generic target point found")
    return CombCoeffTable(coeffs, decomposition, tuple(range(1, n + 1)))


def _count_preimages(cells, n: int, attempt: int) -> int:
    r, y = _generic_target(n, attempt)
    rows = [c for c in range(n) if c != r]
    degree = 0
    for src, images in cells:
        if any(h[r] for h in images):
            continue
        matrix = [[h[c] for h in images] for c in rows]
        t = solve(matrix, [y[c] for c in rows])
        if t is None:
            continue
        if any(x == 0 for x in t):
            raise _Degenerate
        if any(x < 0 for x in t):
            continue
        outward = [0] * n
        outward[r] = -1
        tgt = _sign(frac_det([outward] + [list(h) for h in images]))
        degree += src * tgt
    return degree


def combinatorial_coefficients(polys: Sequence[LatticePolytope]) -> CombCoeffTable:
    """Combinatorial coefficients of a developed collection of ``n`` polytopes in Z^n."""
    n = polys[0].dim_ambient
    if len(polys) != n or any(P.dim_ambient != n for P in polys):
        raise InputError(f"need {n} polytopes in Z^{n}")
    if n == 1:
        _require_developed(polys)
        (P,) = polys
        decomposition = {A: (A,) for A in P.vertices}
        if P.is_point():
            return CombCoeffTable({P.vertices[0]: 0}, decomposition, (1,))
        left, right = P.vertices
        return CombCoeffTable({left: 1, right: -1}, decomposition, (1,))
    if n == 2:
        return combinatorial_coefficients_2d(*polys)
    return local_degree_coefficients(polys)


def merged_collection(polys: Sequence[LatticePolytope], i: int, j: int) -> list[LatticePolytope]:
    """``(P_i + P_j, P_k3, ..., P_k{n+1})`` with the remaining indices ascending."""
    rest = [P for k, P in enumerate(polys, 1) if k not in (i, j)]
    return [minkowski_sum(polys[i - 1], polys[j - 1])] + rest


def combinatorial_coefficients_ij(polys: Sequence[LatticePolytope], i: int, j: int) -> CombCoeffTable:
    """Coefficients ``k^{i,j}_A`` over the vertices of the sum of all ``n+1`` polytopes.

    The vertex decomposition stored in the table refers to the original
    ``n+1`` summands.
    """
    count = len(polys)
    if not (1 <= i <= count and 1 <= j <= count) or i == j:
        raise InputError("need two distinct indices in range")
    failing = [k for k in (i, j) if not is_i_developed(polys, k).verdict]
    if failing:
        raise NotDevelopedError(
            f"collection is not {failing[0]}-developed",
            {"failing": failing, "witnesses": [list(is_i_developed(polys, k).witness) for k in failing]},
        )
    table = combinatorial_coefficients(merged_collection(polys, i, j))
    decomposition = vertex_decomposition(polys)
    return CombCoeffTable(table.coefficients, decomposition, (i, j) + tuple(k for k in range(1, count + 1) if k not in (i, j)))


def format_table(table: CombCoeffTable) -> str:
    return ", ".join(f"{A}: {k:+d}" for A, k in sorted(table.items()))


def fraction_str(q: Fraction) -> str:
    return format_fraction(q)
