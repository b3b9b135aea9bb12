"""Exact convex geometry of lattice polytopes.

Polytopes are stored by their vertex sets.  Every derived quantity
(facets, faces, volumes) is computed in the lattice of the affine hull
via a unimodular change of coordinates, so lower-dimensional polytopes
are measured intrinsically.  No floating point is used anywhere.

Covectors are plain integer tuples; a face in direction ``v`` is the
set of maximisers of the inner product with ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

from ._linalg import column_reduce, cofactor_normal, dot, primitive, rank
from .errors import InputError

ExponentVector = tuple[int, ...]
Covector = tuple[int, ...]


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many lattice points, stored by its vertices.

    Build instances with :func:`convex_hull`; the constructor trusts that
    ``vertices`` are already the extreme points.
    """

    vertices: tuple[ExponentVector, ...]
    dim_ambient: int

    def __post_init__(self):
        if not self.vertices:
            raise InputError("empty support")

    @property
    def dim(self) -> int:
        return _hull(self.vertices).dim

    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def __contains__(self, point) -> bool:
        point = tuple(point)
        if point in self.vertices:
            return True
        return convex_hull(self.vertices + (point,)).vertices == self.vertices

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(
            tuple(sorted(tuple(a + b for a, b in zip(v, t)) for v in self.vertices)),
            self.dim_ambient,
        )

    def __add__(self, other: "LatticePolytope") -> "LatticePolytope":
        return minkowski_sum(self, other)


@dataclass(frozen=True)
class FaceDecomposition:
    direction: Covector
    faces: tuple[LatticePolytope, ...]

    def vertex_terms(self) -> tuple[int, ...]:
        """1-based positions whose face is a single vertex."""
        return tuple(i + 1 for i, f in enumerate(self.faces) if f.is_point())


@dataclass(frozen=True)
class DevelopednessCertificate:
    """Outcome of a developedness test.

    For a negative verdict ``witness`` is a covector whose face
    decomposition has no vertex term.  For a positive verdict
    ``cone_witnesses`` lists, for one covector per normal cone of the
    Minkowski sum, a 1-based index whose face is a vertex.
    """

    verdict: bool
    witness: Covector | None = None
    cone_witnesses: tuple[tuple[Covector, int], ...] = field(default=())

    def __bool__(self) -> bool:
        return self.verdict


# --------------------------------------------------------------------------
# hull machinery


@dataclass(frozen=True)
class _Hull:
    n: int
    base: ExponentVector
    frame: tuple[tuple[int, ...], ...]  # unimodular W, rows
    dim: int
    vertices: tuple[ExponentVector, ...]
    local: tuple[tuple[int, ...], ...]
    # (intrinsic outward primitive normal, offset, indices of vertices on the facet)
    facets: tuple[tuple[tuple[int, ...], int, frozenset[int]], ...]

    def to_local(self, p: Sequence[int]) -> tuple[int, ...]:
        diff = [a - b for a, b in zip(p, self.base)]
        return tuple(
            sum(diff[i] * self.frame[i][j] for i in range(self.n)) for j in range(self.dim)
        )

    def lift(self, u: Sequence[int]) -> Covector:
        """Ambient covector restricting to the intrinsic covector ``u``."""
        return tuple(
            sum(self.frame[i][j] * u[j] for j in range(len(u))) for i in range(self.n)
        )

    def orthogonal(self) -> Covector:
        """A primitive ambient covector constant on the affine hull (needs dim < n)."""
        return tuple(self.frame[i][self.dim] for i in range(self.n))


def _check_points(points: Iterable[Sequence[int]]) -> tuple[ExponentVector, ...]:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise InputError("empty support")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise InputError("points of differing dimension")
    return tuple(pts)


def _monotone_chain(pts: list[tuple[int, ...]]) -> list[int]:
    """Indices of the strict vertices of a 2-d point set, counter-clockwise."""
    order = sorted(range(len(pts)), key=lambda i: pts[i])

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and cross(pts[lower[-2]], pts[lower[-1]], pts[i]) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and cross(pts[upper[-2]], pts[upper[-1]], pts[i]) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def _brute_facets(local: list[tuple[int, ...]], d: int):
    """Facet hyperplanes of a full-dimensional point set in Z^d."""
    found: dict[tuple[tuple[int, ...], int], None] = {}
    npts = len(local)
    for combo in combinations(range(npts), d):
        p0 = local[combo[0]]
        diffs = [tuple(a - b for a, b in zip(local[c], p0)) for c in combo[1:]]
        normal = cofactor_normal(diffs)
        if not any(normal):
            continue
        normal = primitive(normal)
        level = dot(normal, p0)
        pos = neg = False
        for q in local:
            s = dot(normal, q) - level
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:
            normal = tuple(-x for x in normal)
            level = -level
        found[(normal, level)] = None
    return list(found)


@lru_cache(maxsize=4096)
def _hull(points: tuple[ExponentVector, ...]) -> _Hull:
    n = len(points[0])
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if diffs:
        frame, d = column_reduce(diffs, n)
    else:
        frame, d = [[int(i == j) for j in range(n)] for i in range(n)], 0
    frame_t = tuple(tuple(r) for r in frame)
    proto = _Hull(n, base, frame_t, d, points, (), ())
    local = [proto.to_local(p) for p in points]

    if d == 0:
        return _Hull(n, base, frame_t, 0, (base,), ((),), ())

    if d == 1:
        lo = min(range(len(points)), key=lambda i: local[i][0])
        hi = max(range(len(points)), key=lambda i: local[i][0])
        verts = sorted({lo, hi}, key=lambda i: points[i])
        vpts = [points[i] for i in verts]
        vloc = [local[i] for i in verts]
        facets = []
        for normal in ((1,), (-1,)):
            level = max(normal[0] * x[0] for x in vloc)
            idx = frozenset(k for k, x in enumerate(vloc) if normal[0] * x[0] == level)
            facets.append((normal, level, idx))
        return _Hull(n, base, frame_t, 1, tuple(vpts), tuple(vloc), tuple(facets))

    if d == 2:
        ring = _monotone_chain(local)
        candidates = sorted(ring, key=lambda i: points[i])
        planes = []
        for a, b in zip(ring, ring[1:] + ring[:1]):
            pa, pb = local[a], local[b]
            normal = primitive((pb[1] - pa[1], pa[0] - pb[0]))
            planes.append((normal, dot(normal, pa)))
    else:
        planes = _brute_facets(local, d)
        candidates = []
        for i, q in enumerate(local):
            on = [pl[0] for pl in planes if dot(pl[0], q) == pl[1]]
            if len(on) >= d and rank(on) == d:
                candidates.append(i)
        candidates.sort(key=lambda i: points[i])

    vpts = [points[i] for i in candidates]
    vloc = [local[i] for i in candidates]
    facets = []
    for normal, level in sorted(planes):
        idx = frozenset(k for k, x in enumerate(vloc) if dot(normal, x) == level)
        facets.append((normal, level, idx))
    return _Hull(n, base, frame_t, d, tuple(vpts), tuple(vloc), tuple(facets))


def _hull_of(P: LatticePolytope) -> _Hull:
    return _hull(P.vertices)


# --------------------------------------------------------------------------
# public operations


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Lattice polytope spanned by ``points``; keeps only the extreme points."""
    pts = _check_points(points)
    h = _hull(pts)
    return LatticePolytope(h.vertices, len(pts[0]))


def _same_dim(*polys: LatticePolytope) -> int:
    n = polys[0].dim_ambient
    if any(p.dim_ambient != n for p in polys):
        raise InputError("polytopes live in lattices of different rank")
    return n


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    _same_dim(P, Q)
    return convex_hull(
        tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices
    )


def minkowski_sum_all(polys: Sequence[LatticePolytope]) -> LatticePolytope:
    total = polys[0]
    for P in polys[1:]:
        total = minkowski_sum(total, P)
    return total


def support_value(P: LatticePolytope, v: Sequence[int]) -> int:
    """Support function: maximum of ``<v, x>`` over ``P``."""
    if len(v) != P.dim_ambient:
        raise InputError("covector dimension mismatch")
    return max(dot(v, p) for p in P.vertices)


def face(P: LatticePolytope, v: Sequence[int]) -> LatticePolytope:
    """Face of ``P`` where ``<v, .>`` is maximal; ``face(P, 0) == P``."""
    h = support_value(P, v)
    return LatticePolytope(tuple(p for p in P.vertices if dot(v, p) == h), P.dim_ambient)


def facet_normals(P: LatticePolytope) -> list[Covector]:
    """Primitive outward facet normals, sorted.

    For a lower-dimensional ``P`` the normals are those of ``P`` inside the
    lattice of its affine hull, lifted to ambient covectors (the lift is
    only defined modulo covectors vanishing on that hull).
    """
    h = _hull_of(P)
    return sorted(h.lift(normal) for normal, _, _ in h.facets)


def face_decomposition(polys: Sequence[LatticePolytope], v: Sequence[int]) -> FaceDecomposition:
    _same_dim(*polys)
    return FaceDecomposition(tuple(v), tuple(face(P, v) for P in polys))


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def _volume_local(points: tuple[tuple[int, ...], ...]) -> int:
    """Normalised volume ``d! vol`` of a full-dimensional point set in Z^d."""
    h = _hull(points)
    d = h.dim
    if d == 0:
        return 1
    if d == 1:
        return max(x[0] for x in h.local) - min(x[0] for x in h.local)
    if d == 2:
        ring = _monotone_chain(list(h.local))
        pts = [h.local[i] for i in ring]
        twice = 0
        for a, b in zip(pts, pts[1:] + pts[:1]):
            twice += a[0] * b[1] - a[1] * b[0]
        return abs(twice)
    # cone from the first vertex over the facets that miss it
    apex = h.local[0]
    total = 0
    for normal, level, idx in h.facets:
        if 0 in idx:
            continue
        height = level - dot(normal, apex)
        facet_pts = tuple(h.local[i] for i in sorted(idx))
        total += height * _volume_local(tuple(sorted(facet_pts)))
    return total


def lattice_volume(P: LatticePolytope) -> int:
    """``d! * vol(P)`` measured in the lattice of the affine hull (point -> 1)."""
    return _volume_local(tuple(sorted(_hull_of(P).local)))


def _full_volume(points: Sequence[Sequence[int]], k: int) -> int:
    pts = _check_points(points)
    h = _hull(pts)
    if h.dim < k:
        return 0
    return _volume_local(tuple(sorted(h.local)))


def mixed_volume(polys: Sequence[LatticePolytope], lattice_rank: int | None = None) -> int:
    """Normalised mixed volume, ``MV(P, ..., P) == lattice_volume(P)``.

    ``lattice_rank`` defaults to the number of polytopes.  The polytopes
    are translated to the origin and measured in the saturated lattice
    spanned by all of their edge directions; if that lattice has smaller
    rank than ``k`` the mixed volume vanishes.
    """
    k = len(polys) if lattice_rank is None else lattice_rank
    if k != len(polys):
        raise InputError(f"{len(polys)} polytopes given for a rank-{k} lattice")
    if k == 0:
        return 1
    n = _same_dim(*polys)
    shifted = [[tuple(a - b for a, b in zip(v, P.vertices[0])) for v in P.vertices] for P in polys]
    directions = [list(v) for pts in shifted for v in pts if any(v)]
    if not directions:
        return 0
    frame, r = column_reduce(directions, n)
    if r > k:
        raise InputError(f"polytopes span a rank-{r} lattice, expected rank {k}")
    if r < k:
        return 0
    local = [
        [tuple(sum(v[i] * frame[i][j] for i in range(n)) for j in range(k)) for v in pts]
        for pts in shifted
    ]
    total = 0
    for size in range(1, k + 1):
        for subset in combinations(range(k), size):
            acc = [tuple(0 for _ in range(k))]
            for i in subset:
                acc = _hull(_check_points(
                    tuple(a + b for a, b in zip(p, q)) for p in acc for q in local[i]
                )).vertices
            total += (-1) ** (k - size) * _full_volume(acc, k)
    value, rem = divmod(total, factorial(k))
    assert rem == 0, "mixed volume must be an integer"
    return value


# --------------------------------------------------------------------------
# face lattice and developedness


@dataclass(frozen=True)
class Face:
    """A face of a polytope together with a covector in its normal cone."""

    vertices: frozenset[ExponentVector]
    dim: int
    normal: Covector  # relative-interior representative, ambient coordinates
    facets: frozenset[int]  # indices into the hull's facet list


@lru_cache(maxsize=1024)
def _face_lattice(points: tuple[ExponentVector, ...]) -> tuple[Face, ...]:
    h = _hull(points)
    verts = h.vertices
    faces: dict[frozenset[int], frozenset[int]] = {}
    frontier = [idx for _, _, idx in h.facets]
    while frontier:
        nxt = []
        for s in frontier:
            if s in faces or not s:
                continue
            faces[s] = frozenset(fi for fi, (_, _, idx) in enumerate(h.facets) if s <= idx)
            nxt.extend(s & t for t in list(faces) if not (s <= t or t <= s))
        frontier = nxt
    out = []
    for s, containing in faces.items():
        u = [0] * h.dim
        for fi in containing:
            for j, x in enumerate(h.facets[fi][0]):
                u[j] += x
        normal = primitive(h.lift(u))
        pts = [verts[i] for i in sorted(s)]
        out.append(Face(frozenset(pts), affine_rank(pts), normal, containing))
    if h.dim < h.n:
        out.append(Face(frozenset(verts), h.dim, h.orthogonal(), frozenset()))
    out.sort(key=lambda f: (f.dim, tuple(-x for x in f.normal)))
    return tuple(out)


def proper_faces(P: LatticePolytope) -> tuple[Face, ...]:
    """Faces reachable by a nonzero covector, ordered by dimension.

    Includes ``P`` itself exactly when ``P`` is not full-dimensional.
    """
    return _face_lattice(P.vertices)


def is_developed(polys: Sequence[LatticePolytope]) -> DevelopednessCertificate:
    """Check that every face of the Minkowski sum has a vertex term."""
    n = _same_dim(*polys)
    if len(polys) != n:
        raise InputError(f"developedness needs {n} polytopes in Z^{n}, got {len(polys)}")
    total = minkowski_sum_all(polys)
    witnesses = []
    for F in proper_faces(total):
        terms = face_decomposition(polys, F.normal).vertex_terms()
        if not terms:
            return DevelopednessCertificate(False, F.normal)
        witnesses.append((F.normal, terms[0]))
    return DevelopednessCertificate(True, None, tuple(witnesses))


def is_i_developed(polys: Sequence[LatticePolytope], i: int) -> DevelopednessCertificate:
    """Developedness of the collection with the ``i``-th (1-based) polytope removed."""
    if not 1 <= i <= len(polys):
        raise InputError(f"index {i} out of range")
    return is_developed([P for j, P in enumerate(polys, 1) if j != i])


def is_completely_developed(
    polys: Sequence[LatticePolytope],
) -> tuple[bool, tuple[DevelopednessCertificate, ...]]:
    certs = tuple(is_i_developed(polys, i) for i in range(1, len(polys) + 1))
    return all(c.verdict for c in certs), certs


def developed_pivots(polys: Sequence[LatticePolytope]) -> list[int]:
    """All 1-based ``i`` for which the collection is ``i``-developed."""
    return [i for i in range(1, len(polys) + 1) if is_i_developed(polys, i).verdict]


def hyperplane_facets(P: LatticePolytope) -> list[Covector]:
    """Primitive covectors of the codimension-one faces of ``P`` in its ambient lattice.

    For full-dimensional ``P`` these are the facet normals.  When ``P`` has
    codimension one the two primitive normals of its hyperplane are
    returned; anything of smaller dimension has none.
    """
    h = _hull_of(P)
    if h.dim == h.n:
        return facet_normals(P)
    if h.dim == h.n - 1:
        v = h.orthogonal()
        return sorted([v, tuple(-x for x in v)])
    return []


def barycenter(points: Iterable[Sequence[int]]) -> tuple[Fraction, ...]:
    pts = list(points)
    return tuple(Fraction(sum(c), len(pts)) for c in zip(*pts))
