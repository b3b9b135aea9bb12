"""Small exact linear-algebra kernels over Z, Q and F_2.

Matrices are plain lists of rows.  Everything here is exact; nothing
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Sequence

IntVector = tuple[int, ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def frac_det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pk = m[k][k]
        det *= pk
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            factor = m[i][k] / pk
            row_k = m[k]
            row_i = m[i]
            for j in range(k, n):
                row_i[j] -= factor * row_k[j]
    return det


def leibniz_det(rows, zero, one):
    """Determinant over an arbitrary commutative ring (small sizes only)."""
    n = len(rows)
    total = zero
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = one
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total - term if inversions % 2 else total + term
    return total


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square rational system; ``None`` if it is singular."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return None
        m[k], m[piv] = m[piv], m[k]
        pk = m[k][k]
        m[k] = [x / pk for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                factor = m[i][k]
                m[i] = [a - factor * b for a, b in zip(m[i], m[k])]
    return [m[i][n] for i in range(n)]


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def column_reduce(rows: Sequence[Sequence[int]], n: int) -> tuple[list[list[int]], int]:
    """Find a unimodular ``W`` with ``rows @ W`` zero outside its first ``r`` columns.

    Returns ``(W, r)`` where ``r`` is the rank of ``rows``.  The first ``r``
    columns of ``W`` then form a basis of the saturation of the lattice
    spanned by ``rows`` in the dual coordinates: a point ``p`` of the row
    lattice has integer coordinates ``(p @ W)[:r]`` and ``(p @ W)[r:] == 0``.
    """
    m = [list(r) for r in rows]
    w = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst: int, src: int, factor: int) -> None:
        # column dst -= factor * column src
        for row in m:
            row[dst] -= factor * row[src]
        for row in w:
            row[dst] -= factor * row[src]

    def swap(a: int, b: int) -> None:
        for row in m:
            row[a], row[b] = row[b], row[a]
        for row in w:
            row[a], row[b] = row[b], row[a]

    c = 0
    for row in m:
        if c == n:
            break
        # Euclid across columns c..n-1 on this row
        while True:
            nz = [j for j in range(c, n) if row[j] != 0]
            if len(nz) <= 1:
                break
            j_min = min(nz, key=lambda j: abs(row[j]))
            for j in nz:
                if j != j_min:
                    colop(j, j_min, row[j] // row[j_min])
        nz = [j for j in range(c, n) if row[j] != 0]
        if nz:
            if nz[0] != c:
                swap(nz[0], c)
            c += 1
    return w, c


def gf2_rank_and_kernel(columns: Sequence[Sequence[int]]) -> tuple[int, list[tuple[int, ...]]]:
    """Rank and a kernel basis of the F_2 matrix whose columns are given."""
    k = len(columns)
    n = len(columns[0]) if columns else 0
    # rows of the matrix as bit lists, augmented with identity to track combos
    col_bits = [[c[i] & 1 for i in range(n)] for c in columns]
    # eliminate on columns as vectors: Gaussian elimination over vectors
    vecs = [(list(col_bits[j]), [int(i == j) for i in range(k)]) for j in range(k)]
    pivots: list[tuple[int, list[int], list[int]]] = []
    kernel: list[tuple[int, ...]] = []
    for vec, combo in vecs:
        vec = vec[:]
        combo = combo[:]
        for p, pv, pc in pivots:
            if vec[p]:
                vec = [a ^ b for a, b in zip(vec, pv)]
                combo = [a ^ b for a, b in zip(combo, pc)]
        lead = next((i for i, x in enumerate(vec) if x), None)
        if lead is None:
            kernel.append(tuple(combo))
        else:
            pivots.append((lead, vec, combo))
    return len(pivots), kernel


def gf2_det(columns: Sequence[Sequence[int]]) -> int:
    r, _ = gf2_rank_and_kernel(columns)
    return int(r == len(columns))


def cofactor_normal(vectors: Sequence[Sequence[int]]) -> IntVector:
    """Integer vector orthogonal to ``d-1`` vectors in Z^d (generalised cross product)."""
    d = len(vectors) + 1
    out = []
    for i in range(d):
        minor = [[v[j] for j in range(d) if j != i] for v in vectors]
        out.append((-1) ** i * int_det(minor))
    return tuple(out)
