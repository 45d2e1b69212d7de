"""Exact linear algebra over the rationals.

Matrices are lists of rows; vectors are lists.  Entries may be ``int`` or
``Fraction``.  Nothing here knows about modules: this is the rank/kernel
kernel that every homology and Ext computation in the package sits on.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def _integer_rows(m: Sequence[Sequence]) -> list[list[int]]:
    # scaling a row by a nonzero constant leaves the rank unchanged
    out = []
    for row in m:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    if not m:
        return 0
    a = _integer_rows(m)
    rows = len(a)
    cols = len(a[0]) if ncols is None else ncols
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[c]
            if f == 0:
                if p != prev:
                    for j in range(c + 1, cols):
                        ai[j] = ai[j] * p // prev
                continue
            ar = a[r]
            for j in range(c + 1, cols):
                ai[j] = (ai[j] * p - f * ar[j]) // prev
            ai[c] = 0
        prev = p
        r += 1
        if r == rows:
            break
    return r


def rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = (len(a[0]) if a else 0) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        ar = a[r]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], ar)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace(m: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{x : m x = 0}``; ``ncols`` is needed when ``m`` has no rows."""
    if ncols == 0:
        return []
    if not m:
        return [unit(ncols, j) for j in range(ncols)]
    red, pivots = rref(m, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence, ncols: int) -> Vector | None:
    """One solution of ``a x = b`` (free variables set to zero), or None."""
    if not a:
        return [Fraction(0)] * ncols if all(x == 0 for x in b) else None
    aug = [list(row) + [y] for row, y in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def unit(n: int, j: int) -> Vector:
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


def columns(vectors: Sequence[Sequence]) -> Matrix:
    """Matrix whose columns are the given vectors (vectors share a length)."""
    if not vectors:
        return []
    return [list(row) for row in zip(*vectors)]


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in m]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int, cols: int) -> Matrix:
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        oi = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def span_basis(vectors: Sequence[Sequence], dim: int) -> list[Vector]:
    """A basis (as rows of an echelon form) of the span of ``vectors``."""
    if not vectors:
        return []
    red, _ = rref(vectors, dim)
    return red


def extend_basis(base: Sequence[Sequence], pool: Sequence[Sequence], dim: int) -> list[Vector]:
    """Vectors from ``pool`` that extend ``base`` to a basis of ``span(base + pool)``.

    ``base`` is assumed linearly independent.
    """
    chosen: list[Vector] = []
    current = [list(v) for v in base]
    r = len(current)
    for v in pool:
        trial = current + [list(v)]
        if rank(trial, dim) > r:
            current = trial
            chosen.append([Fraction(x) for x in v])
            r += 1
    return chosen


def coordinates(basis: Sequence[Sequence], v: Sequence, dim: int) -> Vector | None:
    """Coefficients expressing ``v`` in ``basis`` (independent vectors), or None."""
    if not basis:
        return [] if all(x == 0 for x in v) else None
    return solve(columns(basis), v, len(basis))
