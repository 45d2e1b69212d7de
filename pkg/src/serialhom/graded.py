"""Explicit representations of modules over a serial algebra.

A module is a vector space at every vertex together with one matrix per
arrow ``v -> sigma(v)``.  This is the concrete side used by homology
computations and by the brute-force oracles in the test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .algebra import ModuleSum, SerialAlgebra, Uniserial


class NotSerialDecomposable(ValueError):
    """The module is not a direct sum of uniserials (non-Nakayama algebras)."""


@dataclass
class GradedModule:
    algebra: SerialAlgebra
    dims: dict[int, int]
    # act[v] has shape dims[sigma v] x dims[v]; present for vertices with an arrow
    act: dict[int, la.Matrix]

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def arrow(self, v: int, x: la.Vector) -> la.Vector:
        if v not in self.act:
            return []
        return la.matvec(self.act[v], x)

    def push(self, v: int, t: int, x: la.Vector) -> tuple[int, la.Vector]:
        """Apply the length-``t`` path from ``v`` to ``x``; returns (vertex, vector)."""
        w = v
        for _ in range(t):
            if w not in self.act:
                return w, []
            x = la.matvec(self.act[w], x)
            w = self.algebra.sigma(w)
        return w, x


def _empty(A: SerialAlgebra) -> GradedModule:
    return GradedModule(A, {v: 0 for v in A.vertices}, {})


def realize(A: SerialAlgebra, M: ModuleSum | Uniserial) -> tuple[GradedModule, list[tuple[int, la.Vector]]]:
    """Representation of ``M`` with the path-position basis of each summand.

    Also returns the top generator ``(vertex, vector)`` of each summand.
    """
    summands = [M] if isinstance(M, Uniserial) else list(M)
    dims = {v: 0 for v in A.vertices}
    slots: list[list[tuple[int, int]]] = []
    for u in summands:
        A.check(u)
        row = []
        w = u.top
        for p in range(u.len):
            row.append((w, dims[w]))
            dims[w] += 1
            if p + 1 < u.len:
                w = A.sigma(w)
        slots.append(row)
    act = {}
    for v in A.vertices:
        if A.c(v) >= 2:
            act[v] = la.zeros(dims[A.sigma(v)], dims[v])
    for row in slots:
        for (w, i), (w2, j) in zip(row, row[1:]):
            act[w][j][i] = Fraction(1)
    gens = [(row[0][0], la.unit(dims[row[0][0]], row[0][1])) for row in slots]
    return GradedModule(A, dims, act), gens


def direct_sum(parts: list[GradedModule]) -> GradedModule:
    A = parts[0].algebra
    dims = {v: sum(p.dims[v] for p in parts) for v in A.vertices}
    act = {}
    for v in A.vertices:
        if A.c(v) < 2:
            continue
        w = A.sigma(v)
        m = la.zeros(dims[w], dims[v])
        ro = co = 0
        for p in parts:
            if v in p.act:
                for i, row in enumerate(p.act[v]):
                    for j, x in enumerate(row):
                        m[ro + i][co + j] = x
            ro += p.dims[w]
            co += p.dims[v]
        act[v] = m
    return GradedModule(A, dims, act)


@dataclass
class _Quotient:
    module: GradedModule
    sub: dict[int, list[la.Vector]]
    comp: dict[int, list[la.Vector]]

    def coords(self, v: int, x: la.Vector) -> la.Vector:
        sol = la.coordinates(self.sub[v] + self.comp[v], x, len(x))
        assert sol is not None
        return sol[len(self.sub[v]):]

    def lift(self, v: int, q: la.Vector) -> la.Vector:
        out = [Fraction(0)] * (len(self.comp[v][0]) if self.comp[v] else 0)
        for c, vec in zip(q, self.comp[v]):
            if c:
                out = [a + c * b for a, b in zip(out, vec)]
        return out


def quotient(M: GradedModule, sub: dict[int, list[la.Vector]]) -> _Quotient:
    """``M / U`` where ``U`` is a submodule given by a basis at each vertex."""
    A = M.algebra
    comp = {}
    sub_basis = {}
    for v in A.vertices:
        base = la.span_basis(sub.get(v, []), M.dims[v]) if sub.get(v) else []
        sub_basis[v] = base
        pool = [la.unit(M.dims[v], j) for j in range(M.dims[v])]
        comp[v] = la.extend_basis(base, pool, M.dims[v])
    q = _Quotient(GradedModule(A, {v: len(comp[v]) for v in A.vertices}, {}), sub_basis, comp)
    for v in A.vertices:
        if v not in M.act:
            continue
        w = A.sigma(v)
        cols = [q.coords(w, M.arrow(v, c)) for c in comp[v]]
        q.module.act[v] = la.columns(cols) if cols else la.zeros(len(comp[w]), 0)
    return q


def _longest_element(M: GradedModule) -> tuple[int, int, int] | None:
    """(vertex, height, basis index) of an element ``x`` maximising the largest
    ``t`` with ``a^t x != 0``; deterministic tie-break by vertex then index."""
    best = None
    total = sum(M.dims.values())
    for v in M.algebra.vertices:
        if not M.dims[v]:
            continue
        t = 0
        cur = la.columns([la.unit(M.dims[v], j) for j in range(M.dims[v])])
        w = v
        col = 0
        while True:
            nz = [j for j in range(M.dims[v]) if any(row[j] for row in cur)]
            if not nz:
                break
            h, col = t, nz[0]
            if w not in M.act:
                break
            if t >= total:
                raise ValueError("arrow action is not nilpotent")
            cur = la.matmul(M.act[w], cur, M.dims[w], M.dims[v])
            w = M.algebra.sigma(w)
            t += 1
        if best is None or h > best[1]:
            best = (v, h, col)
    return best


def decompose(M: GradedModule) -> list[tuple[Uniserial, la.Vector]]:
    """Split ``M`` into uniserial summands ``A x``.

    Repeatedly picks an element of maximal length, splits off the submodule
    it generates, decomposes the quotient, and lifts the quotient's
    generators into a complement.  Returns ``(L(v,k), x)`` with ``x`` in
    ``M_v``.  Raises NotSerialDecomposable when a lift cannot be corrected,
    which happens exactly when ``M`` has a non-uniserial summand.
    """
    A = M.algebra
    pick = _longest_element(M)
    if pick is None:
        return []
    v, t, j = pick
    x = la.unit(M.dims[v], j)
    chain = [(v, x)]
    for _ in range(t):
        w, y = chain[-1]
        chain.append((A.sigma(w), M.arrow(w, y)))
    sub: dict[int, list[la.Vector]] = {}
    for w, y in chain:
        sub.setdefault(w, []).append(y)
    q = quotient(M, sub)
    out = [(Uniserial(v, t + 1), x)]
    for u, yq in decompose(q.module):
        y = q.lift(u.top, yq)
        end, z = M.push(u.top, u.len, y)
        # u-corrections live in U at vertex u.top: a^p x with sigma^p(v) = u.top
        ps = [p for p, (w, _) in enumerate(chain) if w == u.top]
        if z and any(z):
            images = []
            for p in ps:
                q_end = p + u.len
                images.append(chain[q_end][1] if q_end <= t else [Fraction(0)] * len(z))
            coef = la.solve(la.columns(images), z, len(images)) if images else None
            if coef is None:
                raise NotSerialDecomposable(f"no uniserial complement for {u}")
            for c, p in zip(coef, ps):
                if c:
                    y = [a - c * b for a, b in zip(y, chain[p][1])]
        out.append((u, y))
    return out


def summands(M: GradedModule) -> ModuleSum:
    return ModuleSum(u for u, _ in decompose(M))
