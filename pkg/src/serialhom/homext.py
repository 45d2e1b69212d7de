"""Hom and Ext between uniserial modules via minimal projective resolutions.

A map ``P_v -> P_u`` is right multiplication by a path from ``u`` to ``v``, so
``Hom(P_v, N)`` is ``e_v N``: the positions ``q`` of ``N = L(j, l)`` with
``sigma^q(j) = v``.  Precomposing with the length-``s`` path of the
resolution moves position ``q`` to ``q + s`` (or kills it).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from . import linalg as la
from .algebra import SerialAlgebra, Uniserial, syzygy_orbit


@dataclass(frozen=True)
class MinimalResolution:
    """``P_{v_t} -> P_{v_{t-1}}`` is right multiplication by the path of
    length ``diff_lengths[t]`` (index 0 is unused and set to 0)."""

    algebra: SerialAlgebra
    module: Uniserial
    terms: tuple[int, ...]
    diff_lengths: tuple[int, ...]
    preperiod: int
    period: int | None

    @property
    def pd(self) -> float:
        return float("inf") if self.period is not None else len(self.terms) - 1

    def vertex(self, t: int) -> int | None:
        if t < len(self.terms):
            return self.terms[t]
        if self.period is None:
            return None
        mu, rho = self.preperiod, self.period
        return self.terms[mu + (t - mu) % rho]

    def length(self, t: int) -> int | None:
        """Length of the path giving ``d_t`` (``t >= 1``)."""
        if t < len(self.diff_lengths):
            return self.diff_lengths[t]
        if self.period is None:
            return None
        # d_t has image Omega^t M, so it follows the orbit index t - 1
        mu, rho = self.preperiod, self.period
        return self.diff_lengths[1 + mu + (t - 1 - mu) % rho]


@lru_cache(maxsize=None)
def minimal_resolution(A: SerialAlgebra, M: Uniserial) -> MinimalResolution:
    orb = syzygy_orbit(A, M)
    terms = tuple(u.top for u in orb.modules)
    # d_t has image Omega^t M = J^len(Omega^(t-1) M) P_{v_(t-1)}
    mods = orb.modules if orb.period is not None else orb.modules[:-1]
    lengths = (0,) + tuple(u.len for u in mods)
    return MinimalResolution(A, M, terms, lengths, orb.preperiod, orb.period)


def hom_dim(A: SerialAlgebra, U: Uniserial, V: Uniserial) -> int:
    """``dim Hom(L(i,k), L(j,l)) = #{t : max(0, l-k) <= t <= l-1, sigma^t(j) = i}``."""
    A.check(U)
    A.check(V)
    count = 0
    w = V.top
    for t in range(V.len):
        if t >= max(0, V.len - U.len) and w == U.top:
            count += 1
        if t + 1 < V.len:
            w = A.sigma(w)
    return count


def _positions(A: SerialAlgebra, N: Uniserial, v: int) -> list[int]:
    return [q for q in A.path_lengths(N.top, v) if q < N.len]


def _cochain_matrix(A: SerialAlgebra, N: Uniserial, src: list[int], dst: list[int], shift: int) -> la.Matrix:
    index = {q: r for r, q in enumerate(dst)}
    m = la.zeros(len(dst), len(src))
    for c, q in enumerate(src):
        r = index.get(q + shift)
        if r is not None:
            m[r][c] = 1
    return m


def ext_dim(A: SerialAlgebra, M: Uniserial, N: Uniserial, s: int) -> int:
    """Dimension of ``Ext^s(M, N)`` as cohomology of ``Hom(P_*, N)``."""
    if s < 0:
        raise ValueError("degree must be nonnegative")
    A.check(N)
    if s == 0:
        return hom_dim(A, M, N)
    res = minimal_resolution(A, M)
    v = res.vertex(s)
    if v is None:
        return 0
    here = _positions(A, N, v)
    if not here:
        return 0
    prev = _positions(A, N, res.vertex(s - 1))
    into = _cochain_matrix(A, N, prev, here, res.length(s))
    nxt_v = res.vertex(s + 1)
    if nxt_v is None:
        kernel = len(here)
    else:
        out = _cochain_matrix(A, N, here, _positions(A, N, nxt_v), res.length(s + 1))
        kernel = len(here) - la.rank(out, len(here))
    return kernel - la.rank(into, len(prev))


def ext_window(A: SerialAlgebra, M: Uniserial) -> int:
    """Last degree that has to be inspected: beyond it Ext repeats with the
    resolution period (or vanishes when pd is finite)."""
    res = minimal_resolution(A, M)
    if res.period is None:
        return len(res.terms)
    return res.preperiod + 2 + res.period


def ext_eventually_vanishes(A: SerialAlgebra, M: Uniserial, N: Uniserial, start: int) -> bool:
    """Whether ``Ext^s(M, N) = 0`` for every ``s >= start``."""
    if start < 1:
        raise ValueError("start degree must be at least 1")
    top = max(start, ext_window(A, M))
    return all(ext_dim(A, M, N, s) == 0 for s in range(start, top + 1))


def infinite_qpd_witness(A: SerialAlgebra, M: Uniserial) -> bool:
    """pd(M) = inf together with ``Ext^{>=2}(M, M) = 0`` forces qpd(M) = inf."""
    return syzygy_orbit(A, M).period is not None and ext_eventually_vanishes(A, M, M, 2)


@dataclass(frozen=True)
class ExtTable:
    M: Uniserial
    N: Uniserial
    ext: tuple[int, ...]
    valid_through: int
    tail: str

    def to_json(self) -> dict:
        return {"M": str(self.M), "N": str(self.N), "ext": list(self.ext), "tail": self.tail}


def ext_table(A: SerialAlgebra, M: Uniserial, N: Uniserial) -> ExtTable:
    """Ext dimensions through the window plus a certified description of the tail."""
    res = minimal_resolution(A, M)
    top = ext_window(A, M)
    ext = tuple(ext_dim(A, M, N, s) for s in range(top + 1))
    if res.period is None or all(e == 0 for e in ext[res.preperiod + 2 :]):
        start = len(ext)
        while start > 0 and ext[start - 1] == 0:
            start -= 1
        tail = f"zero@{start}"
    else:
        tail = f"periodic({res.period})@{res.preperiod + 2}"
    return ExtTable(M, N, ext, top, tail)


def ext_tables_json(tables: list[ExtTable]) -> str:
    return json.dumps({"pairs": [t.to_json() for t in tables]}, indent=2)
