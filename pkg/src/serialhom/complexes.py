"""Bounded complexes of projectives and the certificates built from them.

A complex has, in each degree ``d``, a tuple of vertices (the tops of its
projective summands) and a differential ``C_d -> C_{d-1}``.  The entry at
``(row r, col c)`` is a linear combination of paths from the vertex of the
``r``-th summand of ``C_{d-1}`` to the vertex of the ``c``-th summand of
``C_d``, stored as ``{path length: coefficient}``; it acts by right
multiplication.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .algebra import (
    AlgebraError,
    ModuleSum,
    SerialAlgebra,
    Uniserial,
    algebra_from_spec,
    is_injective_projective,
    syzygy,
    syzygy_orbit,
)
from .graded import GradedModule, NotSerialDecomposable, decompose
from .homext import minimal_resolution

Entry = dict[int, Fraction]
PathMatrix = dict[tuple[int, int], Entry]


class InvalidComplex(ValueError):
    """Entries that are not nonzero paths, or differentials with d∘d != 0."""


class NotQuasiResolution(ValueError):
    def __init__(self, degree: int | None, reason: str):
        where = "" if degree is None else f" at degree {degree}"
        super().__init__(f"not a quasi-projective resolution{where}: {reason}")
        self.degree = degree
        self.reason = reason


class CertificateFormatError(ValueError):
    """Malformed certificate document (schema problems, not math problems)."""


class NoLadder(ValueError):
    pass


def _clean(m: PathMatrix) -> PathMatrix:
    out = {}
    for key, entry in m.items():
        e = {int(t): Fraction(x) for t, x in entry.items() if x != 0}
        if e:
            out[key] = e
    return out


def compose(A: SerialAlgebra, rows: tuple[int, ...], f: PathMatrix, g: PathMatrix) -> PathMatrix:
    """Matrix of ``f ∘ g`` where ``g: X -> Y`` and ``f: Y -> Z``; ``rows`` are
    the vertices of ``Z``.  Lengths add; paths reaching the Loewy length of
    their source vanish."""
    by_mid: dict[int, list[tuple[int, Entry]]] = {}
    for (s, r), e in f.items():
        by_mid.setdefault(r, []).append((s, e))
    out: PathMatrix = {}
    for (r, c), e1 in g.items():
        for s, e2 in by_mid.get(r, ()):
            limit = A.c(rows[s])
            tgt = out.setdefault((s, c), {})
            for l1, x in e1.items():
                for l2, y in e2.items():
                    if l1 + l2 < limit:
                        tgt[l1 + l2] = tgt.get(l1 + l2, Fraction(0)) + x * y
    return _clean(out)


@dataclass(frozen=True)
class ProjComplex:
    algebra: SerialAlgebra
    terms: dict[int, tuple[int, ...]]
    diffs: dict[int, PathMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        terms = {int(d): tuple(v) for d, v in self.terms.items() if v}
        diffs = {}
        for d, m in self.diffs.items():
            m = _clean(m)
            if m:
                diffs[int(d)] = m
        object.__setattr__(self, "terms", dict(sorted(terms.items())))
        object.__setattr__(self, "diffs", dict(sorted(diffs.items())))

    def term(self, d: int) -> tuple[int, ...]:
        return self.terms.get(d, ())

    def diff(self, d: int) -> PathMatrix:
        return self.diffs.get(d, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def sup(self) -> int:
        return max(self.terms)

    @property
    def inf(self) -> int:
        return min(self.terms)

    @property
    def degrees(self) -> tuple[int, int]:
        return (self.inf, self.sup)

    @property
    def total_dim(self) -> int:
        return sum(self.algebra.c(v) for vs in self.terms.values() for v in vs)

    def shift(self, k: int) -> "ProjComplex":
        """``C[k]`` with ``C[k]_i = C_{i-k}``; differentials keep their sign."""
        return ProjComplex(
            self.algebra,
            {d + k: v for d, v in self.terms.items()},
            {d + k: m for d, m in self.diffs.items()},
        )

    def validate(self) -> None:
        A = self.algebra
        for d, vs in self.terms.items():
            for v in vs:
                if not 1 <= v <= A.n:
                    raise InvalidComplex(f"degree {d}: vertex {v} out of range")
        for d, m in self.diffs.items():
            src, dst = self.term(d), self.term(d - 1)
            for (r, c), e in m.items():
                if not (0 <= r < len(dst) and 0 <= c < len(src)):
                    raise InvalidComplex(f"degree {d}: entry ({r},{c}) outside the matrix")
                for t in e:
                    if t < 0 or t >= A.c(dst[r]):
                        raise InvalidComplex(f"degree {d}: entry ({r},{c}) length {t} is a zero path")
                    if A.sigma(dst[r], t) != src[c]:
                        raise InvalidComplex(
                            f"degree {d}: entry ({r},{c}) length {t} does not run from {dst[r]} to {src[c]}"
                        )
        for d in self.diffs:
            if d - 1 in self.diffs and compose(A, self.term(d - 2), self.diffs[d - 1], self.diffs[d]):
                raise InvalidComplex(f"d_{d - 1} ∘ d_{d} != 0")


@dataclass(frozen=True)
class ChainMap:
    """``g_d: source_d -> target_{d - shift}``."""

    source: ProjComplex
    target: ProjComplex
    shift: int
    components: dict[int, PathMatrix]

    def validate(self) -> None:
        A = self.source.algebra
        for d, g in self.components.items():
            left = compose(A, self.target.term(d - self.shift - 1), self.target.diff(d - self.shift), g)
            right = compose(
                A, self.target.term(d - self.shift - 1), self.components.get(d - 1, {}), self.source.diff(d)
            )
            if _difference(left, right):
                raise InvalidComplex(f"chain map square at degree {d} does not commute")


def _difference(f: PathMatrix, g: PathMatrix) -> PathMatrix:
    out: PathMatrix = {k: dict(e) for k, e in f.items()}
    for k, e in g.items():
        cell = out.setdefault(k, {})
        for t, x in e.items():
            cell[t] = cell.get(t, Fraction(0)) - x
    return _clean(out)


# --- explicit vector-space realisation ---------------------------------------------


class _TermBasis:
    """Path basis of ``⊕_c P_{v_c}``, split by vertex."""

    def __init__(self, A: SerialAlgebra, verts: tuple[int, ...]):
        self.verts = verts
        self.at: dict[int, list[tuple[int, int]]] = {w: [] for w in A.vertices}
        self.index: dict[tuple[int, int], int] = {}
        for c, v in enumerate(verts):
            w = v
            for p in range(A.c(v)):
                self.index[(c, p)] = len(self.at[w])
                self.at[w].append((c, p))
                if p + 1 < A.c(v):
                    w = A.sigma(w)


class _Realization:
    def __init__(self, C: ProjComplex):
        self.C = C
        self.A = C.algebra
        self.bases = {d: _TermBasis(self.A, v) for d, v in C.terms.items()}
        self._blocks: dict[tuple[int, int], la.Matrix] = {}

    def basis(self, d: int) -> _TermBasis:
        if d not in self.bases:
            self.bases[d] = _TermBasis(self.A, ())
        return self.bases[d]

    def block(self, d: int, w: int) -> la.Matrix:
        """Matrix of ``d_d`` restricted to vertex ``w``."""
        key = (d, w)
        if key in self._blocks:
            return self._blocks[key]
        src, dst = self.basis(d), self.basis(d - 1)
        cols = src.at[w]
        m = la.zeros(len(dst.at[w]), len(cols))
        by_col: dict[int, list[tuple[int, Entry]]] = {}
        for (r, c), e in self.C.diff(d).items():
            by_col.setdefault(c, []).append((r, e))
        for j, (c, p) in enumerate(cols):
            for r, e in by_col.get(c, ()):
                for t, x in e.items():
                    q = t + p
                    if q < self.A.c(dst.verts[r]):
                        m[dst.index[(r, q)]][j] += x
        self._blocks[key] = m
        return m

    def arrow(self, d: int, w: int) -> la.Matrix:
        """Arrow action ``(C_d)_w -> (C_d)_{sigma w}`` on the path basis."""
        b = self.basis(d)
        nxt = self.A.sigma(w)
        m = la.zeros(len(b.at[nxt]), len(b.at[w]))
        for j, (c, p) in enumerate(b.at[w]):
            if p + 1 < self.A.c(b.verts[c]):
                m[b.index[(c, p + 1)]][j] = Fraction(1)
        return m


@dataclass
class DegreeHomology:
    degree: int
    module: GradedModule
    boundaries: dict[int, list[la.Vector]]
    reps: dict[int, list[la.Vector]]


def _degree_homology(R: _Realization, d: int) -> DegreeHomology:
    A = R.A
    dims, reps, bnds = {}, {}, {}
    for w in A.vertices:
        n = len(R.basis(d).at[w])
        if n == 0:
            dims[w], reps[w], bnds[w] = 0, [], []
            continue
        z = la.nullspace(R.block(d, w), n) if R.basis(d - 1).at[w] else [la.unit(n, j) for j in range(n)]
        into = R.block(d + 1, w)
        image = [list(col) for col in zip(*into)] if into and into[0] else []
        b = la.span_basis(image, n) if image else []
        h = la.extend_basis(b, z, n)
        dims[w], reps[w], bnds[w] = len(h), h, b
    act = {}
    for w in A.vertices:
        if A.c(w) < 2:
            continue
        nxt = A.sigma(w)
        if not dims[w]:
            act[w] = la.zeros(dims[nxt], 0)
            continue
        arrow = R.arrow(d, w)
        cols = []
        for r in reps[w]:
            y = la.matvec(arrow, r)
            coef = la.coordinates(bnds[nxt] + reps[nxt], y, len(y))
            if coef is None:
                raise InvalidComplex(f"degree {d}: cycles are not closed under the arrow action")
            cols.append(coef[len(bnds[nxt]):])
        act[w] = la.columns(cols)
    return DegreeHomology(d, GradedModule(A, dims, act), bnds, reps)


@dataclass
class HomologyReport:
    modules: dict[int, ModuleSum]
    hsup: int | None
    hinf: int | None
    multiplicities: dict[int, int] | None = None

    @property
    def nonzero(self) -> dict[int, ModuleSum]:
        return {d: m for d, m in self.modules.items() if m}


def homology_modules(C: ProjComplex) -> dict[int, DegreeHomology]:
    C.validate()
    R = _Realization(C)
    return {d: _degree_homology(R, d) for d in C.terms}


def homology_decompose(C: ProjComplex, target: ModuleSum | None = None) -> HomologyReport:
    """Homology of ``C`` in every degree, split into uniserials.

    Raises NotSerialDecomposable if some homology module has a summand that
    is not uniserial (possible only over non-Nakayama algebras).
    """
    degs = homology_modules(C)
    mods = {d: ModuleSum(u for u, _ in decompose(h.module)) for d, h in degs.items()}
    nz = [d for d, m in mods.items() if m]
    euler_terms = sum((-1) ** d * C.algebra.c(v) for d, vs in C.terms.items() for v in vs)
    euler_h = sum((-1) ** d * m.dim for d, m in mods.items())
    assert euler_terms == euler_h, "Euler characteristic mismatch"
    mult = None
    if target:
        mult = {}
        tc = target.counts()
        for d, m in mods.items():
            k = _power_of(m, tc)
            if k is None:
                mult = None
                break
            mult[d] = k
    return HomologyReport(mods, max(nz) if nz else None, min(nz) if nz else None, mult)


def _power_of(m: ModuleSum, base) -> int | None:
    if not m:
        return 0
    counts = m.counts()
    if set(counts) != set(base):
        return None
    ratios = {counts[u] // base[u] for u in base if counts[u] % base[u] == 0}
    if len(ratios) != 1 or any(counts[u] % base[u] for u in base):
        return None
    return ratios.pop()


@dataclass(frozen=True)
class QuasiResolution:
    multiplicities: dict[int, int]
    score: int
    hsup: int
    hinf: int


def check_quasi_resolution(C: ProjComplex, M: ModuleSum | Uniserial) -> QuasiResolution:
    """Verify that every nonzero homology of ``C`` is a power of ``M``."""
    if isinstance(M, Uniserial):
        M = ModuleSum.of(M)
    if not M:
        raise ValueError("target module must be nonzero")
    for u in M:
        C.algebra.check(u)
    if C.is_zero:
        raise NotQuasiResolution(None, "zero complex")
    degs = homology_modules(C)
    base = M.counts()
    mult = {}
    for d in sorted(degs):
        try:
            found = ModuleSum(u for u, _ in decompose(degs[d].module))
        except NotSerialDecomposable:
            raise NotQuasiResolution(d, "homology has a non-uniserial summand") from None
        k = _power_of(found, base)
        if k is None:
            raise NotQuasiResolution(d, f"homology {found} is not a power of {M}")
        if k:
            mult[d] = k
    if not mult:
        raise NotQuasiResolution(None, "all homology vanishes")
    hsup, hinf = max(mult), min(mult)
    return QuasiResolution(mult, C.sup - hsup, hsup, hinf)


# --- constructions -------------------------------------------------------------------


def resolution_complex(A: SerialAlgebra, M: Uniserial, top: int) -> ProjComplex:
    """The minimal (deleted) resolution of ``M`` in degrees ``0..top``."""
    res = minimal_resolution(A, M)
    terms, diffs = {}, {}
    for t in range(top + 1):
        v = res.vertex(t)
        if v is None:
            break
        terms[t] = (v,)
        if t >= 1:
            diffs[t] = {(0, 0): {res.length(t): Fraction(1)}}
    return ProjComplex(A, terms, diffs)


def deleted_resolution(A: SerialAlgebra, M: Uniserial) -> ProjComplex:
    """The full minimal resolution; only for finite projective dimension."""
    res = minimal_resolution(A, M)
    if res.period is not None:
        raise ValueError(f"{M} has infinite projective dimension")
    return resolution_complex(A, M, len(res.terms) - 1)


def periodic_certificate(A: SerialAlgebra, M: Uniserial, r: int) -> ProjComplex:
    """Truncated minimal resolution in degrees ``0..r-1``; homology ``M`` at
    ``0`` and at ``r-1``.  For ``r = 1`` the single-term truncation only has
    homology ``P_top``, so the doubled period is used instead."""
    orb = syzygy_orbit(A, M)
    if orb.period is None or orb.preperiod != 0 or r < 1 or r % orb.period:
        raise ValueError(f"{M} is not periodic with period {r}")
    if r == 1:
        single = resolution_complex(A, M, 0)
        try:
            check_quasi_resolution(single, M)
            return single
        except NotQuasiResolution:
            r = 2
    return resolution_complex(A, M, r - 1)


def mapping_cone(X: ProjComplex, Y: ProjComplex, f: dict[int, PathMatrix]) -> ProjComplex:
    """Cone of a degree-preserving chain map ``f: X -> Y``.

    ``Cone_i = Y_i ⊕ X_{i-1}`` with differential ``[[d_Y, f], [0, -d_X]]``.
    """
    A = X.algebra
    degs = set(Y.terms) | {d + 1 for d in X.terms}
    terms = {i: Y.term(i) + X.term(i - 1) for i in degs}
    diffs = {}
    for i in degs | {d + 1 for d in degs}:
        ny_prev = len(Y.term(i - 1))
        ny = len(Y.term(i))
        m: PathMatrix = {}
        for (r, c), e in Y.diff(i).items():
            m[(r, c)] = dict(e)
        for (r, c), e in f.get(i - 1, {}).items():
            m[(r, ny + c)] = dict(e)
        for (r, c), e in X.diff(i - 1).items():
            m[(ny_prev + r, ny + c)] = {t: -x for t, x in e.items()}
        if m:
            diffs[i] = m
    return ProjComplex(A, terms, diffs)


def _null_complex(A: SerialAlgebra) -> ProjComplex:
    return ProjComplex(A, {}, {})


def cone_from_pi_cover(A: SerialAlgebra, M: Uniserial, cert_N: ProjComplex) -> ProjComplex:
    """Certificate for ``M`` from one for ``N = Omega(M)`` when ``P_top(M)`` is
    projective-injective.

    Each cycle-to-homology map ``Z_i -> H_i ≅ N^{a_i} -> E^{a_i}`` is extended
    to ``h_i: C_i -> E^{a_i}`` by solving for path coefficients; the result is
    the cone of ``h: C -> E_*`` where ``E_*`` has zero differentials.
    """
    A.check(M)
    e = M.top
    if A.is_projective(M):
        raise ValueError(f"{M} is projective")
    if not is_injective_projective(A, e):
        raise ValueError(f"P_{e} is not injective")
    N = syzygy(A, M)
    info = check_quasi_resolution(cert_N, N)
    C = cert_N.shift(-info.hsup)
    R = _Realization(C)
    top_len = M.len
    E_terms: dict[int, tuple[int, ...]] = {}
    h: dict[int, PathMatrix] = {}
    for d in sorted(C.terms):
        H = _degree_homology(R, d)
        gens = [(u, x) for u, x in decompose(H.module)]
        if not gens:
            continue
        assert all(u == N for u, _ in gens)
        basis = R.basis(d)
        # constraints: pairs (vertex w, chain vector z in (C_d)_w, target {(copy, position): 1})
        constraints: list[tuple[int, la.Vector, dict[tuple[int, int], int]]] = []
        for w in A.vertices:
            for b in H.boundaries[w]:
                constraints.append((w, b, {}))
        for q, (u, x) in enumerate(gens):
            w = u.top
            z = [sum((xi * r[k] for xi, r in zip(x, H.reps[w]) if xi), Fraction(0)) for k in range(len(basis.at[w]))]
            for p in range(u.len):
                constraints.append((w, z, {(q, top_len + p): 1}))
                if p + 1 < u.len:
                    z = la.matvec(R.arrow(d, w), z)
                    w = A.sigma(w)
        a = len(gens)
        # unknowns (copy q, column c, path length l) with sigma^l(e) = v_c
        unknowns = [
            (q, c, l) for q in range(a) for c, v in enumerate(basis.verts) for l in A.path_lengths(e, v)
        ]
        col_of = {k: i for i, k in enumerate(unknowns)}
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for w, z, target in constraints:
            positions = [s for s in A.path_lengths(e, w)]
            for q in range(a):
                for s in positions:
                    row = [Fraction(0)] * len(unknowns)
                    for k, zk in enumerate(z):
                        if not zk:
                            continue
                        c, p = basis.at[w][k]
                        idx = col_of.get((q, c, s - p))
                        if idx is not None and s - p >= 0:
                            row[idx] += zk
                    rows.append(row)
                    rhs.append(Fraction(target.get((q, s), 0)))
        sol = la.solve(rows, rhs, len(unknowns))
        if sol is None:
            raise ValueError(f"cannot extend the cycle map in degree {d}")
        hd: PathMatrix = {}
        for (q, c, l), x in zip(unknowns, sol):
            if x:
                hd.setdefault((q, c), {})[l] = x
        E_terms[d] = (e,) * a
        h[d] = hd
    E = ProjComplex(A, E_terms, {})
    return mapping_cone(C, E, h)


def ladder_lengths(A: SerialAlgebra, M: Uniserial, m: int, n: int) -> dict[int, int]:
    """Path lengths ``l_t`` of the components ``g_t: P_{v_t} -> P_{v_{t-n}}``,
    ``n <= t <= n+m-1``, of a chain map ``P -> P[n]`` that induces
    ``Omega^{n+m} M ≅ Omega^m M``.  Raises NoLadder when the commuting
    squares force a negative length or a mismatched vertex."""
    orb = syzygy_orbit(A, M)
    if n < 2:
        raise NoLadder("shift must be at least 2")
    if orb.period is None or m < orb.preperiod or n % orb.period:
        raise NoLadder(f"Omega^{n + m} != Omega^{m} for {M}")
    res = minimal_resolution(A, M)
    out: dict[int, int] = {}
    if m == 0:
        return out
    ell = res.length(m) - res.length(n + m)
    for t in range(n + m - 1, n - 1, -1):
        if t < n + m - 1:
            ell = ell - res.length(t + 1) + res.length(t + 1 - n)
        src = res.vertex(t - n)
        if ell < 0 or A.sigma(src, ell) != res.vertex(t):
            raise NoLadder(f"no ladder component in degree {t}")
        out[t] = ell
    return out


def cone_from_ladder(A: SerialAlgebra, M: Uniserial, m: int, n: int) -> ProjComplex:
    """Cone of the truncated ladder ``g^{<= n+m-1}``; homology ``M`` in
    degrees 1 and ``n``, score ``m``."""
    ells = ladder_lengths(A, M, m, n)
    res = minimal_resolution(A, M)
    X = resolution_complex(A, M, n + m - 1)
    yterms = {i: (res.vertex(i - n),) for i in range(n, n + m)}
    ydiffs = {i: {(0, 0): {res.length(i - n): Fraction(1)}} for i in range(n + 1, n + m)}
    Y = ProjComplex(A, yterms, ydiffs)
    g = {}
    for t, ell in ells.items():
        if ell < A.c(res.vertex(t - n)):
            g[t] = {(0, 0): {ell: Fraction(1)}}
    return mapping_cone(X, Y, g)


def ladder_chain_map(A: SerialAlgebra, M: Uniserial, m: int, n: int) -> ChainMap:
    ells = ladder_lengths(A, M, m, n)
    res = minimal_resolution(A, M)
    X = resolution_complex(A, M, n + m - 1)
    T = resolution_complex(A, M, max(m - 1, 0)) if m else _null_complex(A)
    comps = {}
    for t, ell in ells.items():
        if ell < A.c(res.vertex(t - n)):
            comps[t] = {(0, 0): {ell: Fraction(1)}}
    return ChainMap(X, T, n, comps)


# --- brute-force search ----------------------------------------------------------------


def _multisets(A: SerialAlgebra, width: int):
    for size in range(1, width + 1):
        yield from itertools.combinations_with_replacement(A.vertices, size)


def _dimvec(A: SerialAlgebra, verts) -> list[int]:
    out = [0] * A.n
    for v in verts:
        for x, y in enumerate(A.dim_vector(A.P(v))):
            out[x] += y
    return out


def _entry_choices(A: SerialAlgebra, rows: tuple[int, ...], cols: tuple[int, ...]):
    """All matrices with entries 0 or a single coefficient-1 path."""
    cells = [(r, c) for r in range(len(rows)) for c in range(len(cols))]
    options = [[None] + [t for t in A.path_lengths(rows[r], cols[c])] for r, c in cells]
    for pick in itertools.product(*options):
        m = {cell: {t: Fraction(1)} for cell, t in zip(cells, pick) if t is not None}
        yield m


def bounded_search(
    A: SerialAlgebra,
    M: Uniserial,
    max_width: int = 2,
    max_length: int = 3,
    target_score: int = 0,
    max_total_dim: int = 64,
) -> ProjComplex | None:
    """First complex within the caps that certifies ``qpd(M) <= target_score``.

    Complexes live in degrees ``0..L-1`` (``L <= max_length``), each term has at
    most ``max_width`` summands, differential entries are ``0`` or a single
    path with coefficient 1.  ``None`` is a budget answer, not a proof.
    """
    A.check(M)
    target = A.dim_vector(M)
    sets = list(_multisets(A, max_width))
    for L in range(1, max_length + 1):
        for seq in itertools.product(sets, repeat=L):
            if sum(A.c(v) for s in seq for v in s) > max_total_dim:
                continue
            # the alternating sum of term dimension vectors is a multiple of dim M
            alt = [0] * A.n
            for d, s in enumerate(seq):
                for i, x in enumerate(_dimvec(A, s)):
                    alt[i] += (-1) ** d * x
            if not _is_multiple(alt, target):
                continue
            found = _search_diffs(A, M, seq, target_score)
            if found is not None:
                return found
    return None


def _is_multiple(vec: list[int], base: list[int]) -> bool:
    k = None
    for x, y in zip(vec, base):
        if y == 0:
            if x != 0:
                return False
            continue
        if x % y:
            return False
        if k is None:
            k = x // y
        elif k != x // y:
            return False
    return True


def _search_diffs(A: SerialAlgebra, M: Uniserial, seq, target_score: int) -> ProjComplex | None:
    L = len(seq)
    terms = {d: tuple(s) for d, s in enumerate(seq)}
    choices = [list(_entry_choices(A, terms[d - 1], terms[d])) for d in range(1, L)]

    def rec(d: int, diffs: dict[int, PathMatrix]):
        if d == L:
            C = ProjComplex(A, terms, diffs)
            try:
                info = check_quasi_resolution(C, M)
            except NotQuasiResolution:
                return None
            return C if info.score <= target_score else None
        for m in choices[d - 1]:
            if d >= 2 and compose(A, terms[d - 2], diffs.get(d - 1, {}), m):
                continue
            nxt = dict(diffs)
            if m:
                nxt[d] = m
            out = rec(d + 1, nxt)
            if out is not None:
                return out
        return None

    return rec(1, {})


# --- certificate documents ----------------------------------------------------------


def _fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def certificate_to_json(
    C: ProjComplex, module: ModuleSum | Uniserial, kind: str, claimed_score: int
) -> dict:
    if isinstance(module, Uniserial):
        module = ModuleSum.of(module)
    diffs = {}
    for d, m in C.diffs.items():
        diffs[str(d)] = [
            {"row": r, "col": c, "len": t, "coeff": _fraction_text(x)}
            for (r, c), e in sorted(m.items())
            for t, x in sorted(e.items())
        ]
    return {
        "algebra": C.algebra.to_spec(),
        "module": [{"top": u.top, "len": u.len} for u in module],
        "kind": kind,
        "claimed_score": claimed_score,
        "degrees": [C.inf, C.sup],
        "terms": {str(d): list(v) for d, v in C.terms.items()},
        "differentials": diffs,
    }


def certificate_dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


_CERT_FIELDS = {"algebra", "module", "kind", "claimed_score", "degrees", "terms", "differentials"}


def _need_int(x, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise CertificateFormatError(f"{where} must be an integer")
    return x


def certificate_from_json(doc) -> tuple[ProjComplex, ModuleSum, str, int]:
    """Strict parse; schema problems raise CertificateFormatError."""
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    for key in doc:
        if key not in _CERT_FIELDS:
            raise CertificateFormatError(f"unknown field {key!r}")
    for key in sorted(_CERT_FIELDS):
        if key not in doc:
            raise CertificateFormatError(f"missing field {key!r}")
    try:
        A = algebra_from_spec(doc["algebra"])
    except AlgebraError as exc:
        raise CertificateFormatError(f"algebra.{exc.field}: {exc}") from None
    if not isinstance(doc["module"], list) or not doc["module"]:
        raise CertificateFormatError("module must be a nonempty list")
    mods = []
    for i, u in enumerate(doc["module"]):
        if not isinstance(u, dict) or set(u) != {"top", "len"}:
            raise CertificateFormatError(f"module[{i}] must have exactly top and len")
        mods.append(Uniserial(_need_int(u["top"], f"module[{i}].top"), _need_int(u["len"], f"module[{i}].len")))
    kind = doc["kind"]
    if not isinstance(kind, str):
        raise CertificateFormatError("kind must be a string")
    claimed = _need_int(doc["claimed_score"], "claimed_score")
    degs = doc["degrees"]
    if not isinstance(degs, list) or len(degs) != 2:
        raise CertificateFormatError("degrees must be [lo, hi]")
    lo, hi = _need_int(degs[0], "degrees[0]"), _need_int(degs[1], "degrees[1]")
    if not isinstance(doc["terms"], dict):
        raise CertificateFormatError("terms must be an object keyed by degree")
    terms = {}
    for key, verts in doc["terms"].items():
        d = _degree_key(key, "terms")
        if not isinstance(verts, list):
            raise CertificateFormatError(f"terms.{key} must be a list of vertices")
        terms[d] = tuple(_need_int(v, f"terms.{key}") for v in verts)
    if not isinstance(doc["differentials"], dict):
        raise CertificateFormatError("differentials must be an object keyed by degree")
    diffs: dict[int, PathMatrix] = {}
    for key, entries in doc["differentials"].items():
        d = _degree_key(key, "differentials")
        if not isinstance(entries, list):
            raise CertificateFormatError(f"differentials.{key} must be a list")
        m: PathMatrix = {}
        for j, ent in enumerate(entries):
            where = f"differentials.{key}[{j}]"
            if not isinstance(ent, dict) or set(ent) != {"row", "col", "len", "coeff"}:
                raise CertificateFormatError(f"{where} must have exactly row, col, len, coeff")
            r, c, t = (_need_int(ent[k], f"{where}.{k}") for k in ("row", "col", "len"))
            try:
                x = Fraction(str(ent["coeff"]))
            except (ValueError, ZeroDivisionError):
                raise CertificateFormatError(f"{where}.coeff is not a rational number") from None
            cell = m.setdefault((r, c), {})
            cell[t] = cell.get(t, Fraction(0)) + x
        diffs[d] = m
    C = ProjComplex(A, terms, diffs)
    if C.is_zero or (C.inf, C.sup) != (lo, hi):
        raise CertificateFormatError("degrees do not match the nonzero terms")
    return C, ModuleSum(mods), kind, claimed


def _degree_key(key: str, where: str) -> int:
    try:
        return int(key)
    except ValueError:
        raise CertificateFormatError(f"{where} key {key!r} is not an integer degree") from None


@dataclass(frozen=True)
class CheckOutcome:
    ok: bool
    message: str
    result: QuasiResolution | None = None


def check_certificate(doc) -> CheckOutcome:
    """Full verification of a certificate document.  Raises
    CertificateFormatError for schema problems; mathematical failures give
    ``ok=False``."""
    C, M, kind, claimed = certificate_from_json(doc)
    for u in M:
        try:
            C.algebra.check(u)
        except ValueError as exc:
            raise CertificateFormatError(f"module: {exc}") from None
    try:
        info = check_quasi_resolution(C, M)
    except (InvalidComplex, NotQuasiResolution) as exc:
        return CheckOutcome(False, str(exc))
    if info.score != claimed:
        return CheckOutcome(False, f"score {info.score} differs from claimed {claimed}", info)
    return CheckOutcome(True, f"{kind}: quasi-projective resolution of {M} with score {info.score}", info)
