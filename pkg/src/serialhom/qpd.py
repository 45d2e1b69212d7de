"""Bounds on quasi-projective dimension.

Every indecomposable of an algebra gets an interval ``[lower, upper]`` in
``N ∪ {inf}``.  Bound rules are applied until nothing changes; since every
rule only raises lowers or lowers uppers, the fixpoint does not depend on the
order in which rules run.

Rule tags:
  R1  finite pd: qpd = pd
  R2  periodic module: upper 0
  R3  direct sums: upper is the max over summands
  R4  qpd(Omega M) <= qpd(M), in both directions of the interval
  R5  qpd(M) <= qpd(Omega M) + 1 when P_top(M) is projective-injective
  R5' the contrapositive of R5: lower(Omega M) >= lower(M) - 1
  R6  chain-map ladder P -> P[n] inducing Omega^{n+m} M ≅ Omega^m M: upper m
  R7  socle embeddings: lower >= least finite pd of a uniserial containing M
  R8  pd = inf and Ext^{>=2}(M, M) = 0: qpd = inf
  CaseAnalysis  closed-form upper bounds for the cyclic algebras A(n, Δ)
  Frobenius     self-injective algebras: qpd is 0 or inf, constant on Omega-orbits
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .algebra import (
    CyclicPresentation,
    ModuleSum,
    SerialAlgebra,
    Uniserial,
    all_indecomposables,
    embeds_into,
    is_injective_projective,
    is_self_injective,
    syzygy,
    syzygy_orbit,
)
from .complexes import (
    NoLadder,
    ProjComplex,
    cone_from_ladder,
    cone_from_pi_cover,
    deleted_resolution,
    ladder_lengths,
    periodic_certificate,
)
from .homext import ext_eventually_vanishes, ext_window

INF = math.inf
RULE_ORDER = ("R1", "R2", "R3", "R4", "R5", "R5'", "R6", "R7", "R8", "CaseAnalysis", "Frobenius")


class InconsistentBounds(RuntimeError):
    """A lower bound exceeded an upper bound: some rule is unsound."""


# --- certificates -----------------------------------------------------------------------


@dataclass(frozen=True)
class FinitePd:
    algebra: SerialAlgebra = field(repr=False)
    module: Uniserial
    pd: int
    kind = "FinitePd"
    side = "both"

    @property
    def bound(self) -> int:
        return self.pd

    def complex(self) -> ProjComplex:
        return deleted_resolution(self.algebra, self.module)


@dataclass(frozen=True)
class PeriodicTruncation:
    algebra: SerialAlgebra = field(repr=False)
    module: Uniserial
    period: int
    kind = "PeriodicTruncation"
    side = "upper"
    bound = 0

    def complex(self) -> ProjComplex:
        return periodic_certificate(self.algebra, self.module, self.period)


@dataclass(frozen=True)
class PiCoverCone:
    algebra: SerialAlgebra = field(repr=False)
    module: Uniserial
    inner: "Certificate"
    kind = "PiCoverCone"
    side = "upper"

    @property
    def bound(self) -> int:
        return self.inner.bound + 1

    def complex(self) -> ProjComplex:
        return cone_from_pi_cover(self.algebra, self.module, self.inner.complex())


@dataclass(frozen=True)
class LadderCone:
    algebra: SerialAlgebra = field(repr=False)
    module: Uniserial
    m: int
    n: int
    kind = "LadderCone"
    side = "upper"

    @property
    def bound(self) -> int:
        return self.m

    def complex(self) -> ProjComplex:
        return cone_from_ladder(self.algebra, self.module, self.m, self.n)


@dataclass(frozen=True)
class SocleEmbedding:
    module: Uniserial
    witnesses: tuple[Uniserial, ...]
    bound: float
    kind = "SocleEmbedding"
    side = "lower"


@dataclass(frozen=True)
class ExtVanishingInfinite:
    module: Uniserial
    window: tuple[int, int]
    kind = "ExtVanishingInfinite"
    side = "lower"
    bound = INF


@dataclass(frozen=True)
class CaseAnalysis:
    module: Uniserial
    case_id: str
    bound: int
    exact: bool
    kind = "CaseAnalysis"
    side = "upper"


Certificate = FinitePd | PeriodicTruncation | PiCoverCone | LadderCone | SocleEmbedding | ExtVanishingInfinite | CaseAnalysis


def has_complex(cert) -> bool:
    return hasattr(cert, "complex")


@dataclass(frozen=True)
class QpdResult:
    lower: float
    upper: float
    rules_fired: tuple[str, ...] = ()
    certificates: tuple = ()
    note: str = ""

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> float | None:
        return self.lower if self.exact else None


def fmt(x: float) -> str:
    return "inf" if x == INF else str(int(x))


# --- individual bounds ---------------------------------------------------------------


def socle_lower_bound(A: SerialAlgebra, M: Uniserial) -> tuple[float, tuple[Uniserial, ...]]:
    """Least finite pd among uniserials containing ``M`` (inf if there is none),
    with the uniserials attaining it.

    If qpd(M) is finite, M embeds in a module N with pd N = qpd M; a
    uniserial has a simple socle, so M already embeds in one summand of N.
    """
    best, wit = INF, []
    for U in all_indecomposables(A):
        if not embeds_into(A, M, U):
            continue
        pd = syzygy_orbit(A, U).pd
        if pd == INF:
            continue
        if pd < best:
            best, wit = pd, [U]
        elif pd == best:
            wit.append(U)
    return best, tuple(wit)


def case_upper_bound_Anm(A: SerialAlgebra, M: Uniserial) -> tuple[int, str, bool]:
    """``(bound, case id, exact)`` for a non-projective ``L(i,k)`` over ``A(n, Δ)``.

    ``k >= n`` gives pd = qpd = 2.  For ``k < n`` the bound is 0 when ``i`` and
    ``sigma^k(i)`` lie in Δ (the module is then 2-periodic), 1 when only
    ``sigma^k(i)`` does, and 2 when ``sigma^k(i)`` does not.
    """
    p = A.presentation
    if not isinstance(p, CyclicPresentation):
        raise ValueError("case analysis needs a cyclic presentation")
    A.check(M)
    if A.is_projective(M):
        raise ValueError(f"{M} is projective")
    n, delta = p.n, set(p.delta)
    i, k = M.top, M.len
    if k >= n:
        return 2, "long", True
    end = A.sigma(i, k)
    if end in delta:
        return (0, "case1", True) if i in delta else (1, "case2", False)
    return 2, ("case3" if i in delta else "case4"), False


def ladder_bound(A: SerialAlgebra, M: Uniserial) -> tuple[int, int] | None:
    """Smallest ``m`` (with its shift ``n``) admitting a ladder, or None."""
    orb = syzygy_orbit(A, M)
    if orb.period is None:
        return None
    mu, rho = orb.preperiod, orb.period
    # beyond n = mu + 1 every admissible shift gives the same lengths
    shifts = [n for n in range(rho, max(2, mu + 1) + 2 * rho + 1, rho) if n >= 2]
    for m in range(mu, mu + 2 * rho + 2):
        for n in shifts:
            try:
                ladder_lengths(A, M, m, n)
            except NoLadder:
                continue
            return m, n
    return None


# --- the engine --------------------------------------------------------------------------


class _Engine:
    def __init__(self, A: SerialAlgebra, order: tuple[str, ...] | None = None):
        self.A = A
        self.mods = all_indecomposables(A)
        self.orbit = {M: syzygy_orbit(A, M) for M in self.mods}
        self.omega = {M: syzygy(A, M) for M in self.mods}
        self.nakayama = A.is_nakayama
        self.selfinj = is_self_injective(A)
        self.pi_vertex = {v: is_injective_projective(A, v) for v in A.vertices}
        self.pi = [M for M in self.mods if self.omega[M] is not None and self.pi_vertex[M.top]]
        self.ladder = {M: ladder_bound(A, M) for M in self.mods if self.orbit[M].period is not None}
        self.cyclic = isinstance(A.presentation, CyclicPresentation)
        self.cases = {
            M: case_upper_bound_Anm(A, M) for M in self.mods if self.cyclic and not A.is_projective(M)
        }
        self.socle = {M: socle_lower_bound(A, M) for M in self.mods} if self.nakayama else {}
        self._r8: dict[Uniserial, bool] = {}
        self.lo = {M: 0 for M in self.mods}
        self.hi = {M: INF for M in self.mods}
        rules = {
            "R1": self._r1,
            "R2": self._r2,
            "R4": self._r4,
            "R5": self._r5,
            "R5'": self._r5p,
            "R6": self._r6,
            "R7": self._r7,
            "R8": self._r8_rule,
            "CaseAnalysis": self._case,
            "Frobenius": self._frobenius,
        }
        names = order or tuple(r for r in RULE_ORDER if r in rules)
        self.rules: list[Callable[[], bool]] = [rules[r] for r in names]
        self._run()

    # each rule returns True if it changed something
    def _up(self, M: Uniserial, b: float) -> bool:
        if b < self.hi[M]:
            self.hi[M] = b
            return True
        return False

    def _down(self, M: Uniserial, b: float) -> bool:
        if b > self.lo[M]:
            self.lo[M] = b
            return True
        return False

    def _r1(self) -> bool:
        ch = False
        for M in self.mods:
            pd = self.orbit[M].pd
            if pd != INF:
                ch |= self._up(M, pd)
                ch |= self._down(M, pd)
        return ch

    def _r2(self) -> bool:
        ch = False
        for M in self.mods:
            if self.orbit[M].is_periodic:
                ch |= self._up(M, 0)
        return ch

    def _r4(self) -> bool:
        ch = False
        for M in self.mods:
            N = self.omega[M]
            if N is not None:
                ch |= self._up(N, self.hi[M])
                ch |= self._down(M, self.lo[N])
        return ch

    def _r5(self) -> bool:
        ch = False
        for M in self.pi:
            ch |= self._up(M, self.hi[self.omega[M]] + 1)
        return ch

    def _r5p(self) -> bool:
        ch = False
        for M in self.pi:
            ch |= self._down(self.omega[M], self.lo[M] - 1)
        return ch

    def _r6(self) -> bool:
        ch = False
        for M, lad in self.ladder.items():
            if lad is not None:
                ch |= self._up(M, lad[0])
        return ch

    def _r7(self) -> bool:
        ch = False
        for M, (b, _) in self.socle.items():
            ch |= self._down(M, b)
        return ch

    def r8_holds(self, M: Uniserial) -> bool:
        if M not in self._r8:
            self._r8[M] = self.orbit[M].period is not None and ext_eventually_vanishes(self.A, M, M, 2)
        return self._r8[M]

    def _r8_rule(self) -> bool:
        ch = False
        for M in self.mods:
            # a finite upper bound is a certificate, so the witness cannot exist
            if self.hi[M] == INF and self.lo[M] != INF and self.r8_holds(M):
                ch |= self._down(M, INF)
        return ch

    def _case(self) -> bool:
        ch = False
        for M, (b, _, _) in self.cases.items():
            ch |= self._up(M, b)
        return ch

    def _frobenius(self) -> bool:
        if not self.selfinj:
            return False
        ch = False
        for M in self.mods:
            if self.A.is_projective(M):
                continue
            if self.hi[M] != INF:
                ch |= self._up(M, 0)
            if self.lo[M] > 0:
                ch |= self._down(M, INF)
            N = self.omega[M]
            ch |= self._up(M, self.hi[N]) | self._up(N, self.hi[M])
            ch |= self._down(M, self.lo[N]) | self._down(N, self.lo[M])
        return ch

    def _run(self) -> None:
        changed = True
        while changed:
            changed = False
            for rule in self.rules:
                changed |= rule()
        for M in self.mods:
            if self.lo[M] > self.hi[M]:
                raise InconsistentBounds(f"{M}: lower {self.lo[M]} > upper {self.hi[M]}")

    # --- provenance ---------------------------------------------------------------

    def upper_sources(self, M: Uniserial) -> list[tuple[str, float]]:
        A, out = self.A, []
        pd = self.orbit[M].pd
        if pd != INF:
            out.append(("R1", pd))
        if self.orbit[M].is_periodic:
            out.append(("R2", 0))
        for P in self.mods:
            if self.omega[P] == M:
                out.append(("R4", self.hi[P]))
        if M in self.pi:
            out.append(("R5", self.hi[self.omega[M]] + 1))
        lad = self.ladder.get(M)
        if lad is not None:
            out.append(("R6", lad[0]))
        if M in self.cases:
            out.append(("CaseAnalysis", self.cases[M][0]))
        if self.selfinj and not A.is_projective(M):
            N = self.omega[M]
            pre = [P for P in self.mods if self.omega[P] == M]
            cand = [self.hi[N]] + [self.hi[P] for P in pre]
            if min(cand) != INF:
                out.append(("Frobenius", 0))
        return out

    def lower_sources(self, M: Uniserial) -> list[tuple[str, float]]:
        out = []
        pd = self.orbit[M].pd
        if pd != INF:
            out.append(("R1", pd))
        N = self.omega[M]
        if N is not None:
            out.append(("R4", self.lo[N]))
        for P in self.pi:
            if self.omega[P] == M:
                out.append(("R5'", self.lo[P] - 1))
        if M in self.socle:
            out.append(("R7", self.socle[M][0]))
        if self.hi[M] == INF and self.r8_holds(M):
            out.append(("R8", INF))
        if self.selfinj and not self.A.is_projective(M):
            vals = [self.lo[N]] + [self.lo[P] for P in self.mods if self.omega[P] == M]
            if max(vals) > 0:
                out.append(("Frobenius", INF))
        return out

    def complex_certs(self, M: Uniserial) -> list:
        """Complex-bearing certificates whose score equals the final upper bound."""
        A, hi = self.A, self.hi[M]
        if hi == INF:
            return []
        out: list = []
        orb = self.orbit[M]
        if orb.pd == hi:
            out.append(FinitePd(A, M, int(hi)))
        if hi == 0 and orb.is_periodic:
            out.append(PeriodicTruncation(A, M, orb.period))
        lad = self.ladder.get(M)
        if lad is not None and lad[0] == hi:
            out.append(LadderCone(A, M, lad[0], lad[1]))
        if M in self.pi:
            N = self.omega[M]
            if self.hi[N] + 1 == hi:
                inner = self.complex_certs(N)
                if inner:
                    out.append(PiCoverCone(A, M, inner[0]))
        return out

    def result(self, M: Uniserial) -> QpdResult:
        lo, hi = self.lo[M], self.hi[M]
        fired = set()
        if hi != INF:
            fired |= {tag for tag, b in self.upper_sources(M) if b == hi}
        if lo > 0:
            fired |= {tag for tag, b in self.lower_sources(M) if b == lo}
        certs: list = self.complex_certs(M)
        if M in self.cases and self.cases[M][0] == hi:
            b, cid, ex = self.cases[M]
            certs.append(CaseAnalysis(M, cid, b, ex))
        if lo > 0:
            if M in self.socle and self.socle[M][0] == lo and self.orbit[M].pd == INF:
                certs.append(SocleEmbedding(M, self.socle[M][1], lo))
            if lo == INF and self.hi[M] == INF and self.r8_holds(M):
                certs.append(ExtVanishingInfinite(M, (2, max(2, ext_window(self.A, M)))))
        return QpdResult(lo, hi, tuple(r for r in RULE_ORDER if r in fired), tuple(certs))


@lru_cache(maxsize=None)
def engine(A: SerialAlgebra) -> _Engine:
    return _Engine(A)


def engine_with_order(A: SerialAlgebra, order: list[str]) -> _Engine:
    """Uncached engine with an explicit rule order (for order-independence checks)."""
    return _Engine(A, tuple(order))


def shuffled_orders(seed: int, count: int) -> list[list[str]]:
    names = [r for r in RULE_ORDER if r != "R3"]
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        names = names[:]
        rng.shuffle(names)
        out.append(names)
    return out


def qpd_bounds(A: SerialAlgebra, M: ModuleSum | Uniserial) -> QpdResult:
    if isinstance(M, Uniserial):
        A.check(M)
        return engine(A).result(M)
    for u in M:
        A.check(u)
    distinct = sorted(set(M))
    if not distinct:
        return QpdResult(0, 0, (), (), "zero module")
    if len(distinct) == 1:
        # a quasi-projective resolution of M^k is one of M and vice versa
        return engine(A).result(distinct[0])
    eng = engine(A)
    parts = {u: eng.result(u) for u in distinct}
    pd = max(eng.orbit[u].pd for u in distinct)
    if pd != INF:
        return QpdResult(pd, pd, ("R1",), (), "sum with finite pd")
    upper = max(r.upper for r in parts.values())
    lower, fired = 0, {"R3"} if upper != INF else set()
    if eng.nakayama:
        b = max(eng.socle[u][0] for u in distinct)
        if b > lower:
            lower, fired = b, fired | {"R7"}
    if upper == INF and _sum_ext_vanishes(A, distinct):
        lower, fired = INF, fired | {"R8"}
    if lower > upper:
        raise InconsistentBounds(f"{M}: lower {lower} > upper {upper}")
    return QpdResult(lower, upper, tuple(r for r in RULE_ORDER if r in fired), (), "sup over summands")


def _sum_ext_vanishes(A: SerialAlgebra, mods: list[Uniserial]) -> bool:
    return all(ext_eventually_vanishes(A, X, Y, 2) for X in mods for Y in mods)


# --- global invariants -----------------------------------------------------------------


@dataclass(frozen=True)
class DimInterval:
    lower: float
    upper: float
    note: str = ""

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def closed_form_qgldim(A: SerialAlgebra) -> int | None:
    """Closed form for the cyclic algebras: 2 when ``|Δ| < n``, else 0."""
    p = A.presentation
    if not isinstance(p, CyclicPresentation):
        return None
    return 0 if p.m == p.n else 2


def qgldim(A: SerialAlgebra) -> DimInterval:
    """Supremum of qpd over all indecomposables (sums are bounded by summands).

    For non-Nakayama algebras not every indecomposable is uniserial, so the
    upper end stays inf unless the lower end already is.
    """
    eng = engine(A)
    lower = max(eng.lo.values())
    upper = max(eng.hi.values())
    note = "sup over indecomposables"
    if not eng.nakayama and lower != INF:
        upper = INF
        note = "sup over uniserials; non-uniserial indecomposables unbounded"
    closed = closed_form_qgldim(A)
    if closed is not None:
        if not lower <= closed <= upper:
            raise InconsistentBounds(f"engine interval [{lower}, {upper}] excludes closed form {closed}")
        lower = upper = closed
    return DimInterval(lower, upper, note)


def findim_gldim(A: SerialAlgebra) -> tuple[int, float]:
    """``findim``: largest finite pd of a uniserial; ``gldim``: largest pd of a simple."""
    pds = [syzygy_orbit(A, M).pd for M in all_indecomposables(A)]
    findim = max(p for p in pds if p != INF)
    gldim = max(syzygy_orbit(A, A.S(i)).pd for i in A.vertices)
    return int(findim), gldim


def product_qgldim(results: list[DimInterval]) -> DimInterval:
    """qgldim of a product: componentwise max."""
    if not results:
        raise ValueError("need at least one factor")
    return DimInterval(max(r.lower for r in results), max(r.upper for r in results), "max over factors")


def table_rows(A: SerialAlgebra) -> list[dict]:
    eng = engine(A)
    rows = []
    for M in eng.mods:
        r = eng.result(M)
        orb = eng.orbit[M]
        soc = A.sigma(M.top, M.len - 1)
        rows.append(
            {
                "top": M.top,
                "len": M.len,
                "dim": M.len,
                "socle": soc,
                "pd": fmt(orb.pd),
                "periodic": f"({orb.preperiod},{orb.period})" if orb.period is not None else "-",
                "qpd_lower": fmt(r.lower),
                "qpd_upper": fmt(r.upper),
                "exact": r.exact,
                "rules": " ".join(r.rules_fired),
                "certificates": " ".join(c.kind for c in r.certificates),
            }
        )
    return rows
