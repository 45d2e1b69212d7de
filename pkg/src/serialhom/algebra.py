"""Serial algebras presented by a successor map and Loewy lengths.

Vertex ``i`` has one outgoing arrow ``i -> successor(i)`` whenever the
indecomposable projective ``P_i`` has Loewy length at least two, so every
nonzero path is determined by its source and its length.  Modules
``L(i, k)`` are the quotients ``P_i / J^k P_i``; all vertices are 1-based.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

INF = math.inf


class AlgebraError(ValueError):
    """Invalid algebra data (bad presentation, Kupisch violation, ...)."""

    def __init__(self, message: str, field: str | None = None, vertex: int | None = None):
        super().__init__(message)
        self.field = field
        self.vertex = vertex


class ModuleError(ValueError):
    """A module that is not valid over the ambient algebra."""


@dataclass(frozen=True)
class CyclicPresentation:
    n: int
    delta: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.delta)


@dataclass(frozen=True)
class KupischPresentation:
    successor: tuple[int | None, ...]
    loewy: tuple[int, ...]


@dataclass(frozen=True, order=True)
class Uniserial:
    """The module ``L(top, len)``: top ``S_top``, Loewy length ``len``."""

    top: int
    len: int

    def __str__(self) -> str:
        return f"L({self.top},{self.len})"

    @classmethod
    def parse(cls, text: str) -> "Uniserial":
        body = text.strip()
        if not (body.startswith("L(") and body.endswith(")")):
            raise ModuleError(f"cannot parse module {text!r}")
        top, length = body[2:-1].split(",")
        return cls(int(top), int(length))


@dataclass(frozen=True)
class ModuleSum:
    """A finite direct sum of uniserials, kept as a sorted tuple."""

    summands: tuple[Uniserial, ...] = ()

    def __init__(self, summands: Iterable[Uniserial] = ()):
        object.__setattr__(self, "summands", tuple(sorted(summands)))

    @classmethod
    def of(cls, *summands: Uniserial) -> "ModuleSum":
        return cls(summands)

    def __bool__(self) -> bool:
        return bool(self.summands)

    def __iter__(self) -> Iterator[Uniserial]:
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __add__(self, other: "ModuleSum") -> "ModuleSum":
        return ModuleSum(self.summands + other.summands)

    def counts(self) -> Counter:
        return Counter(self.summands)

    def power(self, k: int) -> "ModuleSum":
        return ModuleSum(self.summands * k)

    @property
    def dim(self) -> int:
        return sum(u.len for u in self.summands)

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        for u, k in sorted(self.counts().items()):
            parts.append(str(u) if k == 1 else f"{u}^{k}")
        return " + ".join(parts)


@dataclass(frozen=True)
class PathElt:
    """The unique path of the given length starting at ``source``."""

    source: int
    length: int


@dataclass(frozen=True)
class SerialAlgebra:
    n: int
    successor: tuple[int | None, ...]
    loewy: tuple[int, ...]
    presentation: CyclicPresentation | KupischPresentation = field(compare=False)

    def __post_init__(self) -> None:
        _check_kupisch(self.n, self.successor, self.loewy)

    # --- basic combinatorics -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def c(self, i: int) -> int:
        """Loewy length of ``P_i``."""
        return self.loewy[i - 1]

    def sigma(self, i: int, t: int = 1) -> int:
        """``sigma^t(i)``: target of the length-``t`` path from ``i``."""
        for _ in range(t):
            nxt = self.successor[i - 1]
            if nxt is None:
                raise AlgebraError(f"vertex {i} has no successor", vertex=i)
            i = nxt
        return i

    def predecessors(self, i: int) -> tuple[int, ...]:
        """Vertices with an arrow into ``i``."""
        return self._predecessors[i - 1]

    @cached_property
    def _predecessors(self) -> tuple[tuple[int, ...], ...]:
        preds: list[list[int]] = [[] for _ in self.vertices]
        for j in self.vertices:
            if self.c(j) >= 2:
                preds[self.successor[j - 1] - 1].append(j)
        return tuple(tuple(p) for p in preds)

    @cached_property
    def is_nakayama(self) -> bool:
        """True when injectives are uniserial too (every vertex has at most one
        incoming arrow); then every indecomposable module is some ``L(i, k)``."""
        return all(len(p) <= 1 for p in self._predecessors)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        parent = list(range(self.n + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j in self.vertices:
            if self.c(j) >= 2:
                a, b = find(j), find(self.successor[j - 1])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for j in self.vertices:
            groups.setdefault(find(j), []).append(j)
        return tuple(tuple(g) for g in sorted(groups.values()))

    @property
    def is_cyclic(self) -> bool:
        return isinstance(self.presentation, CyclicPresentation)

    def P(self, i: int) -> Uniserial:
        return Uniserial(i, self.c(i))

    def S(self, i: int) -> Uniserial:
        return Uniserial(i, 1)

    def L(self, i: int, k: int) -> Uniserial:
        u = Uniserial(i, k)
        self.check(u)
        return u

    def check(self, u: Uniserial) -> None:
        if not (1 <= u.top <= self.n):
            raise ModuleError(f"{u}: vertex {u.top} out of range 1..{self.n}")
        if not (1 <= u.len <= self.c(u.top)):
            raise ModuleError(f"{u}: length must lie in 1..{self.c(u.top)}")

    def is_projective(self, u: Uniserial) -> bool:
        return u.len == self.c(u.top)

    def dim_vector(self, u: Uniserial) -> tuple[int, ...]:
        dv = [0] * self.n
        v = u.top
        for t in range(u.len):
            dv[v - 1] += 1
            if t + 1 < u.len:
                v = self.sigma(v)
        return tuple(dv)

    def path_target(self, p: PathElt) -> int:
        return self.sigma(p.source, p.length)

    def path_nonzero(self, p: PathElt) -> bool:
        return p.length <= self.c(p.source) - 1

    def path_lengths(self, source: int, target: int) -> list[int]:
        """Lengths of the nonzero paths from ``source`` to ``target``."""
        out = []
        v = source
        for t in range(self.c(source)):
            if v == target:
                out.append(t)
            if t + 1 < self.c(source):
                v = self.sigma(v)
        return out

    # --- serialisation -------------------------------------------------------

    def to_spec(self) -> dict:
        p = self.presentation
        if isinstance(p, CyclicPresentation):
            return {"kind": "cyclic", "n": p.n, "delta": list(p.delta)}
        return {"kind": "kupisch", "successor": list(p.successor), "loewy": list(p.loewy)}

    @property
    def label(self) -> str:
        p = self.presentation
        if isinstance(p, CyclicPresentation):
            return f"A(n={p.n},delta={','.join(map(str, p.delta))})"
        succ = ",".join("-" if s is None else str(s) for s in p.successor)
        return f"Kupisch(succ={succ};loewy={','.join(map(str, p.loewy))})"

    @property
    def slug(self) -> str:
        p = self.presentation
        if isinstance(p, CyclicPresentation):
            return f"cyclic{p.n}_d{'-'.join(map(str, p.delta))}"
        succ = "-".join("x" if s is None else str(s) for s in p.successor)
        return f"kupisch_s{succ}_c{'-'.join(map(str, p.loewy))}"


def _check_kupisch(n: int, successor: tuple, loewy: tuple) -> None:
    if n < 1:
        raise AlgebraError("need at least one vertex", field="n")
    if len(successor) != n:
        raise AlgebraError(f"successor has {len(successor)} entries, expected {n}", field="successor")
    if len(loewy) != n:
        raise AlgebraError(f"loewy has {len(loewy)} entries, expected {n}", field="loewy")
    for i in range(1, n + 1):
        c = loewy[i - 1]
        s = successor[i - 1]
        if not isinstance(c, int) or isinstance(c, bool) or c < 1:
            raise AlgebraError(f"loewy length at vertex {i} must be a positive integer", field="loewy", vertex=i)
        if s is None:
            if c >= 2:
                raise AlgebraError(f"vertex {i} has Loewy length {c} but no successor", field="successor", vertex=i)
            continue
        if not isinstance(s, int) or isinstance(s, bool) or not 1 <= s <= n:
            raise AlgebraError(f"successor of vertex {i} must be a vertex in 1..{n}", field="successor", vertex=i)
    for i in range(1, n + 1):
        c = loewy[i - 1]
        if c >= 2 and loewy[successor[i - 1] - 1] < c - 1:
            raise AlgebraError(
                f"Kupisch condition fails at vertex {i}: "
                f"c({successor[i - 1]}) = {loewy[successor[i - 1] - 1]} < c({i}) - 1 = {c - 1}",
                field="loewy",
                vertex=i,
            )


def cyclic_loewy(n: int, delta: Iterable[int]) -> tuple[int, ...]:
    """``c_i = n + min{r >= 0 : sigma^r(i) in delta}`` on the n-cycle."""
    d = set(delta)
    out = []
    for i in range(1, n + 1):
        r = 0
        while ((i - 1 + r) % n) + 1 not in d:
            r += 1
        out.append(n + r)
    return tuple(out)


def build_cyclic(n: int, delta: Iterable[int]) -> SerialAlgebra:
    """The algebra ``A_{n,m}``: the oriented n-cycle modulo the length-n paths
    starting at the vertices of ``delta``."""
    if not isinstance(n, int) or n < 2:
        raise AlgebraError("cyclic algebras need n >= 2", field="n")
    d = sorted(set(delta))
    if not d:
        raise AlgebraError("delta must be nonempty", field="delta")
    bad = [x for x in d if not isinstance(x, int) or not 1 <= x <= n]
    if bad:
        raise AlgebraError(f"delta entries {bad} out of range 1..{n}", field="delta")
    successor = tuple(i + 1 if i < n else 1 for i in range(1, n + 1))
    return SerialAlgebra(n, successor, cyclic_loewy(n, d), CyclicPresentation(n, tuple(d)))


def build_kupisch(successor: Iterable[int | None], loewy: Iterable[int]) -> SerialAlgebra:
    succ = tuple(successor)
    c = tuple(loewy)
    return SerialAlgebra(len(c), succ, c, KupischPresentation(succ, c))


_SPEC_FIELDS = {"cyclic": {"kind", "n", "delta"}, "kupisch": {"kind", "successor", "loewy"}}


def algebra_from_spec(spec: dict) -> SerialAlgebra:
    """Strict parse of ``{"kind": "cyclic"|"kupisch", ...}``."""
    if not isinstance(spec, dict):
        raise AlgebraError("algebra spec must be a JSON object", field="<root>")
    kind = spec.get("kind")
    if kind not in _SPEC_FIELDS:
        raise AlgebraError(f"unknown or missing kind {kind!r}", field="kind")
    allowed = _SPEC_FIELDS[kind]
    for key in spec:
        if key not in allowed:
            raise AlgebraError(f"unknown field {key!r} for kind {kind!r}", field=key)
    for key in sorted(allowed):
        if key not in spec:
            raise AlgebraError(f"missing field {key!r}", field=key)
    if kind == "cyclic":
        n = spec["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise AlgebraError("n must be an integer", field="n")
        delta = spec["delta"]
        if not isinstance(delta, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in delta):
            raise AlgebraError("delta must be a list of integers", field="delta")
        return build_cyclic(n, delta)
    succ, loewy = spec["successor"], spec["loewy"]
    if not isinstance(succ, list):
        raise AlgebraError("successor must be a list", field="successor")
    if not isinstance(loewy, list):
        raise AlgebraError("loewy must be a list", field="loewy")
    return build_kupisch(succ, loewy)


def algebra_from_json(text: str) -> SerialAlgebra:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"invalid JSON: {exc}", field="<json>") from exc
    return algebra_from_spec(spec)


# --- syzygy calculus ------------------------------------------------------------


def syzygy(A: SerialAlgebra, M: Uniserial) -> Uniserial | None:
    """``Omega(L(i,k)) = L(sigma^k(i), c_i - k)``; None for projectives."""
    A.check(M)
    c = A.c(M.top)
    if M.len == c:
        return None
    out = Uniserial(A.sigma(M.top, M.len), c - M.len)
    assert out.len <= A.c(out.top), f"syzygy of {M} is not a valid uniserial"
    return out


def syzygy_sum(A: SerialAlgebra, M: ModuleSum) -> ModuleSum:
    return ModuleSum(u for u in (syzygy(A, x) for x in M) if u is not None)


@dataclass(frozen=True)
class SyzygyOrbit:
    """``modules[t] = Omega^t(M)``.

    With finite pd the list ends at the last nonzero syzygy (a projective) and
    ``period`` is None; otherwise ``Omega^(preperiod+period) = Omega^preperiod``
    and the list stops just before the first repeat.
    """

    modules: tuple[Uniserial, ...]
    preperiod: int
    period: int | None

    @property
    def pd(self) -> float:
        return INF if self.period is not None else len(self.modules) - 1

    def __getitem__(self, t: int) -> Uniserial | None:
        if t < len(self.modules):
            return self.modules[t]
        if self.period is None:
            return None
        mu, rho = self.preperiod, self.period
        return self.modules[mu + (t - mu) % rho]

    @property
    def is_periodic(self) -> bool:
        return self.period is not None and self.preperiod == 0


def syzygy_orbit(A: SerialAlgebra, M: Uniserial) -> SyzygyOrbit:
    A.check(M)
    seen: dict[Uniserial, int] = {}
    seq: list[Uniserial] = []
    cur: Uniserial | None = M
    bound = sum(A.loewy) + 1
    while cur is not None:
        if cur in seen:
            mu = seen[cur]
            return SyzygyOrbit(tuple(seq), mu, len(seq) - mu)
        seen[cur] = len(seq)
        seq.append(cur)
        assert len(seq) <= bound
        cur = syzygy(A, cur)
    return SyzygyOrbit(tuple(seq), len(seq) - 1, None)


def proj_dimension(A: SerialAlgebra, M: ModuleSum | Uniserial) -> float:
    """Projective dimension; ``inf`` when the syzygy orbit cycles, 0 for the
    zero module."""
    if isinstance(M, Uniserial):
        return syzygy_orbit(A, M).pd
    return max((syzygy_orbit(A, u).pd for u in M), default=0)


def socle(A: SerialAlgebra, M: Uniserial) -> Uniserial:
    A.check(M)
    return Uniserial(A.sigma(M.top, M.len - 1), 1)


def embeds_into(A: SerialAlgebra, U: Uniserial, V: Uniserial) -> bool:
    """Whether ``U`` is isomorphic to a submodule of the uniserial ``V``.

    Submodules of ``V`` are its radical powers ``J^t V = L(sigma^t(top V), len V - t)``.
    """
    A.check(U)
    A.check(V)
    return U.len <= V.len and A.sigma(V.top, V.len - U.len) == U.top


def is_injective_projective(A: SerialAlgebra, i: int) -> bool:
    """Whether ``P_i`` is injective.

    For Nakayama algebras this is the combinatorial test "no arrow ``j -> i``
    with ``c_j > c_i``".  When some vertex has two incoming arrows, injective
    hulls need not be uniserial and the test is not sufficient; there we decide
    by ``Ext^1(S_j, P_i) = 0`` for every simple ``S_j``.
    """
    if A.is_nakayama:
        return all(A.c(j) <= A.c(i) for j in A.predecessors(i))
    from .homext import ext_dim

    P = A.P(i)
    return all(ext_dim(A, A.S(j), P, 1) == 0 for j in A.vertices)


def is_self_injective(A: SerialAlgebra) -> bool:
    return all(is_injective_projective(A, i) for i in A.vertices)


def all_indecomposables(A: SerialAlgebra) -> list[Uniserial]:
    """All ``L(i, k)`` with ``1 <= k <= c_i``, ordered by (top, len)."""
    return [Uniserial(i, k) for i in A.vertices for k in range(1, A.c(i) + 1)]
