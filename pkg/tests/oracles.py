"""Brute-force oracles that share no code with the package.

Modules are built from scratch as explicit matrices by simulating path
multiplication, homomorphisms are found by solving intertwiner equations,
and ranks come from a plain Gaussian elimination written here.
"""

from __future__ import annotations

from fractions import Fraction


def rank(rows: list[list]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    r = 0
    for c in range(len(a[0])):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


class Explicit:
    """Representation: ``space[v]`` is a dimension, ``arrows[v]`` a matrix
    (list of rows) from vertex ``v`` to its successor."""

    def __init__(self, n, space, arrows):
        self.n = n
        self.space = space
        self.arrows = arrows


def uniserial_explicit(successor, loewy, top, length) -> Explicit:
    """``P_top / J^length P_top`` realised on the paths of length < length."""
    n = len(loewy)
    assert 1 <= length <= loewy[top - 1]
    where = []
    v = top
    for p in range(length):
        where.append(v)
        if p + 1 < length:
            v = successor[v - 1]
    space = {u: 0 for u in range(1, n + 1)}
    idx = []
    for u in where:
        idx.append(space[u])
        space[u] += 1
    arrows = {}
    for u in range(1, n + 1):
        if loewy[u - 1] >= 2:
            w = successor[u - 1]
            arrows[u] = [[0] * space[u] for _ in range(space[w])]
    for p in range(length - 1):
        arrows[where[p]][idx[p + 1]][idx[p]] = 1
    return Explicit(n, space, arrows)


def direct_sum(mods: list[Explicit]) -> Explicit:
    n = mods[0].n
    space = {u: sum(m.space[u] for m in mods) for u in range(1, n + 1)}
    arrows = {}
    keys = set()
    for m in mods:
        keys |= set(m.arrows)
    for u in keys:
        rows = sum(len(m.arrows[u]) if u in m.arrows else 0 for m in mods)
        mat = [[0] * space[u] for _ in range(rows)]
        r0 = c0 = 0
        for m in mods:
            blk = m.arrows.get(u, [])
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    mat[r0 + i][c0 + j] = x
            r0 += len(blk)
            c0 += m.space[u]
        arrows[u] = mat
    return Explicit(n, space, arrows)


def hom_dim(X: Explicit, Y: Explicit, successor) -> int:
    """Dimension of the space of families ``f_v: X_v -> Y_v`` commuting with arrows."""
    n = X.n
    var = {}
    for v in range(1, n + 1):
        for i in range(Y.space[v]):
            for j in range(X.space[v]):
                var[(v, i, j)] = len(var)
    eqs = []
    for v in range(1, n + 1):
        w = successor[v - 1] if successor[v - 1] is not None else None
        ax = X.arrows.get(v)
        ay = Y.arrows.get(v)
        if w is None or (ax is None and ay is None):
            continue
        # f_w ∘ aX_v = aY_v ∘ f_v as maps X_v -> Y_w
        for i in range(Y.space[w]):
            for j in range(X.space[v]):
                row = [0] * len(var)
                if ax is not None:
                    for k in range(X.space[w]):
                        if ax[k][j]:
                            row[var[(w, i, k)]] += ax[k][j]
                if ay is not None:
                    for k in range(Y.space[v]):
                        if ay[i][k]:
                            row[var[(v, k, j)]] -= ay[i][k]
                eqs.append(row)
    return len(var) - rank(eqs)


def ext1_dim(successor, loewy, M, N) -> int:
    """``Ext^1(M, N)`` from ``0 -> Hom(M,N) -> Hom(P,N) -> Hom(ΩM,N) -> Ext^1 -> 0``
    with the projective cover ``P`` and ``ΩM = J^k P`` simulated by paths."""
    top, k = M
    c = loewy[top - 1]
    if k == c:
        return 0
    w = top
    for _ in range(k):
        w = successor[w - 1]
    omega = (w, c - k)
    ex = lambda t: uniserial_explicit(successor, loewy, *t)  # noqa: E731
    return (
        hom_dim(ex(omega), ex(N), successor)
        - hom_dim(ex((top, c)), ex(N), successor)
        + hom_dim(ex(M), ex(N), successor)
    )


def graded_to_explicit(G) -> Explicit:
    """Convert a package GradedModule by value (matrices are plain data)."""
    n = G.algebra.n
    arrows = {v: [list(r) for r in m] for v, m in G.act.items()}
    return Explicit(n, dict(G.dims), arrows)


def isomorphic_by_hom_counts(X: Explicit, claimed: list[tuple[int, int]], successor, loewy) -> bool:
    """Auslander: over a Nakayama algebra, ``X ≅ ⊕ claimed`` iff
    ``dim Hom(L, X)`` agrees for every indecomposable ``L``."""
    n = len(loewy)
    if claimed:
        Y = direct_sum([uniserial_explicit(successor, loewy, *t) for t in claimed])
    else:
        Y = Explicit(n, {u: 0 for u in range(1, n + 1)}, {})
    if any(X.space[u] != Y.space[u] for u in range(1, n + 1)):
        return False
    for i in range(1, n + 1):
        for k in range(1, loewy[i - 1] + 1):
            L = uniserial_explicit(successor, loewy, i, k)
            if hom_dim(L, X, successor) != hom_dim(L, Y, successor):
                return False
    return True


def loewy_by_nilpotency(n: int, delta: set[int]) -> list[int]:
    """Loewy lengths of the cyclic algebra by walking paths until a relation bites.

    The path of length n from a vertex in ``delta`` is zero; a path is zero
    iff it contains such a subpath, so P_i survives while no length-n window
    starts in ``delta``.
    """
    out = []
    for i in range(1, n + 1):
        length = 1
        while True:
            # can we extend the path of current length from i by one arrow?
            new_len = length + 1
            dead = False
            for start in range(0, new_len - n):
                v = (i - 1 + start) % n + 1
                if v in delta:
                    dead = True
                    break
            if dead or new_len > 4 * n:
                break
            length = new_len
        out.append(length)
    return out


def radical_power(successor, loewy, top, k) -> Explicit:
    """``J^k P_top``: the span of the paths of length >= k, with arrows restricted."""
    n = len(loewy)
    c = loewy[top - 1]
    where = []
    v = top
    for p in range(c):
        where.append(v)
        if p + 1 < c:
            v = successor[v - 1]
    keep = list(range(k, c))
    space = {u: 0 for u in range(1, n + 1)}
    idx = {}
    for p in keep:
        idx[p] = space[where[p]]
        space[where[p]] += 1
    arrows = {}
    for u in range(1, n + 1):
        if loewy[u - 1] >= 2:
            w = successor[u - 1]
            arrows[u] = [[0] * space[u] for _ in range(space[w])]
    for p in keep[:-1]:
        arrows[where[p]][idx[p + 1]][idx[p]] = 1
    return Explicit(n, space, arrows)


def _nullspace(rows, ncols):
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    out = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(a, pivots):
            v[p] = -row[f]
        out.append(v)
    return out


def has_injective_hom(X: Explicit, Y: Explicit, successor, seed: int = 0) -> bool:
    """Whether some module map ``X -> Y`` is injective (generic combination test)."""
    import random

    n = X.n
    var = {}
    for v in range(1, n + 1):
        for i in range(Y.space[v]):
            for j in range(X.space[v]):
                var[(v, i, j)] = len(var)
    eqs = []
    for v in range(1, n + 1):
        w = successor[v - 1]
        ax, ay = X.arrows.get(v), Y.arrows.get(v)
        if w is None or (ax is None and ay is None):
            continue
        for i in range(Y.space[w]):
            for j in range(X.space[v]):
                row = [0] * len(var)
                for k in range(X.space[w] if ax is not None else 0):
                    row[var[(w, i, k)]] += ax[k][j]
                for k in range(Y.space[v] if ay is not None else 0):
                    row[var[(v, k, j)]] -= ay[i][k]
                eqs.append(row)
    basis = _nullspace(eqs, len(var)) if var else []
    rng = random.Random(seed)
    coeffs = [rng.randint(1, 10**6) for _ in basis]
    f = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(len(var))]
    for v in range(1, n + 1):
        block = [[f[var[(v, i, j)]] for j in range(X.space[v])] for i in range(Y.space[v])]
        if X.space[v] and rank(block) < X.space[v]:
            return False
    return True


# --- complexes of projectives, realised from scratch ------------------------------


def _path_basis(successor, loewy, verts):
    """``{w: [(summand, position)]}`` for ``⊕ P_v`` with the path basis."""
    n = len(loewy)
    at = {w: [] for w in range(1, n + 1)}
    for c, v in enumerate(verts):
        w = v
        for p in range(loewy[v - 1]):
            at[w].append((c, p))
            if p + 1 < loewy[v - 1]:
                w = successor[w - 1]
    return at


def differential_blocks(successor, loewy, src, dst, entries):
    """Per-vertex matrices of ``⊕P_src -> ⊕P_dst`` where entry ``(r, c)`` is
    ``{t: x}``: the generator of summand ``c`` goes to ``x`` times the length-``t``
    path out of summand ``r``'s vertex."""
    a_src = _path_basis(successor, loewy, src)
    a_dst = _path_basis(successor, loewy, dst)
    out = {}
    for w in a_src:
        row_of = {cp: i for i, cp in enumerate(a_dst[w])}
        m = [[Fraction(0)] * len(a_src[w]) for _ in a_dst[w]]
        for j, (c, p) in enumerate(a_src[w]):
            for (r, cc), e in entries.items():
                if cc != c:
                    continue
                for t, x in e.items():
                    q = t + p
                    if q < loewy[dst[r] - 1]:
                        m[row_of[(r, q)]][j] += Fraction(x)
        out[w] = m
    return out


def _mul(a, b, inner):
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(len(b[0]) if b else 0)] for i in range(len(a))]


def squares_to_zero(successor, loewy, terms, diffs) -> bool:
    for d in diffs:
        if d - 1 not in diffs:
            continue
        hi = differential_blocks(successor, loewy, terms.get(d, ()), terms.get(d - 1, ()), diffs[d])
        lo = differential_blocks(successor, loewy, terms.get(d - 1, ()), terms.get(d - 2, ()), diffs[d - 1])
        for w in hi:
            inner = len(hi[w])
            if not inner or not lo[w]:
                continue
            if any(x for row in _mul(lo[w], hi[w], inner) for x in row):
                return False
    return True


def _solve_coords(basis, v):
    """Coordinates of ``v`` in the independent list ``basis`` (assumed to span it)."""
    if not basis:
        return []
    rows = [[b[i] for b in basis] + [v[i]] for i in range(len(v))]
    k = len(basis)
    a = [[Fraction(x) for x in r] for r in rows]
    pivots, r = [], 0
    for c in range(k):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    assert all(row[k] == 0 for row in a[r:]), "vector outside the span"
    x = [Fraction(0)] * k
    for row, p in zip(a, pivots):
        x[p] = row[k]
    return x


def homology_explicit(successor, loewy, terms, diffs, d) -> Explicit:
    """``H_d`` of the complex as an explicit representation."""
    n = len(loewy)
    here = terms.get(d, ())
    out_b = differential_blocks(successor, loewy, here, terms.get(d - 1, ()), diffs.get(d, {}))
    in_b = differential_blocks(successor, loewy, terms.get(d + 1, ()), here, diffs.get(d + 1, {}))
    at = _path_basis(successor, loewy, here)
    cycles, bounds, reps = {}, {}, {}
    for w in range(1, n + 1):
        dim = len(at[w])
        cycles[w] = _nullspace(out_b[w], dim) if out_b[w] else [
            [Fraction(int(i == j)) for i in range(dim)] for j in range(dim)
        ]
        image = [list(col) for col in zip(*in_b[w])] if in_b[w] and in_b[w][0] else []
        b = []
        for v in image:
            if rank(b + [v]) > len(b):
                b.append(v)
        bounds[w] = b
        h = []
        for z in cycles[w]:
            if rank(b + h + [z]) > len(b) + len(h):
                h.append(z)
        reps[w] = h
    space = {w: len(reps[w]) for w in range(1, n + 1)}
    arrows = {}
    for w in range(1, n + 1):
        if loewy[w - 1] < 2:
            continue
        nxt = successor[w - 1]
        pos = {cp: i for i, cp in enumerate(at[nxt])}
        cols = []
        for z in reps[w]:
            y = [Fraction(0)] * len(at[nxt])
            for x, (c, p) in zip(z, at[w]):
                if x and p + 1 < loewy[here[c] - 1]:
                    y[pos[(c, p + 1)]] += x
            coef = _solve_coords(bounds[nxt] + reps[nxt], y)
            cols.append(coef[len(bounds[nxt]):])
        arrows[w] = [[cols[j][i] for j in range(len(cols))] for i in range(space[nxt])]
    return Explicit(n, space, arrows)


def _lengths_between(successor, loewy, u, v):
    out, w = [], u
    for t in range(loewy[u - 1]):
        if w == v:
            out.append(t)
        if t + 1 < loewy[u - 1]:
            w = successor[w - 1]
    return out


def random_complex(rng, successor, loewy, max_width=2, max_terms=3, tries=200):
    """A random bounded complex (terms, diffs) with d∘d = 0, as plain data."""
    n = len(loewy)
    for _ in range(tries):
        length = rng.randint(1, max_terms)
        lo = rng.randint(-1, 1)
        terms = {lo + k: tuple(rng.randint(1, n) for _ in range(rng.randint(1, max_width))) for k in range(length)}
        diffs = {}
        for d in range(lo + 1, lo + length):
            m = {}
            for r, u in enumerate(terms[d - 1]):
                for c, v in enumerate(terms[d]):
                    ts = _lengths_between(successor, loewy, u, v)
                    if not ts or rng.random() < 0.3:
                        continue
                    pick = rng.sample(ts, k=min(len(ts), rng.choice([1, 1, 1, 2])))
                    m[(r, c)] = {t: rng.choice([1, 1, -1, 2]) for t in pick}
            if m:
                diffs[d] = m
        if squares_to_zero(successor, loewy, terms, diffs):
            return terms, diffs
    raise RuntimeError("no complex found")
