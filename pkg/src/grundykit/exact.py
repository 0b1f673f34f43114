"""Exact coloring parameters with certificates, plus brute-force oracles.

Proper and b-colorings use backtracking over vertices in id order with colors
opened in first-use order. Grundy and partial Grundy numbers use dynamic
programming over vertex subsets, one color class at a time. Certificates are
always the lexicographically smallest coloring with the optimal count: each
vertex in id order takes the smallest color that still extends.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

from .coloring import (
    Coloring,
    ColoringKind,
    LimitExceeded,
    first_fit,
    greedy_clique,
    m_degree,
)
from .graph import Graph, GraphError

DEFAULT_LIMITS = {
    ColoringKind.PROPER: 16,
    ColoringKind.GRUNDY: 16,
    ColoringKind.PARTIAL_GRUNDY: 12,
    ColoringKind.B_COLORING: 12,
}
ORACLE_LIMIT = 8
LIMIT_ENV = "GRUNDY_KIT_LIMIT"


@dataclass(frozen=True)
class ExactResult:
    k: int
    certificate: Coloring
    kind: ColoringKind


def default_limit(kind: ColoringKind | str) -> int:
    env = os.environ.get(LIMIT_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise GraphError(f"{LIMIT_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_LIMITS[ColoringKind(kind)]


def exact_parameter(g: Graph, kind: ColoringKind | str, limit: int | None = None) -> ExactResult:
    """Extremal color count for ``kind`` with its lexicographically smallest certificate.

    ``proper`` minimizes (chromatic number); the other kinds maximize.
    """
    kind = ColoringKind(kind)
    n = g.vertex_count
    if n == 0:
        raise GraphError("exact parameters need at least one vertex")
    if limit is None:
        limit = default_limit(kind)
    if n > limit:
        raise LimitExceeded(f"{n} vertices exceeds the exact-solver limit of {limit} for {kind.value}")

    if kind is ColoringKind.GRUNDY:
        k, colors = _grundy_exact(g)
        return ExactResult(k, Coloring(tuple(colors)), kind)
    if kind is ColoringKind.PARTIAL_GRUNDY:
        k, colors = _partial_grundy_exact(g)
        return ExactResult(k, Coloring(tuple(colors)), kind)
    if kind is ColoringKind.PROPER:
        for k in range(len(greedy_clique(g)), n + 1):
            colors = _ProperSearch(g, k).run()
            if colors is not None:
                return ExactResult(k, Coloring(tuple(colors)), kind)
    else:
        for k in range(m_degree(g), 0, -1):
            colors = _BColoringSearch(g, k).run()
            if colors is not None:
                return ExactResult(k, Coloring(tuple(colors)), kind)
    raise AssertionError("unreachable: every graph has a valid coloring")  # pragma: no cover


def grundy_vertex_bounds(g: Graph) -> list[int]:
    """Per-vertex upper bounds on the color any Grundy coloring can give a vertex.

    A vertex colored c needs distinct neighbors colored 1..c-1, and a neighbor
    can only take color j if its own bound allows it. Iterated to a fixpoint
    starting from degree + 1.
    """
    ub = [d + 1 for d in g.degrees()]
    changed = True
    while changed:
        changed = False
        for v in range(g.vertex_count):
            s = sorted((ub[u] for u in g.adjacency[v]), reverse=True)
            # colors t, t-1, ..., 1 go to neighbors by decreasing bound
            t = 0
            while t < len(s) and all(s[i] >= t + 1 - i for i in range(t + 1)):
                t += 1
            if t + 1 < ub[v]:
                ub[v] = t + 1
                changed = True
    return ub


class _Search:
    """Shared state for id-order backtracking with per-vertex neighbor color counts."""

    def __init__(self, g: Graph, k: int):
        self.g = g
        self.k = k
        self.n = g.vertex_count
        self.adj = g.adjacency
        self.color = [0] * self.n
        # cnt[v][c]: assigned neighbors of v with color c
        self.cnt = [[0] * (k + 2) for _ in range(self.n)]
        self.free = list(g.degrees())
        self.used = [0] * (k + 2)

    def assign(self, v: int, c: int) -> None:
        self.color[v] = c
        self.used[c] += 1
        for u in self.adj[v]:
            self.cnt[u][c] += 1
            self.free[u] -= 1

    def unassign(self, v: int) -> None:
        c = self.color[v]
        self.color[v] = 0
        self.used[c] -= 1
        for u in self.adj[v]:
            self.cnt[u][c] -= 1
            self.free[u] += 1

    def candidates(self, v: int) -> range:
        return range(1, self.k + 1)

    def consistent(self, v: int) -> bool:
        return True

    def complete(self) -> bool:
        return True

    def run(self) -> list[int] | None:
        if self._dfs(0):
            return list(self.color)
        return None

    def _dfs(self, v: int) -> bool:
        if v == self.n:
            return self.complete()
        cnt_v = self.cnt[v]
        for c in self.candidates(v):
            if cnt_v[c]:
                continue
            self.assign(v, c)
            if self.consistent(v) and self._dfs(v + 1):
                return True
            self.unassign(v)
        return False


class _BColoringSearch(_Search):
    """b-colorings with exactly k colors; every class needs a vertex seeing all other classes.

    b-colorings are closed under color permutation, so colors open in first-use
    order without losing the lexicographically smallest solution.
    """

    def __init__(self, g: Graph, k: int):
        super().__init__(g, k)
        self.deg = g.degrees()

    def candidates(self, v: int) -> range:
        top = max(self.color[:v], default=0)
        return range(1, min(top + 1, self.k) + 1)

    def _can_witness(self, v: int, i: int) -> bool:
        if self.deg[v] < self.k - 1:
            return False
        c = self.color[v]
        row = self.cnt[v]
        if c != i and (c or row[i]):
            return False
        miss = sum(1 for j in range(1, self.k + 1) if j != i and not row[j])
        return miss <= self.free[v]

    def consistent(self, v: int) -> bool:
        unused = sum(1 for c in range(1, self.k + 1) if not self.used[c])
        if unused > self.n - v - 1:
            return False
        return all(
            any(self._can_witness(u, i) for u in range(self.n)) for i in range(1, self.k + 1)
        )

    def complete(self) -> bool:
        return all(self.used[c] for c in range(1, self.k + 1))


class _ProperSearch(_Search):
    """Proper colorings with colors <= k, colors opened in first-use order."""

    def candidates(self, v: int) -> range:
        top = max(self.color[:v], default=0)
        return range(1, min(top + 1, self.k) + 1)

    def consistent(self, v: int) -> bool:
        k = self.k
        for u in self.adj[v]:
            if not self.color[u] and all(self.cnt[u][c] for c in range(1, k + 1)):
                return False
        return True


# -- oracles ----------------------------------------------------------------

def _check_oracle_size(g: Graph) -> None:
    if g.vertex_count > ORACLE_LIMIT:
        raise LimitExceeded(f"oracle limited to {ORACLE_LIMIT} vertices, got {g.vertex_count}")
    if g.vertex_count == 0:
        raise GraphError("oracle needs at least one vertex")


def grundy_permutation_oracle(g: Graph) -> int:
    """Grundy number as the worst first-fit color count over all n! orders."""
    _check_oracle_size(g)
    cap = g.max_degree + 1
    best = 0
    for order in itertools.permutations(range(g.vertex_count)):
        best = max(best, first_fit(g, order).k)
        if best == cap:
            break
    return best


def exhaustive_assignment_oracle(g: Graph, kind: ColoringKind | str) -> int:
    """Extremal k over every color assignment in 1..cap that verifies as ``kind``.

    cap is Δ+1, or m(G) for b-colorings. Assignments are enumerated as numpy
    blocks and checked with bitmask arithmetic, independently of the solvers.
    """
    kind = ColoringKind(kind)
    _check_oracle_size(g)
    n = g.vertex_count
    cap = m_degree(g) if kind is ColoringKind.B_COLORING else g.max_degree + 1
    inner = min(n, 6)
    outer = n - inner
    # every assignment of the last `inner` vertices, rows in lexicographic order
    block = np.indices((cap,) * inner, dtype=np.int32).reshape(inner, -1).T + 1
    best: int | None = None
    for prefix in itertools.product(range(1, cap + 1), repeat=outer):
        a = np.empty((block.shape[0], n), dtype=np.int32)
        a[:, :outer] = prefix
        a[:, outer:] = block
        k = _extremal_valid_k(g, a, kind)
        if k is None:
            continue
        if best is None:
            best = k
        elif kind is ColoringKind.PROPER:
            best = min(best, k)
        else:
            best = max(best, k)
    assert best is not None
    return best


def _extremal_valid_k(g: Graph, a: np.ndarray, kind: ColoringKind) -> int | None:
    ok = np.ones(a.shape[0], dtype=bool)
    for u, v in g.edges():
        ok &= a[:, u] != a[:, v]
    a = a[ok]
    if a.shape[0] == 0:
        return None
    k = a.max(axis=1)
    if kind is ColoringKind.PROPER:
        return int(k.min())

    bit = np.left_shift(1, a)
    used = np.bitwise_or.reduce(bit, axis=1)
    valid = used == (np.left_shift(1, k + 1) - 2)
    nbr = np.zeros_like(bit)
    for v in range(g.vertex_count):
        for u in g.adjacency[v]:
            nbr[:, v] |= bit[:, u]
    if kind is ColoringKind.B_COLORING:
        need = used[:, None] & ~bit
    else:
        need = bit - 2  # colors 1..c-1
    good = (nbr & need) == need
    if kind is ColoringKind.GRUNDY:
        valid &= good.all(axis=1)
    else:
        witnessed = np.bitwise_or.reduce(np.where(good, bit, 0), axis=1)
        valid &= witnessed == used
    if not valid.any():
        return None
    return int(k[valid].max())


class _ClassDP:
    """Grundy colorings built class by class over vertex subsets (bitmasks).

    A coloring is Grundy iff each class i is a maximal independent set of the
    vertices not in classes 1..i-1, so everything reduces to enumerating
    maximal independent sets of induced subgraphs.
    """

    def __init__(self, g: Graph):
        self.masks = g.neighbor_masks
        self.full = (1 << g.vertex_count) - 1
        self._best: dict[int, int] = {}

    def independent_sets(self, s: int, must: int = 0, banned: int = 0):
        """Maximal independent sets of G[s] containing ``must`` and avoiding ``banned``."""
        masks = self.masks
        dominated = 0
        for v in _bits(must):
            dominated |= masks[v]
        p = s & ~must & ~dominated & ~banned
        x = banned & s & ~dominated

        def expand(r: int, p: int, x: int):
            if not p:
                if not x:
                    yield r
                return
            src = p | x
            u = (src & -src).bit_length() - 1
            # vertices u cannot be extended past: u itself and its neighbors
            for v in _bits(p & (masks[u] | (1 << u))):
                bv = 1 << v
                yield from expand(r | bv, p & ~masks[v] & ~bv, x & ~masks[v])
                p &= ~bv
                x |= bv

        yield from expand(must, p, x)

    def best(self, s: int) -> int:
        """Grundy number of G[s]."""
        if not s:
            return 0
        hit = self._best.get(s)
        if hit is not None:
            return hit
        cap = 1 + max(bin(self.masks[v] & s).count("1") for v in _bits(s))
        out = 0
        for ind in self.independent_sets(s):
            out = max(out, 1 + self.best(s & ~ind))
            if out == cap:
                break
        self._best[s] = out
        return out

    def extendable(self, fixed: dict[int, int], k: int) -> bool:
        """Does a Grundy coloring with exactly k colors agree with ``fixed`` (vertex -> color)?"""
        by_color: dict[int, int] = {}
        for v, c in fixed.items():
            if c > k:
                return False
            by_color[c] = by_color.get(c, 0) | (1 << v)
        later = [0] * (k + 2)
        for i in range(k, 0, -1):
            later[i] = later[i + 1] | by_color.get(i + 1, 0)
        memo: dict[tuple[int, int], bool] = {}

        def go(i: int, s: int) -> bool:
            if not s:
                return i == k + 1
            if i > k or self.best(s) < k - i + 1:
                return False
            key = (i, s)
            if key in memo:
                return memo[key]
            must = by_color.get(i, 0)
            ok = any(
                go(i + 1, s & ~ind)
                for ind in self.independent_sets(s, must, later[i] & s)
            )
            memo[key] = ok
            return ok

        return go(1, self.full)


class _WitnessChainDP:
    """Partial Grundy structures: disjoint independent sets C_1..C_k where each
    C_i holds a vertex adjacent to all of C_1..C_{i-1}.

    Such a chain need not cover the graph. Leftover vertices can always be
    absorbed, by a free color or by a new top class whose member is its own
    witness, so the longest chain is the partial Grundy number, and at that
    maximum absorbing never adds a class.
    """

    def __init__(self, g: Graph):
        self.masks = g.neighbor_masks
        self.full = (1 << g.vertex_count) - 1
        self.cap = g.max_degree + 1

    def classes(self, avail: int, must: int, banned: int, hit: int):
        """Independent sets C with must <= C <= avail - banned and C meeting ``hit``."""
        masks = self.masks
        blocked = banned
        for v in _bits(must):
            blocked |= masks[v]
        free = avail & ~must & ~blocked

        def grow(c: int, rest: int):
            if not rest:
                if c & hit:
                    yield c
                return
            v = (rest & -rest).bit_length() - 1
            bv = 1 << v
            yield from grow(c | bv, rest & ~bv & ~masks[v])
            yield from grow(c, rest & ~bv)

        yield from grow(must, free)

    def _advance(self, t: int, c: int) -> int:
        masks = self.masks
        out = 0
        for v in _bits(t & ~c):
            if masks[v] & c:
                out |= 1 << v
        return out

    def _room(self, used: int, t: int) -> int:
        # the next class's witness needs a neighbor in every later class
        return 1 + max((bin(self.masks[v] & ~used).count("1") for v in _bits(t)), default=-1)

    def extendable(self, fixed: dict[int, int], k: int) -> bool:
        """Is there a chain of exactly k classes agreeing with ``fixed``? Sound
        for full colorings only when k is the partial Grundy number."""
        by_color: dict[int, int] = {}
        for v, c in fixed.items():
            if c > k:
                return False
            by_color[c] = by_color.get(c, 0) | (1 << v)
        pinned = 0
        for m in by_color.values():
            pinned |= m
        memo: dict[tuple[int, int, int], bool] = {}

        def go(i: int, used: int, t: int) -> bool:
            if i > k:
                return True
            if not t or i - 1 + self._room(used, t) < k:
                return False
            key = (i, used, t)
            if key in memo:
                return memo[key]
            must = by_color.get(i, 0)
            ok = any(
                go(i + 1, used | c, self._advance(t, c))
                for c in self.classes(self.full & ~used, must, pinned & ~must, t)
            )
            memo[key] = ok
            return ok

        return go(1, 0, self.full)


def _lex_certificate(g: Graph, k: int, extendable, top: list[int]) -> list[int]:
    """Smallest color per vertex in id order such that the prefix still extends."""
    fixed: dict[int, int] = {}
    for v in range(g.vertex_count):
        taken = {fixed[u] for u in g.adjacency[v] if u in fixed}
        for c in range(1, min(top[v], k) + 1):
            if c in taken:
                continue
            fixed[v] = c
            if extendable(fixed, k):
                break
            del fixed[v]
        else:  # pragma: no cover
            raise AssertionError("value search and extension check disagree")
    return [fixed[v] for v in range(g.vertex_count)]


def _partial_grundy_exact(g: Graph) -> tuple[int, list[int]]:
    dp = _WitnessChainDP(g)
    # truncating a chain keeps it valid, so feasibility is monotone in k
    k = next(k for k in range(dp.cap, 0, -1) if dp.extendable({}, k))
    return k, _lex_certificate(g, k, dp.extendable, [k] * g.vertex_count)


def _grundy_exact(g: Graph) -> tuple[int, list[int]]:
    dp = _ClassDP(g)
    k = dp.best(dp.full)
    return k, _lex_certificate(g, k, dp.extendable, grundy_vertex_bounds(g))


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low
