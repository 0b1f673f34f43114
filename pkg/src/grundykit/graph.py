"""Undirected simple graphs: representation, family constructors, operators, I/O."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs, bad parameters or unparseable input."""


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        if len(self.adjacency) != self.vertex_count:
            raise GraphError("adjacency must have one entry per vertex")
        for u, nbrs in enumerate(self.adjacency):
            if any(a >= b for a, b in zip(nbrs, nbrs[1:])):
                raise GraphError(f"adjacency of {u} must be strictly increasing")
            for v in nbrs:
                if not 0 <= v < self.vertex_count:
                    raise GraphError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise GraphError(f"self-loop at vertex {u}")
        for u, v in self.edges():
            if u not in self.neighbor_sets[v]:
                raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph on ``n`` vertices; duplicate edges are merged, loops rejected."""
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Neighborhoods as integer bitmasks (bit ``v`` set for neighbor ``v``)."""
        masks = []
        for nbrs in self.adjacency:
            m = 0
            for v in nbrs:
                m |= 1 << v
            masks.append(m)
        return tuple(masks)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    @property
    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.adjacency), default=0)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced by ``vertices``, relabeled 0.. in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("induced_subgraph vertices must be distinct")
        edges = [
            (index[u], index[v])
            for u in vertices
            for v in self.adjacency[u]
            if v in index and u < v
        ]
        return Graph.from_edges(len(vertices), edges)


# -- families ---------------------------------------------------------------

FAMILIES = ("empty", "path", "cycle", "complete", "star", "complete_bipartite", "kary_tree")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        f, p = self.family, self.params
        if f not in FAMILIES:
            raise GraphError(f"unknown family {f!r}; expected one of {', '.join(FAMILIES)}")
        arity = 2 if f in ("complete_bipartite", "kary_tree") else 1
        if len(p) != arity:
            raise GraphError(f"{f} takes {arity} parameter(s), got {len(p)}")
        if f == "cycle":
            if p[0] < 3:
                raise GraphError(f"cycle requires n >= 3, got n={p[0]}")
        elif f == "complete_bipartite":
            if p[0] < 1 or p[1] < 1:
                raise GraphError(f"complete_bipartite requires m >= 1 and n >= 1, got {p}")
        elif f == "kary_tree":
            if p[0] < 1 or p[1] < 0:
                raise GraphError(f"kary_tree requires arity >= 1 and depth >= 0, got {p}")
        elif p[0] < 1:
            raise GraphError(f"{f} requires n >= 1, got n={p[0]}")


def build_family(spec: FamilySpec) -> Graph:
    f, p = spec.family, spec.params
    if f == "empty":
        return Graph.from_edges(p[0], [])
    if f == "path":
        return path_graph(p[0])
    if f == "cycle":
        n = p[0]
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if f == "complete":
        return complete_graph(p[0])
    if f == "star":
        # n leaves around center 0, i.e. K_{1,n}
        return Graph.from_edges(p[0] + 1, [(0, i) for i in range(1, p[0] + 1)])
    if f == "complete_bipartite":
        m, n = p
        return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])
    a, d = p
    # level order, root 0: children of i are a*i+1 .. a*i+a
    count = sum(a**level for level in range(d + 1))
    edges = [((i - 1) // a, i) for i in range(1, count)]
    return Graph.from_edges(count, edges)


def family(name: str, *params: int) -> Graph:
    return build_family(FamilySpec(name, tuple(params)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return family("cycle", n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


# -- distances and operators ------------------------------------------------

def bfs_distances(g: Graph, source: int) -> list[int | None]:
    """Hop distances from ``source``; ``None`` marks unreachable vertices."""
    if not 0 <= source < g.vertex_count:
        raise GraphError(f"source {source} out of range for n={g.vertex_count}")
    dist: list[int | None] = [None] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.adjacency[u]:
            if dist[v] is None:
                dist[v] = du + 1  # type: ignore[operator]
                queue.append(v)
    return dist


def diameter(g: Graph) -> int | None:
    """Largest finite distance; ``None`` if the graph is disconnected or empty."""
    best = 0
    for s in range(g.vertex_count):
        dist = bfs_distances(g, s)
        if any(d is None for d in dist):
            return None
        best = max(best, max(dist))  # type: ignore[type-var]
    return best if g.vertex_count else None


def is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return True
    return all(d is not None for d in bfs_distances(g, 0))


def power_graph(g: Graph, k: int) -> Graph:
    if k < 1:
        raise GraphError(f"power must be >= 1, got {k}")
    edges = []
    for u in range(g.vertex_count):
        for v, d in enumerate(bfs_distances(g, u)):
            if d is not None and u < v and d <= k:
                edges.append((u, v))
    return Graph.from_edges(g.vertex_count, edges)


def _check_factors(g: Graph, h: Graph) -> None:
    if g.vertex_count == 0 or h.vertex_count == 0:
        raise GraphError("graph products require non-empty factors")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with pair (u, v) flattened to ``u * |V(h)| + v``."""
    _check_factors(g, h)
    nh = h.vertex_count
    edges = []
    for u in range(g.vertex_count):
        for v1, v2 in h.edges():
            edges.append((u * nh + v1, u * nh + v2))
    for u1, u2 in g.edges():
        for v in range(nh):
            edges.append((u1 * nh + v, u2 * nh + v))
    return Graph.from_edges(g.vertex_count * nh, edges)


def conormal_sum(g: Graph, h: Graph) -> Graph:
    """Co-normal sum: (u1, v1) ~ (u2, v2) iff u1 ~ u2 or v1 ~ v2."""
    _check_factors(g, h)
    ng, nh = g.vertex_count, h.vertex_count
    n = ng * nh
    edges = []
    for a in range(n):
        u1, v1 = divmod(a, nh)
        for b in range(a + 1, n):
            u2, v2 = divmod(b, nh)
            if g.has_edge(u1, u2) or h.has_edge(v1, v2):
                edges.append((a, b))
    return Graph.from_edges(n, edges)


PRODUCTS = {"product": cartesian_product, "conormal": conormal_sum}


# -- random -----------------------------------------------------------------

def random_graph(n: int, p: float, seed: int | None = None) -> Graph:
    """Erdős–Rényi G(n, p); one draw per lexicographic pair, so fixed seed => fixed graph."""
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_interval_graph(n: int, seed: int | None = None) -> Graph:
    """Intersection graph of ``n`` intervals with endpoints uniform in [0, 1]."""
    rng = random.Random(seed)
    intervals = []
    for _ in range(n):
        a, b = rng.random(), rng.random()
        intervals.append((min(a, b), max(a, b)))
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if intervals[i][0] <= intervals[j][1] and intervals[j][0] <= intervals[i][1]
    ]
    return Graph.from_edges(n, edges)


def random_tree(n: int, seed: int | None = None) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)])


# -- serialization ----------------------------------------------------------

PALETTE = (
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
)


def _parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            values = [int(x) for x in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: expected integers, got {line!r}") from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise GraphError(f"line {lineno}: expected vertex count header, got {line!r}")
            n = values[0]
            continue
        if len(values) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = values
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex out of range [0, {n})")
        edges.append((u, v))
    if n is None:
        raise GraphError("missing vertex count header")
    return Graph.from_edges(n, edges)


def _parse_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or n is not None:
                raise GraphError(f"line {lineno}: bad problem line {line!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise GraphError(f"line {lineno}: bad problem line {line!r}") from None
        elif parts[0] == "e":
            if n is None:
                raise GraphError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: expected 'e u v', got {line!r}")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise GraphError(f"line {lineno}: expected integers, got {line!r}") from None
            if u == v:
                raise GraphError(f"line {lineno}: self-loop at vertex {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"line {lineno}: vertex out of range [1, {n}]")
            edges.append((u, v))
        else:
            raise GraphError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphError("missing 'p edge n m' line")
    return Graph.from_edges(n, edges)


def parse_graph(fmt: str, text: str) -> Graph:
    if fmt == "edge_list":
        return _parse_edge_list(text)
    if fmt == "dimacs":
        return _parse_dimacs(text)
    raise GraphError(f"cannot parse format {fmt!r}")


def sniff_format(text: str) -> str:
    """Guess ``dimacs`` vs ``edge_list`` from the first meaningful line."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        return "dimacs" if line[0] in "cpe" else "edge_list"
    return "edge_list"


def serialize_graph(fmt: str, g: Graph, coloring: Sequence[int] | None = None) -> str:
    if fmt == "edge_list":
        lines = [str(g.vertex_count)] + [f"{u} {v}" for u, v in g.edges()]
    elif fmt == "dimacs":
        lines = [f"p edge {g.vertex_count} {g.edge_count}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    elif fmt == "dot":
        lines = ["graph G {"]
        for v in range(g.vertex_count):
            if coloring is not None:
                fill = PALETTE[(coloring[v] - 1) % len(PALETTE)]
                lines.append(f'  {v} [label="{v}", style=filled, fillcolor="{fill}"];')
            else:
                lines.append(f'  {v} [label="{v}"];')
        lines += [f"  {u} -- {v};" for u, v in g.edges()]
        lines.append("}")
    else:
        raise GraphError(f"cannot serialize format {fmt!r}")
    return "\n".join(lines) + "\n"
