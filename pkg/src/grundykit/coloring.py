"""First-fit coloring, witness verification and cheap parameter bounds.

Colors are 1-based throughout: ``mex`` is the smallest positive integer absent
from a set, so an isolated vertex always receives color 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .graph import Graph, GraphError


class ColoringKind(str, Enum):
    PROPER = "proper"
    GRUNDY = "grundy"
    PARTIAL_GRUNDY = "partial_grundy"
    B_COLORING = "b_coloring"


class MalformedColoringError(ValueError):
    """The coloring does not cover the graph or uses a non-positive color."""


class LimitExceeded(ValueError):
    """An exhaustive computation was asked to run past its configured size limit."""


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        for v, c in enumerate(self.colors):
            if not isinstance(c, int) or c < 1:
                raise MalformedColoringError(f"vertex {v} has color {c!r}; colors must be >= 1")

    @classmethod
    def of(cls, colors: Iterable[int]) -> Coloring:
        return cls(tuple(colors))

    @property
    def k(self) -> int:
        return max(self.colors, default=0)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return dict(sorted(out.items()))

    def __len__(self) -> int:
        return len(self.colors)


@dataclass(frozen=True)
class Counterexample:
    """Either a monochromatic ``edge`` or a (vertex or class, missing color) pair."""

    edge: tuple[int, int] | None = None
    vertex: int | None = None
    color_class: int | None = None
    missing_color: int | None = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass(frozen=True)
class WitnessReport:
    valid: bool
    kind: ColoringKind
    k: int
    witnesses: dict[int, list[int]] = field(default_factory=dict)
    counterexample: Counterexample | None = None

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "kind": self.kind.value,
            "k": self.k,
            "witnesses": {str(c): vs for c, vs in self.witnesses.items()},
            "counterexample": None if self.counterexample is None else self.counterexample.as_dict(),
        }


def mex(values: Iterable[int]) -> int:
    seen = set(values)
    c = 1
    while c in seen:
        c += 1
    return c


def check_order(g: Graph, order: Sequence[int]) -> list[int]:
    order = list(order)
    if sorted(order) != list(range(g.vertex_count)):
        raise GraphError(f"order must be a permutation of 0..{g.vertex_count - 1}")
    return order


def first_fit(g: Graph, order: Sequence[int]) -> Coloring:
    """Color vertices in ``order``, each with the mex of its colored neighbors."""
    order = check_order(g, order)
    colors = [0] * g.vertex_count
    for v in order:
        colors[v] = mex(colors[u] for u in g.adjacency[v] if colors[u])
    return Coloring(tuple(colors))


def _as_colors(g: Graph, c: Coloring | Sequence[int]) -> tuple[int, ...]:
    colors = c.colors if isinstance(c, Coloring) else tuple(c)
    if len(colors) != g.vertex_count:
        raise MalformedColoringError(
            f"coloring has {len(colors)} entries for {g.vertex_count} vertices"
        )
    Coloring(colors)
    return colors


def verify(g: Graph, c: Coloring | Sequence[int], kind: ColoringKind | str) -> WitnessReport:
    kind = ColoringKind(kind)
    colors = _as_colors(g, c)
    k = max(colors, default=0)

    def fail(cx: Counterexample) -> WitnessReport:
        return WitnessReport(False, kind, k, {}, cx)

    for u, v in g.edges():
        if colors[u] == colors[v]:
            return fail(Counterexample(edge=(u, v)))
    if kind is ColoringKind.PROPER:
        return WitnessReport(True, kind, k)

    used = set(colors)
    for j in range(1, k + 1):
        if j not in used:
            return fail(Counterexample(missing_color=j))

    nbr_colors = [{colors[u] for u in g.adjacency[v]} for v in range(g.vertex_count)]
    classes: dict[int, list[int]] = {i: [] for i in range(1, k + 1)}
    for v, col in enumerate(colors):
        classes[col].append(v)

    def missing(v: int, wanted: Iterable[int]) -> int | None:
        return next((j for j in wanted if j not in nbr_colors[v]), None)

    witnesses: dict[int, list[int]] = {}
    if kind is ColoringKind.GRUNDY:
        for i, members in classes.items():
            for v in members:
                j = missing(v, range(1, i))
                if j is not None:
                    return fail(Counterexample(vertex=v, missing_color=j))
            witnesses[i] = list(members)
        return WitnessReport(True, kind, k, witnesses)

    for i, members in classes.items():
        if kind is ColoringKind.PARTIAL_GRUNDY:
            wanted = range(1, i)
        else:
            wanted = [j for j in range(1, k + 1) if j != i]
        good = [v for v in members if missing(v, wanted) is None]
        if not good:
            return fail(Counterexample(color_class=i, missing_color=missing(members[0], wanted)))
        witnesses[i] = good
    return WitnessReport(True, kind, k, witnesses)


# -- bounds -----------------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    max_degree_plus_one: int
    clique_lower: int
    m_degree: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def m_degree(g: Graph) -> int:
    """Largest ``i`` such that at least ``i`` vertices have degree >= i - 1."""
    m = 0
    for i, d in enumerate(sorted(g.degrees(), reverse=True), start=1):
        if d >= i - 1:
            m = i
        else:
            break
    return m


def greedy_clique(g: Graph) -> list[int]:
    """Maximal clique grown from a max-degree vertex, high-degree candidates first."""
    if g.vertex_count == 0:
        return []
    degs = g.degrees()
    start = min(range(g.vertex_count), key=lambda v: (-degs[v], v))
    clique = [start]
    for v in sorted(g.adjacency[start], key=lambda v: (-degs[v], v)):
        if all(g.has_edge(v, u) for u in clique):
            clique.append(v)
    return clique


def parameter_bounds(g: Graph) -> BoundsReport:
    if g.vertex_count == 0:
        raise GraphError("bounds need a non-empty graph")
    return BoundsReport(g.max_degree + 1, len(greedy_clique(g)), m_degree(g))


# -- prescribed Grundy number -----------------------------------------------

DEFAULT_TREE_LIMIT = 16


def binomial_tree(k: int, limit: int = DEFAULT_TREE_LIMIT) -> tuple[Graph, Coloring]:
    """Binomial tree T_k on 2**(k-1) vertices with a Grundy coloring using k colors.

    T_k joins the roots of two copies of T_{k-1}; the first copy's root becomes
    the root and is recolored k. Root is vertex 0.
    """
    if k < 1:
        raise GraphError(f"binomial tree order must be >= 1, got {k}")
    if k > limit:
        raise LimitExceeded(f"binomial tree order {k} exceeds limit {limit}")
    edges: list[tuple[int, int]] = []
    colors = [1]
    for order in range(2, k + 1):
        half = len(colors)
        edges = edges + [(u + half, v + half) for u, v in edges] + [(0, half)]
        colors = [order] + colors[1:] + colors
    return Graph.from_edges(len(colors), edges), Coloring(tuple(colors))
