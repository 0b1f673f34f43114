"""Chordal graph recognition by Lex-BFS and coloring along perfect elimination orders."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .coloring import Coloring, ColoringKind, WitnessReport, first_fit, verify
from .graph import Graph, GraphError


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]
    # later_neighbors[i]: neighbors of order[i] appearing after position i
    later_neighbors: tuple[tuple[int, ...], ...]

    @property
    def clique_number(self) -> int:
        return 1 + max((len(nb) for nb in self.later_neighbors), default=-1)


@dataclass(frozen=True)
class NotChordal:
    """A vertex whose later neighbors ``a`` and ``b`` are not adjacent."""

    vertex: int
    missing_edge: tuple[int, int]

    def as_dict(self) -> dict:
        return {"chordal": False, "vertex": self.vertex, "missing_edge": list(self.missing_edge)}


class NotChordalError(GraphError):
    def __init__(self, certificate: NotChordal):
        super().__init__(
            f"graph is not chordal: later neighbors {certificate.missing_edge} "
            f"of vertex {certificate.vertex} are not adjacent"
        )
        self.certificate = certificate


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS from vertex 0; ties go to the smallest id.

    Labels are lists of decreasing visit stamps, so Python list comparison is
    the lexicographic order we need. A new component starts when every
    remaining label is empty, again at the smallest id.
    """
    n = g.vertex_count
    if n == 0:
        raise GraphError("lex_bfs needs a non-empty graph")
    labels: list[list[int]] = [[] for _ in range(n)]
    visited = [False] * n
    order = []
    for stamp in range(n, 0, -1):
        v = max((u for u in range(n) if not visited[u]), key=lambda u: (labels[u], -u))
        visited[v] = True
        order.append(v)
        for u in g.adjacency[v]:
            if not visited[u]:
                labels[u].append(stamp)
    return order


def elimination_check(g: Graph, order: list[int]) -> EliminationOrder | NotChordal:
    """Brute-force PEO test: every vertex's later neighborhood must be a clique."""
    pos = {v: i for i, v in enumerate(order)}
    later = []
    for i, v in enumerate(order):
        nb = tuple(sorted((u for u in g.adjacency[v] if pos[u] > i), key=pos.__getitem__))
        for a, b in combinations(nb, 2):
            if not g.has_edge(a, b):
                return NotChordal(v, (a, b))
        later.append(nb)
    return EliminationOrder(tuple(order), tuple(later))


def perfect_elimination_order(g: Graph) -> EliminationOrder | NotChordal:
    return elimination_check(g, lex_bfs(g)[::-1])


def is_chordal(g: Graph) -> bool:
    return isinstance(perfect_elimination_order(g), EliminationOrder)


@dataclass(frozen=True)
class ChordalColoring:
    coloring: Coloring
    omega: int
    peo: EliminationOrder
    grundy: WitnessReport

    def as_dict(self) -> dict:
        return {
            "k": self.coloring.k,
            "omega": self.omega,
            "colors": list(self.coloring.colors),
            "peo": list(self.peo.order),
            "grundy_valid": self.grundy.valid,
        }


def chordal_color(g: Graph) -> ChordalColoring:
    """First-fit along the reverse of a perfect elimination order.

    Each vertex meets its earlier neighbors as a clique, so the coloring uses
    exactly omega colors. The Grundy status of the result is reported.
    """
    peo = perfect_elimination_order(g)
    if isinstance(peo, NotChordal):
        raise NotChordalError(peo)
    coloring = first_fit(g, list(reversed(peo.order)))
    return ChordalColoring(coloring, peo.clique_number, peo, verify(g, coloring, ColoringKind.GRUNDY))
