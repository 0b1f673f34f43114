"""Round-based simulation of self-stabilizing channel assignment in an ad hoc network.

Nodes sit in the plane and interfere when within radio range (closed ball).
Each round every node reads a snapshot of its neighbors' channels; unstable
nodes that have no unstable neighbor with a smaller id switch to the mex of
their neighbors' channels. Movers are therefore pairwise non-adjacent, and
the outcome does not depend on evaluation order.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence, Union

from .coloring import ColoringKind, WitnessReport, mex, verify
from .graph import Graph

RULES = ("strict_mex", "conflict_only")


class ScenarioError(ValueError):
    """Malformed scenario or an event whose preconditions do not hold."""


@dataclass(frozen=True)
class NodeRecord:
    id: int
    x: float
    y: float
    channel: int

    def as_dict(self) -> dict:
        return {"id": self.id, "x": self.x, "y": self.y, "channel": self.channel}


@dataclass(frozen=True)
class NetworkState:
    nodes: tuple[NodeRecord, ...]
    radio_range: float
    round: int = 0

    def __post_init__(self) -> None:
        ids = [nd.id for nd in self.nodes]
        if ids != sorted(set(ids)):
            raise ScenarioError("node ids must be unique (nodes are kept sorted by id)")
        for nd in self.nodes:
            if nd.channel < 1:
                raise ScenarioError(f"node {nd.id} has channel {nd.channel}; channels must be >= 1")
        if self.radio_range < 0:
            raise ScenarioError("radio range must be nonnegative")

    @classmethod
    def build(cls, nodes: Iterable[NodeRecord], radio_range: float, round: int = 0) -> NetworkState:
        return cls(tuple(sorted(nodes, key=lambda nd: nd.id)), radio_range, round)

    @property
    def ids(self) -> list[int]:
        return [nd.id for nd in self.nodes]

    @property
    def channels(self) -> list[int]:
        return [nd.channel for nd in self.nodes]

    def with_channels(self, channels: Sequence[int]) -> NetworkState:
        nodes = tuple(replace(nd, channel=c) for nd, c in zip(self.nodes, channels))
        return NetworkState(nodes, self.radio_range, self.round)


def interference_graph(state: NetworkState) -> Graph:
    """Unit disk graph; vertex i is the i-th node in id order."""
    nodes = state.nodes
    r = state.radio_range
    edges = [
        (i, j)
        for i in range(len(nodes))
        for j in range(i + 1, len(nodes))
        if math.dist((nodes[i].x, nodes[i].y), (nodes[j].x, nodes[j].y)) <= r
    ]
    return Graph.from_edges(len(nodes), edges)


# -- events -----------------------------------------------------------------

@dataclass(frozen=True)
class Join:
    id: int
    x: float
    y: float
    channel: int = 1


@dataclass(frozen=True)
class Leave:
    id: int


@dataclass(frozen=True)
class Move:
    id: int
    x: float
    y: float


@dataclass(frozen=True)
class SetRange:
    radio_range: float


@dataclass(frozen=True)
class Corrupt:
    seed: int


Action = Union[Join, Leave, Move, SetRange, Corrupt]


@dataclass(frozen=True)
class TopologyEvent:
    at_round: int
    action: Action


def apply_event(state: NetworkState, event: TopologyEvent | Action) -> NetworkState:
    """Apply one topology change. Surviving nodes keep their channels, except under Corrupt."""
    action = event.action if isinstance(event, TopologyEvent) else event
    ids = set(state.ids)
    if isinstance(action, Join):
        if action.id in ids:
            raise ScenarioError(f"join: node {action.id} already present")
        node = NodeRecord(action.id, action.x, action.y, action.channel)
        return NetworkState.build(state.nodes + (node,), state.radio_range, state.round)
    if isinstance(action, Leave):
        if action.id not in ids:
            raise ScenarioError(f"leave: node {action.id} not present")
        nodes = tuple(nd for nd in state.nodes if nd.id != action.id)
        return NetworkState(nodes, state.radio_range, state.round)
    if isinstance(action, Move):
        if action.id not in ids:
            raise ScenarioError(f"move: node {action.id} not present")
        nodes = tuple(
            replace(nd, x=action.x, y=action.y) if nd.id == action.id else nd for nd in state.nodes
        )
        return NetworkState(nodes, state.radio_range, state.round)
    if isinstance(action, SetRange):
        return NetworkState(state.nodes, action.radio_range, state.round)
    if isinstance(action, Corrupt):
        top = interference_graph(state).max_degree + 2
        rng = random.Random(action.seed)
        return state.with_channels([rng.randint(1, top) for _ in state.nodes])
    raise ScenarioError(f"unknown action {action!r}")


# -- rounds -----------------------------------------------------------------

@dataclass(frozen=True)
class RoundMetrics:
    round: int
    moves: int
    conflicts: int
    messages: int
    colors_in_use: int
    stable: bool

    def as_row(self) -> list:
        return [self.round, self.moves, self.conflicts, self.messages, self.colors_in_use,
                "true" if self.stable else "false"]


def unstable_nodes(g: Graph, channels: Sequence[int], rule: str) -> list[int]:
    """Vertex indices whose activation predicate holds under ``rule``."""
    if rule == "strict_mex":
        return [v for v in range(g.vertex_count)
                if channels[v] != mex(channels[u] for u in g.adjacency[v])]
    if rule == "conflict_only":
        return [v for v in range(g.vertex_count)
                if any(channels[u] == channels[v] for u in g.adjacency[v])]
    raise ScenarioError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")


def movers(g: Graph, channels: Sequence[int], rule: str) -> list[int]:
    """Unstable vertices with no unstable neighbor of smaller index."""
    unstable = unstable_nodes(g, channels, rule)
    flagged = set(unstable)
    return [v for v in unstable if not any(u < v and u in flagged for u in g.adjacency[v])]


def step(state: NetworkState, rule: str) -> tuple[NetworkState, RoundMetrics]:
    g = interference_graph(state)
    snap = state.channels
    moving = movers(g, snap, rule)
    new = list(snap)
    for v in moving:
        new[v] = mex(snap[u] for u in g.adjacency[v])
    metrics = RoundMetrics(
        round=state.round + 1,
        moves=len(moving),
        conflicts=sum(1 for u, v in g.edges() if snap[u] == snap[v]),
        messages=2 * g.edge_count,
        colors_in_use=len(set(snap)),
        stable=not moving,
    )
    nxt = state.with_channels(new)
    return NetworkState(nxt.nodes, nxt.radio_range, state.round + 1), metrics


# -- scenarios --------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    nodes: tuple[NodeRecord, ...]
    radio_range: float
    events: tuple[TopologyEvent, ...] = ()
    rule: str = "strict_mex"
    max_rounds: int = 1000
    seed: int = 0

    def validate(self) -> None:
        if self.rule not in RULES:
            raise ScenarioError(f"unknown rule {self.rule!r}; expected one of {', '.join(RULES)}")
        if self.max_rounds < 1:
            raise ScenarioError("max_rounds must be >= 1")
        rounds = [e.at_round for e in self.events]
        if any(r < 0 for r in rounds):
            raise ScenarioError("event rounds must be >= 0")
        if rounds != sorted(rounds):
            raise ScenarioError("events must be sorted by round")
        if rounds and rounds[-1] >= self.max_rounds:
            raise ScenarioError(f"event at round {rounds[-1]} is beyond max_rounds={self.max_rounds}")
        # replay membership so bad joins/leaves fail before anything runs
        state = NetworkState.build(self.nodes, self.radio_range)
        present = set(state.ids)
        for e in self.events:
            a = e.action
            if isinstance(a, Join):
                if a.id in present:
                    raise ScenarioError(f"round {e.at_round}: join of existing node {a.id}")
                if a.channel < 1:
                    raise ScenarioError(f"round {e.at_round}: join channel must be >= 1")
                present.add(a.id)
            elif isinstance(a, (Leave, Move)):
                if a.id not in present:
                    raise ScenarioError(f"round {e.at_round}: node {a.id} not present")
                if isinstance(a, Leave):
                    present.discard(a.id)
            elif isinstance(a, SetRange) and a.radio_range < 0:
                raise ScenarioError(f"round {e.at_round}: radio range must be nonnegative")


@dataclass(frozen=True)
class Epoch:
    """Stretch of rounds starting at ``start`` (0 or an event round)."""

    start: int  # rounds completed when the epoch opened
    node_count: int
    max_degree: int
    settled_after: int | None = None  # rounds until the first stable round, inclusive


@dataclass(frozen=True)
class RunResult:
    trace: list[RoundMetrics]
    final: NetworkState
    converged: bool
    epochs: list[Epoch] = field(default_factory=list)
    reports: dict[str, WitnessReport] = field(default_factory=dict)


def run(scenario: Scenario) -> RunResult:
    scenario.validate()
    state = NetworkState.build(scenario.nodes, scenario.radio_range)
    pending = list(scenario.events)
    trace: list[RoundMetrics] = []
    epochs: list[Epoch] = []
    converged = False

    def open_epoch() -> None:
        g = interference_graph(state)
        epochs.append(Epoch(state.round, g.vertex_count, g.max_degree))

    open_epoch()
    while len(trace) < scenario.max_rounds:
        fired = False
        while pending and pending[0].at_round == state.round:
            state = apply_event(state, pending.pop(0))
            fired = True
        if fired:
            open_epoch()
        state, metrics = step(state, scenario.rule)
        trace.append(metrics)
        last = epochs[-1]
        if metrics.stable and last.settled_after is None:
            epochs[-1] = replace(last, settled_after=metrics.round - last.start)
        if metrics.stable and not pending:
            converged = True
            break

    g = interference_graph(state)
    reports = {kind.value: verify(g, state.channels, kind) for kind in ColoringKind} if state.nodes else {}
    return RunResult(trace, state, converged, epochs, reports)


# -- JSON / CSV -------------------------------------------------------------

def _action_from_dict(d: dict) -> Action:
    kind = d.get("type")
    try:
        if kind == "join":
            return Join(int(d["id"]), float(d["x"]), float(d["y"]), int(d.get("channel", 1)))
        if kind == "leave":
            return Leave(int(d["id"]))
        if kind == "move":
            return Move(int(d["id"]), float(d["x"]), float(d["y"]))
        if kind == "set_range":
            return SetRange(float(d["range"]))
        if kind == "corrupt":
            return Corrupt(int(d["seed"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad {kind} action {d!r}: {exc}") from None
    raise ScenarioError(f"unknown action type {kind!r}")


def _action_to_dict(a: Action) -> dict:
    if isinstance(a, Join):
        return {"type": "join", "id": a.id, "x": a.x, "y": a.y, "channel": a.channel}
    if isinstance(a, Leave):
        return {"type": "leave", "id": a.id}
    if isinstance(a, Move):
        return {"type": "move", "id": a.id, "x": a.x, "y": a.y}
    if isinstance(a, SetRange):
        return {"type": "set_range", "range": a.radio_range}
    return {"type": "corrupt", "seed": a.seed}


def scenario_from_dict(d: dict) -> Scenario:
    try:
        nodes = tuple(
            NodeRecord(int(n["id"]), float(n["x"]), float(n["y"]), int(n.get("channel", 1)))
            for n in d["nodes"]
        )
        events = tuple(
            TopologyEvent(int(e["round"]), _action_from_dict(e["action"])) for e in d.get("events", [])
        )
        scenario = Scenario(
            nodes=nodes,
            radio_range=float(d["range"]),
            events=events,
            rule=str(d.get("rule", "strict_mex")),
            max_rounds=int(d.get("max_rounds", 1000)),
            seed=int(d.get("seed", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed scenario: {exc}") from None
    try:
        NetworkState.build(scenario.nodes, scenario.radio_range)
    except ScenarioError as exc:
        raise ScenarioError(f"malformed scenario: {exc}") from None
    scenario.validate()
    return scenario


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "range": s.radio_range,
        "rule": s.rule,
        "max_rounds": s.max_rounds,
        "seed": s.seed,
        "nodes": [n.as_dict() for n in s.nodes],
        "events": [{"round": e.at_round, "action": _action_to_dict(e.action)} for e in s.events],
    }


TRACE_HEADER = ["round", "moves", "conflicts", "messages", "colors_in_use", "stable"]


def trace_csv(trace: Iterable[RoundMetrics]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for m in trace:
        writer.writerow(m.as_row())
    return buf.getvalue()


def result_to_dict(result: RunResult) -> dict:
    return {
        "converged": result.converged,
        "round": result.final.round,
        "range": result.final.radio_range,
        "nodes": [n.as_dict() for n in result.final.nodes],
        "epochs": [e.__dict__ for e in result.epochs],
        "reports": {k: r.as_dict() for k, r in result.reports.items()},
    }


# -- random scenarios -------------------------------------------------------

def random_scenario(
    n: int,
    seed: int,
    side: float = 100.0,
    degree_window: tuple[float, float] = (2.0, 6.0),
    rule: str = "strict_mex",
    max_channel: int = 20,
) -> Scenario:
    """Uniform positions in a square; radio range bisected so the mean degree
    lands on a seeded target inside ``degree_window``."""
    if n < 2:
        raise ScenarioError("random scenarios need at least two nodes")
    rng = random.Random(seed)
    pts = [(round(rng.uniform(0, side), 3), round(rng.uniform(0, side), 3)) for _ in range(n)]
    lo_deg, hi_deg = degree_window
    target = rng.uniform(lo_deg + 0.5, hi_deg - 0.5)
    dists = sorted(math.dist(pts[i], pts[j]) for i in range(n) for j in range(i + 1, n))
    # mean degree with range r is 2 * #(pairs within r) / n
    want = max(1, min(len(dists), round(target * n / 2)))
    radio_range = dists[want - 1]
    nodes = tuple(NodeRecord(i, x, y, rng.randint(1, max_channel)) for i, (x, y) in enumerate(pts))
    return Scenario(nodes, radio_range, (), rule, max_rounds=max(10, n * n), seed=seed)


def mean_degree(state: NetworkState) -> float:
    g = interference_graph(state)
    return 2 * g.edge_count / g.vertex_count if g.vertex_count else 0.0
