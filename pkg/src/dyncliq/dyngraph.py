"""Dynamic-graph data model: graphs, topology changes, scenarios, and the
scenario file format.

A scenario fixes an ID universe of size ``n``, an initial graph, and an
ordered list of single-change events (one per round).  All operations here
are value-semantic: graphs are immutable and ``apply_change`` returns a new
graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

NodeId = int


class Task(enum.Enum):
    MEMLIST = "memlist"
    MEMDETECT = "memdetect"
    LIST = "list"
    DETECT = "detect"


class ChangeKind(enum.Enum):
    NOOP = "noop"
    EDGE_INSERT = "edge_insert"
    EDGE_DELETE = "edge_delete"
    NODE_INSERT = "node_insert"
    NODE_DELETE = "node_delete"


#: The four real change kinds (NoOp is always permitted and never listed).
REAL_CHANGES = (
    ChangeKind.EDGE_INSERT,
    ChangeKind.EDGE_DELETE,
    ChangeKind.NODE_INSERT,
    ChangeKind.NODE_DELETE,
)


class ScenarioError(Exception):
    """Base class for scenario construction/validation failures."""


class PreconditionViolation(ScenarioError):
    """A topology change is inapplicable to the graph it was applied to."""

    def __init__(self, change: "TopologyChange", reason: str, index: int | None = None):
        self.change = change
        self.reason = reason
        self.index = index
        at = f" at event {index}" if index is not None else ""
        super().__init__(f"{change}{at}: {reason}")


class AbsentNode(ScenarioError):
    """Queried a node that is not present in the graph."""


class ParseError(ScenarioError):
    """Scenario document is malformed."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


def edge(u: NodeId, v: NodeId) -> tuple[NodeId, NodeId]:
    """Canonical (sorted) endpoint pair for an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class TopologyChange:
    """One of NoOp / EdgeInsert(u,v) / EdgeDelete(u,v) / NodeInsert(v, attach)
    / NodeDelete(v)."""

    kind: ChangeKind
    u: NodeId | None = None
    v: NodeId | None = None
    attach: frozenset[NodeId] = frozenset()

    @staticmethod
    def noop() -> "TopologyChange":
        return TopologyChange(ChangeKind.NOOP)

    @staticmethod
    def edge_insert(u: NodeId, v: NodeId) -> "TopologyChange":
        a, b = edge(u, v)
        return TopologyChange(ChangeKind.EDGE_INSERT, a, b)

    @staticmethod
    def edge_delete(u: NodeId, v: NodeId) -> "TopologyChange":
        a, b = edge(u, v)
        return TopologyChange(ChangeKind.EDGE_DELETE, a, b)

    @staticmethod
    def node_insert(v: NodeId, attach: Iterable[NodeId] = ()) -> "TopologyChange":
        return TopologyChange(ChangeKind.NODE_INSERT, v=v, attach=frozenset(attach))

    @staticmethod
    def node_delete(v: NodeId) -> "TopologyChange":
        return TopologyChange(ChangeKind.NODE_DELETE, v=v)

    def __str__(self) -> str:
        k = self.kind
        if k is ChangeKind.NOOP:
            return "noop"
        if k in (ChangeKind.EDGE_INSERT, ChangeKind.EDGE_DELETE):
            return f"{k.value} {self.u} {self.v}"
        if k is ChangeKind.NODE_INSERT:
            ids = " ".join(str(a) for a in sorted(self.attach))
            return f"{k.value} {self.v}" + (f" {ids}" if ids else "")
        return f"{k.value} {self.v}"


@dataclass(frozen=True)
class Graph:
    """Undirected graph over the ID universe [0, n)."""

    n: int
    present: frozenset[NodeId] = frozenset()
    edges: frozenset[tuple[NodeId, NodeId]] = frozenset()

    def __post_init__(self):
        for v in self.present:
            if not (0 <= v < self.n):
                raise ScenarioError(f"node {v} outside ID universe [0, {self.n})")
        for a, b in self.edges:
            if a == b:
                raise ScenarioError(f"self-loop at {a}")
            if a > b:
                raise ScenarioError(f"non-canonical edge ({a}, {b})")
            if a not in self.present or b not in self.present:
                raise ScenarioError(f"edge ({a}, {b}) has absent endpoint")

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return edge(u, v) in self.edges

    def neighbors(self, v: NodeId) -> frozenset[NodeId]:
        return neighbor_view(self, v)

    def adjacency(self) -> dict[NodeId, set[NodeId]]:
        adj: dict[NodeId, set[NodeId]] = {v: set() for v in self.present}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def empty_graph(n: int, present: Iterable[NodeId] = ()) -> Graph:
    return Graph(n=n, present=frozenset(present))


def apply_change(g: Graph, c: TopologyChange) -> Graph:
    """Apply one topology change, or raise PreconditionViolation.

    NodeDelete removes all incident edges; NodeInsert adds the node plus all
    attachment edges atomically.
    """
    k = c.kind
    if k is ChangeKind.NOOP:
        return g
    if k is ChangeKind.EDGE_INSERT:
        if c.u not in g.present or c.v not in g.present:
            raise PreconditionViolation(c, "endpoint not present")
        if (c.u, c.v) in g.edges:
            raise PreconditionViolation(c, "edge already present")
        return Graph(g.n, g.present, g.edges | {(c.u, c.v)})
    if k is ChangeKind.EDGE_DELETE:
        if (c.u, c.v) not in g.edges:
            raise PreconditionViolation(c, "edge not present")
        return Graph(g.n, g.present, g.edges - {(c.u, c.v)})
    if k is ChangeKind.NODE_INSERT:
        if not (0 <= c.v < g.n):
            raise PreconditionViolation(c, "node outside ID universe")
        if c.v in g.present:
            raise PreconditionViolation(c, "node already present")
        missing = c.attach - g.present
        if missing:
            raise PreconditionViolation(c, f"attach nodes not present: {sorted(missing)}")
        new_edges = frozenset(edge(c.v, a) for a in c.attach)
        return Graph(g.n, g.present | {c.v}, g.edges | new_edges)
    if k is ChangeKind.NODE_DELETE:
        if c.v not in g.present:
            raise PreconditionViolation(c, "node not present")
        kept = frozenset(e for e in g.edges if c.v not in e)
        return Graph(g.n, g.present - {c.v}, kept)
    raise PreconditionViolation(c, f"unknown change kind {k}")


def neighbor_view(g: Graph, v: NodeId) -> frozenset[NodeId]:
    """Exact adjacency set of a present node."""
    if v not in g.present:
        raise AbsentNode(f"node {v} not present")
    out = set()
    for a, b in g.edges:
        if a == v:
            out.add(b)
        elif b == v:
            out.add(a)
    return frozenset(out)


@dataclass(frozen=True)
class ProblemSpec:
    """What is being solved: task, clique size, permitted changes, deadline r."""

    task: Task
    s: int = 3
    rounds: int = 1
    allowed_changes: frozenset[ChangeKind] = frozenset()

    def __post_init__(self):
        if self.s < 3:
            raise ScenarioError(f"clique size must be >= 3, got {self.s}")
        if self.rounds < 1:
            raise ScenarioError(f"rounds must be >= 1, got {self.rounds}")
        if ChangeKind.NOOP in self.allowed_changes:
            object.__setattr__(
                self, "allowed_changes", self.allowed_changes - {ChangeKind.NOOP}
            )


@dataclass(frozen=True)
class DynamicScenario:
    """Initial graph plus an ordered list of per-round changes.

    Event i occurs in round i+1 (rounds are 1-based; the initial graph is the
    settled state at round 0).
    """

    n: int
    initial: Graph
    events: tuple[TopologyChange, ...]
    problem: ProblemSpec
    name: str = ""

    def __post_init__(self):
        if self.initial.n != self.n:
            raise ScenarioError("initial graph universe differs from scenario n")
        object.__setattr__(self, "events", tuple(self.events))

    def validate(self) -> None:
        """Replay all events from the initial graph; raise on first failure."""
        g = self.initial
        for i, ev in enumerate(self.events):
            if ev.kind is not ChangeKind.NOOP and ev.kind not in self.problem.allowed_changes:
                raise PreconditionViolation(ev, "change kind not in allowed set", i)
            try:
                g = apply_change(g, ev)
            except PreconditionViolation as exc:
                raise PreconditionViolation(ev, exc.reason, i) from None

    def replay(self) -> list[Graph]:
        """Graph after each round: result[0] is the initial graph."""
        seq = [self.initial]
        g = self.initial
        for ev in self.events:
            g = apply_change(g, ev)
            seq.append(g)
        return seq

    def uses_reinsertion(self) -> bool:
        """True when a deleted node ID later returns (extension semantics)."""
        deleted: set[NodeId] = set()
        for ev in self.events:
            if ev.kind is ChangeKind.NODE_DELETE:
                deleted.add(ev.v)
            elif ev.kind is ChangeKind.NODE_INSERT and ev.v in deleted:
                return True
        return False


# ---------------------------------------------------------------------------
# Scenario file format
# ---------------------------------------------------------------------------
#
# Line-based text; tokens separated by whitespace; '#' starts a comment.
#
#   n 8
#   problem memlist s=3 r=1 changes=edge_insert,edge_delete
#   node 0 1 2 3
#   edge 0 1
#   event edge_insert 0 2
#   event noop
#   event node_insert 5 0 2        # insert 5 attached to {0, 2}
#   event node_delete 1
#
# Every scenario loaded through load_scenario is fully validated by replay.

_TASKS = {t.value: t for t in Task}
_KINDS = {k.value: k for k in ChangeKind}


def _parse_event(parts: Sequence[str], lineno: int) -> TopologyChange:
    kind = _KINDS.get(parts[0])
    if kind is None:
        raise ParseError(lineno, f"unknown event kind {parts[0]!r}")
    try:
        args = [int(p) for p in parts[1:]]
    except ValueError:
        raise ParseError(lineno, "event arguments must be integers") from None
    if kind is ChangeKind.NOOP:
        if args:
            raise ParseError(lineno, "noop takes no arguments")
        return TopologyChange.noop()
    if kind in (ChangeKind.EDGE_INSERT, ChangeKind.EDGE_DELETE):
        if len(args) != 2 or args[0] == args[1]:
            raise ParseError(lineno, f"{kind.value} needs two distinct endpoints")
        ctor = (
            TopologyChange.edge_insert
            if kind is ChangeKind.EDGE_INSERT
            else TopologyChange.edge_delete
        )
        return ctor(args[0], args[1])
    if kind is ChangeKind.NODE_INSERT:
        if not args:
            raise ParseError(lineno, "node_insert needs a node id")
        v, attach = args[0], args[1:]
        if v in attach or len(set(attach)) != len(attach):
            raise ParseError(lineno, "bad attach list")
        return TopologyChange.node_insert(v, attach)
    if len(args) != 1:
        raise ParseError(lineno, "node_delete needs exactly one node id")
    return TopologyChange.node_delete(args[0])


def load_scenario(text: str, name: str = "") -> DynamicScenario:
    """Parse and fully validate a scenario document."""
    n: int | None = None
    problem: ProblemSpec | None = None
    nodes: set[NodeId] = set()
    edges: set[tuple[NodeId, NodeId]] = set()
    events: list[TopologyChange] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(lineno, "expected: n <int>")
            n = int(parts[1])
        elif key == "problem":
            if len(parts) < 2 or parts[1] not in _TASKS:
                raise ParseError(lineno, f"unknown task in problem line")
            task = _TASKS[parts[1]]
            s, r = 3, 1
            allowed: set[ChangeKind] = set()
            for opt in parts[2:]:
                if opt.startswith("s="):
                    s = int(opt[2:])
                elif opt.startswith("r="):
                    r = int(opt[2:])
                elif opt.startswith("changes="):
                    for tok in opt[len("changes="):].split(","):
                        if not tok:
                            continue
                        if tok not in _KINDS or tok == "noop":
                            raise ParseError(lineno, f"unknown change kind {tok!r}")
                        allowed.add(_KINDS[tok])
                else:
                    raise ParseError(lineno, f"unknown problem option {opt!r}")
            try:
                problem = ProblemSpec(task, s, r, frozenset(allowed))
            except ScenarioError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif key == "node":
            try:
                nodes.update(int(p) for p in parts[1:])
            except ValueError:
                raise ParseError(lineno, "node ids must be integers") from None
        elif key == "edge":
            if len(parts) != 3:
                raise ParseError(lineno, "expected: edge <u> <v>")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "edge endpoints must be integers") from None
            if u == v:
                raise ParseError(lineno, "self-loop")
            edges.add(edge(u, v))
        elif key == "event":
            if len(parts) < 2:
                raise ParseError(lineno, "expected: event <kind> ...")
            events.append(_parse_event(parts[1:], lineno))
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")

    if n is None:
        raise ParseError(0, "missing 'n' line")
    if problem is None:
        raise ParseError(0, "missing 'problem' line")
    try:
        initial = Graph(n, frozenset(nodes), frozenset(edges))
        scenario = DynamicScenario(n, initial, tuple(events), problem, name=name)
        scenario.validate()
    except PreconditionViolation:
        raise
    except ScenarioError as exc:
        raise ParseError(0, str(exc)) from None
    return scenario


def dump_scenario(scenario: DynamicScenario) -> str:
    """Canonical serialization; load_scenario(dump_scenario(s)) round-trips."""
    p = scenario.problem
    changes = ",".join(sorted(k.value for k in p.allowed_changes))
    lines = [
        f"n {scenario.n}",
        f"problem {p.task.value} s={p.s} r={p.rounds} changes={changes}",
    ]
    present = sorted(scenario.initial.present)
    if present:
        lines.append("node " + " ".join(str(v) for v in present))
    for a, b in sorted(scenario.initial.edges):
        lines.append(f"edge {a} {b}")
    for ev in scenario.events:
        lines.append(f"event {ev}")
    return "\n".join(lines) + "\n"
