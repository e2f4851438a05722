"""Automaton interface, catalog registry, and shared field-width helpers.

An automaton is a deterministic per-node protocol.  The engine drives it in
two phases per round: ``emit`` produces one message per current neighbor from
the pre-round state plus the observed neighbor sets, then ``absorb`` consumes
the round's inbox, updates state, and yields the node's output.  Splitting
the phases makes message causality structural: an outbox can never depend on
the same round's inbox.

Neighbor sets cross this interface as bitmasks (bit v = node v) because the
engine and the exhaustive test harnesses step automatons millions of times.
``step_node`` offers the set-based, value-semantic veneer over the same
machinery for direct use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..bitio import BitMessage, MalformedInbox  # noqa: F401  (re-export)
from ..dyngraph import ChangeKind, DynamicScenario, NodeId, ProblemSpec, Task
from ..engine import iter_bits, mask_of
from ..oracle import reduce_output


class UnknownAlgorithm(Exception):
    pass


def id_width(n: int) -> int:
    """Bits needed to name one of n IDs."""
    return max(1, (n - 1).bit_length())


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass
class AlgoContext:
    """Everything an automaton may be parameterized by."""

    n: int
    s: int
    r: int
    delta: int
    initial_adj: tuple[int, ...]
    initial_present: int

    @staticmethod
    def from_scenario(scenario: DynamicScenario, delta: int | None = None) -> "AlgoContext":
        adj = [0] * scenario.n
        for a, b in scenario.initial.edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        if delta is None:
            delta = max_degree(scenario)
        return AlgoContext(
            n=scenario.n,
            s=scenario.problem.s,
            r=scenario.problem.rounds,
            delta=delta,
            initial_adj=tuple(adj),
            initial_present=mask_of(scenario.initial.present),
        )


def max_degree(scenario: DynamicScenario) -> int:
    """Max degree over the whole graph sequence (replay)."""
    best = 0
    for g in scenario.replay():
        adj = g.adjacency()
        for v in g.present:
            if len(adj[v]) > best:
                best = len(adj[v])
    return best


class Automaton:
    """Base class; subclasses fill in the protocol."""

    name = "?"
    task: Task = Task.MEMLIST
    allowed: frozenset[ChangeKind] = frozenset()
    r = 1

    def __init__(self, ctx: AlgoContext):
        self.ctx = ctx
        self.n = ctx.n
        self.s = ctx.s

    def supports(self, problem: ProblemSpec) -> bool:
        if problem.task is not self.task:
            return False
        if problem.s != self.s:
            return False
        if not problem.allowed_changes <= self.allowed:
            return False
        return problem.rounds >= self.r

    def budget(self) -> int:
        raise NotImplementedError

    def init_state(self, v: NodeId, fresh: bool, rnd: int):
        raise NotImplementedError

    def clone_state(self, st):
        return st.clone()

    def emit(self, st, v: NodeId, prev: int, now: int, rnd: int) -> dict[NodeId, BitMessage]:
        raise NotImplementedError

    def absorb(self, st, v, prev, now, rnd, inbox: dict[NodeId, BitMessage]):
        raise NotImplementedError


class ReducedAutomaton(Automaton):
    """Same messages and state as the base solver; outputs reinterpreted for
    a weaker task."""

    def __init__(self, base: Automaton, task_from: Task, task_to: Task):
        self.base = base
        self.ctx = base.ctx
        self.n = base.n
        self.s = base.s
        self.task = task_to
        self.task_from = task_from
        self.allowed = base.allowed
        self.r = base.r
        self.name = f"{base.name}~{task_to.value}"

    def supports(self, problem: ProblemSpec) -> bool:
        if problem.task is not self.task:
            return False
        if problem.s != self.s:
            return False
        if not problem.allowed_changes <= self.allowed:
            return False
        return problem.rounds >= self.r

    def budget(self) -> int:
        return self.base.budget()

    def init_state(self, v, fresh, rnd):
        return self.base.init_state(v, fresh, rnd)

    def clone_state(self, st):
        return self.base.clone_state(st)

    def emit(self, st, v, prev, now, rnd):
        return self.base.emit(st, v, prev, now, rnd)

    def absorb(self, st, v, prev, now, rnd, inbox):
        out = self.base.absorb(st, v, prev, now, rnd, inbox)
        return reduce_output(self.task_from, self.task, out)


@dataclass(frozen=True)
class CatalogEntry:
    """One registered algorithm with its declared contract."""

    name: str
    task: Task
    s: int | None  # None: clique size taken from the problem (any s >= 3)
    allowed: frozenset[ChangeKind]
    r: int | None  # None: deadline parameter taken from the problem
    budget_doc: str
    budget_fn: Callable[[int, int, int], int]  # (n, r, delta) -> bits
    factory: Callable[[AlgoContext], Automaton]

    def budget(self, n: int, r: int = 1, delta: int = 0) -> int:
        return self.budget_fn(n, r, delta)


_REGISTRY: dict[str, CatalogEntry] = {}


def register(entry: CatalogEntry) -> CatalogEntry:
    if entry.name in _REGISTRY:
        raise ValueError(f"duplicate catalog entry {entry.name}")
    _REGISTRY[entry.name] = entry
    return entry


def catalog() -> dict[str, CatalogEntry]:
    from . import _load_all  # noqa: F401  (populates the registry)

    _load_all()
    return dict(_REGISTRY)


def get_entry(name: str) -> CatalogEntry:
    entries = catalog()
    if name not in entries:
        raise UnknownAlgorithm(name)
    return entries[name]


def instantiate(name: str, scenario: DynamicScenario, delta: int | None = None) -> Automaton:
    """Build the named automaton parameterized for this scenario."""
    entry = get_entry(name)
    ctx = AlgoContext.from_scenario(scenario, delta)
    return entry.factory(ctx)


def budget(name: str, n: int, r: int = 1, delta: int = 0) -> int:
    """Closed-form per-message bit budget of a catalog entry."""
    return get_entry(name).budget(n, r, delta)


def step_node(
    automaton: Automaton,
    state,
    prev_neighbors: set[NodeId],
    now_neighbors: set[NodeId],
    inbox: dict[NodeId, BitMessage],
    node: NodeId,
    rnd: int,
):
    """Pure one-round step: (state', outbox, output).

    The outbox is computed before the inbox is consulted, mirroring the
    engine's phase order; the input state is not mutated.
    """
    st = automaton.clone_state(state)
    prev = mask_of(prev_neighbors)
    now = mask_of(now_neighbors)
    outbox = automaton.emit(st, node, prev, now, rnd)
    output = automaton.absorb(st, node, prev, now, rnd, inbox)
    return st, outbox, output


def triangles_of_mask(u: NodeId, nbr_mask: int, has_pair) -> frozenset[tuple]:
    """Sorted 3-tuples (u,v,w) over neighbor pairs accepted by has_pair."""
    nbrs = list(iter_bits(nbr_mask))
    out = []
    for i, v in enumerate(nbrs):
        for w in nbrs[i + 1:]:
            if has_pair(v, w):
                out.append(tuple(sorted((u, v, w))))
    return frozenset(out)


def cliques_of_mask(u: NodeId, nbr_mask: int, has_pair, s: int) -> frozenset[tuple]:
    """Sorted s-tuples: u plus every (s-1)-clique of its neighbor link graph.

    The link graph has u's neighbors as vertices and has_pair as adjacency;
    a clique there plus u is a clique of the believed graph.
    """
    if s == 3:
        return triangles_of_mask(u, nbr_mask, has_pair)
    nbrs = list(iter_bits(nbr_mask))
    out: list[tuple] = []

    def extend(chosen: list[NodeId], cands: list[NodeId]) -> None:
        if len(chosen) == s - 1:
            out.append(tuple(sorted([u, *chosen])))
            return
        need = s - 1 - len(chosen)
        for i, v in enumerate(cands):
            if len(cands) - i < need:
                break
            chosen.append(v)
            extend(chosen, [w for w in cands[i + 1:] if has_pair(v, w)])
            chosen.pop()

    extend([], nbrs)
    return frozenset(out)


class PairBeliefs:
    """Per-node belief map about edges elsewhere in the graph.

    Tracks (exists, as-of round) per pair on top of the known initial graph.
    A belief is only trusted when some witnessing endpoint has been watched
    continuously since the fact was current: ``watch[x]`` is the start of
    the owner's present adjacency stretch with x (0 for initial neighbors,
    absent entirely while x is not adjacent).  ``mode`` picks the witness
    rule: "min" when one watched endpoint reports pair events (protocols
    that name IDs), "max" when deductions need both endpoints observed
    (flag-only protocols).
    """

    NEVER = 1 << 60

    __slots__ = ("n", "initial", "facts", "watch", "use_min")

    def __init__(self, n: int, initial_adj, mode: str, watch0: int = 0):
        self.n = n
        self.initial = initial_adj
        self.facts: dict[int, tuple[bool, int]] = {}
        self.watch: dict[int, int] = {x: 0 for x in _bits(watch0)}
        self.use_min = mode == "min"

    def clone(self) -> "PairBeliefs":
        twin = object.__new__(PairBeliefs)
        twin.n = self.n
        twin.initial = self.initial
        twin.facts = dict(self.facts)
        twin.watch = dict(self.watch)
        twin.use_min = self.use_min
        return twin

    def note_join(self, x: NodeId, rnd: int) -> None:
        self.watch[x] = rnd

    def note_loss(self, x: NodeId) -> None:
        self.watch.pop(x, None)

    def set(self, a: NodeId, b: NodeId, val: bool, asof: int) -> None:
        if a > b:
            a, b = b, a
        key = a * self.n + b
        cur = self.facts.get(key)
        if cur is None or asof >= cur[1]:
            self.facts[key] = (val, asof)

    def raw(self, a: NodeId, b: NodeId) -> tuple[bool, int]:
        if a > b:
            a, b = b, a
        e = self.facts.get(a * self.n + b)
        if e is None:
            return (self.initial[a] >> b & 1) == 1, 0
        return e

    def get(self, a: NodeId, b: NodeId):
        """(value or None-if-unknown, as-of)."""
        val, asof = self.raw(a, b)
        ja = self.watch.get(a, self.NEVER)
        jb = self.watch.get(b, self.NEVER)
        need = min(ja, jb) if self.use_min else max(ja, jb)
        if asof < need:
            return None, asof
        return val, asof

    def is_true(self, a: NodeId, b: NodeId) -> bool:
        return self.get(a, b)[0] is True


def _bits(mask: int):
    return iter_bits(mask)
