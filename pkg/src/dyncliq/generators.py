"""Seeded random scenario generation.

All randomness lives here: simulation itself is deterministic, so a
(parameters, seed) pair pins the produced scenario byte-for-byte.
"""

from __future__ import annotations

import random
from itertools import combinations

from .dyngraph import (
    ChangeKind,
    DynamicScenario,
    Graph,
    ProblemSpec,
    TopologyChange,
    apply_change,
    edge,
)


class BadParams(Exception):
    pass


def random_graph(n: int, rng: random.Random, density: float = 0.4,
                 present_frac: float = 1.0) -> Graph:
    nodes = [v for v in range(n) if rng.random() < present_frac]
    edges = set()
    for a, b in combinations(nodes, 2):
        if rng.random() < density:
            edges.add(edge(a, b))
    return Graph(n, frozenset(nodes), frozenset(edges))


def applicable_changes(g: Graph, kind: ChangeKind, rng: random.Random):
    """One uniformly chosen applicable change of this kind, or None."""
    present = sorted(g.present)
    if kind is ChangeKind.NOOP:
        return TopologyChange.noop()
    if kind is ChangeKind.EDGE_INSERT:
        absent = [
            (a, b) for a, b in combinations(present, 2) if (a, b) not in g.edges
        ]
        if not absent:
            return None
        return TopologyChange.edge_insert(*rng.choice(absent))
    if kind is ChangeKind.EDGE_DELETE:
        if not g.edges:
            return None
        return TopologyChange.edge_delete(*rng.choice(sorted(g.edges)))
    if kind is ChangeKind.NODE_DELETE:
        if not present:
            return None
        return TopologyChange.node_delete(rng.choice(present))
    if kind is ChangeKind.NODE_INSERT:
        free = [v for v in range(g.n) if v not in g.present]
        if not free:
            return None
        v = rng.choice(free)
        attach = [a for a in present if rng.random() < 0.5]
        return TopologyChange.node_insert(v, attach)
    raise BadParams(f"unknown change kind {kind}")


def random_scenario(
    n: int,
    events: int,
    problem: ProblemSpec,
    seed: int,
    density: float = 0.4,
    present_frac: float = 1.0,
    noop_weight: float = 1.0,
    quiet_tail: int = 0,
    name: str = "",
) -> DynamicScenario:
    """Scenario with seeded initial graph and uniformly drawn changes.

    Each round picks uniformly among the allowed kinds (NoOp weighted by
    noop_weight) and retries other kinds when the drawn one has no
    applicable instance.  quiet_tail appends NoOps so multi-round
    algorithms get graded at the end.
    """
    if events < 0:
        raise BadParams("negative event count")
    kinds = sorted(problem.allowed_changes, key=lambda k: k.value)
    if not kinds:
        raise BadParams("no allowed change kinds")
    rng = random.Random(seed)
    g = random_graph(n, rng, density=density, present_frac=present_frac)
    initial = g
    seq: list[TopologyChange] = []
    for _ in range(events):
        weights = [1.0] * len(kinds) + [noop_weight]
        options = kinds + [ChangeKind.NOOP]
        change = None
        while options:
            kind = rng.choices(options, weights=weights)[0]
            change = applicable_changes(g, kind, rng)
            if change is not None:
                break
            i = options.index(kind)
            del options[i], weights[i]
        if change is None:
            change = TopologyChange.noop()
        seq.append(change)
        g = apply_change(g, change)
    seq.extend(TopologyChange.noop() for _ in range(quiet_tail))
    scenario = DynamicScenario(n, initial, tuple(seq), problem,
                               name=name or f"random-n{n}-seed{seed}")
    scenario.validate()
    return scenario
