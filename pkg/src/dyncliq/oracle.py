"""Ground truth by brute force: exact clique enumeration on the true graph
and the acceptance predicates each task imposes on node outputs.

Also hosts the solver reductions (membership listing is the strongest task;
its outputs can be reinterpreted for the weaker ones without extra
communication).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .dyngraph import Graph, NodeId, ProblemSpec, Task

Clique = tuple[NodeId, ...]


class InvalidReduction(Exception):
    """Requested task reduction is not one of the supported arrows."""


def enumerate_cliques(g: Graph, s: int) -> frozenset[Clique]:
    """All s-cliques of g as sorted tuples, by combinatorial enumeration.

    Exponential in s; meant for desk-scale reference checks, not for the
    simulated algorithms themselves.
    """
    if s < 3:
        raise ValueError(f"clique size must be >= 3, got {s}")
    adj = g.adjacency()
    nodes = sorted(v for v in g.present if len(adj[v]) >= s - 1)
    out: set[Clique] = set()

    # Depth-first extension keeping the candidate set restricted to common
    # neighbors of everything chosen so far.
    def extend(chosen: list[NodeId], candidates: list[NodeId]) -> None:
        if len(chosen) == s:
            out.add(tuple(chosen))
            return
        need = s - len(chosen)
        for i, v in enumerate(candidates):
            if len(candidates) - i < need:
                break
            chosen.append(v)
            extend(chosen, [w for w in candidates[i + 1:] if w in adj[v]])
            chosen.pop()

    extend([], nodes)
    return frozenset(out)


def cliques_containing(cliques: frozenset[Clique], v: NodeId) -> frozenset[Clique]:
    return frozenset(c for c in cliques if v in c)


@dataclass(frozen=True)
class Violation:
    node: NodeId | None
    reason: str


@dataclass(frozen=True)
class Expectation:
    """Per-round acceptance predicate derived from the true graph."""

    task: Task
    cliques: frozenset[Clique]
    present: frozenset[NodeId]

    def check(self, outputs: dict[NodeId, object]) -> list[Violation]:
        """Compare node outputs against the predicate; empty list means pass."""
        bad: list[Violation] = []
        if self.task is Task.MEMLIST:
            for v in sorted(self.present):
                want = cliques_containing(self.cliques, v)
                got = outputs.get(v, frozenset())
                if got != want:
                    bad.append(Violation(v, f"memlist {sorted(got)} != {sorted(want)}"))
        elif self.task is Task.MEMDETECT:
            for v in sorted(self.present):
                want = any(v in c for c in self.cliques)
                got = bool(outputs.get(v, False))
                if got != want:
                    bad.append(Violation(v, f"memdetect {got} != {want}"))
        elif self.task is Task.LIST:
            union: set[Clique] = set()
            for v in sorted(self.present):
                got = outputs.get(v, frozenset())
                for c in got:
                    if c not in self.cliques:
                        bad.append(Violation(v, f"listed non-clique {c}"))
                union.update(got)
            missing = self.cliques - union
            if missing:
                bad.append(Violation(None, f"unlisted cliques {sorted(missing)}"))
        elif self.task is Task.DETECT:
            hits = [v for v in sorted(self.present) if outputs.get(v, False)]
            if self.cliques and not hits:
                bad.append(Violation(None, "no node detected an existing clique"))
            if not self.cliques and hits:
                bad.append(Violation(hits[0], "detection without any clique"))
        return bad


def expected_outputs(g: Graph, problem: ProblemSpec) -> Expectation:
    """Oracle expectation for one graph under the problem's task."""
    return Expectation(problem.task, enumerate_cliques(g, problem.s), g.present)


def verify_cliques_by_edges(g: Graph, s: int, cliques: frozenset[Clique]) -> bool:
    """Independent edge-by-edge check that every tuple induces K_s."""
    for c in cliques:
        if len(c) != s or list(c) != sorted(c):
            return False
        for a, b in combinations(c, 2):
            if not g.has_edge(a, b):
                return False
    return True


# ---------------------------------------------------------------------------
# Task reductions (membership listing is the top of the order)
# ---------------------------------------------------------------------------

REDUCTION_ARROWS = {
    (Task.MEMLIST, Task.MEMDETECT),
    (Task.MEMLIST, Task.LIST),
    (Task.MEMLIST, Task.DETECT),
    (Task.LIST, Task.DETECT),
    (Task.MEMDETECT, Task.DETECT),
}


def reduce_output(task_from: Task, task_to: Task, output: object) -> object:
    """Reinterpret a node output of task_from as an output for task_to."""
    if task_from is task_to:
        return output
    if (task_from, task_to) not in REDUCTION_ARROWS:
        raise InvalidReduction(f"{task_from.value} -> {task_to.value}")
    if task_from is Task.MEMLIST and task_to is Task.LIST:
        return output
    if task_to in (Task.MEMDETECT, Task.DETECT):
        if isinstance(output, frozenset | set):
            return bool(output)
        return bool(output)
    raise InvalidReduction(f"{task_from.value} -> {task_to.value}")


def reduce_solver(task_from: Task, task_to: Task, solver):
    """Wrap an automaton so its outputs answer the weaker task.

    Messages and state are untouched, so measured bandwidth is identical to
    the base solver's.  Implemented in algorithms.catalog to avoid a module
    cycle; this re-export keeps the reduction logic discoverable next to the
    arrows it validates.
    """
    from .algorithms.base import ReducedAutomaton

    if (task_from, task_to) not in REDUCTION_ARROWS:
        raise InvalidReduction(f"{task_from.value} -> {task_to.value}")
    return ReducedAutomaton(solver, task_from, task_to)
