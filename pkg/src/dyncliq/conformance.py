"""Conformance suites: the machinery behind the acceptance criteria and the
`suite` CLI command.

The exhaustive check walks every event-type sequence of a fixed depth from
seeded initial graphs, instantiating each type with a deterministic concrete
change and sharing the simulation prefix along the tree.  The random suites
replay seeded scenarios per catalog entry.  Zero violations is the only
passing grade everywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .algorithms import catalog, instantiate
from .algorithms.base import AlgoContext, CatalogEntry
from .dyngraph import ChangeKind, DynamicScenario, Graph, ProblemSpec, Task, TopologyChange
from .engine import Simulation, iter_bits
from .generators import random_scenario
from .oracle import reduce_solver


@dataclass
class SuiteResult:
    name: str
    scenarios: int = 0
    rounds: int = 0
    max_bits: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def entry_problem(entry: CatalogEntry, s: int = 3, r: int | None = None) -> ProblemSpec:
    """The problem an entry is graded against, honoring parameterized s/r."""
    s_eff = entry.s if entry.s is not None else s
    r_eff = entry.r if entry.r is not None else (r or 1)
    if r is not None and entry.r is None:
        r_eff = r
    return ProblemSpec(entry.task, s_eff, r_eff, entry.allowed)


# ---------------------------------------------------------------------------
# Exhaustive small-scale walk
# ---------------------------------------------------------------------------


def _pick_changes(kind: ChangeKind, sim: Simulation, code: int,
                  count: int) -> list[TopologyChange]:
    """Up to `count` distinct deterministic instances of an applicable kind."""
    n = sim.n
    present = sim.present
    adj = sim.adj
    if kind is ChangeKind.NOOP:
        return [TopologyChange.noop()]
    if kind is ChangeKind.EDGE_INSERT:
        cands = [
            (a, b)
            for a in iter_bits(present)
            for b in iter_bits(present & ~((1 << (a + 1)) - 1))
            if not adj[a] >> b & 1
        ]
        ctor = TopologyChange.edge_insert
    elif kind is ChangeKind.EDGE_DELETE:
        cands = [
            (a, b)
            for a in iter_bits(present)
            for b in iter_bits(adj[a] & ~((1 << (a + 1)) - 1))
        ]
        ctor = TopologyChange.edge_delete
    elif kind is ChangeKind.NODE_DELETE:
        cands = list(iter_bits(present))
        ctor = TopologyChange.node_delete
    else:  # NODE_INSERT
        free = [v for v in range(n) if not present >> v & 1]
        if not free:
            return []
        members = list(iter_bits(present))
        out = []
        seen = set()
        for j in range(count):
            c = code + j * 2654435761
            v = free[c % len(free)]
            attach_bits = (c // max(1, len(free))) % (1 << len(members))
            key = (v, attach_bits)
            if key in seen:
                continue
            seen.add(key)
            attach = [m for i, m in enumerate(members) if attach_bits >> i & 1]
            out.append(TopologyChange.node_insert(v, attach))
        return out
    if not cands:
        return []
    step = max(1, len(cands) // count)
    picked = []
    seen_idx = set()
    for j in range(min(count, len(cands))):
        idx = (code + j * step) % len(cands)
        if idx in seen_idx:
            idx = (idx + 1) % len(cands)
        if idx in seen_idx:
            continue
        seen_idx.add(idx)
        arg = cands[idx]
        picked.append(ctor(*arg) if isinstance(arg, tuple) else ctor(arg))
    return picked


def exhaustive_check(
    name: str,
    n: int = 5,
    depth: int = 6,
    initials: int = 50,
    s: int = 3,
    r: int | None = None,
    check_reductions: bool = False,
    max_failures: int = 3,
) -> SuiteResult:
    """Walk every event-type sequence of the given depth per initial graph.

    Every tree node is one simulated round (prefixes shared via forking) and
    every deadline along the way is graded, so all shorter sequences are
    covered implicitly.  Each type in a sequence is instantiated with several
    distinct concrete changes when the entry's change alphabet is small.
    With check_reductions, every deadline also grades the same outputs
    reinterpreted for each weaker task (identical traffic by construction).
    """
    entry = catalog()[name]
    problem = entry_problem(entry, s=s, r=r)
    kinds = sorted(problem.allowed_changes, key=lambda k: k.value)
    per_kind = 3 if len(kinds) == 1 else (2 if len(kinds) == 2 else 1)
    arrows = tuple(reduction_arrows(entry.task)) if check_reductions else ()
    result = SuiteResult(name)

    with_node_ins = ChangeKind.NODE_INSERT in problem.allowed_changes
    for seed in range(initials):
        rng = random.Random((seed, n, "exhaustive"))
        density = 0.15 + 0.7 * (seed % 10) / 9
        # Leave free IDs when insertions are on the menu.
        frac = (0.3 + 0.4 * (seed % 3) / 2) if with_node_ins else 1.0
        g0 = _seeded_graph(n, rng, density, frac)
        shell = DynamicScenario(n, g0, (), problem, name=f"exh-{seed}")
        alg = instantiate(name, shell, delta=n - 1)
        root = Simulation(shell, alg, record_rounds=False, extra_tasks=arrows)
        result.scenarios += 1

        stack = [(root, depth, seed * 7919 + 13)]
        while stack:
            sim, remaining, code = stack.pop()
            options = [TopologyChange.noop()]
            for ki, kind in enumerate(kinds):
                options.extend(_pick_changes(kind, sim, code * 31 + ki, per_kind))
            for oi, change in enumerate(options):
                child = sim.fork()
                child.step_round(change)
                result.rounds += 1
                if child.report.max_bits > result.max_bits:
                    result.max_bits = child.report.max_bits
                if child.report.violations:
                    if len(result.failures) < max_failures:
                        rnd, kindname, details = child.report.violations[0]
                        result.failures.append(
                            f"seed={seed} round={rnd} after {change}: "
                            f"{kindname} {details}"
                        )
                    elif len(result.failures) == max_failures:
                        result.failures.append("...")
                    continue
                if remaining > 1:
                    stack.append((child, remaining - 1, code * 131 + oi + 1))
        if len(result.failures) > max_failures:
            break
    return result


def _seeded_graph(n: int, rng: random.Random, density: float,
                  present_frac: float = 1.0) -> Graph:
    if present_frac >= 1.0:
        nodes = list(range(n))
    else:
        nodes = [v for v in range(n) if rng.random() < present_frac]
    edges = frozenset(
        (a, b) for a, b in combinations(nodes, 2) if rng.random() < density
    )
    return Graph(n, frozenset(nodes), edges)


# ---------------------------------------------------------------------------
# Random medium-scale suites
# ---------------------------------------------------------------------------


def random_suite(
    name: str,
    n: int = 12,
    count: int = 200,
    events: int = 40,
    s: int = 3,
    r: int | None = None,
    seed0: int = 0,
    reduce_to: Task | None = None,
    check_reductions: bool = False,
    check: bool = True,
    max_failures: int = 3,
) -> SuiteResult:
    """Seeded random scenarios for one entry; zero violations to pass.

    reduce_to runs the wrapped reduced solver end to end (exercising the
    wrapper surface); check_reductions grades all weaker tasks in the same
    pass off the base solver's outputs.
    """
    entry = catalog()[name]
    problem = entry_problem(entry, s=s, r=r)
    if reduce_to is not None:
        problem = ProblemSpec(reduce_to, problem.s, problem.rounds,
                              problem.allowed_changes)
    arrows = tuple(reduction_arrows(entry.task)) if check_reductions else ()
    result = SuiteResult(name if reduce_to is None else f"{name}~{reduce_to.value}")
    tail = max(0, problem.rounds - 1)
    for i in range(count):
        sc = random_scenario(
            n, events, problem, seed=seed0 + i,
            density=0.2 + 0.5 * (i % 7) / 6, quiet_tail=tail,
        )
        alg = instantiate(name, sc)
        if reduce_to is not None:
            alg = reduce_solver(entry.task, reduce_to, alg)
        sim = Simulation(sc, alg, check=check, record_rounds=False,
                         extra_tasks=arrows)
        sim.run_scenario()
        result.scenarios += 1
        result.rounds += len(sc.events)
        if sim.report.max_bits > result.max_bits:
            result.max_bits = sim.report.max_bits
        if sim.report.violations:
            if len(result.failures) <= max_failures:
                rnd, kindname, details = sim.report.violations[0]
                result.failures.append(f"seed={seed0 + i} round={rnd}: {kindname} {details}")
            if len(result.failures) > max_failures:
                break
    return result


def reduction_arrows(task: Task) -> list[Task]:
    if task is Task.MEMLIST:
        return [Task.MEMDETECT, Task.LIST, Task.DETECT]
    if task in (Task.MEMDETECT, Task.LIST):
        return [Task.DETECT]
    return []
