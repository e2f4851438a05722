"""Round-synchronous executor.

Each round: (1) the round's topology change is applied; (2) every present
node observes its previous and current neighbor sets -- it gets no other
indication of the change; (3) every node emits one bit-message per current
neighbor, computed before any of this round's messages are seen; (4) messages
are delivered along edges of the post-change graph; (5) nodes update state
and produce outputs.  At deadline rounds the outputs are compared against the
brute-force oracle, and every message ever sent is metered against the
declared budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle
from .bitio import BitMessage
from .dyngraph import (
    ChangeKind,
    DynamicScenario,
    Graph,
    NodeId,
    Task,
    TopologyChange,
)


class UnsupportedProblem(Exception):
    """Algorithm does not support the scenario's problem declaration."""


def iter_bits(mask: int):
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids) -> int:
    m = 0
    for v in ids:
        m |= 1 << v
    return m


def deadline_rounds(scenario: DynamicScenario) -> set[int]:
    """Rounds whose outputs the checker inspects (1-based).

    For r=1 every round is a deadline.  For r>=2, round i is a deadline iff
    events i-r+2 .. i are all NoOp: the last real change happened early
    enough that r communication rounds (counting its own round) have passed.
    """
    r = scenario.problem.rounds
    events = scenario.events
    out: set[int] = set()
    if r == 1:
        return set(range(1, len(events) + 1))
    quiet = 0  # consecutive trailing NoOps, including current round
    for i, ev in enumerate(events, start=1):
        quiet = quiet + 1 if ev.kind is ChangeKind.NOOP else 0
        if quiet >= min(r - 1, i):
            out.add(i)
    return out


def meter(sent: dict[tuple[NodeId, NodeId], BitMessage]) -> tuple[int, int]:
    """(max bits, total bits) over one round's messages."""
    mx = tot = 0
    for msg in sent.values():
        if msg.length > mx:
            mx = msg.length
        tot += msg.length
    return mx, tot


def cliques_from_masks(present: int, adj: list[int], s: int) -> list[tuple]:
    """All s-cliques as sorted tuples, straight off adjacency bitmasks.

    Same result as oracle.enumerate_cliques on the equivalent Graph (the
    test suite pins that equivalence); used on the hot checking path.
    """
    out: list[tuple] = []
    nodes = list(iter_bits(present))

    def extend(chosen: list[int], cand_mask: int, need: int) -> None:
        if need == 0:
            out.append(tuple(chosen))
            return
        m = cand_mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if bin(cand_mask & ~((1 << v) - 1)).count("1") < need:
                break
            chosen.append(v)
            extend(chosen, m & adj[v], need - 1)
            chosen.pop()

    for v in nodes:
        extend([v], adj[v] & ~((1 << (v + 1)) - 1), s - 1)
    return out


def check_round_outputs(
    task: Task,
    cliques: list[tuple],
    outputs: dict[NodeId, object],
    present: list[NodeId],
) -> str | None:
    """First discrepancy between outputs and the expected predicate, if any."""
    if task is Task.MEMLIST:
        for v in present:
            want = frozenset(c for c in cliques if v in c)
            got = outputs.get(v, frozenset())
            if got != want:
                return f"node {v}: memlist {sorted(got)} != {sorted(want)}"
        return None
    if task is Task.MEMDETECT:
        member = set()
        for c in cliques:
            member.update(c)
        for v in present:
            if bool(outputs.get(v, False)) != (v in member):
                return f"node {v}: memdetect {bool(outputs.get(v, False))} != {v in member}"
        return None
    if task is Task.LIST:
        true_set = set(cliques)
        union: set[tuple] = set()
        for v in present:
            got = outputs.get(v, frozenset())
            for c in got:
                if c not in true_set:
                    return f"node {v}: listed non-clique {c}"
            union.update(got)
        missing = true_set - union
        if missing:
            return f"global: unlisted cliques {sorted(missing)}"
        return None
    hits = [v for v in present if outputs.get(v, False)]
    if cliques and not hits:
        return "global: no node detected an existing clique"
    if not cliques and hits:
        return f"node {hits[0]}: detection without any clique"
    return None


@dataclass
class RoundTrace:
    round: int
    change: TopologyChange
    sent: dict[tuple[NodeId, NodeId], BitMessage]
    outputs: dict[NodeId, object]
    deadline: bool


@dataclass
class RoundRecord:
    round: int
    change: str
    max_bits: int
    total_bits: int
    deadline: bool
    verdict: str  # "ok" | "wrong" | "-" (unchecked)


@dataclass
class SimulationReport:
    scenario: str
    algorithm: str
    n: int
    r: int
    budget: int
    rounds: list[RoundRecord] = field(default_factory=list)
    violations: list[tuple[int, str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    max_bits: int = 0
    total_bits: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def render_human(self) -> str:
        lines = [
            f"scenario   {self.scenario or '-'}",
            f"algorithm  {self.algorithm}",
            f"n={self.n} r={self.r} budget={self.budget}",
        ]
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append("round  change                     max_bits  deadline  verdict")
        for rec in self.rounds:
            lines.append(
                f"{rec.round:>5}  {rec.change:<25}  {rec.max_bits:>8}"
                f"  {'yes' if rec.deadline else 'no ':<8}  {rec.verdict}"
            )
        lines.append(f"max_bits {self.max_bits}  total_bits {self.total_bits}")
        if self.violations:
            lines.append("violations:")
            for rnd, kind, details in self.violations:
                lines.append(f"  round {rnd} {kind}: {details}")
        lines.append(f"passed {str(self.passed).lower()}")
        return "\n".join(lines) + "\n"

    def render_machine(self) -> str:
        import json

        recs = [
            {
                "type": "header",
                "scenario": self.scenario,
                "algorithm": self.algorithm,
                "n": self.n,
                "r": self.r,
                "budget": self.budget,
                "warnings": self.warnings,
            }
        ]
        for rec in self.rounds:
            recs.append(
                {
                    "type": "round",
                    "round": rec.round,
                    "change": rec.change,
                    "max_bits": rec.max_bits,
                    "total_bits": rec.total_bits,
                    "deadline": rec.deadline,
                    "verdict": rec.verdict,
                }
            )
        recs.append(
            {
                "type": "footer",
                "passed": self.passed,
                "max_bits": self.max_bits,
                "total_bits": self.total_bits,
                "violations": [
                    {"round": r, "kind": k, "details": d} for r, k, d in self.violations
                ],
            }
        )
        return "\n".join(json.dumps(r, sort_keys=True) for r in recs) + "\n"


class Simulation:
    """Mutable stepper for one (scenario problem, algorithm) pair.

    ``run_scenario`` drives a full event list; ``step_round`` applies a single
    change, which lets test harnesses walk change trees while sharing the
    simulation prefix (see ``fork``).
    """

    def __init__(
        self,
        scenario: DynamicScenario,
        algorithm,
        budget: int | None = None,
        check: bool = True,
        record_trace: bool = False,
        record_rounds: bool = True,
        strict_oracle: bool = False,
        extra_tasks: tuple = (),
    ):
        problem = scenario.problem
        if not algorithm.supports(problem):
            raise UnsupportedProblem(
                f"{algorithm.name} does not support task={problem.task.value} "
                f"s={problem.s} r={problem.rounds} "
                f"changes={sorted(k.value for k in problem.allowed_changes)}"
            )
        self.scenario = scenario
        self.algorithm = algorithm
        self.problem = problem
        self.n = scenario.n
        self.check = check
        self.record_trace = record_trace
        self.record_rounds = record_rounds
        self.strict_oracle = strict_oracle
        self.extra_tasks = tuple(extra_tasks)  # also grade reduced outputs
        self.traces: list[RoundTrace] = []

        declared = algorithm.budget()
        self.budget = declared if budget is None else budget
        self.report = SimulationReport(
            scenario=scenario.name,
            algorithm=algorithm.name,
            n=self.n,
            r=problem.rounds,
            budget=self.budget,
        )
        if budget is not None and budget > declared:
            self.report.warnings.append(
                f"budget override {budget} exceeds computed budget {declared}"
            )

        g0 = scenario.initial
        self.present: int = mask_of(g0.present)
        self.adj: list[int] = [0] * self.n
        for a, b in g0.edges:
            self.adj[a] |= 1 << b
            self.adj[b] |= 1 << a
        self.round = 0
        self._quiet = 0
        self.states: dict[NodeId, object] = {}
        for v in sorted(g0.present):
            self.states[v] = algorithm.init_state(v, fresh=False, rnd=0)

    # -- forking ----------------------------------------------------------

    def fork(self) -> "Simulation":
        """Cheap copy sharing no mutable state; violations start empty."""
        twin = object.__new__(Simulation)
        twin.scenario = self.scenario
        twin.algorithm = self.algorithm
        twin.problem = self.problem
        twin.n = self.n
        twin.check = self.check
        twin.record_trace = False
        twin.record_rounds = self.record_rounds
        twin.strict_oracle = self.strict_oracle
        twin.extra_tasks = self.extra_tasks
        twin.traces = []
        twin.budget = self.budget
        twin.report = SimulationReport(
            scenario=self.report.scenario,
            algorithm=self.report.algorithm,
            n=self.n,
            r=self.problem.rounds,
            budget=self.budget,
        )
        twin.present = self.present
        twin.adj = self.adj.copy()
        twin.round = self.round
        twin._quiet = self._quiet
        twin.states = {v: self.algorithm.clone_state(st) for v, st in self.states.items()}
        return twin

    # -- stepping ----------------------------------------------------------

    def _apply(self, c: TopologyChange) -> None:
        k = c.kind
        if k is ChangeKind.NOOP:
            return
        if k is ChangeKind.EDGE_INSERT:
            self.adj[c.u] |= 1 << c.v
            self.adj[c.v] |= 1 << c.u
        elif k is ChangeKind.EDGE_DELETE:
            self.adj[c.u] &= ~(1 << c.v)
            self.adj[c.v] &= ~(1 << c.u)
        elif k is ChangeKind.NODE_INSERT:
            self.present |= 1 << c.v
            am = mask_of(c.attach)
            self.adj[c.v] = am
            bit = 1 << c.v
            for a in iter_bits(am):
                self.adj[a] |= bit
        elif k is ChangeKind.NODE_DELETE:
            bit = 1 << c.v
            self.present &= ~bit
            for a in iter_bits(self.adj[c.v]):
                self.adj[a] &= ~bit
            self.adj[c.v] = 0

    def graph(self) -> Graph:
        edges = set()
        for v in iter_bits(self.present):
            for w in iter_bits(self.adj[v]):
                if w > v:
                    edges.add((v, w))
        return Graph(self.n, frozenset(iter_bits(self.present)), frozenset(edges))

    def step_round(self, change: TopologyChange) -> dict[NodeId, object]:
        """Advance one round; returns this round's outputs by node."""
        self.round += 1
        rnd = self.round
        self._quiet = self._quiet + 1 if change.kind is ChangeKind.NOOP else 0

        prev_adj = self.adj.copy()
        self._apply(change)
        alg = self.algorithm
        states = self.states

        if change.kind is ChangeKind.NODE_DELETE:
            states.pop(change.v, None)
        elif change.kind is ChangeKind.NODE_INSERT:
            states[change.v] = alg.init_state(change.v, fresh=True, rnd=rnd)

        nodes = sorted(iter_bits(self.present))
        adj = self.adj

        # Send phase: outboxes depend only on pre-round state and the
        # observed neighbor sets, never on this round's inbox.
        outbox: dict[NodeId, dict[NodeId, BitMessage]] = {}
        for v in nodes:
            out = alg.emit(states[v], v, prev_adj[v], adj[v], rnd)
            outbox[v] = out

        # Deliver along post-change edges and meter.
        budget = self.budget
        max_bits = total_bits = 0
        inboxes: dict[NodeId, dict[NodeId, BitMessage]] = {v: {} for v in nodes}
        over: list[tuple[NodeId, NodeId, int]] = []
        for v in nodes:
            out = outbox[v]
            if mask_of(out) != adj[v]:
                raise AssertionError(
                    f"{alg.name}: node {v} outbox keys != neighbor set in round {rnd}"
                )
            for w, msg in out.items():
                ln = msg.length
                if ln > max_bits:
                    max_bits = ln
                total_bits += ln
                if ln > budget:
                    over.append((v, w, ln))
                inboxes[w][v] = msg
        if over:
            v, w, ln = over[0]
            self.report.violations.append(
                (rnd, "BudgetExceeded", f"{v}->{w} sent {ln} bits > budget {budget}")
            )

        # Update phase.
        outputs: dict[NodeId, object] = {}
        for v in nodes:
            outputs[v] = alg.absorb(states[v], v, prev_adj[v], adj[v], rnd, inboxes[v])

        deadline = self._is_deadline()
        verdict = "-"
        if deadline and self.check:
            if self.strict_oracle:
                expect = oracle.expected_outputs(self.graph(), self.problem)
                bad = expect.check(outputs)
                problem_msg = None
                if bad:
                    worst = bad[0]
                    who = "global" if worst.node is None else f"node {worst.node}"
                    problem_msg = f"{who}: {worst.reason}"
            else:
                cliques = cliques_from_masks(self.present, adj, self.problem.s)
                problem_msg = check_round_outputs(
                    self.problem.task, cliques, outputs, nodes
                )
            verdict = "ok"
            if problem_msg:
                verdict = "wrong"
                self.report.violations.append((rnd, "OutputWrong", problem_msg))
            if self.extra_tasks and verdict == "ok":
                if self.strict_oracle:
                    cliques = cliques_from_masks(self.present, adj, self.problem.s)
                base_task = self.problem.task
                bools = None
                for t2 in self.extra_tasks:
                    if t2 is Task.LIST and base_task is Task.MEMLIST:
                        derived = outputs
                    elif t2 in (Task.MEMDETECT, Task.DETECT):
                        if bools is None:
                            bools = {v: bool(o) for v, o in outputs.items()}
                        derived = bools
                    else:
                        derived = {
                            v: oracle.reduce_output(base_task, t2, o)
                            for v, o in outputs.items()
                        }
                    msg2 = check_round_outputs(t2, cliques, derived, nodes)
                    if msg2:
                        verdict = "wrong"
                        self.report.violations.append(
                            (rnd, "OutputWrong", f"[{t2.value}] {msg2}")
                        )
                        break

        if self.record_rounds:
            self.report.rounds.append(
                RoundRecord(rnd, str(change), max_bits, total_bits, deadline, verdict)
            )
        if max_bits > self.report.max_bits:
            self.report.max_bits = max_bits
        self.report.total_bits += total_bits
        if self.record_trace:
            sent = {}
            for v in nodes:
                for w, msg in outbox[v].items():
                    sent[(v, w)] = msg
            self.traces.append(RoundTrace(rnd, change, sent, outputs, deadline))
        return outputs

    def _is_deadline(self) -> bool:
        r = self.problem.rounds
        if r == 1:
            return True
        return self._quiet >= min(r - 1, self.round)

    def run_scenario(self) -> SimulationReport:
        for ev in self.scenario.events:
            self.step_round(ev)
        return self.report


def run(
    scenario: DynamicScenario,
    algorithm,
    budget: int | None = None,
    check: bool = True,
    record_trace: bool = False,
    strict_oracle: bool = False,
) -> SimulationReport:
    """Validate, execute, and report one scenario under one algorithm."""
    scenario.validate()
    sim = Simulation(scenario, algorithm, budget=budget, check=check,
                     record_trace=record_trace, strict_oracle=strict_oracle)
    return sim.run_scenario()
