"""Executable lower-bound machinery.

The hardness arguments behind the bandwidth table are driven by concrete
worst-case change sequences; this module builds those sequences as runnable
scenarios, evaluates the final counting inequalities numerically, and
exhaustively verifies the dense-bipartite extraction lemma at desk scale.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from itertools import combinations

from .dyngraph import (
    ChangeKind,
    DynamicScenario,
    Graph,
    ProblemSpec,
    Task,
    TopologyChange,
    edge,
)


class BadParams(Exception):
    pass


class Family(enum.Enum):
    TRI_EDGE_INS = "tri-edgeins"         # staged bipartite wiring, hub, late edge
    KS_EDGE_INS = "ks-edgeins"           # same, with a pre-wired (s-3)-clique
    TRI_NODE_INS = "tri-nodeins"         # node-by-node build, then a universal node
    TRI_MDTCT_NODE_INS = "tri-mdtct-nodeins"  # build, then probe node on u, v
    KS_NODE_INS = "ks-nodeins"           # bipartite build, clique, universal probe
    KS_MDTCT_NODE_INS = "ks-mdtct-nodeins"


@dataclass(frozen=True)
class AdversarySpec:
    """Parameters of one adversarial construction."""

    family: Family
    n: int
    t: int = 0
    s: int = 3
    seed: int | None = None
    bipartite: frozenset[tuple[int, int]] | None = None  # explicit C (left i, right j)
    target: int = 0       # index of the probed w in the staged side, or u
    target2: int = 1      # v for the probe-pair families
    task: Task | None = None  # override the family's canonical task
    rounds: int = 1
    quiet_tail: int = 0   # trailing NoOps so r>1 solvers get graded


def _bipartite_edges(rows: int, cols: int, spec: AdversarySpec) -> set[tuple[int, int]]:
    """Index pairs (i, j) of the chosen bipartite pattern C."""
    if spec.bipartite is not None:
        for i, j in spec.bipartite:
            if not (0 <= i < rows and 0 <= j < cols):
                raise BadParams(f"bipartite index ({i},{j}) out of range")
        return set(spec.bipartite)
    if spec.seed is None:
        return {(i, j) for i in range(rows) for j in range(cols)}
    rng = random.Random(spec.seed)
    return {(i, j) for i in range(rows) for j in range(cols) if rng.random() < 0.5}


def gen_adversary(spec: AdversarySpec) -> DynamicScenario:
    """Build the adversarial scenario for one family.

    Edge-insertion families: all nodes present from the start with no edges
    (plus the pre-wired clique for the K_s variant); wire the bipartite
    pattern; connect the hub one endpoint per round; insert the critical
    edge to the probed node last.  Node-insertion families: start from an
    empty universe and insert one node per round, the probe node last.
    """
    fam = spec.family
    n, s, t = spec.n, spec.s, spec.t

    if fam in (Family.TRI_EDGE_INS, Family.KS_EDGE_INS):
        clique = 0 if fam is Family.TRI_EDGE_INS else s - 3
        if fam is Family.KS_EDGE_INS and s < 4:
            raise BadParams("clique variant needs s >= 4")
        w_count = n - t - 1 - clique
        if t < 1 or w_count < 1:
            raise BadParams(f"need n >= t + {clique} + 2, got n={n}, t={t}")
        if not (0 <= spec.target < w_count):
            raise BadParams("target outside the staged side")
        # IDs: staged side, then hub-side column, then hub, then clique.
        W = list(range(w_count))
        U = list(range(w_count, w_count + t))
        v = w_count + t
        K = list(range(w_count + t + 1, n))
        init_edges: set[tuple[int, int]] = set()
        for k in K:
            init_edges.update(edge(k, x) for x in range(n) if x not in (k, v))
        events: list[TopologyChange] = []
        for i, j in sorted(_bipartite_edges(w_count, t, spec)):
            events.append(TopologyChange.edge_insert(W[i], U[j]))
        for u in U + K:
            events.append(TopologyChange.edge_insert(v, u))
        events.append(TopologyChange.edge_insert(v, W[spec.target]))
        initial = Graph(n, frozenset(range(n)), frozenset(init_edges))
        name = f"{fam.value}-n{n}-t{t}-w{spec.target}"
        return _finish(spec, initial, events, Task.MEMLIST,
                       frozenset({ChangeKind.EDGE_INSERT}), name)

    if fam in (Family.TRI_NODE_INS, Family.TRI_MDTCT_NODE_INS):
        others = n - 1
        if others < 2:
            raise BadParams("need n >= 3")
        pattern = _pattern_graph(others, spec)
        events = _staged_insertions(list(range(others)), pattern)
        probe = n - 1
        if fam is Family.TRI_NODE_INS:
            events.append(TopologyChange.node_insert(probe, range(others)))
            task = Task.MEMLIST
        else:
            u, v2 = spec.target, spec.target2
            if not (0 <= u < others and 0 <= v2 < others and u != v2):
                raise BadParams("bad probe pair")
            events.append(TopologyChange.node_insert(probe, [u, v2]))
            task = Task.MEMDETECT
        initial = Graph(n, frozenset(), frozenset())
        return _finish(spec, initial, events, task,
                       frozenset({ChangeKind.NODE_INSERT}), f"{fam.value}-n{n}")

    if fam in (Family.KS_NODE_INS, Family.KS_MDTCT_NODE_INS):
        if s < 4:
            raise BadParams("clique variant needs s >= 4")
        u_count = n - (s - 2)
        if u_count < 2:
            raise BadParams(f"need n >= s, got n={n}, s={s}")
        left = (u_count + 1) // 2
        cut = _bipartite_edges(left, u_count - left, spec)
        pattern = {(i, left + j) for i, j in cut}
        events = _staged_insertions(list(range(u_count)), pattern)
        K = list(range(u_count, n - 1))
        for k in K:
            events.append(TopologyChange.node_insert(k, range(k)))
        probe = n - 1
        if fam is Family.KS_NODE_INS:
            events.append(TopologyChange.node_insert(probe, range(n - 1)))
            task = Task.MEMLIST
        else:
            u, v2 = spec.target, spec.target2
            if not (0 <= u < left and left <= v2 < u_count):
                raise BadParams("probe pair must straddle the split")
            events.append(TopologyChange.node_insert(probe, [u, v2, *K]))
            task = Task.MEMDETECT
        initial = Graph(n, frozenset(), frozenset())
        return _finish(spec, initial, events, task,
                       frozenset({ChangeKind.NODE_INSERT}), f"{fam.value}-n{n}-s{s}")

    raise BadParams(f"unknown family {fam}")


def _finish(spec: AdversarySpec, initial: Graph, events, task: Task,
            allowed: frozenset[ChangeKind], name: str) -> DynamicScenario:
    if spec.task is not None:
        task = spec.task
    events = list(events)
    events.extend(TopologyChange.noop() for _ in range(spec.quiet_tail))
    problem = ProblemSpec(task, spec.s, spec.rounds, allowed)
    return DynamicScenario(spec.n, initial, tuple(events), problem, name=name)


def _pattern_graph(m: int, spec: AdversarySpec) -> set[tuple[int, int]]:
    """Edge set over m staged nodes (explicit, seeded, or complete)."""
    if spec.bipartite is not None:
        out = set()
        for i, j in spec.bipartite:
            if not (0 <= i < m and 0 <= j < m) or i == j:
                raise BadParams(f"pattern pair ({i},{j}) out of range")
            out.add(edge(i, j))
        return out
    if spec.seed is None:
        return {(i, j) for i, j in combinations(range(m), 2)}
    rng = random.Random(spec.seed)
    return {(i, j) for i, j in combinations(range(m), 2) if rng.random() < 0.5}


def _staged_insertions(nodes: list[int], pattern: set[tuple[int, int]]):
    """Insert nodes in order, each attached to its pattern-neighbors so far."""
    events = []
    placed: list[int] = []
    for v in nodes:
        attach = [u for u in placed if edge(u, v) in pattern]
        events.append(TopologyChange.node_insert(v, attach))
        placed.append(v)
    return events


# ---------------------------------------------------------------------------
# Numeric evaluation of the final counting inequalities
# ---------------------------------------------------------------------------


def densebip_constants(eps: float) -> tuple[float, float, float]:
    """(alpha, beta, gamma) of the dense-bipartite extraction guarantee."""
    if not (0 <= eps < 1):
        raise BadParams(f"eps must be in [0,1), got {eps}")
    alpha = (1 - eps) / 6
    beta = (1 - eps) / (5 + eps)
    gamma = min(1 - eps, beta ** alpha)
    return alpha, beta, gamma


def eval_bound(task: Task, change: ChangeKind, n: int, eps: float = 1 / 3,
               r: int = 1) -> float:
    """Lower bound on per-message bits implied by the counting arguments.

    Membership listing under node insertions:  r*B >= n/2 + log2(1-eps)/(n-1).
    Membership detection under node insertions: B >= log2(2-2eps)*(n-2)/2.
    Membership listing under edge insertions: smallest B satisfying
        beta * gamma^(n-t-1) * 2^(t(n-t-1) - B*t(t+3)/2)
            <= 2^((B-t)*|W1| + t(n-t-1))
    at t = ceil(sqrt(n)) with |W1| at its guaranteed minimum alpha*(n-t-1),
    solved numerically by bisection on the (monotone in B) margin.
    """
    if n < 3:
        raise BadParams("n too small")
    if not (0 <= eps < 1):
        raise BadParams(f"eps must be in [0,1), got {eps}")
    if r < 1:
        raise BadParams("r must be >= 1")

    if change is ChangeKind.NODE_INSERT and task is Task.MEMLIST:
        return (n / 2 + math.log2(1 - eps) / (n - 1)) / r

    if change is ChangeKind.NODE_INSERT and task is Task.MEMDETECT:
        return math.log2(2 - 2 * eps) * (n - 2) / 2

    if change is ChangeKind.EDGE_INSERT and task is Task.MEMLIST:
        alpha, beta, gamma = densebip_constants(eps)
        t = math.isqrt(n)
        if t * t != n:
            t += 1
        m = n - t - 1  # staged-side size
        if m < 1:
            raise BadParams("n too small for the staged construction")
        w1 = alpha * m

        def feasible(b: float) -> bool:
            # log2 of both sides; the sequence-counting side must not exceed
            # the input-counting side.
            lhs = math.log2(beta) + m * math.log2(gamma) + t * m - b * t * (t + 3) / 2
            rhs = (b - t) * w1 + t * m
            return lhs <= rhs

        lo, hi = 0.0, float(t)
        while not feasible(hi):
            hi *= 2
        for _ in range(80):
            mid = (lo + hi) / 2
            if feasible(mid):
                hi = mid
            else:
                lo = mid
        return hi

    raise BadParams(f"no bound evaluator for {task.value} under {change.value}")


# ---------------------------------------------------------------------------
# Dense-bipartite witness search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteWitness:
    A: frozenset[int]
    B: frozenset[int]
    alpha: float
    beta: float
    gamma: float
    required: float = 0.0

    def meets_bounds(self, left: int, right: int) -> bool:
        return len(self.A) >= self.alpha * left and len(self.B) >= self.required


class NoWitness(Exception):
    """The guaranteed biclique sizes were not met (must never happen on
    inputs satisfying the density premise)."""


def densebip_witness(left: int, right: int, edges: set[tuple[int, int]],
                     eps: float) -> BipartiteWitness:
    """Exhaustive biclique extraction over A-subsets of the guaranteed size.

    edges holds (i, j) with i in [0,left), j in [0,right).  Requires the
    density premise |edges| >= (1-eps)*left*right; returns the witness with
    the largest common neighborhood (lexicographically smallest A on ties).
    """
    if left < 1 or right < 1:
        raise BadParams("empty side")
    if len(edges) < (1 - eps) * left * right:
        raise BadParams(
            f"density premise fails: {len(edges)} < (1-{eps})*{left}*{right}"
        )
    alpha, beta, gamma = densebip_constants(eps)
    a_size = math.ceil(alpha * left)
    nbr = [0] * left
    for i, j in edges:
        nbr[i] |= 1 << j
    full = (1 << right) - 1

    best_a: tuple[int, ...] | None = None
    best_common = 0
    best_count = -1
    for a_tuple in combinations(range(left), a_size):
        common = full
        for i in a_tuple:
            common &= nbr[i]
            if not common:
                break
        cnt = bin(common).count("1")
        if cnt > best_count:
            best_a, best_common, best_count = a_tuple, common, cnt

    required = beta * (gamma ** left) * right
    witness = BipartiteWitness(
        A=frozenset(best_a or ()),
        B=frozenset(j for j in range(right) if best_common >> j & 1),
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        required=required,
    )
    if best_count < required or len(witness.A) < alpha * left:
        raise NoWitness(
            f"best biclique {len(witness.A)}x{best_count} below guarantee "
            f"{alpha * left:.3f}x{required:.3f}"
        )
    return witness
