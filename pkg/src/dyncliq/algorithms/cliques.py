"""Cliques beyond triangles.

A node's clique memberships are a pure function of its triangle
memberships: {u} + S is a clique exactly when every pair in S forms a
triangle with u.  So every triangle membership lister doubles as a K_s
membership lister through a local assembly step, with identical messages.
The same assembly turns the one-round triangle-knowledge listers into K_s
listers for edge and node insertions.
"""

from __future__ import annotations

from ..dyngraph import Task
from .base import (
    AlgoContext,
    Automaton,
    CatalogEntry,
    cliques_of_mask,
    register,
)
from .deletions import DeletionsCombined, EdgeDeleteOneBit, NodeDeleteSilent
from .listing import ListNodeIns
from .sqrt_digest import EdgeInsertSqrt, InsDelSqrt
from .tworound import TwoRoundCombined, TwoRoundConst


class CliqueAssembly(Automaton):
    """Assemble s-clique outputs from an inner triangle automaton.

    The inner protocol runs untouched (same messages, same budget); only the
    per-node output is recomputed: the inner's triangle set describes which
    neighbor pairs are joined, and the cliques containing this node are read
    off that link graph.
    """

    def __init__(self, name: str, inner: Automaton, task: Task, r: int | None = None):
        self.name = name
        self.inner = inner
        self.ctx = inner.ctx
        self.n = inner.n
        self.s = inner.ctx.s
        self.task = task
        self.allowed = inner.allowed
        self.r = inner.r if r is None else r

    def supports(self, problem) -> bool:
        if problem.task is not self.task:
            return False
        if not problem.allowed_changes <= self.allowed:
            return False
        return problem.rounds >= self.r

    def budget(self) -> int:
        return self.inner.budget()

    def init_state(self, v, fresh, rnd):
        return self.inner.init_state(v, fresh, rnd)

    def clone_state(self, st):
        return self.inner.clone_state(st)

    def emit(self, st, v, prev, now, rnd):
        return self.inner.emit(st, v, prev, now, rnd)

    def absorb(self, st, u, prev, now, rnd, inbox):
        tris = self.inner.absorb(st, u, prev, now, rnd, inbox)
        if self.s == 3:
            return tris

        def has_pair(a, b):
            key = tuple(sorted((u, a, b)))
            return key in tris

        return cliques_of_mask(u, now, has_pair, self.s)


_MLIST_INNER = {
    "nodedel-0bit": (NodeDeleteSilent, 1, "0", lambda n, r, d: 0),
    "edgedel-1bit": (EdgeDeleteOneBit, 1, "1", lambda n, r, d: 1),
    "del-combined": (DeletionsCombined, 1, "1", lambda n, r, d: 1),
    "edgeins-sqrt": (
        EdgeInsertSqrt, 1, "ceil(sqrt(n)) + ceil(log2 n) + 1",
        lambda n, r, d: _sqrt_budget(n),
    ),
    "insdel-sqrt": (
        InsDelSqrt, 1, "ceil(sqrt(n)) + 2*ceil(log2 n) + 2",
        lambda n, r, d: _insdel_budget(n),
    ),
    "2round-const": (TwoRoundConst, 2, "2", lambda n, r, d: 2),
    "2round-combined": (TwoRoundCombined, 2, "4", lambda n, r, d: 4),
}


def _sqrt_budget(n: int) -> int:
    from .base import ceil_sqrt, id_width

    return 1 + id_width(n) + ceil_sqrt(n)


def _insdel_budget(n: int) -> int:
    from .base import ceil_sqrt, id_width

    return 2 + 2 * id_width(n) + ceil_sqrt(n)


def _register() -> None:
    for suffix, (cls, r, doc, budget_fn) in _MLIST_INNER.items():
        name = f"ks-mlist-{suffix}"

        def factory(ctx: AlgoContext, _cls=cls, _name=name) -> CliqueAssembly:
            return CliqueAssembly(_name, _cls(ctx), Task.MEMLIST)

        register(CatalogEntry(
            name=name,
            task=Task.MEMLIST,
            s=None,
            allowed=cls.allowed,
            r=r,
            budget_doc=doc,
            budget_fn=budget_fn,
            factory=factory,
        ))

    register(CatalogEntry(
        name="ks-list-edgeins",
        task=Task.LIST,
        s=None,
        allowed=TwoRoundConst.allowed,
        r=1,
        budget_doc="2",
        budget_fn=lambda n, r, d: 2,
        factory=lambda ctx: CliqueAssembly("ks-list-edgeins", TwoRoundConst(ctx),
                                           Task.LIST, r=1),
    ))
    register(CatalogEntry(
        name="ks-list-nodeins",
        task=Task.LIST,
        s=None,
        allowed=ListNodeIns.allowed,
        r=1,
        budget_doc="1",
        budget_fn=lambda n, r, d: 1,
        factory=lambda ctx: CliqueAssembly("ks-list-nodeins", ListNodeIns(ctx),
                                           Task.LIST, r=1),
    ))


_register()
