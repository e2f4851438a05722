"""Membership listing of triangles under deletions only.

With node deletions alone no communication is needed: a triangle survives
iff it existed initially and both partners are still neighbors.  Edge
deletions need one bit: a node that lost an edge tells its neighbors, and a
node receiving that bit from two current neighbors v, w learns that the edge
vw is gone.  When node deletions are mixed in, the lost-an-edge bit is sent
to u only when the lost neighbor was a common neighbor with u, which keeps
the two-senders rule unambiguous.
"""

from __future__ import annotations

from ..bitio import EMPTY, BitMessage
from ..dyngraph import ChangeKind, Task
from ..engine import iter_bits
from .base import AlgoContext, Automaton, CatalogEntry, register

_ONE = BitMessage(1, 1)
_ZERO = BitMessage(1, 0)


class _TriState:
    __slots__ = ("tris",)

    def __init__(self, tris: set):
        self.tris = tris

    def clone(self):
        return _TriState(set(self.tris))


def _initial_triangles(ctx: AlgoContext, u: int) -> set[tuple]:
    adj = ctx.initial_adj
    out = set()
    nbrs = list(iter_bits(adj[u]))
    for i, v in enumerate(nbrs):
        for w in nbrs[i + 1:]:
            if adj[v] >> w & 1:
                out.add(tuple(sorted((u, v, w))))
    return out


class NodeDeleteSilent(Automaton):
    """0-bit membership listing under node deletions."""

    name = "tri-mlist-nodedel-0bit"
    task = Task.MEMLIST
    allowed = frozenset({ChangeKind.NODE_DELETE})
    r = 1

    def budget(self) -> int:
        return 0

    def init_state(self, v, fresh, rnd):
        return _TriState(_initial_triangles(self.ctx, v))

    def emit(self, st, v, prev, now, rnd):
        return {w: EMPTY for w in iter_bits(now)}

    def absorb(self, st, u, prev, now, rnd, inbox):
        return frozenset(
            t for t in st.tris
            if all(x == u or (now >> x & 1) for x in t)
        )


class EdgeDeleteOneBit(Automaton):
    """1-bit membership listing under edge deletions."""

    name = "tri-mlist-edgedel-1bit"
    task = Task.MEMLIST
    allowed = frozenset({ChangeKind.EDGE_DELETE})
    r = 1

    def budget(self) -> int:
        return 1

    def init_state(self, v, fresh, rnd):
        return _TriState(_initial_triangles(self.ctx, v))

    def emit(self, st, v, prev, now, rnd):
        lost = prev & ~now
        msg = _ONE if lost else _ZERO
        return {w: msg for w in iter_bits(now)}

    def absorb(self, st, u, prev, now, rnd, inbox):
        lost = prev & ~now
        if lost:
            y = lost.bit_length() - 1
            st.tris = {t for t in st.tris if y not in t}
        else:
            senders = [v for v, m in inbox.items() if m.value]
            if len(senders) == 2:
                st.tris.discard(tuple(sorted((u, *senders))))
        return frozenset(st.tris)


class DeletionsCombined(Automaton):
    """1-bit membership listing under node and edge deletions.

    The lost-an-edge bit goes to u only if the lost neighbor completed a
    triangle with u last round, so two set bits at u always mean the edge
    between the two senders was deleted.
    """

    name = "tri-mlist-del-combined"
    task = Task.MEMLIST
    allowed = frozenset({ChangeKind.NODE_DELETE, ChangeKind.EDGE_DELETE})
    r = 1

    def budget(self) -> int:
        return 1

    def init_state(self, v, fresh, rnd):
        return _TriState(_initial_triangles(self.ctx, v))

    def emit(self, st, v, prev, now, rnd):
        lost = prev & ~now
        out = {}
        if lost:
            y = lost.bit_length() - 1
            for w in iter_bits(now):
                out[w] = _ONE if tuple(sorted((v, w, y))) in st.tris else _ZERO
        else:
            for w in iter_bits(now):
                out[w] = _ZERO
        return out

    def absorb(self, st, u, prev, now, rnd, inbox):
        lost = prev & ~now
        if lost:
            y = lost.bit_length() - 1
            st.tris = {t for t in st.tris if y not in t}
        else:
            senders = [v for v, m in inbox.items() if m.value]
            if len(senders) == 2:
                st.tris.discard(tuple(sorted((u, *senders))))
        return frozenset(st.tris)


register(CatalogEntry(
    name=NodeDeleteSilent.name,
    task=Task.MEMLIST,
    s=3,
    allowed=NodeDeleteSilent.allowed,
    r=1,
    budget_doc="0",
    budget_fn=lambda n, r, d: 0,
    factory=NodeDeleteSilent,
))

register(CatalogEntry(
    name=EdgeDeleteOneBit.name,
    task=Task.MEMLIST,
    s=3,
    allowed=EdgeDeleteOneBit.allowed,
    r=1,
    budget_doc="1",
    budget_fn=lambda n, r, d: 1,
    factory=EdgeDeleteOneBit,
))

register(CatalogEntry(
    name=DeletionsCombined.name,
    task=Task.MEMLIST,
    s=3,
    allowed=DeletionsCombined.allowed,
    r=1,
    budget_doc="1",
    budget_fn=lambda n, r, d: 1,
    factory=DeletionsCombined,
))
