"""Listing of triangles: every live triangle must be output by at least one
node, with no false copies.

The edge-insertion lister reuses the two-round constant-bandwidth knowledge
machinery: the member opposite a closing edge recognizes it immediately from
the two gain flags, which is all listing needs in one round.  The
node-insertion lister needs a single gain flag: both prior members of a
fresh triangle recognize it, so every triangle is known to at least two of
its nodes.  Mixing node insertions with deletions adds a loss flag and its
echo to tell a deleted edge from a deleted shared neighbor.  The all-change
fallback names the gained/lost neighbor explicitly, at id-width cost.
"""

from __future__ import annotations

from ..bitio import BitReader, BitWriter
from ..dyngraph import ChangeKind, Task
from ..engine import iter_bits
from .base import (
    Automaton,
    CatalogEntry,
    PairBeliefs,
    id_width,
    register,
    triangles_of_mask,
)
from .tworound import TwoRoundCombined, TwoRoundConst

ALL_CHANGES = frozenset(
    {
        ChangeKind.EDGE_INSERT,
        ChangeKind.EDGE_DELETE,
        ChangeKind.NODE_INSERT,
        ChangeKind.NODE_DELETE,
    }
)


class ListEdgeIns(TwoRoundConst):
    """Triangle listing under edge insertions, one round, two bits."""

    name = "tri-list-edgeins-1bit"
    task = Task.LIST
    r = 1


class ListInsDel(TwoRoundCombined):
    """Triangle listing under edge insertions and node/edge deletions.

    Same machinery as the deletion-tolerant membership lister, but an
    unresolved two-loss round must not be listed optimistically: the pair in
    question is withheld until the echo settles it.  Some member unaffected
    by the ambiguity still covers a surviving triangle.
    """

    name = "tri-list-insdel"
    task = Task.LIST
    r = 1

    def absorb(self, st, u, prev, now, rnd, inbox):
        out = super().absorb(st, u, prev, now, rnd, inbox)
        if st.pending is None:
            return out
        a, b, _ = st.pending
        hold = tuple(sorted((u, a, b)))
        return frozenset(t for t in out if t != hold)


class _KnownRowsState:
    __slots__ = ("krow",)

    def __init__(self, krow):
        self.krow = krow

    def clone(self):
        return _KnownRowsState(list(self.krow))


class ListNodeIns(Automaton):
    """Triangle listing under node insertions, one round, one bit."""

    name = "tri-list-nodeins-1bit"
    task = Task.LIST
    allowed = frozenset({ChangeKind.NODE_INSERT})
    r = 1

    def budget(self) -> int:
        return 1

    def init_state(self, v, fresh, rnd):
        return _KnownRowsState(list(self.ctx.initial_adj))

    def clone_state(self, st):
        return st.clone()

    def emit(self, st, u, prev, now, rnd):
        w = BitWriter().put_flag(bool(now & ~prev)).message()
        return {v: w for v in iter_bits(now)}

    def absorb(self, st, u, prev, now, rnd, inbox):
        gained = now & ~prev
        for y in iter_bits(gained):
            st.krow[u] |= 1 << y
            st.krow[y] |= 1 << u
        if gained and bin(gained).count("1") == 1:
            # Exactly one gain: x is the round's inserted node, so every
            # neighbor flagging a gain gained x too.
            x = gained.bit_length() - 1
            for v, msg in inbox.items():
                if v != x and BitReader(msg).take_flag():
                    st.krow[v] |= 1 << x
                    st.krow[x] |= 1 << v
        has_pair = lambda a, b: bool(st.krow[a] >> b & 1)
        return triangles_of_mask(u, now, has_pair)


class _FlagBeliefState:
    __slots__ = ("beliefs", "del_from", "pending", "born")

    def __init__(self, beliefs, del_from, pending, born):
        self.beliefs = beliefs
        self.del_from = del_from
        self.pending = pending
        self.born = born

    def clone(self):
        return _FlagBeliefState(self.beliefs.clone(), self.del_from,
                                self.pending, self.born)


class ListNodeInsDel(Automaton):
    """Triangle listing under node insertions and node/edge deletions.

    Gains are always fresh nodes here, so one gain flag pins the new node's
    edges exactly; deletions reuse the two-loss echo resolution.
    """

    name = "tri-list-all-const"
    task = Task.LIST
    allowed = frozenset(
        {ChangeKind.NODE_INSERT, ChangeKind.NODE_DELETE, ChangeKind.EDGE_DELETE}
    )
    r = 1

    def budget(self) -> int:
        return 3

    def init_state(self, v, fresh, rnd):
        watch0 = 0 if fresh else self.ctx.initial_adj[v]
        return _FlagBeliefState(
            PairBeliefs(self.n, self.ctx.initial_adj, "max", watch0),
            frozenset(), None, rnd if fresh else -1,
        )

    def clone_state(self, st):
        return st.clone()

    def emit(self, st, u, prev, now, rnd):
        new = bool(now & ~prev)
        deleted = bool(prev & ~now)
        k = len(st.del_from)
        variants = {}
        out = {}
        for v in iter_bits(now):
            echo = k >= 2 or (k == 1 and v not in st.del_from)
            msg = variants.get(echo)
            if msg is None:
                msg = BitWriter().put_flag(new).put_flag(deleted).put_flag(echo).message()
                variants[echo] = msg
            out[v] = msg
        return out

    def absorb(self, st, u, prev, now, rnd, inbox):
        beliefs = st.beliefs
        gained = now & ~prev
        lost = prev & ~now
        fresh = st.born == rnd

        senders_new = []
        senders_del = []
        echo_from = set()
        for v, msg in inbox.items():
            rd = BitReader(msg)
            if rd.take_flag():
                senders_new.append(v)
            if rd.take_flag():
                senders_del.append(v)
            if rd.take_flag():
                echo_from.add(v)

        for y in iter_bits(lost):
            beliefs.set(u, y, False, rnd)
            beliefs.note_loss(y)
        for y in iter_bits(gained):
            beliefs.note_join(y, rnd)
            beliefs.set(u, y, True, rnd)

        if not fresh and gained:
            x = gained.bit_length() - 1  # the inserted node
            for s in iter_bits(now & ~(1 << x)):
                beliefs.set(s, x, s in senders_new, rnd)

        if st.pending is not None:
            a, b, t0 = st.pending
            if not any(v in (a, b) for v in echo_from):
                beliefs.set(a, b, False, t0)
            st.pending = None

        if not gained and not lost and len(senders_del) == 2:
            st.pending = (*sorted(senders_del), rnd)
        st.del_from = frozenset(senders_del)

        pend = st.pending[:2] if st.pending else None

        def has_pair(a, b):
            if pend and (a, b) == pend:
                return False
            return beliefs.is_true(a, b)

        return triangles_of_mask(u, now, has_pair)


class _IdBeliefState:
    __slots__ = ("beliefs",)

    def __init__(self, beliefs):
        self.beliefs = beliefs

    def clone(self):
        return _IdBeliefState(self.beliefs.clone())


class ListAllFourLog(Automaton):
    """Triangle listing under all four change kinds at id-width cost.

    Fallback entry: gained and lost neighbors are named outright, so every
    node adjacent to an endpoint tracks that endpoint's edges exactly.
    """

    name = "tri-list-allfour-log"
    task = Task.LIST
    allowed = ALL_CHANGES
    r = 1

    def __init__(self, ctx):
        super().__init__(ctx)
        self.idw = id_width(ctx.n)

    def budget(self) -> int:
        return 2 * self.idw + 2

    def init_state(self, v, fresh, rnd):
        watch0 = 0 if fresh else self.ctx.initial_adj[v]
        return _IdBeliefState(
            PairBeliefs(self.n, self.ctx.initial_adj, "min", watch0)
        )

    def clone_state(self, st):
        return st.clone()

    def emit(self, st, u, prev, now, rnd):
        gained = now & ~prev
        lost = prev & ~now
        w = BitWriter()
        # A freshly inserted node announces nothing; its partners announce it.
        if gained and bin(gained).count("1") == 1:
            w.put_flag(True).put(self.idw, gained.bit_length() - 1)
        else:
            w.put_flag(False)
        if lost:
            w.put_flag(True).put(self.idw, lost.bit_length() - 1)
        else:
            w.put_flag(False)
        msg = w.message()
        return {v: msg for v in iter_bits(now)}

    def absorb(self, st, u, prev, now, rnd, inbox):
        beliefs = st.beliefs
        gained = now & ~prev
        lost = prev & ~now
        for y in iter_bits(lost):
            beliefs.set(u, y, False, rnd)
            beliefs.note_loss(y)
        for y in iter_bits(gained):
            beliefs.note_join(y, rnd)
            beliefs.set(u, y, True, rnd)
        for v, msg in inbox.items():
            rd = BitReader(msg)
            if rd.take_flag():
                beliefs.set(v, rd.take(self.idw), True, rnd)
            if rd.take_flag():
                beliefs.set(v, rd.take(self.idw), False, rnd)
        return triangles_of_mask(u, now, beliefs.is_true)


register(CatalogEntry(
    name=ListEdgeIns.name,
    task=Task.LIST,
    s=3,
    allowed=ListEdgeIns.allowed,
    r=1,
    budget_doc="2",
    budget_fn=lambda n, r, d: 2,
    factory=ListEdgeIns,
))

register(CatalogEntry(
    name=ListInsDel.name,
    task=Task.LIST,
    s=3,
    allowed=ListInsDel.allowed,
    r=1,
    budget_doc="4",
    budget_fn=lambda n, r, d: 4,
    factory=ListInsDel,
))

register(CatalogEntry(
    name=ListNodeIns.name,
    task=Task.LIST,
    s=3,
    allowed=ListNodeIns.allowed,
    r=1,
    budget_doc="1",
    budget_fn=lambda n, r, d: 1,
    factory=ListNodeIns,
))

register(CatalogEntry(
    name=ListNodeInsDel.name,
    task=Task.LIST,
    s=3,
    allowed=ListNodeInsDel.allowed,
    r=1,
    budget_doc="3",
    budget_fn=lambda n, r, d: 3,
    factory=ListNodeInsDel,
))

register(CatalogEntry(
    name=ListAllFourLog.name,
    task=Task.LIST,
    s=3,
    allowed=ListAllFourLog.allowed,
    r=1,
    budget_doc="2*ceil(log2 n) + 2",
    budget_fn=lambda n, r, d: 2 * id_width(n) + 2,
    factory=ListAllFourLog,
))
