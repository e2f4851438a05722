"""Two-round membership listing with constant bandwidth.

Every round each node tells each neighbor whether it gained a neighbor this
round (new-edge flag) and whether some *other* neighbor flagged last round
(echo flag).  A node that sees the new-edge flag from exactly two neighbors
knows the inserted edge ran between them; an endpoint of the new edge learns
which of its neighbors touch the other endpoint from next round's echoes.
So every triangle is fully known to all three members one round after its
closing edge appears -- good enough when a quiet round follows the change.

The deletion-tolerant variant adds a lost-an-edge flag plus its echo.  Two
lost flags in one round are ambiguous (edge between the senders, or a shared
neighbor died); the echo resolves it one round later: after an edge deletion
neither endpoint heard a lost flag, after a node deletion the survivors
heard each other.
"""

from __future__ import annotations

from ..bitio import BitReader, BitWriter
from ..dyngraph import ChangeKind, Task
from ..engine import iter_bits
from .base import Automaton, CatalogEntry, register, triangles_of_mask


class _TwoRoundState:
    __slots__ = ("beliefs", "distrust", "new_from", "del_from", "last_gain", "pending")

    def __init__(self, beliefs, distrust, new_from, del_from, last_gain, pending):
        self.beliefs = beliefs      # packed pair -> (exists | None, asof)
        self.distrust = distrust    # node -> join round; older facts about it are void
        self.new_from = new_from    # neighbors that flagged a gain last round
        self.del_from = del_from    # neighbors that flagged a loss last round
        self.last_gain = last_gain  # neighbor gained last round, or -1
        self.pending = pending      # unresolved two-loss pair (a, b, round) or None

    def clone(self):
        return _TwoRoundState(
            dict(self.beliefs),
            dict(self.distrust),
            self.new_from,
            self.del_from,
            self.last_gain,
            self.pending,
        )


class TwoRoundConst(Automaton):
    """Membership listing under edge insertions, r=2, 2 bits."""

    name = "tri-mlist-2round-const"
    task = Task.MEMLIST
    allowed = frozenset({ChangeKind.EDGE_INSERT})
    r = 2
    with_drops = False

    def budget(self) -> int:
        return 4 if self.with_drops else 2

    def init_state(self, v, fresh, rnd):
        return _TwoRoundState({}, {}, frozenset(), frozenset(), -1, None)

    def clone_state(self, st):
        return st.clone()

    def _get(self, st, a, b):
        if a > b:
            a, b = b, a
        e = st.beliefs.get(a * self.n + b)
        if e is None:
            e = ((self.ctx.initial_adj[a] >> b & 1) == 1, 0)
        val, asof = e
        if asof < max(st.distrust.get(a, 0), st.distrust.get(b, 0)):
            return None, asof
        return val, asof

    def _set(self, st, a, b, val, asof):
        if a > b:
            a, b = b, a
        key = a * self.n + b
        cur = st.beliefs.get(key)
        if cur is None or asof >= cur[1]:
            st.beliefs[key] = (val, asof)

    def emit(self, st, u, prev, now, rnd):
        gained = bool(now & ~prev)
        lost = bool(prev & ~now)
        n_new = len(st.new_from)
        n_del = len(st.del_from)
        variants = {}
        out = {}
        for v in iter_bits(now):
            echo_new = n_new >= 2 or (n_new == 1 and v not in st.new_from)
            key = echo_new
            if self.with_drops:
                echo_del = n_del >= 2 or (n_del == 1 and v not in st.del_from)
                key = (echo_new, echo_del)
            msg = variants.get(key)
            if msg is None:
                w = BitWriter().put_flag(gained).put_flag(echo_new)
                if self.with_drops:
                    w.put_flag(lost).put_flag(echo_del)
                msg = w.message()
                variants[key] = msg
            out[v] = msg
        return out

    def absorb(self, st, u, prev, now, rnd, inbox):
        gained = now & ~prev
        lost = prev & ~now
        gain_node = gained.bit_length() - 1 if gained else -1

        if gain_node >= 0:
            st.distrust[gain_node] = rnd
            self._set(st, u, gain_node, True, rnd)
        for y in iter_bits(lost):
            self._set(st, u, y, False, rnd)
            st.distrust[y] = rnd

        senders_new = []
        senders_del = []
        echo_new_from = []
        echo_del_from = []
        for v, msg in inbox.items():
            rd = BitReader(msg)
            if rd.take_flag():
                senders_new.append(v)
            if rd.take_flag():
                echo_new_from.append(v)
            if self.with_drops:
                if rd.take_flag():
                    senders_del.append(v)
                if rd.take_flag():
                    echo_del_from.append(v)

        # Resolve last round's two-loss ambiguity via the loss echoes.
        if st.pending is not None:
            a, b, t0 = st.pending
            heard = any(v in (a, b) for v in echo_del_from)
            if not heard:
                self._set(st, a, b, False, t0)
            st.pending = None

        # This round's direct deductions.
        if not gained and not lost:
            if len(senders_new) == 2:
                self._set(st, senders_new[0], senders_new[1], True, rnd)
            if self.with_drops and len(senders_del) == 2:
                st.pending = (senders_del[0], senders_del[1], rnd)

        # Echoes answer "is my last-round gain adjacent to you?".
        if st.last_gain >= 0:
            x = st.last_gain
            for v in inbox:
                if v != x:
                    self._set(st, x, v, v in echo_new_from, rnd - 1)

        st.new_from = frozenset(senders_new)
        st.del_from = frozenset(senders_del)
        st.last_gain = gain_node

        has_pair = lambda a, b: self._get(st, a, b)[0] is True
        return triangles_of_mask(u, now, has_pair)


class TwoRoundCombined(TwoRoundConst):
    """Membership listing under edge insertions plus node/edge deletions."""

    name = "tri-mlist-2round-combined"
    allowed = frozenset(
        {ChangeKind.EDGE_INSERT, ChangeKind.EDGE_DELETE, ChangeKind.NODE_DELETE}
    )
    with_drops = True


register(CatalogEntry(
    name=TwoRoundConst.name,
    task=Task.MEMLIST,
    s=3,
    allowed=TwoRoundConst.allowed,
    r=2,
    budget_doc="2",
    budget_fn=lambda n, r, d: 2,
    factory=TwoRoundConst,
))

register(CatalogEntry(
    name=TwoRoundCombined.name,
    task=Task.MEMLIST,
    s=3,
    allowed=TwoRoundCombined.allowed,
    r=2,
    budget_doc="4",
    budget_fn=lambda n, r, d: 4,
    factory=TwoRoundCombined,
))
