"""Membership listing in r rounds under any change, streaming adjacency rows.

Every node carries a dirty flag (did my neighbor list change this round?)
plus one block of its current n-bit neighbor row, restarting the stream from
block zero whenever the list changes.  Block size ceil(n/r) means a stream
finishes within r rounds of the change that started it, so after the quiet
window preceding a deadline every neighbor's row has fully arrived and is
current.  Clique outputs of any size follow from the rows restricted to the
node's own neighborhood.
"""

from __future__ import annotations

from ..bitio import BitReader, BitWriter
from ..dyngraph import ChangeKind, Task
from ..engine import iter_bits
from .base import (
    AlgoContext,
    Automaton,
    CatalogEntry,
    ceil_div,
    cliques_of_mask,
    register,
)

ALL_CHANGES = frozenset(
    {
        ChangeKind.EDGE_INSERT,
        ChangeKind.EDGE_DELETE,
        ChangeKind.NODE_INSERT,
        ChangeKind.NODE_DELETE,
    }
)


class _BlockState:
    __slots__ = ("restart", "snapshot", "inbound", "rows")

    def __init__(self, restart, snapshot, inbound, rows):
        self.restart = restart    # round my own stream (re)started
        self.snapshot = snapshot  # my neighbor row frozen at the restart
        self.inbound = inbound    # sender -> [restart round, accumulated row]
        self.rows = rows          # sender -> (row, as-of round)

    def clone(self):
        return _BlockState(
            self.restart,
            self.snapshot,
            {k: v.copy() for k, v in self.inbound.items()},
            dict(self.rows),
        )


class RoundBlocks(Automaton):
    """Membership listing of K_s under all four change kinds, r rounds."""

    name = "mlist-rround-blocks"
    task = Task.MEMLIST
    allowed = ALL_CHANGES

    def __init__(self, ctx: AlgoContext):
        super().__init__(ctx)
        self.r = ctx.r
        self.block = ceil_div(ctx.n, ctx.r)
        self.nblocks = ceil_div(ctx.n, self.block)  # <= r

    def supports(self, problem) -> bool:
        return (
            problem.task is self.task
            and problem.s == self.s
            and problem.allowed_changes <= self.allowed
        )

    def budget(self) -> int:
        return self.block + 1

    def init_state(self, v, fresh, rnd):
        # A node always knows the initial graph; a node joining later relies
        # on its neighbors' restarted streams to learn anything newer.
        mask = self.ctx.initial_adj[v] if not fresh else 0
        return _BlockState(rnd if fresh else 0, mask, {}, {})

    def clone_state(self, st):
        return st.clone()

    def _block_bits(self, row, idx):
        width = (
            self.block if idx < self.nblocks - 1 else self.n - (self.nblocks - 1) * self.block
        )
        return width, (row >> (idx * self.block)) & ((1 << width) - 1)

    def emit(self, st, u, prev, now, rnd):
        changed = prev != now
        restart = rnd if changed else st.restart
        snapshot = now if changed else st.snapshot
        idx = rnd - restart
        w = BitWriter().put_flag(changed)
        if 0 <= idx < self.nblocks:
            width, bits = self._block_bits(snapshot, idx)
            w.put(width, bits)
        msg = w.message()
        return {v: msg for v in iter_bits(now)}

    def absorb(self, st, u, prev, now, rnd, inbox):
        if prev != now:
            st.restart = rnd
            st.snapshot = now
        for v, msg in inbox.items():
            rd = BitReader(msg)
            if rd.take_flag():
                st.inbound[v] = [rnd, 0]
            tr = st.inbound.get(v)
            if tr is None:
                continue
            idx = rnd - tr[0]
            if idx >= self.nblocks:
                continue
            width, _ = self._block_bits(0, idx)
            tr[1] |= rd.take(width) << (idx * self.block)
            if idx == self.nblocks - 1:
                st.rows[v] = (tr[1], tr[0])
                del st.inbound[v]

        def has_pair(a, b):
            ra, ta = st.rows.get(a, (self.ctx.initial_adj[a], 0))
            rb, tb = st.rows.get(b, (self.ctx.initial_adj[b], 0))
            if ta >= tb:
                return bool(ra >> b & 1)
            return bool(rb >> a & 1)

        return cliques_of_mask(u, now, has_pair, self.s)


register(CatalogEntry(
    name=RoundBlocks.name,
    task=Task.MEMLIST,
    s=None,  # any clique size: outputs assemble from the same rows
    allowed=ALL_CHANGES,
    r=None,  # block size adapts to the problem's deadline parameter
    budget_doc="ceil(n/r) + 1",
    budget_fn=lambda n, r, d: ceil_div(n, r) + 1,
    factory=RoundBlocks,
))
