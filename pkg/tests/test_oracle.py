from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyncliq.dyngraph import ChangeKind, Graph, ProblemSpec, Task, apply_change, TopologyChange
from dyncliq.engine import cliques_from_masks, mask_of
from dyncliq.lowerbounds import AdversarySpec, Family, gen_adversary
from dyncliq.oracle import (
    InvalidReduction,
    cliques_containing,
    enumerate_cliques,
    expected_outputs,
    reduce_output,
    verify_cliques_by_edges,
)


def complete_graph(n):
    return Graph(n, frozenset(range(n)),
                 frozenset((a, b) for a, b in combinations(range(n), 2)))


def brute_cliques(g: Graph, s: int):
    """Fully independent reference: filter all s-subsets by pairwise edges."""
    out = set()
    for tup in combinations(sorted(g.present), s):
        if all(g.has_edge(a, b) for a, b in combinations(tup, 2)):
            out.add(tup)
    return frozenset(out)


def test_triangle():
    g = Graph(3, frozenset({0, 1, 2}), frozenset({(0, 1), (0, 2), (1, 2)}))
    assert enumerate_cliques(g, 3) == {(0, 1, 2)}


def test_k5_has_five_k4():
    assert len(enumerate_cliques(complete_graph(5), 4)) == 5


def test_fig1_final_graph_triangles_through_hub():
    # Complete staged pattern at n=8, t=3: after the full sequence the hub's
    # triangles are exactly (hub, u, w*) for u adjacent to the probed node.
    sc = gen_adversary(AdversarySpec(Family.TRI_EDGE_INS, n=8, t=3, target=1))
    g = sc.replay()[-1]
    hub = 7  # staged side 0..3, middle column 4..6, hub last
    w_star = 1
    tris = cliques_containing(enumerate_cliques(g, 3), hub)
    expect = frozenset(
        tuple(sorted((hub, u, w_star))) for u in range(4, 7) if g.has_edge(u, w_star)
    )
    assert tris == expect
    assert len(tris) == 3  # complete pattern: every middle node touches w*


def all_graphs(n):
    pool = list(combinations(range(n), 2))
    for bits in range(1 << len(pool)):
        edges = frozenset(pool[i] for i in range(len(pool)) if bits >> i & 1)
        yield Graph(n, frozenset(range(n)), edges)


def test_exhaustive_cross_check_small():
    # Every graph on <= 4 nodes in full; spot structure at 6 below.
    for n in (3, 4):
        for g in all_graphs(n):
            for s in (3, 4):
                got = enumerate_cliques(g, s) if s <= n else frozenset()
                assert got == brute_cliques(g, s)
                assert verify_cliques_by_edges(g, s, got)


@settings(max_examples=120, deadline=None)
@given(st.sets(st.sampled_from(list(combinations(range(6), 2)))), st.integers(3, 5))
def test_cross_check_six_nodes(edges, s):
    g = Graph(6, frozenset(range(6)), frozenset(edges))
    got = enumerate_cliques(g, s)
    assert got == brute_cliques(g, s)
    assert verify_cliques_by_edges(g, s, got)


@settings(max_examples=80, deadline=None)
@given(st.sets(st.sampled_from(list(combinations(range(6), 2))), max_size=12))
def test_monotone_under_edge_insertion(edges):
    g = Graph(6, frozenset(range(6)), frozenset(edges))
    missing = [p for p in combinations(range(6), 2) if p not in g.edges]
    if not missing:
        return
    g2 = apply_change(g, TopologyChange.edge_insert(*missing[0]))
    assert enumerate_cliques(g, 3) <= enumerate_cliques(g2, 3)


def test_fast_mask_enumerator_matches_oracle():
    for n in (4, 5):
        for g in all_graphs(n):
            adj = [0] * n
            for a, b in g.edges:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
            for s in (3, 4):
                fast = frozenset(cliques_from_masks(mask_of(g.present), adj, s))
                assert fast == enumerate_cliques(g, s)


# -- expected outputs --------------------------------------------------------


def test_memdetect_triangle_all_true():
    g = Graph(3, frozenset({0, 1, 2}), frozenset({(0, 1), (0, 2), (1, 2)}))
    exp = expected_outputs(g, ProblemSpec(Task.MEMDETECT, 3, 1, frozenset()))
    assert not exp.check({0: True, 1: True, 2: True})
    assert exp.check({0: True, 1: False, 2: True})


def test_detect_empty_graph_rejects_positives():
    g = Graph(3, frozenset({0, 1, 2}))
    exp = expected_outputs(g, ProblemSpec(Task.DETECT, 3, 1, frozenset()))
    assert not exp.check({0: False, 1: False, 2: False})
    assert exp.check({0: True, 1: False, 2: False})


def test_memlist_k4_minus_edge():
    g = Graph(4, frozenset(range(4)),
              frozenset(p for p in combinations(range(4), 2) if p != (2, 3)))
    exp = expected_outputs(g, ProblemSpec(Task.MEMLIST, 3, 1, frozenset()))
    mine = cliques_containing(exp.cliques, 0)
    assert mine == {(0, 1, 2), (0, 1, 3)}  # two triangles at the node off the gap
    assert len(mine) == 2


def test_list_checks_union_and_soundness():
    g = Graph(3, frozenset({0, 1, 2}), frozenset({(0, 1), (0, 2), (1, 2)}))
    exp = expected_outputs(g, ProblemSpec(Task.LIST, 3, 1, frozenset()))
    assert not exp.check({0: frozenset({(0, 1, 2)}), 1: frozenset(), 2: frozenset()})
    assert exp.check({0: frozenset(), 1: frozenset(), 2: frozenset()})
    assert exp.check({0: frozenset({(0, 1, 2)}), 1: frozenset({(0, 1, 9)}), 2: frozenset()})


# -- reductions ---------------------------------------------------------------


def test_reduce_output_arrows():
    assert reduce_output(Task.MEMLIST, Task.MEMDETECT, frozenset()) is False
    assert reduce_output(Task.MEMLIST, Task.MEMDETECT, frozenset({(0, 1, 2)})) is True
    tris = frozenset({(0, 1, 2)})
    assert reduce_output(Task.MEMLIST, Task.LIST, tris) == tris
    assert reduce_output(Task.LIST, Task.DETECT, tris) is True
    assert reduce_output(Task.MEMDETECT, Task.DETECT, True) is True


def test_invalid_reduction_rejected():
    with pytest.raises(InvalidReduction):
        reduce_output(Task.LIST, Task.MEMLIST, frozenset())
    with pytest.raises(InvalidReduction):
        reduce_output(Task.DETECT, Task.LIST, True)
