import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyncliq.dyngraph import (
    AbsentNode,
    ChangeKind,
    DynamicScenario,
    Graph,
    ParseError,
    PreconditionViolation,
    ProblemSpec,
    Task,
    TopologyChange,
    apply_change,
    dump_scenario,
    load_scenario,
    neighbor_view,
)
from dyncliq.lowerbounds import AdversarySpec, Family, gen_adversary


def triangle_graph(n=3):
    return Graph(n, frozenset({0, 1, 2}), frozenset({(0, 1), (0, 2), (1, 2)}))


def test_node_insert_into_empty():
    g = Graph(4)
    g2 = apply_change(g, TopologyChange.node_insert(0))
    assert g2.present == {0}
    assert not g2.edges


def test_node_delete_removes_incident_edges():
    g2 = apply_change(triangle_graph(), TopologyChange.node_delete(2))
    assert g2.present == {0, 1}
    assert g2.edges == {(0, 1)}


def test_edge_insert_closes_path():
    path = Graph(3, frozenset({0, 1, 2}), frozenset({(0, 1), (1, 2)}))
    g2 = apply_change(path, TopologyChange.edge_insert(0, 2))
    assert g2.edges == triangle_graph().edges


@pytest.mark.parametrize(
    "change, reason",
    [
        (TopologyChange.edge_insert(0, 1), "already present"),
        (TopologyChange.edge_delete(0, 3), "endpoint"),
        (TopologyChange.node_insert(1), "already present"),
        (TopologyChange.node_delete(3), "not present"),
    ],
)
def test_preconditions(change, reason):
    with pytest.raises(PreconditionViolation):
        apply_change(triangle_graph(4), change)


def test_neighbor_view():
    assert neighbor_view(triangle_graph(), 0) == {1, 2}
    star = Graph(5, frozenset(range(5)),
                 frozenset((0, i) for i in range(1, 5)))
    assert neighbor_view(star, 3) == {0}
    lonely = Graph(1, frozenset({0}))
    assert neighbor_view(lonely, 0) == frozenset()
    with pytest.raises(AbsentNode):
        neighbor_view(Graph(2, frozenset({0})), 1)


# -- scenario format --------------------------------------------------------


MINIMAL = """
n 3
problem list s=3 r=1 changes=edge_insert
node 0 1 2
event edge_insert 0 1
"""


def test_load_minimal():
    sc = load_scenario(MINIMAL)
    assert sc.n == 3
    assert len(sc.events) == 1
    assert sc.problem.task is Task.LIST


def test_load_rejects_bad_event_with_index():
    text = """
n 3
problem list s=3 r=1 changes=edge_insert,edge_delete
node 0 1 2
event edge_insert 0 1
event edge_delete 1 2
"""
    with pytest.raises(PreconditionViolation) as e:
        load_scenario(text)
    assert e.value.index == 1


@pytest.mark.parametrize(
    "line",
    [
        "bogus 1",
        "edge 0",
        "edge 0 0",
        "event warp 0 1",
        "event edge_insert 0",
        "event noop 3",
        "problem juggling s=3",
        "n x",
    ],
)
def test_parse_errors_carry_line_numbers(line):
    text = MINIMAL + line + "\n"
    with pytest.raises(ParseError) as e:
        load_scenario(text)
    assert e.value.line == len(text.splitlines())


def test_fig1_style_document_roundtrips_with_generator_count():
    # The staged bipartite construction at n=8, t=3 with the complete
    # pattern: 4*3 wiring edges + 3 hub edges + 1 late edge.
    sc = gen_adversary(AdversarySpec(Family.TRI_EDGE_INS, n=8, t=3, target=0))
    assert len(sc.events) == 4 * 3 + 3 + 1
    sc2 = load_scenario(dump_scenario(sc))
    assert sc2.events == sc.events
    assert sc2.initial == sc.initial
    assert sc2.problem == sc.problem


def test_dump_load_roundtrip_all_change_kinds():
    text = """
n 6
problem memdetect s=3 r=2 changes=edge_delete,edge_insert,node_delete,node_insert
node 0 1 2 3
edge 0 1
edge 2 3
event edge_insert 1 2
event noop
event node_insert 4 0 1
event node_delete 3
event edge_delete 0 1
"""
    sc = load_scenario(text)
    assert load_scenario(dump_scenario(sc)) == sc


# -- invariants -------------------------------------------------------------


def graphs(n=5):
    edge_pool = [(a, b) for a in range(n) for b in range(a + 1, n)]
    return st.builds(
        lambda picked: Graph(n, frozenset(range(n)), frozenset(picked)),
        st.sets(st.sampled_from(edge_pool)),
    )


def applicable(g: Graph):
    """All applicable single changes on g (universe padded by one free id)."""
    out = [TopologyChange.noop()]
    present = sorted(g.present)
    for i, a in enumerate(present):
        for b in present[i + 1:]:
            pair = (a, b)
            if pair in g.edges:
                out.append(TopologyChange.edge_delete(a, b))
            else:
                out.append(TopologyChange.edge_insert(a, b))
    for v in present:
        out.append(TopologyChange.node_delete(v))
    for v in range(g.n):
        if v not in g.present:
            out.append(TopologyChange.node_insert(v, present[:2]))
            break
    return out


@settings(max_examples=60, deadline=None)
@given(graphs(5), st.data())
def test_replay_is_deterministic_and_bounded(g0, data):
    g = Graph(6, g0.present, g0.edges)
    events = []
    for _ in range(6):
        c = data.draw(st.sampled_from(applicable(g)))
        events.append(c)
        g = apply_change(g, c)
        assert len(g.present) <= g.n
    problem = ProblemSpec(Task.LIST, 3, 1, frozenset(ChangeKind) - {ChangeKind.NOOP})
    sc = DynamicScenario(6, Graph(6, g0.present, g0.edges), tuple(events), problem)
    assert sc.replay() == sc.replay()


@settings(max_examples=60, deadline=None)
@given(graphs(5), st.data())
def test_inverse_change_restores_graph(g, data):
    c = data.draw(st.sampled_from(applicable(g)))
    g2 = apply_change(g, c)
    inverse = {
        ChangeKind.EDGE_INSERT: lambda: TopologyChange.edge_delete(c.u, c.v),
        ChangeKind.EDGE_DELETE: lambda: TopologyChange.edge_insert(c.u, c.v),
        ChangeKind.NODE_INSERT: lambda: TopologyChange.node_delete(c.v),
        ChangeKind.NOOP: TopologyChange.noop,
    }.get(c.kind)
    if inverse is None:  # a node deletion forgets its incident edges
        return
    assert apply_change(g2, inverse()) == g


def test_reinsertion_is_flagged_as_extension():
    problem = ProblemSpec(Task.LIST, 3, 1,
                          frozenset({ChangeKind.NODE_INSERT, ChangeKind.NODE_DELETE}))
    events = (TopologyChange.node_delete(0), TopologyChange.node_insert(0))
    sc = DynamicScenario(3, Graph(3, frozenset({0, 1})), events, problem)
    sc.validate()
    assert sc.uses_reinsertion()
    assert not DynamicScenario(3, Graph(3, frozenset({0, 1})),
                               events[:1], problem).uses_reinsertion()
