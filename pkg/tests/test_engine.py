import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyncliq import engine
from dyncliq.algorithms import instantiate, step_node
from dyncliq.bitio import BitMessage
from dyncliq.dyngraph import (
    ChangeKind,
    DynamicScenario,
    Graph,
    ProblemSpec,
    Task,
    TopologyChange,
    load_scenario,
)
from dyncliq.engine import Simulation, UnsupportedProblem, deadline_rounds, meter
from dyncliq.generators import random_scenario


def scenario_of(text):
    return load_scenario(text)


TRIANGLE_LIST = """
n 3
problem list s=3 r=1 changes=edge_insert
node 0 1 2
edge 0 1
edge 1 2
event edge_insert 0 2
"""


def test_run_triangle_insertion_passes_with_two_bits():
    sc = scenario_of(TRIANGLE_LIST)
    rep = engine.run(sc, instantiate("tri-list-edgeins-1bit", sc))
    assert rep.passed
    assert rep.max_bits == 2


def test_budget_zero_flags_the_insertion_round():
    sc = scenario_of(TRIANGLE_LIST)
    rep = engine.run(sc, instantiate("tri-list-edgeins-1bit", sc), budget=0)
    assert not rep.passed
    assert any(kind == "BudgetExceeded" for _, kind, _ in rep.violations)


def test_budget_override_above_computed_warns():
    sc = scenario_of(TRIANGLE_LIST)
    rep = engine.run(sc, instantiate("tri-list-edgeins-1bit", sc), budget=10)
    assert rep.passed
    assert rep.warnings


def test_unsupported_problem():
    sc = scenario_of(TRIANGLE_LIST)
    with pytest.raises(UnsupportedProblem):
        Simulation(sc, instantiate("tri-mlist-nodedel-0bit", sc))


def test_fig1_style_run_passes_under_digest_lister(tmp_path):
    from dyncliq.lowerbounds import AdversarySpec, Family, gen_adversary

    sc = gen_adversary(AdversarySpec(Family.TRI_EDGE_INS, n=16, t=4, seed=5, target=3))
    rep = engine.run(sc, instantiate("tri-mlist-edgeins-sqrt", sc))
    assert rep.passed


# -- deadlines ----------------------------------------------------------------


def _sc(events, r=1, allowed=(ChangeKind.EDGE_INSERT,)):
    problem = ProblemSpec(Task.LIST, 3, r, frozenset(allowed))
    return DynamicScenario(4, Graph(4, frozenset(range(4))), tuple(events), problem)


def test_deadline_rounds_r1_every_round():
    ev = [TopologyChange.edge_insert(0, 1), TopologyChange.noop(),
          TopologyChange.edge_insert(0, 2), TopologyChange.noop(),
          TopologyChange.noop()]
    assert deadline_rounds(_sc(ev)) == {1, 2, 3, 4, 5}


def test_deadline_rounds_r2_one_quiet_round():
    ev = [TopologyChange.edge_insert(0, 1), TopologyChange.noop()]
    assert deadline_rounds(_sc(ev, r=2)) == {2}


def test_deadline_rounds_r3_enumerated_windows():
    ev = [TopologyChange.edge_insert(0, 1), TopologyChange.noop(),
          TopologyChange.noop(), TopologyChange.edge_insert(0, 2),
          TopologyChange.noop()]
    sc = _sc(ev, r=3)
    # independent enumeration of suffix-quiet windows
    expect = set()
    for i in range(1, len(ev) + 1):
        window = ev[max(0, i - 2):i]
        if all(e.kind is ChangeKind.NOOP for e in window):
            expect.add(i)
    assert expect == {3}
    assert deadline_rounds(sc) == expect


def test_deadline_rounds_quiet_prefix_counts():
    ev = [TopologyChange.noop(), TopologyChange.noop(),
          TopologyChange.edge_insert(0, 1), TopologyChange.noop()]
    assert deadline_rounds(_sc(ev, r=3)) == {1, 2}
    assert deadline_rounds(_sc(ev, r=2)) == {1, 2, 4}


# -- metering -----------------------------------------------------------------


def test_meter_examples():
    assert meter({}) == (0, 0)
    assert meter({(0, 1): BitMessage(3, 0), (1, 0): BitMessage(5, 1)}) == (5, 8)


def test_meter_full_digest_insertion_round_n16():
    # The insertion-round message carries announce flag + id + activity mask:
    # 1 + 4 + 4 bits at n=16.
    problem = ProblemSpec(Task.MEMLIST, 3, 1, frozenset({ChangeKind.EDGE_INSERT}))
    g0 = Graph(16, frozenset(range(16)), frozenset({(1, 2)}))
    sc = DynamicScenario(16, g0, (TopologyChange.edge_insert(0, 1),), problem)
    sim = Simulation(sc, instantiate("tri-mlist-edgeins-sqrt", sc), record_trace=True)
    sim.run_scenario()
    trace = sim.traces[0]
    widths = {k: m.length for k, m in trace.sent.items()}
    assert widths[(0, 1)] == 1 + 4 + 4
    assert widths[(1, 0)] == 1 + 4 + 4
    assert widths[(1, 2)] == 1 + 4  # announce only
    assert meter(trace.sent)[0] == 9


# -- determinism & reporting --------------------------------------------------


def test_rerun_reproduces_report_exactly():
    problem = ProblemSpec(Task.MEMLIST, 3, 1,
                          frozenset({ChangeKind.EDGE_INSERT, ChangeKind.EDGE_DELETE,
                                     ChangeKind.NODE_DELETE}))
    sc = random_scenario(9, 25, problem, seed=11)
    reps = []
    for _ in range(2):
        rep = engine.run(sc, instantiate("tri-mlist-insdel-sqrt", sc))
        reps.append(rep.render_machine())
    assert reps[0] == reps[1]


def test_fast_and_strict_checking_agree():
    problem = ProblemSpec(Task.MEMLIST, 3, 1,
                          frozenset({ChangeKind.EDGE_INSERT}))
    for seed in range(25):
        sc = random_scenario(8, 20, problem, seed=seed)
        alg1 = instantiate("tri-mlist-edgeins-sqrt", sc)
        alg2 = instantiate("tri-mlist-edgeins-sqrt", sc)
        fast = engine.run(sc, alg1, strict_oracle=False)
        strict = engine.run(sc, alg2, strict_oracle=True)
        assert fast.passed == strict.passed
        assert [r.verdict for r in fast.rounds] == [r.verdict for r in strict.rounds]


def test_messages_flow_on_new_edges_and_never_from_deleted_nodes():
    problem = ProblemSpec(Task.MEMLIST, 3, 1,
                          frozenset({ChangeKind.EDGE_INSERT, ChangeKind.NODE_DELETE}))
    g0 = Graph(4, frozenset(range(4)), frozenset({(0, 1)}))
    ev = (TopologyChange.edge_insert(1, 2), TopologyChange.node_delete(0))
    sc = DynamicScenario(4, g0, ev, problem)
    sim = Simulation(sc, instantiate("tri-mlist-insdel-sqrt", sc), record_trace=True)
    sim.run_scenario()
    first, second = sim.traces
    assert (1, 2) in first.sent and (2, 1) in first.sent
    assert all(0 not in key for key in second.sent)
    assert 0 not in second.outputs


def test_report_render_includes_violations():
    sc = scenario_of(TRIANGLE_LIST)
    rep = engine.run(sc, instantiate("tri-list-edgeins-1bit", sc), budget=1)
    text = rep.render_human()
    assert "BudgetExceeded" in text and "passed false" in text
    machine = rep.render_machine()
    assert '"type": "footer"' in machine and '"passed": false' in machine


def test_step_node_surface_is_pure_and_phase_ordered():
    sc = scenario_of(TRIANGLE_LIST)
    alg = instantiate("tri-list-edgeins-1bit", sc)
    st0 = alg.init_state(2, fresh=False, rnd=0)
    snapshot = alg.clone_state(st0)
    inbox = {0: BitMessage(2, 0b01), 1: BitMessage(2, 0b01)}  # both flag a gain
    st1, outbox, output = step_node(alg, st0, {0, 1}, {0, 1}, inbox, node=2, rnd=1)
    assert output == frozenset({(0, 1, 2)})
    assert set(outbox) == {0, 1}
    # input state untouched; outbox computed before the inbox was read
    assert st0.beliefs == snapshot.beliefs
    assert all(m.length == 2 for m in outbox.values())
