"""dyncliq: round-synchronous simulation of clique detection and listing in
dynamic networks under per-message bit budgets."""

from __future__ import annotations

__version__ = "0.1.0"

from .dyngraph import (  # noqa: F401
    ChangeKind,
    DynamicScenario,
    Graph,
    ProblemSpec,
    Task,
    TopologyChange,
    apply_change,
    dump_scenario,
    load_scenario,
    neighbor_view,
)
from .engine import Simulation, SimulationReport, deadline_rounds, meter, run  # noqa: F401
from .oracle import enumerate_cliques, expected_outputs, reduce_solver  # noqa: F401
