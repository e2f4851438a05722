"""Catalog of deterministic node automatons.

Import this package (or call catalog()) to populate the registry; the
individual modules group entries by technique.
"""

from __future__ import annotations

from .base import (  # noqa: F401
    Automaton,
    CatalogEntry,
    MalformedInbox,
    ReducedAutomaton,
    UnknownAlgorithm,
    budget,
    catalog,
    get_entry,
    instantiate,
    max_degree,
    step_node,
)

_loaded = False


def _load_all() -> None:
    global _loaded
    if _loaded:
        return
    _loaded = True
    from . import blocks, cliques, deletions, listing, mdtct, sqrt_digest, tworound  # noqa: F401


_load_all()
