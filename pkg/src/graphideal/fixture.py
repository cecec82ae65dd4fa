"""Bundled demonstration graph.

Two vertices on a cycle, each also emitting an omega family into a common
sink.  Both cycle vertices are breaking vertices for the core made of the
sink alone, which is exactly the shape on which the legacy construction
loses part of the ideal.
"""

from __future__ import annotations

from importlib.resources import files

from .graphs import Graph, parse_graph

FIXTURE_CORE = frozenset({"x"})
FIXTURE_BREAKERS = frozenset({"v", "w"})


def fixture_text() -> str:
    return files("graphideal.data").joinpath("counterexample.json").read_text()


def load_fixture() -> Graph:
    return parse_graph(fixture_text())
