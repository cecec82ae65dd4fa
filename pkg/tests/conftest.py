"""Shared corpus: fixed graphs, a seeded random-graph generator, helpers.

Set LPA_SEED to change the randomized streams; the default keeps runs
reproducible.
"""

import json
import os
import random

import pytest

from graphideal import EdgeRef, Graph, load_fixture, parse_graph

SEED = int(os.environ.get("LPA_SEED", "20260818"))

FAMILY_NAMES = list("abcdefgh")


def make_graph(vertices, edges) -> Graph:
    doc = {
        "vertices": list(vertices),
        "edges": [
            {"name": n, "src": s, "dst": d, "mult": m} for (n, s, d, m) in edges
        ],
    }
    return parse_graph(json.dumps(doc))


def two_loops() -> Graph:
    return make_graph(["z"], [("a", "z", "z", 1), ("b", "z", "z", 2)])


def chain_parallel() -> Graph:
    return make_graph(["p", "q", "r"], [("c", "p", "q", 2), ("d", "q", "r", 1)])


def cycle_exit() -> Graph:
    return make_graph(
        ["a1", "b1", "c1"],
        [("e1", "a1", "b1", 1), ("e2", "b1", "a1", 1), ("e3", "b1", "c1", 1)],
    )


def rose_sink() -> Graph:
    return make_graph(["s", "k"], [("l", "s", "s", 1), ("t", "s", "k", 1)])


def five_graphs() -> dict[str, Graph]:
    return {
        "two_loops": two_loops(),
        "fixture": load_fixture(),
        "chain_parallel": chain_parallel(),
        "cycle_exit": cycle_exit(),
        "rose_sink": rose_sink(),
    }


def random_graph(
    rng: random.Random, *, max_vertices: int = 6, max_families: int = 8, allow_omega: bool = True
) -> Graph:
    n = rng.randint(2, max_vertices)
    vertices = [f"u{i}" for i in range(n)]
    m = rng.randint(1, max_families)
    edges = []
    for name in FAMILY_NAMES[:m]:
        src = rng.choice(vertices)
        dst = rng.choice(vertices)
        roll = rng.random()
        if allow_omega and roll < 0.15:
            mult = "omega"
        elif roll < 0.30:
            mult = 2
        else:
            mult = 1
        edges.append((name, src, dst, mult))
    return make_graph(vertices, edges)


def paths_into(g: Graph, target: str, *, max_len: int, omega_cap: int = 2):
    """All paths of length <= max_len ending at target (omega indices capped)."""
    found = [g.empty_path(target)]
    frontier = list(found)
    for _ in range(max_len):
        grown = []
        for p in frontier:
            head = p.source
            for fam in g.families.values():
                if fam.dst != head:
                    continue
                count = omega_cap if fam.is_omega else fam.mult
                for i in range(count):
                    grown.append(g.make_path([EdgeRef(fam.name, i), *p.edges]))
        found.extend(grown)
        frontier = grown
    return found


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


@pytest.fixture(scope="session")
def corpus() -> dict[str, Graph]:
    return five_graphs()
