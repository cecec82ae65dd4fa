"""Graph parsing, path enumeration, cycles, and the two cycle conditions.

Path and cycle answers are cross-checked against independent brute-force
enumerations written before the expected values were frozen.
"""

import json
import random

import pytest

from graphideal import (
    EdgePool,
    EdgeRef,
    GraphFormatError,
    condition_K,
    condition_L,
    emit_graph,
    graphs_equal,
    parse_graph,
    vertex_simple_cycles,
)

from conftest import SEED, cycle_exit, five_graphs, make_graph, random_graph, two_loops


# -- parsing and round trips --------------------------------------------------


def test_parse_emit_round_trip_on_corpus():
    for name, g in five_graphs().items():
        again = parse_graph(emit_graph(g))
        assert graphs_equal(g, again), name


def test_parse_emit_round_trip_randomized():
    rng = random.Random(SEED)
    for _ in range(25):
        g = random_graph(rng)
        assert graphs_equal(g, parse_graph(emit_graph(g)))


def test_parse_rejects_malformed_json():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("{not json")
    assert exc.value.kind == "malformed"


def test_parse_rejects_dangling_edge():
    doc = {"vertices": ["a"], "edges": [{"name": "e", "src": "a", "dst": "b", "mult": 1}]}
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(json.dumps(doc))
    assert exc.value.kind == "dangling"


def test_parse_rejects_duplicate_family():
    doc = {
        "vertices": ["a"],
        "edges": [
            {"name": "e", "src": "a", "dst": "a", "mult": 1},
            {"name": "e", "src": "a", "dst": "a", "mult": 2},
        ],
    }
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(json.dumps(doc))
    assert exc.value.kind == "duplicate"


def test_parse_rejects_bad_multiplicity():
    doc = {"vertices": ["a"], "edges": [{"name": "e", "src": "a", "dst": "a", "mult": 0}]}
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(json.dumps(doc))
    assert exc.value.kind == "malformed"


# -- path enumeration against a brute-force oracle ----------------------------


def brute_paths(g, max_len, omega_cap):
    """Independent recursive enumeration; returns a set of word strings."""
    words = set(g.vertices)

    def walk(at, tokens, remaining):
        if remaining == 0:
            return
        for fam in g.out_families(at):
            count = omega_cap if fam.is_omega else fam.mult
            for i in range(count):
                tok = g.edge_token(EdgeRef(fam.name, i))
                words.add(".".join(tokens + [tok]))
                walk(fam.dst, tokens + [tok], remaining - 1)

    for v in g.vertices:
        walk(v, [], max_len)
    return words


@pytest.mark.parametrize("name", sorted(five_graphs()))
def test_enumerate_paths_matches_brute_force(name):
    g = five_graphs()[name]
    got = list(g.enumerate_paths(max_len=3, omega_limit=2))
    words = [g.path_word(p) for p in got]
    assert len(words) == len(set(words)), "duplicate paths emitted"
    for p in got:
        at = p.source
        for e in p.edges:
            assert g.edge_src(e) == at
            at = g.edge_dst(e)
        assert at == p.target
    assert set(words) == brute_paths(g, 3, 2)


def test_enumerate_paths_ordering_is_length_then_lex():
    g = two_loops()
    words = [g.path_word(p) for p in g.enumerate_paths(max_len=2)]
    lengths = [0 if w == "z" else w.count(".") + 1 for w in words]
    assert lengths == sorted(lengths)
    by_len = {}
    for w, n in zip(words, lengths):
        by_len.setdefault(n, []).append(w)
    for n, group in by_len.items():
        assert group == sorted(group), f"length {n} not lexicographic"


def test_enumerate_paths_randomized_against_brute_force():
    rng = random.Random(SEED + 1)
    for _ in range(15):
        g = random_graph(rng, max_vertices=4, max_families=5)
        words = {g.path_word(p) for p in g.enumerate_paths(max_len=3, omega_limit=2)}
        assert words == brute_paths(g, 3, 2)


# -- vertex-simple cycles against a brute-force oracle ------------------------


def brute_cycles(g, max_len, omega_cap):
    """Set of frozensets of edge tokens for vertex-simple cycles."""
    found = set()

    def walk(start, at, trail, seen):
        if len(trail) >= max_len:
            return
        for fam in g.out_families(at):
            count = omega_cap if fam.is_omega else fam.mult
            for i in range(count):
                tok = g.edge_token(EdgeRef(fam.name, i))
                if fam.dst == start:
                    found.add(tuple(sorted(trail + [tok])))
                elif fam.dst not in seen:
                    walk(start, fam.dst, trail + [tok], seen | {fam.dst})

    for v in g.vertices:
        walk(v, v, [], {v})
    return found


@pytest.mark.parametrize("name", sorted(five_graphs()))
def test_vertex_simple_cycles_match_brute_force(name):
    g = five_graphs()[name]
    report = vertex_simple_cycles(g, max_len=len(g.vertices), pool=EdgePool(omega_cap=2))
    got = {tuple(sorted(g.edge_token(e) for e in c.edges)) for c in report.cycles}
    assert got == brute_cycles(g, len(g.vertices), 2)


def test_vertex_simple_cycles_randomized():
    rng = random.Random(SEED + 2)
    for _ in range(20):
        g = random_graph(rng, max_vertices=5, max_families=6)
        report = vertex_simple_cycles(g, max_len=len(g.vertices), pool=EdgePool(omega_cap=2))
        got = {tuple(sorted(g.edge_token(e) for e in c.edges)) for c in report.cycles}
        assert got == brute_cycles(g, len(g.vertices), 2)


def test_cycle_canonicalization_merges_rotations():
    g = cycle_exit()
    report = vertex_simple_cycles(g, max_len=3)
    assert len(report.cycles) == 1
    only = report.cycles[0]
    assert {g.edge_src(e) for e in only.edges} == {"a1", "b1"}


# -- cycle conditions ----------------------------------------------------------


def test_conditions_on_corpus():
    graphs = five_graphs()
    expected = {
        # (condition_L, condition_K)
        "fixture": (True, False),
        "two_loops": (True, True),
        "cycle_exit": (True, False),
        "rose_sink": (True, False),
        "chain_parallel": (True, True),  # acyclic: both vacuous
    }
    for name, (want_l, want_k) in expected.items():
        g = graphs[name]
        assert condition_L(g) is want_l, name
        assert condition_K(g) is want_k, name


def test_cycle_without_exit_fails_condition_l():
    g = make_graph(["a", "b"], [("e", "a", "b", 1), ("f", "b", "a", 1)])
    assert condition_L(g) is False
    assert condition_K(g) is False
