"""Saturated hereditary vertex sets, breaking vertices, admissible pairs.

A vertex set is hereditary when edges never leave it, and saturated when it
already contains every regular vertex whose outgoing edges all land in it.
Pairs (core, breakers) with a saturated hereditary core and a choice of
breaking vertices index the graded ideals of the graph's algebras.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .graphs import Graph, VertexKind


def is_hereditary(g: Graph, subset: Iterable[str]) -> bool:
    sub = {g.check_vertex(v) for v in subset}
    return all(fam.dst in sub for v in sub for fam in g.out_families(v))


def is_saturated(g: Graph, subset: Iterable[str]) -> bool:
    sub = {g.check_vertex(v) for v in subset}
    for v in g.vertices:
        if v in sub or g.classify_vertex(v) is not VertexKind.REGULAR:
            continue
        if all(fam.dst in sub for fam in g.out_families(v)):
            return False
    return True


def saturate(g: Graph, subset: Iterable[str]) -> frozenset[str]:
    """Least saturated superset of a hereditary set, by fixed-point iteration."""
    sub = {g.check_vertex(v) for v in subset}
    if not is_hereditary(g, sub):
        raise ValueError("saturate expects a hereditary set")
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in sub or g.classify_vertex(v) is not VertexKind.REGULAR:
                continue
            if all(fam.dst in sub for fam in g.out_families(v)):
                sub.add(v)
                changed = True
    return frozenset(sub)


def breaking_vertices(g: Graph, core: Iterable[str]) -> frozenset[str]:
    """Infinite emitters with finitely many, but some, edges avoiding the core."""
    coreset = {g.check_vertex(v) for v in core}
    found = set()
    for v in g.vertices:
        if g.classify_vertex(v) is not VertexKind.INFINITE_EMITTER:
            continue
        outside = [f for f in g.out_families(v) if f.dst not in coreset]
        if not outside:
            continue
        if any(f.is_omega for f in outside):
            continue
        found.add(v)
    return frozenset(found)


@dataclass(frozen=True)
class AdmissiblePair:
    """A saturated hereditary core plus chosen breaking vertices outside it."""

    core: frozenset[str]
    breakers: frozenset[str]

    @staticmethod
    def make(g: Graph, core: Iterable[str], breakers: Iterable[str] = ()) -> "AdmissiblePair":
        coreset = frozenset(g.check_vertex(v) for v in core)
        brset = frozenset(g.check_vertex(v) for v in breakers)
        if not is_hereditary(g, coreset):
            raise ValueError(f"core {sorted(coreset)} is not hereditary")
        if not is_saturated(g, coreset):
            raise ValueError(f"core {sorted(coreset)} is not saturated")
        allowed = breaking_vertices(g, coreset)
        if not brset <= allowed:
            bad = sorted(brset - allowed)
            raise ValueError(f"not breaking vertices for this core: {bad}")
        if brset & coreset:
            raise ValueError("breakers may not meet the core")
        return AdmissiblePair(coreset, brset)

    def label(self) -> str:
        h = ",".join(sorted(self.core))
        s = ",".join(sorted(self.breakers))
        return f"H={h};S={s}"


def saturated_hereditary_sets(g: Graph, *, bound: int = 16) -> list[frozenset[str]]:
    """All saturated hereditary subsets, by brute force over the powerset."""
    if len(g.vertices) > bound:
        raise ValueError(f"graph exceeds the {bound}-vertex enumeration bound")
    out = []
    for size in range(len(g.vertices) + 1):
        for combo in combinations(g.vertices, size):
            sub = frozenset(combo)
            if is_hereditary(g, sub) and is_saturated(g, sub):
                out.append(sub)
    return out


def enumerate_admissible_pairs(g: Graph, *, bound: int = 16) -> Iterator[AdmissiblePair]:
    """All admissible pairs in deterministic (size, name) order."""
    for core in saturated_hereditary_sets(g, bound=bound):
        allowed = sorted(breaking_vertices(g, core))
        for size in range(len(allowed) + 1):
            for combo in combinations(allowed, size):
                yield AdmissiblePair(core, frozenset(combo))
