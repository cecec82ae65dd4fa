"""Graphs that realize graded ideals: path sets and the two constructions.

Given an admissible pair, the ideal graph keeps the core and breaker vertices,
keeps every edge leaving the core and every core-bound edge leaving a breaker,
and adds one proxy vertex per qualifying path together with a single ``via``
edge from the proxy to the path's endpoint.  Two path families qualify:

* entry paths: the last edge lands in the core and leaves from outside
  core + breakers;
* breaker paths: positive length, ending at a breaker vertex.

The legacy construction instead uses positive-length paths that start outside
the core, end in core + breakers, and whose interior ranges avoid
core + breakers, minus the single edges from a breaker into the core.  The
two constructions coincide exactly when no breakers are chosen; on pairs with
breakers the legacy graph is genuinely smaller, which is the point of the
counterexample replay in the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .graphs import (
    EdgeFamily,
    EdgePool,
    EdgeRef,
    Graph,
    Path,
    vertex_simple_cycles,
)
from .lattice import AdmissiblePair

START = 0
MID = 1


@dataclass(frozen=True)
class PathSet:
    """Truncated listing of a qualifying path family plus exact finiteness data.

    ``members`` hold every qualifying path of length <= max_len whose omega
    indices stay below the pool cap, in length-then-lexicographic order.
    ``is_infinite`` is decided by reachability analysis, not by the listing.
    ``complete`` is True when the listing is the whole family.
    """

    kind: str
    members: tuple[Path, ...]
    max_len: int
    is_infinite: bool
    complete: bool
    omega_cap: int


class _Automaton:
    """Two-state walk filter describing one qualifying-path family."""

    def __init__(
        self,
        initial: Callable[[str], bool],
        interior: Callable[[EdgeFamily], bool],
        final: Callable[[int, EdgeFamily], bool],
    ):
        self.initial = initial
        self.interior = interior
        self.final = final


def _automaton(kind: str, g: Graph, pair: AdmissiblePair) -> _Automaton:
    core, breakers = pair.core, pair.breakers
    blocked = core | breakers
    if kind == "entry":
        return _Automaton(
            initial=lambda v: True,
            interior=lambda fam: True,
            final=lambda q, fam: fam.dst in core and fam.src not in blocked,
        )
    if kind == "breaker":
        return _Automaton(
            initial=lambda v: True,
            interior=lambda fam: True,
            final=lambda q, fam: fam.dst in breakers,
        )
    if kind == "legacy":
        return _Automaton(
            initial=lambda v: v not in core,
            interior=lambda fam: fam.dst not in blocked,
            final=lambda q, fam: fam.dst in blocked
            and not (q == START and fam.src in breakers and fam.dst in core),
        )
    raise ValueError(f"unknown path-set kind {kind!r}")


def _enumerate_members(
    g: Graph, auto: _Automaton, max_len: int, pool: EdgePool
) -> list[Path]:
    members: list[Path] = []

    def walk(at: str, state: int, trail: list[EdgeRef]) -> None:
        if len(trail) >= max_len:
            return
        for fam in sorted(g.out_families(at), key=lambda f: f.name):
            count = pool.omega_cap if fam.is_omega else fam.mult
            for i in range(count):
                ref = EdgeRef(fam.name, i)
                trail.append(ref)
                if auto.final(state, fam):
                    members.append(g.make_path(tuple(trail)))
                if auto.interior(fam):
                    walk(fam.dst, MID, trail)
                trail.pop()

    for v in g.vertices:
        if auto.initial(v):
            walk(v, START, [])
    members.sort(key=Path.key)
    return members


def _analyze_infinitude(g: Graph, auto: _Automaton) -> tuple[bool, int]:
    """Exact finiteness of the full family, plus a length bound when finite.

    Works on the product of the graph with the automaton state.  The family
    is infinite iff a qualifying walk can run through an omega family or
    around a product cycle; otherwise qualifying paths are no longer than the
    number of product nodes plus one.
    """
    nodes: set[tuple[str, int]] = set()
    edges: dict[tuple[str, int], list[tuple[EdgeFamily, tuple[str, int]]]] = {}
    stack = [(v, START) for v in g.vertices if auto.initial(v)]
    nodes.update(stack)
    while stack:
        node = stack.pop()
        v, q = node
        outs = []
        for fam in g.out_families(v):
            if auto.interior(fam):
                nxt = (fam.dst, MID)
                outs.append((fam, nxt))
                if nxt not in nodes:
                    nodes.add(nxt)
                    stack.append(nxt)
        edges[node] = outs

    accepts = {
        node: any(auto.final(node[1], fam) for fam in g.out_families(node[0]))
        for node in nodes
    }
    can_accept = {node for node in nodes if accepts[node]}
    changed = True
    while changed:
        changed = False
        for node in nodes:
            if node in can_accept:
                continue
            if any(nxt in can_accept for _, nxt in edges[node]):
                can_accept.add(node)
                changed = True

    if not can_accept:
        return False, 0

    for node in nodes:
        v, q = node
        for fam in g.out_families(v):
            if not fam.is_omega:
                continue
            if auto.final(q, fam):
                return True, 0
            if auto.interior(fam) and (fam.dst, MID) in can_accept:
                return True, 0

    # A pumpable cycle: a can-accept node reachable from itself through
    # can-accept nodes.
    relevant = {n for n in nodes if n in can_accept}
    for node in relevant:
        seen: set[tuple[str, int]] = set()
        stack = [nxt for _, nxt in edges[node] if nxt in relevant]
        while stack:
            cur = stack.pop()
            if cur == node:
                return True, 0
            if cur in seen:
                continue
            seen.add(cur)
            stack.extend(nxt for _, nxt in edges[cur] if nxt in relevant)

    return False, len(nodes) + 1


def path_set(
    kind: str,
    g: Graph,
    pair: AdmissiblePair,
    *,
    max_len: int,
    pool: EdgePool = EdgePool(),
) -> PathSet:
    """Qualifying paths of one family, truncated at max_len and the pool cap."""
    auto = _automaton(kind, g, pair)
    members = _enumerate_members(g, auto, max_len, pool)
    infinite, length_bound = _analyze_infinitude(g, auto)
    complete = not infinite
    if complete:
        uses_omega = any(
            g.family(e.family).is_omega for p in members for e in p.edges
        )
        if uses_omega:
            # A finite family can still touch an omega edge only if finitely
            # many indices qualify, which never happens: siblings qualify too.
            complete = False
        elif length_bound > max_len:
            longer = _enumerate_members(g, auto, length_bound, pool)
            if any(len(p) > max_len for p in longer):
                complete = False
    return PathSet(
        kind=kind,
        members=tuple(members),
        max_len=max_len,
        is_infinite=infinite,
        complete=complete,
        omega_cap=pool.omega_cap,
    )


def entry_paths(g: Graph, pair: AdmissiblePair, *, max_len: int, pool: EdgePool = EdgePool()) -> PathSet:
    return path_set("entry", g, pair, max_len=max_len, pool=pool)


def breaker_paths(g: Graph, pair: AdmissiblePair, *, max_len: int, pool: EdgePool = EdgePool()) -> PathSet:
    return path_set("breaker", g, pair, max_len=max_len, pool=pool)


def legacy_paths(g: Graph, pair: AdmissiblePair, *, max_len: int, pool: EdgePool = EdgePool()) -> PathSet:
    return path_set("legacy", g, pair, max_len=max_len, pool=pool)


# -- constructed graphs -------------------------------------------------------


@dataclass(frozen=True)
class VertexOrigin:
    kind: str  # "core" | "breaker" | "path"
    path: Optional[Path] = None


@dataclass(frozen=True)
class EdgeOrigin:
    kind: str  # "inherited" | "via"
    path: Optional[Path] = None


@dataclass(frozen=True)
class ConstructedGraph:
    """A realization graph together with where each piece came from."""

    style: str  # "ideal" | "legacy"
    graph: Graph
    base: Graph
    pair: AdmissiblePair
    vertex_origin: dict[str, VertexOrigin]
    edge_origin: dict[str, EdgeOrigin]
    path_sets: dict[str, PathSet]
    truncated_at: Optional[int]
    notes: tuple[str, ...] = ()


def _assemble(
    style: str,
    g: Graph,
    pair: AdmissiblePair,
    sets: dict[str, PathSet],
    max_len: int,
) -> ConstructedGraph:
    core, breakers = pair.core, pair.breakers
    vertex_origin: dict[str, VertexOrigin] = {}
    edge_origin: dict[str, EdgeOrigin] = {}
    vertices: list[str] = []
    families: list[EdgeFamily] = []

    for v in sorted(core):
        vertices.append(v)
        vertex_origin[v] = VertexOrigin("core")
    for v in sorted(breakers):
        vertices.append(v)
        vertex_origin[v] = VertexOrigin("breaker")

    for fam in g.families.values():
        keep = fam.src in core or (fam.src in breakers and fam.dst in core)
        if keep:
            families.append(fam)
            edge_origin[fam.name] = EdgeOrigin("inherited")

    for ps in sets.values():
        for p in ps.members:
            word = g.path_word(p)
            if word in vertex_origin:
                raise ValueError(f"constructed vertex name collision on {word!r}")
            vertices.append(word)
            vertex_origin[word] = VertexOrigin("path", p)
            via = f"via({word})"
            if via in edge_origin:
                raise ValueError(f"constructed edge name collision on {via!r}")
            families.append(EdgeFamily(via, word, p.target, 1))
            edge_origin[via] = EdgeOrigin("via", p)

    truncated = None if all(ps.complete for ps in sets.values()) else max_len
    notes = []
    if not pair.core:
        notes.append("empty core: the construction degenerates to the empty graph")
    return ConstructedGraph(
        style=style,
        graph=Graph(vertices, families),
        base=g,
        pair=pair,
        vertex_origin=vertex_origin,
        edge_origin=edge_origin,
        path_sets=sets,
        truncated_at=truncated,
        notes=tuple(notes),
    )


def build_ideal_graph(
    g: Graph,
    pair: AdmissiblePair,
    *,
    max_len: int,
    pool: EdgePool = EdgePool(),
) -> ConstructedGraph:
    """The corrected realization graph for an admissible pair."""
    entry = entry_paths(g, pair, max_len=max_len, pool=pool)
    breaker = breaker_paths(g, pair, max_len=max_len, pool=pool)
    overlap = set(entry.members) & set(breaker.members)
    if overlap:
        raise AssertionError(f"entry and breaker paths overlap: {overlap}")
    return _assemble("ideal", g, pair, {"entry": entry, "breaker": breaker}, max_len)


def build_legacy_graph(
    g: Graph,
    pair: AdmissiblePair,
    *,
    max_len: int,
    pool: EdgePool = EdgePool(),
) -> ConstructedGraph:
    """The older realization graph; wrong in general once breakers are chosen."""
    legacy = legacy_paths(g, pair, max_len=max_len, pool=pool)
    built = _assemble("legacy", g, pair, {"legacy": legacy}, max_len)
    if not pair.core:
        built = ConstructedGraph(
            style=built.style,
            graph=built.graph,
            base=built.base,
            pair=built.pair,
            vertex_origin=built.vertex_origin,
            edge_origin=built.edge_origin,
            path_sets=built.path_sets,
            truncated_at=built.truncated_at,
            notes=built.notes + ("legacy construction was stated only for a nonempty core",),
        )
    return built


@dataclass(frozen=True)
class CycleCorrespondence:
    ok: bool
    built_cycles: int
    base_cycles: int
    detail: str


def cycle_correspondence_check(built: ConstructedGraph) -> CycleCorrespondence:
    """Every cycle of the constructed graph is an inherited cycle of the base.

    Path proxies have no incoming edges, so constructed cycles can only use
    inherited edges; the check confirms that and that distinct constructed
    cycles stay distinct in the base graph.
    """
    bg = built.graph
    report = vertex_simple_cycles(bg, max_len=max(1, len(bg.vertices)))
    base_canon = set()
    for cycle in report.cycles:
        for ref in cycle.edges:
            if built.edge_origin[ref.family].kind != "inherited":
                return CycleCorrespondence(
                    False,
                    len(report.cycles),
                    len(base_canon),
                    f"cycle {bg.path_word(cycle)} uses a non-inherited edge",
                )
        base_path = built.base.make_path(cycle.edges)
        canon = built.base.path_word(base_path)
        if canon in base_canon:
            return CycleCorrespondence(
                False,
                len(report.cycles),
                len(base_canon),
                f"two constructed cycles collapse onto {canon}",
            )
        base_canon.add(canon)
    return CycleCorrespondence(True, len(report.cycles), len(base_canon), "ok")
