"""Directed graphs with edge multiplicities, paths, cycles, and JSON I/O.

Edges come in named families.  A family has a positive integer multiplicity
or the symbolic multiplicity ``OMEGA``; the individual edges of a family are
addressed as ``EdgeRef(family, index)`` with ``index < multiplicity``.  Paths
compose left to right: in ``e.f`` the range of ``e`` is the source of ``f``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Optional, Union


class Omega:
    """Singleton marker for countably infinite multiplicity."""

    _instance: Optional["Omega"] = None

    def __new__(cls) -> "Omega":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OMEGA"


OMEGA = Omega()

Mult = Union[int, Omega]

# Word characters plus the dot/paren/bracket forms the canonical constructed
# names use (path words like "e.f", proxy edges like "via(e.f)", indexed
# tokens like "b[1]").  Whitespace and the CLI's list separators stay illegal.
NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.()\[\]]*$")


class GraphFormatError(ValueError):
    """Raised for malformed graph documents; ``kind`` names the defect."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class VertexKind(Enum):
    REGULAR = "regular"
    SINK = "sink"
    INFINITE_EMITTER = "infinite_emitter"


@dataclass(frozen=True)
class EdgeFamily:
    name: str
    src: str
    dst: str
    mult: Mult = 1

    @property
    def is_omega(self) -> bool:
        return isinstance(self.mult, Omega)


@dataclass(frozen=True)
class EdgeRef:
    """One concrete edge: a family name plus an index below its multiplicity."""

    family: str
    index: int = 0

    def key(self) -> tuple[str, int]:
        return (self.family, self.index)


@dataclass(frozen=True)
class Path:
    """A composable edge sequence; ``edges == ()`` is the empty path at a vertex."""

    edges: tuple[EdgeRef, ...]
    source: str
    target: str

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def key(self) -> tuple:
        """Length-then-lexicographic sort key; empty paths order by vertex name."""
        if not self.edges:
            return (0, ((self.source, -1),))
        return (len(self.edges), tuple(e.key() for e in self.edges))

    def extends(self, other: "Path") -> bool:
        """True if self == other followed by at least one more edge."""
        n = len(other.edges)
        return len(self.edges) > n and self.edges[:n] == other.edges


@dataclass(frozen=True)
class EdgePool:
    """Finite edge sub-universe: full finite families, capped omega families.

    Exact statements about infinite graphs are checked on the edges this pool
    materializes; omega families contribute indices ``0..omega_cap-1``.
    """

    omega_cap: int = 2


class Graph:
    """Immutable directed graph with named vertices and edge families."""

    def __init__(self, vertices: Iterable[str], families: Iterable[EdgeFamily]):
        self.vertices: tuple[str, ...] = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        fams: dict[str, EdgeFamily] = {}
        for fam in families:
            if fam.name in fams:
                raise GraphFormatError("duplicate", f"duplicate edge family {fam.name!r}")
            if fam.src not in vset or fam.dst not in vset:
                raise GraphFormatError(
                    "dangling", f"family {fam.name!r} references undeclared vertex"
                )
            if not fam.is_omega and (not isinstance(fam.mult, int) or fam.mult < 1):
                raise GraphFormatError("malformed", f"family {fam.name!r} has bad multiplicity")
            fams[fam.name] = fam
        self.families: dict[str, EdgeFamily] = dict(sorted(fams.items()))
        self._out: dict[str, tuple[EdgeFamily, ...]] = {v: () for v in self.vertices}
        self._in: dict[str, tuple[EdgeFamily, ...]] = {v: () for v in self.vertices}
        for fam in self.families.values():
            self._out[fam.src] = self._out[fam.src] + (fam,)
            self._in[fam.dst] = self._in[fam.dst] + (fam,)

    # -- basic queries ----------------------------------------------------

    def check_vertex(self, v: str) -> str:
        if v not in self._out:
            raise ValueError(f"unknown vertex {v!r}")
        return v

    def out_families(self, v: str) -> tuple[EdgeFamily, ...]:
        return self._out[self.check_vertex(v)]

    def in_families(self, v: str) -> tuple[EdgeFamily, ...]:
        return self._in[self.check_vertex(v)]

    def family(self, name: str) -> EdgeFamily:
        try:
            return self.families[name]
        except KeyError:
            raise ValueError(f"unknown edge family {name!r}") from None

    def edge_src(self, e: EdgeRef) -> str:
        return self.family(e.family).src

    def edge_dst(self, e: EdgeRef) -> str:
        return self.family(e.family).dst

    def check_edge(self, e: EdgeRef) -> EdgeRef:
        fam = self.family(e.family)
        if e.index < 0 or (not fam.is_omega and e.index >= fam.mult):
            raise ValueError(f"edge index {e.index} out of range for family {e.family!r}")
        return e

    def out_degree(self, v: str) -> Mult:
        """Number of edges leaving v; OMEGA when any family is infinite."""
        total = 0
        for fam in self.out_families(v):
            if fam.is_omega:
                return OMEGA
            total += fam.mult
        return total

    def classify_vertex(self, v: str) -> VertexKind:
        deg = self.out_degree(v)
        if isinstance(deg, Omega):
            return VertexKind.INFINITE_EMITTER
        if deg == 0:
            return VertexKind.SINK
        return VertexKind.REGULAR

    def is_row_finite(self) -> bool:
        return not any(fam.is_omega for fam in self.families.values())

    # -- paths ------------------------------------------------------------

    def empty_path(self, v: str) -> Path:
        return Path((), self.check_vertex(v), v)

    def make_path(self, edges: Iterable[EdgeRef], at: Optional[str] = None) -> Path:
        """Build a path from composable edges; ``at`` names the vertex when empty."""
        refs = tuple(edges)
        if not refs:
            if at is None:
                raise ValueError("empty path needs a base vertex")
            return self.empty_path(at)
        prev_dst = None
        for e in refs:
            self.check_edge(e)
            src = self.edge_src(e)
            if prev_dst is not None and src != prev_dst:
                raise ValueError(f"edges do not compose at {src!r}")
            prev_dst = self.edge_dst(e)
        return Path(refs, self.edge_src(refs[0]), prev_dst)

    def concat(self, p: Path, q: Path) -> Path:
        if p.target != q.source:
            raise ValueError("paths do not compose")
        if not p.edges:
            return q
        if not q.edges:
            return p
        return Path(p.edges + q.edges, p.source, q.target)

    def pool_edges_from(self, v: str, pool: EdgePool) -> list[EdgeRef]:
        """Edges leaving v inside the pool, sorted by (family, index)."""
        refs: list[EdgeRef] = []
        for fam in sorted(self.out_families(v), key=lambda f: f.name):
            count = pool.omega_cap if fam.is_omega else fam.mult
            refs.extend(EdgeRef(fam.name, i) for i in range(count))
        return refs

    def pool_edges(self, pool: EdgePool) -> list[EdgeRef]:
        refs: list[EdgeRef] = []
        for fam in self.families.values():
            count = pool.omega_cap if fam.is_omega else fam.mult
            refs.extend(EdgeRef(fam.name, i) for i in range(count))
        return refs

    def enumerate_paths(
        self,
        *,
        max_len: int,
        source_pred: Optional[Callable[[str], bool]] = None,
        path_pred: Optional[Callable[[Path], bool]] = None,
        omega_limit: Optional[int] = None,
    ) -> Iterator[Path]:
        """Yield paths in length-then-lexicographic order, each exactly once.

        Families are ordered by name and, within a family, by ascending index;
        an omega family yields indices lazily, so without ``omega_limit`` the
        stream inside one length class never moves past it.
        """

        def indices(fam: EdgeFamily) -> Iterator[int]:
            if fam.is_omega:
                import itertools

                it: Iterator[int] = itertools.count(0)
                if omega_limit is not None:
                    it = iter(range(omega_limit))
                return it
            return iter(range(fam.mult))

        def extend(prefix: list[EdgeRef], at: str, remaining: int) -> Iterator[Path]:
            if remaining == 0:
                p = Path(tuple(prefix), self.edge_src(prefix[0]), at)
                if path_pred is None or path_pred(p):
                    yield p
                return
            for fam in sorted(self.out_families(at), key=lambda f: f.name):
                for i in indices(fam):
                    prefix.append(EdgeRef(fam.name, i))
                    yield from extend(prefix, fam.dst, remaining - 1)
                    prefix.pop()

        for length in range(max_len + 1):
            if length == 0:
                for v in self.vertices:
                    if source_pred is not None and not source_pred(v):
                        continue
                    p = self.empty_path(v)
                    if path_pred is None or path_pred(p):
                        yield p
                continue
            # First edges run over all families in (name, index) order so the
            # output is lexicographic on edge keys, not grouped by source.
            for fam in sorted(self.families.values(), key=lambda f: f.name):
                if source_pred is not None and not source_pred(fam.src):
                    continue
                for i in indices(fam):
                    yield from extend([EdgeRef(fam.name, i)], fam.dst, length - 1)

    # -- words ------------------------------------------------------------

    def edge_token(self, e: EdgeRef) -> str:
        fam = self.family(e.family)
        if fam.is_omega or fam.mult > 1:
            return f"{e.family}[{e.index}]"
        return e.family

    def path_word(self, p: Path) -> str:
        """Canonical textual form: dotted edge tokens, or the vertex name."""
        if p.is_vertex:
            return p.source
        return ".".join(self.edge_token(e) for e in p.edges)


# -- cycles ----------------------------------------------------------------


@dataclass(frozen=True)
class CycleReport:
    """Vertex-simple cycles up to rotation, plus an omega-parallel flag.

    ``omega_parallel`` is True when some reported cycle runs through an omega
    family, in which case infinitely many parallel copies exist and only
    indices 0 and 1 are listed.
    """

    cycles: tuple[Path, ...]
    omega_parallel: bool


def _canonical_rotation(g: Graph, edges: tuple[EdgeRef, ...]) -> tuple[EdgeRef, ...]:
    rotations = [edges[i:] + edges[:i] for i in range(len(edges))]
    return min(rotations, key=lambda rot: (g.edge_src(rot[0]), tuple(e.key() for e in rot)))


def vertex_simple_cycles(g: Graph, *, max_len: int, pool: EdgePool = EdgePool()) -> CycleReport:
    """All cycles of length <= max_len whose edge sources are pairwise distinct.

    Cycles are canonicalized to the rotation starting at the smallest source
    vertex; omega families are materialized only up to index
    ``min(pool.omega_cap, 2) - 1`` with the flag marking the truncation.
    """
    found: set[tuple[EdgeRef, ...]] = set()
    omega_flag = False
    cap = min(pool.omega_cap, 2)

    def walk(start: str, at: str, trail: list[EdgeRef], seen: set[str]) -> None:
        if len(trail) >= max_len:
            return
        for fam in sorted(g.out_families(at), key=lambda f: f.name):
            count = cap if fam.is_omega else fam.mult
            for i in range(count):
                ref = EdgeRef(fam.name, i)
                if fam.dst == start:
                    found.add(_canonical_rotation(g, tuple(trail + [ref])))
                if fam.dst not in seen and fam.dst != start:
                    trail.append(ref)
                    seen.add(fam.dst)
                    walk(start, fam.dst, trail, seen)
                    seen.remove(fam.dst)
                    trail.pop()

    for v in g.vertices:
        walk(v, v, [], {v})

    cycles = []
    for edges in found:
        if any(g.family(e.family).is_omega for e in edges):
            omega_flag = True
        cycles.append(g.make_path(edges))
    cycles.sort(key=Path.key)
    return CycleReport(tuple(cycles), omega_flag)


def _cycle_has_exit(g: Graph, cycle: Path) -> bool:
    for e in cycle.edges:
        v = g.edge_src(e)
        for fam in g.out_families(v):
            if fam.name != e.family:
                return True
            if fam.is_omega or fam.mult > 1:
                return True
    return False


def condition_L(g: Graph) -> bool:
    """Every vertex-simple cycle has an exit.  Finite graphs only."""
    report = vertex_simple_cycles(g, max_len=len(g.vertices))
    return all(_cycle_has_exit(g, c) for c in report.cycles)


def condition_K(g: Graph) -> bool:
    """No vertex is the source of exactly one vertex-simple return path."""
    report = vertex_simple_cycles(g, max_len=len(g.vertices))
    based: dict[str, float] = {}
    for cycle in report.cycles:
        omega_cycle = any(g.family(e.family).is_omega for e in cycle.edges)
        for i in range(len(cycle.edges)):
            rot = cycle.edges[i:] + cycle.edges[:i]
            base = g.edge_src(rot[0])
            based[base] = based.get(base, 0) + (float("inf") if omega_cycle else 1)
    return all(count != 1 for count in based.values())


# -- reachability helpers ---------------------------------------------------


def reachable_from(g: Graph, starts: Iterable[str]) -> set[str]:
    """Vertices reachable in >= 0 steps from any start."""
    seen = set(starts)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for fam in g.out_families(v):
            if fam.dst not in seen:
                seen.add(fam.dst)
                stack.append(fam.dst)
    return seen


def can_reach(g: Graph, targets: Iterable[str]) -> set[str]:
    """Vertices from which some target is reachable in >= 0 steps."""
    seen = set(targets)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for fam in g.in_families(v):
            if fam.src not in seen:
                seen.add(fam.src)
                stack.append(fam.src)
    return seen


# -- JSON documents ----------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the JSON graph document; errors carry a defect kind."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError("malformed", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GraphFormatError("malformed", "document needs 'vertices' and 'edges'")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError("malformed", "'vertices' must be a list of names")
    if len(set(vertices)) != len(vertices):
        raise GraphFormatError("duplicate", "duplicate vertex name")
    families = []
    for entry in doc["edges"]:
        if not isinstance(entry, dict) or not {"name", "src", "dst"} <= set(entry):
            raise GraphFormatError("malformed", "edge entries need name/src/dst")
        name = entry["name"]
        if not isinstance(name, str) or not NAME_RE.match(name):
            raise GraphFormatError("malformed", f"bad edge name {name!r}")
        mult: Mult
        raw = entry.get("mult", 1)
        if raw == "omega":
            mult = OMEGA
        elif isinstance(raw, int) and not isinstance(raw, bool) and raw >= 1:
            mult = raw
        else:
            raise GraphFormatError("malformed", f"bad multiplicity {raw!r} on {name!r}")
        families.append(EdgeFamily(name, entry["src"], entry["dst"], mult))
    return Graph(vertices, families)


def graph_doc(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [
            {
                "name": fam.name,
                "src": fam.src,
                "dst": fam.dst,
                "mult": "omega" if fam.is_omega else fam.mult,
            }
            for fam in g.families.values()
        ],
    }


def emit_graph(g: Graph) -> str:
    """Canonical emission; parse(emit(g)) reproduces g exactly."""
    return json.dumps(graph_doc(g), indent=2, sort_keys=True)


def graphs_equal(a: Graph, b: Graph) -> bool:
    return a.vertices == b.vertices and a.families == b.families
