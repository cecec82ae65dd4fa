"""Generator families inside the ideal: relations, surjectivity, image span.

A constructed graph names a candidate family inside the base algebra's ideal:
an idempotent per constructed vertex and an element per constructed edge,
assigned by origin.  Core vertices map to themselves, breakers to their gap
idempotents, path proxies to the path conjugated around its endpoint (gap
dressed when the endpoint is a breaker), and edges map to the matching bare
or gap-dressed paths.  The functions here machine-check the family's
defining relations, replay the constructive surjectivity argument one
spanning element at a time, and measure the subalgebra the family actually
generates.  On the legacy construction that last measurement exposes the
gap: ideal elements no bounded word in the family can reach.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .construct import ConstructedGraph
from .engine import Element, LeavittAlgebra, Monomial, format_element
from .graphs import EdgePool, EdgeRef, Path, VertexKind
from .ideals import (
    Descriptor,
    IdealWindow,
    ProbeReport,
    descriptor_element,
    left_identity_probe,
    spanning_descriptors,
)
from .linalg import RowSpace

Token = tuple
Word = tuple[Token, ...]


@dataclass
class GeneratorFamily:
    """Images of one constructed graph's generators inside the base algebra."""

    algebra: LeavittAlgebra
    built: ConstructedGraph
    pool: EdgePool
    q: dict[str, Element]
    t: dict[EdgeRef, Element]

    @property
    def pair(self):
        return self.built.pair

    def t_star(self, e: EdgeRef) -> Element:
        return self.t[e].star()

    def edges(self) -> list[EdgeRef]:
        return sorted(self.t, key=EdgeRef.key)

    def trunc_len(self) -> int:
        return max(ps.max_len for ps in self.built.path_sets.values())


def build_generator_family(
    algebra: LeavittAlgebra,
    built: ConstructedGraph,
    *,
    pool: EdgePool = EdgePool(),
) -> GeneratorFamily:
    core = built.pair.core
    q: dict[str, Element] = {}
    for v in built.graph.vertices:
        origin = built.vertex_origin[v]
        if origin.kind == "core":
            q[v] = algebra.vertex(v)
        elif origin.kind == "breaker":
            q[v] = algebra.gap(v, core)
        else:
            p = origin.path
            walk = algebra.path_element(p)
            if p.target in core:
                q[v] = walk * walk.star()
            else:
                q[v] = walk * algebra.gap(p.target, core) * walk.star()

    t: dict[EdgeRef, Element] = {}
    for e in built.graph.pool_edges(pool):
        origin = built.edge_origin[e.family]
        if origin.kind == "inherited":
            t[e] = algebra.edge(e.family, e.index)
        else:
            p = origin.path
            walk = algebra.path_element(p)
            if p.target in core:
                t[e] = walk
            else:
                t[e] = walk * algebra.gap(p.target, core)
    return GeneratorFamily(algebra, built, pool, q, t)


# -- relation verification ----------------------------------------------------


@dataclass(frozen=True)
class CheckFailure:
    subject: str
    detail: str


@dataclass(frozen=True)
class SkipNote:
    subject: str
    reason: str


@dataclass
class CheckGroup:
    name: str
    checked: int = 0
    failures: list[CheckFailure] = field(default_factory=list)
    skipped: list[SkipNote] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, subject: str, detail: str) -> None:
        self.failures.append(CheckFailure(subject, detail))


@dataclass
class RelationReport:
    groups: list[CheckGroup]

    @property
    def ok(self) -> bool:
        return all(g.ok for g in self.groups)

    def group(self, name: str) -> CheckGroup:
        for g in self.groups:
            if g.name == name:
                return g
        raise KeyError(name)


def _expect_zero(group: CheckGroup, subject: str, defect: Element) -> None:
    group.checked += 1
    if not defect.is_zero():
        group.fail(subject, f"nonzero defect {format_element(defect)}")


def _expect_equal(group: CheckGroup, subject: str, got: Element, want: Element) -> None:
    _expect_zero(group, subject, got - want)


def verify_family_relations(
    family: GeneratorFamily, *, containment_window: Optional[IdealWindow] = None
) -> RelationReport:
    """Exact sweep of the defining relations plus the structural side facts.

    Every identity is checked by normal form of its defect; there is no
    approximate branch.  Vertex-expansion sums are checked at vertices that
    are regular in the constructed graph; sinks and infinite emitters are
    recorded as skipped with the reason.  The containment group certifies
    each image against an ideal window wide enough for the truncation
    (descriptor degree twice the truncation length) unless a prebuilt window
    is supplied.
    """
    al = family.algebra
    bg = family.built.graph
    zero = al.zero()

    idem = CheckGroup("vertex-idempotents")
    orth = CheckGroup("vertex-orthogonality")
    supports = CheckGroup("edge-supports")
    stars = CheckGroup("star-products")
    expansion = CheckGroup("vertex-expansion")

    names = list(bg.vertices)
    for v in names:
        qv = family.q[v]
        idem.checked += 1
        if qv.is_zero():
            idem.fail(v, "vertex image is zero")
        else:
            _expect_equal(idem, v, qv * qv, qv)
    for i, u in enumerate(names):
        for v in names[i + 1 :]:
            _expect_zero(orth, f"{u},{v}", family.q[u] * family.q[v])

    refs = family.edges()
    for e in refs:
        te = family.t[e]
        tok = bg.edge_token(e)
        _expect_equal(supports, f"source . {tok}", family.q[bg.edge_src(e)] * te, te)
        _expect_equal(supports, f"{tok} . target", te * family.q[bg.edge_dst(e)], te)
    for e in refs:
        tse = family.t_star(e)
        for f in refs:
            want = family.q[bg.edge_dst(e)] if e == f else zero
            _expect_equal(
                stars,
                f"{bg.edge_token(e)}! . {bg.edge_token(f)}",
                tse * family.t[f],
                want,
            )

    for v in names:
        kind = bg.classify_vertex(v)
        if kind is VertexKind.SINK:
            expansion.skipped.append(SkipNote(v, "sink: no expansion applies"))
            continue
        if kind is VertexKind.INFINITE_EMITTER:
            expansion.skipped.append(
                SkipNote(v, "infinite emitter: expansion not required")
            )
            continue
        total = al.zero()
        for e in bg.pool_edges_from(v, family.pool):
            total = total + family.t[e] * family.t_star(e)
        _expect_equal(expansion, v, total, family.q[v])

    report = RelationReport(
        [idem, orth, supports, stars, expansion]
        + _structural_checks(family)
        + [_containment_check(family, containment_window)]
    )
    return report


def _structural_checks(family: GeneratorFamily) -> list[CheckGroup]:
    """Side facts about the path families that back the relation sweep.

    Entry paths are never properly extended by any qualifying path, and
    whenever a qualifying path does properly extend a breaker path the
    continuation is killed exactly by the breaker's gap idempotent.  The
    last group checks that gaps annihilate every edge leaving the breaker
    outside the core.
    """
    al = family.algebra
    base = family.built.base
    pair = family.pair

    disjoint = CheckGroup("path-families-disjoint")
    prefix_free = CheckGroup("entry-prefix-free")
    blocked = CheckGroup("breaker-prefix-products")
    gap_kills = CheckGroup("gap-blocks-outside-edges")

    sets = family.built.path_sets
    if "entry" in sets and "breaker" in sets:
        disjoint.checked += 1
        overlap = set(sets["entry"].members) & set(sets["breaker"].members)
        if overlap:
            words = ", ".join(sorted(base.path_word(p) for p in overlap))
            disjoint.fail("entry,breaker", f"shared members: {words}")
    members: list[tuple[str, Path]] = []
    for name, ps in sets.items():
        members.extend((name, p) for p in ps.members)

    entry_members = [p for name, p in members if name == "entry"]
    breaker_members = [p for name, p in members if name == "breaker"]
    all_paths = [p for _, p in members]
    for a in entry_members:
        for b in all_paths:
            prefix_free.checked += 1
            if b.extends(a):
                prefix_free.fail(
                    base.path_word(b),
                    f"properly extends entry path {base.path_word(a)}",
                )
    for a in breaker_members:
        gap = al.gap(a.target, pair.core)
        for b in all_paths:
            if not b.extends(a):
                continue
            rest = base.make_path(b.edges[len(a) :])
            _expect_zero(
                blocked,
                f"{base.path_word(a)} < {base.path_word(b)}",
                gap * al.path_element(rest),
            )

    for v in sorted(pair.breakers):
        gap = al.gap(v, pair.core)
        for e in base.pool_edges_from(v, family.pool):
            if base.edge_dst(e) in pair.core:
                continue
            _expect_zero(gap_kills, f"gap({v}) . {base.edge_token(e)}", gap * al.edge(e.family, e.index))
    return [disjoint, prefix_free, blocked, gap_kills]


def _containment_check(
    family: GeneratorFamily, window: Optional[IdealWindow]
) -> CheckGroup:
    """Each image must visibly lie in the ideal.

    The primary certificate is exact: the image equals one spanning
    descriptor element (its own construction recipe), checked by normal
    form.  Vertex images of path proxies square the recipe (alpha on both
    sides), handled below.  A caller-supplied window adds a row-space
    membership check for images inside its degree cap.
    """
    al = family.algebra
    group = CheckGroup("image-containment")
    bg = family.built.graph
    base = family.built.base
    core = family.pair.core
    for v in bg.vertices:
        group.checked += 1
        origin = family.built.vertex_origin[v]
        if origin.kind in ("core", "breaker"):
            witness = (
                al.vertex(v) if origin.kind == "core" else al.gap(v, core)
            )
        else:
            alpha = origin.path
            breaker = None if alpha.target in core else alpha.target
            witness = descriptor_element(
                al, family.pair, Descriptor(alpha, alpha, breaker)
            )
        if family.q[v] != witness:
            group.fail(v, "vertex image differs from its descriptor witness")
    for e in family.edges():
        group.checked += 1
        origin = family.built.edge_origin[e.family]
        if origin.kind == "inherited":
            alpha = base.make_path([EdgeRef(e.family, e.index)])
        else:
            alpha = origin.path
        target = alpha.target
        breaker = None if target in core else target
        witness = descriptor_element(
            al, family.pair, Descriptor(alpha, base.empty_path(target), breaker)
        )
        if family.t[e] != witness:
            group.fail(bg.edge_token(e), "edge image differs from its descriptor witness")
    if window is not None:
        for v in bg.vertices:
            x = family.q[v]
            if x.is_zero() or x.max_degree() > window.degree_cap:
                continue
            group.checked += 1
            if not window.contains(x):
                group.fail(v, "vertex image outside the supplied window")
        for e in family.edges():
            x = family.t[e]
            if x.is_zero() or x.max_degree() > window.degree_cap:
                continue
            group.checked += 1
            if not window.contains(x):
                group.fail(bg.edge_token(e), "edge image outside the supplied window")
    return group


# -- vertex-image nonvanishing ------------------------------------------------


@dataclass
class InjectivityReport:
    entries: list[tuple[str, bool]]
    conclusion: str

    @property
    def ok(self) -> bool:
        return all(flag for _, flag in self.entries)


def nonzero_vertex_images(family: GeneratorFamily) -> InjectivityReport:
    """Nonvanishing of every vertex image, the checkable half of injectivity."""
    entries = [(v, not family.q[v].is_zero()) for v in family.built.graph.vertices]
    return InjectivityReport(
        entries,
        "necessary conditions verified: all vertex images are nonzero; "
        "full injectivity is delegated to a graded-uniqueness argument "
        "not re-proved here",
    )


# -- words over the constructed generators ------------------------------------


def star_word(word: Word) -> Word:
    flipped = []
    for tok in reversed(word):
        if tok[0] == "q":
            flipped.append(tok)
        elif tok[0] == "t":
            flipped.append(("ts",) + tok[1:])
        elif tok[0] == "ts":
            flipped.append(("t",) + tok[1:])
        else:
            raise ValueError(f"unknown word token {tok!r}")
    return tuple(flipped)


def phi_apply(family: GeneratorFamily, word: Word) -> Element:
    """Multiply generator images left to right."""
    if not word:
        raise ValueError("empty word")
    out = None
    for tok in word:
        if tok[0] == "q":
            try:
                x = family.q[tok[1]]
            except KeyError:
                raise ValueError(f"unknown constructed vertex {tok[1]!r}") from None
        elif tok[0] in ("t", "ts"):
            ref = EdgeRef(tok[1], tok[2])
            try:
                x = family.t[ref]
            except KeyError:
                raise ValueError(f"unknown constructed edge {ref.key()}") from None
            if tok[0] == "ts":
                x = x.star()
        else:
            raise ValueError(f"unknown word token {tok!r}")
        out = x if out is None else out * x
    return out


def _via_token(family: GeneratorFamily, prefix: Path) -> Token:
    word = family.built.base.path_word(prefix)
    name = f"via({word})"
    if name not in family.built.graph.families:
        raise ValueError(f"path proxy for {word!r} is outside the truncation")
    return ("t", name, 0)


def _side_word(
    family: GeneratorFamily, path: Path, breaker: Optional[str]
) -> tuple[list[Token], str]:
    """Word whose image is the bare path (core side) or path-with-gap (breaker
    side), together with the shape class that produced it."""
    base = family.built.base
    pair = family.pair
    if breaker is not None:
        if len(path) == 0:
            return [("q", breaker)], "breaker_vertex"
        return [_via_token(family, path)], "breaker_proxy"

    if len(path) == 0:
        return [("q", path.source)], "core_source"
    edge_tok = lambda e: ("t", e.family, e.index)
    if path.source in pair.core:
        return [edge_tok(e) for e in path.edges], "core_source"

    sources = [base.edge_src(e) for e in path.edges]
    k = next((i for i, s in enumerate(sources) if s in pair.core), len(path.edges))
    entry = path.edges[k - 1]
    rest = [edge_tok(e) for e in path.edges[k:]]
    if sources[k - 1] in pair.breakers:
        if k - 1 == 0:
            return [edge_tok(entry)] + rest, "breaker_entry_edge"
        prefix = base.make_path(path.edges[: k - 1])
        return (
            [_via_token(family, prefix), edge_tok(entry)] + rest,
            "breaker_proxy_then_entry",
        )
    prefix = base.make_path(path.edges[:k])
    return [_via_token(family, prefix)] + rest, "entry_proxy"


CASE_NAMES = (
    "core_source",
    "breaker_entry_edge",
    "entry_proxy",
    "breaker_proxy_then_entry",
    "breaker_vertex",
    "breaker_proxy",
)


def preimage_word(family: GeneratorFamily, d: Descriptor) -> tuple[Word, str, str]:
    """A word whose image is exactly the descriptor's element, plus the shape
    classes of its two sides."""
    left, case_a = _side_word(family, d.alpha, d.breaker)
    right, case_b = _side_word(family, d.beta, d.breaker)
    return tuple(left) + star_word(tuple(right)), case_a, case_b


@dataclass(frozen=True)
class SurjectivityFailure:
    descriptor: str
    expected: str
    got: str


@dataclass
class SurjectivityReport:
    degree_bound: int
    checked: int
    tallies: dict[str, int]
    failures: list[SurjectivityFailure]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_surjectivity_window(
    family: GeneratorFamily, *, degree_bound: int
) -> SurjectivityReport:
    """Every spanning element up to the bound gets a word reproducing it.

    Each descriptor side is classified exactly once; the tallies count sides
    per shape class, so one descriptor contributes two tallies.
    """
    trunc = family.trunc_len()
    if degree_bound > trunc:
        raise ValueError(
            f"degree bound {degree_bound} exceeds the truncation length {trunc}"
        )
    base = family.built.base
    pair = family.pair
    tallies = {name: 0 for name in CASE_NAMES}
    failures: list[SurjectivityFailure] = []
    checked = 0
    for d in spanning_descriptors(base, pair, bound=degree_bound, pool=family.pool):
        expected = descriptor_element(family.algebra, pair, d)
        word, case_a, case_b = preimage_word(family, d)
        got = phi_apply(family, word)
        tallies[case_a] += 1
        tallies[case_b] += 1
        checked += 1
        if got != expected:
            failures.append(
                SurjectivityFailure(
                    d.word(base), format_element(expected), format_element(got)
                )
            )
    return SurjectivityReport(degree_bound, checked, tallies, failures)


# -- image span and its gap ---------------------------------------------------


@dataclass(frozen=True)
class GapWitness:
    descriptor: str
    element: Element
    certified_absent: bool


@dataclass
class GapReport:
    style: str
    degree_bound: int
    relations: RelationReport
    span_rank: int
    window_rank: int
    elements_spanned: int
    missing: list[GapWitness]
    witness_in_span: dict[str, bool]
    probe: Optional[ProbeReport]
    notes: tuple[str, ...]

    @property
    def gap_empty(self) -> bool:
        return not self.missing


def _element_key(x: Element):
    return frozenset(x.terms.items())


def image_span_gap(
    algebra: LeavittAlgebra,
    built: ConstructedGraph,
    *,
    degree_bound: int,
    pool: EdgePool = EdgePool(),
) -> GapReport:
    """Span the family's bounded words and list ideal elements left out.

    Words are walked breadth-first by their count of edge-image letters, with
    elements deduplicated by normal form; vertex images enter at depth zero
    and, once the relations hold, longer words never need interior vertex
    letters (the images absorb them).  A reported miss additionally carries
    an unbounded certificate when possible: the sum of all vertex images is a
    unit for everything the family generates, so any ideal element it fails
    to fix lies outside the image at every degree, not just this one.
    """
    family = build_generator_family(algebra, built, pool=pool)
    relations = verify_family_relations(family)
    pair = family.pair
    bg = built.graph

    span = RowSpace(algebra.field, key=Monomial.key)
    letters: list[Element] = []
    for e in family.edges():
        letters.append(family.t[e])
        letters.append(family.t_star(e))

    seen: set = set()
    frontier: list[Element] = []
    elements_spanned = 0
    for v in bg.vertices:
        x = family.q[v]
        key = _element_key(x)
        if not x.is_zero() and key not in seen:
            seen.add(key)
            span.insert(dict(x.terms))
            elements_spanned += 1
    for x in letters:
        key = _element_key(x)
        if not x.is_zero() and key not in seen:
            seen.add(key)
            span.insert(dict(x.terms))
            frontier.append(x)
            elements_spanned += 1
    for _ in range(degree_bound - 1):
        new_frontier: list[Element] = []
        for x in frontier:
            for y in letters:
                z = x * y
                if z.is_zero():
                    continue
                key = _element_key(z)
                if key in seen:
                    continue
                seen.add(key)
                span.insert(dict(z.terms))
                new_frontier.append(z)
                elements_spanned += 1
        if not new_frontier:
            break
        frontier = new_frontier

    window = IdealWindow(algebra, pair, bound=degree_bound, pool=pool)
    q_full = algebra.zero()
    for v in bg.vertices:
        q_full = q_full + family.q[v]

    missing: list[GapWitness] = []
    for d, x in window.spanning:
        if span.contains(dict(x.terms)):
            continue
        certified = relations.ok and (q_full * x != x)
        missing.append(GapWitness(d.word(built.base), x, certified))

    breaker_images: list[tuple[str, Element]] = []
    for e in family.edges():
        origin = built.edge_origin[e.family]
        if origin.kind == "via" and origin.path.target in pair.breakers:
            if len(origin.path) <= degree_bound:
                breaker_images.append((bg.edge_token(e), family.t[e]))
    witness_in_span = {
        tok: span.contains(dict(x.terms)) for tok, x in breaker_images
    }

    probe: Optional[ProbeReport] = None
    if breaker_images:
        q_narrow = algebra.zero()
        for v in bg.vertices:
            if built.vertex_origin[v].kind in ("core", "breaker"):
                q_narrow = q_narrow + family.q[v]
        probe = left_identity_probe(
            window, q_narrow, [x for _, x in breaker_images]
        )

    notes: list[str] = []
    if not pair.breakers:
        notes.append(
            "no breakers chosen: the legacy and corrected constructions coincide"
        )
    if built.truncated_at is not None:
        notes.append(f"path families truncated at length {built.truncated_at}")
    return GapReport(
        style=built.style,
        degree_bound=degree_bound,
        relations=relations,
        span_rank=span.rank,
        window_rank=window.rank,
        elements_spanned=elements_spanned,
        missing=missing,
        witness_in_span=witness_in_span,
        probe=probe,
        notes=tuple(notes),
    )
