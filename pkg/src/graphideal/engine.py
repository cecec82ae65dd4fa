"""Exact symbolic arithmetic in the Leavitt path algebra of a graph.

Elements are finite linear combinations of monomials ``alpha . beta*`` where
``alpha`` and ``beta`` are paths with a common range.  Products follow the
prefix rule

    (a b*) (c d*) = (a g) d*   when c = b g,
    (a b*) (c d*) = a (d h)*   when b = c h,
    (a b*) (c d*) = 0          otherwise,

and the sum relation at a regular vertex v (v equals the sum of e e* over the
edges leaving v) is applied as a directed rewrite: one outgoing edge per
regular vertex is designated special, and any monomial whose two sides both
end in that special edge is rewritten

    (a s)(b s)*  ->  a b*  -  sum over d != s of (a d)(b d)*.

Normal forms contain no such monomial.  The rule never fires at infinite
emitters or sinks, which have no special edge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .graphs import EdgeRef, Graph, Path, VertexKind, graphs_equal
from .scalars import Field, QQ


@dataclass(frozen=True)
class Monomial:
    """``alpha . beta*`` with matching ranges; degree is len(alpha) + len(beta)."""

    alpha: Path
    beta: Path

    @property
    def degree(self) -> int:
        return len(self.alpha) + len(self.beta)

    @property
    def z_degree(self) -> int:
        return len(self.alpha) - len(self.beta)

    def key(self) -> tuple:
        return (self.degree, self.alpha.key(), self.beta.key())

    def star(self) -> "Monomial":
        return Monomial(self.beta, self.alpha)


def default_special_edges(g: Graph) -> dict[str, EdgeRef]:
    """Smallest (family, index) edge at every regular vertex."""
    chosen = {}
    for v in g.vertices:
        if g.classify_vertex(v) is VertexKind.REGULAR:
            fam = min(g.out_families(v), key=lambda f: f.name)
            chosen[v] = EdgeRef(fam.name, 0)
    return chosen


class LeavittAlgebra:
    """Context object tying together a graph, a scalar field, and the pivots."""

    def __init__(
        self,
        graph: Graph,
        field: Field = QQ,
        special_edges: Optional[dict[str, EdgeRef]] = None,
    ):
        self.graph = graph
        self.field = field
        if special_edges is None:
            special_edges = default_special_edges(graph)
        for v, e in special_edges.items():
            if graph.classify_vertex(v) is not VertexKind.REGULAR:
                raise ValueError(f"special edge at non-regular vertex {v!r}")
            graph.check_edge(e)
            if graph.edge_src(e) != v:
                raise ValueError(f"special edge for {v!r} does not leave it")
        regular = {
            v for v in graph.vertices if graph.classify_vertex(v) is VertexKind.REGULAR
        }
        if set(special_edges) != regular:
            raise ValueError("special edges must cover exactly the regular vertices")
        self.special_edges = dict(special_edges)

    # -- element constructors ----------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def scalar_term(self, coeff, alpha: Path, beta: Path) -> "Element":
        if alpha.target != beta.target:
            raise ValueError("monomial sides must share their range")
        c = self.field.coerce(coeff)
        if not c:
            return self.zero()
        return Element(self, self._reduce({Monomial(alpha, beta): c}))

    def monomial(self, alpha: Path, beta: Path) -> "Element":
        return self.scalar_term(1, alpha, beta)

    def vertex(self, v: str) -> "Element":
        p = self.graph.empty_path(v)
        return self.monomial(p, p)

    def edge(self, name_or_ref, index: int = 0) -> "Element":
        ref = name_or_ref if isinstance(name_or_ref, EdgeRef) else EdgeRef(name_or_ref, index)
        self.graph.check_edge(ref)
        alpha = self.graph.make_path([ref])
        return self.monomial(alpha, self.graph.empty_path(alpha.target))

    def edge_star(self, name_or_ref, index: int = 0) -> "Element":
        return self.edge(name_or_ref, index).star()

    def path_element(self, p: Path) -> "Element":
        return self.monomial(p, self.graph.empty_path(p.target))

    def combination(self, terms: Iterable[tuple], rng=None) -> "Element":
        """Normal form of a raw linear combination of (coeff, alpha, beta)."""
        raw: dict[Monomial, object] = {}
        for coeff, alpha, beta in terms:
            if alpha.target != beta.target:
                raise ValueError("monomial sides must share their range")
            m = Monomial(alpha, beta)
            c = raw.get(m, self.field.zero()) + self.field.coerce(coeff)
            if c:
                raw[m] = c
            else:
                raw.pop(m, None)
        return Element(self, self._reduce(raw, rng=rng))

    def gap(self, v: str, core: frozenset[str] | set[str]) -> "Element":
        """The vertex minus the range projections of its edges avoiding the core.

        Defined for vertices where those edges are finite in number but the
        vertex emits infinitely many edges overall (breaking vertices), and
        also for any finite emitter.
        """
        self.graph.check_vertex(v)
        outside = [f for f in self.graph.out_families(v) if f.dst not in core]
        if any(f.is_omega for f in outside):
            raise ValueError(f"vertex {v!r} emits infinitely many edges avoiding the core")
        result = self.vertex(v)
        for fam in outside:
            for i in range(fam.mult):
                e = self.edge(fam.name, i)
                result = result - e * e.star()
        return result

    # -- product and reduction ----------------------------------------------

    def _raw_product(self, m1: Monomial, m2: Monomial) -> Optional[Monomial]:
        b, a = m1.beta, m2.alpha
        if b.source != a.source:
            return None
        if len(a.edges) >= len(b.edges):
            if a.edges[: len(b.edges)] != b.edges:
                return None
            gamma = a.edges[len(b.edges) :]
            alpha = Path(m1.alpha.edges + gamma, m1.alpha.source, a.target)
            return Monomial(alpha, m2.beta)
        if b.edges[: len(a.edges)] != a.edges:
            return None
        delta = b.edges[len(a.edges) :]
        beta = Path(m2.beta.edges + delta, m2.beta.source, b.target)
        return Monomial(m1.alpha, beta)

    def _reducible(self, m: Monomial) -> Optional[str]:
        """The pivot vertex when the rewrite applies to m, else None."""
        if not m.alpha.edges or not m.beta.edges:
            return None
        last = m.alpha.edges[-1]
        if last != m.beta.edges[-1]:
            return None
        v = self.graph.edge_src(last)
        if self.special_edges.get(v) != last:
            return None
        return v

    def _reduce(self, raw: dict[Monomial, object], rng=None) -> dict[Monomial, object]:
        terms = {m: c for m, c in raw.items() if c}
        work = [m for m in terms if self._reducible(m)]
        while work:
            if rng is None:
                idx = len(work) - 1
            else:
                idx = rng.randrange(len(work))
            m = work.pop(idx)
            if m not in terms:
                continue
            v = self._reducible(m)
            if v is None:
                continue
            coeff = terms.pop(m)
            parent = Monomial(
                Path(m.alpha.edges[:-1], m.alpha.source, v),
                Path(m.beta.edges[:-1], m.beta.source, v),
            )
            updates = [(parent, coeff)]
            special = self.special_edges[v]
            for fam in self.graph.out_families(v):
                for i in range(fam.mult):
                    d = EdgeRef(fam.name, i)
                    if d == special:
                        continue
                    sib = Monomial(
                        Path(parent.alpha.edges + (d,), parent.alpha.source, fam.dst),
                        Path(parent.beta.edges + (d,), parent.beta.source, fam.dst),
                    )
                    updates.append((sib, -coeff))
            for mono, delta in updates:
                c = terms.get(mono, self.field.zero()) + delta
                if c:
                    terms[mono] = c
                    if self._reducible(mono):
                        work.append(mono)
                else:
                    terms.pop(mono, None)
        return terms

    # -- compatibility -------------------------------------------------------

    def compatible(self, other: "LeavittAlgebra") -> bool:
        return (
            graphs_equal(self.graph, other.graph)
            and self.field == other.field
            and self.special_edges == other.special_edges
        )


class Element:
    """An algebra element in normal form.  Treat ``terms`` as immutable."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=Monomial.key)

    def max_degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def graded_components(self) -> dict[int, "Element"]:
        """Split by len(alpha) - len(beta); components sum back to self."""
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(m.z_degree, {})[m] = c
        return {d: Element(self.algebra, t) for d, t in sorted(parts.items())}

    def star(self) -> "Element":
        return Element(self.algebra, {m.star(): c for m, c in self.terms.items()})

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "Element") -> None:
        if self.algebra is not other.algebra and not self.algebra.compatible(other.algebra):
            raise ValueError("elements from different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        zero = self.algebra.field.zero()
        for m, c in other.terms.items():
            s = terms.get(m, zero) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Element(self.algebra, terms)

    def __neg__(self) -> "Element":
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, coeff) -> "Element":
        c = self.algebra.field.coerce(coeff)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            field = self.algebra.field
            raw: dict[Monomial, object] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    prod = self.algebra._raw_product(m1, m2)
                    if prod is None:
                        continue
                    c = raw.get(prod, field.zero()) + c1 * c2
                    if c:
                        raw[prod] = c
                    else:
                        raw.pop(prod, None)
            return Element(self.algebra, self.algebra._reduce(raw))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return hash(frozenset((m, str(c)) for m, c in self.terms.items()))

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"<Element {format_element(self)}>"


# -- textual element syntax ----------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[\[\]!.*+-]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad element syntax near {text[pos:pos + 12]!r}")
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("sym", m.group("sym")))
    return tokens


class _Parser:
    def __init__(self, algebra: LeavittAlgebra, tokens: list[tuple[str, str]]):
        self.algebra = algebra
        self.toks = tokens
        self.pos = 0

    def peek(self) -> Optional[tuple[str, str]]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of element expression")
        self.pos += 1
        return tok

    def parse(self) -> Element:
        result = self.algebra.zero()
        sign = 1
        first = True
        while self.peek() is not None:
            tok = self.peek()
            if tok == ("sym", "+"):
                self.take()
                sign = 1
            elif tok == ("sym", "-"):
                self.take()
                sign = -1
            elif not first:
                raise ValueError(f"expected + or - before {tok[1]!r}")
            result = result + self.term().scale(sign)
            sign = 1
            first = False
        return result

    def term(self) -> Element:
        coeff = self.algebra.field.one()
        tok = self.peek()
        if tok is not None and tok[0] == "num":
            self.take()
            coeff = self.algebra.field.parse(tok[1])
            nxt = self.peek()
            if nxt == ("sym", "*"):
                self.take()
            elif nxt is None or nxt[0] != "name":
                if coeff == self.algebra.field.zero():
                    return self.algebra.zero()
                raise ValueError("scalar term without a word (only 0 is allowed)")
        return self.word().scale(coeff)

    def word(self) -> Element:
        result = None
        while True:
            factor = self.atom()
            result = factor if result is None else result * factor
            if self.peek() == ("sym", "."):
                self.take()
                continue
            return result

    def atom(self) -> Element:
        kind, name = self.take()
        if kind != "name":
            raise ValueError(f"expected a vertex or edge name, got {name!r}")
        index = 0
        indexed = False
        if self.peek() == ("sym", "["):
            self.take()
            kind2, num = self.take()
            if kind2 != "num" or "/" in num:
                raise ValueError("edge index must be a plain integer")
            index = int(num)
            indexed = True
            if self.take() != ("sym", "]"):
                raise ValueError("unclosed edge index")
        starred = False
        if self.peek() == ("sym", "!"):
            self.take()
            starred = True
        g = self.algebra.graph
        is_edge = name in g.families
        is_vertex = name in set(g.vertices)
        if is_edge and is_vertex:
            raise ValueError(f"name {name!r} is both a vertex and an edge family")
        if is_edge:
            e = self.algebra.edge(name, index)
            return e.star() if starred else e
        if is_vertex:
            if indexed:
                raise ValueError(f"vertex {name!r} cannot carry an index")
            if starred:
                raise ValueError(f"vertex {name!r} cannot be starred")
            return self.algebra.vertex(name)
        raise ValueError(f"unknown name {name!r}")


def parse_element(algebra: LeavittAlgebra, text: str) -> Element:
    """Parse the textual element syntax, e.g. ``3/2 * a.b! - c``."""
    stripped = text.strip()
    if stripped == "0":
        return algebra.zero()
    return _Parser(algebra, _tokenize(stripped)).parse()


def monomial_word(g: Graph, m: Monomial) -> str:
    parts = [g.edge_token(e) for e in m.alpha.edges]
    parts.extend(g.edge_token(e) + "!" for e in reversed(m.beta.edges))
    if not parts:
        return m.alpha.source
    return ".".join(parts)


def format_element(x: Element) -> str:
    """Canonical text; parse_element inverts it exactly."""
    if x.is_zero():
        return "0"
    field = x.algebra.field
    g = x.algebra.graph
    pieces = []
    for m in x.monomials():
        c = x.terms[m]
        word = monomial_word(g, m)
        if hasattr(c, "numerator"):
            neg = c < 0
            mag = -c if neg else c
            body = word if mag == field.one() else f"{field.format(mag)} * {word}"
            pieces.append(("-" if neg else "+", body))
        else:
            body = word if c == field.one() else f"{field.format(c)} * {word}"
            pieces.append(("+", body))
    sign, body = pieces[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
