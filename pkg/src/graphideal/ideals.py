"""Bounded windows onto the graded ideal attached to an admissible pair.

The ideal is spanned by two element shapes: plain ``left . right*`` monomials
whose shared target sits in the core, and gap-dressed ``left . gap . right*``
sandwiches whose shared target is a breaker.  A window materializes every
such element up to a descriptor-degree bound as rows of an exact row space,
which then answers membership for elements of bounded degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .engine import Element, LeavittAlgebra, Monomial
from .graphs import EdgePool, Graph, Path
from .lattice import AdmissiblePair
from .linalg import RowSpace


@dataclass(frozen=True)
class Descriptor:
    """Recipe for one spanning element: ``alpha . beta*``, gap-dressed at
    ``breaker`` (the shared target) when that field is set."""

    alpha: Path
    beta: Path
    breaker: Optional[str] = None

    @property
    def degree(self) -> int:
        return len(self.alpha) + len(self.beta)

    def sort_key(self):
        return (self.degree, self.breaker or "", self.alpha.key(), self.beta.key())

    def word(self, g: Graph) -> str:
        left = g.path_word(self.alpha)
        right = g.path_word(self.beta)
        if self.breaker is None:
            return f"{left} . ({right})!"
        return f"{left} . gap({self.breaker}) . ({right})!"


def descriptor_element(
    algebra: LeavittAlgebra, pair: AdmissiblePair, d: Descriptor
) -> Element:
    left = algebra.path_element(d.alpha)
    right = algebra.path_element(d.beta).star()
    if d.breaker is None:
        return left * right
    return left * algebra.gap(d.breaker, pair.core) * right


def spanning_descriptors(
    g: Graph,
    pair: AdmissiblePair,
    *,
    bound: int,
    pool: EdgePool = EdgePool(),
) -> list[Descriptor]:
    """Every descriptor of degree <= bound over the pool, in sorted order."""
    if bound < 0:
        raise ValueError("descriptor bound must be nonnegative")
    by_target: dict[str, list[Path]] = {v: [] for v in g.vertices}
    for p in g.enumerate_paths(max_len=bound, omega_limit=pool.omega_cap):
        by_target[p.target].append(p)
    out: list[Descriptor] = []
    for v in g.vertices:
        in_core = v in pair.core
        in_breakers = v in pair.breakers
        if not (in_core or in_breakers):
            continue
        paths = by_target[v]
        for a in paths:
            for b in paths:
                if len(a) + len(b) > bound:
                    continue
                out.append(Descriptor(a, b, v if in_breakers else None))
    out.sort(key=Descriptor.sort_key)
    return out


def spanning_elements(
    algebra: LeavittAlgebra,
    pair: AdmissiblePair,
    *,
    bound: int,
    pool: EdgePool = EdgePool(),
) -> list[tuple[Descriptor, Element]]:
    out = []
    for d in spanning_descriptors(algebra.graph, pair, bound=bound, pool=pool):
        x = descriptor_element(algebra, pair, d)
        if not x.is_zero():
            out.append((d, x))
    return out


class IdealWindow:
    """Row space spanned by all ideal elements of descriptor degree <= bound."""

    def __init__(
        self,
        algebra: LeavittAlgebra,
        pair: AdmissiblePair,
        *,
        bound: int,
        pool: EdgePool = EdgePool(),
    ):
        self.algebra = algebra
        self.pair = pair
        self.bound = bound
        self.pool = pool
        self.degree_cap = bound + 2
        self.spanning = spanning_elements(algebra, pair, bound=bound, pool=pool)
        self._rows = RowSpace(algebra.field, key=Monomial.key)
        for _, x in self.spanning:
            self._rows.insert(dict(x.terms))

    @property
    def rank(self) -> int:
        return self._rows.rank

    def _vector(self, x: Element) -> dict:
        if not self.algebra.compatible(x.algebra):
            raise ValueError("element belongs to a different algebra")
        if x.max_degree() > self.degree_cap:
            raise ValueError(
                f"element degree {x.max_degree()} exceeds the window cap "
                f"{self.degree_cap}; rebuild with a larger bound"
            )
        return dict(x.terms)

    def reduce(self, x: Element) -> Element:
        """Remainder of x against the window rows, as an element."""
        rem = self._rows.reduce(self._vector(x))
        out = self.algebra.zero()
        out.terms.update(rem)
        return out

    def contains(self, x: Element) -> bool:
        return not self._rows.reduce(self._vector(x))


@dataclass(frozen=True)
class ClosureFailure:
    descriptor: Descriptor
    multiplier: str
    side: str
    product: Element


@dataclass(frozen=True)
class ClosureReport:
    ok: bool
    products_checked: int
    failure: Optional[ClosureFailure] = None


def closure_under_generators(window: IdealWindow) -> ClosureReport:
    """Products of window members by algebra generators stay in the window.

    Edge and star multipliers can raise descriptor degree by one, so they run
    over members at least one below the bound; vertex multipliers run over
    everything.
    """
    al = window.algebra
    g = al.graph
    vertex_muls = [(v, al.vertex(v)) for v in g.vertices]
    edge_muls = []
    for e in g.pool_edges(window.pool):
        tok = g.edge_token(e)
        x = al.edge(e.family, e.index)
        edge_muls.append((tok, x))
        edge_muls.append((tok + "!", x.star()))

    checked = 0
    for d, elt in window.spanning:
        muls = vertex_muls + (edge_muls if d.degree < window.bound else [])
        for tok, m in muls:
            for side, product in (("left", m * elt), ("right", elt * m)):
                checked += 1
                if not window.contains(product):
                    return ClosureReport(
                        False, checked, ClosureFailure(d, tok, side, product)
                    )
    return ClosureReport(True, checked)


@dataclass(frozen=True)
class ProbeFailure:
    index: int
    witness: Element
    side: str
    product: Element


@dataclass(frozen=True)
class ProbeReport:
    is_identity: bool
    checked: int
    failure: Optional[ProbeFailure] = None


def left_identity_probe(
    window: IdealWindow, q: Element, witnesses: list[Element]
) -> ProbeReport:
    """Does q act as a two-sided unit on each witness?

    Witnesses must already lie in the window; the first product that differs
    from its witness is reported, left side checked first.
    """
    if not window.contains(q):
        raise ValueError("the candidate unit is not in the ideal window")
    for i, x in enumerate(witnesses):
        if not window.contains(x):
            raise ValueError(f"witness {i} is not in the ideal window")
    checked = 0
    for i, x in enumerate(witnesses):
        for side, product in (("left", q * x), ("right", x * q)):
            checked += 1
            if product != x:
                return ProbeReport(False, checked, ProbeFailure(i, x, side, product))
    return ProbeReport(True, checked)
