"""Independent bounded-degree model of the algebra, for cross-checking.

The engine decides equality by rewriting toward a normal form.  This module
decides it a second way: take the free span of all pool monomials up to a
degree bound, impose every vertex-expansion instance that fits under the
bound as a linear relation, and reduce against the resulting row space.  Two
elements of bounded degree are equal in the algebra exactly when their
difference reduces to zero here, so the two routes must agree monomial for
monomial.  Nothing below consults the engine's special-edge choices.
"""

from __future__ import annotations

from typing import Iterable, Union

from .engine import Element, LeavittAlgebra, Monomial
from .graphs import EdgePool, Path, VertexKind
from .linalg import RowSpace

RawTerm = tuple[object, Path, Path]


class BoundedQuotient:
    """Canonical coordinates on the degree-bounded slice of the algebra."""

    def __init__(
        self,
        algebra: LeavittAlgebra,
        *,
        degree: int,
        pool: EdgePool = EdgePool(),
    ):
        if degree < 0:
            raise ValueError("degree bound must be nonnegative")
        self.algebra = algebra
        self.graph = algebra.graph
        self.field = algebra.field
        self.degree = degree
        self.pool = pool

        by_target: dict[str, list[Path]] = {v: [] for v in self.graph.vertices}
        for p in self.graph.enumerate_paths(
            max_len=degree, omega_limit=pool.omega_cap
        ):
            by_target[p.target].append(p)
        self._paths_by_target = by_target

        monos: list[Monomial] = []
        for v, paths in by_target.items():
            for a in paths:
                for b in paths:
                    if len(a) + len(b) <= degree:
                        monos.append(Monomial(a, b))
        monos.sort(key=Monomial.key)
        self._monomials = tuple(monos)

        self._rows = RowSpace(self.field, key=Monomial.key)
        one = self.field.one()
        for v in self.graph.vertices:
            if self.graph.classify_vertex(v) is not VertexKind.REGULAR:
                continue
            outs = self.graph.pool_edges_from(v, pool)
            for a in by_target[v]:
                for b in by_target[v]:
                    if len(a) + len(b) > degree - 2:
                        continue
                    row = {Monomial(a, b): one}
                    for e in outs:
                        step = self.graph.make_path([e])
                        m = Monomial(
                            self.graph.concat(a, step), self.graph.concat(b, step)
                        )
                        row[m] = row.get(m, self.field.zero()) - one
                    self._rows.insert(row)

    @property
    def relation_rank(self) -> int:
        return self._rows.rank

    def monomials(self) -> tuple[Monomial, ...]:
        return self._monomials

    def _check(self, m: Monomial) -> Monomial:
        if m.degree > self.degree:
            raise ValueError(
                f"monomial degree {m.degree} exceeds the bound {self.degree}"
            )
        for p in (m.alpha, m.beta):
            for e in p.edges:
                fam = self.graph.family(e.family)
                cap = self.pool.omega_cap if fam.is_omega else fam.mult
                if e.index >= cap:
                    raise ValueError(f"edge {e.key()} is outside the pool")
        return m

    def vector_of(self, x: Union[Element, Iterable[RawTerm]]) -> dict[Monomial, object]:
        """Free-span vector of an element or of raw (coeff, left, right) terms."""
        vec: dict[Monomial, object] = {}
        if isinstance(x, Element):
            items = [(c, m.alpha, m.beta) for m, c in x.terms.items()]
        else:
            items = [(c, a, b) for c, a, b in x]
        for coeff, alpha, beta in items:
            if alpha.target != beta.target:
                raise ValueError("monomial sides must share a target vertex")
            m = self._check(Monomial(alpha, beta))
            c = self.field.coerce(coeff)
            cur = vec.get(m, self.field.zero()) + c
            if cur:
                vec[m] = cur
            else:
                vec.pop(m, None)
        return vec

    def coordinates(self, x: Union[Element, Iterable[RawTerm]]) -> dict[Monomial, object]:
        """Canonical coordinates: equal elements get identical dictionaries."""
        return self._rows.reduce(self.vector_of(x))

    def is_zero(self, x: Union[Element, Iterable[RawTerm]]) -> bool:
        return not self.coordinates(x)

    def equivalent(
        self,
        a: Union[Element, Iterable[RawTerm]],
        b: Union[Element, Iterable[RawTerm]],
    ) -> bool:
        va = self.coordinates(a)
        vb = self.coordinates(b)
        return va == vb

    def certifies(self, raw: Iterable[RawTerm], x: Element) -> bool:
        """The element names the same class as the raw spelling it came from.

        The two canonical forms run in opposite directions (the row space
        expands low-degree monomials, the engine contracts high-degree ones),
        so agreement here is genuinely two routes meeting, not one route
        checked twice.
        """
        return self.equivalent(list(raw), x)
