"""Sparse exact row reduction over a field, keyed by ordered column labels.

Rows are dicts from hashable column labels to nonzero field scalars.  The
space keeps itself in reduced echelon form: one pivot per row, pivot
coefficient one, pivot column absent from every other row.  All arithmetic is
exact; there is no pivoting tolerance.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Optional

Row = Dict[Hashable, object]


class RowSpace:
    """Incrementally built row space with exact membership tests."""

    def __init__(self, field, key: Optional[Callable[[Hashable], object]] = None):
        self.field = field
        self.key = key or (lambda c: c)
        self.pivots: dict[Hashable, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Row) -> Row:
        """Canonical remainder of vec modulo the row space."""
        rem: Row = {c: x for c, x in vec.items() if x}
        while True:
            hit = None
            for col in rem:
                if col in self.pivots:
                    if hit is None or self.key(col) > self.key(hit):
                        hit = col
            if hit is None:
                return rem
            coeff = rem[hit]
            row = self.pivots[hit]
            for col, x in row.items():
                new = rem.get(col, self.field.zero()) - coeff * x
                if new:
                    rem[col] = new
                else:
                    rem.pop(col, None)

    def insert(self, vec: Row) -> bool:
        """Add vec to the space; returns True if the rank grew."""
        rem = self.reduce(vec)
        if not rem:
            return False
        lead = max(rem, key=self.key)
        inv = self.field.one() / rem[lead]
        row = {c: x * inv for c, x in rem.items()}
        for other in self.pivots.values():
            if lead in other:
                coeff = other.pop(lead)
                for col, x in row.items():
                    if col == lead:
                        continue
                    new = other.get(col, self.field.zero()) - coeff * x
                    if new:
                        other[col] = new
                    else:
                        other.pop(col, None)
        self.pivots[lead] = row
        return True

    def contains(self, vec: Row) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: Row) -> Row:
        """Alias of reduce: equal canonical remainders mean equal classes."""
        return self.reduce(vec)
