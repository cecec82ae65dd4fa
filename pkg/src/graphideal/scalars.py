"""Exact scalar fields: arbitrary-precision rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


@dataclass(frozen=True)
class ModInt:
    """Residue modulo a prime; arithmetic stays inside the field."""

    value: int
    p: int

    def _lift(self, other: Union["ModInt", int]) -> "ModInt":
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other
        if isinstance(other, int):
            return ModInt(other % self.p, self.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._lift(other)
        return ModInt((self.value + o.value) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return ModInt((self.value - o.value) % self.p, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return ModInt((o.value - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return ModInt((self.value * o.value) % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.value == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return self * ModInt(pow(o.value, self.p - 2, self.p), self.p)

    def __neg__(self):
        return ModInt((-self.value) % self.p, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return str(self.value)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field of arbitrary-precision rational scalars."""

    name = "rational"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise ValueError(f"cannot coerce {x!r} into the rational field")

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad rational scalar {text!r}") from None

    def format(self, x: Fraction) -> str:
        return str(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rational")

    def __repr__(self) -> str:
        return "RationalField()"


class PrimeField:
    """GF(p) for a prime p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"gf:{p}"

    def zero(self) -> ModInt:
        return ModInt(0, self.p)

    def one(self) -> ModInt:
        return ModInt(1, self.p)

    def from_int(self, n: int) -> ModInt:
        return ModInt(n % self.p, self.p)

    def coerce(self, x) -> ModInt:
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise ValueError("scalar from a different prime field")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise ValueError(f"cannot coerce {x!r} into GF({self.p})")

    def parse(self, text: str) -> ModInt:
        try:
            return self.from_int(int(text))
        except ValueError:
            raise ValueError(f"bad GF({self.p}) scalar {text!r}") from None

    def format(self, x: ModInt) -> str:
        return str(x.value)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("gf", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def field_from_spec(spec: str) -> Field:
    """Parse a field selector: ``rational`` or ``gf:P`` with P prime."""
    if spec == "rational":
        return QQ
    if spec.startswith("gf:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise ValueError(f"bad field spec {spec!r}") from None
        return PrimeField(p)
    raise ValueError(f"bad field spec {spec!r}")
