"""Base coefficient rings: integers, rationals and residue rings Z/N.

All rings used by the workbench follow one informal protocol: elements
support ``+ - *`` and ``==`` among themselves, and the ring object supplies
``zero() one() from_int(k) is_unit(x) inv(x)``.  Elements are immutable, so
values can be shared freely between threads.  Arbitrary-precision integers
are Python ints; nothing here ever overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import NonUnitError


class IntegerRing:
    """The ring of (big) integers."""

    char = 0

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k: int):
        return int(k)

    def is_unit(self, x) -> bool:
        return x in (1, -1)

    def inv(self, x):
        if not self.is_unit(x):
            raise NonUnitError(f"{x} is not a unit in ZZ")
        return x

    def __repr__(self):
        return "ZZ"


class RationalField:
    """The field of rationals, elements are ``fractions.Fraction``."""

    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k: int):
        return Fraction(k)

    def is_unit(self, x) -> bool:
        return x != 0

    def inv(self, x):
        if x == 0:
            raise NonUnitError("division by zero in QQ")
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()


@dataclass(frozen=True)
class Rme:
    """Residue ring element: ``value`` strictly reduced modulo ``modulus``."""

    modulus: int
    value: int

    def __post_init__(self):
        if not (0 <= self.value < self.modulus):
            object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other) -> "Rme":
        if not isinstance(other, Rme):
            if isinstance(other, int):
                return Rme(self.modulus, other)
            return NotImplemented
        if other.modulus != self.modulus:
            raise ValueError("mixed moduli")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Rme(self.modulus, (self.value + o.value) % self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Rme(self.modulus, (self.value - o.value) % self.modulus)

    def __rsub__(self, other):
        o = self._check(other)
        return o - self

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Rme(self.modulus, (self.value * o.value) % self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Rme(self.modulus, -self.value % self.modulus)

    def __pow__(self, k: int):
        return Rme(self.modulus, pow(self.value, k, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}~{self.modulus}"


class ResidueRing:
    """Z/N for N >= 2; operations agree with integer arithmetic mod N."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = modulus
        self.char = modulus

    def zero(self):
        return Rme(self.modulus, 0)

    def one(self):
        return Rme(self.modulus, 1)

    def from_int(self, k: int):
        return Rme(self.modulus, k % self.modulus)

    def is_unit(self, x: Rme) -> bool:
        return gcd(x.value, self.modulus) == 1

    def inv(self, x: Rme) -> Rme:
        try:
            return Rme(self.modulus, pow(x.value, -1, self.modulus))
        except ValueError as exc:
            raise NonUnitError(f"{x} is not a unit mod {self.modulus}") from exc

    def elements(self):
        return [Rme(self.modulus, v) for v in range(self.modulus)]

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ResidueRing", self.modulus))

    def __repr__(self):
        return f"Z/{self.modulus}"


@lru_cache(maxsize=None)
def Zmod(modulus: int) -> ResidueRing:
    return ResidueRing(modulus)


def prime_power(q: int) -> tuple[int, int]:
    """Write q = p**k with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = None
    m = q
    for d in range(2, q + 1):
        if d * d > m:
            p = m if p is None else p
            break
        if m % d == 0:
            p = d
            break
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def valuation(n: int, ell: int) -> int:
    """The exponent of ell in n (n nonzero)."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = abs(n)
    while n % ell == 0:
        n //= ell
        v += 1
    return v
