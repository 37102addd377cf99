"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements carry their own conductor; mixed-conductor arithmetic lifts both
operands to the lcm.  Everything is reduced modulo the m-th cyclotomic
polynomial, over exact rationals.  Complex conjugation is the Galois map
zeta -> zeta^(-1).  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from ..errors import NonUnitError


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Integer coefficients of Phi_m, low degree first, monic."""
    # Phi_m = (X^m - 1) / prod_{d | m, d < m} Phi_d, by exact division
    num = [0] * (m + 1)
    num[0] = -1
    num[m] = 1
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - 1, len(den) - 2, -1):
        c = num[i]
        if c:
            k = i - (len(den) - 1)
            out[k] = c
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    assert not any(num), "non-exact cyclotomic division"
    return out


def _phi_deg(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce(coeffs, m):
    """Reduce a rational coefficient list modulo Phi_m."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    work = list(coeffs)
    for i in range(len(work) - 1, d - 1, -1):
        c = work[i]
        if c:
            work[i] = 0
            for j in range(d):
                work[i - d + j] -= c * phi[j]
    work = work[:d]
    work += [Fraction(0)] * (d - len(work))
    return tuple(Fraction(c) for c in work)


@dataclass(frozen=True)
class CycNum:
    """An element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    conductor: int
    coeffs: tuple

    @staticmethod
    def zero(m: int = 1) -> "CycNum":
        return CycNum(m, (Fraction(0),) * _phi_deg(m))

    @staticmethod
    def one(m: int = 1) -> "CycNum":
        return CycNum.from_rational(Fraction(1), m)

    @staticmethod
    def from_rational(x, m: int = 1) -> "CycNum":
        coeffs = [Fraction(x)] + [Fraction(0)] * (_phi_deg(m) - 1)
        return CycNum(m, tuple(coeffs))

    @staticmethod
    def zeta(m: int, k: int = 1) -> "CycNum":
        """zeta_m^k."""
        k %= m
        raw = [Fraction(0)] * (k + 1)
        raw[k] = Fraction(1)
        return CycNum(m, _reduce(raw, m))

    @staticmethod
    def from_label(label: Fraction) -> "CycNum":
        """The root of unity exp(2 pi i * label) for label = j/m in Q/Z."""
        fr = Fraction(label) % 1
        return CycNum.zeta(fr.denominator, fr.numerator)

    def lift(self, big_m: int) -> "CycNum":
        if big_m == self.conductor:
            return self
        if big_m % self.conductor:
            raise ValueError("conductor does not divide target")
        step = big_m // self.conductor
        raw = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1 or 1)
        for i, c in enumerate(self.coeffs):
            if c:
                raw[i * step] += c
        return CycNum(big_m, _reduce(raw, big_m))

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other, 1)
        if not isinstance(other, CycNum):
            return NotImplemented, NotImplemented
        m = lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return CycNum.from_rational(other, 1) - self

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        raw = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] += x * y
        return CycNum(a.conductor, _reduce(raw, a.conductor))

    __rmul__ = __mul__

    def __neg__(self):
        return CycNum(self.conductor, tuple(-c for c in self.coeffs))

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = CycNum.one(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def __hash__(self):
        # hash via a minimal canonical lift: strip to conductor 1 if rational
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def conj(self) -> "CycNum":
        """Complex conjugation, the Galois map zeta -> zeta^(-1)."""
        return self.galois(-1)

    def galois(self, k: int) -> "CycNum":
        """The map zeta_m -> zeta_m^k for k coprime to m."""
        m = self.conductor
        k %= m
        if gcd(k, m) != 1:
            raise ValueError("not a Galois automorphism")
        raw = [Fraction(0)] * (m + (len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                raw[i * k] += c
        return CycNum(m, _reduce(raw, m))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def inv(self) -> "CycNum":
        """Exact inverse via a linear solve against the multiplication matrix."""
        if not self:
            raise NonUnitError("division by zero in a cyclotomic field")
        m = self.conductor
        d = len(self.coeffs)
        # columns: self * zeta^j expressed in the power basis
        cols = []
        for j in range(d):
            prod = self * CycNum.zeta(m, j) if j else self
            prod = prod.lift(m)
            cols.append(list(prod.coeffs))
        # solve sum_j y_j * cols[j] = e_0 by Gaussian elimination over Q
        n = d
        aug = [[cols[j][i] for j in range(n)] + [Fraction(1 if i == 0 else 0)]
               for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise NonUnitError("singular multiplication matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [c / pv for c in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [c - f * d2 for c, d2 in zip(aug[r], aug[col])]
        y = tuple(aug[i][n] for i in range(n))
        return CycNum(m, y)

    def __repr__(self):
        if self.is_rational():
            return f"cyc({self.coeffs[0]})"
        return f"cyc(m={self.conductor}, {list(self.coeffs)})"


class CyclotomicField:
    """Ring-protocol adapter; the conductor only seeds zero/one."""

    char = 0

    def __init__(self, m: int = 1):
        self.m = m

    def zero(self):
        return CycNum.zero(self.m)

    def one(self):
        return CycNum.one(self.m)

    def from_int(self, k: int):
        return CycNum.from_rational(k, self.m)

    def is_unit(self, x: CycNum) -> bool:
        return bool(x)

    def inv(self, x: CycNum) -> CycNum:
        return x.inv()

    def __repr__(self):
        return f"Q(zeta_{self.m})"
