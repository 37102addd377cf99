"""Finite fields F_{p^e} with deterministic defining polynomials.

The defining polynomial of F_{p^e} is the lowest monic irreducible of degree
e over F_p, where candidates X^e + a_{e-1}X^{e-1} + ... + a_0 are ordered by
the tuple (a_{e-1}, ..., a_0).  This pins every field, every element order
and every canonical generator without external tables.  Fields are cached
per (p, e).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..errors import NonUnitError
from .rings import prime_power


def _poly_mulmod(a, b, defn, p):
    # dense coefficient tuples, reduction modulo the monic tuple `defn`
    e = len(defn)
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, e - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(e):
                res[i - e + j] = (res[i - e + j] - c * defn[j]) % p
    out = res[:e]
    out += [0] * (e - len(out))
    return tuple(out)


def _is_irreducible(coeffs, p):
    """coeffs = (a_0, ..., a_{e-1}) of the monic X^e + ...; trial division."""
    e = len(coeffs)
    if e == 1:
        return True
    full = list(coeffs) + [1]
    for d in range(1, e // 2 + 1):
        for lower in product(range(p), repeat=d):
            div = list(lower) + [1]
            # long division of `full` by monic `div` over F_p
            rem = list(full)
            for i in range(len(rem) - 1, d - 1, -1):
                c = rem[i]
                if c:
                    for j in range(d + 1):
                        rem[i - d + j] = (rem[i - d + j] - c * div[j]) % p
            if not any(rem[:d]):
                return False
    return True


@dataclass(frozen=True)
class FFElem:
    """Element of F_{p^e}: coefficient vector in the power basis."""

    field: "FiniteField"
    coeffs: tuple

    def __add__(self, other):
        o = self.field.coerce(other)
        return FFElem(self.field, tuple((a + b) % self.field.p
                                        for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self.field.coerce(other)
        return FFElem(self.field, tuple((a - b) % self.field.p
                                        for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        o = self.field.coerce(other)
        return FFElem(self.field, _poly_mulmod(self.coeffs, o.coeffs,
                                               self.field.defining, self.field.p))

    __rmul__ = __mul__

    def __neg__(self):
        return FFElem(self.field, tuple(-a % self.field.p for a in self.coeffs))

    def __pow__(self, k: int):
        if k < 0:
            return self.field.inv(self) ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def int_value(self) -> int:
        """p-adic packing of the coefficient vector; the canonical order."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v

    def __repr__(self):
        return f"ff({self.int_value()})@{self.field}"


class FiniteField:
    """F_{p^e}; use the GF(p, e) cache instead of constructing directly."""

    def __init__(self, p: int, e: int):
        pp, k = prime_power(p)
        if pp != p or k != 1:
            raise ValueError("characteristic must be prime")
        self.p = p
        self.e = e
        self.order = p ** e
        self.char = p
        defining = None
        for tail in product(range(p), repeat=e):
            # tail = (a_{e-1}, ..., a_0)
            coeffs = tuple(reversed(tail))
            if _is_irreducible(coeffs, p):
                defining = coeffs
                break
        self.defining = defining  # (a_0, ..., a_{e-1}) of monic degree-e poly
        self._gen_cache = None

    def zero(self):
        return FFElem(self, (0,) * self.e)

    def one(self):
        return self.from_int(1)

    def from_int(self, k: int):
        return FFElem(self, (k % self.p,) + (0,) * (self.e - 1))

    def gen(self):
        """The class of X, a root of the defining polynomial."""
        if self.e == 1:
            return self.one()
        return FFElem(self, (0, 1) + (0,) * (self.e - 2))

    def from_int_value(self, v: int):
        coeffs = []
        for _ in range(self.e):
            coeffs.append(v % self.p)
            v //= self.p
        return FFElem(self, tuple(coeffs))

    def coerce(self, x) -> FFElem:
        if isinstance(x, FFElem):
            if x.field is self:
                return x
            if x.field.p == self.p and x.field.e == self.e:
                return FFElem(self, x.coeffs)
            raise ValueError("element of a different field")
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def elements(self):
        return [self.from_int_value(v) for v in range(self.order)]

    def is_unit(self, x: FFElem) -> bool:
        return bool(x)

    def inv(self, x: FFElem) -> FFElem:
        if not x:
            raise NonUnitError("division by zero in " + repr(self))
        return x ** (self.order - 2)

    def element_order(self, x: FFElem) -> int:
        if not x:
            raise NonUnitError("zero has no multiplicative order")
        n = self.order - 1
        order = n
        for d in sorted(_divisors(n)):
            if not (x ** d - self.one()):
                order = d
                break
        return order

    def generator(self) -> FFElem:
        """Smallest primitive element in canonical order."""
        if self._gen_cache is None:
            for v in range(1, self.order):
                x = self.from_int_value(v)
                if self.element_order(x) == self.order - 1:
                    self._gen_cache = x
                    break
        return self._gen_cache

    def root_of_unity(self, m: int) -> FFElem:
        """Canonical element of exact multiplicative order m."""
        if (self.order - 1) % m:
            raise ValueError(f"no {m}th roots of unity in {self}")
        return self.generator() ** ((self.order - 1) // m)

    def dlog(self, x: FFElem) -> int:
        """Discrete log of x with respect to the canonical generator."""
        g = self.generator()
        acc = self.one()
        for k in range(self.order - 1):
            if acc == x:
                return k
            acc = acc * g
        raise NonUnitError("dlog of zero")

    def frobenius(self, x: FFElem) -> FFElem:
        return x ** self.p

    def trace_to_prime(self, x: FFElem) -> int:
        """Absolute trace into F_p, returned as an int in [0, p)."""
        acc = self.zero()
        y = x
        for _ in range(self.e):
            acc = acc + y
            y = self.frobenius(y)
        assert all(c == 0 for c in acc.coeffs[1:])
        return acc.coeffs[0]

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and other.p == self.p and other.e == self.e)

    def __hash__(self):
        return hash(("FiniteField", self.p, self.e))

    def __repr__(self):
        return f"F{self.order}"


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


@lru_cache(maxsize=None)
def GF(p: int, e: int = 1) -> FiniteField:
    return FiniteField(p, e)


def field_with_order_m_roots(ell: int, e: int, m: int) -> FiniteField:
    """Smallest extension of F_{ell^e} containing the m-th roots of unity."""
    k = 1
    while (ell ** (e * k) - 1) % m:
        k += 1
        if k > 64:
            raise ValueError(f"order {m} unreachable from F_{ell}^{e}")
    return GF(ell, e * k)


def embed(small: FiniteField, big: FiniteField):
    """A field embedding F_{p^e} -> F_{p^(ek)}, as a callable on elements.

    Deterministic: the image of the generator is the first root of the
    small defining polynomial in the canonical element order of `big`.
    """
    if small.p != big.p or big.e % small.e:
        raise ValueError("no embedding")
    if small == big:
        return lambda x: x
    defn = list(small.defining) + [1]
    root = None
    for v in range(big.order):
        x = big.from_int_value(v)
        acc = big.zero()
        xp = big.one()
        for c in defn:
            acc = acc + xp * big.from_int(c)
            xp = xp * x
        if not acc:
            root = x
            break
    assert root is not None, "splitting field big enough by construction"

    def phi(elem: FFElem) -> FFElem:
        acc = big.zero()
        xp = big.one()
        for c in elem.coeffs:
            acc = acc + xp * big.from_int(c)
            xp = xp * root
        return acc

    return phi
