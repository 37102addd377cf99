"""Finite artinian local coefficient rings via structure constants.

A ring here is a finite module with a distinguished basis b_0 = 1, b_1, ...
where coordinate i lives in Z/ell^{a_i}, together with a multiplication
table.  This covers Z/ell^a, F_{ell^e}[t]/(t^b), Z/ell^a[t]/(t^b,
ell^(a-1) t) and the unramified truncations W(F_{ell^e})/ell^a.  (The mixed
family Z/ell^a[t]/(t^b, ell^(a-1)t) is not free over Z/ell^a, so moduli are
tracked per coordinate.)

Locality is certified at construction by exhaustive check: the non-units
are exactly the elements with zero residue, and they form a nilpotent
ideal.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..errors import NonUnitError
from .finitefield import GF, FFElem
from .rings import valuation


@dataclass(frozen=True)
class ArtinElem:
    ring: "ArtinLocalRing"
    coords: tuple

    def _coerce(self, other):
        if isinstance(other, ArtinElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("mixed artinian rings")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ArtinElem(self.ring, tuple(
            (a + b) % m for a, b, m in zip(self.coords, o.coords, self.ring.moduli)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ArtinElem(self.ring, tuple(
            (a - b) % m for a, b, m in zip(self.coords, o.coords, self.ring.moduli)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return ArtinElem(self.ring, tuple(
            -a % m for a, m in zip(self.coords, self.ring.moduli)))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ring = self.ring
        acc = [0] * ring.rank
        for i, xi in enumerate(self.coords):
            if xi:
                for j, yj in enumerate(o.coords):
                    if yj:
                        row = ring.table[i][j]
                        f = xi * yj
                        for k, ck in enumerate(row):
                            if ck:
                                acc[k] += f * ck
        return ArtinElem(ring, tuple(a % m for a, m in zip(acc, ring.moduli)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"art{self.coords}"


class ArtinLocalRing:
    """See module docstring; construct via the factory functions below."""

    def __init__(self, name, ell, moduli, table, residue_field,
                 residue_basis, section_basis, maximal_ideal_gens):
        self.name = name
        self.ell = ell
        self.moduli = tuple(moduli)
        self.rank = len(moduli)
        self.table = tuple(tuple(tuple(row) for row in line) for line in table)
        self.residue_field = residue_field
        self._residue_basis = tuple(residue_basis)   # FFElem per basis vector
        self._section_basis = tuple(section_basis)   # coord tuple per field basis vector
        self.size = 1
        for m in moduli:
            self.size *= m
        self.maximal_ideal_gens = tuple(
            ArtinElem(self, tuple(g)) for g in maximal_ideal_gens)
        self.char = ell  # characteristic of the residue field
        self._verify()

    # -- ring protocol -------------------------------------------------------

    def zero(self):
        return ArtinElem(self, (0,) * self.rank)

    def one(self):
        return ArtinElem(self, (1,) + (0,) * (self.rank - 1))

    def from_int(self, k: int):
        return ArtinElem(self, (k % self.moduli[0],) + (0,) * (self.rank - 1))

    def is_unit(self, x: ArtinElem) -> bool:
        return bool(self.residue(x))

    def inv(self, x: ArtinElem) -> ArtinElem:
        if not self.is_unit(x):
            raise NonUnitError(f"{x} lies in the maximal ideal of {self.name}")
        y = self.section(self.residue_field.inv(self.residue(x)))
        r = self.one() - x * y
        acc, term = self.one(), r
        while term:
            acc = acc + term
            term = term * r
        return y * acc

    # -- residue field -------------------------------------------------------

    def residue(self, x: ArtinElem) -> FFElem:
        acc = self.residue_field.zero()
        for c, rb in zip(x.coords, self._residue_basis):
            if c % self.ell:
                acc = acc + self.residue_field.from_int(c) * rb
        return acc

    def section(self, v: FFElem) -> ArtinElem:
        acc = self.zero()
        for c, sb in zip(v.coeffs, self._section_basis):
            if c:
                acc = acc + ArtinElem(self, tuple(x * c % m for x, m in
                                                  zip(sb, self.moduli)))
        return acc

    def in_maximal_ideal(self, x: ArtinElem) -> bool:
        return not self.residue(x)

    # -- enumeration ---------------------------------------------------------

    def elements(self):
        return [ArtinElem(self, c) for c in product(*[range(m) for m in self.moduli])]

    def maximal_ideal_elements(self):
        return [x for x in self.elements() if self.in_maximal_ideal(x)]

    # -- construction-time certification --------------------------------------

    def _verify(self):
        one = self.one()
        basis = [ArtinElem(self, tuple(1 if k == i else 0 for k in range(self.rank)))
                 for i in range(self.rank)]
        for i, bi in enumerate(basis):
            assert one * bi == bi, "1 must be the first basis vector"
            for j, bj in enumerate(basis):
                assert bi * bj == bj * bi, "non-commutative table"
                # products respect the per-coordinate moduli
                prod_ij = bi * bj
                for k, ck in enumerate(prod_ij.coords):
                    if ck:
                        need = valuation(self.moduli[k], self.ell)
                        have = (valuation(self.moduli[i], self.ell)
                                + (valuation(ck, self.ell) if ck else 0))
                        assert need <= have or self.moduli[i] == self.moduli[k], \
                            "annihilator-incompatible structure constants"
                for bk in basis:
                    assert (bi * bj) * bk == bi * (bj * bk), "non-associative table"
        # residue map is a ring homomorphism onto the residue field
        for bi in basis:
            for bj in basis:
                assert self.residue(bi * bj) == self.residue(bi) * self.residue(bj)
        for v in _field_basis(self.residue_field):
            assert self.residue(self.section(v)) == v, "section is not a section"
        # locality, exhaustively: maximal ideal = non-units = nilpotents
        mx = self.maximal_ideal_elements()
        for x in mx:
            y, k = x, 1
            while y and k <= self.size:
                y = y * x
                k += 1
            assert not y, "maximal ideal contains a non-nilpotent"
        # m is generated by the designated generators
        span = _ideal_span(self, self.maximal_ideal_gens)
        assert span == set(m.coords for m in mx), "wrong maximal ideal generators"
        self.nilpotency_index = self._nilpotency(mx)

    def _nilpotency(self, mx) -> int:
        current = set(m.coords for m in mx)
        k = 1
        while current != {self.zero().coords}:
            nxt = _additive_span(
                self, [ArtinElem(self, a) * b for a in current for b in mx])
            if nxt == current:
                raise AssertionError("maximal ideal is not nilpotent")
            current = nxt
            k += 1
            if k > self.size + 1:
                raise AssertionError("nilpotency search runaway")
        return k

    def __eq__(self, other):
        return (isinstance(other, ArtinLocalRing) and other.name == self.name
                and other.moduli == self.moduli and other.table == self.table)

    def __hash__(self):
        return hash(("ArtinLocalRing", self.name, self.moduli))

    def __repr__(self):
        return self.name


def _field_basis(field):
    out = []
    for i in range(field.e):
        out.append(FFElem(field, tuple(1 if k == i else 0 for k in range(field.e))))
    return out


def _additive_span(ring, gens):
    span = {ring.zero().coords}
    frontier = [ring.zero()]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x + g
            if y.coords not in span:
                span.add(y.coords)
                frontier.append(y)
    return span


def _ideal_span(ring, gens):
    elems = ring.elements()
    prods = [g * e for g in gens for e in elems]
    return _additive_span(ring, prods)


# -- constructors ------------------------------------------------------------


@lru_cache(maxsize=None)
def zl_mod(ell: int, a: int) -> ArtinLocalRing:
    """Z/ell^a."""
    return ArtinLocalRing(
        name=f"Z/{ell}^{a}", ell=ell, moduli=(ell ** a,),
        table=[[(1,)]], residue_field=GF(ell, 1),
        residue_basis=[GF(ell, 1).one()], section_basis=[(1,)],
        maximal_ideal_gens=[(ell % ell ** a,)])


@lru_cache(maxsize=None)
def unramified(ell: int, a: int, e: int) -> ArtinLocalRing:
    """W(F_{ell^e})/ell^a, i.e. Z/ell^a[x]/(lift of the F_{ell^e} polynomial)."""
    if e == 1:
        return zl_mod(ell, a)
    field = GF(ell, e)
    mod = ell ** a
    defn = list(field.defining) + [1]  # integer lift, monic degree e

    def reduce_x(vec):
        vec = list(vec)
        for i in range(len(vec) - 1, e - 1, -1):
            c = vec[i]
            if c:
                vec[i] = 0
                for j in range(e):
                    vec[i - e + j] = (vec[i - e + j] - c * defn[j]) % mod
        return tuple(v % mod for v in vec[:e])

    table = []
    for i in range(e):
        line = []
        for j in range(e):
            raw = [0] * (i + j + 1)
            raw[i + j] = 1
            line.append(reduce_x(raw))
        table.append(line)
    gen_pows = [field.gen() ** i for i in range(e)]
    section_basis = [tuple(1 if k == i else 0 for k in range(e)) for i in range(e)]
    return ArtinLocalRing(
        name=f"W(F{ell ** e})/{ell}^{a}", ell=ell, moduli=(mod,) * e,
        table=table, residue_field=field, residue_basis=gen_pows,
        section_basis=section_basis,
        maximal_ideal_gens=[(ell % mod,) + (0,) * (e - 1)])


@lru_cache(maxsize=None)
def fl_t(ell: int, e: int, b: int) -> ArtinLocalRing:
    """F_{ell^e}[t]/(t^b); b = 1 gives the field itself as an artinian ring."""
    field = GF(ell, e)
    rank = e * b
    # basis index j*e + i  <->  x^i t^j
    table = []
    for idx1 in range(rank):
        i1, j1 = idx1 % e, idx1 // e
        line = []
        for idx2 in range(rank):
            i2, j2 = idx2 % e, idx2 // e
            out = [0] * rank
            if j1 + j2 < b:
                prod = (field.gen() ** (i1 + i2)).coeffs
                for i, c in enumerate(prod):
                    out[(j1 + j2) * e + i] = c
            line.append(tuple(out))
        table.append(line)
    residue_basis = [(field.gen() ** (idx % e)) if idx < e else field.zero()
                     for idx in range(rank)]
    section_basis = [tuple(1 if k == i else 0 for k in range(rank))
                     for i in range(e)]
    mgens = []
    if b > 1:
        t = [0] * rank
        t[e] = 1
        mgens.append(tuple(t))
    return ArtinLocalRing(
        name=f"F{ell ** e}[t]/t^{b}", ell=ell, moduli=(ell,) * rank,
        table=table, residue_field=field, residue_basis=residue_basis,
        section_basis=section_basis, maximal_ideal_gens=mgens)


@lru_cache(maxsize=None)
def zl_t(ell: int, a: int, b: int) -> ArtinLocalRing:
    """Z/ell^a[t]/(t^b, ell^(a-1) t)."""
    assert a >= 2 and b >= 2, "degenerate parameters; use zl_mod or fl_t"
    rank = b
    moduli = (ell ** a,) + (ell ** (a - 1),) * (b - 1)
    table = []
    for i in range(b):
        line = []
        for j in range(b):
            out = [0] * rank
            if i + j < b:
                out[i + j] = 1
            line.append(tuple(out))
        table.append(line)
    field = GF(ell, 1)
    residue_basis = [field.one()] + [field.zero()] * (b - 1)
    return ArtinLocalRing(
        name=f"Z/{ell}^{a}[t]/(t^{b},{ell}^{a - 1}t)", ell=ell, moduli=moduli,
        table=table, residue_field=field, residue_basis=residue_basis,
        section_basis=[(1,) + (0,) * (b - 1)],
        maximal_ideal_gens=[(ell, ) + (0,) * (b - 1), (0, 1) + (0,) * (b - 2)])


def residue_matrix(ring: ArtinLocalRing, M):
    """Entrywise residue of a matrix over `ring`."""
    return M.map(ring.residue_field, ring.residue)


def section_matrix(ring: ArtinLocalRing, Mbar):
    """Entrywise section of a matrix over the residue field."""
    return Mbar.map(ring, ring.section)
