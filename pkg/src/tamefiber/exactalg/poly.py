"""Dense univariate polynomials over a workbench ring, and Hensel lifting.

Division is only ever by monic polynomials, which is exact over any
commutative ring.  ``hensel_factor_lift`` lifts a pairwise-coprime monic
factorization from the residue field of an artinian local ring, one power
of the maximal ideal at a time; the fixed Bezout pair suffices because the
high-degree defect is forced to vanish by a degree count.
"""

from __future__ import annotations

from ..errors import CoprimalityError


class Poly:
    """Coefficients low-degree first; trailing zeros stripped."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        coeffs = list(coeffs)
        zero = ring.zero()
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @staticmethod
    def const(ring, c) -> "Poly":
        return Poly(ring, [c])

    @staticmethod
    def x(ring) -> "Poly":
        return Poly(ring, [ring.zero(), ring.one()])

    @staticmethod
    def from_int_coeffs(ring, ints) -> "Poly":
        return Poly(ring, [ring.from_int(c) for c in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # degree of 0 is -1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one()

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero()

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return Poly(self.ring, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not self or not other:
            return Poly(self.ring, [])
        zero = self.ring.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a != zero:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.ring, out)

    def scale(self, c) -> "Poly":
        return Poly(self.ring, [c * a for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        return Poly(self.ring, [self.ring.zero()] * k + list(self.coeffs))

    def divmod_monic(self, divisor: "Poly"):
        """Exact division with remainder by a monic divisor."""
        assert divisor.is_monic(), "division only by monic polynomials"
        zero = self.ring.zero()
        rem = list(self.coeffs)
        d = divisor.degree
        out = [zero] * max(0, len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c != zero:
                out[i - d] = c
                for j in range(d + 1):
                    rem[i - d + j] = rem[i - d + j] - c * divisor.coeffs[j]
        return Poly(self.ring, out), Poly(self.ring, rem[:d])

    def mod(self, divisor: "Poly") -> "Poly":
        return self.divmod_monic(divisor)[1]

    def eval(self, x):
        """Horner evaluation at a ring element."""
        acc = self.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, M):
        """Evaluate at a square matrix over the same ring."""
        from .matrix import Mat
        n = M.nrows
        acc = Mat.zero(self.ring, n, n)
        ident = Mat.identity(self.ring, n)
        for c in reversed(self.coeffs):
            acc = acc * M + ident.scale(c)
        return acc

    def map_coeffs(self, ring, fn) -> "Poly":
        return Poly(ring, [fn(c) for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(self.ring, [self.ring.from_int(i) * c
                                for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        """Divide by the leading coefficient (fields only)."""
        if not self:
            return self
        return self.scale(self.ring.inv(self.coeffs[-1]))

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a field."""
    while b:
        a, b = b, a.mod(b.monic())
    return a.monic() if a else a


def poly_xgcd(a: Poly, b: Poly):
    """(g, u, v) with u*a + v*b = g monic, over a field."""
    ring = a.ring
    r0, r1 = a, b
    s0, s1 = Poly.const(ring, ring.one()), Poly(ring, [])
    t0, t1 = Poly(ring, []), Poly.const(ring, ring.one())
    while r1:
        lead = r1.coeffs[-1]
        inv_lead = ring.inv(lead)
        q, r = r0.divmod_monic(r1.scale(inv_lead))
        q = q.scale(inv_lead)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.coeffs[-1]
    inv_lead = ring.inv(lead)
    return r0.scale(inv_lead), s0.scale(inv_lead), t0.scale(inv_lead)


def roots_in_field(f: Poly, field) -> list:
    """All roots of f in the given finite field, by exhaustive scan."""
    zero = field.zero()
    return [x for x in field.elements() if f.eval(x) == zero]


def _hensel_pair(P: Poly, f0: Poly, g0: Poly, a: Poly, b: Poly, max_steps: int):
    """Lift P = f*g from a residue factorization with Bezout pair (a, b)."""
    ring = P.ring
    f, g = f0, g0
    for _ in range(max_steps):
        e = P - f * g
        if not e:
            return f, g
        df = (b * e).mod(f)
        dg = (a * e).mod(g)
        f = f + df
        g = g + dg
    e = P - f * g
    if e:
        raise ArithmeticError("Hensel iteration failed to converge")
    return f, g


def hensel_factor_lift(P: Poly, residue_factors) -> list:
    """Lift a pairwise-coprime monic factorization of the residue of P.

    P is monic over an ArtinLocalRing A; residue_factors are monic over the
    residue field, pairwise coprime, with product the residue of P.  Returns
    monic polynomials over A, reducing to the given factors, with product
    exactly P; the factorization with these properties is unique.
    """
    ring = P.ring
    kfield = ring.residue_field
    if not P.is_monic():
        raise ValueError("P must be monic")
    for i in range(len(residue_factors)):
        for j in range(i + 1, len(residue_factors)):
            g = poly_gcd(residue_factors[i], residue_factors[j])
            if g.degree != 0:
                raise CoprimalityError(
                    f"residue factors {i} and {j} share a common factor")
    prod = Poly.const(kfield, kfield.one())
    for fbar in residue_factors:
        if not fbar.is_monic():
            raise ValueError("residue factors must be monic")
        prod = prod * fbar
    if prod != P.map_coeffs(kfield, ring.residue):
        raise ValueError("residue factors do not multiply to the residue of P")

    max_steps = ring.nilpotency_index + 1
    factors = []
    rest = P
    todo = list(residue_factors)
    while len(todo) > 1:
        fbar = todo[0]
        gbar = todo[1]
        for extra in todo[2:]:
            gbar = gbar * extra
        gcd_, u, v = poly_xgcd(fbar, gbar)
        assert gcd_.degree == 0
        f0 = fbar.map_coeffs(ring, ring.section)
        g0 = gbar.map_coeffs(ring, ring.section)
        a = u.map_coeffs(ring, ring.section)
        b = v.map_coeffs(ring, ring.section)
        f, g = _hensel_pair(rest, f0, g0, a, b, max_steps)
        factors.append(f)
        rest = g
        todo = todo[1:]
    factors.append(rest)
    # postcondition: exact product and correct residues
    check = Poly.const(ring, ring.one())
    for f in factors:
        check = check * f
    assert check == P, "hensel product mismatch"
    for f, fbar in zip(factors, residue_factors):
        assert f.map_coeffs(kfield, ring.residue) == fbar
    return factors
