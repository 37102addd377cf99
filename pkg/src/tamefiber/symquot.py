"""The q-fixed quotient of the ring of symmetric functions.

We work in Z[e_1, ..., e_n, e_n^(-1)] modulo the ideal generated by
q*e_i - e_i, where q*e_i is the polynomial with q*e_i(x) = e_i(x_1^q, ...,
x_n^q).  The quotient is free of rank q^(n-1)(q-1) with monomial basis
e_1^{a_1}...e_n^{a_n}, 0 <= a_j <= q-1 for j < n and 0 <= a_n <= q-2.

The rewriting normal form follows the module-generation argument: q*e_i is
the monomial symmetric function of type (q repeated i times), whose
expansion in the e-basis starts with e_i^q plus dominance-larger terms, so
e_i^q can be replaced by e_i minus those terms; the Laurent generator
e_n^(q-1) - 1 normalizes the last exponent.  Transition-matrix entries are
counts of 0-1 matrices with prescribed row and column sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from .errors import NonUnitError

Partition = tuple  # weakly decreasing tuple of positive ints


# ---------------------------------------------------------------------------
# partitions

def partitions_of(d: int, max_part: int | None = None, max_len: int | None = None):
    """All partitions of d with the given bounds, in lex-descending order."""
    out: list[Partition] = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if max_len is not None and len(prefix) >= max_len:
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(d, d if max_part is None else min(d, max_part), [])
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def dominates(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in dominance order (both partitions of the same weight)."""
    assert sum(lam) == sum(mu)
    acc_l = acc_m = 0
    for i in range(max(len(lam), len(mu))):
        acc_l += lam[i] if i < len(lam) else 0
        acc_m += mu[i] if i < len(mu) else 0
        if acc_l < acc_m:
            return False
    return True


def exponent_vector(lam: Partition, n: int) -> tuple:
    """(a_1, ..., a_n) with a_j the multiplicity of j in lam; parts must be <= n."""
    a = [0] * n
    for p in lam:
        assert 1 <= p <= n, "part exceeds variable count"
        a[p - 1] += 1
    return tuple(a)


def partition_of_vector(a) -> Partition:
    lam = []
    for j in range(len(a), 0, -1):
        lam.extend([j] * a[j - 1])
    return tuple(lam)


def monomial_weight(a) -> int:
    return sum((j + 1) * aj for j, aj in enumerate(a))


# ---------------------------------------------------------------------------
# transition matrix: e_mu = sum_lam T(mu, lam) m_lam

@lru_cache(maxsize=None)
def _zero_one_matrix_count(rows: tuple, cols: tuple) -> int:
    """Number of 0-1 matrices with row sums `rows` and column sums `cols`.

    `cols` is kept sorted; the count only depends on the multiset.
    """
    if not rows:
        return 1 if not any(cols) else 0
    r0 = rows[0]
    cols = tuple(sorted((c for c in cols if c > 0), reverse=True))
    if r0 > len(cols):
        return 0
    # group equal column sums, choose how many 1s go into each group
    groups: list[tuple[int, int]] = []
    for c in cols:
        if groups and groups[-1][0] == c:
            groups[-1] = (c, groups[-1][1] + 1)
        else:
            groups.append((c, 1))
    total = 0
    for pick in _compositions(r0, [g[1] for g in groups]):
        ways = 1
        new_cols = []
        for (val, cnt), k in zip(groups, pick):
            ways *= comb(cnt, k)
            new_cols.extend([val - 1] * k)
            new_cols.extend([val] * (cnt - k))
        total += ways * _zero_one_matrix_count(rows[1:], tuple(sorted(new_cols, reverse=True)))
    return total


def _compositions(total: int, caps: list):
    """All ways to write total = sum k_i with 0 <= k_i <= caps[i]."""
    if not caps:
        if total == 0:
            yield ()
        return
    for k in range(min(total, caps[0]), -1, -1):
        for rest in _compositions(total - k, caps[1:]):
            yield (k,) + rest


@lru_cache(maxsize=None)
def e_to_m_transition(d: int, n: int):
    """(rows, cols, T): e_mu = sum_lam T[i][j] m_lam in n variables.

    rows: partitions of d with parts <= n (indexing e_mu);
    cols: partitions of d with at most n parts (indexing m_lam).
    T is unitriangular against conjugate partitions in dominance order.
    """
    rows = partitions_of(d, max_part=n)
    cols = partitions_of(d, max_len=n)
    T = [[_zero_one_matrix_count(mu, lam) for lam in cols] for mu in rows]
    for i, mu in enumerate(rows):
        muc = conjugate(mu)
        j = cols.index(muc)
        assert T[i][j] == 1, "transition not unitriangular"
        for jj, lam in enumerate(cols):
            if T[i][jj] and lam != muc:
                assert dominates(muc, lam), "entry outside dominance triangle"
    return rows, cols, tuple(tuple(r) for r in T)


@lru_cache(maxsize=None)
def m_in_e_basis(lam0: Partition, n: int) -> dict:
    """Coefficients c_mu with m_{lam0} = sum_mu c_mu e_mu, in n variables."""
    d = sum(lam0)
    rows, cols, T = e_to_m_transition(d, n)
    j0 = cols.index(lam0)
    # solve T^t c = delta_{lam0} over Q, then certify integrality
    nrows = len(rows)
    aug = [[Fraction(T[i][j]) for i in range(nrows)] + [Fraction(1 if j == j0 else 0)]
           for j in range(len(cols))]
    col = 0
    pivots = []
    for var in range(nrows):
        piv = next((r for r in range(col, len(aug)) if aug[r][var]), None)
        if piv is None:
            continue
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][var]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(len(aug)):
            if r != col and aug[r][var]:
                f = aug[r][var]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        pivots.append(var)
        col += 1
    solution = {}
    for row_idx, var in enumerate(pivots):
        val = aug[row_idx][nrows]
        if val:
            assert val.denominator == 1, "non-integral transition solve"
            solution[rows[var]] = int(val)
    # consistency: remaining equations must be satisfied
    for r in range(len(pivots), len(aug)):
        assert not aug[r][nrows], "inconsistent transition solve"
    return solution


# ---------------------------------------------------------------------------
# polynomials in the e-generators

@dataclass(frozen=True)
class SymPolynomialE:
    """Integer-coefficient polynomial in e_1..e_n with e_n inverted.

    terms: mapping exponent vector (a_1, ..., a_n) -> nonzero int; a_n may
    be negative (Laurent), a_1..a_{n-1} are nonnegative.
    """

    q: int
    n: int
    terms: tuple  # sorted tuple of (evec, coeff)

    @staticmethod
    def make(q: int, n: int, mapping: dict) -> "SymPolynomialE":
        clean = {tuple(k): int(v) for k, v in mapping.items() if v}
        for k in clean:
            assert len(k) == n and all(a >= 0 for a in k[:-1])
        return SymPolynomialE(q, n, tuple(sorted(clean.items())))

    @staticmethod
    def zero(q: int, n: int) -> "SymPolynomialE":
        return SymPolynomialE.make(q, n, {})

    @staticmethod
    def one(q: int, n: int) -> "SymPolynomialE":
        return SymPolynomialE.make(q, n, {(0,) * n: 1})

    @staticmethod
    def e(q: int, n: int, i: int) -> "SymPolynomialE":
        assert 1 <= i <= n
        ev = tuple(1 if j == i - 1 else 0 for j in range(n))
        return SymPolynomialE.make(q, n, {ev: 1})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def _binop(self, other, fn):
        assert (self.q, self.n) == (other.q, other.n)
        out = self.as_dict()
        for k, v in other.terms:
            out[k] = fn(out.get(k, 0), v)
        return SymPolynomialE.make(self.q, self.n, out)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return SymPolynomialE.make(self.q, self.n,
                                   {k: -v for k, v in self.terms})

    def scale(self, c: int) -> "SymPolynomialE":
        return SymPolynomialE.make(self.q, self.n,
                                   {k: c * v for k, v in self.terms})

    def __mul__(self, other):
        assert (self.q, self.n) == (other.q, other.n)
        out: dict = {}
        for k1, v1 in self.terms:
            for k2, v2 in other.terms:
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return SymPolynomialE.make(self.q, self.n, out)

    def __bool__(self):
        return bool(self.terms)

    def is_canonical(self) -> bool:
        q, n = self.q, self.n
        for ev, _ in self.terms:
            if any(a > q - 1 for a in ev[:-1]):
                return False
            if not (0 <= ev[-1] <= q - 2):
                return False
        return True

    def __repr__(self):
        return f"SymE(q={self.q},n={self.n},{dict(self.terms)})"


@lru_cache(maxsize=None)
def q_power_image(i: int, q: int, n: int) -> SymPolynomialE:
    """q*e_i as a polynomial in the e-generators: the expansion of the
    monomial symmetric function of type (q^i)."""
    lam0 = (q,) * i
    coeffs = m_in_e_basis(lam0, n)
    return SymPolynomialE.make(
        q, n, {exponent_vector(mu, n): c for mu, c in coeffs.items()})


@lru_cache(maxsize=None)
def rewrite_rule(i: int, q: int, n: int) -> SymPolynomialE:
    """Replacement polynomial for e_i^q, valid modulo the fixed-point ideal.

    e_i^q = q*e_i - (dominance-larger e-terms) = e_i - (those terms) mod I.
    """
    assert 1 <= i <= n and q >= 2
    img = q_power_image(i, q, n).as_dict()
    ev_iq = exponent_vector((i,) * q, n)
    assert img.get(ev_iq) == 1, "leading coefficient must be 1"
    del img[ev_iq]
    lam_iq = (i,) * q
    for ev in img:
        lam = partition_of_vector(ev)
        assert lam != lam_iq and dominates(lam, lam_iq), \
            "rewrite terms must be strictly dominance-larger"
    out = {ev: -c for ev, c in img.items()}
    ev_i = exponent_vector((i,), n)
    out[ev_i] = out.get(ev_i, 0) + 1
    return SymPolynomialE.make(q, n, out)


def ideal_generators(q: int, n: int) -> list:
    """The generators q*e_i - e_i of the fixed-point ideal, i = 1..n."""
    return [q_power_image(i, q, n) - SymPolynomialE.e(q, n, i)
            for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# normal form

def _laurent_normalize(ev: tuple, q: int) -> tuple:
    """Bring the last exponent into [0, q-2] using e_n^(q-1) = 1."""
    an = ev[-1] % (q - 1) if q > 2 else 0
    return ev[:-1] + (an,)


def _rewrite_key(ev: tuple):
    lam = partition_of_vector(ev)
    return (monomial_weight(ev), lam)


def normal_form(x: SymPolynomialE) -> SymPolynomialE:
    """The canonical representative of x modulo the fixed-point ideal.

    Monomials are rewritten maximal-first in (weight, partition-lex) order;
    each step either lowers weight or moves strictly up in dominance at
    fixed weight, so the loop terminates.
    """
    q, n = x.q, x.n
    work: dict = {}
    for ev, c in x.terms:
        k = _laurent_normalize(ev, q)
        work[k] = work.get(k, 0) + c
    while True:
        bad = [ev for ev, c in work.items()
               if c and any(a > q - 1 for a in ev[:-1])]
        if not bad:
            break
        ev = max(bad, key=_rewrite_key)
        c = work.pop(ev)
        j = max(idx for idx in range(n - 1) if ev[idx] > q - 1) + 1
        rest = list(ev)
        rest[j - 1] -= q
        rule = rewrite_rule(j, q, n)
        for rk, rv in rule.terms:
            k = tuple(a + b for a, b in zip(rest, rk))
            k = _laurent_normalize(k, q)
            work[k] = work.get(k, 0) + c * rv
    return SymPolynomialE.make(q, n, work)


@lru_cache(maxsize=None)
def basis(q: int, n: int) -> tuple:
    """All canonical monomials, lexicographically ordered exponent vectors."""
    assert q >= 2 and n >= 1
    ranges = [range(q)] * (n - 1) + [range(q - 1)]
    return tuple(sorted(product(*ranges)))


def rank(q: int, n: int) -> int:
    return len(basis(q, n))


# ---------------------------------------------------------------------------
# evaluation

def elementary_symmetric_values(ring, values) -> list:
    """[e_1, ..., e_n] of the given ring elements, by iterated expansion."""
    coeffs = [ring.one()]
    for z in values:
        nxt = [ring.zero()] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] = nxt[i] + c
            nxt[i + 1] = nxt[i + 1] + c * z
        coeffs = nxt
    return coeffs[1:]


def evaluate(x: SymPolynomialE, values, ring):
    """Substitute e_i by the elementary symmetric values of `values`.

    Entries must be units (e_n is inverted in the ring being modelled).
    """
    for z in values:
        if not ring.is_unit(z):
            raise NonUnitError("evaluation point entry is not invertible")
    es = elementary_symmetric_values(ring, values)
    en_inv = None
    acc = ring.zero()
    for ev, c in x.terms:
        term = ring.from_int(c)
        for idx, a in enumerate(ev):
            if a > 0:
                term = term * es[idx] ** a
            elif a < 0:
                if en_inv is None:
                    en_inv = ring.inv(es[-1])
                term = term * en_inv ** (-a)
        acc = acc + term
    return acc


def evaluate_basis_monomial(ev: tuple, es: list, ring):
    term = ring.one()
    for idx, a in enumerate(ev):
        if a:
            term = term * es[idx] ** a
    return term


# ---------------------------------------------------------------------------
# pairing-matrix nonsingularity certificate

def _first_primitive_root(p: int) -> int:
    order = p - 1
    factors = set()
    m = order
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors.add(d)
            m //= d
        d += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, order // f, p) != 1 for f in factors):
            return g
    raise AssertionError("no primitive root found")


def pairing_matrix_mod_p(q: int, n: int, points: list, prime: int) -> list:
    """Evaluation matrix basis x points, specialized into F_prime.

    Each point is a tuple of root-of-unity labels (Fractions j/m); the
    specialization sends zeta_M to an element of exact order M in F_prime,
    which is a ring map on the cyclotomic integers.
    """
    from math import lcm
    M = 1
    for pt in points:
        for lab in pt:
            M = lcm(M, Fraction(lab).denominator)
    assert (prime - 1) % M == 0, "prime must be 1 mod the common conductor"
    zeta = pow(_first_primitive_root(prime), (prime - 1) // M, prime)
    cols = []
    for pt in points:
        vals = [pow(zeta, int(Fraction(lab) % 1 * M), prime) for lab in pt]
        es = [1]
        for z in vals:
            nxt = [0] * (len(es) + 1)
            for i, c in enumerate(es):
                nxt[i] = (nxt[i] + c) % prime
                nxt[i + 1] = (nxt[i + 1] + c * z) % prime
            es = nxt
        cols.append(es[1:])
    mons = basis(q, n)
    mat = []
    for ev in mons:
        row = []
        for es in cols:
            v = 1
            for idx, a in enumerate(ev):
                if a:
                    v = v * pow(es[idx], a, prime) % prime
            row.append(v)
        mat.append(row)
    return mat


def _det_mod_p(mat: list, p: int) -> int:
    m = [row[:] for row in mat]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        inv = pow(m[col][col], -1, p)
        det = det * m[col][col] % p
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[col])]
    return det % p


def pairing_nonsingular(q: int, n: int, points: list) -> bool:
    """Certify that the basis x q-stable-points evaluation matrix is
    nonsingular over the cyclotomic field.

    A nonzero determinant after specializing the roots of unity into a
    prime field F_P with P = 1 mod every conductor is a proof (the
    specialization is a ring homomorphism on cyclotomic integers).  Several
    primes are tried; all vanishing would report a genuine singularity.
    """
    from math import lcm
    if len(points) != rank(q, n):
        return False
    M = 1
    for pt in points:
        for lab in pt:
            M = lcm(M, Fraction(lab).denominator)
    prime = 1
    tried = 0
    while tried < 5:
        while True:
            prime += M
            p = prime
            if p > 2 and all(p % d for d in range(2, int(p ** 0.5) + 1)):
                break
        mat = pairing_matrix_mod_p(q, n, points, p)
        if _det_mod_p(mat, p) != 0:
            return True
        tried += 1
    return False


# ---------------------------------------------------------------------------
# textual serialization

def to_text(x: SymPolynomialE) -> str:
    recs = [",".join(str(a) for a in ev) + ":" + str(c) for ev, c in x.terms]
    return ";".join(recs)


def from_text(q: int, n: int, text: str) -> SymPolynomialE:
    out = {}
    if text:
        for rec in text.split(";"):
            evs, c = rec.split(":")
            ev = tuple(int(a) for a in evs.split(","))
            out[ev] = int(c)
    return SymPolynomialE.make(q, n, out)
