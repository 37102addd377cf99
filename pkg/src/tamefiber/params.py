"""Tame inertial parameters for products of general linear groups.

A parameter is a multiset of (Frobenius orbit of a prime-to-p root of
unity, Jordan partition).  Roots of unity are encoded as exact fractions
j/m in Q/Z with respect to a chosen topological generator of inertia; the
q-power map is multiplication by q.  The residue side reuses the same
encoding with m additionally coprime to ell, so Teichmueller lifting is the
identity on labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from .errors import ExhaustionError, NonUnitError, PreconditionError
from .exactalg import GF, Mat, diag, embed, jordan_block, prime_power, valuation
from .exactalg.finitefield import FiniteField
from .symquot import partitions_of, rank as bqn_rank

LeviShape = tuple  # composition of n


# ---------------------------------------------------------------------------
# Frobenius orbits of root-of-unity labels

def normalize_label(label: Fraction) -> Fraction:
    return Fraction(label) % 1


@dataclass(frozen=True, order=True)
class FrobOrbit:
    """The q-power orbit {j q^i / m} of the label j/m; rep is minimal j."""

    m: int
    elements: tuple  # sorted tuple of numerators j, gcd(j, m) = 1
    q: int

    @staticmethod
    def of_label(label: Fraction, q: int) -> "FrobOrbit":
        lab = normalize_label(label)
        m = lab.denominator
        if gcd(q, m) != 1:
            raise PreconditionError(f"q={q} not invertible mod {m}")
        js = set()
        j = lab.numerator % m
        while j not in js:
            js.add(j)
            j = j * q % m
        return FrobOrbit(m, tuple(sorted(js)), q)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def rep(self) -> Fraction:
        return Fraction(self.elements[0], self.m) if self.m > 1 else Fraction(0)

    def labels(self) -> tuple:
        if self.m == 1:
            return (Fraction(0),)
        return tuple(Fraction(j, self.m) for j in self.elements)

    def text(self) -> str:
        return f"{self.m}/{self.elements[0]}"

    def __repr__(self):
        return f"[{self.text()}]x{self.size}"


def trivial_orbit(q: int) -> FrobOrbit:
    return FrobOrbit.of_label(Fraction(0), q)


# ---------------------------------------------------------------------------
# parameters

def _sort_key(orbit: FrobOrbit):
    return (orbit.m, orbit.elements)


@dataclass(frozen=True)
class SemisimpleParam:
    """Multiset of (orbit, multiplicity); rank = sum orbit.size * mult."""

    pairs: tuple  # sorted tuple of (FrobOrbit, int), orbits distinct
    q: int

    @staticmethod
    def make(pairs, q: int) -> "SemisimpleParam":
        merged: dict = {}
        for orbit, k in pairs:
            assert k >= 1
            merged[orbit] = merged.get(orbit, 0) + k
        out = tuple(sorted(merged.items(), key=lambda it: _sort_key(it[0])))
        return SemisimpleParam(out, q)

    @property
    def rank(self) -> int:
        return sum(o.size * k for o, k in self.pairs)

    def text(self) -> str:
        return ";".join(f"{o.text()}:{','.join(['1'] * k)}" for o, k in self.pairs)

    def __repr__(self):
        return f"ss<{self.text()}>"


@dataclass(frozen=True)
class InertialParam:
    """Multiset of (orbit, Jordan partition); distinct orbits."""

    pairs: tuple  # sorted tuple of (FrobOrbit, Partition)
    q: int

    @staticmethod
    def make(pairs, q: int) -> "InertialParam":
        merged: dict = {}
        for orbit, lam in pairs:
            lam = tuple(sorted(lam, reverse=True))
            assert lam and all(p >= 1 for p in lam)
            merged[orbit] = tuple(sorted(merged.get(orbit, ()) + lam, reverse=True))
        out = tuple(sorted(merged.items(), key=lambda it: _sort_key(it[0])))
        return InertialParam(out, q)

    @property
    def rank(self) -> int:
        return sum(o.size * sum(lam) for o, lam in self.pairs)

    def semisimple_part(self) -> SemisimpleParam:
        return SemisimpleParam.make(
            [(o, sum(lam)) for o, lam in self.pairs], self.q)

    def text(self) -> str:
        return ";".join(f"{o.text()}:{','.join(map(str, lam))}"
                        for o, lam in self.pairs)

    def __repr__(self):
        return f"tau<{self.text()}>"


def inflate_semisimple(s: SemisimpleParam) -> InertialParam:
    """The inertial parameter with trivial unipotent part."""
    return InertialParam.make([(o, (1,) * k) for o, k in s.pairs], s.q)


def atoms(tau: InertialParam) -> list:
    """(orbit, part) pairs, one per Jordan block, in canonical order."""
    out = []
    for orbit, lam in tau.pairs:
        for part in lam:
            out.append((orbit, part))
    out.sort(key=lambda a: (_sort_key(a[0]), -a[1]))
    return out


def is_discrete(tau: InertialParam) -> bool:
    """No factoring through a proper Levi: one orbit, one Jordan block."""
    return len(tau.pairs) == 1 and len(tau.pairs[0][1]) == 1


def levi_of(tau: InertialParam) -> LeviShape:
    """Minimal Levi through which tau factors discretely: one block of size
    orbit.size * part per Jordan block."""
    return tuple(orbit.size * part for orbit, part in atoms(tau))


def point_labels(s: SemisimpleParam) -> tuple:
    """The multiset of root-of-unity labels of s, sorted; a q-stable tuple."""
    labs = []
    for orbit, k in s.pairs:
        labs.extend(list(orbit.labels()) * k)
    return tuple(sorted(labs))


# ---------------------------------------------------------------------------
# enumeration

def _divisors(x: int) -> list:
    out = []
    d = 1
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            if d != x // d:
                out.append(x // d)
        d += 1
    return sorted(out)


@lru_cache(maxsize=None)
def all_orbits(n: int, q: int) -> tuple:
    """All q-power orbits of prime-to-p roots of unity of size <= n."""
    prime_power(q)  # validates q
    seen = {}
    for r in range(1, n + 1):
        for m in _divisors(q ** r - 1):
            for j in range(m):
                if gcd(j, m) == 1:
                    o = FrobOrbit.of_label(Fraction(j, m) if m > 1 else Fraction(0), q)
                    if o.size <= n:
                        seen[(o.m, o.elements)] = o
    return tuple(sorted(seen.values(), key=_sort_key))


@lru_cache(maxsize=None)
def enumerate_ss_params(n: int, q: int) -> tuple:
    """All semisimple parameters of rank n; count is q^(n-1)(q-1)."""
    if n > 6 or q > 16:
        raise PreconditionError("desk-scale guard: n <= 6 and q <= 16")
    orbits = all_orbits(n, q)
    out = []

    def rec(idx, remaining, acc):
        if remaining == 0:
            out.append(SemisimpleParam.make(list(acc), q))
            return
        if idx == len(orbits):
            return
        o = orbits[idx]
        rec(idx + 1, remaining, acc)
        for k in range(1, remaining // o.size + 1):
            rec(idx + 1, remaining - k * o.size, acc + [(o, k)])

    rec(0, n, [])
    out.sort(key=lambda s: s.text())
    assert len(out) == bqn_rank(q, n), "semisimple count != quotient-ring rank"
    return tuple(out)


def enumerate_inertial_params(n: int, q: int) -> tuple:
    """All inertial parameters of rank n (Jordan data over each orbit)."""
    result = []
    for s in enumerate_ss_params(n, q):
        choices = [partitions_of(k) for _, k in s.pairs]
        for lams in product(*choices):
            result.append(InertialParam.make(
                [(o, lam) for (o, _), lam in zip(s.pairs, lams)], q))
    result.sort(key=lambda t: t.text())
    return tuple(result)


# ---------------------------------------------------------------------------
# mod-ell reduction and fibers

def _ell_prime_part_label(label: Fraction, ell: int) -> Fraction:
    lab = normalize_label(label)
    m = lab.denominator
    v = 0
    mm = m
    while mm % ell == 0:
        mm //= ell
        v += 1
    if v == 0:
        return lab
    # strip the ell-part: g = g_ell * g_m', keep the prime-to-ell component
    alpha = pow(ell ** v, -1, mm) if mm > 1 else 0
    return Fraction(lab.numerator * alpha % mm, mm) if mm > 1 else Fraction(0)


def reduce_orbit_mod_ell(orbit: FrobOrbit, ell: int) -> FrobOrbit:
    return FrobOrbit.of_label(
        _ell_prime_part_label(orbit.rep if orbit.m > 1 else Fraction(0), ell),
        orbit.q)


def reduce_mod_ell(x, ell: int):
    """Strip the ell-part of every label, pointwise on the label multiset.

    An orbit of size r maps onto an orbit of size r' | r with each image
    label hit r/r' times, so multiplicities scale by r/r' (and partitions
    of colliding orbits are merged by multiset union; that merge is a
    labeling convention only).
    """
    p, _ = prime_power(x.q)
    if ell == p:
        raise PreconditionError("ell must differ from p")
    if isinstance(x, SemisimpleParam):
        out = []
        for o, k in x.pairs:
            red = reduce_orbit_mod_ell(o, ell)
            assert o.size % red.size == 0
            out.append((red, k * (o.size // red.size)))
        return SemisimpleParam.make(out, x.q)
    if isinstance(x, InertialParam):
        out = []
        for o, lam in x.pairs:
            red = reduce_orbit_mod_ell(o, ell)
            assert o.size % red.size == 0
            out.append((red, lam * (o.size // red.size)))
        return InertialParam.make(out, x.q)
    raise TypeError(type(x))


def fiber(s_bar: SemisimpleParam, n: int, q: int, ell: int) -> tuple:
    """All characteristic-zero semisimple parameters reducing to s_bar."""
    for orbit, _ in s_bar.pairs:
        if orbit.m % ell == 0:
            raise PreconditionError(
                "residue-side parameter has an ell-divisible label order")
    if s_bar.rank != n:
        raise PreconditionError("rank mismatch")
    return tuple(s for s in enumerate_ss_params(n, q)
                 if reduce_mod_ell(s, ell) == s_bar)


def min_large_f(n: int, q: int, ell: int) -> int:
    """Least f >= 1 with v_ell(q^f - 1) > v_ell(n!)."""
    if q % ell == 0:
        raise PreconditionError("ell divides q")
    nfact = 1
    for i in range(2, n + 1):
        nfact *= i
    target = valuation(nfact, ell) if nfact > 1 else 0
    f = 1
    while True:
        if (q ** f - 1) % ell == 0 and valuation(q ** f - 1, ell) > target:
            return f
        f += 1
        if f > 10 ** 6:
            raise AssertionError("runaway search for large-enough f")


# ---------------------------------------------------------------------------
# matrices attached to parameters over residue fields

def multiplicative_jordan(M: Mat):
    """(M_s, M_u): the prime-to-ell and ell-power parts of M (char ell)."""
    F: FiniteField = M.ring
    ell = F.p
    n = M.nrows
    ident = Mat.identity(F, n)
    order = 1
    acc = M
    while acc != ident:
        acc = acc * M
        order += 1
        if order > F.order ** n * n:
            raise PreconditionError("matrix is not invertible of finite order")
    v = valuation(order, ell) if order % ell == 0 else 0
    mprime = order // ell ** v
    if v == 0:
        return M, ident
    if mprime == 1:
        return ident, M
    alpha = pow(ell ** v, -1, mprime)
    ms = M ** (ell ** v * alpha)
    mu = M * ms.inv()
    return ms, mu


def matrix_order(M: Mat) -> int:
    F = M.ring
    ident = Mat.identity(F, M.nrows)
    order = 1
    acc = M
    while acc != ident:
        acc = acc * M
        order += 1
        if order > F.order ** M.nrows * M.nrows:
            raise PreconditionError("order search runaway")
    return order


def _kernel_dim(M: Mat) -> int:
    F = M.ring
    rows = [list(r) for r in M.rows]
    n = len(rows)
    rank_count = 0
    col = 0
    for var in range(n):
        piv = next((r for r in range(rank_count, n) if rows[r][var]), None)
        if piv is None:
            continue
        rows[rank_count], rows[piv] = rows[piv], rows[rank_count]
        inv = F.inv(rows[rank_count][var])
        rows[rank_count] = [inv * x for x in rows[rank_count]]
        for r in range(n):
            if r != rank_count and rows[r][var]:
                f = rows[r][var]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank_count])]
        rank_count += 1
    return n - rank_count


def label_of_field_element(x, F: FiniteField) -> Fraction:
    """The Q/Z label of a root of unity in F via the canonical generator."""
    m = F.element_order(x)
    k = F.dlog(x)
    return normalize_label(Fraction(k, F.order - 1))


def matrix_inertial_param(M: Mat, q: int) -> InertialParam:
    """The inertial parameter of an invertible matrix over a residue field.

    Labels are taken with respect to the canonical generator of the
    splitting field's multiplicative group; the p-coprimality of the order
    is asserted (tame inertia has pro-order prime to p).
    """
    F: FiniteField = M.ring
    p, _ = prime_power(q)
    if matrix_order(M) % p == 0:
        raise PreconditionError("matrix order divisible by p is not tame")
    ms, _ = multiplicative_jordan(M)
    m = matrix_order(ms)
    t = 1
    while (F.order ** t - 1) % m:
        t += 1
    big = GF(F.p, F.e * t)
    phi = embed(F, big)
    Mb = M.map(big, phi)
    cp = Mb.char_poly()
    eigs = sorted({x.int_value() for x in big.elements()
                   if not cp.eval(x) and x},)
    eig_elems = [big.from_int_value(v) for v in eigs]
    pairs = []
    seen = set()
    for x in eig_elems:
        if x.int_value() in seen:
            continue
        # q-power orbit of this eigenvalue
        orb = []
        y = x
        while y.int_value() not in seen:
            seen.add(y.int_value())
            orb.append(y)
            y = y ** q
        lam = _jordan_partition(Mb, orb[0])
        for other in orb[1:]:
            assert _jordan_partition(Mb, other) == lam, \
                "non-constant Jordan type along an orbit"
        orbit = FrobOrbit.of_label(label_of_field_element(orb[0], big), q)
        assert orbit.size == len(orb)
        pairs.append((orbit, lam))
    return InertialParam.make(pairs, q)


def _jordan_partition(M: Mat, eigenvalue) -> tuple:
    F = M.ring
    n = M.nrows
    shifted = M - Mat.identity(F, n).scale(eigenvalue)
    dims = [0]
    power = Mat.identity(F, n)
    while True:
        power = power * shifted
        d = _kernel_dim(power)
        if d == dims[-1]:
            break
        dims.append(d)
    # counts[k-1] = #{Jordan blocks of size >= k}; conjugate for block sizes
    counts = [dims[k] - dims[k - 1] for k in range(1, len(dims))]
    lam = []
    for size in range(1, len(counts) + 1):
        blocks_of_size = (counts[size - 1]
                          - (counts[size] if size < len(counts) else 0))
        lam.extend([size] * blocks_of_size)
    return tuple(sorted(lam, reverse=True))


# ---------------------------------------------------------------------------
# f-distinguished points

def is_f_distinguished(Sigma: Mat, Phi: Mat, f: int, shape: LeviShape,
                       q: int) -> bool:
    """Discrete per-block inertial type, and the semisimple part of Phi^f
    separates the blocks (pairwise coprime block characteristic
    polynomials, equivalently disjoint eigenvalues over a splitting field).
    """
    F = Sigma.ring
    if Phi * Sigma * Phi.inv() != Sigma ** q:
        raise PreconditionError("commutation relation violated")
    if not (Sigma.is_block_diagonal(shape) and Phi.is_block_diagonal(shape)):
        raise PreconditionError("matrices not block-preserving for the Levi")
    for block in Sigma.diagonal_blocks(shape):
        tau = matrix_inertial_param(block, q)
        if not is_discrete(tau):
            return False
    phis, _ = multiplicative_jordan(Phi ** f)
    char_polys = [b.char_poly() for b in phis.diagonal_blocks(shape)]
    from .exactalg.poly import poly_gcd
    for i in range(len(char_polys)):
        for j in range(i + 1, len(char_polys)):
            if poly_gcd(char_polys[i], char_polys[j]).degree != 0:
                return False
    return True


def _conjugator_between(C: Mat, D: Mat) -> Mat:
    """Some invertible F with F C F^(-1) = D, for similar regular matrices.

    Both are assumed cyclic (single Jordan block per eigenvalue); align the
    rational canonical bases of the first cyclic vectors found.
    """
    F = C.ring
    n = C.nrows

    def cyclic_basis(M: Mat) -> Mat:
        for v0 in range(F.order ** n):
            coords = []
            vv = v0
            for _ in range(n):
                coords.append(F.from_int_value(vv % F.order))
                vv //= F.order
            if not any(coords):
                continue
            cols = [tuple(coords)]
            cur = tuple(coords)
            for _ in range(n - 1):
                cur = M.apply(cur)
                cols.append(cur)
            B = Mat(F, list(zip(*cols)))
            if B.is_unit():
                return B
        raise PreconditionError("matrix is not cyclic")

    A = cyclic_basis(C)
    B = cyclic_basis(D)
    out = B * A.inv()
    assert out * C * out.inv() == D
    return out


def make_f_distinguished(tau_bar: InertialParam, f: int, ell: int, e: int):
    """Explicit matrices (Sigma, Phi) over F_{ell^e'} of inertial type
    tau_bar, f-distinguished with the Levi of tau_bar; deterministic search
    over central twists.  Returns (Sigma, Phi, shape, field).
    """
    p, _ = prime_power(tau_bar.q)
    if ell == p:
        raise PreconditionError("ell must differ from p")
    q = tau_bar.q
    blocks = atoms(tau_bar)
    shape = tuple(orbit.size * part for orbit, part in blocks)
    # field degree: all orbit orders must embed
    edeg = e
    for orbit, _ in blocks:
        if orbit.m > 1:
            t = 1
            while (ell ** t - 1) % orbit.m:
                t += 1
            edeg = edeg * t // gcd(edeg, t)
    F = GF(ell, edeg)

    sigma_blocks = []
    phi_base_blocks = []
    for orbit, part in blocks:
        r = orbit.size
        zeta = (F.root_of_unity(orbit.m) ** orbit.elements[0]
                if orbit.m > 1 else F.one())
        eigs = [zeta ** (q ** i % (orbit.m if orbit.m > 1 else 1))
                for i in range(r)]
        jords = [jordan_block(F, part, ev) for ev in eigs]
        sigma_blocks.append(Mat.block_diag(F, jords))
        if r == 1:
            psi = _conjugator_between(jords[0], jords[0] ** q)
            phi_base_blocks.append(psi)
        else:
            # Phi-block = cycle w times diag(Psi_1..Psi_r) with
            # Psi_i J(eig_i) Psi_i^(-1) = J(eig_{i-1})^q
            psis = []
            for i in range(r):
                target = jords[(i - 1) % r] ** q
                psis.append(_conjugator_between(jords[i], target))
            m = part
            zero = Mat.zero(F, m, m)
            grid = [[zero] * r for _ in range(r)]
            for i in range(r):
                grid[(i - 1) % r][i] = psis[i]
            rows = []
            for bi in range(r):
                for rr in range(m):
                    row = []
                    for bj in range(r):
                        row.extend(grid[bi][bj].rows[rr])
                    rows.append(row)
            phi_base_blocks.append(Mat(F, rows))
    Sigma = Mat.block_diag(F, sigma_blocks)

    units = [x for x in F.elements() if x]
    k = len(blocks)
    for twist in product(range(len(units)), repeat=k):
        # canonical order: generator exponents, identity twist first
        cs = [units[0] if t == 0 else F.generator() ** t for t in twist]
        Phi = Mat.block_diag(F, [b.scale(c) for b, c in
                                 zip(phi_base_blocks, cs)])
        if Phi * Sigma * Phi.inv() != Sigma ** q:
            continue
        if is_f_distinguished(Sigma, Phi, f, shape, q):
            # all eigenvalues lie in F, so the reconstructed labels are exact
            check = matrix_inertial_param(Sigma, q)
            assert check == tau_bar, \
                "constructed matrix has the wrong inertial type"
            return Sigma, Phi, shape, F
    raise ExhaustionError(
        f"no central twist over F_{ell}^{edeg} works; enlarge e")


def make_f_distinguished_auto(tau_bar: InertialParam, f: int, ell: int,
                              e: int = 1, max_e: int = 8):
    """make_f_distinguished with the residue degree enlarged on exhaustion."""
    while True:
        try:
            return make_f_distinguished(tau_bar, f, ell, e)
        except ExhaustionError:
            e += 1
            if e > max_e:
                raise
