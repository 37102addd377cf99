"""Constructive deformation theory over artinian test rings.

A point is a pair (Sigma, Phi) of invertible matrices over a finite local
ring with Phi Sigma Phi^(-1) = Sigma^q.  The module provides exhaustive
point enumeration over small rings, the characteristic-polynomial map to
the q-fixed base, Hensel block diagonalization, the companion normalization
and column-recursion reconstruction at regular-unipotent points, the
degree-d restriction equivalence, and finite-level formal-smoothness
probes along square-zero extensions.

Convention: with J_n(1) carrying its 1s on the superdiagonal, the
normalized shape has the chosen roots on the diagonal and unit
superdiagonal; the recursion then anchors at the *last* basis vector
(gamma fixes e_n, and Phi is reconstructed from its last column downward).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import BudgetError, CoprimalityError, PreconditionError
from .exactalg import Mat, Poly, hensel_factor_lift, jordan_block
from .exactalg.artin import ArtinLocalRing, section_matrix
from .exactalg.poly import poly_gcd, poly_xgcd

DEFAULT_BUDGET = 2 ** 24


# ---------------------------------------------------------------------------
# points and extensions

@dataclass(frozen=True)
class WeilPoint:
    ring: ArtinLocalRing
    Sigma: Mat
    Phi: Mat
    n: int
    q: int

    def __post_init__(self):
        A = self.ring
        assert self.Sigma.nrows == self.n and self.Phi.nrows == self.n
        if not (A.is_unit(self.Sigma.det()) and A.is_unit(self.Phi.det())):
            raise PreconditionError("point matrices must be invertible")
        if self.Phi * self.Sigma != (self.Sigma ** self.q) * self.Phi:
            raise PreconditionError("commutation relation violated")

    def residue(self):
        A = self.ring
        return (self.Sigma.map(A.residue_field, A.residue),
                self.Phi.map(A.residue_field, A.residue))


@dataclass
class SquareZeroExtension:
    """A surjection big -> small of artinian local rings whose kernel is
    annihilated by the maximal ideal of `big`."""

    big: ArtinLocalRing
    small: ArtinLocalRing
    proj: object     # elem(big) -> elem(small)
    section: object  # elem(small) -> elem(big), additive, proj . section = id
    kernel: list = field(default_factory=list)

    def __post_init__(self):
        if not self.kernel:
            self.kernel = [x for x in self.big.elements() if not self.proj(x)]
        zero_s = self.small.zero()
        for x in self.kernel:
            assert self.proj(x) == zero_s
        for x in self.small.elements():
            assert self.proj(self.section(x)) == x, "section failure"
        for m in self.big.maximal_ideal_elements():
            for k in self.kernel:
                assert not (m * k), "kernel is not square-zero"

    def lift_matrix(self, M: Mat) -> Mat:
        return M.map(self.big, self.section)

    def reduce_matrix(self, M: Mat) -> Mat:
        return M.map(self.small, self.proj)


def t_truncation(big: ArtinLocalRing, small: ArtinLocalRing,
                 e: int) -> SquareZeroExtension:
    """F_{l^e}[t]/(t^b) -> F_{l^e}[t]/(t^(b-1)), dropping the top t-layer."""
    rank_s = small.rank

    def proj(x):
        from .exactalg.artin import ArtinElem
        return ArtinElem(small, x.coords[:rank_s])

    def sec(x):
        from .exactalg.artin import ArtinElem
        return ArtinElem(big, x.coords + (0,) * (big.rank - rank_s))

    return SquareZeroExtension(big, small, proj, sec)


def ell_truncation(big: ArtinLocalRing, small: ArtinLocalRing) -> SquareZeroExtension:
    """W(F_{l^e})/l^a -> W(F_{l^e})/l^(a-1) (coordinatewise reduction)."""
    def proj(x):
        from .exactalg.artin import ArtinElem
        return ArtinElem(small, tuple(c % m for c, m in
                                      zip(x.coords, small.moduli)))

    def sec(x):
        from .exactalg.artin import ArtinElem
        return ArtinElem(big, x.coords)

    return SquareZeroExtension(big, small, proj, sec)


# ---------------------------------------------------------------------------
# enumeration and the base map

def _matrix_lifts(A: ArtinLocalRing, Mbar: Mat, entries: list):
    """All matrices over A reducing to Mbar, by adding `entries`-matrices."""
    n = Mbar.nrows
    base = section_matrix(A, Mbar)
    for deltas in product(entries, repeat=n * n):
        D = Mat(A, [deltas[i * n:(i + 1) * n] for i in range(n)])
        yield base + D


def enumerate_points(A: ArtinLocalRing, n: int, q: int, rho_bar,
                     budget: int = DEFAULT_BUDGET) -> list:
    """All points over A reducing to rho_bar = (Sigma_bar, Phi_bar)."""
    sbar, pbar = rho_bar
    mx = A.maximal_ideal_elements()
    if len(mx) ** (2 * n * n) > budget:
        raise BudgetError("point enumeration exceeds the budget")
    out = []
    for Sigma in _matrix_lifts(A, sbar, mx):
        Sq = Sigma ** q
        for Phi in _matrix_lifts(A, pbar, mx):
            if Phi * Sigma == Sq * Phi:
                out.append(WeilPoint(A, Sigma, Phi, n, q))
    return out


def char_I(pt: WeilPoint) -> tuple:
    """(e_1, ..., e_n) of Sigma; the image lands in the q-fixed locus."""
    cp = pt.Sigma.char_poly()
    cpq = (pt.Sigma ** pt.q).char_poly()
    assert cp == cpq, "point does not map into the q-fixed base"
    return pt.Sigma.char_coeffs_e()


# ---------------------------------------------------------------------------
# Hensel block diagonalization

def hensel_diagonalize(g: Mat, shape: tuple):
    """(delta, gamma) with gamma = 1 mod m and gamma^(-1) g gamma = delta
    block-diagonal for `shape`; requires the residue of g block-diagonal
    with pairwise coprime block characteristic polynomials.

    The construction lifts the residue factorization of char(g), builds
    interpolants R_i (divisible by all other factors, = 1 mod their own),
    and uses the orthogonal idempotents R_i(g) as the new block basis.
    """
    A: ArtinLocalRing = g.ring
    kf = A.residue_field
    gbar = g.map(kf, A.residue)
    if not gbar.is_block_diagonal(shape):
        raise PreconditionError("residue is not block-diagonal")
    res_polys = [b.char_poly() for b in gbar.diagonal_blocks(shape)]
    for i in range(len(res_polys)):
        for j in range(i + 1, len(res_polys)):
            if poly_gcd(res_polys[i], res_polys[j]).degree != 0:
                raise CoprimalityError("block characteristic polynomials "
                                       "are not coprime")
    P = g.char_poly()
    factors = hensel_factor_lift(P, res_polys)
    n = g.nrows
    ident = Mat.identity(A, n)
    one_poly = Poly.const(A, A.one())

    idempotents = []
    for i, Pi in enumerate(factors):
        Qi = one_poly
        for j, Pj in enumerate(factors):
            if j != i:
                Qi = Qi * Pj
        # S = Q_i^(-1) mod P_i, from the residue Bezout pair plus a
        # geometric-series correction over the nilpotent error
        gbar_i = res_polys[i]
        Qbar = Qi.map_coeffs(kf, A.residue).mod(gbar_i)
        gcd_, u, _ = poly_xgcd(Qbar, gbar_i)
        assert gcd_.degree == 0
        S = u.map_coeffs(A, A.section).mod(Pi)
        for _ in range(A.nilpotency_index + 1):
            r = (one_poly - (S * Qi).mod(Pi)).mod(Pi)
            if not r:
                break
            S = (S * (one_poly + r)).mod(Pi)
        assert (S * Qi).mod(Pi) == one_poly, "no inverse mod P_i"
        Ri = Qi * S
        idempotents.append(Ri.eval_matrix(g))

    total = Mat.zero(A, n, n)
    for E in idempotents:
        total = total + E
    assert total == ident, "idempotents do not sum to 1"
    for i, Ei in enumerate(idempotents):
        assert Ei * Ei == Ei, "not idempotent"
        assert Ei * g == g * Ei, "idempotent does not commute with g"
        for j, Ej in enumerate(idempotents):
            if i != j:
                assert not any(any(r) for r in (Ei * Ej).rows), \
                    "idempotents not orthogonal"

    bounds = [0]
    for s in shape:
        bounds.append(bounds[-1] + s)
    cols = []
    for i, Ei in enumerate(idempotents):
        for j in range(bounds[i], bounds[i + 1]):
            basis_vec = tuple(A.one() if k == j else A.zero() for k in range(n))
            cols.append(Ei.apply(basis_vec))
    gamma = Mat(A, list(zip(*cols)))
    assert gamma.map(kf, A.residue) == Mat.identity(kf, n), "gamma != 1 mod m"
    delta = gamma.inv() * g * gamma
    assert delta.is_block_diagonal(shape), "conjugate is not block-diagonal"
    return delta, gamma


def q_conjugator_block_check(g: Mat, shape: tuple, q: int) -> int:
    """Exhaustively verify {h : h g h^(-1) = g^q} lies in block form; returns
    the number of such h.  Only for tiny rings."""
    A: ArtinLocalRing = g.ring
    n = g.nrows
    if not g.is_block_diagonal(shape):
        raise PreconditionError("g must already lie in the block Levi")
    gq = g ** q
    if A.size ** (n * n) > DEFAULT_BUDGET:
        raise BudgetError("conjugator scan exceeds the budget")
    count = 0
    for entries in product(A.elements(), repeat=n * n):
        h = Mat(A, [entries[i * n:(i + 1) * n] for i in range(n)])
        if not A.is_unit(h.det()):
            continue
        if h * g == gq * h:
            count += 1
            assert h.is_block_diagonal(shape), \
                "q-conjugator escapes the block Levi"
    return count


# ---------------------------------------------------------------------------
# regular-unipotent normalization

def root_poly(A: ArtinLocalRing, roots) -> Poly:
    out = Poly.const(A, A.one())
    for a in roots:
        out = out * Poly(A, [-a, A.one()])
    return out


def companion_normalize(pt: WeilPoint, roots):
    """Conjugate pt so Sigma has the given roots on the diagonal and 1 on
    the superdiagonal; gamma fixes e_n and is 1 mod m.

    Preconditions: the residue of Sigma is the regular unipotent Jordan
    block, prod (X - a_i) equals char(Sigma) exactly, and the root multiset
    is q-stable: prod (X - a_i) = prod (X - a_i^q).
    """
    A = pt.ring
    n, q = pt.n, pt.q
    kf = A.residue_field
    sbar, _ = pt.residue()
    if sbar != jordan_block(kf, n, kf.one()):
        raise PreconditionError("residue of Sigma is not J_n(1)")
    if len(roots) != n or not all(A.in_maximal_ideal(a - A.one())
                                  for a in roots):
        raise PreconditionError("roots must lie in 1 + m")
    if root_poly(A, roots) != pt.Sigma.char_poly():
        raise PreconditionError("roots do not factor char(Sigma)")
    if root_poly(A, [a ** q for a in roots]) != root_poly(A, roots):
        raise PreconditionError("root multiset is not q-stable")

    Sigma = pt.Sigma
    ident = Mat.identity(A, n)
    fs: list = [None] * n
    fs[n - 1] = tuple(A.one() if i == n - 1 else A.zero() for i in range(n))
    for i in range(n - 1, 0, -1):
        fs[i - 1] = (Sigma - ident.scale(roots[i])).apply(fs[i])
    gamma = Mat(A, list(zip(*fs)))
    assert gamma.map(kf, A.residue) == Mat.identity(kf, n), "gamma != 1 mod m"
    gamma_inv = gamma.inv()
    new_sigma = gamma_inv * Sigma * gamma
    expected = _bidiagonal(A, roots)
    assert new_sigma == expected, "normalization failed to reach the shape"
    new_phi = gamma_inv * pt.Phi * gamma
    return WeilPoint(A, new_sigma, new_phi, n, q), gamma


def _bidiagonal(A: ArtinLocalRing, roots) -> Mat:
    n = len(roots)
    rows = [[A.zero()] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = roots[i]
        if i + 1 < n:
            rows[i][i + 1] = A.one()
    return Mat(A, rows)


def phi_reconstruct(A: ArtinLocalRing, roots, v, q: int) -> Mat:
    """The unique Phi with the given last column satisfying the relation
    against the normalized Sigma: columns are built downward by
    col_(i-1) = (Sigma^q - a_i) col_i, and the q-stability of the roots
    makes the last relation hold via Cayley-Hamilton."""
    n = len(roots)
    Sigma = _bidiagonal(A, roots)
    Sq = Sigma ** q
    ident = Mat.identity(A, n)
    cols: list = [None] * n
    cols[n - 1] = tuple(v)
    for i in range(n - 1, 0, -1):
        cols[i - 1] = (Sq - ident.scale(roots[i])).apply(cols[i])
    Phi = Mat(A, list(zip(*cols)))
    assert Phi * Sigma == Sq * Phi, "reconstructed Phi fails the relation"
    return Phi


def normalized_points(A: ArtinLocalRing, n: int, q: int, phibar: Mat) -> list:
    """All points with Sigma exactly in normalized shape: the image of the
    (roots, last column) parametrization."""
    out = []
    for roots in z_points(A, n, q):
        for v in _vector_lifts(A, phibar.column(n - 1)):
            Phi = phi_reconstruct(A, roots, v, q)
            out.append(WeilPoint(A, _bidiagonal(A, roots), Phi, n, q))
    return out


def _vector_lifts(A: ArtinLocalRing, vbar):
    mx = A.maximal_ideal_elements()
    base = [A.section(x) for x in vbar]
    for ds in product(mx, repeat=len(base)):
        yield tuple(b + d for b, d in zip(base, ds))


# ---------------------------------------------------------------------------
# degree-d restriction

def _phi_blocks(Phi: Mat, r: int, d: int):
    """Extract Psi_i from Phi = w Psi (blocks (i-1 mod d, i) of Phi)."""
    A = Phi.ring
    psis = []
    for i in range(d):
        src = (i - 1) % d
        blk = Phi.block(range(src * r, src * r + r), range(i * r, i * r + r))
        psis.append(blk)
    # all other blocks must vanish
    z = A.zero()
    for bi in range(d):
        for bj in range(d):
            if (bi + 1) % d != bj:
                blk = Phi.block(range(bi * r, bi * r + r),
                                range(bj * r, bj * r + r))
                if any(any(x != z for x in row) for row in blk.rows):
                    raise PreconditionError("Phi is not of cycle-times-block form")
    return psis


def degree_d_restrict(pt: WeilPoint, r: int, d: int):
    """((Sigma_0, (Phi^d)_00) as a q^d-point of rank r, [Psi_1..Psi_(d-1)]).

    Requires Sigma block-diagonal in r-blocks and Phi supported on the
    cycle positions.  Also asserts (Phi^d)_00 = Psi_1 Psi_2 ... Psi_(d-1)
    Psi_0."""
    if pt.n != r * d:
        raise PreconditionError("rank mismatch")
    shape = (r,) * d
    if not pt.Sigma.is_block_diagonal(shape):
        raise PreconditionError("Sigma is not block-diagonal")
    psis = _phi_blocks(pt.Phi, r, d)
    sigmas = pt.Sigma.diagonal_blocks(shape)
    phid = pt.Phi ** d
    corner = phid.block(range(r), range(r))
    prod = psis[1] if d > 1 else psis[0]
    for i in range(2, d):
        prod = prod * psis[i]
    if d > 1:
        prod = prod * psis[0]
    assert corner == prod, "(Phi^d)_00 != Psi_1 ... Psi_(d-1) Psi_0"
    small = WeilPoint(pt.ring, sigmas[0], corner, r, pt.q ** d)
    return small, psis[1:]


def degree_d_extend(small: WeilPoint, psis_tail, q: int, d: int) -> WeilPoint:
    """Inverse of degree_d_restrict: rebuild the blocks by
    Sigma_i = Psi_i^(-1) Sigma_(i-1)^q Psi_i and Psi_0 =
    (Psi_1...Psi_(d-1))^(-1) Phi."""
    A = small.ring
    r = small.n
    assert small.q == q ** d
    psis = [None] + list(psis_tail)
    assert len(psis) == d
    sigmas = [small.Sigma]
    for i in range(1, d):
        sigmas.append(psis[i].inv() * (sigmas[i - 1] ** q) * psis[i])
    tail_prod = psis[1] if d > 1 else None
    for i in range(2, d):
        tail_prod = tail_prod * psis[i]
    psis[0] = tail_prod.inv() * small.Phi if d > 1 else small.Phi
    n = r * d
    Sigma = Mat.block_diag(A, sigmas)
    rows = [[A.zero()] * n for _ in range(n)]
    for i in range(d):
        src = (i - 1) % d
        for a in range(r):
            for b in range(r):
                rows[src * r + a][i * r + b] = psis[i][a, b]
    Phi = Mat(A, rows)
    return WeilPoint(A, Sigma, Phi, n, q)


# ---------------------------------------------------------------------------
# the base model and smoothness probes

def z_points(A: ArtinLocalRing, n: int, q: int, residues=None) -> list:
    """Tuples (t_1..t_n), t_i lifting the given residues (default all 1),
    with prod (X - t_i) = prod (X - t_i^q): the torus-level base model."""
    if residues is None:
        base = [A.one()] * n
    else:
        base = [A.section(x) for x in residues]
    mx = A.maximal_ideal_elements()
    out = []
    for ds in product(mx, repeat=n):
        t = tuple(b + d for b, d in zip(base, ds))
        if root_poly(A, t) == root_poly(A, [x ** q for x in t]):
            out.append(t)
    return out


@dataclass(frozen=True)
class ProbeReport:
    family: str
    tower: str
    predicted: int
    observed_min: int
    observed_max: int
    pairs: int

    @property
    def passed(self) -> bool:
        return (self.pairs > 0
                and self.predicted == self.observed_min == self.observed_max)


def _count_lifts(ext: SquareZeroExtension, pt: WeilPoint, target_roots,
                 n: int, q: int, phi_positions=None) -> int:
    """Lifts of pt over the extension with char(Sigma') = prod(X - t'_i);
    phi_positions restricts the Phi-perturbation support (block probes)."""
    A2 = ext.big
    kappa = ext.kernel
    target = root_poly(A2, target_roots)
    sig_base = ext.lift_matrix(pt.Sigma)
    phi_base = ext.lift_matrix(pt.Phi)
    all_pos = [(i, j) for i in range(n) for j in range(n)]
    phi_pos = phi_positions if phi_positions is not None else all_pos
    count = 0
    sig_candidates = []
    for ds in product(kappa, repeat=n * n):
        D = Mat(A2, [ds[i * n:(i + 1) * n] for i in range(n)])
        S = sig_base + D
        if S.char_poly() == target:
            sig_candidates.append((S, S ** q))
    for S, Sq in sig_candidates:
        for ds in product(kappa, repeat=len(phi_pos)):
            rows = [[A2.zero()] * n for _ in range(n)]
            for (i, j), d in zip(phi_pos, ds):
                rows[i][j] = d
            P = phi_base + Mat(A2, rows)
            if P * S == Sq * P:
                count += 1
    return count


def smoothness_probe(family: str, ext: SquareZeroExtension, rho_bar,
                     n: int, q: int, shape=None,
                     budget: int = DEFAULT_BUDGET) -> ProbeReport:
    """Count lifts over every compatible (family point, base point) pair.

    Formal smoothness of the family over the torus-level base predicts the
    constant count |kernel|^d with d the relative dimension: n^2 for the
    full moduli, sum n_i^2 for the Phi-in-Levi locus, n for the normalized
    locus.  The probe fails if any pair deviates.
    """
    A = ext.small
    kappa_size = len(ext.kernel)
    sbar, pbar = rho_bar
    tower = f"{ext.big.name}->{ext.small.name}"

    if family == "full":
        rel_dim = n * n
        pts = enumerate_points(A, n, q, rho_bar, budget)
        phi_positions = None
    elif family == "phi_in_levi":
        assert shape is not None
        rel_dim = sum(s * s for s in shape)
        phi_positions = [(i, j) for i in range(n) for j in range(n)
                         if _block_index(shape, i) == _block_index(shape, j)]
        pts = [p for p in enumerate_points(A, n, q, rho_bar, budget)
               if p.Phi.is_block_diagonal(shape)]
    elif family == "normalized":
        rel_dim = n
        pts = normalized_points(A, n, q, pbar)
        phi_positions = None
    else:
        raise PreconditionError(f"unknown probe family {family}")

    predicted = kappa_size ** rel_dim
    base_big = z_points(ext.big, n, q)
    base_small = z_points(A, n, q)
    observed = []
    for pt in pts:
        cp = pt.Sigma.char_poly()
        small_matches = [z for z in base_small if root_poly(A, z) == cp]
        if family == "normalized":
            diag = tuple(pt.Sigma[i, i] for i in range(n))
            small_matches = [diag]
        for z in small_matches:
            for z2 in base_big:
                if tuple(ext.proj(t) for t in z2) != tuple(z):
                    continue
                if family == "normalized":
                    count = _count_normalized_lifts(ext, pt, z2, n, q)
                else:
                    count = _count_lifts(ext, pt, z2, n, q, phi_positions)
                observed.append(count)
    if not observed:
        return ProbeReport(family, tower, predicted, 0, 0, 0)
    return ProbeReport(family, tower, predicted, min(observed), max(observed),
                       len(observed))


def _count_normalized_lifts(ext, pt, z2, n, q) -> int:
    """Sigma' is forced to be the bidiagonal of z2; count Phi lifts."""
    A2 = ext.big
    S = _bidiagonal(A2, z2)
    Sq = S ** q
    phi_base = ext.lift_matrix(pt.Phi)
    count = 0
    for ds in product(ext.kernel, repeat=n * n):
        P = phi_base + Mat(A2, [ds[i * n:(i + 1) * n] for i in range(n)])
        if P * S == Sq * P:
            count += 1
    return count


def _block_index(shape, i):
    acc = 0
    for b, s in enumerate(shape):
        if acc <= i < acc + s:
            return b
        acc += s
    raise IndexError(i)


def check_phi_in_levi_forces_sigma(A: ArtinLocalRing, n: int, q: int,
                                   rho_bar, shape: tuple,
                                   budget: int = DEFAULT_BUDGET) -> int:
    """Enumerate all lifts with Phi block-diagonal and assert Sigma is then
    block-diagonal too; returns the number of lifts inspected."""
    sbar, pbar = rho_bar
    mx = A.maximal_ideal_elements()
    phi_pos = [(i, j) for i in range(n) for j in range(n)
               if _block_index(shape, i) == _block_index(shape, j)]
    if len(mx) ** (n * n + len(phi_pos)) > budget:
        raise BudgetError("lift scan exceeds the budget")
    phi_base = section_matrix(A, pbar)
    checked = 0
    for Sigma in _matrix_lifts(A, sbar, mx):
        Sq = Sigma ** q
        for ds in product(mx, repeat=len(phi_pos)):
            rows = [[A.zero()] * n for _ in range(n)]
            for (i, j), d in zip(phi_pos, ds):
                rows[i][j] = d
            Phi = phi_base + Mat(A, rows)
            if Phi * Sigma == Sq * Phi:
                checked += 1
                assert Sigma.is_block_diagonal(shape), \
                    "Phi in the Levi but Sigma escapes"
    return checked
