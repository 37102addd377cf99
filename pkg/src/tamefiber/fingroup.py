"""Brute-force oracle on tiny GL_n(F_q).

Everything here is computed from the group multiplication table side:
conjugacy classes by orbit closure under generators, Gelfand-Graev
self-intertwining both by Mackey double cosets and by exact cyclotomic
character inner products, induced characters by the textbook formula, and
Hom spaces between explicit matrix modules by solving the intertwiner
linear system (Gaussian elimination over fields, diagonalization over
local truncations).  Nothing in this module consults the pairing engine;
it is the independent side of every cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import BudgetError, GeneralPositionError, PreconditionError
from .exactalg import GF, CycNum, Mat, prime_power, valuation
from .exactalg.artin import ArtinLocalRing
from .exactalg.finitefield import FiniteField

SIZE_CEILING = 2 * 10 ** 4


def group_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


class FqGroup:
    """GL_n(F_q), fully enumerated, with class data computed on demand."""

    def __init__(self, n: int, q: int):
        if group_order(n, q) > SIZE_CEILING:
            raise BudgetError(f"|GL_{n}(F_{q})| exceeds the size ceiling")
        p, k = prime_power(q)
        self.n = n
        self.q = q
        self.p = p
        self.field = GF(p, k)
        F = self.field
        self.elements: list[Mat] = []
        for packed in range(q ** (n * n)):
            vals = []
            v = packed
            for _ in range(n * n):
                vals.append(F.from_int_value(v % q))
                v //= q
            M = Mat(F, [vals[i * n:(i + 1) * n] for i in range(n)])
            if F.is_unit(M.det()):
                self.elements.append(M)
        assert len(self.elements) == group_order(n, q)
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.inverse = [self.index[m.inv()] for m in self.elements]
        self.identity = self.index[Mat.identity(F, n)]
        self.generators = self._generating_set()
        self._classes = None

    def _generating_set(self) -> list:
        F, n = self.field, self.n
        gens = []
        if F.order > 2:
            d = Mat.identity(F, n).rows
            d = [list(r) for r in d]
            d[0][0] = F.generator()
            gens.append(self.index[Mat(F, d)])
        if n > 1:
            e = [list(r) for r in Mat.identity(F, n).rows]
            e[0][1] = F.one()
            gens.append(self.index[Mat(F, e)])
            w = [[F.zero()] * n for _ in range(n)]
            for i in range(n - 1):
                w[i][i + 1] = F.one()
            w[n - 1][0] = F.one()
            gens.append(self.index[Mat(F, w)])
        # certify the generating set by closure
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(g, x)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        assert len(seen) == len(self.elements), "generators do not generate"
        return gens

    def mul(self, i: int, j: int) -> int:
        return self.index[self.elements[i] * self.elements[j]]

    def conj(self, g: int, x: int) -> int:
        """g x g^(-1)."""
        return self.index[self.elements[g] * self.elements[x]
                          * self.elements[self.inverse[g]]]

    def element_order(self, i: int) -> int:
        k, acc = 1, i
        while acc != self.identity:
            acc = self.mul(acc, i)
            k += 1
        return k

    # -- conjugacy classes ---------------------------------------------------

    def classes(self) -> "ClassData":
        if self._classes is None:
            reps, sizes, cls_of = [], [], [-1] * len(self.elements)
            gens = list(self.generators) + [self.inverse[g] for g in self.generators]
            for i in range(len(self.elements)):
                if cls_of[i] >= 0:
                    continue
                cid = len(reps)
                orbit = {i}
                frontier = [i]
                cls_of[i] = cid
                while frontier:
                    x = frontier.pop()
                    for g in gens:
                        y = self.conj(g, x)
                        if cls_of[y] < 0:
                            cls_of[y] = cid
                            orbit.add(y)
                            frontier.append(y)
                reps.append(i)
                sizes.append(len(orbit))
            self._classes = ClassData(self, tuple(reps), tuple(sizes),
                                      tuple(cls_of))
        return self._classes

    # -- standard subgroups ----------------------------------------------------

    def unipotent_radical(self, shape=None) -> list:
        """Upper unitriangular elements; with a composition `shape`, entries
        strictly inside the diagonal blocks are free and the diagonal blocks
        are unitriangular (this is the same subgroup U for every shape)."""
        F, n = self.field, self.n
        out = []
        for i, M in enumerate(self.elements):
            ok = all(M[r, r] == F.one() for r in range(n)) and all(
                not M[r, c] for r in range(n) for c in range(r))
            if ok:
                out.append(i)
        assert len(out) == self.q ** (self.n * (self.n - 1) // 2)
        return out

    def torus(self) -> list:
        F, n = self.field, self.n
        return [i for i, M in enumerate(self.elements)
                if all(not M[r, c] for r in range(n) for c in range(n) if r != c)]

    def borel(self) -> list:
        F, n = self.field, self.n
        return [i for i, M in enumerate(self.elements)
                if all(not M[r, c] for r in range(n) for c in range(n) if c < r)]

    def psi_exponent(self, u_idx: int, shape=None) -> int:
        """Additive-character exponent in F_p: trace of the sum of the
        superdiagonal entries lying inside the diagonal blocks of `shape`
        (all of them for the full group)."""
        M = self.elements[u_idx]
        F, n = self.field, self.n
        bounds = _shape_bounds(shape, n)
        acc = F.zero()
        for i in range(n - 1):
            if _same_block(bounds, i, i + 1):
                acc = acc + M[i, i + 1]
        return F.trace_to_prime(acc)

    def assert_general_position(self):
        """The stabilizer of psi under torus conjugation must be the center."""
        U = self.unipotent_radical()
        for t in self.torus():
            Tm = self.elements[t]
            scalar = all(Tm[i, i] == Tm[0, 0] for i in range(self.n))
            fixes = all(self.psi_exponent(self.conj(t, u)) == self.psi_exponent(u)
                        for u in U)
            if fixes and not scalar:
                raise GeneralPositionError("psi stabilizer exceeds the center")
            if scalar and not fixes:
                raise GeneralPositionError("psi not central-stable")


@dataclass(frozen=True)
class ClassData:
    group: FqGroup
    reps: tuple
    sizes: tuple
    class_of: tuple

    def __post_init__(self):
        assert sum(self.sizes) == len(self.group.elements), "class equation"

    def centralizer_orders(self) -> tuple:
        N = len(self.group.elements)
        return tuple(N // s for s in self.sizes)


@lru_cache(maxsize=None)
def fq_group(n: int, q: int) -> FqGroup:
    return FqGroup(n, q)


def _shape_bounds(shape, n):
    if shape is None:
        shape = (n,)
    bounds = [0]
    for s in shape:
        bounds.append(bounds[-1] + s)
    assert bounds[-1] == n
    return bounds


def _same_block(bounds, i, j):
    for k in range(len(bounds) - 1):
        if bounds[k] <= i < bounds[k + 1]:
            return bounds[k] <= j < bounds[k + 1]
    return False


# ---------------------------------------------------------------------------
# counting operations

def semisimple_class_count(n: int, q: int) -> int:
    """Classes whose representatives have order coprime to p."""
    G = fq_group(n, q)
    cd = G.classes()
    return sum(1 for r in cd.reps if G.element_order(r) % G.p != 0)


def gelfand_graev_selfpairing(n: int, q: int) -> tuple:
    """<Gamma, Gamma> two ways: (mackey count, character inner product).

    Both are returned; they are required to agree and to equal
    q^(n-1)(q-1).
    """
    G = fq_group(n, q)
    G.assert_general_position()
    U = G.unipotent_radical()
    uset = set(U)
    # (a) Mackey: double cosets U g U on which psi agrees with its conjugate
    visited = [False] * len(G.elements)
    mackey = 0
    for g in range(len(G.elements)):
        if visited[g]:
            continue
        for u1 in U:
            gu = G.mul(u1, g)
            for u2 in U:
                visited[G.mul(gu, u2)] = True
        good = True
        for x in U:
            y = G.conj(g, x)
            if y in uset and G.psi_exponent(y) != G.psi_exponent(x):
                good = False
                break
        if good:
            mackey += 1
    # (b) exact character inner product
    chi = induced_character(G, U, lambda u: _psi_value(G, u))
    ip = character_inner_product(G, chi, chi)
    return mackey, ip


def _psi_value(G: FqGroup, u_idx: int, shape=None) -> CycNum:
    return CycNum.zeta(G.p, G.psi_exponent(u_idx, shape))


def induced_character(G: FqGroup, H: list, chi) -> tuple:
    """Values of Ind_H^G chi on class representatives.

    (Ind chi)(g) = |H|^(-1) sum_{x in G} [x g x^(-1) in H] chi(x g x^(-1)).
    """
    hset = set(H)
    cd = G.classes()
    out = []
    for rep in cd.reps:
        acc = CycNum.zero(1)
        for x in range(len(G.elements)):
            y = G.conj(x, rep)
            if y in hset:
                acc = acc + chi(y)
        out.append(acc * Fraction(1, len(H)))
    return tuple(out)


def character_inner_product(G: FqGroup, chi1, chi2) -> int:
    cd = G.classes()
    acc = CycNum.zero(1)
    for v1, v2, size in zip(chi1, chi2, cd.sizes):
        acc = acc + v1 * v2.conj() * Fraction(size)
    acc = acc * Fraction(1, len(G.elements))
    val = acc.as_fraction()
    assert val.denominator == 1, "non-integral inner product"
    return int(val)


def torus_characters(G: FqGroup):
    """All characters of the split torus, as (exponent tuple, callable)."""
    from itertools import product as iproduct
    F = G.field
    qm1 = G.q - 1
    out = []
    for ks in iproduct(range(qm1), repeat=G.n):
        def chi(t_idx, ks=ks):
            T = G.elements[t_idx]
            exp = sum(k * F.dlog(T[i, i]) for i, k in enumerate(ks)) % qm1
            return CycNum.zeta(qm1, exp)
        out.append((ks, chi))
    return out


def borel_character_from_torus(G: FqGroup, theta):
    """Inflate a torus character to the Borel (trivial on the radical)."""
    F, n = G.field, G.n

    def chi(b_idx):
        B = G.elements[b_idx]
        diag_idx = G.index[Mat(F, [[B[i, j] if i == j else F.zero()
                                    for j in range(n)] for i in range(n)])]
        return theta(diag_idx)

    return chi


def whittaker_vs_principal_series(n: int, q: int) -> list:
    """<Ind_U psi, Ind_B theta> for every torus character theta, by brute
    force; the list of (exponents, value)."""
    G = fq_group(n, q)
    U = G.unipotent_radical()
    B = G.borel()
    gamma = induced_character(G, U, lambda u: _psi_value(G, u))
    out = []
    for ks, theta in torus_characters(G):
        chi = induced_character(G, B, borel_character_from_torus(G, theta))
        out.append((ks, character_inner_product(G, gamma, chi)))
    return out


# ---------------------------------------------------------------------------
# matrix modules and Hom spaces

@dataclass
class MatrixModule:
    """A representation over `ring` given by one matrix per group generator
    (plus the full action used to build characters and submodules)."""

    ring: object
    group: FqGroup
    dim: int
    gen_mats: tuple        # matrices for group.generators, in order
    action: object = None  # optional callable elem_idx -> Mat

    def spot_check(self, rng=None):
        """Multiplicativity of the full action on a few random pairs."""
        import random
        r = rng or random.Random(0)
        if self.action is None:
            return
        N = len(self.group.elements)
        for _ in range(10):
            a, b = r.randrange(N), r.randrange(N)
            ab = self.group.mul(a, b)
            assert self.action(a) * self.action(b) == self.action(ab)


def root_of_unity_in_ring(ring, m: int):
    """First element of exact multiplicative order m in enumeration order."""
    if isinstance(ring, FiniteField):
        return ring.root_of_unity(m)
    one = ring.one()
    for x in ring.elements():
        if not ring.is_unit(x):
            continue
        if x ** m == one and all(x ** d != one for d in range(1, m)):
            return x
    raise PreconditionError(f"no order-{m} element in {ring}")


def induced_module(G: FqGroup, H: list, chi_exponent, zeta, ring) -> MatrixModule:
    """Ind_H^G of the rank-one H-module on which h acts by
    zeta**chi_exponent(h); basis indexed by left cosets gH."""
    hset = set(H)
    reps = []
    coset_of = {}
    for i in range(len(G.elements)):
        if i in coset_of:
            continue
        rid = len(reps)
        reps.append(i)
        for h in H:
            coset_of[G.mul(i, h)] = rid
    d = len(reps)
    inv_reps = [G.inverse[r] for r in reps]

    def action(g: int) -> Mat:
        cols = []
        for i in range(d):
            gi = G.mul(g, reps[i])
            j = coset_of[gi]
            h = G.mul(inv_reps[j], gi)
            assert h in hset
            col = [ring.zero()] * d
            col[j] = zeta ** chi_exponent(h)
            cols.append(col)
        return Mat(ring, list(zip(*cols)))

    gen_mats = tuple(action(g) for g in G.generators)
    return MatrixModule(ring, G, d, gen_mats, action)


def gelfand_graev_module(G: FqGroup, ring, shape=None) -> MatrixModule:
    """Ind_U^G psi over `ring` (psi on the blocks of `shape`); the Levi
    version Ind_L Gamma_L is the same induced module with the block psi."""
    U = G.unipotent_radical()
    zeta = root_of_unity_in_ring(ring, G.p)
    return induced_module(G, U, lambda u: G.psi_exponent(u, shape), zeta, ring)


def principal_series_module(G: FqGroup, theta_exponents, ring) -> MatrixModule:
    """Ind_B^G of the torus character with the given exponent tuple."""
    B = G.borel()
    F = G.field
    qm1 = G.q - 1
    zeta = root_of_unity_in_ring(ring, qm1) if qm1 > 1 else ring.one()

    def expo(b_idx):
        Bm = G.elements[b_idx]
        return sum(k * F.dlog(Bm[i, i])
                   for i, k in enumerate(theta_exponents)) % max(qm1, 1)

    return induced_module(G, B, expo, zeta, ring)


def module_character(M: MatrixModule) -> tuple:
    """Trace character on class representatives (needs the full action)."""
    cd = M.group.classes()
    return tuple(M.action(rep).trace() for rep in cd.reps)


# -- intertwiner systems -----------------------------------------------------

def _intertwiner_system(M1: MatrixModule, M2: MatrixModule):
    """Rows of the linear system T M1(g) - M2(g) T = 0, unknowns T (d2 x d1)
    flattened row-major."""
    assert M1.group is M2.group and M1.ring == M2.ring
    ring = M1.ring
    d1, d2 = M1.dim, M2.dim
    rows = []
    for A, B in zip(M1.gen_mats, M2.gen_mats):
        # equation (i, j): sum_k T[i,k] A[k,j] - B[i,k] T[k,j] = 0
        for i in range(d2):
            for j in range(d1):
                row = [ring.zero()] * (d1 * d2)
                for k in range(d1):
                    row[i * d1 + k] = row[i * d1 + k] + A[k, j]
                for k in range(d2):
                    row[k * d1 + j] = row[k * d1 + j] - B[i, k]
                rows.append(row)
    return rows


def _field_nullity(rows, field) -> int:
    if not rows:
        return 0
    ncols = len(rows[0])
    work = [r[:] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = field.inv(work[rank][col])
        work[rank] = [inv * x for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return ncols - rank


def local_smith_valuations(int_rows, ell: int, a: int):
    """Diagonal ell-valuations of an integer matrix over Z/ell^a.

    Returns (vals, ncols); pivots all have valuation < a, remaining columns
    are annihilated mod ell^a.
    """
    mod = ell ** a
    work = [[x % mod for x in row] for row in int_rows if any(x % mod for x in row)]
    ncols = len(int_rows[0]) if int_rows else 0
    vals = []
    top = 0
    while work:
        best = None
        for i, row in enumerate(work):
            for j, x in enumerate(row):
                if x:
                    v = valuation(x, ell) if x % ell == 0 else 0
                    if best is None or v < best[2]:
                        best = (i, j, v)
                    if v == 0:
                        break
            if best and best[2] == 0:
                break
        if best is None:
            break
        i0, j0, v = best
        vals.append(v)
        piv = work[i0][j0]
        u = piv // (ell ** v)
        uinv = pow(u, -1, mod)
        # clear the pivot column
        new_work = []
        for i, row in enumerate(work):
            if i == i0:
                continue
            x = row[j0]
            if x:
                f = (x // (ell ** v)) * uinv % mod
                row = [(y - f * z) % mod for y, z in zip(row, work[i0])]
            row = row[:j0] + row[j0 + 1:]
            if any(row):
                new_work.append(row)
        # column operations only relabel unknowns; drop the pivot row/column
        work = new_work
    return vals, ncols


def hom_dim_field(M1: MatrixModule, M2: MatrixModule) -> int:
    """dim over a finite field of the intertwiner space Hom(M1, M2)."""
    rows = _intertwiner_system(M1, M2)
    return _field_nullity(rows, M1.ring)


def hom_module_invariants(M1: MatrixModule, M2: MatrixModule):
    """(free_rank, residue_nullity) of the intertwiner solution module over
    an artinian truncation (Z/ell^a or its unramified extension).

    free_rank counts direct summands isomorphic to the full ring;
    residue_nullity is the dimension of the kernel of the reduced system
    over the prime field, divided by the residue degree.
    """
    ring: ArtinLocalRing = M1.ring
    ell = ring.ell
    a = max(valuation(m, ell) for m in ring.moduli)
    assert all(m == ell ** a for m in ring.moduli), \
        "free truncation required for rank profiles"
    e = ring.rank
    rows = _intertwiner_system(M1, M2)
    if not rows:
        return 0, 0
    # expand each ring entry to an e x e integer block (mult-by-entry matrix)
    from .exactalg.artin import ArtinElem
    basis = [ArtinElem(ring, tuple(1 if k == i else 0 for k in range(e)))
             for i in range(e)]
    int_rows = []
    for row in rows:
        for r_off in range(e):
            int_row = []
            for x in row:
                for b in basis:
                    int_row.append((x * b).coords[r_off])
            int_rows.append(int_row)
    vals, ncols = local_smith_valuations(int_rows, ell, a)
    free_cols = ncols - len(vals)
    fbar_nullity = free_cols + sum(1 for v in vals if v >= 1)
    assert free_cols % e == 0 and fbar_nullity % e == 0, \
        "solution module is not free over the truncation"
    return free_cols // e, fbar_nullity // e


def hom_dim(M1: MatrixModule, M2: MatrixModule) -> int:
    """Intertwiner-space size: dimension over a field, free rank over a
    truncation (the rank profile of the solution module)."""
    if isinstance(M1.ring, FiniteField):
        return hom_dim_field(M1, M2)
    if isinstance(M1.ring, ArtinLocalRing):
        return hom_module_invariants(M1, M2)[0]
    raise PreconditionError(f"unsupported coefficient ring {M1.ring}")


def reduce_module(M: MatrixModule) -> MatrixModule:
    """Entrywise residue: the special fibre of a module over a truncation."""
    ring: ArtinLocalRing = M.ring
    field = ring.residue_field
    gen_mats = tuple(g.map(field, ring.residue) for g in M.gen_mats)
    action = None
    if M.action is not None:
        action = lambda i: M.action(i).map(field, ring.residue)
    return MatrixModule(field, M.group, M.dim, gen_mats, action)


# -- lattices ---------------------------------------------------------------

def equivariant_endomorphisms_field(M: MatrixModule) -> list:
    """An echelon basis of End_{F[G]}(M) over a finite field."""
    rows = _intertwiner_system(M, M)
    field = M.ring
    d = M.dim
    ncols = d * d
    work = [r[:] for r in rows]
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = field.inv(work[rank][col])
        work[rank] = [inv * x for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero()] * ncols
        vec[fc] = field.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(Mat(field, [vec[i * d:(i + 1) * d] for i in range(d)]))
    return basis


def _column_space_basis(M: Mat) -> list:
    field = M.ring
    cols = [M.column(j) for j in range(M.ncols)]
    basis = []
    work_rows = []
    for c in cols:
        cand = work_rows + [list(c)]
        if _field_rank(cand, field) > len(work_rows):
            work_rows.append(list(c))
            basis.append(c)
    return basis


def _field_rank(rows, field) -> int:
    if not rows:
        return 0
    return len(rows[0]) - _field_nullity(rows, field)


def proper_submodule(M: MatrixModule):
    """A nonzero proper G-stable subspace, as a list of basis vectors, or
    None when End(M) has no non-scalar element with proper image/kernel."""
    field = M.ring
    d = M.dim
    ident = Mat.identity(field, d)
    for T in equivariant_endomorphisms_field(M):
        scalars = [T == ident.scale(c) for c in field.elements()]
        if any(scalars):
            continue
        candidates = []
        img = _column_space_basis(T)
        if 0 < len(img) < d:
            candidates.append(img)
        for lam in field.elements():
            shifted = T - ident.scale(lam)
            img2 = _column_space_basis(shifted)
            if 0 < len(img2) < d:
                candidates.append(img2)
        for cand in candidates:
            if _is_stable(M, cand):
                return cand
    return None


def _is_stable(M: MatrixModule, vectors) -> bool:
    field = M.ring
    rows = [list(v) for v in vectors]
    r0 = _field_rank(rows, field)
    for g in M.gen_mats:
        for v in vectors:
            w = g.apply(v)
            if _field_rank(rows + [list(w)], field) != r0:
                return False
    return True


def second_lattice_reduction(M: MatrixModule, subspace) -> MatrixModule:
    """The mod-ell reduction of the lattice obtained as the preimage of a
    G-stable subspace of the special fibre.

    M is over a free truncation of residue length a >= 2; the returned
    module is over the residue field with basis (lifted subspace basis;
    ell times a complementary basis).  The change of composition series is
    exactly the classical lattice swap.
    """
    ring: ArtinLocalRing = M.ring
    field = ring.residue_field
    ell = ring.ell
    d = M.dim
    k = len(subspace)
    # complete the lifted subspace basis to a basis of the free module
    lifted = [[ring.section(x) for x in v] for v in subspace]
    chosen = []
    res_rows = [[x for x in v] for v in subspace]
    for j in range(d):
        cand = [field.one() if i == j else field.zero() for i in range(d)]
        if _field_rank(res_rows + [cand], field) > _field_rank(res_rows, field):
            res_rows.append(cand)
            chosen.append(j)
        if len(res_rows) == d:
            break
    P_cols = lifted + [[ring.one() if i == j else ring.zero() for i in range(d)]
                       for j in chosen]
    P = Mat(ring, list(zip(*P_cols)))
    Pinv = P.inv()

    def half(x):
        coords = x.coords
        assert all(c % ell == 0 for c in coords), "subspace is not G-stable"
        halved = tuple((c // ell) % ell for c in coords)
        acc = field.zero()
        for i, c in enumerate(halved):
            if c:
                acc = acc + field.from_int(c) * ring._residue_basis[i]
        return acc

    gen_mats = []
    for g in M.gen_mats:
        Mg = Pinv * g * P
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                x = Mg[i, j]
                if i < k and j < k:
                    row.append(ring.residue(x))
                elif i >= k and j < k:
                    row.append(half(x))          # beta / ell
                elif i < k and j >= k:
                    row.append(field.zero())     # ell*gamma' reduces to 0
                else:
                    row.append(ring.residue(x))
            rows.append(row)
        gen_mats.append(Mat(field, rows))
    return MatrixModule(field, M.group, d, tuple(gen_mats), None)
