"""Weyl-group combinatorics and the virtual-character pairing engine.

The symmetric group W = S_n acts on torus tuples s = (s_1, ..., s_n) of
root-of-unity labels by (w s)_i = s_{w^(-1)(i)}; the compatibility stored
in a pair (w, s) is w s = s^q, i.e. s_{w^(-1)(i)} = q s_i in additive
notation.  The pairing of two pairs counts conjugating Weyl elements:

    <R(w, s), R(w', s')> = #{v in W : v w v^(-1) = w', v s = s'}

whose diagonal case is the stabilizer count |Z_W(w) n W(s)|; the bilinear
extension is validated against the brute-force group oracle rather than
assumed.  Generalized Steinberg classes are signed averages over the coset
W(s, s^q), and parabolic induction replaces W-sums by W_L-sums on the
induced side.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .errors import PreconditionError
from .params import (InertialParam, SemisimpleParam, atoms, enumerate_ss_params,
                     levi_of, point_labels)

TorusTuple = tuple  # tuple of Fractions in Q/Z


# ---------------------------------------------------------------------------
# symmetric group utilities (permutations as image tuples, 0-indexed)

@lru_cache(maxsize=None)
def symmetric_group(n: int) -> tuple:
    return tuple(permutations(range(n)))


def perm_mul(a: tuple, b: tuple) -> tuple:
    """(a b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def perm_inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


def perm_sign(a: tuple) -> int:
    n = len(a)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])
    return -1 if inv % 2 else 1


def cycle_type(a: tuple) -> tuple:
    n = len(a)
    seen = [False] * n
    lens = []
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                length += 1
            lens.append(length)
    return tuple(sorted(lens, reverse=True))


def minus_one_eigenspace_dim(a: tuple) -> int:
    """Dimension of the (-1)-eigenspace of the permutation matrix of a."""
    return sum(1 for length in cycle_type(a) if length % 2 == 0)


@lru_cache(maxsize=None)
def young_subgroup(shape: tuple) -> tuple:
    """W_L < S_n for the composition `shape`, block by block."""
    n = sum(shape)
    bounds = [0]
    for s in shape:
        bounds.append(bounds[-1] + s)
    blocks = [range(bounds[i], bounds[i + 1]) for i in range(len(shape))]
    out = []
    for parts in _product_perms(blocks):
        w = list(range(n))
        for blk, p in zip(blocks, parts):
            for off, i in enumerate(blk):
                w[i] = blk[0] + p[off]
        out.append(tuple(w))
    return tuple(sorted(out))


def _product_perms(blocks):
    if not blocks:
        yield ()
        return
    for p in permutations(range(len(blocks[0]))):
        for rest in _product_perms(blocks[1:]):
            yield (p,) + rest


# ---------------------------------------------------------------------------
# torus tuples and pairs

def act(w: tuple, s: TorusTuple) -> TorusTuple:
    wi = perm_inv(w)
    return tuple(s[wi[i]] for i in range(len(s)))


def q_power(s: TorusTuple, q: int) -> TorusTuple:
    return tuple((q * x) % 1 for x in s)


def stabilizer(s: TorusTuple, group=None) -> tuple:
    W = group if group is not None else symmetric_group(len(s))
    return tuple(w for w in W if act(w, s) == s)


def coset(s: TorusTuple, q: int, group=None) -> tuple:
    """W(s, s^q) = {w : w s = s^q}; a left coset of W(s), empty iff the
    W-orbit of s is not q-stable."""
    W = group if group is not None else symmetric_group(len(s))
    sq = q_power(s, q)
    return tuple(w for w in W if act(w, s) == sq)


def is_valid_pair(w: tuple, s: TorusTuple, q: int) -> bool:
    return act(w, s) == q_power(s, q)


def dl_pairing(a, b, q: int) -> int:
    """a = (w, s), b = (w', s'): the conjugation count defined above."""
    (w, s), (wp, sp) = a, b
    if not (is_valid_pair(w, s, q) and is_valid_pair(wp, sp, q)):
        raise PreconditionError("invalid pair passed to the pairing engine")
    n = len(s)
    count = 0
    for v in symmetric_group(n):
        if act(v, s) == sp and perm_mul(perm_mul(v, w), perm_inv(v)) == wp:
            count += 1
    return count


# ---------------------------------------------------------------------------
# generic irreducible labels (q-stable W-orbits)

class GenericIrrepLabel:
    """q-stable W-orbit of a torus tuple; the representative is the sorted
    (lexicographically minimal) arrangement."""

    __slots__ = ("rep", "q")

    def __init__(self, s: TorusTuple, q: int):
        rep = tuple(sorted(Fraction(x) % 1 for x in s))
        if not coset(rep, q):
            raise PreconditionError("orbit is not q-stable")
        self.rep = rep
        self.q = q

    def __eq__(self, other):
        return (isinstance(other, GenericIrrepLabel)
                and self.rep == other.rep and self.q == other.q)

    def __hash__(self):
        return hash((self.rep, self.q))

    def __repr__(self):
        return f"[s={self.rep}]"


def label_of_ss_param(s: SemisimpleParam) -> GenericIrrepLabel:
    return GenericIrrepLabel(point_labels(s), s.q)


def gg_constituent_labels(n: int, q: int) -> tuple:
    """One label per q-stable orbit; the constituents of the Gelfand-Graev
    representation.  Count is q^(n-1)(q-1)."""
    return tuple(label_of_ss_param(s) for s in enumerate_ss_params(n, q))


# ---------------------------------------------------------------------------
# norms and multiplicities

def pi_norm(label: GenericIrrepLabel) -> Fraction:
    """Self-pairing of the signed coset average; equals 1 exactly when the
    average is (the class of) an irreducible representation."""
    s = label.rep
    q = label.q
    ws = stabilizer(s)
    cs = coset(s, q)
    acc = Fraction(0)
    for w in cs:
        for wp in cs:
            acc += perm_sign(w) * perm_sign(wp) * dl_pairing((w, s), (wp, s), q)
    return acc / (len(ws) ** 2)


def _tau_tuple_and_levi(tau: InertialParam):
    """Arrange the semisimple labels of tau blockwise along its Levi."""
    labs = []
    shape = []
    for orbit, part in atoms(tau):
        block = list(orbit.labels()) * part
        labs.extend(sorted(block))
        shape.append(orbit.size * part)
    return tuple(labs), tuple(shape)


def multiplicity(sigma: GenericIrrepLabel, tau: InertialParam) -> int:
    """m(sigma, tau): multiplicity of the generic class sigma in the
    parabolically induced signed average attached to tau.

    W_L-sums replace W-sums on the tau side (L the Levi of tau); the result
    is certified to be a nonnegative integer.
    """
    q = sigma.q
    if tau.q != q:
        raise PreconditionError("mixed q")
    if tau.rank != len(sigma.rep):
        raise PreconditionError("rank mismatch")
    s_tau, shape = _tau_tuple_and_levi(tau)
    WL = young_subgroup(shape)
    wl_stab = stabilizer(s_tau, WL)
    wl_coset = coset(s_tau, q, WL)
    s_sig = sigma.rep
    w_stab = stabilizer(s_sig)
    w_coset = coset(s_sig, q)
    acc = Fraction(0)
    for w in wl_coset:
        sw = perm_sign(w)
        for wp in w_coset:
            acc += sw * perm_sign(wp) * dl_pairing((w, s_tau), (wp, s_sig), q)
    acc /= len(wl_stab) * len(w_stab)
    assert acc.denominator == 1 and acc >= 0, f"non-integral multiplicity {acc}"
    return int(acc)


def cuspidal_support_pairing(label: GenericIrrepLabel) -> int:
    """<pi(s), eps(w0) R(w0, s)> for a Coxeter-type w0 in the coset; the
    single generic constituent forces the value 1.

    Requires a single-orbit discrete shape: the coset must contain an
    n-cycle.
    """
    s = label.rep
    q = label.q
    n = len(s)
    cs = coset(s, q)
    w0 = next((w for w in cs if cycle_type(w) == (n,)), None)
    if w0 is None:
        raise PreconditionError("no Coxeter-type element in the coset")
    ws = stabilizer(s)
    acc = Fraction(0)
    for w in cs:
        acc += perm_sign(w) * dl_pairing((w, s), (w0, s), q)
    acc = acc * perm_sign(w0) / len(ws)
    assert acc.denominator == 1
    return int(acc)


def gamma_pairing_with_split_series(s: TorusTuple, q: int) -> int:
    """<Gamma, R(e, s)> for a split s (fixed pointwise by q): the engine-side
    prediction to be checked against the brute-force group computation."""
    n = len(s)
    e = tuple(range(n))
    if not is_valid_pair(e, s, q):
        raise PreconditionError("s is not split (pointwise q-fixed)")
    total = Fraction(0)
    for lab in gg_constituent_labels(n, q):
        sp = lab.rep
        cs = coset(sp, q)
        acc = Fraction(0)
        for w in cs:
            acc += perm_sign(w) * dl_pairing((w, sp), (e, s), q)
        total += acc / len(stabilizer(sp))
    assert total.denominator == 1
    return int(total)


def gamma_norm(n: int, q: int) -> int:
    """<Gamma, Gamma> = sum of the norms of the constituents; the
    multiplicity-freeness surrogate equals the label count."""
    total = Fraction(0)
    for lab in gg_constituent_labels(n, q):
        total += pi_norm(lab)
    assert total.denominator == 1
    return int(total)


def multiplicity_table(n: int, q: int, taus) -> list:
    """Rows sigma (all generic labels), columns the given inertial
    parameters."""
    sigmas = gg_constituent_labels(n, q)
    return [[multiplicity(sig, tau) for tau in taus] for sig in sigmas]
