"""Kernel tests: rings, fields, cyclotomics, artinian rings, matrices, Hensel.

Expected values tagged by their origin: trivial identities are asserted
directly; derived values are computed by an independent oracle inside the
test (permutation-expansion determinants, exhaustive lift searches,
multiply-back round trips) and frozen here.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamefiber.errors import CoprimalityError, NonUnitError
from tamefiber.exactalg import (GF, QQ, ZZ, ArtinElem, CycNum, Mat, Poly,
                                Rme, Zmod, cyclotomic_polynomial, diag, embed,
                                fl_t, hensel_factor_lift, jordan_block,
                                poly_gcd, prime_power, unramified, valuation,
                                zl_mod, zl_t)


# ---------------------------------------------------------------------------
# independent oracle: determinant of X*I - M via the Leibniz permutation sum

def leibniz_char_poly(M: Mat) -> Poly:
    ring = M.ring
    n = M.nrows
    acc = Poly(ring, [])
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = Poly(ring, [ring.one()])
        for i in range(n):
            c = -M[i, perm[i]]
            if i == perm[i]:
                term = term * Poly(ring, [c, ring.one()])
            else:
                term = term * Poly(ring, [c])
        acc = acc + term if sign > 0 else acc - term
    return acc


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# base rings

def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(5) == (5, 1)
    with pytest.raises(ValueError):
        prime_power(12)


def test_valuation():
    assert valuation(24, 2) == 3
    assert valuation(24, 3) == 1
    assert valuation(5, 2) == 0


@given(st.integers(0, 59), st.integers(0, 59), st.integers(0, 59))
def test_residue_ring_axioms(a, b, c):
    R = Zmod(60)
    x, y, z = R.from_int(a), R.from_int(b), R.from_int(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x


def test_residue_inverse():
    R = Zmod(8)
    assert R.inv(R.from_int(3)) == R.from_int(3)
    with pytest.raises(NonUnitError):
        R.inv(R.from_int(2))


# ---------------------------------------------------------------------------
# finite fields

@pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2),
                                 (5, 1), (7, 1), (2, 4)])
def test_field_axioms_and_frobenius(p, e):
    F = GF(p, e)
    els = F.elements()
    # exhaustive on small fields, sampled on larger ones
    sample = els if len(els) <= 9 else els[:6] + els[-3:]
    for x in sample:
        for y in sample:
            assert x * y == y * x
            assert (x + y) ** p == x ** p + y ** p  # Frobenius is additive
    g = F.generator()
    assert F.element_order(g) == p ** e - 1


def test_field_defining_poly_is_lowest():
    # F_4: X^2 + X + 1 is the only irreducible quadratic over F_2
    assert GF(2, 2).defining == (1, 1)
    # F_9: candidates ordered by (a_1, a_0): X^2+1 reducible? (-1 is a QR mod 3?
    # X^2+1 has no root mod 3 since -1 is not a square mod 3 -> irreducible.
    assert GF(3, 2).defining == (1, 0)


def test_field_embedding():
    F2 = GF(2, 1)
    F4 = GF(2, 2)
    phi = embed(F2, F4)
    assert phi(F2.one()) == F4.one()
    F16 = GF(2, 4)
    psi = embed(F4, F16)
    z3 = F4.root_of_unity(3)
    assert F16.element_order(psi(z3)) == 3
    assert psi(z3 * z3) == psi(z3) * psi(z3)


# ---------------------------------------------------------------------------
# cyclotomic numbers

@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 12])
def test_zeta_order(m):
    z = CycNum.zeta(m)
    assert z ** m == CycNum.one()
    for k in range(1, m):
        assert z ** k != CycNum.one() or m == 1


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_conjugation_realness():
    # conj(x)*x is fixed by conjugation (no imaginary part)
    rng = random.Random(7)
    for _ in range(25):
        m = rng.choice([3, 4, 5, 8, 12])
        coeffs = tuple(Fraction(rng.randrange(-3, 4), rng.randrange(1, 3))
                       for _ in range(len(cyclotomic_polynomial(m)) - 1))
        x = CycNum(m, coeffs)
        y = x * x.conj()
        assert y.conj() == y


def test_mixed_conductor_arithmetic():
    assert CycNum.zeta(2) * CycNum.zeta(3) == CycNum.zeta(6, 5)
    assert CycNum.zeta(4) ** 2 == CycNum.from_rational(-1)
    s = CycNum.zeta(5) + CycNum.zeta(5, 2) + CycNum.zeta(5, 3) + CycNum.zeta(5, 4)
    assert s == CycNum.from_rational(-1)


def test_cyclotomic_inverse_roundtrip():
    rng = random.Random(11)
    for _ in range(20):
        m = rng.choice([3, 4, 8, 12])
        coeffs = tuple(Fraction(rng.randrange(-2, 3)) for _ in
                       range(len(cyclotomic_polynomial(m)) - 1))
        x = CycNum(m, coeffs)
        if x:
            assert x * x.inv() == CycNum.one()


def test_from_label():
    assert CycNum.from_label(Fraction(1, 2)) == CycNum.from_rational(-1)
    assert CycNum.from_label(Fraction(0)) == CycNum.one()
    assert CycNum.from_label(Fraction(5, 3)) == CycNum.zeta(3, 2)


# ---------------------------------------------------------------------------
# artinian local rings

ARTIN_RINGS = [zl_mod(2, 3), zl_mod(3, 2), fl_t(2, 1, 2), fl_t(2, 1, 3),
               fl_t(2, 2, 2), zl_t(2, 2, 2), unramified(2, 2, 2), fl_t(7, 1, 2)]


@pytest.mark.parametrize("A", ARTIN_RINGS, ids=lambda A: A.name)
def test_artin_units_and_inverses(A):
    for x in A.elements():
        if A.is_unit(x):
            assert x * A.inv(x) == A.one()
        else:
            # non-units are nilpotent in an artinian local ring
            y, k = x, 1
            while y and k < A.size + 1:
                y, k = y * x, k + 1
            assert not y


@pytest.mark.parametrize("A", ARTIN_RINGS, ids=lambda A: A.name)
def test_artin_axioms_random(A):
    rng = random.Random(5)
    els = A.elements()
    for _ in range(40):
        x, y, z = (els[rng.randrange(len(els))] for _ in range(3))
        assert (x + y) * z == x * z + y * z
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x


def test_galois_ring_contains_cube_root():
    A = unramified(2, 2, 2)  # residue field F_4
    roots = [x for x in A.elements() if x * x * x == A.one() and x != A.one()]
    assert len(roots) == 2  # the two primitive cube roots (Teichmueller lifts)


# ---------------------------------------------------------------------------
# matrices: char_poly against the permutation-expansion oracle

def test_char_poly_identity():
    cp = Mat.identity(ZZ, 2).char_poly()
    assert cp.coeffs == (1, -2, 1)  # X^2 - 2X + 1


def test_char_poly_jordan_f2():
    F2 = GF(2)
    cp = jordan_block(F2, 2, F2.one()).char_poly()
    assert [c.int_value() for c in cp.coeffs] == [1, 0, 1]  # X^2 + 1 = (X-1)^2


def test_char_poly_companion_oracle():
    # companion matrix of X^2 - X - 1; oracle = Leibniz permutation expansion
    M = Mat.from_int_rows(ZZ, [[0, 1], [1, 1]])
    expected = leibniz_char_poly(M)
    assert expected.coeffs == (-1, -1, 1)
    assert M.char_poly() == expected


def test_char_poly_random_vs_oracle():
    rng = random.Random(3)
    for n in (2, 3, 4):
        for _ in range(8):
            M = Mat.from_int_rows(ZZ, [[rng.randrange(-4, 5) for _ in range(n)]
                                       for _ in range(n)])
            assert M.char_poly() == leibniz_char_poly(M)
    R = Zmod(9)
    for _ in range(8):
        M = Mat.from_int_rows(R, [[rng.randrange(9) for _ in range(3)]
                                  for _ in range(3)])
        assert M.char_poly() == leibniz_char_poly(M)


def test_char_poly_rejects_non_square():
    M = Mat.from_int_rows(ZZ, [[1, 2, 3], [4, 5, 6]])
    with pytest.raises(AssertionError):
        M.char_poly()


# ---------------------------------------------------------------------------
# matrix inversion

def test_invert_identity():
    I3 = Mat.identity(ZZ, 3)
    assert I3.inv() == I3


def test_invert_square_zero_geometric_series():
    # (1 + tN)^(-1) = 1 - tN over F_l[t]/(t^2)
    A = fl_t(3, 1, 2)
    t = ArtinElem(A, (0, 1))
    N = Mat.from_int_rows(A, [[2, 1], [1, 0]])
    tN = N.scale(t)
    M = Mat.identity(A, 2) + tN
    assert M.inv() == Mat.identity(A, 2) - tN


def test_invert_random_units_mod8():
    # round-trip oracle: invert(M) * M == I, 1000 random unit matrices
    R = Zmod(8)
    rng = random.Random(17)
    count = 0
    while count < 1000:
        M = Mat.from_int_rows(R, [[rng.randrange(8) for _ in range(2)]
                                  for _ in range(2)])
        if R.is_unit(M.det()):
            assert M.inv() * M == Mat.identity(R, 2)
            count += 1


def test_invert_signals_non_unit():
    R = Zmod(8)
    M = Mat.from_int_rows(R, [[2, 0], [0, 1]])
    with pytest.raises(NonUnitError):
        M.inv()


def test_invert_over_artin_rings():
    rng = random.Random(23)
    for A in (fl_t(2, 1, 3), unramified(2, 2, 2)):
        els = A.elements()
        count = 0
        while count < 100:
            M = Mat(A, [[els[rng.randrange(len(els))] for _ in range(2)]
                        for _ in range(2)])
            if A.is_unit(M.det()):
                assert M * M.inv() == Mat.identity(A, 2)
                count += 1


# ---------------------------------------------------------------------------
# Hensel factor lifting

def test_hensel_trivial_maximal_ideal():
    # over a field (m = 0) the input factors come back unchanged
    A = fl_t(5, 1, 1)
    k = A.residue_field
    f1 = Poly.from_int_coeffs(k, [1, 1])
    f2 = Poly.from_int_coeffs(k, [2, 1])
    P = (f1 * f2).map_coeffs(A, A.section)
    out = hensel_factor_lift(P, [f1, f2])
    assert [f.map_coeffs(k, A.residue) for f in out] == [f1, f2]


def test_hensel_x2_minus_1_mod9():
    # X^2 - 1 over Z/9 with residue factors (X-1)(X+1) mod 3; check by expansion
    A = zl_mod(3, 2)
    k = A.residue_field
    P = Poly.from_int_coeffs(A, [-1, 0, 1])
    out = hensel_factor_lift(P, [Poly.from_int_coeffs(k, [-1, 1]),
                                 Poly.from_int_coeffs(k, [1, 1])])
    assert out[0] * out[1] == P
    assert out[0] == Poly.from_int_coeffs(A, [-1, 1])
    assert out[1] == Poly.from_int_coeffs(A, [1, 1])


def test_hensel_mod4_expected_coprimality_failure():
    # (X-1) and (X+1) coincide mod 2, so the lift must be refused
    A = zl_mod(2, 2)
    k = A.residue_field
    P = Poly.from_int_coeffs(A, [-1, 0, 1])
    with pytest.raises(CoprimalityError):
        hensel_factor_lift(P, [Poly.from_int_coeffs(k, [-1, 1]),
                               Poly.from_int_coeffs(k, [1, 1])])


def test_hensel_cubic_uniqueness_by_exhaustion():
    # cubic over F_2[t]/(t^3) splitting as (linear)(quadratic) mod t;
    # oracle: exhaustive search over all lift coefficients
    A = fl_t(2, 1, 3)
    k = A.residue_field
    t = ArtinElem(A, (0, 1, 0))
    one = A.one()
    lin = Poly(A, [one + t, one])
    quad = Poly(A, [one, one + t * t, one])
    P = lin * quad
    lbar = Poly.from_int_coeffs(k, [1, 1])
    qbar = Poly.from_int_coeffs(k, [1, 1, 1])
    out = hensel_factor_lift(P, [lbar, qbar])
    assert out[0] * out[1] == P

    found = []
    for c0 in A.elements():
        for d0 in A.elements():
            for d1 in A.elements():
                f = Poly(A, [c0, one])
                g = Poly(A, [d0, d1, one])
                if (f * g == P
                        and f.map_coeffs(k, A.residue) == lbar
                        and g.map_coeffs(k, A.residue) == qbar):
                    found.append((f, g))
    assert found == [(out[0], out[1])]  # unique, and it is ours


def test_hensel_output_expands_bit_exactly():
    rng = random.Random(29)
    A = zl_mod(3, 3)
    k = A.residue_field
    for _ in range(10):
        f = Poly(A, [A.from_int(rng.randrange(27)), A.one()])
        g = Poly(A, [A.from_int(1 + rng.randrange(2)), A.from_int(rng.randrange(27)),
                     A.one()])
        fb, gb = f.map_coeffs(k, A.residue), g.map_coeffs(k, A.residue)
        if poly_gcd(fb, gb).degree != 0:
            continue
        P = f * g
        out = hensel_factor_lift(P, [fb, gb])
        prod = out[0] * out[1]
        assert prod == P
        assert out[0] == f and out[1] == g  # uniqueness forces both back
