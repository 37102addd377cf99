"""Deformation tests: point enumeration, Hensel diagonalization, the
regular-unipotent normalization bijection, degree-d equivalence, and the
formal-smoothness probes.  Everything here runs exhaustively over tiny
artinian rings, so the counts are their own oracles."""

from __future__ import annotations

import random

import pytest

from tamefiber.defmod import (DEFAULT_BUDGET, ProbeReport, SquareZeroExtension,
                              WeilPoint, char_I, check_phi_in_levi_forces_sigma,
                              companion_normalize, degree_d_extend,
                              degree_d_restrict, ell_truncation,
                              enumerate_points, hensel_diagonalize,
                              normalized_points, phi_reconstruct,
                              q_conjugator_block_check, root_poly,
                              smoothness_probe, t_truncation, z_points)
from tamefiber.errors import BudgetError, PreconditionError
from tamefiber.exactalg import (GF, ArtinElem, Mat, diag, fl_t, jordan_block,
                                unramified, zl_mod)

F2 = GF(2)
RHO_BAR = (jordan_block(F2, 2, F2.one()), Mat.identity(F2, 2))


def A22():
    return fl_t(2, 1, 2)


def A23():
    return fl_t(2, 1, 3)


# ---------------------------------------------------------------------------
# enumeration

def test_enumerate_over_field_is_single_point():
    A = fl_t(2, 1, 1)
    sbar = jordan_block(A.residue_field, 2, A.residue_field.one())
    pbar = Mat.identity(A.residue_field, 2)
    pts = enumerate_points(A, 2, 3, (sbar, pbar))
    assert len(pts) == 1


def test_enumerate_n1_unit_pairs():
    # rank 1 is abelian: points are pairs (u, v) of units with u^(q-1) = 1
    A = fl_t(7, 1, 2)
    F7 = A.residue_field
    q = 3
    pts = []
    for ubar in F7.elements():
        if not ubar:
            continue
        for vbar in F7.elements():
            if not vbar:
                continue
            pts.extend(enumerate_points(A, 1, q, (Mat(F7, [[ubar]]),
                                                  Mat(F7, [[vbar]]))))
    units = [u for u in A.elements() if A.is_unit(u)]
    direct = [(u, v) for u in units for v in units
              if u ** (q - 1) == A.one()]
    assert len(pts) == len(direct)


def test_enumerate_budget_guard():
    A = unramified(2, 2, 2)
    sbar = jordan_block(A.residue_field, 2, A.residue_field.one())
    pbar = Mat.identity(A.residue_field, 2)
    with pytest.raises(BudgetError):
        enumerate_points(A, 2, 3, (sbar, pbar), budget=10)


def test_enumerate_count_q3_l2():
    pts = enumerate_points(A22(), 2, 3, RHO_BAR)
    assert len(pts) == 64
    texts = {(p.Sigma.rows, p.Phi.rows) for p in pts}
    assert len(texts) == 64


# ---------------------------------------------------------------------------
# char_I

def test_char_I_identity():
    A = A22()
    n = 3
    F = A.residue_field
    ident_bar = Mat.identity(F, n)
    pt = WeilPoint(A, Mat.identity(A, n), Mat.identity(A, n), n, 2)
    es = char_I(pt)
    assert [e.coords[0] for e in es] == [3 % 2, 3 % 2, 1]  # binomials mod 2


def test_char_I_qfixed_for_all_points():
    A = A22()
    for pt in enumerate_points(A, 2, 3, RHO_BAR):
        char_I(pt)  # asserts char(Sigma^q) = char(Sigma) internally


# ---------------------------------------------------------------------------
# Hensel diagonalization

def test_hensel_diagonalize_trivial():
    A = fl_t(3, 1, 1)  # field: m = 0
    g = diag(A, [A.from_int(1), A.from_int(2)])
    delta, gamma = hensel_diagonalize(g, (1, 1))
    assert gamma == Mat.identity(A, 2)
    assert delta == g


def test_hensel_diagonalize_z9():
    A = zl_mod(3, 2)
    g = Mat.from_int_rows(A, [[1, 3], [6, 2]])
    delta, gamma = hensel_diagonalize(g, (1, 1))
    assert gamma.inv() * g * gamma == delta
    assert delta.is_block_diagonal((1, 1))
    assert delta == diag(A, [A.from_int(1), A.from_int(2)])
    kf = A.residue_field
    assert gamma.map(kf, A.residue) == Mat.identity(kf, 2)


def test_hensel_diagonalize_coprimality_guard():
    A = zl_mod(3, 2)
    g = Mat.from_int_rows(A, [[1, 3], [3, 1]])  # residue diag(1,1)
    with pytest.raises(Exception):
        hensel_diagonalize(g, (1, 1))


def test_q_conjugators_stay_in_levi():
    A = zl_mod(3, 2)
    g = Mat.from_int_rows(A, [[1, 3], [6, 2]])
    delta, _ = hensel_diagonalize(g, (1, 1))
    count = q_conjugator_block_check(delta, (1, 1), 7)
    assert count > 0  # nonempty, and every one of them block-diagonal


def test_q_conjugator_requires_block_input():
    A = zl_mod(3, 2)
    g = Mat.from_int_rows(A, [[1, 3], [6, 2]])
    with pytest.raises(PreconditionError):
        q_conjugator_block_check(g, (1, 1), 7)


# ---------------------------------------------------------------------------
# normalization bijection (criterion-5 material)

def test_companion_normalize_trivial_shape():
    A = A22()
    zs = z_points(A, 2, 3)
    npts = normalized_points(A, 2, 3, RHO_BAR[1])
    for pt in npts:
        roots = tuple(pt.Sigma[i, i] for i in range(2))
        out, gamma = companion_normalize(pt, roots)
        assert gamma == Mat.identity(A, 2)
        assert out.Sigma == pt.Sigma and out.Phi == pt.Phi


def test_companion_roundtrip_exhaustive():
    A = A22()
    pts = enumerate_points(A, 2, 3, RHO_BAR)
    zs = z_points(A, 2, 3)
    pairs = 0
    for pt in pts:
        cp = pt.Sigma.char_poly()
        for z in zs:
            if root_poly(A, z) != cp:
                continue
            pairs += 1
            out, gamma = companion_normalize(pt, z)
            # gamma is in the completed mirabolic: it fixes e_n exactly
            assert gamma.column(1) == (A.zero(), A.one())
            # superdiagonal entry of the normalized Sigma is a unit
            assert A.is_unit(out.Sigma[0, 1])
            v = out.Phi.column(1)
            assert phi_reconstruct(A, z, v, 3) == out.Phi
    # |Y x P| = |normalized locus| x |mirabolic points|
    assert pairs == 64


def test_normalized_locus_bijection_count():
    A = A22()
    npts = normalized_points(A, 2, 3, RHO_BAR[1])
    zs = z_points(A, 2, 3)
    assert len(zs) == 4
    assert len(npts) == len(zs) * len(A.maximal_ideal_elements()) ** 2  # 16
    assert len({(p.Sigma.rows, p.Phi.rows) for p in npts}) == len(npts)


def test_companion_precondition_guards():
    A = A22()
    pts = enumerate_points(A, 2, 3, RHO_BAR)
    pt = pts[0]
    with pytest.raises(PreconditionError):
        companion_normalize(pt, (A.one(), A.one(), A.one()))  # wrong length
    bad = tuple(A.from_int(0) for _ in range(2))
    with pytest.raises(PreconditionError):
        companion_normalize(pt, bad)  # roots not in 1 + m


def test_cayley_hamilton_tail():
    # Sigma f_1 = a_1 f_1 exactly: the product of (Sigma - a_i) annihilates
    A = A22()
    for pt in normalized_points(A, 2, 3, RHO_BAR[1]):
        roots = tuple(pt.Sigma[i, i] for i in range(2))
        acc = Mat.identity(A, 2)
        for a in roots:
            acc = acc * (pt.Sigma - Mat.identity(A, 2).scale(a))
        assert not any(any(x for x in row) for row in acc.rows)


# ---------------------------------------------------------------------------
# degree-d restriction

def _sample_degree_d_point(rng, A7, s1):
    units = [x for x in A7.elements() if A7.is_unit(x)]
    psi0 = units[rng.randrange(len(units))]
    psi1 = units[rng.randrange(len(units))]
    Sigma = Mat(A7, [[s1, A7.zero()], [A7.zero(), s1 * s1]])
    Phi = Mat(A7, [[A7.zero(), psi1], [psi0, A7.zero()]])
    return WeilPoint(A7, Sigma, Phi, 2, 2)


def test_degree_one_is_identity():
    A = A22()
    for pt in normalized_points(A, 2, 3, RHO_BAR[1])[:4]:
        small, tail = degree_d_restrict(pt, 2, 1)
        assert small.Sigma == pt.Sigma and small.Phi == pt.Phi and tail == []
        back = degree_d_extend(small, tail, 3, 1)
        assert back.Sigma == pt.Sigma and back.Phi == pt.Phi


def test_degree_d_roundtrip_seeded():
    F7 = GF(7)
    A7 = fl_t(7, 1, 2)
    s1 = A7.section(F7.root_of_unity(3))
    rng = random.Random(1234)
    for _ in range(1000):
        pt = _sample_degree_d_point(rng, A7, s1)
        small, tail = degree_d_restrict(pt, 1, 2)
        back = degree_d_extend(small, tail, 2, 2)
        assert back.Sigma == pt.Sigma and back.Phi == pt.Phi
        small2, tail2 = degree_d_restrict(back, 1, 2)
        assert (small2.Sigma, small2.Phi, tail2) == (small.Sigma, small.Phi,
                                                     tail)


def test_degree_d_phi_power_identity():
    # (Phi^d)_00 = Psi_1 ... Psi_(d-1) Psi_0, asserted inside restrict
    F7 = GF(7)
    A7 = fl_t(7, 1, 2)
    s1 = A7.section(F7.root_of_unity(3))
    rng = random.Random(99)
    pt = _sample_degree_d_point(rng, A7, s1)
    small, tail = degree_d_restrict(pt, 1, 2)
    assert small.q == 4  # the subgroup sees q^d


def test_degree_d_shape_guard():
    A = A22()
    pts = enumerate_points(A, 2, 3, RHO_BAR)
    with pytest.raises(PreconditionError):
        degree_d_restrict(pts[0], 1, 2)  # Sigma not block diagonal


# ---------------------------------------------------------------------------
# probes

def test_square_zero_extension_validation():
    ext = t_truncation(A23(), A22(), 1)
    assert len(ext.kernel) == 2
    ext2 = ell_truncation(zl_mod(2, 2), zl_mod(2, 1))
    assert len(ext2.kernel) == 2
    with pytest.raises(AssertionError):
        t_truncation(fl_t(2, 1, 4), fl_t(2, 1, 2), 1)  # not square-zero


def test_probe_full_uniform_16():
    ext = t_truncation(A23(), A22(), 1)
    rep = smoothness_probe("full", ext, RHO_BAR, 2, 3)
    assert rep.predicted == 16
    assert rep.passed
    assert rep.pairs > 0


def test_probe_normalized_uniform_4():
    ext = t_truncation(A23(), A22(), 1)
    rep = smoothness_probe("normalized", ext, RHO_BAR, 2, 3)
    assert rep.predicted == 4
    assert rep.passed


def test_probe_n1_torus():
    # rank one: relative dimension 1, uniform |kernel| lifts
    F2l = GF(2)
    ext = t_truncation(A23(), A22(), 1)
    rho = (Mat.identity(F2l, 1), Mat.identity(F2l, 1))
    rep = smoothness_probe("full", ext, rho, 1, 3)
    assert rep.predicted == 2
    assert rep.passed


def test_phi_in_levi_forces_sigma_split_case():
    # residue field F_4, rho_bar = (I, diag(1, w)), proper Levi (1,1)
    A = fl_t(2, 2, 2)
    F4 = A.residue_field
    w = F4.root_of_unity(3)
    sbar = Mat.identity(F4, 2)
    pbar = diag(F4, [F4.one(), w])
    checked = check_phi_in_levi_forces_sigma(A, 2, 3, (sbar, pbar), (1, 1))
    assert checked > 0


def test_phi_in_levi_probe():
    # the Phi-in-Levi locus probe at the same split point
    A3 = fl_t(2, 2, 3)
    A2 = fl_t(2, 2, 2)
    ext = t_truncation(A3, A2, 2)
    F4 = A2.residue_field
    w = F4.root_of_unity(3)
    rho = (Mat.identity(F4, 2), diag(F4, [F4.one(), w]))
    rep = smoothness_probe("phi_in_levi", ext, rho, 2, 3, shape=(1, 1))
    assert rep.predicted == len(ext.kernel) ** 2
    assert rep.passed
