"""Pairing-engine tests: stabilizers, cosets, norms, multiplicities, signs.

The engine's split-torus values are cross-validated against the group
oracle in test_fingroup (criterion-level) and against hand computations
here; multiplicity examples follow the worked identities in the operation
contracts.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest

from tamefiber.dlcomb import (GenericIrrepLabel, act, coset,
                              cuspidal_support_pairing, cycle_type,
                              dl_pairing, gamma_norm,
                              gamma_pairing_with_split_series,
                              gg_constituent_labels, label_of_ss_param,
                              minus_one_eigenspace_dim, multiplicity,
                              multiplicity_table, perm_inv, perm_mul,
                              perm_sign, pi_norm, q_power, stabilizer,
                              symmetric_group, young_subgroup)
from tamefiber.errors import PreconditionError
from tamefiber.params import (FrobOrbit, InertialParam, enumerate_ss_params,
                              trivial_orbit)


# ---------------------------------------------------------------------------
# permutation plumbing

def test_perm_basics():
    w = (1, 2, 0)
    assert perm_mul(w, perm_inv(w)) == (0, 1, 2)
    assert perm_sign((1, 0)) == -1
    assert perm_sign((1, 2, 0)) == 1
    assert cycle_type((1, 0, 3, 2)) == (2, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sign_equals_minus_one_eigenspace_parity(n):
    for w in symmetric_group(n):
        assert perm_sign(w) == (-1) ** minus_one_eigenspace_dim(w)


def test_young_subgroup():
    W = young_subgroup((2, 1))
    assert len(W) == 2
    assert all(w[2] == 2 for w in W)
    assert len(young_subgroup((1, 1, 1))) == 1
    assert len(young_subgroup((3,))) == 6


# ---------------------------------------------------------------------------
# stabilizers and cosets

def test_stabilizer_and_coset_examples():
    s = (Fraction(0), Fraction(0))
    assert len(stabilizer(s)) == 2 and len(coset(s, 3)) == 2
    sz = (Fraction(1, 3), Fraction(2, 3))
    assert stabilizer(sz) == ((0, 1),)
    assert coset(sz, 2) == ((1, 0),)
    sm = (Fraction(0), Fraction(1, 2))
    assert stabilizer(sm) == ((0, 1),)
    assert coset(sm, 3) == ((0, 1),)


def test_coset_is_stabilizer_coset():
    for s in [(Fraction(0), Fraction(0), Fraction(0)),
              (Fraction(1, 7), Fraction(2, 7), Fraction(4, 7))]:
        W_s = set(stabilizer(s))
        cs = coset(s, 2)
        if cs:
            w0 = cs[0]
            assert set(cs) == {perm_mul(w0, v) for v in W_s}
        # W(s) = W(s^q)
        assert set(stabilizer(q_power(s, 2))) == W_s


# ---------------------------------------------------------------------------
# pairing values

def test_pairing_full_weyl():
    s = (Fraction(0),) * 3
    e = (0, 1, 2)
    assert dl_pairing((e, s), (e, s), 2) == 6  # |W| = 3!


def test_pairing_diagonal_stabilizer_count():
    sz = (Fraction(1, 3), Fraction(2, 3))
    w = (1, 0)
    # |Z_W(w) n W(s)| = 1
    assert dl_pairing((w, sz), (w, sz), 2) == 1


def test_pairing_conjugacy_mismatch_vanishes():
    sm = (Fraction(0), Fraction(1, 2))
    e, w = (0, 1), (1, 0)
    # w is not defined against sm for q=3 unless in the coset; e is
    assert dl_pairing((e, sm), (e, sm), 3) == 1
    with pytest.raises(PreconditionError):
        dl_pairing((w, sm), (e, sm), 3)  # (w, sm) violates the orientation


def test_pairing_symmetry():
    s = (Fraction(0), Fraction(0))
    cs = coset(s, 3)
    for w in cs:
        for wp in cs:
            assert (dl_pairing((w, s), (wp, s), 3)
                    == dl_pairing((wp, s), (w, s), 3))


def test_pairing_orthogonality_across_classes():
    # distinct q-stable orbits pair to zero through the signed averages
    labels = gg_constituent_labels(2, 3)
    for la in labels:
        for lb in labels:
            if la == lb:
                continue
            acc = Fraction(0)
            for w in coset(la.rep, 3):
                for wp in coset(lb.rep, 3):
                    acc += (perm_sign(w) * perm_sign(wp)
                            * dl_pairing((w, la.rep), (wp, lb.rep), 3))
            assert acc == 0


# ---------------------------------------------------------------------------
# norms

@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)])
def test_pi_norm_one(n, q):
    for lab in gg_constituent_labels(n, q):
        assert pi_norm(lab) == 1


def test_pi_norm_hand_computation():
    # s = (1,1), q = 3: (1/4)(2 - 0 - 0 + 2) = 1
    lab = GenericIrrepLabel((Fraction(0), Fraction(0)), 3)
    assert pi_norm(lab) == 1


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_gamma_norm(n, q):
    assert gamma_norm(n, q) == q ** (n - 1) * (q - 1)


# ---------------------------------------------------------------------------
# labels

@pytest.mark.parametrize("n,q,count", [(2, 2, 2), (2, 3, 6), (1, 4, 3),
                                       (1, 5, 4), (3, 2, 4)])
def test_label_count(n, q, count):
    labels = gg_constituent_labels(n, q)
    assert len(labels) == count
    assert len(set(labels)) == count


def test_labels_are_orbit_minima():
    for lab in gg_constituent_labels(2, 3):
        s = lab.rep
        for w in symmetric_group(2):
            assert s <= act(w, s)


# ---------------------------------------------------------------------------
# multiplicities

def test_multiplicity_examples():
    o1 = trivial_orbit(3)
    sig = GenericIrrepLabel((Fraction(0), Fraction(0)), 3)
    assert multiplicity(sig, InertialParam.make([(o1, (2,))], 3)) == 1
    assert multiplicity(sig, InertialParam.make([(o1, (1, 1))], 3)) == 1
    sz = GenericIrrepLabel((Fraction(1, 3), Fraction(2, 3)), 2)
    tau_triv = InertialParam.make([(trivial_orbit(2), (1, 1))], 2)
    assert multiplicity(sz, tau_triv) == 0


def test_multiplicity_rank_guard():
    o1 = trivial_orbit(3)
    sig = GenericIrrepLabel((Fraction(0),), 3)
    with pytest.raises(PreconditionError):
        multiplicity(sig, InertialParam.make([(o1, (2,))], 3))


def test_multiplicity_table_identity_for_block_regular():
    # the fiber components of the (q=3, ell=2) model pair off with the
    # generic labels one to one
    from tamefiber.bmcheck import regular_in_centralizer
    taus = [regular_in_centralizer(s) for s in enumerate_ss_params(2, 3)]
    table = multiplicity_table(2, 3, taus)
    size = len(taus)
    assert table == [[1 if i == j else 0 for j in range(size)]
                     for i in range(size)]


def test_multiplicity_principal_series_contains_every_split_generic():
    # Ind from the torus of the theta attached to s contains pi(s) once
    for s in enumerate_ss_params(2, 3):
        if any(o.size > 1 for o, _ in s.pairs):
            continue
        from tamefiber.params import inflate_semisimple
        tau = inflate_semisimple(s)
        sig = label_of_ss_param(s)
        assert multiplicity(sig, tau) == 1


# ---------------------------------------------------------------------------
# cuspidal support

def test_cuspidal_support_examples():
    assert cuspidal_support_pairing(
        GenericIrrepLabel((Fraction(1, 3), Fraction(2, 3)), 2)) == 1
    assert cuspidal_support_pairing(
        GenericIrrepLabel((Fraction(0), Fraction(0)), 3)) == 1
    assert cuspidal_support_pairing(
        GenericIrrepLabel((Fraction(1, 7), Fraction(2, 7), Fraction(4, 7)),
                          2)) == 1


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)])
def test_cuspidal_support_all_discrete_shapes(n, q):
    for s in enumerate_ss_params(n, q):
        if len(s.pairs) == 1:  # single orbit: the discrete-shape classes
            lab = label_of_ss_param(s)
            assert cuspidal_support_pairing(lab) == 1


# ---------------------------------------------------------------------------
# engine-side Gamma pairings

def test_gamma_vs_split_series():
    assert gamma_pairing_with_split_series((Fraction(0), Fraction(0)), 2) == 1
    assert gamma_pairing_with_split_series((Fraction(0), Fraction(1, 2)), 3) == 1
    for j in range(2):
        for k in range(2):
            s = (Fraction(j, 2), Fraction(k, 2))
            assert gamma_pairing_with_split_series(tuple(sorted(s)), 3) == 1
