"""The local commuting-square verifier.

At a completed local model attached to an f-distinguished residual point,
the characteristic-zero components are indexed by the fiber of the mod-ell
reduction over the residual semisimple parameter, each carrying the
discrete-as-possible inertial parameter (one Jordan block of maximal size
per orbit-with-multiplicity); the special fibre has a single component.
The cycle of a generic class lists its multiplicities in the induced
signed averages over the fiber; reduction sums coefficients.  The
independent oracle computes the same number as an intertwiner dimension
against the (Levi-induced) Gelfand-Graev module, over the characteristic
zero field, over a truncation of its integers, and over the residue field
for two different lattices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExhaustionError, PreconditionError
from .exactalg import CycNum, unramified
from .dlcomb import GenericIrrepLabel, gg_constituent_labels, label_of_ss_param, multiplicity
from .fingroup import (borel_character_from_torus, character_inner_product,
                       fq_group, gelfand_graev_module, hom_dim_field,
                       hom_module_invariants, induced_character,
                       principal_series_module, proper_submodule,
                       reduce_module, second_lattice_reduction, torus_characters)
from .params import (FrobOrbit, InertialParam, SemisimpleParam, fiber,
                     inflate_semisimple, levi_of, make_f_distinguished_auto,
                     min_large_f, reduce_mod_ell)

from fractions import Fraction


@dataclass(frozen=True)
class CycleVector:
    """Integer coefficients over an ordered list of component labels."""

    labels: tuple  # component keys (parameter text), canonical order
    coeffs: tuple

    def __post_init__(self):
        assert len(self.labels) == len(self.coeffs)

    def total(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True)
class LocalModel:
    n: int
    q: int
    ell: int
    f: int
    tau_bar: InertialParam
    s_bar: SemisimpleParam
    levi: tuple
    fiber_params: tuple       # characteristic-zero semisimple parameters
    fiber_taus: tuple         # the attached inertial parameters tau_[s]
    rho_bar: tuple            # (Sigma, Phi) over the constructed field

    def component_labels(self) -> tuple:
        return tuple(s.text() for s in self.fiber_params)


def regular_in_centralizer(s: SemisimpleParam) -> InertialParam:
    """One Jordan block of maximal size per orbit-with-multiplicity."""
    return InertialParam.make([(o, (k,)) for o, k in s.pairs], s.q)


def build_local_model(tau_bar: InertialParam, ell: int, f: int | None = None,
                      e_start: int = 1) -> LocalModel:
    n = tau_bar.rank
    q = tau_bar.q
    if f is None:
        f = min_large_f(n, q, ell)
    Sigma, Phi, shape, _ = make_f_distinguished_auto(tau_bar, f, ell, e_start)
    s_bar = reduce_mod_ell(tau_bar.semisimple_part(), ell)
    fib = fiber(s_bar, n, q, ell)
    taus = tuple(regular_in_centralizer(s) for s in fib)
    for t in taus:
        for orbit, lam in t.pairs:
            assert len(lam) == 1, "fiber parameter is not block-regular"
    return LocalModel(n, q, ell, f, tau_bar, s_bar, levi_of(tau_bar), fib,
                      taus, (Sigma, Phi))


# ---------------------------------------------------------------------------
# cycles

def cyc(sigma: GenericIrrepLabel, model: LocalModel) -> CycleVector:
    """Multiplicities of sigma over the model's fiber components."""
    coeffs = []
    for tau in model.fiber_taus:
        m = multiplicity(sigma, tau)
        assert m >= 0
        coeffs.append(m)
    return CycleVector(model.component_labels(), tuple(coeffs))


def red_cycles(v: CycleVector) -> int:
    """The special fibre has a single component; reduction sums."""
    return v.total()


def bar_cyc_fiber(sigma: GenericIrrepLabel, model: LocalModel) -> int:
    """The fiber sum, computed directly; red_cycles(cyc(...)) must agree."""
    total = sum(multiplicity(sigma, tau) for tau in model.fiber_taus)
    assert total == red_cycles(cyc(sigma, model)), \
        "the two reduction paths disagree"
    return total


# ---------------------------------------------------------------------------
# the intertwiner-dimension oracle

def _theta_label_param(G, exponents, q: int) -> SemisimpleParam:
    """The semisimple parameter of the split-torus character with the given
    exponent tuple: labels k_i/(q-1)."""
    pairs = []
    for k in exponents:
        lab = Fraction(k % (q - 1), q - 1) if q > 2 else Fraction(0)
        pairs.append((FrobOrbit.of_label(lab, q), 1))
    return SemisimpleParam.make(pairs, q)


@dataclass(frozen=True)
class OracleReport:
    theta: tuple
    in_block: bool
    dim_char_zero: int
    rank_truncation: int
    dim_residue_lattice1: int
    dim_residue_lattice2: int
    lattice2_distinct: bool

    @property
    def value(self) -> int:
        return self.dim_char_zero if self.in_block else 0

    @property
    def consistent(self) -> bool:
        return (self.dim_char_zero == self.rank_truncation
                == self.dim_residue_lattice1 == self.dim_residue_lattice2)


def theta_dim_oracle(theta_exponents: tuple, model: LocalModel,
                     a: int = 2) -> OracleReport:
    """Intertwiner dimensions of a principal-series module against the
    Levi-induced Gelfand-Graev module, over the characteristic-zero field
    (character inner product), over the length-a truncation (rank profile),
    and over the residue field for two lattices.

    The block restriction is by cuspidal-support label matching: the
    oracle value counts only when the mod-ell label of theta equals the
    model's residual parameter.
    """
    n, q, ell = model.n, model.q, model.ell
    G = fq_group(n, q)
    U = G.unipotent_radical()
    shape = model.levi

    # characteristic zero, by exact cyclotomic characters
    gamma_chi = induced_character(
        G, U, lambda u: CycNum.zeta(G.p, G.psi_exponent(u, shape)))
    theta_fns = dict((ks, fn) for ks, fn in torus_characters(G))
    key = tuple(k % max(q - 1, 1) for k in theta_exponents)
    if key not in theta_fns:
        raise PreconditionError("unknown torus character")
    ps_chi = induced_character(G, G.borel(),
                               borel_character_from_torus(G, theta_fns[key]))
    dim_e = character_inner_product(G, gamma_chi, ps_chi)

    # truncation of the integers: the unramified length-a ring whose residue
    # field is big enough for the additive character
    e = 1
    while (ell ** e - 1) % G.p:
        e += 1
    A = unramified(ell, a, e)
    gamma_mod = gelfand_graev_module(G, A, shape)
    sigma_mod = principal_series_module(G, key, A)
    rank_trunc, _ = hom_module_invariants(gamma_mod, sigma_mod)

    gamma_res = reduce_module(gamma_mod)
    sigma_res = reduce_module(sigma_mod)
    dim_res1 = hom_dim_field(gamma_res, sigma_res)

    sub = proper_submodule(sigma_res)
    if sub is None:
        dim_res2 = dim_res1
        distinct = False
    else:
        second = second_lattice_reduction(sigma_mod, sub)
        dim_res2 = hom_dim_field(gamma_res, second)
        distinct = True

    in_block = reduce_mod_ell(_theta_label_param(G, key, q), ell) == model.s_bar
    return OracleReport(key, in_block, dim_e, rank_trunc, dim_res1, dim_res2,
                        distinct)


def principal_series_labels(model: LocalModel):
    """(theta exponents, generic label) for every split-torus character;
    the generic label indexes the unique generic constituent."""
    q = model.q
    G = fq_group(model.n, q)
    out = []
    for ks, _ in torus_characters(G):
        param = _theta_label_param(G, ks, q)
        out.append((ks, label_of_ss_param(param)))
    return out


# ---------------------------------------------------------------------------
# the commuting square at a model

@dataclass(frozen=True)
class SquareReport:
    model_key: str
    fiber_size: int
    labels: tuple
    cyc_matrix: tuple
    red_vector: tuple
    bar_vector: tuple
    oracle_values: tuple      # (theta, oracle value, bar value) triples
    oracle_consistent: bool

    @property
    def passed(self) -> bool:
        return (self.red_vector == self.bar_vector and self.oracle_consistent
                and all(o == b for _, o, b in self.oracle_values))


def check_square(model: LocalModel, oracle_a: int = 2) -> SquareReport:
    """red . cyc = bar-cyc over every generic label, and the intertwiner
    oracle agrees on all principal-series classes in the model's block."""
    sigmas = gg_constituent_labels(model.n, model.q)
    cyc_rows = []
    red_vec = []
    bar_vec = []
    for s in sigmas:
        v = cyc(s, model)
        cyc_rows.append(v.coeffs)
        red_vec.append(red_cycles(v))
        bar_vec.append(bar_cyc_fiber(s, model))
    oracle_rows = []
    consistent = True
    seen = set()
    for ks, label in principal_series_labels(model):
        rep = theta_dim_oracle(ks, model, a=oracle_a)
        consistent = consistent and rep.consistent
        bar = bar_cyc_fiber(label, model) if rep.in_block else 0
        oracle_rows.append((ks, rep.value, bar))
        seen.add(label.rep)
    return SquareReport(
        model_key=model.tau_bar.text(), fiber_size=len(model.fiber_params),
        labels=tuple(s.rep for s in sigmas), cyc_matrix=tuple(cyc_rows),
        red_vector=tuple(red_vec), bar_vector=tuple(bar_vec),
        oracle_values=tuple(oracle_rows), oracle_consistent=consistent)
