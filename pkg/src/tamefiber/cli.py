"""Command-line surface: reproducible verification runs with JSON reports.

Every subcommand emits one report object (schema "tamefiber/1") on stdout:
a config echo plus per-check records {name, anchor, expected, actual,
pass}.  The table format is rendered from the JSON object, never computed
separately.  Diagnostics and timing go to stderr so that reports are
byte-identical across runs with equal config and seed.  Exit codes:
0 all checks pass, 1 a check failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import TamefiberError
from .exactalg import GF, Mat, diag, fl_t, jordan_block, prime_power
from . import symquot
from . import params as par
from . import dlcomb
from . import fingroup as fg
from . import defmod
from . import bmcheck

SCHEMA = "tamefiber/1"


def thread_cap() -> int:
    """Parallelism cap from TAMEFIBER_THREADS; results never depend on it."""
    try:
        return max(1, int(os.environ.get("TAMEFIBER_THREADS", "1")))
    except ValueError:
        return 1


class Report:
    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = config
        self.records = []
        self.data = {}

    def add(self, name: str, anchor: str, expected, actual):
        self.records.append({
            "name": name,
            "anchor": anchor,
            "expected": expected,
            "actual": actual,
            "pass": expected == actual,
        })

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.records)

    def as_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "records": self.records,
            "pass": self.passed,
        }
        if self.data:
            out["data"] = self.data
        return out

    def emit(self, fmt: str) -> int:
        obj = self.as_dict()
        if fmt == "json":
            print(json.dumps(obj, indent=2, sort_keys=True))
        else:
            print(f"# {obj['command']}  [{obj['schema']}]")
            cfg = " ".join(f"{k}={v}" for k, v in sorted(obj["config"].items())
                           if v is not None)
            print(f"# config: {cfg}")
            for r in obj["records"]:
                mark = "ok " if r["pass"] else "FAIL"
                print(f"[{mark}] {r['name']}: expected={r['expected']} "
                      f"actual={r['actual']}  ({r['anchor']})")
            print(f"# overall: {'pass' if obj['pass'] else 'FAIL'}")
        return 0 if self.passed else 1


def _config(args) -> dict:
    keys = ("n", "q", "ell", "f", "e", "a", "budget", "seed")
    return {k: getattr(args, k, None) for k in keys}


def _validate(args):
    if getattr(args, "q", None) is not None:
        prime_power(args.q)
    ell = getattr(args, "ell", None)
    if ell is not None:
        p, k = prime_power(ell)
        if p != ell:
            raise ValueError("ell must be prime")
        if getattr(args, "q", None) is not None and args.q % ell == 0:
            raise ValueError("ell must not divide q")
    for key in ("budget",):
        v = getattr(args, key, None)
        if v is not None and v <= 0:
            raise ValueError(f"{key} must be positive")


# ---------------------------------------------------------------------------
# subcommands

def cmd_bqn_rank(args) -> Report:
    rep = Report("bqn rank", _config(args))
    q, n = args.q, args.n
    expected = q ** (n - 1) * (q - 1)
    rep.add("rank-identity", "qfixed-quotient-rank", expected,
            symquot.rank(q, n))
    points = [par.point_labels(s) for s in par.enumerate_ss_params(n, q)]
    rep.add("pairing-nonsingular", "basis-certificate", True,
            symquot.pairing_nonsingular(q, n, points))
    return rep


def cmd_bqn_basis(args) -> Report:
    rep = Report("bqn basis", _config(args))
    q, n = args.q, args.n
    mons = symquot.basis(q, n)
    rep.add("basis-size", "qfixed-quotient-rank", q ** (n - 1) * (q - 1),
            len(mons))
    rep.data["basis"] = [",".join(map(str, ev)) for ev in mons]
    return rep


def cmd_params_enumerate(args) -> Report:
    rep = Report("params enumerate", _config(args))
    q, n = args.q, args.n
    ss = par.enumerate_ss_params(n, q)
    rep.add("parameter-count", "semisimple-orbit-count",
            q ** (n - 1) * (q - 1), len(ss))
    rep.data["parameters"] = [s.text() for s in ss]
    return rep


def cmd_params_fiber(args) -> Report:
    rep = Report("params fiber", _config(args))
    q, n, ell = args.q, args.n, args.ell
    ss = par.enumerate_ss_params(n, q)
    fibers = {}
    for s in ss:
        key = par.reduce_mod_ell(s, ell).text()
        fibers.setdefault(key, []).append(s.text())
    rep.add("fiber-partition-total", "ellprime-fiber-partition", len(ss),
            sum(len(v) for v in fibers.values()))
    rep.data["fibers"] = {k: sorted(v) for k, v in sorted(fibers.items())}
    return rep


def cmd_params_distinguished(args) -> Report:
    rep = Report("params distinguished", _config(args))
    q, n, ell = args.q, args.n, args.ell
    f = args.f if args.f is not None else par.min_large_f(n, q, ell)
    tau = par.InertialParam.make([(par.trivial_orbit(q), (n,))], q)
    Sigma, Phi, shape, F = par.make_f_distinguished(tau, f, ell, args.e or 1)
    rep.add("self-certified", "distinguished-point-construction", True,
            par.is_f_distinguished(Sigma, Phi, f, shape, q))
    rep.add("large-enough-f", "frobenius-power-bound", True,
            f >= par.min_large_f(n, q, ell))
    rep.data["levi"] = list(shape)
    rep.data["field"] = repr(F)
    return rep


def cmd_dl_norm(args) -> Report:
    rep = Report("dl norm", _config(args))
    q, n = args.q, args.n
    labels = dlcomb.gg_constituent_labels(n, q)
    norms = [dlcomb.pi_norm(lab) for lab in labels]
    rep.add("label-count", "qstable-orbit-count", q ** (n - 1) * (q - 1),
            len(labels))
    rep.add("all-norms-one", "signed-average-irreducibility", len(labels),
            sum(1 for v in norms if v == 1))
    return rep


def cmd_dl_mult(args) -> Report:
    rep = Report("dl mult", _config(args))
    q, n = args.q, args.n
    taus = [bmcheck.regular_in_centralizer(s)
            for s in par.enumerate_ss_params(n, q)]
    table = dlcomb.multiplicity_table(n, q, taus)
    rep.add("nonnegative-integers", "induced-multiplicity-table", True,
            all(v >= 0 for row in table for v in row))
    rep.data["rows"] = [str(lab.rep) for lab in dlcomb.gg_constituent_labels(n, q)]
    rep.data["columns"] = [t.text() for t in taus]
    rep.data["matrix"] = table
    return rep


def cmd_dl_gg(args) -> Report:
    rep = Report("dl gg", _config(args))
    q, n = args.q, args.n
    expected = q ** (n - 1) * (q - 1)
    rep.add("gamma-norm", "multiplicity-free-sum", expected,
            dlcomb.gamma_norm(n, q))
    return rep


def cmd_group_classes(args) -> Report:
    rep = Report("group classes", _config(args))
    q, n = args.q, args.n
    rep.add("semisimple-classes", "prime-to-p-class-count",
            q ** (n - 1) * (q - 1), fg.semisimple_class_count(n, q))
    return rep


def cmd_group_gg(args) -> Report:
    rep = Report("group gg", _config(args))
    q, n = args.q, args.n
    expected = q ** (n - 1) * (q - 1)
    mackey, charip = fg.gelfand_graev_selfpairing(n, q)
    rep.add("selfpairing-mackey", "double-coset-count", expected, mackey)
    rep.add("selfpairing-character", "exact-inner-product", expected, charip)
    return rep


def cmd_group_homdim(args) -> Report:
    rep = Report("group homdim", _config(args))
    q, n = args.q, args.n
    results = fg.whittaker_vs_principal_series(n, q)
    rep.add("whittaker-multiplicity-one", "generic-constituent-count",
            len(results), sum(1 for _, v in results if v == 1))
    rep.data["pairings"] = [{"theta": list(ks), "value": v}
                            for ks, v in results]
    return rep


def cmd_defo_probe(args) -> Report:
    rep = Report("defo probe", _config(args))
    q, n, ell = args.q, args.n, args.ell
    e = args.e or 1
    F = GF(ell, e)
    big = fl_t(ell, e, 3)
    small = fl_t(ell, e, 2)
    ext = defmod.t_truncation(big, small, e)
    rho_bar = (jordan_block(F, n, F.one()), Mat.identity(F, n))
    budget = args.budget or defmod.DEFAULT_BUDGET
    for family in ("full", "normalized"):
        pr = defmod.smoothness_probe(family, ext, rho_bar, n, q, budget=budget)
        rep.add(f"uniform-lifts-{family}", "formal-smoothness-fiber-count",
                {"predicted": pr.predicted, "min": pr.predicted,
                 "max": pr.predicted},
                {"predicted": pr.predicted, "min": pr.observed_min,
                 "max": pr.observed_max})
        rep.data.setdefault("pairs", {})[family] = pr.pairs
    return rep


def cmd_defo_roundtrip(args) -> Report:
    rep = Report("defo roundtrip", _config(args))
    q, n, ell = args.q, args.n, args.ell
    e = args.e or 1
    F = GF(ell, e)
    A = fl_t(ell, e, 2)
    rho_bar = (jordan_block(F, n, F.one()), Mat.identity(F, n))
    pts = defmod.enumerate_points(A, n, q, rho_bar,
                                  args.budget or defmod.DEFAULT_BUDGET)
    zs = defmod.z_points(A, n, q)
    total = ok = 0
    for pt in pts:
        cp = pt.Sigma.char_poly()
        for z in zs:
            if defmod.root_poly(A, z) == cp:
                total += 1
                ptN, _ = defmod.companion_normalize(pt, z)
                v = ptN.Phi.column(n - 1)
                if defmod.phi_reconstruct(A, z, v, q) == ptN.Phi:
                    ok += 1
    rep.add("companion-roundtrips", "normalization-bijection", total, ok)
    normalized = defmod.normalized_points(A, n, q, rho_bar[1])
    rep.add("normalized-locus-size", "roots-times-lastcolumn",
            len(zs) * len(A.maximal_ideal_elements()) ** n, len(normalized))
    # seeded degree-d round trip at the scalar-block configuration
    rng = random.Random(args.seed)
    F7 = GF(7)
    A7 = fl_t(7, 1, 2)
    units = [x for x in A7.elements() if A7.is_unit(x)]
    s1 = A7.section(F7.root_of_unity(3))
    passed = 0
    samples = 1000
    for _ in range(samples):
        psi0 = units[rng.randrange(len(units))]
        psi1 = units[rng.randrange(len(units))]
        Sigma = Mat(A7, [[s1, A7.zero()], [A7.zero(), s1 * s1]])
        Phi = Mat(A7, [[A7.zero(), psi1], [psi0, A7.zero()]])
        pt = defmod.WeilPoint(A7, Sigma, Phi, 2, 2)
        small_pt, tail = defmod.degree_d_restrict(pt, 1, 2)
        back = defmod.degree_d_extend(small_pt, tail, 2, 2)
        if back.Sigma == pt.Sigma and back.Phi == pt.Phi:
            passed += 1
    rep.add("degree-d-roundtrips", "block-cycle-equivalence", samples, passed)
    return rep


def cmd_bm_check(args) -> Report:
    rep = Report("bm check", _config(args))
    q, n, ell = args.q, args.n, args.ell
    tau = par.InertialParam.make([(par.trivial_orbit(q), (n,))], q)
    model = bmcheck.build_local_model(tau, ell, f=args.f)
    sq = bmcheck.check_square(model, oracle_a=args.a or 2)
    rep.add("fiber-size", "ellprime-fiber-partition",
            len(par.fiber(model.s_bar, n, q, ell)), sq.fiber_size)
    rep.add("reduction-commutes", "cycle-reduction-identity",
            list(sq.red_vector), list(sq.bar_vector))
    rep.add("oracle-agrees", "intertwiner-dimension-oracle", True,
            sq.oracle_consistent and all(o == b for _, o, b in sq.oracle_values))
    rep.data["cyc_matrix"] = [list(r) for r in sq.cyc_matrix]
    rep.data["components"] = list(model.component_labels())
    rep.data["oracle"] = [{"theta": list(t), "oracle": o, "bar": b}
                          for t, o, b in sq.oracle_values]
    return rep


# ---------------------------------------------------------------------------
# dispatch

COMMANDS = {
    ("bqn", "rank"): (cmd_bqn_rank, ("q", "n")),
    ("bqn", "basis"): (cmd_bqn_basis, ("q", "n")),
    ("params", "enumerate"): (cmd_params_enumerate, ("q", "n")),
    ("params", "fiber"): (cmd_params_fiber, ("q", "n", "ell")),
    ("params", "distinguished"): (cmd_params_distinguished, ("q", "n", "ell")),
    ("dl", "norm"): (cmd_dl_norm, ("q", "n")),
    ("dl", "mult"): (cmd_dl_mult, ("q", "n")),
    ("dl", "gg"): (cmd_dl_gg, ("q", "n")),
    ("group", "classes"): (cmd_group_classes, ("q", "n")),
    ("group", "gg"): (cmd_group_gg, ("q", "n")),
    ("group", "homdim"): (cmd_group_homdim, ("q", "n")),
    ("defo", "probe"): (cmd_defo_probe, ("q", "n", "ell")),
    ("defo", "roundtrip"): (cmd_defo_roundtrip, ("q", "n", "ell")),
    ("bm", "check"): (cmd_bm_check, ("q", "n", "ell")),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tamefiber",
        description="exact verification workbench for tame parameter spaces")
    parser.add_argument("--version", action="version", version=__version__)
    groups = parser.add_subparsers(dest="group_name", required=True)
    by_group: dict = {}
    for (g, sub), (_, required) in COMMANDS.items():
        by_group.setdefault(g, []).append((sub, required))
    for g, subs in by_group.items():
        gp = groups.add_parser(g)
        sp = gp.add_subparsers(dest="sub_name", required=True)
        for sub, required in subs:
            p = sp.add_parser(sub)
            p.add_argument("--n", type=int, required="n" in required)
            p.add_argument("--q", type=int, required="q" in required)
            p.add_argument("--ell", type=int, required="ell" in required)
            p.add_argument("--f", type=int, default=None)
            p.add_argument("--e", type=int, default=None)
            p.add_argument("--a", type=int, default=None)
            p.add_argument("--budget", type=int, default=None)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--format", dest="fmt", choices=("json", "table"),
                           default="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    t0 = time.monotonic()
    try:
        _validate(args)
        fn, _ = COMMANDS[(args.group_name, args.sub_name)]
        _ = thread_cap()
        report = fn(args)
    except (TamefiberError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code = report.emit(args.fmt)
    print(f"# elapsed: {time.monotonic() - t0:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
