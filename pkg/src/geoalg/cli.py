"""Verification and exploration command line front end.

Subcommands
-----------
verify    run an identity suite and stream pass/fail reports
bracket   evaluate the Poisson bracket of two expressions
braid     apply a braid word to the generic generator family
centers   compute central elements and independence counts
reduce    print reduction maps (rotation-coefficient or level-p form)
geodesic  print a geodesic function, optionally at a point
stokes    print a Stokes matrix (special points or seeded random)

Reports are line-delimited JSON by default (`--format text` for a human
view).  Exit code 0 = all pass, 1 = at least one failing case, 2 = usage
error.  `GEOALG_THREADS` caps the worker count for independent suite
cases; output order is by case id regardless of completion order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import braid as braid_mod
from . import centers as centers_mod
from . import dn_algebra, fatgraph, frobenius, ks_calculus, reductions
from .poly_core import Expr, const, parse, parse_gen

SUITES = ("goldman", "ks", "jacobi", "braid", "yangian", "centers",
          "reduction", "frobenius")


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------


def _run_case(suite, case_id, fn):
    t0 = time.perf_counter()
    try:
        ok, left, right = fn()
        status = "pass" if ok else "fail"
    except Exception as exc:  # surface, don't crash the stream
        status, left, right = "fail", f"exception: {exc!r}", ""
    ms = round((time.perf_counter() - t0) * 1000, 3)
    return {"suite": suite, "case": case_id, "status": status,
            "left": str(left), "right": str(right), "ms": ms}


def _emit(reports, fmt, stream=None):
    stream = stream or sys.stdout
    failed = 0
    for rep in reports:
        if rep["status"] == "fail":
            failed += 1
        if fmt == "json":
            stream.write(json.dumps(rep) + "\n")
        else:
            line = f"[{rep['status']:>7}] {rep['suite']}::{rep['case']} ({rep['ms']} ms)"
            if rep["status"] == "fail":
                line += f"\n    left : {rep['left']}\n    right: {rep['right']}"
            elif rep["left"] and not rep["right"]:
                line += f"  =  {rep['left']}"
            stream.write(line + "\n")
    return 1 if failed else 0


def _run_suite(suite, cases, fmt):
    workers = max(1, int(os.environ.get("GEOALG_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {cid: pool.submit(_run_case, suite, cid, fn)
                       for cid, fn in cases}
        reports = [futures[cid].result() for cid, _ in cases]
    else:
        reports = [_run_case(suite, cid, fn) for cid, fn in cases]
    return _emit(reports, fmt)


def _bool_case(value, detail=""):
    return bool(value), detail or repr(value), "expected truthy"


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _generator_tuples(n, level):
    gens = [(i, j, 0) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for k in range(1, level + 1):
        gens += [(i, j, k) for i in range(1, n + 1) for j in range(1, n + 1)]
    return gens


def _gen_word(i, j, k):
    if k == 0:
        return (ks_calculus.M(i), ks_calculus.M(j))
    return (ks_calculus.M(i), ks_calculus.H(k),
            ks_calculus.M(j), ks_calculus.H(-k))


def _suite_goldman(args):
    n = args.n or 4
    graph = fatgraph.canonical_disc_graph(n)
    alg = dn_algebra.an_algebra(n)
    geo = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            geo[f"G[{i},{j},0]"] = fatgraph.geodesic_function(n, i, j)
    cases = [("perimeter", lambda: _bool_case(fatgraph.perimeter_identity(n)))]

    def pair_case(a, b):
        def run():
            lhs = fatgraph.goldman_bracket(geo[f"G[{a[0]},{a[1]},0]"],
                                           geo[f"G[{b[0]},{b[1]},0]"], graph)
            rhs = dn_algebra.bracket(alg, alg.canonical(*a, 0),
                                     alg.canonical(*b, 0)).subst(geo)
            return lhs == rhs, lhs, rhs
        return run

    all_pairs = [(i, j) for i in range(1, n + 1)
                 for j in range(i + 1, n + 1)]
    pairs = [(a, b) for idx, a in enumerate(all_pairs)
             for b in all_pairs[idx:]]
    for a, b in pairs:
        cases.append((f"goldman-vs-constants {a}x{b}", pair_case(a, b)))
    return cases


def _suite_ks(args):
    n = args.n or 3
    level = args.level if args.level is not None else 1
    alg = dn_algebra.dn_algebra(n)
    gens = _generator_tuples(n, level)

    def pair_case(a, b):
        def run():
            lhs = ks_calculus.skein_reduce(
                ks_calculus.ks_bracket_symbolic(_gen_word(*a), _gen_word(*b)))
            rhs = dn_algebra._pair_bracket(alg, a, b)
            return lhs == rhs, lhs, rhs
        return run

    return [(f"ks-vs-constants {a}x{b}", pair_case(a, b))
            for idx, a in enumerate(gens) for b in gens[idx:]]


def _suite_jacobi(args):
    n = args.n or 3
    level = args.level if args.level is not None else 1
    alg = dn_algebra.dn_algebra(n)
    gens = _generator_tuples(n, level)

    def triple_case(a, b, c):
        def run():
            res = dn_algebra.jacobi_check(alg, alg.canonical(*a),
                                          alg.canonical(*b), alg.canonical(*c))
            return res.is_zero(), res, "0"
        return run

    cases = []
    for x in range(len(gens)):
        for y in range(x + 1, len(gens)):
            for z in range(y + 1, len(gens)):
                a, b, c = gens[x], gens[y], gens[z]
                cases.append((f"jacobi {a},{b},{c}", triple_case(a, b, c)))
    return cases


def _suite_braid(args):
    n = args.n or 3
    cases = []
    for flavor, cap in (("A", 0), ("D", 0), ("frakD", 4)):
        def run(flavor=flavor, cap=cap):
            rep = braid_mod.verify_relations(flavor, n, cap)
            bad = [c["relation"] for c in rep["checks"] if not c["ok"]]
            return rep["ok"], f"failing: {bad}" if bad else "all relations", \
                f"{len(rep['checks'])} relations"
        cases.append((f"relations[{flavor}] n={n}", run))
    return cases


def _suite_yangian(args):
    specs = [(2, 3), (3, 2)] if args.n is None else \
        [(args.n, args.level or 2)]

    def run(n, order):
        def inner():
            rep = dn_algebra.semiclassical_reflection_check(
                dn_algebra.dn_algebra(n), order)
            return rep["ok"], f"{len(rep['mismatches'])} mismatches", \
                f"{rep['checked']} entries"
        return inner

    return [(f"reflection-limit n={n} order={o}", run(n, o)) for n, o in specs]


def _suite_centers(args):
    seed = args.seed or 0
    cases = []

    def an_case(n):
        def run():
            rep = centers_mod.an_centrality_report(n)
            return rep["ok"], rep, "all brackets zero"
        return run

    for n in (2, 3):
        cases.append((f"level-0 centers n={n}", an_case(n)))

    def dnp_case(n, p):
        def run():
            cs = centers_mod.centers_Dnp(n, p, seed=seed)
            want = (n * p) // 2
            ranks = cs.meta["jacobian_ranks"]
            ok = all(r == want for r in ranks) and len(cs.coefficients) >= want
            return ok, f"ranks {ranks}", f"expected rank {want}"
        return run

    for n, p in ((2, 2), (3, 2), (2, 3)):
        cases.append((f"level-p centers ({n},{p})", dnp_case(n, p)))

    def relation_case(n):
        def run():
            rep = centers_mod.dn_relation_check(n)
            return rep["ok"], rep, "det coefficients match"
        return run

    for n in (2, 3):
        cases.append((f"det-coefficient relations n={n}", relation_case(n)))

    def invariance_case():
        cs = centers_mod.corrected_d3_casimirs()
        flags = centers_mod.casimir_invariance(cs, 3)
        return all(flags), f"invariance flags {flags}", "all True"

    cases.append(("involution casimirs n=3", lambda: invariance_case()))
    return cases


def _suite_reduction(args):
    cases = [
        ("commuting square n=3", lambda: _bool_case(
            reductions.th_dn_check(3)["ok"])),
        ("generating-series sum", lambda: _bool_case(
            all(reductions.dn_sum().values()))),
        ("resolution identity", lambda: _bool_case(
            reductions.resolution_identity())),
    ]
    for p in (2, 3, 4):
        cases.append((f"periodicity p={p}", lambda p=p: _bool_case(
            reductions.periodicity_check(p))))
    for n, p in ((2, 2), (3, 2), (2, 3)):
        cases.append((f"representative independence ({n},{p})",
                      lambda n=n, p=p: _bool_case(
                          reductions.representative_independence(n, p))))
    return cases


def _suite_frobenius(args):
    seed = args.seed or 0
    cases = []

    def matrix_identities():
        import random
        rng = random.Random(seed)
        s = frobenius.random_stokes(4, rng)
        rep = frobenius.clash_block(s, 3)
        ok = (rep.ok and frobenius.product_identity(s)
              and frobenius.gk_mirror_check(s, 3, 2))
        return ok, "block/product/mirror identities", "all exact"

    cases.append(("monodromy identities", matrix_identities))
    for m in (2, 3):
        cases.append((f"all-ones tail m={m}", lambda m=m: _bool_case(
            frobenius.all_ones_report(m)["char_poly_ok"])))
    cases.append(("bracket realization", lambda: _bool_case(
        frobenius.realization_suite(3, seed=seed)["ok"])))

    def special_points():
        a3 = frobenius.a3_star().mat
        a4 = frobenius.a4_star().mat
        ok3 = all(a3[i, j] == const(v) for i, row in
                  enumerate([[1, 3, 3], [0, 1, 3], [0, 0, 1]])
                  for j, v in enumerate(row))
        ok4 = all(a4[i, j] == const(v) for i, row in
                  enumerate([[1, 4, 6, 4], [0, 1, 4, 6],
                             [0, 0, 1, 4], [0, 0, 0, 1]])
                  for j, v in enumerate(row))
        return ok3 and ok4, "integer Stokes points", "printed values"

    cases.append(("quantum-cohomology points", special_points))
    return cases


_SUITE_BUILDERS = {
    "goldman": _suite_goldman,
    "ks": _suite_ks,
    "jacobi": _suite_jacobi,
    "braid": _suite_braid,
    "yangian": _suite_yangian,
    "centers": _suite_centers,
    "reduction": _suite_reduction,
    "frobenius": _suite_frobenius,
}


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    code = 0
    for name in names:
        code |= _run_suite(name, _SUITE_BUILDERS[name](args), args.format)
    return code


# ---------------------------------------------------------------------------
# expression subcommands
# ---------------------------------------------------------------------------


def _algebra(args):
    n = args.n or 3
    if args.alg == "an":
        return dn_algebra.an_algebra(n)
    if args.alg == "dn":
        return dn_algebra.dn_algebra(n)
    if args.alg == "dnp":
        return dn_algebra.dnp_algebra(n, args.p or 2)
    raise SystemExit(2)


def cmd_bracket(args) -> int:
    alg = _algebra(args)
    f, g = parse(args.exprs[0]), parse(args.exprs[1])
    result = dn_algebra.bracket(alg, f, g)
    report = {"suite": "bracket", "case": f"{{{args.exprs[0]}, {args.exprs[1]}}}",
              "status": "pass", "left": str(result), "right": "", "ms": 0}
    if args.oracle:
        a = _single_generator(f)
        b = _single_generator(g)
        if a is None or b is None:
            report["status"] = "skipped"
            report["right"] = "oracle needs single-generator operands"
        elif args.oracle == "ks":
            other = ks_calculus.skein_reduce(ks_calculus.ks_bracket_symbolic(
                _gen_word(*a), _gen_word(*b)))
            report["right"] = str(other)
            report["status"] = "pass" if other == result else "fail"
        elif args.oracle == "goldman":
            n = alg.n
            geo = {f"G[{i},{j},0]": fatgraph.geodesic_function(n, i, j)
                   for i in range(1, n + 1) for j in range(i + 1, n + 1)}
            graph = fatgraph.canonical_disc_graph(n)
            lhs = fatgraph.goldman_bracket(
                alg.canonical(*a).subst(geo), alg.canonical(*b).subst(geo),
                graph)
            rhs = result.subst(geo)
            report["right"] = "goldman realization"
            report["status"] = "pass" if lhs == rhs else "fail"
    return _emit([report], args.format)


def _single_generator(e: Expr):
    terms = list(e.terms())
    if len(terms) != 1:
        return None
    mono, coeff = terms[0]
    if coeff != Fraction(1) or len(mono) != 1 or mono[0][1] != 1:
        return None
    return parse_gen(mono[0][0])


def _parse_braid_word(text: str, n: int):
    word = []
    for token in text.split():
        inverse = token.endswith("^-1")
        if inverse:
            token = token[:-3]
        if not token.startswith("b") or len(token) != 3:
            raise ValueError(f"bad braid token {token!r}")
        body = token[1:]
        if body == "n1" or (body[0] == str(n) and body[1] == "1"):
            word.append(braid_mod.wrap(inverse))
            continue
        i, j = int(body[0]), int(body[1])
        if j != i + 1:
            raise ValueError(f"braid token {token!r} is not adjacent or wrap")
        word.append(braid_mod.adjacent(i, inverse))
    return word


def cmd_braid(args) -> int:
    n = args.n or 3
    word = _parse_braid_word(args.word, n)
    reports = []
    if args.alg == "an":
        mat = braid_mod.symbol_matrix(n)
        for b in word:
            mat = braid_mod.act_An(b, mat)
        for i in range(n):
            for j in range(i + 1, n):
                reports.append({"suite": "braid", "case": f"G[{i+1},{j+1},0]",
                                "status": "pass", "left": str(mat[i, j]),
                                "right": "", "ms": 0})
    elif args.alg == "dn":
        fam = braid_mod.ghat_family(n)
        for b in word:
            fam = braid_mod.act_Dn(b, fam, n)
        for (i, j), val in sorted(fam.items()):
            reports.append({"suite": "braid", "case": f"Ghat[{i},{j}]",
                            "status": "pass", "left": str(val),
                            "right": "", "ms": 0})
    else:  # level-graded family
        cap = args.cap or 4
        fam = braid_mod.LevelFamily.generic(n, cap)
        if args.matrix:
            gm = braid_mod.gcal_matrix(fam)
            for b in word:
                gm = braid_mod.act_matrix(b, gm)
            for k in range(gm.cert + 1):
                reports.append({"suite": "braid", "case": f"lam^-{k}",
                                "status": "pass",
                                "left": str(gm.coefficient(k).rows),
                                "right": "", "ms": 0})
        else:
            for b in word:
                fam = braid_mod.act_frakDn(b, fam)
            for (i, j, k), val in sorted(fam.data.items()):
                reports.append({"suite": "braid", "case": f"G[{i},{j},{k}]",
                                "status": "pass", "left": str(val),
                                "right": "", "ms": 0})
    return _emit(reports, args.format)


def cmd_centers(args) -> int:
    n = args.n or 3
    if args.alg == "an":
        cs = centers_mod.centers_An(n)
    elif args.alg == "dnp":
        cs = centers_mod.centers_Dnp(n, args.p or 2, seed=args.seed or 0)
    else:
        cs = centers_mod.centers_Dn(n)
    reports = [{"suite": "centers", "case": f"{cs.flavor}[{idx}]",
                "status": "pass", "left": str(c), "right": "", "ms": 0}
               for idx, c in enumerate(cs.coefficients)]
    meta = {"suite": "centers", "case": "meta", "status": "pass",
            "left": json.dumps({k: str(v) for k, v in cs.meta.items()}),
            "right": "", "ms": 0}
    return _emit(reports + [meta], args.format)


def cmd_reduce(args) -> int:
    reports = []
    if args.k is not None:
        rmap = reductions.dn_reduce(args.k)
        for name, coeff in (("antisymmetric", rmap.c_rhat),
                            ("symmetric", rmap.c_shat),
                            ("upper", rmap.c_ahat),
                            ("lower", rmap.c_ahat_t)):
            reports.append({"suite": "reduce", "case": f"k={args.k} {name}",
                            "status": "pass", "left": str(coeff),
                            "right": "", "ms": 0})
    elif args.level_p is not None:
        n = args.n or 2
        gm = reductions.build_Gp(n, args.level_p)
        for k in range(args.level_p + 1):
            reports.append({"suite": "reduce",
                            "case": f"level-p={args.level_p} lam^-{k}",
                            "status": "pass",
                            "left": str(gm.coefficient(k).rows),
                            "right": "", "ms": 0})
    else:
        raise SystemExit(2)
    return _emit(reports, args.format)


def cmd_geodesic(args) -> int:
    e = fatgraph.geodesic_function(args.n, args.i, args.j)
    if args.at:
        bindings = {}
        for piece in args.at.split(","):
            name, _, val = piece.partition("=")
            bindings[name.strip()] = const(Fraction(val.strip()))
        e = e.subst(bindings)
    report = {"suite": "geodesic", "case": f"G[{args.i},{args.j}] n={args.n}",
              "status": "pass", "left": str(e), "right": "", "ms": 0}
    return _emit([report], args.format)


def cmd_stokes(args) -> int:
    if args.point == "a3star":
        s = frobenius.a3_star()
    elif args.point == "a4star":
        s = frobenius.a4_star()
    else:
        import random
        s = frobenius.random_stokes(args.n or 3,
                                    random.Random(args.seed or 0))
    reports = [{"suite": "stokes", "case": f"row {i + 1}", "status": "pass",
                "left": str([str(s.mat[i, j]) for j in range(s.n)]),
                "right": "", "ms": 0} for i in range(s.n)]
    return _emit(reports, args.format)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="geoalg", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    top.add_argument("--config", help="key=value file pre-selecting options")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("verify", help="run an identity suite")
    common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bracket", help="bracket of two expressions")
    common(p)
    p.add_argument("--alg", choices=("an", "dn", "dnp"), default="dn")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--oracle", choices=("ks", "goldman"), default=None)
    p.add_argument("exprs", nargs=2)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("braid", help="apply a braid word")
    common(p)
    p.add_argument("--alg", choices=("an", "dn", "frakdn"), default="an")
    p.add_argument("--word", required=True,
                   help='space-separated tokens like "b12 b23^-1 bn1"')
    p.add_argument("--matrix", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("centers", help="central elements")
    common(p)
    p.add_argument("--alg", choices=("an", "dn", "dnp"), default="an")
    p.add_argument("--p", type=int, default=None)
    p.set_defaults(func=cmd_centers)

    p = sub.add_parser("reduce", help="reduction maps")
    common(p)
    p.add_argument("--dn", action="store_true")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--level-p", dest="level_p", type=int, default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("geodesic", help="geodesic function")
    common(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--at", help="comma-separated bindings like s1=1,t1=2")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("stokes", help="Stokes matrices")
    common(p)
    p.add_argument("--point", choices=("a3star", "a4star", "random"),
                   default="a3star")
    p.set_defaults(func=cmd_stokes)
    return top


def _apply_config(args):
    if not args.config:
        return
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if hasattr(args, key) and getattr(args, key) in (None, "all"):
                try:
                    setattr(args, key, int(val))
                except ValueError:
                    setattr(args, key, val)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        parser.exit(2, f"error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
