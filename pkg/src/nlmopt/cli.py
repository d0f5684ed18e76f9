"""Command-line front end: ``nlmopt {solve,fit,tree,gen,verify}``.

Results go to stdout (or --out) only after the command has fully succeeded,
so a failing run never leaves partial output. Exit codes: 0 ok, 2 bad input,
3 budget guard refused, 4 infeasible, 70 internal contract violation.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__, expdesign, io, kernels, objectives, testkit
from .algebraic import optimal_value_algebraic
from .combinatorial import optimal_value_combinatorial
from .config import DEFAULT_BITS, DEFAULT_BRUTE_FORCE_N, DEFAULT_CANDIDATES, DEFAULT_POINTS, Budget
from .errors import BudgetError, ContractError, InfeasibleError, InputError, NlmoptError

ALGORITHMS = ("combinatorial", "algebraic", "bruteforce")


def _budget(args) -> Budget:
    return Budget.from_env(candidates=args.budget, points=args.points_cap, bits=args.bits_cap,
                           brute_force_n=args.brute_force_cap)


def _solve(problem: io.Problem, algorithm: str, budget: Budget, threads: int):
    """(profile, base, counters, generating polynomial or None)."""
    oracle = problem.oracle()
    w = problem.weight_matrix()
    f = problem.f()
    if algorithm == "combinatorial":
        sol = optimal_value_combinatorial(oracle, w, f, budget, threads)
        return sol.profile, sol.base, sol.stats, None
    if algorithm == "algebraic":
        rep = io.matrix_of(problem.matroid)
        if rep is None:
            raise InputError(f"algebraic solver needs a vectorial or graphic matroid, got {problem.matroid['kind']!r}")
        sol = optimal_value_algebraic(rep[0], w, f, budget, threads)
        return sol.profile, sol.base, sol.stats, sol.polynomial
    if algorithm == "bruteforce":
        report = testkit.brute_force(oracle, w, f, cap=budget.brute_force_n)
        counters = {"bases": len(report.bases), "profile_set_size": len(report.profile_set),
                    "oracle_queries": oracle.queries, "comparisons": f.comparisons}
        return report.optimum, report.base, counters, None
    raise InputError(f"unknown algorithm {algorithm!r}")


def _profiles_record(problem: io.Problem, algorithm: str, budget: Budget, threads: int, poly) -> dict:
    w = problem.weight_matrix()
    if poly is not None:
        oracle = problem.oracle()
        offset = oracle.rank(oracle.elements) * w.max_abs()
        terms = [[[x - offset for x in u], str(c)] for u, c in sorted(poly.coefficients.items())]
        return {"profiles": [t[0] for t in terms], "coefficients": terms}
    oracle = problem.oracle()
    if algorithm == "combinatorial":
        from .combinatorial import profile_set

        u = profile_set(oracle, w, None, budget, threads)
    else:
        u = testkit.brute_force(oracle, w, cap=budget.brute_force_n).profile_set
    return {"profiles": [list(x) for x in sorted(u)]}


def cmd_solve(args) -> str:
    problem = io.load_problem(args.path)
    budget = _budget(args)
    profile, base, counters, poly = _solve(problem, args.algorithm, budget, args.threads)
    extra = {}
    if args.emit_profiles:
        extra.update(_profiles_record(problem, args.algorithm, budget, args.threads, poly))
    value = problem.f().value(profile)
    return io.dumps(io.result_record(args.algorithm, profile, base, value, _plain(counters), **extra))


def _plain(counters: dict) -> dict:
    return {k: v for k, v in sorted(counters.items()) if isinstance(v, (int, str))}


def cmd_fit(args) -> str:
    design = io.load_design(args.path)
    budget = _budget(args)
    m, k = len(design.points), len(design.points[0])
    exps = expdesign.staircase_exponents(m, k) if design.exponents == "staircase" else design.exponents
    ab = dict(design.aberration)
    for key in ("kind", "pi", "q", "theta"):
        override = getattr(args, f"aberration_{key}")
        if override is not None:
            ab[key] = override
    try:
        spec = expdesign.AberrationSpec(**ab)
    except (TypeError, ValueError) as exc:
        raise InputError(f"design.aberration: {exc}") from None
    result = expdesign.fit_minimum_aberration(design.points, exps, spec, args.algorithm, budget, args.threads,
                                              None if args.no_measurements else design.measurements,
                                              verify=args.verify)
    mm = expdesign.build_model_matrix(design.points, exps)
    extra = {
        "model": [list(b) for b in result.model],
        "columns": list(result.columns),
        "monomials": [expdesign.monomial_name(b) for b in result.model],
        "aberration": io.dump_rational(result.aberration),
        "aberration_exact": result.aberration_exact,
        "determinant": io.dump_rational(result.determinant),
        "column_scaling": [io.dump_int(s) for s in mm.scales],
        "exponents": [list(b) for b in exps],
    }
    if result.coefficients is not None:
        extra["coefficients"] = [io.dump_rational(c) for c in result.coefficients]
    if result.multiplicity is not None:
        extra["optimal_models"] = result.multiplicity
    rec = io.result_record(args.algorithm, result.profile, extra["model"], None, _plain(result.counters), **extra)
    return io.dumps(rec)


def _load_graph(args):
    with open(args.path, encoding="utf-8") as fh:
        rec = io.loads_json(fh.read(), str(args.path))
    if not isinstance(rec, dict):
        raise InputError(f"{args.path}: expected an object")
    io._check_keys(rec, {"format", "vertices", "edges", "weights"}, "graph")
    matroid = io.normalize_matroid({"kind": "graphic", "vertices": rec.get("vertices"), "edges": rec.get("edges")},
                                   "graph")
    weights = rec.get("weights")
    if args.weights is not None:
        with open(args.weights, encoding="utf-8") as fh:
            weights = io.loads_json(fh.read(), str(args.weights))
        if isinstance(weights, dict):
            weights = weights.get("weights")
    if weights is None:
        raise InputError("graph: no edge weights (add 'weights' or pass --weights)")
    return matroid, weights


def norm_approx(power_sum: Fraction, q) -> str:
    """Decimal approximation of power_sum^(1/q), 15 significant digits."""
    x = Fraction(power_sum)
    with localcontext() as ctx:
        ctx.prec = 40
        v = Decimal(x.numerator) / Decimal(x.denominator)
        if q != objectives.INF and q != 1 and v > 0:
            v = (v.ln() / q).exp()
        ctx.prec = 15
        return format((+v).normalize(), "f")


def cmd_tree(args) -> str:
    matroid, weights = _load_graph(args)
    q = args.q
    q = objectives.INF if q in ("inf", "infinity", "∞") else io.parse_int(q, "--q")
    problem = io.Problem.from_dict({"matroid": matroid, "weights": weights, "objective": {"kind": "lq", "q": q}})
    g = problem.oracle()
    if not g.is_connected():
        raise InfeasibleError("graph is disconnected: no spanning tree exists")
    budget = _budget(args)
    profile, base, counters, _ = _solve(problem, args.algorithm, budget, args.threads)
    value = problem.f().value(profile)
    extra = {"q": q, "norm_approx": norm_approx(value, q),
             "edges": [list(matroid["edges"][j]) for j in base]}
    return io.dumps(io.result_record(args.algorithm, profile, base, value, _plain(counters), **extra))


def cmd_gen(args) -> str:
    kwargs = {"n_max": args.n_max, "d_max": args.d_max}
    if args.kind:
        kwargs["kinds"] = tuple(args.kind)
    if args.objective:
        kwargs["objectives"] = tuple(args.objective)
    rec = testkit.random_instance(args.seed, **kwargs)
    return io.dumps(io.Problem.from_dict(rec).to_dict())


def cmd_verify(args) -> str:
    problem = io.load_problem(args.path)
    budget = _budget(args)
    oracle = problem.oracle()
    w = problem.weight_matrix()
    ref, ref_base, _, _ = _solve(problem, "bruteforce", budget, args.threads)
    f = problem.f()
    out = {"format": io.RESULT_FORMAT, "solver": "verify",
           "bruteforce": {"profile": list(ref), "base": list(ref_base)}}
    agree = True
    for algorithm in ("combinatorial", "algebraic"):
        try:
            profile, base, _, _ = _solve(problem, algorithm, budget, args.threads)
        except BudgetError as exc:
            out[algorithm] = {"skipped": str(exc)}
            continue
        except InputError as exc:
            if algorithm == "algebraic" and io.matrix_of(problem.matroid) is None:
                out[algorithm] = {"skipped": str(exc)}
                continue
            raise
        ok = (tuple(profile) == tuple(ref) and len(base) == len(ref_base)
              and oracle.is_independent(base) and w.profile(base) == tuple(profile)
              and f.equivalent(profile, ref))
        agree &= ok
        out[algorithm] = {"profile": list(profile), "base": list(base), "agrees": ok}
    out["agree"] = agree
    text = io.dumps(out)
    if not agree:
        raise ContractError("solvers disagree with brute force:\n" + text)
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help=f"combinatorial candidate cap (default {DEFAULT_CANDIDATES}, or $NLMOPT_BUDGET)")
    common.add_argument("--points-cap", type=int, default=None,
                        help=f"algebraic evaluation-point cap p^d (default {DEFAULT_POINTS})")
    common.add_argument("--bits-cap", type=int, default=None,
                        help=f"algebraic determinant bit-length cap (default {DEFAULT_BITS})")
    common.add_argument("--brute-force-cap", type=int, default=None,
                        help=f"ground-set cap for exhaustive enumeration (default {DEFAULT_BRUTE_FORCE_N})")
    common.add_argument("--threads", type=int, default=1, help="solver worker threads (default 1)")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="nlmopt", description="Nonlinear matroid optimization.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="minimize f(W(B)) over the bases of a matroid")
    p.add_argument("path")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="combinatorial")
    p.add_argument("--emit-profiles", action="store_true", help="also list all base profiles (and g_u under algebraic)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("fit", parents=[common], help="minimum-aberration model fitting for a design")
    p.add_argument("path")
    p.add_argument("--algorithm", choices=("algebraic", "combinatorial"), default="algebraic")
    p.add_argument("--aberration", dest="aberration_kind", choices=expdesign.ABERRATION_KINDS[:-1], default=None)
    p.add_argument("--pi", dest="aberration_pi", type=lambda s: s.split(","), default=None,
                   help="comma-separated rational weights, e.g. 1,1/2")
    p.add_argument("--q", dest="aberration_q", default=None, help="integer >= 1 or inf")
    p.add_argument("--theta", dest="aberration_theta", type=int, default=None)
    p.add_argument("--no-measurements", action="store_true", help="skip coefficient fitting")
    p.add_argument("--verify", action="store_true", help="exhaustive check and count of optimal models")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("tree", parents=[common], help="minimum-norm spanning tree")
    p.add_argument("path", help="graph file with vertices, edges and optional weights")
    p.add_argument("--q", default="2", help="norm exponent: integer >= 1 or inf (default 2)")
    p.add_argument("--weights", default=None, help="JSON file with the d x |E| weight matrix")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="algebraic")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("gen", parents=[common], help="emit a seeded random problem file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--d-max", type=int, default=2)
    p.add_argument("--kind", action="append", choices=testkit.KINDS)
    p.add_argument("--objective", action="append", choices=testkit.OBJECTIVES)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="cross-check all solvers against brute force")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads < 1:
            raise InputError("--threads must be >= 1")
        text = args.func(args)
    except NlmoptError as exc:
        print(f"nlmopt: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"nlmopt: error: {exc}", file=sys.stderr)
        return InputError.exit_code
    except AssertionError as exc:
        print(f"nlmopt: internal error: {exc}", file=sys.stderr)
        return ContractError.exit_code
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0
