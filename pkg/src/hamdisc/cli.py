"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 infeasible parameters,
3 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import BoundReport, bound_for, bound_linf_general, bound_random, linf_from_lp
from .constructions import (
    antipodal_code,
    hamming_code,
    jittered_code,
    perfect_code_complement_minimizer,
    random_uniform_code,
)
from .discrepancy import (
    WeightVector,
    distance_distribution,
    hemisphere_linf,
    hemisphere_power,
    linf_discrepancy,
    lp_power,
    macwilliams_transform,
    parse_radii,
    root,
    stolarsky_hemisphere,
    stolarsky_uniform,
)
from .experiment import ExperimentSpec, run_experiment, verify_all
from .hamming import DimensionError, InfeasibleError, format_code, read_code
from .io import dumps, fraction_fields, to_csv
from .kernels import ball_intersection_expansion, kernel_values, krawtchouk_table
from .search import exhaustive_min, local_search_min, parse_objective

EXIT_USAGE, EXIT_INFEASIBLE, EXIT_VERIFY = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _number(text: str):
    if text in ("inf", "infinity"):
        return math.inf
    q = Fraction(text)
    return int(q) if q.denominator == 1 else float(q)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, help="64-bit master seed for randomized commands")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    p.add_argument("--threads", type=int, default=1)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="hamdisc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hamdisc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a code and write it in the code file format")
    c.add_argument("kind", choices=("random", "jittered", "antipodal", "hamming", "hamming-complement"))
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--size", type=int, help="N for random/jittered, number of pairs K for antipodal")
    c.add_argument("--extra-point", action="store_true", help="antipodal: add one unpaired point")

    d = sub.add_parser("discrepancy", parents=[common], help="measure a code")
    d.add_argument("kind", choices=("lp", "linf", "hemisphere", "stolarsky", "spectrum"))
    d.add_argument("variant", nargs="?", choices=("uniform", "hemisphere"), help="stolarsky identity variant")
    d.add_argument("--code", type=Path, required=True)
    d.add_argument("--weights", default="uniform", help="uniform | hemisphere | cutoff:BETA | radii:LIST | file:PATH")
    d.add_argument("--p", type=_number, default=2)
    d.add_argument("--radii", default="all", help="comma list or ranges, e.g. 0,2-4")

    k = sub.add_parser("kernels", parents=[common], help="tabulate Krawtchouk values and radial kernels")
    k.add_argument("kind", choices=("krawtchouk", "distance", "intersection", "volume", "expansion"))
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--k", type=int, help="Krawtchouk degree")

    b = sub.add_parser("bounds", parents=[common], help="evaluate closed-form bounds")
    b.add_argument("action", choices=("eval", "compare"))
    b.add_argument("--which", choices=("random", "jittered", "linf", "linf-restricted", "band"))
    b.add_argument("--p", type=_number, default=2)
    b.add_argument("--N", type=int)
    b.add_argument("--n", type=int)
    b.add_argument("--alpha", type=float)
    b.add_argument("--beta", type=float)
    b.add_argument("--c", type=float, default=1.0)
    b.add_argument("--C", type=float, default=1.0)
    b.add_argument("--code", type=Path)

    s = sub.add_parser("search", parents=[common], help="extremal discrepancy search")
    s.add_argument("method", choices=("exhaustive", "local"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--objective", required=True, help="lp:WEIGHTS:P | linf:RADII | hemisphere:P")
    s.add_argument("--restarts", type=int, default=8)
    s.add_argument("--max-steps", type=int, default=1000)
    s.add_argument("--budget", type=int, default=10**7)

    e = sub.add_parser("experiment", parents=[common], help="Monte Carlo campaign")
    e.add_argument("--construction", choices=("random", "jittered", "antipodal"), required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--size", type=int, required=True)
    e.add_argument("--objective", default="lp:uniform:2")
    e.add_argument("--trials", type=int, default=100)
    e.add_argument("--extra-point", action="store_true")

    v = sub.add_parser("verify", parents=[common], help="run the identity and characterization suite")
    v.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


def _need_seed(args) -> int:
    if args.seed is None:
        raise UsageError("--seed is required for randomized commands")
    return args.seed


def cmd_construct(args) -> str:
    n = args.n
    if args.kind in ("hamming", "hamming-complement"):
        m = (n + 1).bit_length() - 1
        if (1 << m) - 1 != n:
            raise InfeasibleError(f"Hamming codes need n = 2^m - 1, got {n}")
        Z = hamming_code(m) if args.kind == "hamming" else perfect_code_complement_minimizer(m)
        return format_code(Z)
    if args.size is None:
        raise UsageError("--size is required")
    seed = _need_seed(args)
    if args.kind == "random":
        Z = random_uniform_code(n, args.size, seed)
    elif args.kind == "jittered":
        Z = jittered_code(n, args.size, seed)
    else:
        Z = antipodal_code(n, args.size, args.extra_point, seed)
    return format_code(Z)


def _value_record(value, exact: Fraction | None, residual=None) -> dict:
    return {"value": value, **fraction_fields(exact), "identity_residual": residual}


def cmd_discrepancy(args):
    Z = read_code(args.code)
    if args.kind == "lp":
        if args.p == math.inf:
            raise UsageError("use 'discrepancy linf' for p = inf")
        G = WeightVector.parse(args.weights, Z.n)
        power = lp_power(G, Z, args.p)
        return _value_record(root(power, args.p), power if isinstance(power, Fraction) else None)
    if args.kind == "linf":
        q = linf_discrepancy(parse_radii(args.radii, Z.n), Z)
        return _value_record(float(q), q)
    if args.kind == "hemisphere":
        if args.p == math.inf:
            q = hemisphere_linf(Z)
            return _value_record(float(q), q)
        power = hemisphere_power(Z, args.p)
        return _value_record(root(power, args.p), power if isinstance(power, Fraction) else None)
    if args.kind == "spectrum":
        A = distance_distribution(Z)
        dual = macwilliams_transform(A, Z.N)
        if args.format == "csv":
            return to_csv(["w", "distance", "dual"], zip(range(Z.n + 1), A, dual))
        return {"n": Z.n, "N": Z.N, "distance": list(A), "dual": list(dual)}
    if args.variant is None:
        raise UsageError("stolarsky needs a variant: uniform or hemisphere")
    if args.variant == "uniform":
        ident = stolarsky_uniform(Z)
        rec = _value_record(float(ident.lhs), ident.lhs, ident.residual)
        rec.update(lhs=ident.lhs, rhs=ident.rhs)
        return rec
    ident = stolarsky_hemisphere(Z)
    rec = _value_record(float(ident.lhs), ident.lhs, ident.residual)
    rec.update(
        lhs=ident.lhs, rhs_kernel=ident.rhs_kernel, rhs_dual=ident.rhs_dual, kernel_mean_gap=ident.kernel_mean_gap
    )
    return rec


def cmd_kernels(args):
    n = args.n
    if args.kind == "krawtchouk":
        K = krawtchouk_table(n)
        if args.k is None:
            rows = [(k, w, K[k, w]) for k in range(n + 1) for w in range(n + 1)]
            header = ["k", "w", "value"]
        else:
            rows = [(w, K[args.k, w]) for w in range(n + 1)]
            header = ["w", "value"]
    elif args.kind == "expansion":
        if n % 2 == 0:
            raise DimensionError("the expansion needs odd n")
        ex = ball_intersection_expansion((n - 1) // 2)
        rows = [(k, ex.coeff(k)) for k in range(n + 1)]
        header = ["k", "value"]
    else:
        rows = list(enumerate(kernel_values(args.kind, n)))
        header = ["w", "value"]
    if args.format == "csv":
        return to_csv(header, rows)
    return {"kernel": args.kind, "n": n, "columns": header, "rows": [list(r) for r in rows]}


def cmd_bounds(args):
    if args.action == "eval":
        if args.which is None:
            raise UsageError("--which is required")
        kw = {k: getattr(args, k) for k in ("p", "N", "n", "alpha", "beta", "c", "C") if getattr(args, k) is not None}
        try:
            return bound_for(args.which, **kw).to_dict()
        except KeyError as exc:
            raise UsageError(f"missing parameter --{exc.args[0]}") from None
    if args.code is None:
        raise UsageError("--code is required for compare")
    Z = read_code(args.code)
    p = args.p
    rows = []
    G = WeightVector.uniform(Z.n)
    measured = lp_power(G, Z, p)
    dp = root(measured, p)
    rep = bound_random(p, Z.N, Z.n)
    rows.append(_compare_row(f"D_{p}(uniform)", dp, rep))
    rows.append(_compare_row(f"D_{p}(uniform)^{p}", float(measured), _expectation(rep, p)))
    radii = range(Z.n)
    dinf = float(linf_discrepancy(radii, Z))
    rows.append(_compare_row("D_inf(all radii)", dinf, bound_linf_general(Z.n, Z.N)))
    if p >= 1:
        lifted = linf_from_lp(Z.n, Z.n, p, root(lp_power(WeightVector.on_radii(Z.n, radii), Z, p), p))
        rows.append(_compare_row("D_inf via L_p", dinf, BoundReport("linf-from-lp", {"p": p}, lifted)))
    header = ["quantity", "measured", "bound", "bound_name", "applicable", "holds"]
    if args.format == "csv":
        return to_csv(header, rows)
    return {"n": Z.n, "N": Z.N, "columns": header, "rows": rows}


def _expectation(rep: BoundReport, p) -> BoundReport:
    if rep.value is None or p < 1:
        return BoundReport("expectation", rep.params, None, False, rep.reason or "needs p >= 1")
    return BoundReport("expectation", rep.params, rep.value**p)


def _compare_row(name: str, measured: float, rep: BoundReport) -> list:
    holds = None if rep.value is None else measured <= rep.value
    return [name, measured, rep.value, rep.name, rep.applicable, holds]


def cmd_search(args):
    obj = parse_objective(args.objective, args.n)
    if args.method == "exhaustive":
        res = exhaustive_min(args.n, args.size, obj, budget=args.budget)
    else:
        res = local_search_min(args.n, args.size, obj, _need_seed(args), args.restarts, args.max_steps)
    return res.to_dict()


def cmd_experiment(args):
    spec = ExperimentSpec(
        args.construction, args.n, args.size, args.objective, args.trials, _need_seed(args), args.extra_point
    )
    report = run_experiment(spec, threads=args.threads)
    if args.format == "csv":
        return to_csv(["trial", "value", "power"], _trial_rows(report))
    return report.to_json()


def _trial_rows(report):
    powers = report.powers or [None] * len(report.values)
    return [(i, v, pw) for i, (v, pw) in enumerate(zip(report.values, powers))]


def cmd_verify(args):
    results = verify_all(args.level)
    ok = all(r.passed for r in results)
    if args.format == "csv":
        out = to_csv(["check", "passed", "detail", "seconds"], [(r.name, r.passed, r.detail, r.seconds) for r in results])
    else:
        out = {"level": args.level, "passed": ok, "checks": [vars(r) for r in results]}
    return out, (0 if ok else EXIT_VERIFY)


COMMANDS = {
    "construct": cmd_construct,
    "discrepancy": cmd_discrepancy,
    "kernels": cmd_kernels,
    "bounds": cmd_bounds,
    "search": cmd_search,
    "experiment": cmd_experiment,
    "verify": cmd_verify,
}


def _emit(out, dest: Path | None) -> None:
    text = out if isinstance(out, str) else dumps(out)
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.write_text(text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hamdisc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleError, DimensionError) as exc:
        print(f"hamdisc: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as exc:
        print(f"hamdisc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code = 0
    if isinstance(result, tuple):
        result, code = result
    _emit(result, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
