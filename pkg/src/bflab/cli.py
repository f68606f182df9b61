"""Command-line entry point ``bflab``.

Exit codes: 0 success, 2 precondition error (JSON error on stdout),
3 cost-guard rejection.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from . import analysis, cluster, crossratio, equations, formstats, generators, setops
from .core import DEFAULT_MAX_COST, BflabError, CostGuardError, PreconditionError, direction_of, parse_scalar
from .io import (
    dumps_csv,
    dumps_json,
    read_fit_csv,
    read_form,
    read_lines,
    read_points,
    read_scalars,
    write_bundle,
    write_points,
    write_scalars,
)


@dataclass
class RunConfig:
    seed: int = 0
    format: str = "json"
    max_cost: int = DEFAULT_MAX_COST
    st_constant: float = 4.0
    c_param: str = "1"
    out: str | None = None


def _config(args) -> RunConfig:
    return RunConfig(args.seed, args.format, args.max_cost, args.st_constant, args.c_param, args.out)


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


# --- subcommand handlers ---------------------------------------------------------


def cmd_setop(args, cfg):
    A, B = read_scalars(args.a), read_scalars(args.b)
    guard = {"max_cost": cfg.max_cost, "force": args.force}
    op = setops.SetOp.parse(args.op)
    out = {"op": op.value, "mass": len(A) * len(B)}
    if args.table:
        table = setops.representation_table(A, B, op, **guard)
        out["card"] = len(table)
        out["table"] = [[s, table[s]] for s in sorted(table)]
    else:
        out["card"] = setops.combined_size(A, B, op, **guard)
    return out


def cmd_energy(args, cfg):
    A = read_scalars(args.a)
    B = read_scalars(args.b) if args.b else A
    guard = {"max_cost": cfg.max_cost, "force": args.force}
    return {"op": "energy", "card": setops.combined_size(A, B, "sum", **guard), "mass": len(A) * len(B),
            "energy": setops.additive_energy(A, B, **guard)}


def cmd_weak_es(args, cfg):
    return setops.weak_es_report(read_scalars(args.a))


def cmd_form(args, cfg):
    P = read_points(args.points)
    form = read_form(args.form)
    guard = {"max_cost": cfg.max_cost, "force": args.force}
    out = {"points": len(P), "form": form.kind, "matrix": [list(r) for r in form.matrix]}
    if args.values:
        values = formstats.value_set(P, form, **guard)
        out.update(card=len(values), values=list(values))
    elif args.energy:
        out["energy"] = formstats.form_energy(P, form, **guard)
    elif args.pinned:
        partners = read_points(args.partners) if args.partners else None
        out["pinned"] = formstats.pinned_form_energy(P, form, partners, **guard)
    elif args.distance_energy:
        out["distance_energy"] = formstats.distance_energy(P, **guard)
    else:
        split = formstats.split_by_line_richness(P, args.split)
        out.update(w0=split.threshold, n_poor=split.n_poor, n_rich=split.n_rich,
                   fibers=[[d.a, d.b, n] for d, n in split.fibers.items()])
    return out


def cmd_crossratio(args, cfg):
    A = read_scalars(args.a)
    values = crossratio.cross_ratio_set(A, max_cost=cfg.max_cost, force=args.force)
    out = {"size": len(A), "card": len(values)}
    if not args.count_only:
        out["values"] = list(values)
    return out


def cmd_crossratio_dirs(args, cfg):
    pts = read_points(args.points, dedupe=False)
    if len(pts) == 0 or len(pts) % 4:
        raise PreconditionError("crossratio-dirs needs a multiple of four points")
    rows = []
    for i in range(0, len(pts), 4):
        quad = pts[i:i + 4]
        dirs = [direction_of(p) for p in quad]
        rows.append({"directions": [list(d) for d in dirs],
                     "cross_ratio": crossratio.cross_ratio_of_directions(*dirs),
                     "area_cross_ratio": crossratio.area_cross_ratio(*quad)})
    return {"quadruples": rows}


def cmd_gen(args, cfg):
    if args.family == "erdos":
        bundle = generators.erdos_construction(args.n)
        if args.out:
            write_bundle(bundle, args.out)
        return {"N": bundle.n, "sizes": bundle.sizes(), "out": args.out}
    if args.family == "progression":
        values = generators.make_progression(args.kind, parse_scalar(args.start), parse_scalar(args.step), args.n)
    elif args.family == "random":
        if args.points:
            pts = generators.random_point_set(cfg.seed, args.n, args.bound, args.rich_lines, args.per_line)
            if args.out:
                write_points(args.out, pts)
            return {"family": "random-points", "size": len(pts), "seed": cfg.seed, "out": args.out}
        values = generators.random_set(cfg.seed, args.n, args.bound)
    else:  # grid
        pts = generators.make_grid(read_scalars(args.a), read_scalars(args.b), args.puncture)
        if args.out:
            write_points(args.out, pts)
        return {"family": "grid", "size": len(pts), "out": args.out}
    if args.out:
        write_scalars(args.out, values)
    return {"family": args.family, "size": len(values), "out": args.out,
            "values": list(values) if not args.out else None}


def cmd_count(args, cfg):
    guard = {"max_cost": cfg.max_cost, "force": args.force}
    kind = args.kind
    if kind == "affine-product":
        sets = [read_scalars(p) for p in (args.a, args.b, args.c, args.d)]
        return {"count": equations.count_affine_product(*sets, **guard), "equation": "a - b = c d"}
    if kind == "teq":
        return {"count": equations.count_teq(read_scalars(args.t), **guard), "equation": "t1 t2 = t3 t4 - t5 t6"}
    if kind == "ternary":
        alphas = [parse_scalar(x) for x in args.alpha]
        return {"count": equations.count_ternary_linear(read_scalars(args.a), *alphas, **guard),
                "alpha": alphas}
    if kind == "incidences":
        P = read_points(args.points)
        lines = read_lines(args.lines)
        return equations.incidence_report(P, lines, st_constant=cfg.st_constant, **guard)
    P = read_points(args.points)
    Q = read_points(args.partners) if args.partners else P
    form = read_form(args.form)
    c = parse_scalar(args.value)
    return {"count": equations.count_form_value(P, Q, form, c, **guard), "value": c}


def cmd_cluster(args, cfg):
    A = read_scalars(args.a)
    return cluster.run_pipeline(A, M=args.m, c_param=parse_scalar(cfg.c_param))


def _family_sets(args, cfg):
    sets = []
    if args.a:
        for path in args.a:
            sets.append((Path(path).name, read_scalars(path)))
        return sets
    for n in _int_list(args.sizes):
        if args.family == "interval":
            A = generators.make_progression("arithmetic", 1, 1, n)
        elif args.family == "geometric":
            A = generators.make_progression("geometric", 1, 2, n)
        else:
            A = generators.random_set(cfg.seed + n, n, args.bound or 4 * n)
        sets.append((f"{args.family}-{n}", A))
    return sets


def cmd_suite(args, cfg):
    name = args.name
    if name == "thm34":
        if args.points:
            P = read_points(args.points[0])
        else:
            P = generators.random_point_set(cfg.seed, args.random, args.bound or 12, args.rich_lines, args.per_line)
        return analysis.suite_thm34(P, args.w0, seed=cfg.seed)
    if name in ("eps1", "eps2"):
        return analysis.theorem_suite(name, _family_sets(args, cfg), seed=cfg.seed)
    if name == "construction":
        return analysis.suite_construction(_int_list(args.n), seed=cfg.seed)
    if name == "weak-es":
        if not args.a:
            raise PreconditionError("weak-es needs --a FILE")
        return analysis.suite_weak_es(read_scalars(args.a[0]), seed=cfg.seed)
    if args.points:
        sets = [(Path(p).name, read_points(p)) for p in args.points]
    else:
        sets = [(f"random-{n}", generators.random_point_set(cfg.seed + n, n, args.bound or n))
                for n in _int_list(args.sizes)]
    return analysis.suite_e_upper(sets, seed=cfg.seed)


def cmd_fit(args, cfg):
    fit = analysis.fit_exponent(read_fit_csv(args.csv))
    return {"slope": fit.slope, "intercept": fit.intercept, "rms": fit.rms_residual,
            "points": [list(p) for p in fit.points]}


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write the report (or generated data) here instead of stdout")
    common.add_argument("--max-cost", type=int, default=DEFAULT_MAX_COST, help="pair-evaluation budget")
    common.add_argument("--force", action="store_true", help="ignore the cost budget")
    common.add_argument("--st-constant", type=float, default=4.0)
    common.add_argument("--c-param", default="1")

    parser = argparse.ArgumentParser(prog="bflab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"bflab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("setop", parents=[common], help="sum/difference/product/ratio sets")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--op", required=True, choices=("sum", "diff", "prod", "ratio"))
    p.add_argument("--table", action="store_true", help="emit the representation table")
    p.set_defaults(func=cmd_setop)

    p = sub.add_parser("energy", parents=[common], help="additive energy E(A, B)")
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("weak-es", parents=[common], help="energy chain and Cauchy-Schwarz check")
    p.add_argument("--a", required=True)
    p.set_defaults(func=cmd_weak_es)

    p = sub.add_parser("form", parents=[common], help="bilinear form statistics of a point set")
    p.add_argument("--points", required=True)
    p.add_argument("--form", default="cross", help="dot, cross, or a form file")
    p.add_argument("--partners", help="second point set for --pinned")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--values", action="store_true")
    g.add_argument("--energy", action="store_true")
    g.add_argument("--pinned", action="store_true")
    g.add_argument("--distance-energy", action="store_true")
    g.add_argument("--split", type=int, metavar="W0")
    p.set_defaults(func=cmd_form)

    p = sub.add_parser("crossratio", parents=[common], help="the cross-ratio set R(A)")
    p.add_argument("--a", required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_crossratio)

    p = sub.add_parser("crossratio-dirs", parents=[common], help="cross-ratios of directions, 4 points per group")
    p.add_argument("--points", required=True)
    p.set_defaults(func=cmd_crossratio_dirs)

    p = sub.add_parser("gen", parents=[common], help="generate sets, point sets and the construction")
    p.add_argument("family", choices=("progression", "grid", "random", "erdos"))
    p.add_argument("--kind", choices=("arithmetic", "geometric"), default="arithmetic")
    p.add_argument("--start", default="1")
    p.add_argument("--step", default="1")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--bound", type=int, default=100)
    p.add_argument("--points", action="store_true", help="random: emit a point set")
    p.add_argument("--rich-lines", type=int, default=0)
    p.add_argument("--per-line", type=int, default=0)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--puncture", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("count", parents=[common], help="exact solution and incidence counts")
    p.add_argument("kind", choices=("affine-product", "teq", "ternary", "incidences", "form-value"))
    for flag in ("--a", "--b", "--c", "--d", "--t", "--points", "--lines", "--partners"):
        p.add_argument(flag)
    p.add_argument("--alpha", nargs=3, default=("1", "1", "-1"))
    p.add_argument("--form", default="dot")
    p.add_argument("--value", default="1")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("cluster", parents=[common], help="slope-cluster pipeline on a positive set")
    p.add_argument("--a", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--report", choices=("json",), default="json")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("suite", parents=[common], help="measurement suites")
    p.add_argument("name", choices=sorted(analysis.SUITES))
    p.add_argument("--a", action="append", help="scalar set file (repeatable)")
    p.add_argument("--points", action="append", help="point set file (repeatable)")
    p.add_argument("--family", choices=("interval", "geometric", "random"), default="interval")
    p.add_argument("--sizes", default="16,64,256")
    p.add_argument("--bound", type=int)
    p.add_argument("--random", type=int, default=500, help="thm34: size of the random point set")
    p.add_argument("--rich-lines", type=int, default=0)
    p.add_argument("--per-line", type=int, default=0)
    p.add_argument("--w0", type=int)
    p.add_argument("--n", default="64,4096", help="construction: comma-separated N values")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("fit", parents=[common], help="log-log exponent fit of size,value rows")
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_fit)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _error(exc: Exception, code: int, kind: str) -> int:
    sys.stdout.write(dumps_json({"error": str(exc), "kind": kind, "exit": code, "version": __version__}))
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    try:
        result = args.func(args, cfg)
    except CostGuardError as exc:
        return _error(exc, 3, "cost-guard")
    except (BflabError, ZeroDivisionError) as exc:
        return _error(exc, 2, "precondition")
    if isinstance(result, dict) and "config" not in result:
        result["config"] = asdict(cfg)
        result.setdefault("version", __version__)
    text = dumps_csv(result) if cfg.format == "csv" else dumps_json(result)
    out = None if args.command == "gen" else cfg.out
    _emit(text, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
