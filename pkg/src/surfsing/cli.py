"""``surfsing`` command line.

Exit codes: 0 success, 1 input error, 2 internal error or search budget
exhausted, 3 conjecture violation under ``--fail-on-violation``.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .graphs import FamilyError, GraphError, generate_family, read_graph, serialize_resolution_graph
from .lattice import cycle_from_strings
from .monomial import CountBudgetError, IdealError, read_ideal
from .search import BudgetExceededError

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_VIOLATION = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(rep: dict, as_json: bool, render, out) -> None:
    out.write(report.to_json(rep) if as_json else render(rep))


def cmd_analyze(args, out) -> int:
    g = read_graph(args.graph)
    zmax = None
    if args.zmax is not None:
        try:
            zmax = cycle_from_strings([x for x in args.zmax.split(",") if x.strip()])
        except ValueError:
            raise InputError(f"bad cycle {args.zmax!r}") from None
    opts = report.AnalysisOptions(
        p_g=args.pg, e=args.e, gorenstein=args.gorenstein, nu=args.nu, mu=args.mu,
        zmax=zmax, t=args.t, budget=args.budget,
    )
    rep = report.analyze(g, opts)
    _emit(rep, args.json, report.render_analysis, out)
    return EXIT_OK


def cmd_conjecture_scan(args, out) -> int:
    if args.count < 0 or args.max_vertices < 1:
        raise InputError("--count must be >= 0 and --max-vertices >= 1")
    lo, hi = args.weights
    opts = report.ScanOptions(
        count=args.count, max_vertices=args.max_vertices, seed=args.seed,
        weight_range=(lo, hi), genus_range=tuple(args.genera), extra_edges=args.extra_edges,
        allow_non_minimal=args.allow_non_minimal, budget=args.budget,
    )
    rep = report.conjecture_scan(opts)
    _emit(rep, args.json, report.render_scan, out)
    if rep["violations"] and args.fail_on_violation:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_monomial_verify(args, out) -> int:
    if args.ideal and args.random:
        raise InputError("use either --ideal files or --random, not both")
    if args.ideal:
        ideals = [read_ideal(p) for p in args.ideal]
        if len({a.num_vars for a in ideals}) != 1:
            raise InputError("ideals live in different numbers of variables")
        instances = [ideals]
        params = {"ideal_files": [Path(p).name for p in args.ideal]}
    elif args.random:
        if args.vars < 1 or args.d < 1 or args.max_exp < 1 or args.count < 0:
            raise InputError("--vars, --d and --max-exp must be >= 1 and --count >= 0")
        instances = [report.random_lemma_instance(args.vars, args.d, args.max_exp, args.seed, i, args.density)
                     for i in range(args.count)]
        params = {"vars": args.vars, "d": args.d, "count": args.count, "max_exp": args.max_exp,
                  "seed": args.seed, "density": repr(args.density)}
    else:
        raise InputError("give --ideal files or --random")
    params["rays"] = args.rays
    rep = report.monomial_verify(instances, args.rays, args.seed, params)
    _emit(rep, args.json, report.render_monomial, out)
    return EXIT_OK


def cmd_generate(args, out) -> int:
    params = {"family": args.family}
    if args.family == "chain":
        params.update(n=args.n, w=args.w)
    elif args.family == "star":
        if not args.arms:
            raise InputError("star needs at least one --arm")
        params.update(center_weight=args.center, arms=args.arms, center_genus=args.center_genus)
    elif args.family == "cone":
        params.update(d=args.d)
    elif args.family == "dynkin":
        params.update(kind=args.kind, n=args.n)
    elif args.family == "random":
        params.update(n=args.n, seed=args.seed, weight_range=tuple(args.weights), genus_range=tuple(args.genera),
                    extra_edges=args.extra_edges)
    if params.get("n", 0) is None and args.family in ("chain", "random"):
        raise InputError(f"--n is required for family {args.family}")
    if args.family == "cone" and args.d is None:
        raise InputError("--d is required for family cone")
    g = generate_family(params)
    text = serialize_resolution_graph(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="surfsing", description="Resolution-graph invariants and smoothing bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="analyse one resolution graph")
    a.add_argument("graph")
    a.add_argument("--pg", type=int, help="geometric genus (enables the bound rows)")
    a.add_argument("--e", type=int, default=3, help="embedding dimension (default 3)")
    a.add_argument("--gorenstein", action="store_true", help="the singularity is Gorenstein")
    a.add_argument("--nu", type=int, help="multiplicity (default: -Z_min^2 as a proxy)")
    a.add_argument("--mu", type=int, help="Milnor number, for non-Gorenstein input")
    a.add_argument("--zmax", help="maximal cycle, comma-separated coefficients")
    a.add_argument("--t", type=int, help="level in the multiplicity bound")
    a.add_argument("--budget", type=int, help="enumeration node budget")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("conjecture-scan", help="test the characteristic-vector conjecture on random graphs")
    c.add_argument("--count", type=int, required=True)
    c.add_argument("--max-vertices", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--weights", type=_int_list, default=[-5, -1], help="lo,hi self-intersections")
    c.add_argument("--genera", type=_int_list, default=[0, 1], help="allowed genera")
    c.add_argument("--extra-edges", type=int, default=0, help="edges beyond a spanning tree")
    c.add_argument("--allow-non-minimal", action="store_true", help="keep graphs with rational -1 curves")
    c.add_argument("--fail-on-violation", action="store_true")
    c.add_argument("--budget", type=int)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_conjecture_scan)

    m = sub.add_parser("monomial-verify", help="check the colength inequality for monomial ideals")
    m.add_argument("--ideal", action="append", default=[], help="ideal file (repeatable)")
    m.add_argument("--random", action="store_true")
    m.add_argument("--vars", type=int, default=2)
    m.add_argument("--count", type=int, default=1)
    m.add_argument("--d", type=int, default=2)
    m.add_argument("--max-exp", type=int, default=4)
    m.add_argument("--density", type=float, default=0.3)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--rays", type=int, default=0, help="sampled rays per instance")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_monomial_verify)

    gen = sub.add_parser("generate", help="write a graph from a built-in family")
    gen.add_argument("--family", required=True, choices=["chain", "star", "cone", "dynkin", "random"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--w", type=int, default=-2)
    gen.add_argument("--d", type=int)
    gen.add_argument("--kind", choices=["A", "D", "E"])
    gen.add_argument("--center", type=int, default=-2)
    gen.add_argument("--center-genus", type=int, default=0)
    gen.add_argument("--arm", dest="arms", type=_int_list, action="append", help="arm weights, e.g. -2,-3")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--weights", type=_int_list, default=[-4, -2])
    gen.add_argument("--genera", type=_int_list, default=[0])
    gen.add_argument("--extra-edges", type=int, default=0)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_generate)
    return p


# Options whose values are comma lists that may start with a minus sign.
LIST_OPTIONS = ("--arm", "--weights", "--zmax", "--genera")


def _join_list_values(argv: list[str]) -> list[str]:
    """Turn ``--arm -2,-3`` into ``--arm=-2,-3`` so argparse does not read a flag."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in LIST_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = _join_list_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "weights", None) is not None and len(args.weights) != 2:
            raise InputError("--weights takes exactly two integers lo,hi")
        return args.func(args, out)
    except InputError as exc:
        print(f"surfsing: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceededError, CountBudgetError) as exc:
        print(f"surfsing: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GraphError, FamilyError, IdealError, ValueError, OSError) as exc:
        print(f"surfsing: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - last resort
        print(f"surfsing: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
