"""Command-line front end: ``pfsbounds <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 guard violation.
Job numbers on the command line are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .asymptotic import Distribution, run_asymptotic
from .bench import DEFAULT_GROUPS, emit_report, run_bench
from .bounds import _BEST, _PS, compute_bound, parse_bound_list, range_bounds
from .errors import GuardError, PFSError
from .exact import solve_exact
from .instance import FORMATS, GenSpec, generate, read_instances, serialize
from .makespan import makespan
from .prefix_suffix import enumerate_family, path_family_size

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_GUARD = 0, 1, 2, 3
PS_GUARD = 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _guard_ps(bounds, force):
    for b in bounds:
        if m := _PS.match(b):
            width = int(m.group(1)) + int(m.group(2))
        elif m := _BEST.match(b):
            width = int(m.group(1))
        else:
            continue
        if width > PS_GUARD and not force:
            raise GuardError(f"{b}: p + s = {width} > {PS_GUARD}; pass --force to run it anyway")


def _emit(out, records, as_json, text_lines):
    if as_json:
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


def _instances(args):
    return read_instances(args.file, args.format)


def cmd_makespan(args, out):
    perm = [j - 1 for j in _int_list(args.perm)]
    recs, lines = [], []
    for inst in _instances(args):
        c = makespan(inst, perm)
        recs.append({"instance": inst.name, "cmax": c})
        lines.append(f"Cmax = {c}")
    _emit(out, recs, args.json, _prefixed(recs, lines))


def _prefixed(recs, lines):
    if len({r["instance"] for r in recs}) <= 1:
        return lines
    return [f"{r['instance']}: {line}" for r, line in zip(recs, lines)]


def cmd_bounds(args, out):
    bounds = parse_bound_list(args.bound)
    _guard_ps(bounds, args.force)
    recs, lines = [], []
    for inst in _instances(args):
        for b in bounds:
            if b == "range":
                r = range_bounds(inst)
                rec = {"instance": inst.name, "bound": "range", "label": "RANGE",
                       "a": r.a, "b": r.b, "lower": r.lower, "upper": r.upper}
                recs.append(rec)
                lines.append(f"RANGE_LB = {r.lower}, RANGE_UB = {r.upper}")
                continue
            res = compute_bound(inst, b, threads=args.threads)
            recs.append({"instance": inst.name, **res.as_dict()})
            text = f"{res.label} = {res.value}"
            if b.startswith("best:"):
                text += f" (p={res.p}, s={res.s})"
            lines.append(text)
    _emit(out, recs, args.json, _prefixed(recs, lines))


def cmd_exact(args, out):
    recs, lines = [], []
    for inst in _instances(args):
        res = solve_exact(inst, collect_distinct=args.distinct, threads=args.threads)
        perm1 = [j + 1 for j in res.witness]
        rec = {"instance": inst.name, "opt": res.opt, "perm": perm1}
        text = f"OPT = {res.opt}, perm = {' '.join(map(str, perm1))}"
        if args.distinct:
            rec["distinct_makespans"] = res.distinct_makespans
            text += f", distinct = {res.distinct_makespans}"
        recs.append(rec)
        lines.append(text)
    _emit(out, recs, args.json, _prefixed(recs, lines))


def cmd_gen(args, out):
    spec = GenSpec(args.jobs, args.machines, args.min, args.max, args.seed)
    text = serialize(generate(spec), args.format)
    if args.output in (None, "-"):
        out.write(text)
    else:
        Path(args.output).write_text(text)


def cmd_bench(args, out):
    bounds = parse_bound_list(args.bounds)
    _guard_ps(bounds, args.force)
    result = run_bench(args.dir, args.ref, bounds, args.group_rule, args.threads, args.format)
    report = emit_report(result, args.report_format, runtime=not args.no_runtime)
    if args.report:
        Path(args.report).write_text(report)
    else:
        out.write(report)
    if args.report:
        if args.json:
            for s in result.summaries:
                out.write(json.dumps({"group": s.group, "bound": s.bound, "size": s.size,
                                      "improved": s.improved, "equal": s.equal,
                                      "worsened": s.worsened,
                                      "arpd": None if s.arpd is None else str(s.arpd4)},
                                     sort_keys=True) + "\n")
        else:
            for s in result.summaries:
                arpd = "-" if s.arpd is None else str(s.arpd4)
                out.write(f"{s.group:>8} {s.bound:>10}  up {s.improved:>4}  eq {s.equal:>4}"
                          f"  down {s.worsened:>4}  ARPD {arpd}\n")
    for w in result.warnings:
        sys.stderr.write(f"warning: {w}\n")
    for e in result.errors:
        sys.stderr.write(f"error: {e}\n")
    return EXIT_DATA if result.errors else EXIT_OK


def cmd_asymptotic(args, out):
    try:
        dist = Distribution.parse(args.dist)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = run_asymptotic(dist, args.axis, args.fixed, _int_list(args.grid), args.samples,
                         args.seed, threads=args.threads)
    out.write(rep.conjecture_csv() if args.conjecture else rep.to_csv())


def cmd_family(args, out):
    jobs = args.jobs if args.jobs is not None else args.p + args.s
    count = path_family_size(args.machines, args.p, args.s)
    out.write(f"|U_{args.p},{args.s}| = {count}\n")
    if args.enumerate:
        for path in enumerate_family(args.machines, jobs, args.p, args.s):
            out.write(" ".join(f"({i + 1},{j + 1})" for i, j in path) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pfsbounds", description="Permutation flowshop makespan bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def file_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--format", default="auto", choices=("auto", *FORMATS))
        p.add_argument("--json", action="store_true", help="one JSON record per line")
        return p

    p = file_cmd("makespan", "makespan of a permutation")
    p.add_argument("--perm", required=True, help="1-based job order, e.g. 3,1,2")
    p.set_defaults(func=cmd_makespan)

    p = file_cmd("bounds", "evaluate lower/upper bounds")
    p.add_argument("--bound", required=True,
                   help="comma list of lbm,lbm+,lbm++,lbj,lbj+,ubh,range,count-new,"
                        "count-heller,ps:P,S,best:K")
    p.add_argument("--threads", type=int, default=1, help="0 = all CPUs")
    p.add_argument("--force", action="store_true", help=f"allow p + s > {PS_GUARD}")
    p.set_defaults(func=cmd_bounds)

    p = file_cmd("exact", "exact optimum by enumeration (N <= 10)")
    p.add_argument("--distinct", action="store_true", help="count distinct makespans")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("gen", help="generate a uniform random instance")
    p.add_argument("--jobs", type=int, required=True)
    p.add_argument("--machines", type=int, required=True)
    p.add_argument("--min", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.add_argument("--format", default="plain", choices=FORMATS)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="benchmark bounds against reference lower bounds")
    p.add_argument("--dir", required=True)
    p.add_argument("--ref", required=True, help="CSV with header instance,plb,ub")
    p.add_argument("--bounds", required=True)
    p.add_argument("--group-rule", default=DEFAULT_GROUPS)
    p.add_argument("--report", help="write the report here instead of standard output")
    p.add_argument("--report-format", default="csv", choices=("csv", "table", "jsonl"))
    p.add_argument("--format", default="auto", choices=("auto", *FORMATS))
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-runtime", action="store_true", help="omit timings (reproducible output)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("asymptotic", help="Monte Carlo ratio check on growing instances")
    p.add_argument("--axis", choices=("n", "m"), required=True)
    p.add_argument("--fixed", type=int, required=True)
    p.add_argument("--grid", required=True, help="e.g. 100,500,2000")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--dist", default="uniform:1,99")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--conjecture", action="store_true", help="report (b/mu) LB >= OPT instead")
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("family", help="size (and members) of the i-type path family")
    p.add_argument("--machines", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--jobs", type=int, help="grid width for --enumerate (default p + s)")
    p.add_argument("--enumerate", action="store_true")
    p.set_defaults(func=cmd_family)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        code = args.func(args, out)
        return EXIT_OK if code is None else code
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except GuardError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_GUARD
    except (PFSError, ValueError, OverflowError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
