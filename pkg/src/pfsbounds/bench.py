"""Benchmark harness: compare lower bounds with previously best-known values.

For an instance ``I`` with previous best lower bound ``PLB(I)`` the relative
percentage deviation of a bound is ``100 (LB(I) - PLB(I)) / PLB(I)``. Per
group and bound we count instances where the bound improved, equalled or
worsened the reference and average the deviations (ARPD). The pseudo-bound
``best`` is the per-instance maximum over the requested bounds.

Deviations are kept as exact fractions and rounded half-to-even to four
decimals only when printed, so reports do not depend on evaluation order.
"""

from __future__ import annotations

import csv
import io
import json
import operator
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .bounds import LOWER_BOUNDS, _BEST, _PS, bound_label, compute_bound, resolve_threads
from .errors import PFSError
from .instance import Instance, iter_instance_files, read_instances

DEFAULT_GROUPS = "small<=60,large>=100"
BEST = "best"

_OPS = {"<=": operator.le, ">=": operator.ge, "<": operator.lt, ">": operator.gt,
        "==": operator.eq, "=": operator.eq}
_RULE = re.compile(r"^\s*([A-Za-z_][\w-]*)\s*(<=|>=|==|<|>|=)\s*(\d+)\s*$")


class BenchError(PFSError):
    pass


@dataclass(frozen=True)
class ReferenceEntry:
    instance: str
    plb: int
    ub: int | None = None


@dataclass
class BenchRow:
    instance: str
    n: int
    m: int
    values: dict[str, int]
    plb: int
    ub: int | None = None
    runtime: dict[str, float] = field(default_factory=dict)

    @property
    def best(self) -> int:
        return max(self.values.values())

    def value(self, bound: str) -> int:
        return self.best if bound == BEST else self.values[bound]

    def rpd(self, bound: str) -> Fraction | None:
        """Exact deviation in percent; None when the reference is zero."""
        if self.plb == 0:
            return None
        return Fraction(100 * (self.value(bound) - self.plb), self.plb)

    @property
    def runtime_ms(self) -> float:
        return sum(self.runtime.values()) * 1000.0


@dataclass(frozen=True)
class GroupSummary:
    group: str
    bound: str
    size: int
    improved: int
    equal: int
    worsened: int
    arpd: Fraction | None

    @property
    def arpd4(self) -> Decimal | None:
        return None if self.arpd is None else round4(self.arpd)


@dataclass
class BenchResult:
    bounds: list[str]
    rows: list[BenchRow]
    summaries: list[GroupSummary]
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def summary(self, group: str, bound: str) -> GroupSummary:
        for s in self.summaries:
            if s.group == group and s.bound == bound:
                return s
        raise KeyError((group, bound))

    def violations(self) -> list[str]:
        """Rows where some bound exceeds the best-known upper bound."""
        out = []
        for r in self.rows:
            if r.ub is None:
                continue
            for b, v in r.values.items():
                if v > r.ub:
                    out.append(f"{r.instance}: {b} = {v} exceeds UB {r.ub}")
        return out


def round4(x: Fraction) -> Decimal:
    d = Decimal(x.numerator) / Decimal(x.denominator)
    return d.quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN)


def parse_group_rule(text: str) -> list[tuple[str, str, int]]:
    """Parse ``"small<=60,large>=100"`` into ``[(label, op, value), ...]``."""
    rules = []
    for part in text.split(","):
        if not part.strip():
            continue
        m = _RULE.match(part)
        if not m:
            raise ValueError(f"bad group rule {part!r}; expected e.g. 'small<=60'")
        rules.append((m.group(1), m.group(2), int(m.group(3))))
    if not rules:
        raise ValueError("empty group rule")
    return rules


def group_of(n_jobs: int, rules) -> str | None:
    for label, op, value in rules:
        if _OPS[op](n_jobs, value):
            return label
    return None


def read_reference(path: str | Path) -> dict[str, ReferenceEntry]:
    """Load an ``instance,plb,ub`` CSV; ``ub`` may be blank."""
    with open(path, newline="") as fh:
        return parse_reference(fh.read(), str(path))


def parse_reference(text: str, source: str = "reference") -> dict[str, ReferenceEntry]:
    reader = csv.DictReader(io.StringIO(text))
    missing = {"instance", "plb"} - set(reader.fieldnames or ())
    if missing:
        raise BenchError(f"{source}: header lacks column(s) {sorted(missing)}")
    out = {}
    for k, rec in enumerate(reader, start=2):
        try:
            plb = int(rec["plb"])
            ub = rec.get("ub")
            ub = int(ub) if ub not in (None, "") else None
        except ValueError as exc:
            raise BenchError(f"{source} line {k}: {exc}") from None
        if plb < 0 or (ub is not None and ub < plb):
            raise BenchError(f"{source} line {k}: need 0 <= plb <= ub")
        out[rec["instance"]] = ReferenceEntry(rec["instance"], plb, ub)
    return out


def _check_bounds(bounds):
    for b in bounds:
        if not (b in LOWER_BOUNDS or _PS.match(b) or _BEST.match(b)):
            raise ValueError(f"{b!r} is not a lower bound usable in a benchmark")
        bound_label(b)


def _lookup(refs, inst: Instance, path: Path, single: bool):
    keys = [inst.name]
    if single:
        keys += [path.stem, path.name]
    for key in keys:
        if key in refs:
            return refs[key]
    return None


def _evaluate(inst, ref, bounds, threads):
    try:
        results = [compute_bound(inst, b, threads=threads) for b in bounds]
    except (PFSError, ValueError) as exc:
        return f"{ref.instance}: {exc}"
    return BenchRow(ref.instance, inst.n_jobs, inst.n_machines,
                    {r.bound: r.value for r in results}, ref.plb, ref.ub,
                    {r.bound: r.runtime for r in results})


def run_bench_instances(pairs: Sequence[tuple[Instance, ReferenceEntry]], bounds: Sequence[str],
                        group_rule: str = DEFAULT_GROUPS, threads: int = 1) -> BenchResult:
    """Benchmark already-loaded instances, each paired with its reference entry."""
    bounds = list(bounds)
    _check_bounds(bounds)
    rules = parse_group_rule(group_rule)
    threads = resolve_threads(threads)
    if threads == 1:
        rows = [_evaluate(i, r, bounds, 1) for i, r in pairs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda ir: _evaluate(ir[0], ir[1], bounds, 1), pairs))
    errors = [r for r in rows if isinstance(r, str)]
    rows = sorted((r for r in rows if not isinstance(r, str)), key=lambda r: r.instance)
    warnings = [f"{r.instance}: plb is 0, RPD undefined; excluded from ARPD"
                for r in rows if r.plb == 0]
    return BenchResult(bounds, rows, summarize(rows, bounds, rules), errors, warnings)


def run_bench(instance_dir: str | Path, ref_file: str | Path, bounds: Sequence[str],
              group_rule: str = DEFAULT_GROUPS, threads: int = 1, fmt: str = "auto") -> BenchResult:
    """Run ``bounds`` over every instance file in ``instance_dir``.

    Instances are matched to reference rows by instance name, or for
    single-instance files also by the file name with or without extension.
    Unreadable files and missing references are collected in ``errors``
    and the affected instances are left out of the report.
    """
    refs = read_reference(ref_file)
    pairs, errors = [], []
    for path in iter_instance_files(instance_dir):
        try:
            found = read_instances(path, fmt)
        except (PFSError, OSError, ValueError) as exc:
            errors.append(f"{path.name}: {exc}")
            continue
        for inst in found:
            ref = _lookup(refs, inst, path, len(found) == 1)
            if ref is None:
                errors.append(f"{inst.name}: no reference entry")
                continue
            pairs.append((inst, ref))
    result = run_bench_instances(pairs, bounds, group_rule, threads)
    result.errors = errors + result.errors
    return result


def summarize(rows: Sequence[BenchRow], bounds: Sequence[str], rules) -> list[GroupSummary]:
    out = []
    for label, _, _ in rules:
        members = [r for r in rows if group_of(r.n, rules) == label]
        for b in [*bounds, BEST]:
            up = sum(r.value(b) > r.plb for r in members)
            eq = sum(r.value(b) == r.plb for r in members)
            rpds = [x for x in (r.rpd(b) for r in members) if x is not None]
            arpd = sum(rpds, Fraction(0)) / len(rpds) if rpds else None
            out.append(GroupSummary(label, b, len(members), up, eq, len(members) - up - eq, arpd))
    return out


# -- reports -----------------------------------------------------------------


def _fmt_rpd(x):
    return "" if x is None else str(round4(x))


def _row_cells(r: BenchRow, bounds, runtime):
    cells = [r.instance, r.n, r.m, *(r.values[b] for b in bounds), r.best, r.plb,
             *(_fmt_rpd(r.rpd(b)) for b in [*bounds, BEST])]
    if runtime:
        cells.append(f"{r.runtime_ms:.3f}")
    return cells


def _header(bounds, runtime):
    head = ["instance", "n", "m", *bounds, "best", "plb", *(f"rpd_{b}" for b in [*bounds, BEST])]
    return head + ["runtime_ms"] if runtime else head


SUMMARY_HEADER = ["group", "bound", "size", "improved", "equal", "worsened", "arpd"]


def _summary_cells(s: GroupSummary):
    return [s.group, s.bound, s.size, s.improved, s.equal, s.worsened,
            "" if s.arpd is None else str(s.arpd4)]


def emit_report(result: BenchResult, fmt: str = "csv", runtime: bool = True) -> str:
    """Render a benchmark result as ``csv``, ``table`` or ``jsonl`` text.

    The CSV holds the per-instance rows, a blank line, then the group
    summaries as a second CSV. Pass ``runtime=False`` for output that is
    byte-identical across runs.
    """
    bounds = result.bounds
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_header(bounds, runtime))
        w.writerows(_row_cells(r, bounds, runtime) for r in result.rows)
        if result.summaries:
            buf.write("\n")
            w.writerow(SUMMARY_HEADER)
            w.writerows(_summary_cells(s) for s in result.summaries)
        return buf.getvalue()
    if fmt == "jsonl":
        lines = []
        for r in result.rows:
            rec = {"instance": r.instance, "n": r.n, "m": r.m, "bounds": r.values,
                   "best": r.best, "plb": r.plb,
                   "rpd": {b: _fmt_rpd(r.rpd(b)) or None for b in [*bounds, BEST]}}
            if runtime:
                rec["runtime_ms"] = round(r.runtime_ms, 3)
            lines.append(json.dumps(rec, sort_keys=True))
        for s in result.summaries:
            lines.append(json.dumps(dict(zip(SUMMARY_HEADER, _summary_cells(s))), sort_keys=True))
        return "".join(line + "\n" for line in lines)
    if fmt == "table":
        head = _header(bounds, runtime)
        rows = [[str(c) for c in _row_cells(r, bounds, runtime)] for r in result.rows]
        parts = [_table(head, rows)]
        if result.summaries:
            srows = [[str(c) for c in _summary_cells(s)] for s in result.summaries]
            parts.append(_table(SUMMARY_HEADER, srows))
        return "\n".join(parts)
    raise ValueError(f"unknown report format {fmt!r}")


def _table(head, rows):
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h)
              for k, h in enumerate(head)]
    fmt_line = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths)).rstrip()
    lines = [fmt_line(head), fmt_line(["-" * w for w in widths])]
    lines += [fmt_line(r) for r in rows]
    return "\n".join(lines) + "\n"
