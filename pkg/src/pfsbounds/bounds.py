"""Closed-form makespan bounds and distinct-makespan estimators.

Every function takes an :class:`~pfsbounds.instance.Instance` and runs in
``O(NM)``. :func:`compute_bounds` evaluates a list of bound identifiers
(the same strings the command line accepts) and returns
:class:`BoundResult` records.
"""

from __future__ import annotations

import math
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .instance import Instance

LABELS = {
    "lbm": "LB_M",
    "lbm+": "LB_M+",
    "lbm++": "LB_M++",
    "lbj": "LB_J",
    "lbj+": "LB_J+",
    "ubh": "UB_H",
    "range": "RANGE_LB",
    "range-ub": "RANGE_UB",
    "count-new": "COUNT_NEW",
    "count-heller": "COUNT_HELLER",
}
LOWER_BOUNDS = ("lbm", "lbm+", "lbm++", "lbj", "lbj+", "range")

_PS = re.compile(r"^ps:(\d+),(\d+)$")
_BEST = re.compile(r"^best:(\d+)$")


@dataclass(frozen=True)
class BoundResult:
    bound: str
    value: int
    p: int | None = None
    s: int | None = None
    runtime: float = 0.0

    @property
    def label(self) -> str:
        return bound_label(self.bound)

    def as_dict(self, runtime=True) -> dict:
        d = {"bound": self.bound, "label": self.label, "value": self.value,
             "p": self.p, "s": self.s}
        if runtime:
            d["runtime_ms"] = round(self.runtime * 1000.0, 3)
        return d


@dataclass(frozen=True)
class RangeBounds:
    a: int
    b: int
    lower: int
    upper: int


def _prefix_suffix_sums(t):
    """Column sums strictly above and strictly below each machine row."""
    above = np.cumsum(t, axis=0) - t
    below = t.sum(axis=0) - np.cumsum(t, axis=0)
    return above, below


def lb_machine(inst: Instance) -> int:
    return int(inst.times.sum(axis=1).max())


def lb_machine_plus(inst: Instance) -> int:
    """Machine load plus the shortest possible lead-in and lead-out per machine."""
    t = inst.times
    above, below = _prefix_suffix_sums(t)
    return int((above.min(axis=1) + t.sum(axis=1) + below.min(axis=1)).max())


def _min_distinct_pair(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise ``min over a != b of x[:, a] + y[:, b]`` using the two smallest of each."""
    rows = np.arange(x.shape[0])
    xo = np.argsort(x, axis=1, kind="stable")[:, :2]
    yo = np.argsort(y, axis=1, kind="stable")[:, :2]
    x1, x2 = x[rows, xo[:, 0]], x[rows, xo[:, 1]]
    y1, y2 = y[rows, yo[:, 0]], y[rows, yo[:, 1]]
    clash = xo[:, 0] == yo[:, 0]
    return np.where(clash, np.minimum(x1 + y2, x2 + y1), x1 + y1)


def lb_machine_plus_plus(inst: Instance) -> int:
    """Like :func:`lb_machine_plus` but the first and last job must differ.

    Falls back to :func:`lb_machine_plus` for a single job.
    """
    if inst.n_jobs < 2:
        return lb_machine_plus(inst)
    t = inst.times
    above, below = _prefix_suffix_sums(t)
    return int((t.sum(axis=1) + _min_distinct_pair(above, below)).max())


def lb_job(inst: Instance) -> int:
    return int(inst.times.sum(axis=0).max())


def lb_job_plus(inst: Instance) -> int:
    """Job length plus, for every other job, the cheaper of its first/last machine time."""
    t = inst.times
    cheap = np.minimum(t[0], t[-1])
    return int((t.sum(axis=0) + cheap.sum() - cheap).max())


def ub_heller(inst: Instance) -> int:
    """Length of the schedule that runs jobs strictly one after another."""
    return int(inst.times.sum())


def range_bounds(inst: Instance) -> RangeBounds:
    """``a(N+M-1) <= OPT <= b(N+M-1)`` with ``a``/``b`` the smallest/largest time."""
    a, b = int(inst.times.min()), int(inst.times.max())
    cells = inst.n_jobs + inst.n_machines - 1
    return RangeBounds(a=a, b=b, lower=a * cells, upper=b * cells)


def count_makespans_new(inst: Instance) -> int:
    """Upper estimate ``(N+M-1)(b-a)+1`` of the number of distinct makespans."""
    r = range_bounds(inst)
    return r.upper - r.lower + 1


def count_makespans_heller(inst: Instance) -> int:
    """Upper estimate ``UB_H - LB_M+ + 1`` of the number of distinct makespans."""
    return ub_heller(inst) - lb_machine_plus(inst) + 1


@dataclass(frozen=True)
class EstimateComparison:
    """When ``M > b/a`` the range estimate beats Heller's for every ``N >= min_jobs``.

    ``threshold`` is the exact rational ``-(M-1)b / (b-Ma)``; ``min_jobs`` is
    the smallest integer strictly above it. Both are None without the
    guarantee.
    """

    new_better_eventually: bool
    threshold: Fraction | None
    min_jobs: int | None


def estimate_comparison(machines: int, a: int, b: int) -> EstimateComparison:
    if a <= 0 or a >= b:
        raise ValueError(f"need 1 <= a < b, got a={a}, b={b}")
    if machines < 1:
        raise ValueError("machines must be >= 1")
    if machines * a <= b:
        return EstimateComparison(False, None, None)
    threshold = Fraction(-(machines - 1) * b, b - machines * a)
    return EstimateComparison(True, threshold, math.floor(threshold) + 1)


def new_estimate(jobs: int, machines: int, a: int, b: int) -> int:
    return (jobs + machines - 1) * (b - a) + 1


def heller_estimate_floor(jobs: int, machines: int, a: int) -> int:
    """Smallest value ``UB_H - LB_M+ + 1`` can take when every time is at least ``a``."""
    return (jobs * machines - (jobs + machines - 1)) * a + 1


# -- bundle ------------------------------------------------------------------


def bound_label(bound: str) -> str:
    if bound in LABELS:
        return LABELS[bound]
    if m := _PS.match(bound):
        return f"LB_{m.group(1)},{m.group(2)}"
    if m := _BEST.match(bound):
        return f"BEST_{m.group(1)}"
    raise ValueError(f"unknown bound {bound!r}")


def parse_bound_list(text: str) -> list[str]:
    """Split a comma list such as ``"lbm+,ps:2,1,best:3"`` into bound ids.

    ``ps:P,S`` swallows the comma between its two parameters.
    """
    parts = [p.strip() for p in text.split(",") if p.strip()]
    out = []
    k = 0
    while k < len(parts):
        part = parts[k]
        if part.startswith("ps:") and "," not in part:
            if k + 1 >= len(parts):
                raise ValueError(f"bound {part!r} needs two parameters, e.g. ps:2,1")
            part = f"{part},{parts[k + 1]}"
            k += 1
        bound_label(part)
        out.append(part)
        k += 1
    return out


_SIMPLE = {
    "lbm": lb_machine,
    "lbm+": lb_machine_plus,
    "lbm++": lb_machine_plus_plus,
    "lbj": lb_job,
    "lbj+": lb_job_plus,
    "ubh": ub_heller,
    "range": lambda inst: range_bounds(inst).lower,
    "range-ub": lambda inst: range_bounds(inst).upper,
    "count-new": count_makespans_new,
    "count-heller": count_makespans_heller,
}


def compute_bound(inst: Instance, bound: str, threads: int = 1) -> BoundResult:
    """Evaluate one bound id on ``inst``."""
    from .prefix_suffix import lb_best, lb_prefix_suffix

    start = time.perf_counter()
    p = s = None
    if bound in _SIMPLE:
        value = _SIMPLE[bound](inst)
    elif m := _PS.match(bound):
        p, s = int(m.group(1)), int(m.group(2))
        value = lb_prefix_suffix(inst, p, s, threads=threads)
    elif m := _BEST.match(bound):
        value, (p, s) = lb_best(inst, int(m.group(1)), threads=threads)
    else:
        raise ValueError(f"unknown bound {bound!r}")
    return BoundResult(bound, int(value), p, s, time.perf_counter() - start)


def compute_bounds(inst: Instance, bounds: Sequence[str], threads: int = 1) -> list[BoundResult]:
    """Evaluate several bounds, concurrently when ``threads > 1``; order is preserved."""
    threads = resolve_threads(threads)
    if threads == 1 or len(bounds) < 2:
        return [compute_bound(inst, b) for b in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: compute_bound(inst, b), bounds))


def resolve_threads(threads: int) -> int:
    """``0`` means every available CPU."""
    import os

    if threads < 0:
        raise ValueError("thread count must be >= 0")
    return threads or (os.cpu_count() or 1)
