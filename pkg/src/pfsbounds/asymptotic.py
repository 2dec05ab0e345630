"""Monte Carlo check of the ratio ``UB / LB`` on growing random instances.

``UB = b (N + M - 1)`` uses the support maximum ``b`` of the distribution.
On the ``n`` axis the number of machines is fixed and ``LB = LB_M+``; on the
``m`` axis the number of jobs is fixed and ``LB = LB_J+``. For every grid
point we report how often ``UB / LB <= b / mu``. Both sides are compared as
integers (``UB (a + b) <= 2 b LB`` for uniform integers), so no rounding is
involved.

Every sample draws from its own seed, derived from ``(seed, point, sample)``,
so a report depends only on its arguments and not on the thread count.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bounds import lb_job_plus, lb_machine_plus, resolve_threads
from .exact import solve_exact
from .instance import GenSpec, generate

EXACT_PROXY_MAX_JOBS = 9
AXES = ("n", "m")


@dataclass(frozen=True)
class Distribution:
    """Uniform distribution over the integers ``a..b``."""

    a: int
    b: int
    kind: str = "uniform-int"

    def __post_init__(self):
        if self.kind != "uniform-int":
            raise ValueError(f"unsupported distribution kind {self.kind!r}")
        if self.a < 0 or self.a > self.b:
            raise ValueError(f"need 0 <= a <= b, got a={self.a}, b={self.b}")
        if self.b == 0:
            raise ValueError("support max must be positive")

    @property
    def mean(self) -> Fraction:
        return Fraction(self.a + self.b, 2)

    @property
    def threshold(self) -> Fraction:
        """``b / mu``."""
        return Fraction(self.b) / self.mean

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        """Parse ``"uniform:A,B"``."""
        kind, _, args = text.partition(":")
        if kind != "uniform":
            raise ValueError(f"unknown distribution {text!r}; expected uniform:A,B")
        try:
            a, b = (int(x) for x in args.split(","))
        except ValueError:
            raise ValueError(f"bad distribution parameters in {text!r}") from None
        return cls(a, b)


@dataclass(frozen=True)
class PointResult:
    dim_value: int
    samples: int
    within: int
    within_realized: int
    conjecture: int
    mean_ratio: float
    proxy: str
    lb_le_ub: bool

    @property
    def frac_le_threshold(self) -> float:
        return self.within / self.samples

    @property
    def frac_le_threshold_realized(self) -> float:
        """Same fraction with ``UB`` built from each instance's largest time."""
        return self.within_realized / self.samples

    @property
    def frac_conjecture(self) -> float:
        """Fraction with ``(b / mu) LB >= proxy``, the proxy being OPT or UB."""
        return self.conjecture / self.samples

    @property
    def sigma(self) -> float:
        f = self.frac_le_threshold
        return float(np.sqrt(f * (1.0 - f) / self.samples))


@dataclass(frozen=True)
class AsymptoticReport:
    axis: str
    fixed: int
    dist: Distribution
    seed: int
    points: tuple[PointResult, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["axis", "fixed", "dim_value", "samples", "frac_le_threshold",
                    "mean_ratio", "proxy"])
        for p in self.points:
            w.writerow([self.axis, self.fixed, p.dim_value, p.samples,
                        f"{p.frac_le_threshold:.6f}", f"{p.mean_ratio:.6f}", p.proxy])
        return buf.getvalue()

    def conjecture_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["axis", "fixed", "dim_value", "samples", "frac_conjecture", "proxy"])
        for p in self.points:
            w.writerow([self.axis, self.fixed, p.dim_value, p.samples,
                        f"{p.frac_conjecture:.6f}", p.proxy])
        return buf.getvalue()


def sample_seed(seed: int, point: int, sample: int) -> int:
    """Independent 64-bit seed for one sample of one grid point."""
    return int(np.random.SeedSequence([seed, point, sample]).generate_state(1, np.uint64)[0])


def _one_sample(dist, axis, fixed, value, seed, exact_proxy):
    jobs, machines = (value, fixed) if axis == "n" else (fixed, value)
    inst = generate(GenSpec(jobs, machines, dist.a, dist.b, seed))
    cells = jobs + machines - 1
    lb = lb_machine_plus(inst) if axis == "n" else lb_job_plus(inst)
    ub = dist.b * cells
    ub_realized = int(inst.times.max()) * cells
    num, den = dist.threshold.numerator, dist.threshold.denominator
    # ratio <= num/den  <=>  ub * den <= num * lb
    within = ub * den <= num * lb
    within_realized = ub_realized * den <= num * lb
    proxy = solve_exact(inst).opt if exact_proxy else ub
    conjecture = num * lb >= den * proxy
    ratio = ub / lb if lb > 0 else float("inf")
    return within, within_realized, conjecture, ratio, lb <= ub


def run_asymptotic(dist: Distribution, axis: str, fixed: int, grid: Sequence[int],
                   samples: int, seed: int, threads: int = 1,
                   exact_max_jobs: int = EXACT_PROXY_MAX_JOBS) -> AsymptoticReport:
    """Estimate ``P(UB / LB <= b / mu)`` at every grid value of the growing dimension.

    ``axis="n"`` grows the number of jobs with ``fixed`` machines; ``axis="m"``
    grows the machines with ``fixed`` jobs. The conjecture-style fraction uses
    the exact optimum when the instance has at most ``exact_max_jobs`` jobs
    and ``UB`` otherwise.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    if fixed < 1 or samples < 1 or any(v < 1 for v in grid):
        raise ValueError("fixed dimension, grid values and samples must be >= 1")
    threads = resolve_threads(threads)
    points = []
    for k, value in enumerate(grid):
        jobs = value if axis == "n" else fixed
        exact_proxy = jobs <= exact_max_jobs
        seeds = [sample_seed(seed, k, r) for r in range(samples)]
        run = lambda sd: _one_sample(dist, axis, fixed, value, sd, exact_proxy)
        if threads == 1:
            out = [run(sd) for sd in seeds]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                out = list(pool.map(run, seeds))
        ratios = [o[3] for o in out]
        points.append(PointResult(
            dim_value=value, samples=samples,
            within=sum(o[0] for o in out), within_realized=sum(o[1] for o in out),
            conjecture=sum(o[2] for o in out), mean_ratio=float(np.mean(ratios)),
            proxy="exact" if exact_proxy else "ub", lb_le_ub=all(o[4] for o in out)))
    return AsymptoticReport(axis, fixed, dist, seed, tuple(points))


def conjecture_probe(dist: Distribution, machines: int, grid: Sequence[int], samples: int,
                     seed: int, threads: int = 1) -> list[tuple[int, float, str]]:
    """Per grid value of N: fraction of samples with ``(b / mu) LB_M+ >= OPT``.

    Returns ``(N, fraction, proxy)`` triples where ``proxy`` says whether the
    exact optimum or ``UB`` stood in for OPT.
    """
    rep = run_asymptotic(dist, "n", machines, grid, samples, seed, threads)
    return [(p.dim_value, p.frac_conjecture, p.proxy) for p in rep.points]
