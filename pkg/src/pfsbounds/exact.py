"""Exhaustive optimum by enumerating every permutation.

This is the reference oracle for the bound checks, so it stays a plain
enumeration with no pruning. Permutations are visited in lexicographic
order, sharded by first job, and the witness is the lexicographically
smallest optimal permutation.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bounds import resolve_threads
from .errors import GuardError, InstanceError
from .instance import Instance
from .makespan import Cell, makespans

MAX_JOBS = 10
MAX_JOBS_PATH = 8


@dataclass(frozen=True)
class ExactResult:
    opt: int
    witness: tuple[int, ...]
    distinct_makespans: int | None = None


def _perms_starting_with(n: int, first: int) -> np.ndarray:
    rest = [j for j in range(n) if j != first]
    count = math.factorial(n - 1)
    body = np.fromiter(itertools.chain.from_iterable(itertools.permutations(rest)),
                       dtype=np.int64, count=count * (n - 1)).reshape(count, n - 1)
    return np.hstack([np.full((count, 1), first, dtype=np.int64), body])


def _shard(inst, first, collect):
    perms = _perms_starting_with(inst.n_jobs, first)
    values = makespans(inst, perms)
    k = int(np.argmin(values))
    distinct = np.unique(values) if collect else None
    return int(values[k]), tuple(int(x) for x in perms[k]), distinct


def solve_exact(inst: Instance, collect_distinct: bool = False, threads: int = 1) -> ExactResult:
    """Minimum makespan over all ``N!`` permutations (``N <= 10``)."""
    n = inst.n_jobs
    if n > MAX_JOBS:
        raise GuardError(f"exact enumeration is limited to N <= {MAX_JOBS}, got N={n}")
    threads = resolve_threads(threads)
    work = lambda first: _shard(inst, first, collect_distinct)
    if threads == 1:
        shards = [work(first) for first in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            shards = list(pool.map(work, range(n)))
    # Shards are in first-job order, so the first minimum is lexicographically smallest.
    opt, witness, _ = min(shards, key=lambda r: r[0])
    distinct = None
    if collect_distinct:
        distinct = int(np.unique(np.concatenate([r[2] for r in shards])).size)
    return ExactResult(opt, witness, distinct)


def min_path_sum_over_perms(inst: Instance, path: Sequence[Cell]) -> int:
    """``min over permutations`` of the sum along a fixed path shape (``N <= 8``)."""
    m, n = inst.shape
    if n > MAX_JOBS_PATH:
        raise GuardError(f"path minimisation is limited to N <= {MAX_JOBS_PATH}, got N={n}")
    rows = np.array([c[0] for c in path], dtype=np.int64)
    cols = np.array([c[1] for c in path], dtype=np.int64)
    if rows.size == 0:
        raise InstanceError("path has no cells")
    if rows.min() < 0 or rows.max() >= m or cols.min() < 0 or cols.max() >= n:
        raise InstanceError(f"path leaves the {m}x{n} grid")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    sums = inst.times[rows[None, :], perms[:, cols]].sum(axis=1)
    return int(sums.min())
