"""Prefix-suffix lower bounds.

Fix the first ``p`` and last ``s`` jobs of the schedule. An *i-type* path
runs through the prefix columns from the top-left cell to row ``i``, crosses
every unselected job along row ``i``, and finishes through the suffix columns
to the bottom-right cell. For a selection ``(A, B)`` of prefix and suffix
tuples the longest i-type path is::

    F(A, B) = max_i [ Pre_A(i) + Mid_AB(i) + Suf_B(i) ]

where ``Pre_A(i)`` is the completion time of the prefix on machine ``i``,
``Suf_B(i)`` the longest path from machine ``i`` into the suffix, and
``Mid_AB(i)`` the load of the unselected jobs on machine ``i``. The bound is
the minimum of ``F`` over all disjoint ordered selections. Every schedule
starts with some ``A`` and ends with some ``B``, and its makespan is at least
``F(A, B)``, so the minimum never exceeds the optimum.

Writing ``g_A(i) = Pre_A(i) - sum_{a in A} t[i, a]`` and
``h_B(i) = Suf_B(i) - sum_{b in B} t[i, b]`` gives
``F(A, B) = max_i [g_A(i) + h_B(i) + rowsum(i)]``. The ``g`` and ``h`` tables
are built once per tuple, and each pair then costs ``O(M)``.
"""

from __future__ import annotations

import itertools
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator

import numpy as np

from .bounds import resolve_threads
from .errors import GuardError, InstanceError
from .instance import Instance
from .makespan import Cell, advance, corner_paths

# Elements per (block, inner, M) working array.
_BLOCK_ELEMS = 1 << 22
_MAX_TUPLES = 20_000_000
_ENUM_GUARD = 20


def _check_params(n, p, s):
    if p < 1 or s < 1:
        raise InstanceError(f"p and s must be >= 1, got p={p}, s={s}")
    if p + s > n:
        raise InstanceError(f"p + s = {p + s} exceeds the number of jobs {n}")


def _ordered_tuples(n, k):
    count = math.perm(n, k)
    if count > _MAX_TUPLES:
        raise GuardError(f"{count} ordered {k}-tuples of {n} jobs exceed the limit {_MAX_TUPLES}")
    out = np.fromiter(itertools.chain.from_iterable(itertools.permutations(range(n), k)),
                      dtype=np.int64, count=count * k)
    return out.reshape(count, k)


def prefix_table(times: np.ndarray, tuples: np.ndarray) -> np.ndarray:
    """``g`` values, shape ``(K, M)``, for ``K`` prefix tuples."""
    tj = times.T
    c = np.zeros((tuples.shape[0], times.shape[0]), dtype=np.int64)
    for k in range(tuples.shape[1]):
        c = advance(c, tj[tuples[:, k]])
    return c - tj[tuples].sum(axis=1)


def suffix_table(times: np.ndarray, tuples: np.ndarray) -> np.ndarray:
    """``h`` values, shape ``(K, M)``, for ``K`` suffix tuples.

    The suffix path from machine ``i`` to the bottom-right corner is a
    prefix path of the grid flipped along both axes.
    """
    tj = times[::-1].T
    c = np.zeros((tuples.shape[0], times.shape[0]), dtype=np.int64)
    for k in range(tuples.shape[1] - 1, -1, -1):
        c = advance(c, tj[tuples[:, k]])
    return c[:, ::-1] - times.T[tuples].sum(axis=1)


class _Incumbent:
    def __init__(self):
        self.value = None
        self._lock = threading.Lock()

    def offer(self, v):
        with self._lock:
            if self.value is None or v < self.value:
                self.value = v


def _scan(blocks, pre, suf, gr, h, bound_a, inc):
    """Minimum of ``F`` over the given prefix blocks; returns None if all were pruned."""
    best = None
    for lo, hi in blocks:
        cur = inc.value
        rows = np.arange(lo, hi)
        if cur is not None:
            rows = rows[bound_a[lo:hi] < cur]
            if rows.size == 0:
                # Prefixes are sorted by their bound, so later blocks are pruned too.
                break
        a = pre[rows]
        clash = (a[:, None, :, None] == suf[None, :, None, :]).any(axis=(2, 3))
        f = (gr[rows][:, None, :] + h[None, :, :]).max(axis=2)
        f = np.where(clash, np.iinfo(np.int64).max, f)
        v = int(f.min())
        if best is None or v < best:
            best = v
        inc.offer(v)
    return best


def lb_prefix_suffix(inst: Instance, p: int, s: int, threads: int = 1) -> int:
    """The prefix-suffix lower bound with ``p`` prefix and ``s`` suffix jobs.

    Cost grows like ``N^(p+s) * M``. The value does not depend on ``threads``.
    """
    n, m = inst.n_jobs, inst.n_machines
    _check_params(n, p, s)
    t = inst.times
    pre = _ordered_tuples(n, p)
    suf = _ordered_tuples(n, s)
    gr = prefix_table(t, pre) + t.sum(axis=1)
    h = suffix_table(t, suf)
    # max_i [g + rowsum + min_B h] bounds F(A, .) from below for every suffix.
    bound_a = (gr + h.min(axis=0)).max(axis=1)
    order = np.argsort(bound_a, kind="stable")
    pre, gr, bound_a = pre[order], gr[order], bound_a[order]

    step = max(1, _BLOCK_ELEMS // (suf.shape[0] * max(m, p * s)))
    blocks = [(lo, min(lo + step, pre.shape[0])) for lo in range(0, pre.shape[0], step)]
    inc = _Incumbent()
    threads = min(resolve_threads(threads), len(blocks))
    if threads <= 1:
        _scan(blocks, pre, suf, gr, h, bound_a, inc)
    else:
        # Worker k takes blocks k, k+T, ... so every worker starts on promising prefixes.
        shards = [blocks[k::threads] for k in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda sh: _scan(sh, pre, suf, gr, h, bound_a, inc), shards))
    return int(inc.value)


def lb_best(inst: Instance, k: int, threads: int = 1) -> tuple[int, tuple[int, int]]:
    """Largest prefix-suffix bound with ``p + s == k`` and the ``(p, s)`` attaining it.

    Bounds grow when either width grows, so this is also the best over all
    ``p + s <= k``. Ties go to the smallest ``p``.
    """
    if not 2 <= k <= inst.n_jobs:
        raise InstanceError(f"budget k must satisfy 2 <= k <= N={inst.n_jobs}, got {k}")
    best, arg = -1, None
    for p in range(1, k):
        v = lb_prefix_suffix(inst, p, k - p, threads=threads)
        if v > best:
            best, arg = v, (p, k - p)
    return best, arg


def path_family_size(machines: int, p: int, s: int) -> int:
    """Number of i-type paths: ``C(M+p+s-2, p+s-1)``.

    Raises OverflowError when the count does not fit in a signed 64-bit integer.
    """
    if machines < 1 or p < 1 or s < 1:
        raise InstanceError("machines, p and s must all be >= 1")
    count = math.comb(machines + p + s - 2, p + s - 1)
    if count > np.iinfo(np.int64).max:
        raise OverflowError(f"path count C({machines + p + s - 2},{p + s - 1}) exceeds int64")
    return count


def enumerate_family(machines: int, jobs: int, p: int, s: int) -> Iterator[list[Cell]]:
    """Yield every i-type path of an ``machines x jobs`` grid, 0-based cells.

    Limited to ``machines + p + s <= 20``; meant for checks and debugging.
    """
    _check_params(jobs, p, s)
    if machines < 1:
        raise InstanceError("machines must be >= 1")
    if machines + p + s > _ENUM_GUARD:
        raise GuardError(f"enumeration limited to M + p + s <= {_ENUM_GUARD}")
    first_suffix = jobs - s
    for i in range(machines):
        middle = [(i, j) for j in range(p, first_suffix)]
        for head in corner_paths(i + 1, p):
            for tail in corner_paths(machines - i, s):
                yield head + middle + [(i + r, first_suffix + c) for r, c in tail]
