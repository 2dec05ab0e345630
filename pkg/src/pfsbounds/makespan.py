"""Makespan evaluation and RD-path utilities.

A permutation ``perm`` places job ``perm[k]`` in column ``k`` of the permuted
grid. Paths are sequences of ``(row, column)`` cells in that permuted grid,
0-based, each step moving one cell down or one cell right.

The completion-time recursion ``C[i] = t[i] + max(C[i-1], prev[i])`` for one
job column is evaluated in closed form as::

    C = cumsum(t) + maximum.accumulate(prev - cumsum(t) + t)

which lets a whole column, or a whole batch of partial schedules, be advanced
with a few vectorised numpy calls.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InstanceError
from .instance import Instance, check_permutation

Cell = tuple[int, int]


def advance(prev: np.ndarray, col: np.ndarray) -> np.ndarray:
    """Completion times after appending one job column.

    ``prev`` holds the completion times of the previous column on every
    machine (zeros for the first job); the last axis runs over machines, so
    batches of shape ``(..., M)`` are advanced at once.
    """
    cs = np.cumsum(col, axis=-1)
    return cs + np.maximum.accumulate(prev - cs + col, axis=-1)


def makespan(inst: Instance, perm: Sequence[int]) -> int:
    """Makespan of ``perm``: the completion time of the last job on the last machine."""
    perm = check_permutation(perm, inst.n_jobs)
    t = inst.times
    c = np.zeros(inst.n_machines, dtype=np.int64)
    for j in perm:
        c = advance(c, t[:, j])
    return int(c[-1])


def makespans(inst: Instance, perms: np.ndarray) -> np.ndarray:
    """Makespans of a batch of permutations given as a ``(K, N)`` array (unchecked)."""
    perms = np.asarray(perms)
    t = inst.times.T  # (N, M): one row per job
    c = np.zeros((perms.shape[0], inst.n_machines), dtype=np.int64)
    for k in range(perms.shape[1]):
        c = advance(c, t[perms[:, k]])
    return c[:, -1]


def completion_matrix(inst: Instance, perm: Sequence[int]) -> np.ndarray:
    """Full ``M x N`` matrix of completion times in permuted column order.

    Mostly useful for debugging and for :func:`critical_path`; use
    :func:`makespan` when only the value is needed.
    """
    perm = check_permutation(perm, inst.n_jobs)
    t = inst.times
    out = np.empty((inst.n_machines, inst.n_jobs), dtype=np.int64)
    c = np.zeros(inst.n_machines, dtype=np.int64)
    for k, j in enumerate(perm):
        c = advance(c, t[:, j])
        out[:, k] = c
    return out


def critical_path(inst: Instance, perm: Sequence[int]) -> list[Cell]:
    """A corner-to-corner RD-path whose sum equals the makespan.

    Backtracks through the completion matrix; when both predecessors
    attain the maximum the cell above is preferred.
    """
    c = completion_matrix(inst, perm)
    i, j = c.shape[0] - 1, c.shape[1] - 1
    path = [(i, j)]
    while i > 0 or j > 0:
        if j == 0 or (i > 0 and c[i - 1, j] >= c[i, j - 1]):
            i -= 1
        else:
            j -= 1
        path.append((i, j))
    path.reverse()
    return path


def is_rd_path(path: Sequence[Cell]) -> bool:
    """True when consecutive cells differ by exactly one step down or right."""
    if len(path) == 0:
        return False
    for (i0, j0), (i1, j1) in zip(path, path[1:]):
        if (i1 - i0, j1 - j0) not in ((1, 0), (0, 1)):
            return False
    return True


def path_sum(inst: Instance, perm: Sequence[int], path: Sequence[Cell]) -> int:
    """Sum of ``t[i, perm[j]]`` over the cells ``(i, j)`` of ``path``."""
    perm = check_permutation(perm, inst.n_jobs)
    m, n = inst.shape
    total = 0
    for i, j in path:
        if not (0 <= i < m and 0 <= j < n):
            raise InstanceError(f"cell ({i},{j}) lies outside the {m}x{n} grid")
        total += int(inst.times[i, perm[j]])
    return total


def corner_paths(m: int, n: int):
    """Yield every corner-to-corner RD-path of an ``m x n`` grid.

    There are ``C(m+n-2, m-1)`` of them; meant for brute-force checks on
    small grids.
    """

    def walk(i, j, acc):
        acc.append((i, j))
        if i == m - 1 and j == n - 1:
            yield list(acc)
        else:
            if i + 1 < m:
                yield from walk(i + 1, j, acc)
            if j + 1 < n:
                yield from walk(i, j + 1, acc)
        acc.pop()

    yield from walk(0, 0, [])
