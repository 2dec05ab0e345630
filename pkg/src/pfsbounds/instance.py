"""Flowshop instances: data model, file formats and random generation.

Processing times are stored machine-major, ``times[i, j]`` being the time of
job ``j`` on machine ``i`` (both 0-based). Three text formats are supported:

``plain``
    ``N M`` followed by ``M`` rows of ``N`` integers.
``taillard``
    Repeated blocks: a prose line containing "number of jobs", a data line
    ``N M seed UB LB``, a prose line containing "processing times", then
    ``M`` rows of ``N`` integers.
``vrf``
    ``N M`` followed by ``N`` job rows of ``M`` pairs ``machine time`` with
    0-based machine indices in ascending order.

Tokens are separated by any run of whitespace, so line breaks inside the
numeric blocks are not significant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from .errors import InstanceError, ParseError

FORMATS = ("plain", "taillard", "vrf")

_INT64_MAX = np.iinfo(np.int64).max
_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True, eq=False)
class Instance:
    """An ``M x N`` grid of non-negative integer processing times.

    The grid is copied into a read-only ``int64`` array on construction, so
    an Instance can be shared freely between threads.
    """

    times: np.ndarray
    name: str = ""
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        problems = validate(self.times)
        if problems:
            raise InstanceError("; ".join(problems))
        arr = np.array(self.times, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "times", arr)

    @property
    def n_machines(self) -> int:
        return self.times.shape[0]

    @property
    def n_jobs(self) -> int:
        return self.times.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.times.shape

    def __repr__(self):
        return f"Instance(name={self.name!r}, M={self.n_machines}, N={self.n_jobs})"


@dataclass(frozen=True)
class GenSpec:
    """Parameters of a uniform random instance; times are drawn from {a..b}."""

    jobs: int
    machines: int
    a: int
    b: int
    seed: int = 0

    def __post_init__(self):
        if self.jobs < 1 or self.machines < 1:
            raise InstanceError("jobs and machines must be >= 1")
        if self.a < 0:
            raise InstanceError("minimum time must be >= 0")
        if self.a > self.b:
            raise InstanceError(f"minimum time {self.a} exceeds maximum {self.b}")


def validate(times) -> list[str]:
    """Return every invariant violation of a processing-time grid.

    ``times`` may be an :class:`Instance`, an array, or a nested sequence of
    rows (ragged input is reported rather than raised). An empty list means
    the grid is valid.
    """
    if isinstance(times, Instance):
        times = times.times
    problems = []
    if isinstance(times, np.ndarray):
        rows = times
        if rows.ndim != 2:
            return [f"grid must be 2-dimensional, got {rows.ndim} dimension(s)"]
    else:
        rows = [list(r) for r in times]
        if rows and len({len(r) for r in rows}) > 1:
            lengths = [len(r) for r in rows]
            return [f"row length mismatch: row lengths {lengths}"]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m < 1:
        problems.append("grid needs at least one machine row")
    if n < 1:
        problems.append("grid needs at least one job column")
    if problems:
        return problems
    try:
        arr = np.asarray(rows)
        num = arr.astype(np.float64)
    except (TypeError, ValueError):
        return ["non-numeric time in grid"]
    if arr.dtype == np.bool_:
        return ["boolean grid is not a grid of times"]
    for i, j in np.argwhere(num != np.floor(num)):
        problems.append(f"non-integer time at ({i},{j})")
    for i, j in np.argwhere(num < 0):
        problems.append(f"negative time at ({i},{j})")
    largest = int(num.max()) if np.isfinite(num).all() else _INT64_MAX
    if largest * n * m > _INT64_MAX:
        problems.append("overflow: N*M*max(t) exceeds the 64-bit accumulator")
    return problems


def check_permutation(perm: Sequence[int], n: int) -> np.ndarray:
    """Return ``perm`` as an int array, raising unless it is a bijection on 0..n-1."""
    arr = np.asarray(perm, dtype=np.int64)
    if arr.ndim != 1 or arr.size != n:
        raise InstanceError(f"permutation must list {n} jobs, got {arr.size}")
    if not np.array_equal(np.sort(arr), np.arange(n)):
        raise InstanceError(f"not a permutation of 0..{n - 1}: {arr.tolist()}")
    return arr


def generate(spec: GenSpec, name: str | None = None) -> Instance:
    """Draw an instance with i.i.d. uniform integer times in ``[spec.a, spec.b]``."""
    rng = np.random.default_rng(spec.seed)
    times = rng.integers(spec.a, spec.b, size=(spec.machines, spec.jobs), endpoint=True)
    if name is None:
        name = f"gen_{spec.jobs}x{spec.machines}_{spec.a}-{spec.b}_s{spec.seed}"
    return Instance(times, name=name, meta={"seed": spec.seed})


# -- parsing ---------------------------------------------------------------


def _tokens(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        out.extend((lineno, tok) for tok in _TOKEN.findall(line))
    return out


class _Stream:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def done(self):
        return self.pos >= len(self.toks)

    def line(self):
        if self.done():
            return self.toks[-1][0] if self.toks else None
        return self.toks[self.pos][0]

    def int(self, what, minimum=None):
        if self.done():
            raise ParseError(f"unexpected end of input while reading {what}", self.line())
        lineno, tok = self.toks[self.pos]
        try:
            value = int(tok)
        except ValueError:
            raise ParseError(f"non-numeric token {tok!r} in {what}", lineno) from None
        if minimum is not None and value < minimum:
            if what.startswith("time"):
                raise ParseError(f"negative time {value}", lineno)
            raise ParseError(f"{what} must be >= {minimum}, got {value}", lineno)
        self.pos += 1
        return value

    def ints(self, count, what, minimum=None):
        return [self.int(what, minimum) for _ in range(count)]


def _parse_plain(text, base):
    s = _Stream(_tokens(text))
    if s.done():
        raise ParseError("empty input", 1)
    n = s.int("header (N)", 1)
    m = s.int("header (M)", 1)
    rows = [s.ints(n, f"times of machine {i + 1}", 0) for i in range(m)]
    if not s.done():
        raise ParseError(f"expected {m} rows of {n} times, found extra data", s.line())
    return [Instance(np.array(rows), name=f"{base}#1")]


def _parse_vrf(text, base):
    s = _Stream(_tokens(text))
    if s.done():
        raise ParseError("empty input", 1)
    n = s.int("header (N)", 1)
    m = s.int("header (M)", 1)
    times = np.zeros((m, n), dtype=np.int64)
    for j in range(n):
        for i in range(m):
            line = s.line()
            idx = s.int(f"machine index of job {j + 1}")
            if idx != i:
                raise ParseError(f"job {j + 1}: expected machine index {i}, got {idx}", line)
            times[i, j] = s.int(f"time of job {j + 1}", 0)
    if not s.done():
        raise ParseError(f"expected {n} job rows of {m} pairs, found extra data", s.line())
    return [Instance(times, name=f"{base}#1")]


def _parse_taillard(text, base):
    lines = text.splitlines()
    out = []
    k = 0
    lineno = 0
    while lineno < len(lines):
        line = lines[lineno]
        lineno += 1
        if not line.strip():
            continue
        if "number of jobs" not in line.lower():
            raise ParseError("expected a header line containing 'number of jobs'", lineno)
        k += 1
        # Collect tokens up to the "processing times" prose line.
        data = []
        while lineno < len(lines) and "processing times" not in lines[lineno].lower():
            lineno += 1
            data.extend((lineno, t) for t in _TOKEN.findall(lines[lineno - 1]))
        if lineno >= len(lines):
            raise ParseError("missing 'processing times' line", lineno)
        s = _Stream(data)
        if len(data) != 5:
            raise ParseError(f"data line must hold 5 integers 'N M seed UB LB', got {len(data)}",
                             data[0][0] if data else lineno)
        n = s.int("N", 1)
        m = s.int("M", 1)
        seed, ub, lb = s.int("seed"), s.int("upper bound"), s.int("lower bound")
        lineno += 1  # skip "processing times"
        body = []
        while lineno < len(lines) and "number of jobs" not in lines[lineno].lower():
            lineno += 1
            body.extend((lineno, t) for t in _TOKEN.findall(lines[lineno - 1]))
        s = _Stream(body)
        if not body:
            raise ParseError("missing processing-time rows", lineno)
        rows = [s.ints(n, f"times of machine {i + 1}", 0) for i in range(m)]
        if not s.done():
            raise ParseError(f"expected {m} rows of {n} times, found extra data", s.line())
        meta = {"seed": seed, "ub": ub, "lb": lb}
        out.append(Instance(np.array(rows), name=f"{base}#{k}", meta=meta))
    if not out:
        raise ParseError("no instance blocks found", 1)
    return out


_PARSERS = {"plain": _parse_plain, "taillard": _parse_taillard, "vrf": _parse_vrf}


def detect_format(text: str) -> str:
    """Guess the format of ``text`` from its shape."""
    if "number of jobs" in text.lower():
        return "taillard"
    toks = text.split()
    if len(toks) >= 2:
        try:
            n, m = int(toks[0]), int(toks[1])
        except ValueError:
            return "plain"
        if len(toks) - 2 == 2 * n * m:
            return "vrf"
    return "plain"


def parse_instance(data: bytes | str, fmt: str = "plain", name: str = "input") -> list[Instance]:
    """Parse every instance in ``data``.

    Instances are named ``"<name>#<k>"`` with ``k`` counting from 1 in file
    order. ``fmt="auto"`` guesses the format with :func:`detect_format`.
    Raises :class:`ParseError` carrying the offending line number.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8 text: {exc}") from None
    if fmt == "auto":
        fmt = detect_format(data)
    if fmt not in _PARSERS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return _PARSERS[fmt](data, name)


def read_instances(path: str | Path, fmt: str = "auto") -> list[Instance]:
    path = Path(path)
    return parse_instance(path.read_bytes(), fmt, name=path.name)


def read_instance(path: str | Path, fmt: str = "auto") -> Instance:
    """Read a file that must contain exactly one instance."""
    found = read_instances(path, fmt)
    if len(found) != 1:
        raise ParseError(f"{path}: expected one instance, found {len(found)}")
    return found[0]


def serialize(inst: Instance, fmt: str = "plain") -> str:
    """Render ``inst`` as text in one of :data:`FORMATS`."""
    t = inst.times
    m, n = t.shape
    if fmt == "plain":
        rows = [" ".join(map(str, row)) for row in t.tolist()]
        return "\n".join([f"{n} {m}", *rows]) + "\n"
    if fmt == "vrf":
        rows = [" ".join(f"{i} {t[i, j]}" for i in range(m)) for j in range(n)]
        return "\n".join([f"{n} {m}", *rows]) + "\n"
    if fmt == "taillard":
        meta = inst.meta
        head = f"{n} {m} {meta.get('seed', 0)} {meta.get('ub', 0)} {meta.get('lb', 0)}"
        rows = [" ".join(map(str, row)) for row in t.tolist()]
        return "\n".join([
            "number of jobs, number of machines, initial seed, upper bound and lower bound :",
            head, "processing times :", *rows]) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def iter_instance_files(directory: str | Path) -> Iterator[Path]:
    """Yield regular, non-hidden files of ``directory`` in name order."""
    for p in sorted(Path(directory).iterdir()):
        if p.is_file() and not p.name.startswith("."):
            yield p


def from_rows(rows: Iterable[Iterable[int]], name: str = "") -> Instance:
    rows = [list(r) for r in rows]
    problems = validate(rows)
    if problems:
        raise InstanceError("; ".join(problems))
    return Instance(np.array(rows, dtype=np.int64), name=name)
