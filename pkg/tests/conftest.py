import numpy as np
import pytest

from pfsbounds.instance import GenSpec, Instance, generate


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; pass --runslow to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one pass/fail line per acceptance criterion for the summary."""

    def record(label, ok, detail=""):
        _VERDICTS.append((label, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _VERDICTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())


@pytest.fixture
def two_by_two():
    return Instance(np.array([[1, 2], [3, 4]]), name="two_by_two")


def random_suite(count=500, seed=20240601, n_range=(2, 7), m_range=(1, 4), a=0, b=20):
    """Seeded random instances used as the oracle suite."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = int(rng.integers(n_range[0], n_range[1], endpoint=True))
        m = int(rng.integers(m_range[0], m_range[1], endpoint=True))
        out.append(generate(GenSpec(n, m, a, b, seed=seed * 1000 + k), name=f"suite{k}"))
    return out


@pytest.fixture(scope="session")
def suite():
    return random_suite()


@pytest.fixture(scope="session")
def small_suite():
    return random_suite(count=120, seed=7, n_range=(2, 5), m_range=(1, 3))
