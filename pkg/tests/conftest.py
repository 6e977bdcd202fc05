import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from greedoid_lab.harness import enumerate_greedoids

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS = {n: list(enumerate_greedoids(n)) for n in range(5)}
SMALL = [g for n in range(4) for g in CORPUS[n]]


def greedoids(max_n=4):
    pool = [g for n in range(max_n + 1) for g in CORPUS[n]]
    return st.sampled_from(pool)


ACCEPTANCE = {}


@contextmanager
def criterion(number, title, limit=None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE[number] = (title, False, time.perf_counter() - start, limit)
        raise
    elapsed = time.perf_counter() - start
    ok = limit is None or elapsed < limit
    ACCEPTANCE[number] = (title, ok, elapsed, limit)
    assert ok, f"criterion {number} took {elapsed:.1f}s (limit {limit}s)"


@pytest.fixture
def accept():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, elapsed, limit = ACCEPTANCE[number]
        bound = f" (limit {limit}s)" if limit else ""
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.2f}s{bound}]"
        )
