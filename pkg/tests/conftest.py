"""Shared fixtures.

The example root searches are expensive (the degree-3 example takes tens
of seconds), so they are session-scoped and shared between the unit tests
and the acceptance gate. Acceptance results are collected into a registry
and echoed as one line per criterion at the end of the run.
"""

import time

import pytest

from sectorroots import (Box, asymptotic_values, example1, example2,
                         find_a_points)

# criterion id -> (passed, detail); filled by tests/test_acceptance.py
CRITERIA: dict = {}


def record_criterion(num: int, passed: bool, detail: str) -> None:
    CRITERIA[num] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in range(1, 10):
        if num in CRITERIA:
            passed, detail = CRITERIA[num]
            tr.write_line(f"{'PASS' if passed else 'FAIL'} criterion {num}: "
                          f"{detail}")
        else:
            tr.write_line(f"NOT RUN criterion {num}: no result recorded")


@pytest.fixture(scope="session")
def ex1():
    return example1()


@pytest.fixture(scope="session")
def ex2():
    return example2()


@pytest.fixture(scope="session")
def data1(ex1):
    return asymptotic_values(ex1, tol=1e-9)


@pytest.fixture(scope="session")
def data2(ex2):
    return asymptotic_values(ex2, tol=1e-9)


def _timed_search(F, target, region, data):
    t0 = time.perf_counter()
    result = find_a_points(F, target, region, tol=1e-9, data=data)
    return result, time.perf_counter() - t0


@pytest.fixture(scope="session")
def ex1_zeros(ex1, data1):
    return _timed_search(ex1, 0j, Box(-8, -8, 8, 8), data1)


@pytest.fixture(scope="session")
def ex1_ones(ex1, data1):
    return _timed_search(ex1, 1.0 + 0j, Box(-8, -8, 8, 8), data1)


@pytest.fixture(scope="session")
def ex2_zeros(ex2, data2):
    return _timed_search(ex2, 0j, Box(-6, -6, 6, 6), data2)


@pytest.fixture(scope="session")
def ex2_ones(ex2, data2):
    return _timed_search(ex2, 1.0 + 0j, Box(-6, -6, 6, 6), data2)
