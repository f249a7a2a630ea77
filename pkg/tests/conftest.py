"""Shared pytest plumbing: the acceptance criteria report.

Each acceptance test wraps its body in ``criterion(...)``; the outcome and
elapsed time are collected here and printed as one line per criterion at
the end of the run.
"""

import time
from contextlib import contextmanager

import pytest

_RESULTS: list[tuple[str, str, str]] = []


@contextmanager
def _criterion(label: str, limit_s: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        _RESULTS.append((label, "FAIL", f"{elapsed:.1f}s, {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"))
        raise
    elapsed = time.perf_counter() - start
    if limit_s is not None and elapsed > limit_s:
        _RESULTS.append((label, "FAIL", f"{elapsed:.1f}s exceeds the {limit_s:g}s limit"))
        raise AssertionError(f"{label}: {elapsed:.1f}s exceeds the {limit_s:g}s limit")
    budget = f" (limit {limit_s:g}s)" if limit_s is not None else ""
    _RESULTS.append((label, "PASS", f"{elapsed:.1f}s{budget}"))


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, detail in _RESULTS:
        terminalreporter.write_line(f"{status}  {label}  [{detail}]")
