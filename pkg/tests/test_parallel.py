#!/usr/bin/env python3
"""
Tests for the thread pool runner.
"""

import time

import pytest

from harmfrob.core.processing import ParallelProcessor
from harmfrob.models import CheckStatus, IdentityCheck, Report


def _runner(check):
    time.sleep(0.01 * check.params['delay'])
    if check.params.get('crash'):
        raise RuntimeError("boom")
    return Report(check.name, dict(check.params), CheckStatus.PASS)


def test_run_checks_keeps_order():
    checks = [IdentityCheck(f"c{i}", "sleep", params={'delay': 5 - i}) for i in range(5)]
    reports = ParallelProcessor(max_workers=4, show_progress=False).run_checks(checks, _runner)
    assert [r.name for r in reports] == [c.name for c in checks]
    assert all(r.passed for r in reports)


def test_crash_becomes_error_report():
    checks = [IdentityCheck("fine", "sleep", params={'delay': 0}),
              IdentityCheck("broken", "sleep", params={'delay': 0, 'crash': True})]
    reports = ParallelProcessor(max_workers=2, show_progress=False).run_checks(checks, _runner)
    assert reports[0].passed
    assert reports[1].status is CheckStatus.ERROR
    assert reports[1].message == "boom"


def test_map_parallel_keeps_order():
    processor = ParallelProcessor(max_workers=3, show_progress=False)
    assert processor.map_parallel(lambda x, k: x * k, [3, 1, 2], 10) == [30, 10, 20]


def test_map_parallel_reraises():
    def fail_on_two(x):
        if x == 2:
            raise ValueError("two")
        return x

    with pytest.raises(ValueError, match="two"):
        ParallelProcessor(max_workers=2, show_progress=False).map_parallel(fail_on_two, [1, 2, 3])


def test_worker_count_validated():
    with pytest.raises(ValueError):
        ParallelProcessor(max_workers=0)
