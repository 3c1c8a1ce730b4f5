#!/usr/bin/env python3
"""
Tests for the persistent value cache.
"""

import threading
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from harmfrob.core.arith import PAdic
from harmfrob.core.words import CompositionIndex
from harmfrob.models import CacheRecord, RecordKind
from harmfrob.storage import CacheManager

INDEX = CompositionIndex((2, 1))


def test_round_trip(cache_manager):
    value = PAdic.from_rational(7, 5, 6)
    cache_manager.put_har(5, 1, INDEX, value)
    cached = cache_manager.get_har(5, 1, INDEX, 6)
    assert cached.agrees_with(value, 6)
    assert cache_manager.get_har(5, 2, INDEX, 1) is None


def test_zero_to_precision_round_trip(cache_manager):
    cache_manager.put_har(5, 1, INDEX, PAdic.zero(5, 3))
    cached = cache_manager.get_har(5, 1, INDEX, 3)
    assert cached.is_zero()
    assert cached.precision == 3


def test_exact_zero_is_not_stored(cache_manager):
    cache_manager.put_har(5, 1, INDEX, PAdic.exact_zero(5))
    assert cache_manager.list_records() == []


def test_higher_precision_request_misses(cache_manager):
    cache_manager.put_har(5, 1, INDEX, PAdic.from_rational(3, 5, 4))
    assert cache_manager.get_har(5, 1, INDEX, 5) is None
    assert cache_manager.misses == 1


def test_best_record_wins(cache_manager):
    cache_manager.put_har(5, 1, INDEX, PAdic.from_rational(3, 5, 4))
    cache_manager.put_har(5, 1, INDEX, PAdic.from_rational(3, 5, 8))
    cache_manager.put_har(5, 1, INDEX, PAdic.from_rational(3, 5, 2))
    assert cache_manager.get_har(5, 1, INDEX, 8).precision == 8


def test_fresh_manager_reads_disk(cache_dir):
    CacheManager(cache_dir).put_adjoint(7, 1, 2, INDEX, PAdic.from_rational(-4, 7, 5))
    fresh = CacheManager(cache_dir)
    value = fresh.get_adjoint(7, 1, 2, INDEX, 5)
    assert value.agrees_with(PAdic.from_rational(-4, 7, 5), 5)
    assert fresh.get_adjoint(7, 1, 3, INDEX, 1) is None


def test_corrupt_line_is_skipped(cache_dir):
    manager = CacheManager(cache_dir)
    manager.put_har(5, 1, INDEX, PAdic.from_rational(2, 5, 4))
    with open(cache_dir / "har_p5.txt", 'a') as f:
        f.write("garbage\n")
    fresh = CacheManager(cache_dir)
    assert fresh.get_har(5, 1, INDEX, 4) is not None
    stats = fresh.get_cache_stats()
    assert stats['corrupt_lines'] == 1
    assert stats['records'] == 1


def test_gc_keeps_best_record(cache_manager, cache_dir):
    cache_manager.put_har(5, 1, INDEX, PAdic.from_rational(3, 5, 4))
    cache_manager.put_har(5, 1, INDEX, PAdic.from_rational(3, 5, 6))
    with open(cache_dir / "har_p5.txt", 'a') as f:
        f.write("garbage\n")
    result = cache_manager.garbage_collect()
    assert result == {'kept': 1, 'removed': 2}
    records = cache_manager.list_records(RecordKind.HAR, 5)
    assert len(records) == 1
    assert records[0].absolute_precision() == 6
    assert cache_manager.get_har(5, 1, INDEX, 6) is not None


def test_concurrent_puts(cache_manager, cache_dir):
    def worker(n):
        cache_manager.put_har(5, 1, CompositionIndex((n,)), PAdic.from_rational(n, 5, 5))

    threads = [threading.Thread(target=worker, args=(n,)) for n in range(1, 9)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    fresh = CacheManager(cache_dir)
    assert len(fresh.list_records(RecordKind.HAR)) == 8
    for n in range(1, 9):
        assert fresh.get_har(5, 1, CompositionIndex((n,)), 5) is not None


def test_clear(cache_manager):
    cache_manager.put_har(5, 1, INDEX, PAdic.from_rational(1, 5, 3))
    cache_manager.put_har(7, 1, INDEX, PAdic.from_rational(1, 7, 3))
    assert cache_manager.clear() == 2
    assert cache_manager.get_har(5, 1, INDEX, 1) is None


def test_stats_keys(cache_manager):
    stats = cache_manager.get_cache_stats()
    assert {'cache_directory', 'files', 'records', 'distinct_keys', 'corrupt_lines',
            'bytes', 'session_hits', 'session_misses'} <= set(stats)


def test_record_line_format():
    record = CacheRecord.from_padic(RecordKind.ADJOINT, 1, INDEX, PAdic.from_rational(1, 5, 3), b=2)
    line = record.to_line()
    assert line.startswith("v1|adjoint|5|1|2,1|2|")
    assert CacheRecord.from_line(line) == record


@settings(max_examples=200, deadline=None)
@given(prime=st.sampled_from(list(primerange(2, 98))),
       numerator=st.integers(min_value=-10 ** 12, max_value=10 ** 12),
       denominator=st.integers(min_value=1, max_value=10 ** 6),
       precision=st.integers(min_value=1, max_value=12))
def test_record_round_trip_is_exact(prime, numerator, denominator, precision):
    value = PAdic.from_rational(Fraction(numerator, denominator), prime, precision)
    if value.is_exact_zero():
        return
    record = CacheRecord.from_line(CacheRecord.from_padic(RecordKind.HAR, 1, INDEX, value).to_line())
    restored = record.to_padic()
    assert restored.valuation == value.valuation
    assert restored.precision == value.precision
    assert restored.digits() == value.digits()
