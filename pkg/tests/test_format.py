#!/usr/bin/env python3
"""
Tests for value rendering and table writers.
"""

import io
import json
from fractions import Fraction

from harmfrob.core.arith import PAdic
from harmfrob.core.power_sums import expand_sigma
from harmfrob.core.words import CompositionIndex
from harmfrob.models import OutputFormat
from harmfrob.utils.format_utils import (
    format_expansion_text,
    format_padic,
    format_table_text,
    padic_fields,
    write_csv,
    write_json,
    write_rows,
)


def test_format_padic():
    assert format_padic(PAdic.from_rational(Fraction(1, 3), 5, 4)) == "5^0 * (2,3,1,3) + O(5^4)"
    assert format_padic(PAdic.zero(5, 3)) == "0 + O(5^3)"
    assert format_padic(PAdic.exact_zero(5)) == "0 (exact)"
    assert format_padic(Fraction(-3, 4)) == "-3/4"


def test_padic_fields():
    assert padic_fields(PAdic.from_rational(10, 5, 4)) == {'valuation': 1, 'precision': 4, 'digits': "2 0 0"}
    assert padic_fields(PAdic.exact_zero(5))['precision'] == "exact"
    assert padic_fields(PAdic.zero(5, 3)) == {'valuation': "inf", 'precision': 3, 'digits': ""}


def test_csv_and_json_writers():
    rows = [{'index': "1,1", 'p': 5}, {'index': "2", 'p': 7}]
    stream = io.StringIO()
    write_csv(rows, stream)
    assert stream.getvalue() == 'index,p\n"1,1",5\n2,7\n'
    stream = io.StringIO()
    write_json({'b': 1, 'a': [1, 2]}, stream)
    assert stream.getvalue().endswith("\n")
    assert list(json.loads(stream.getvalue())) == ['a', 'b']


def test_text_table():
    text = format_table_text([{'n': 2, 'value': "0"}, {'n': 10, 'value': "1/2"}])
    assert text.splitlines() == ["n   value", "2   0", "10  1/2"]
    assert format_table_text([]) == ""
    stream = io.StringIO()
    write_rows([{'n': 1}], OutputFormat.TEXT, stream)
    assert stream.getvalue() == "n\n1\n"


def test_expansion_text():
    text = format_expansion_text(expand_sigma(CompositionIndex((1,)), 2))
    lines = text.splitlines()
    assert lines[0] == "har_(p^a m)(1) mod weight > 2:"
    assert all(line.startswith("  m^") for line in lines[1:])
