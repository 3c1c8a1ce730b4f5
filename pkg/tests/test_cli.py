#!/usr/bin/env python3
"""
End-to-end tests for the harmfrob command.
"""

import csv
import json

import pytest

from harmfrob.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

pytestmark = pytest.mark.integration


def test_finite_mzv_csv(clean_env, tmp_path):
    out = tmp_path / "fmzv.csv"
    assert main(['finite-mzv', '--index', '1,1', '--pmax', '13', '--no-cache', '-q',
                 '--out', str(out)]) == EXIT_OK
    text = out.read_text()
    assert text.splitlines()[0] == "index,p,residue"
    assert '"1,1",5,0' in text
    rows = list(csv.DictReader(text.splitlines()))
    assert [int(r['p']) for r in rows] == [2, 3, 5, 7, 11, 13]
    assert rows[1]['residue'] == "2"


def test_zeta1_json(clean_env, tmp_path):
    out = tmp_path / "zeta.json"
    assert main(['zeta1', '--p', '5', '--n', '2,3', '--prec', '5', '-q', '--out', str(out)]) == EXIT_OK
    rows = json.loads(out.read_text())
    assert rows[0]['n'] == 2
    assert rows[0]['zero_to_precision'] is True
    assert rows[0]['value'] == "0 + O(5^5)"


def test_usage_errors(clean_env, tmp_path):
    assert main(['har', '--index', '0,1', '-q']) == EXIT_USAGE
    assert main(['har', '--index', 'x', '-q']) == EXIT_USAGE
    assert main(['no-such-command']) == EXIT_USAGE
    assert main(['zeta1', '--p', '5', '--n', '1', '-q']) == EXIT_USAGE
    assert main(['har', '--index', '2', '--config', str(tmp_path / "missing.json"), '-q']) == EXIT_USAGE


def test_bad_environment_is_usage_error(clean_env):
    clean_env.setenv('HARMFROB_PRECISION', "lots")
    assert main(['har', '--index', '2', '-q']) == EXIT_USAGE


def test_exact_har(clean_env, tmp_path):
    out = tmp_path / "exact.json"
    assert main(['har', '--index', '2', '--m', '3', '-q', '--out', str(out)]) == EXIT_OK
    assert json.loads(out.read_text()) == [{'index': "2", 'm': 3, 'value': "45/4"}]


def test_warm_cache_rerun_is_identical(clean_env, tmp_path):
    cache = tmp_path / "cache"
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    args = ['har', '--index', '2,1', '--p', '5,7', '--alpha', '1,2', '--prec', '6',
            '--cache-dir', str(cache), '-q']
    assert main(args + ['--out', str(first)]) == EXIT_OK
    assert any(cache.iterdir())
    assert main(args + ['--out', str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert len(first.read_text().splitlines()) == 5


def test_cache_gc(clean_env, tmp_path):
    assert main(['cache-gc', '-q']) == EXIT_USAGE
    cache = tmp_path / "cache"
    assert main(['har', '--index', '2', '--p', '5', '--prec', '4', '--cache-dir', str(cache),
                 '-q', '--out', str(tmp_path / "har.csv")]) == EXIT_OK
    stats = tmp_path / "stats.json"
    assert main(['cache-gc', '--cache-dir', str(cache), '-q', '--out', str(stats)]) == EXIT_OK
    assert json.loads(stats.read_text())['records'] >= 1
    assert main(['cache-gc', '--clear', '--cache-dir', str(cache), '-q', '--out', str(stats)]) == EXIT_OK
    assert json.loads(stats.read_text())['files'] == 0


def test_expand_sigma_json(clean_env, tmp_path):
    out = tmp_path / "sigma.json"
    assert main(['expand-sigma', '--index', '1', '--cutoff', '3', '-q', '--out', str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data['index'] == "1"
    assert data['term_count'] == len(data['terms'])


def test_adjoint_table_rows(clean_env, tmp_path):
    out = tmp_path / "adjoint.csv"
    assert main(['adjoint', '--index', '2', '--p', '5', '--bmax', '2', '--prec', '4', '-q',
                 '--out', str(out)]) == EXIT_OK
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert [r['b'] for r in rows] == ["0", "1", "2"]
    assert rows[0]['valuation'] == "inf"


@pytest.mark.slow
def test_verify_quick_suite(clean_env, tmp_path):
    out = tmp_path / "report.json"
    code = main(['verify', '--suite', 'quick', '--workers', '2', '-q', '--out', str(out)])
    report = json.loads(out.read_text())
    assert code == EXIT_OK, report['summary']
    assert report['summary']['failed'] == []
    assert report['suite'] == "quick"
    assert code != EXIT_FAILURE


def test_adjoint_single_b_and_cutoff(clean_env, tmp_path):
    out = tmp_path / "one.json"
    assert main(['adjoint', '--index', '2', '--p', '5', '--b', '1', '--prec', '4', '-q',
                 '--out', str(out)]) == EXIT_OK
    rows = json.loads(out.read_text())
    assert [r['b'] for r in rows] == [1]
    assert main(['adjoint', '--index', '2', '--p', '5', '--b', '3', '--weight-cutoff', '4',
                 '-q']) == EXIT_USAGE
    assert main(['adjoint', '--index', '2', '--p', '5', '--b', '1', '--bmax', '3', '-q']) == EXIT_USAGE


def test_verify_rejects_unknown_param(clean_env, tmp_path):
    assert main(['verify', '--suite', 'quick', '--param', 'no_such_key=1', '-q',
                 '--out', str(tmp_path / "r.json")]) == EXIT_USAGE
    assert main(['verify', '--suite', 'quick', '--param', 'oops', '-q']) == EXIT_USAGE


def test_adjoint_cutoffs_from_config(clean_env, tmp_path):
    clean_env.setenv("HARMFROB_WEIGHT_CUTOFF", "3")
    assert main(['adjoint', '--index', '2', '--p', '5', '--b', '2', '--prec', '3', '-q']) == EXIT_USAGE
    out = tmp_path / "flag.json"
    assert main(['adjoint', '--index', '2', '--p', '5', '--b', '2', '--prec', '3',
                 '--weight-cutoff', '4', '-q', '--out', str(out)]) == EXIT_OK
    assert [r['b'] for r in json.loads(out.read_text())] == [2]
    clean_env.setenv("HARMFROB_DEPTH_CUTOFF", "1")
    assert main(['adjoint', '--index', '1,1', '--p', '5', '--b', '0', '--prec', '3',
                 '--weight-cutoff', '4', '-q']) == EXIT_USAGE
