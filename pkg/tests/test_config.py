#!/usr/bin/env python3
"""
Tests for run configuration resolution.
"""

import json

import pytest

from harmfrob.errors import ConfigError
from harmfrob.models import OutputFormat, RunConfig
from harmfrob.utils.config_utils import (
    config_from_env,
    load_config,
    merge_configs,
    resolve_config,
    save_config,
)


def test_defaults(clean_env):
    config = resolve_config(environ={})
    assert config.primes == [5, 7]
    assert config.precision == 8
    assert config.output_format is OutputFormat.TEXT


def test_precedence(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({'precision': 5, 'seed': 3, 'primes': [11]}))
    environ = {'HARMFROB_PRECISION': "6", 'HARMFROB_ALPHAS': "1,2"}
    config = resolve_config(str(path), overrides={'precision': 9, 'seed': None}, environ=environ)
    assert config.precision == 9
    assert config.seed == 3
    assert config.primes == [11]
    assert config.alphas == [1, 2]


def test_env_parsing():
    overrides = config_from_env({'HARMFROB_PRIMES': "5, 7,11", 'HARMFROB_FORMAT': "json",
                                 'HARMFROB_SEED': "", 'OTHER': "x"})
    assert overrides == {'primes': [5, 7, 11], 'output_format': "json"}


def test_bad_env_value():
    with pytest.raises(ConfigError):
        config_from_env({'HARMFROB_PRECISION': "high"})


def test_missing_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/harmfrob.json")


def test_invalid_values():
    with pytest.raises(ValueError):
        RunConfig(precision=0)
    with pytest.raises(ValueError):
        RunConfig(output_format="xml")
    with pytest.raises(ConfigError):
        merge_configs(RunConfig(), {'max_workers': 0})


def test_save_and_load(tmp_path):
    path = tmp_path / "saved.json"
    config = RunConfig(primes=[7], precision=4, output_format=OutputFormat.CSV)
    save_config(config, str(path))
    assert load_config(str(path)) == config


def test_hash_is_stable():
    assert RunConfig().get_config_hash() == RunConfig().get_config_hash()
    assert RunConfig(seed=1).get_config_hash() != RunConfig().get_config_hash()
    assert RunConfig(max_workers=2).get_config_hash() == RunConfig().get_config_hash()


def test_merge_ignores_none():
    merged = merge_configs(RunConfig(precision=5), {'precision': None, 'seed': 4})
    assert merged.precision == 5
    assert merged.seed == 4


def test_cache_dir_is_expanded():
    config = resolve_config(environ={'HARMFROB_CACHE_DIR': "~/harmfrob-cache"})
    assert not config.cache_dir.startswith("~")


def test_cutoffs_and_tail_margin_from_env():
    config = resolve_config(environ={'HARMFROB_WEIGHT_CUTOFF': "6", 'HARMFROB_DEPTH_CUTOFF': "2",
                                     'HARMFROB_TAIL_MARGIN': "3"})
    assert config.weight_cutoff == 6
    assert config.depth_cutoff == 2
    assert config.tail_margin == 3
    with pytest.raises(ConfigError):
        resolve_config(environ={'HARMFROB_TAIL_MARGIN': "-1"})
