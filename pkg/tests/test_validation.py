#!/usr/bin/env python3
"""
Tests for the relations harness: identity plans, named checks and suites.
"""

import random
from fractions import Fraction

import pytest

from harmfrob.core.validation import (
    SUITES,
    RelationValidator,
    build_suite,
    guarded_check,
    override_params,
    quick_suite,
)
from harmfrob.core.words import (
    CompositionIndex,
    NcSeries,
    ihara,
    ihara_inverse,
    is_grouplike,
    tau_scale,
)
from harmfrob.errors import CutoffTooSmallError
from harmfrob.models import CheckStatus, IdentityCheck, Report, RunConfig


def test_exact_plan_passes_on_zero(validator):
    """1 - B_1^{0} = 0, since sum_{0<=u<m} 1 = m."""
    check = IdentityCheck("s0", "plan", terms=[
        (Fraction(1), (('rational', 1),)),
        (Fraction(-1), (('b_coeff', (0,), 1),)),
    ])
    report = validator.run(check)
    assert report.status is CheckStatus.PASS
    assert report.exact_zero


def test_exact_plan_fails_on_nonzero(validator):
    check = IdentityCheck("half", "plan", terms=[
        (Fraction(1), (('rational', "1/2"),)),
        (Fraction(-1), (('b_coeff', (0,), 1),)),
    ])
    report = validator.run(check)
    assert report.status is CheckStatus.FAIL
    assert report.details['mismatches'] == ["-1/2"]


def test_padic_plan(validator):
    """har_5(2) - har_5(2) vanishes to the requested precision."""
    check = IdentityCheck("har difference", "plan", params={'precision': 5}, terms=[
        (Fraction(1), (('har', 5, 1, "2"),)),
        (Fraction(-1), (('har', 5, 1, "2"),)),
    ])
    report = validator.run(check)
    assert report.passed
    assert report.threshold == 5


def test_padic_plan_without_precision_is_an_error(validator):
    check = IdentityCheck("no precision", "plan", terms=[(Fraction(1), (('har', 5, 1, "2"),))])
    report = validator.run(check)
    assert report.status is CheckStatus.ERROR
    assert "precision" in report.message


def test_unknown_check_type(validator):
    report = validator.run(IdentityCheck("mystery", "does_not_exist"))
    assert report.status is CheckStatus.ERROR
    assert "does_not_exist" in report.message


def test_bad_parameters_become_error_report(validator):
    report = validator.run(IdentityCheck("zeta n=1", "zeta_vanishing",
                                         params={'prime': 5, 'alpha': 1, 'precision': 4, 'n': 1}))
    assert report.status is CheckStatus.ERROR
    assert report.params['n'] == 1


def test_guarded_check_records_params():
    class Sample:
        @guarded_check("sample")
        def check_sample(self, a, b=3):
            if a < 0:
                raise CutoffTooSmallError("negative")
            return Report("inner", {}, CheckStatus.PASS)

    sample = Sample()
    report = sample.check_sample(1)
    assert report.name == "sample"
    assert report.params == {'a': 1, 'b': 3}
    assert report.passed
    failed = sample.check_sample(-1, b=4)
    assert failed.status is CheckStatus.ERROR
    assert failed.params == {'a': -1, 'b': 4}
    assert Sample.check_sample.check_name == "sample"


def test_config_hash_and_informational_flag(adjoint_engine):
    validator = RelationValidator(adjoint_engine, config_hash="abc123")
    check = IdentityCheck("info", "b_quasi_shuffle", params={'l_max': 1}, informational=True)
    report = validator.run(check)
    assert report.config_hash == "abc123"
    assert report.informational
    assert report.to_dict()['informational'] is True


def test_b_quasi_shuffle(validator):
    report = validator.check_b_quasi_shuffle(l_max=4)
    assert report.passed
    assert report.details['plans'] > 0


def test_stuffle_har(validator):
    assert validator.check_stuffle_har(m_max=12, weight_max=4).passed


def test_har_valuation(validator):
    report = validator.check_har_valuation(5, alphas=[1, 2], weight_max=3)
    assert report.passed
    assert report.details['valuation_violations'] == 0


def test_finite_depth_one(validator):
    for n in (1, 2, 3, 4):
        assert validator.check_finite_depth1(p_max=40, n=n).passed


def test_finite_residue(validator):
    assert validator.check_finite_residue("1,1", p_max=50).passed


def test_kz_shape(validator):
    report = validator.check_kz_shape("3", primes=[7, 11, 13])
    assert report.passed
    assert set(report.details['residues']) == {"7", "11", "13"}


def test_kz_shape_needs_depth_one(validator):
    assert validator.check_kz_shape("2,1", primes=[7]).status is CheckStatus.ERROR


def test_expansion_check(validator):
    assert validator.check_expansion(5, 1, "2,1", m_max=6, precision=4).passed


def test_zeta_vanishing(validator):
    assert validator.check_zeta_vanishing(7, 1, 6).passed


def test_depth_one_checks(validator):
    assert validator.check_depth1_coefficients(5, 1, 2, b_max=3, precision=5).passed
    assert validator.check_depth1_cross(7, 1, 3, b_max=3, precision=5).passed


def test_iteration_check(validator):
    assert validator.check_iteration_depth1(5, 2, 5).passed


def test_resummation_check(validator):
    assert validator.check_resummation(5, 1, "2,1", b_max=6, precision=4).passed


def test_adjoint_stuffle(validator):
    for b in (1, 2):
        report = validator.check_adjoint_stuffle(5, 1, b, 1, 2, precision=4)
        assert report.passed, report.to_dict()


def test_adjoint_stuffle_cutoff(validator):
    report = validator.check_adjoint_stuffle(5, 1, 4, 2, 3, precision=4, weight_cutoff=5)
    assert report.status is CheckStatus.ERROR


def test_dmr_shuffle_inadmissible(validator):
    report = validator.check_dmr_shuffle(5, 1, "10", "1", 1, precision=2)
    assert report.status is CheckStatus.INADMISSIBLE


def test_dmr_shuffle_unknown_display(validator):
    report = validator.check_dmr_shuffle(5, 1, "1", "1", 1, precision=2, display="other")
    assert report.status is CheckStatus.ERROR


@pytest.mark.slow
def test_dmr_shuffle_is_informational(validator):
    report = validator.check_dmr_shuffle(5, 1, "1", "1", 2, precision=2)
    assert report.informational
    assert report.status in (CheckStatus.PASS, CheckStatus.FAIL)
    assert set(report.details['variants']) == {'sigma', 'lambda'}
    assert len(report.details['variants']['sigma']) == 4


def test_ihara_group_law(validator):
    report = validator.check_ihara_group_law(trials=3, weight_cutoff=4, seed=7)
    assert report.passed, report.details


def test_contraction(validator):
    report = validator.check_contraction_suite(5, trials=4, weight_cutoff=4, seed=3)
    assert report.passed, report.details
    assert set(report.details['fixed_point_decay']) == {"1", "2", "3"}


def test_contraction_flags_overclaimed_rate(validator):
    report = validator.check_contraction_suite(5, trials=3, weight_cutoff=4, seed=3, rate=2)
    assert report.status is CheckStatus.FAIL
    assert any(m.startswith("contraction") for m in report.details['mismatches'])


def test_contraction_needs_positive_alpha0(validator):
    report = validator.check_contraction_suite(5, trials=2, weight_cutoff=3, alpha0=0)
    assert report.status is CheckStatus.ERROR
    assert report.params['alpha0'] == 0


def test_group_difference_is_scaled_by_tau():
    rng = random.Random(11)
    cutoff = 4
    one = NcSeries.one(weight_cutoff=cutoff)
    g, f, f2 = (RelationValidator.random_grouplike(rng, 5, cutoff) for _ in range(3))
    assert is_grouplike(f)
    before = ihara(ihara_inverse(f2), f) - one
    assert not before.is_zero()
    psi_f = ihara(g, tau_scale(5, f))
    psi_f2 = ihara(g, tau_scale(5, f2))
    after = ihara(ihara_inverse(psi_f2), psi_f) - one
    assert after == tau_scale(5, before)


@pytest.mark.slow
def test_circ_composition(validator):
    report = validator.check_circ_composition(5, 1, 2, precision=3)
    assert report.passed, report.to_dict()


def test_suites_are_well_formed():
    config = RunConfig(seed=5)
    for name in SUITES:
        checks = build_suite(name, config)
        assert checks
        assert len({c.name for c in checks}) == len(checks)
        for check in checks:
            assert hasattr(RelationValidator, f"check_{check.check_type}")
    with pytest.raises(ValueError):
        build_suite("nope", config)


@pytest.mark.slow
def test_quick_suite_passes(validator):
    reports = [validator.run(check) for check in quick_suite()]
    failing = [r.to_dict() for r in reports if not r.passed]
    assert not failing


def test_override_params():
    checks = override_params(quick_suite(), {'m_max': "12", 'alphas': "1"})
    stuffle = next(c for c in checks if c.check_type == "stuffle_har")
    assert stuffle.params['m_max'] == 12
    valuation = next(c for c in checks if c.check_type == "har_valuation")
    assert valuation.params['alphas'] == [1]
    with pytest.raises(ValueError):
        override_params(quick_suite(), {'nonsense': "1"})


def test_default_suite_covers_b_zero_and_tail_margin():
    checks = build_suite("default", RunConfig(tail_margin=3))
    stuffle_bs = {c.params['b'] for c in checks if c.check_type == "adjoint_stuffle"}
    assert stuffle_bs == {0, 1, 2, 3, 4}
    resummations = [c for c in checks if c.check_type == "resummation"]
    assert resummations
    assert all(c.params['tail_margin'] == 3 for c in resummations)


def test_adjoint_stuffle_at_b_zero(validator):
    assert validator.check_adjoint_stuffle(5, 1, 0, 1, 1, precision=4).passed
