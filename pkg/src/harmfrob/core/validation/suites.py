#!/usr/bin/env python3
"""
Named identity suites for the verify command.

A suite is a plain list of IdentityCheck objects; the validator and the
parallel processor do the rest.
"""

import logging
from typing import Callable, Dict, List, Optional

from harmfrob.models import IdentityCheck, RunConfig

logger = logging.getLogger(__name__)


def _check(name: str, check_type: str, informational: bool = False, **params) -> IdentityCheck:
    return IdentityCheck(name, check_type, params=params, informational=informational)


def quick_suite(config: Optional[RunConfig] = None) -> List[IdentityCheck]:
    """A few fast checks touching every engine."""
    return [
        _check("stuffle_har m<=20", "stuffle_har", m_max=20, weight_max=4),
        _check("har_valuation p=5", "har_valuation", prime=5, alphas=[1, 2], weight_max=3),
        _check("zeta_vanishing p=5 alpha=1", "zeta_vanishing", prime=5, alpha=1, precision=6),
        _check("finite_depth1 n=2", "finite_depth1", p_max=50, n=2),
        _check("expansion p=5 (2)", "expansion", prime=5, alpha=1, index="2", m_max=8, precision=5),
        _check("resummation p=5 (2)", "resummation", prime=5, alpha=1, index="2", b_max=6,
               precision=4),
        _check("b_quasi_shuffle l<=3", "b_quasi_shuffle", l_max=3),
        _check("iteration_depth1 p=5 n=2", "iteration_depth1", prime=5, n=2, precision=5),
        _check("ihara_group_law", "ihara_group_law", trials=3, weight_cutoff=4, seed=0),
    ]


def default_suite(config: Optional[RunConfig] = None) -> List[IdentityCheck]:
    """
    The full verification suite.

    Args:
        config: Run configuration; its seed feeds the randomized checks and
            its tail_margin the resummation thresholds

    Returns:
        List of IdentityCheck in a stable order
    """
    seed = config.seed if config is not None else 0
    tail_margin = config.tail_margin if config is not None else 2
    checks = [_check("stuffle_har m<=60", "stuffle_har", m_max=60, weight_max=6)]

    for p in (3, 5, 7, 11, 13):
        checks.append(_check(f"har_valuation p={p}", "har_valuation",
                             prime=p, alphas=[1, 2], weight_max=5))
    for p in (5, 7, 11, 13):
        for alpha in (1, 2):
            checks.append(_check(f"zeta_vanishing p={p} alpha={alpha}", "zeta_vanishing",
                                 prime=p, alpha=alpha, precision=10))
    for n in range(1, 7):
        checks.append(_check(f"finite_depth1 n={n}", "finite_depth1", p_max=200, n=n))
    for n in range(2, 6):
        checks.append(_check(f"kz_shape ({n})", "kz_shape", index=str(n),
                             primes=[7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]))

    for p in (5, 7):
        for alpha in (1, 2):
            for n in range(1, 5):
                checks.append(_check(f"expansion p={p} alpha={alpha} ({n})", "expansion",
                                     prime=p, alpha=alpha, index=str(n), m_max=20, precision=8))
    for weight in range(2, 6):
        for first in range(1, weight):
            index = f"{first},{weight - first}"
            checks.append(_check(f"expansion p=5 ({index})", "expansion",
                                 prime=5, alpha=1, index=index, m_max=12, precision=6))

    for p in (5, 7):
        for n in range(1, 5):
            checks.append(_check(f"depth1_coefficients p={p} ({n})", "depth1_coefficients",
                                 prime=p, alpha=1, n=n, b_max=5, precision=6))
            checks.append(_check(f"depth1_cross p={p} ({n})", "depth1_cross",
                                 prime=p, alpha=1, n=n, b_max=5, precision=6))
    for p in (5, 7):
        for index in ("2", "3", "1,2", "2,1"):
            checks.append(_check(f"resummation p={p} ({index})", "resummation",
                                 prime=p, alpha=1, index=index, b_max=6, precision=8,
                                 tail_margin=tail_margin))
    checks.append(_check("finite (1,1) p<=50", "finite_residue", index="1,1", p_max=50,
                         min_prime=5))

    for p in (5, 7):
        for n1 in range(1, 4):
            for n2 in range(n1, 4):
                for b in range(0, 5):
                    checks.append(_check(f"adjoint_stuffle p={p} b={b} ({n1})*({n2})",
                                         "adjoint_stuffle", prime=p, alpha=1, b=b,
                                         n1=n1, n2=n2, precision=5))
    checks.append(_check("b_quasi_shuffle l<=8", "b_quasi_shuffle", l_max=8))

    for p in (3, 5, 7):
        for n in range(1, 5):
            checks.append(_check(f"iteration_depth1 p={p} n={n}", "iteration_depth1",
                                 prime=p, n=n, precision=6))
    checks.append(_check("circ_composition p=5 (2)", "circ_composition",
                         prime=5, alpha=1, n=2, precision=4))
    checks.append(_check("ihara_group_law", "ihara_group_law",
                         trials=20, weight_cutoff=5, seed=seed))
    checks.append(_check("contraction p=5", "contraction_suite",
                         prime=5, trials=10, weight_cutoff=6, seed=seed))
    return checks


def conventions_suite(config: Optional[RunConfig] = None) -> List[IdentityCheck]:
    """
    Shuffle displays whose sign conventions are unsettled, reported under
    every variant, plus one inadmissible pair.
    """
    checks = []
    for display in ("block", "antipode"):
        for w, w2 in (("1", "1"), ("01", "1"), ("1", "01")):
            checks.append(_check(f"dmr_shuffle {display} {w}|{w2}", "dmr_shuffle",
                                 informational=True, prime=5, alpha=1, w=w, w2=w2, n=2,
                                 precision=3, display=display))
    checks.append(_check("dmr_shuffle inadmissible 10|1", "dmr_shuffle", informational=True,
                         prime=5, alpha=1, w="10", w2="1", n=2, precision=3))
    return checks


def contraction_suite(config: Optional[RunConfig] = None) -> List[IdentityCheck]:
    """Randomized contraction inequalities at the full trial count."""
    seed = config.seed if config is not None else 0
    return [
        _check("contraction p=5 N=8", "contraction_suite",
               prime=5, trials=100, weight_cutoff=8, seed=seed),
        _check("ihara_group_law N=6", "ihara_group_law", trials=100, weight_cutoff=6, seed=seed),
    ]


SUITES: Dict[str, Callable[[Optional[RunConfig]], List[IdentityCheck]]] = {
    'default': default_suite,
    'quick': quick_suite,
    'conventions': conventions_suite,
    'contraction': contraction_suite,
}


def build_suite(name: str, config: Optional[RunConfig] = None) -> List[IdentityCheck]:
    """
    Build a named suite.

    Raises:
        ValueError: if the suite name is unknown
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    checks = SUITES[name](config)
    logger.info("suite %s: %d checks", name, len(checks))
    return checks


def _coerce(raw: str, current):
    if isinstance(current, bool):
        return raw.lower() in ("1", "true", "yes")
    if isinstance(current, int):
        return int(raw)
    if isinstance(current, list):
        return [int(piece) for piece in raw.split(",") if piece.strip()]
    return raw


def override_params(checks: List[IdentityCheck], overrides: Dict[str, str]) -> List[IdentityCheck]:
    """
    Replace parameters in every check that already has them.

    Values are parsed to the type of the parameter they replace.

    Raises:
        ValueError: if a key matches no check, or a value does not parse
    """
    applied = set()
    for check in checks:
        for key, raw in overrides.items():
            if key in check.params:
                check.params[key] = _coerce(raw, check.params[key])
                applied.add(key)
    unknown = sorted(set(overrides) - applied)
    if unknown:
        raise ValueError(f"no check in the suite takes {', '.join(unknown)}")
    return checks
