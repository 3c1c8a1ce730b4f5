#!/usr/bin/env python3
"""
Action of adjoint series on harmonic generating series.

The generating series of har_m is written in the layout where the word
e0^l e1 w carries har_m(w) for every l; the limit in l then reads off the
value at w. Acting with an adjoint series g sends har_m to har_{q m}:

    (g circ h_m)(e0, e1) = h_m(e0, tau(m)(g) / m)

followed by the limit l -> infinity of the coefficients of e0^l e1 w.
"""

import logging
from typing import Any, Optional

from harmfrob.core.arith import PAdicField
from harmfrob.core.harmonic.harmonic_engine import HarmonicEngine
from harmfrob.core.words.operations import limit_e0, substitute_e1, tau_scale
from harmfrob.core.words.series import NcSeries
from harmfrob.core.words.word import CompositionIndex, compositions
from harmfrob.errors import CutoffTooSmallError
from harmfrob.models import AdjointTable

logger = logging.getLogger(__name__)


def _targets(weight_cutoff: int, depth_cutoff: Optional[int]):
    """Compositions w with weight(e1 w) <= weight_cutoff, within the depth cutoff."""
    max_depth = None if depth_cutoff is None else depth_cutoff - 1
    for weight in range(weight_cutoff):
        for index in compositions(weight, max_depth):
            yield index


def harmonic_generating_series(m: int, weight_cutoff: int, ring: Any,
                               depth_cutoff: Optional[int] = None,
                               engine: Optional[HarmonicEngine] = None) -> NcSeries:
    """
    h_m = sum over l and w of har_m(w) e0^l e1 w.

    Args:
        m: Upper bound of the harmonic sums
        weight_cutoff: Truncation weight N
        ring: Coefficient ring
        depth_cutoff: Optional depth cutoff D
        engine: HarmonicEngine to evaluate with

    Returns:
        NcSeries over ring with the given cutoffs
    """
    engine = engine or HarmonicEngine()
    coeffs = {}
    for index in _targets(weight_cutoff, depth_cutoff):
        value = ring.one() if index.is_empty() else engine.har(m, index, ring).value
        tail = "1" + index.to_word().letters
        for l in range(weight_cutoff - len(tail) + 1):
            coeffs["0" * l + tail] = value
    return NcSeries(coeffs, ring, weight_cutoff, depth_cutoff)


def adjoint_series(table: AdjointTable, precision: Optional[int] = None,
                   depth_cutoff: Optional[int] = None) -> NcSeries:
    """
    e1 + sum entry(b, I) e0^b e1 word(I) over the table.

    The series has weight cutoff table.weight_cutoff + 1 and lives over
    Q_p at the smallest precision of the stored entries unless given.
    """
    if precision is None:
        known = [v.precision for v in table.entries.values() if v.precision is not None]
        precision = min(known) if known else 1
    ring = PAdicField(table.prime, precision)
    coeffs = {"1": ring.one()}
    for (b, index), value in table.entries.items():
        coeffs["0" * b + "1" + index.to_word().letters] = value
    return NcSeries(coeffs, ring, table.weight_cutoff + 1, depth_cutoff)


def circ_har_z(g: NcSeries, h: NcSeries, m: int, min_precision: int = 1) -> NcSeries:
    """
    g circ h_m: substitute e1 -> tau(m)(g)/m in h and take the e0-limit.

    The limit consumes one e0 of headroom, so the result has weight
    cutoff h.weight_cutoff - 1 and the same z<<1 layout as h. With g = e1
    the result is h truncated.

    Args:
        g: Adjoint series with coefficient 1 at e1 and no constant term
        h: Harmonic generating series over a p-adic field
        m: The bound of h
        min_precision: Smallest acceptable valuation of the last increment

    Raises:
        CutoffTooSmallError: if h leaves no room for the limit
        NotStabilizedError: if a limit coefficient has not settled
    """
    if h.weight_cutoff < 2:
        raise CutoffTooSmallError("the e0-limit needs weight cutoff at least 2")
    scaled = tau_scale(m, g).map_coefficients(lambda key, c: c / m)
    scaled = NcSeries(dict(scaled.raw_items()), h.ring, h.weight_cutoff, h.depth_cutoff)
    substituted = substitute_e1(h, scaled)
    logger.debug("substituted series at m=%d has %d terms", m, len(substituted))

    cutoff = h.weight_cutoff - 1
    coeffs = {}
    for index in _targets(cutoff, h.depth_cutoff):
        tail = "1" + index.to_word().letters
        value = limit_e0(substituted, tail, min_precision)
        for l in range(cutoff - len(tail) + 1):
            coeffs["0" * l + tail] = value
    return NcSeries(coeffs, h.ring, cutoff, h.depth_cutoff)


def read_har(series: NcSeries, index: CompositionIndex) -> Any:
    """The value carried at e1 word(index) in the z<<1 layout."""
    return series["1" + index.to_word().letters]
