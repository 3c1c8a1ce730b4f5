#!/usr/bin/env python3
"""
Rendering of p-adic values, expansions and result tables.

Every writer here is deterministic: fixed column order, sorted JSON keys,
two-space indent and a trailing newline.
"""

import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

from harmfrob.core.arith import PAdic
from harmfrob.core.power_sums.sigma_expansion import SigmaExpansion
from harmfrob.models import OutputFormat

logger = logging.getLogger(__name__)

Destination = Union[str, Path, TextIO, None]


def format_padic(value: Union[PAdic, Fraction, int]) -> str:
    """
    Human-readable p-adic value.

    p^v * (d0,d1,...) + O(p^A) with little-endian base-p digits,
    0 + O(p^A) for a zero known to precision A, and 0 (exact).
    """
    if isinstance(value, PAdic):
        return str(value)
    return str(Fraction(value))


def padic_fields(value: PAdic) -> Dict[str, Any]:
    """Columns valuation, precision and digits of a table row."""
    if value.is_exact_zero():
        return {'valuation': "inf", 'precision': "exact", 'digits': ""}
    return {
        'valuation': "inf" if value.valuation is None else value.valuation,
        'precision': value.precision,
        'digits': " ".join(str(d) for d in value.digits()),
    }


def format_expansion_text(expansion: SigmaExpansion) -> str:
    """One term per line, in the canonical term order."""
    header = f"har_(p^a m)({expansion.index}) mod weight > {expansion.weight_cutoff}:"
    lines = [header] + [f"  {term.render()}" for term in expansion]
    return "\n".join(lines) + "\n"


def expansion_to_dict(expansion: SigmaExpansion) -> Dict[str, Any]:
    data = expansion.to_dict()
    data['term_count'] = len(expansion)
    return data


def _open(destination: Destination):
    if destination is None or destination == "-":
        return sys.stdout, False
    if isinstance(destination, (str, Path)):
        return open(destination, 'w', newline=''), True
    return destination, False


def write_csv(rows: Sequence[Dict[str, Any]], destination: Destination,
              fieldnames: Optional[List[str]] = None) -> None:
    """
    Write rows as CSV with a header line.

    Args:
        rows: Row dictionaries
        destination: Path, open text stream, or None / '-' for stdout
        fieldnames: Column order; keys of the first row by default
    """
    if fieldnames is None:
        fieldnames = list(rows[0].keys()) if rows else []
    stream, close = _open(destination)
    try:
        writer = csv.DictWriter(stream, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    finally:
        if close:
            stream.close()
    logger.debug("wrote %d csv rows", len(rows))


def write_json(data: Any, destination: Destination) -> None:
    """Write JSON with sorted keys and a two-space indent."""
    stream, close = _open(destination)
    try:
        json.dump(data, stream, indent=2, sort_keys=True, default=str)
        stream.write("\n")
    finally:
        if close:
            stream.close()


def format_table_text(rows: Sequence[Dict[str, Any]], fieldnames: Optional[List[str]] = None) -> str:
    """Aligned plain-text table."""
    if not rows:
        return ""
    if fieldnames is None:
        fieldnames = list(rows[0].keys())
    cells = [[str(name) for name in fieldnames]]
    cells.extend([str(row.get(name, "")) for name in fieldnames] for row in rows)
    widths = [max(len(line[i]) for line in cells) for i in range(len(fieldnames))]
    out = io.StringIO()
    for line in cells:
        out.write("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())
        out.write("\n")
    return out.getvalue()


def write_rows(rows: Sequence[Dict[str, Any]], output_format: OutputFormat,
               destination: Destination, fieldnames: Optional[List[str]] = None) -> None:
    """Write a table in the requested format."""
    if output_format is OutputFormat.CSV:
        write_csv(rows, destination, fieldnames)
    elif output_format is OutputFormat.JSON:
        write_json(list(rows), destination)
    else:
        stream, close = _open(destination)
        try:
            stream.write(format_table_text(rows, fieldnames))
        finally:
            if close:
                stream.close()
