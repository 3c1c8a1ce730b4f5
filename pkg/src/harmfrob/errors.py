#!/usr/bin/env python3
"""
Exception hierarchy for harmonic-frobenius.

Every error kind raised by the library derives from HarmFrobError and from
the builtin exception a caller would naturally expect.
"""


class HarmFrobError(Exception):
    """Base class for all library errors."""


class PrecisionExhaustedError(HarmFrobError, ArithmeticError):
    """Cancellation or division consumed every certified p-adic digit."""


class InversionOfZeroError(HarmFrobError, ZeroDivisionError):
    """Inversion of an exact zero."""


class NonInvertibleError(HarmFrobError, ValueError):
    """Series inverse requested for a non-invertible constant term."""


class ConstantTermError(HarmFrobError, ValueError):
    """A series has a constant term that the operation does not allow."""


class WordShapeError(HarmFrobError, ValueError):
    """A word does not have the shape an operation requires."""


class NotStabilizedError(HarmFrobError, ArithmeticError):
    """A limit along e0-blocks did not stabilise within the cutoff."""


class CutoffTooSmallError(HarmFrobError, ValueError):
    """The weight cutoff cannot hold the requested quantity."""


class ValuationViolationError(HarmFrobError, AssertionError):
    """A proven valuation bound failed, which means an arithmetic bug."""


class InadmissiblePairError(HarmFrobError, ValueError):
    """Word pair outside the admissible range of a shuffle display."""


class CorruptRecordError(HarmFrobError, ValueError):
    """A cache line could not be parsed or has an unknown format version."""


class ConfigError(HarmFrobError, ValueError):
    """Invalid run configuration."""
