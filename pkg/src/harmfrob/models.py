#!/usr/bin/env python3
"""
Data models and configuration classes for harmonic-frobenius.

This module contains the value types returned by the engines, the cache
record format, the identity-check and report types of the relations
harness, and the run configuration.
"""

import hashlib
import threading
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from harmfrob.core.arith import PAdic
from harmfrob.core.words.word import CompositionIndex
from harmfrob.errors import CorruptRecordError

CACHE_FORMAT_VERSION = 1


class OutputFormat(Enum):
    """Output formats for tables and reports."""
    CSV = "csv"
    JSON = "json"
    TEXT = "text"


class RecordKind(Enum):
    """Kinds of cached values."""
    HAR = "har"
    ADJOINT = "adjoint"


class CheckStatus(Enum):
    """Outcome of an identity check."""
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"
    INADMISSIBLE = "inadmissible"


# ----------------------------------------------------------------------
# Harmonic values
# ----------------------------------------------------------------------

@dataclass
class HarValue:
    """Weighted (or unweighted) multiple harmonic sum har_m(index)."""
    m: int
    index: CompositionIndex
    value: Union[Fraction, PAdic]
    weighted: bool = True
    prime: Optional[int] = None
    alpha: Optional[int] = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")

    def unweighted(self) -> Union[Fraction, PAdic]:
        if not self.weighted:
            return self.value
        return self.value * Fraction(1, self.m ** self.index.weight)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': self.m,
            'index': str(self.index),
            'value': str(self.value),
            'weighted': self.weighted,
            'prime': self.prime,
            'alpha': self.alpha,
        }


@dataclass
class ExtendedHarValue:
    """
    Extended harmonic value for a word ending in e0^r.

    coefficients maps the power of the formal variable l_f to a rational.
    """
    m: int
    index: CompositionIndex
    r: int
    coefficients: Dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        self.coefficients = {k: v for k, v in self.coefficients.items() if v != 0}

    @property
    def degree(self) -> int:
        return max(self.coefficients, default=0)

    def constant(self) -> Fraction:
        return self.coefficients.get(0, Fraction(0))

    def evaluate(self, l_f: Union[int, Fraction]) -> Fraction:
        return sum((c * Fraction(l_f) ** k for k, c in self.coefficients.items()), Fraction(0))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(
            f"({c})" + (f"*l_f^{k}" if k else "") for k, c in sorted(self.coefficients.items())
        )


@dataclass
class FiniteMzvResidue:
    """Residue of p^{-weight} har_p(index) modulo p."""
    prime: int
    index: CompositionIndex
    residue: int

    def __post_init__(self):
        if not 0 <= self.residue < self.prime:
            raise ValueError(f"residue {self.residue} not reduced modulo {self.prime}")

    def to_row(self) -> Dict[str, Any]:
        return {'index': str(self.index), 'p': self.prime, 'residue': self.residue}


# ----------------------------------------------------------------------
# Adjoint values
# ----------------------------------------------------------------------

@dataclass
class ZetaDepth1Value:
    """Depth-one p-adic zeta value with its truncation order."""
    prime: int
    alpha: int
    n: int
    value: PAdic
    truncation_l: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")

    @property
    def certified_precision(self) -> Optional[int]:
        return self.value.precision


@dataclass
class AdjointTable:
    """
    Raw coefficients of Phi^{-1} e1 Phi at e0^b e1 word(I).

    Entries are written once per key. definition_value applies the sign
    (-1)^depth that turns a stored coefficient into the adjoint zeta value.
    """
    prime: int
    alpha: int
    weight_cutoff: int
    entries: Dict[Tuple[int, CompositionIndex], PAdic] = field(default_factory=dict)
    signed: bool = False

    def __post_init__(self):
        self._lock = threading.Lock()

    def insert(self, b: int, index: CompositionIndex, value: PAdic) -> PAdic:
        """Store value unless the key is already present; return the stored value."""
        with self._lock:
            return self.entries.setdefault((b, index), value)

    def get(self, b: int, index: CompositionIndex) -> Optional[PAdic]:
        return self.entries.get((b, index))

    def __contains__(self, key: Tuple[int, CompositionIndex]) -> bool:
        return key in self.entries

    def definition_value(self, b: int, index: CompositionIndex) -> Optional[PAdic]:
        raw = self.get(b, index)
        if raw is None:
            return None
        return -raw if index.depth % 2 else raw

    def keys(self) -> List[Tuple[int, CompositionIndex]]:
        return sorted(self.entries, key=lambda k: (k[0] + k[1].weight, k[0], k[1].sort_key()))

    def __getstate__(self):
        state = self.__dict__.copy()
        state.pop('_lock', None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()


@dataclass
class LambdaSeries:
    """Lambda-adic adjoint value: coefficient of Lambda^{weight + b} for b = 0, 1, ..."""
    index: CompositionIndex
    coefficients: List[PAdic]
    lambda_cutoff: int

    def coefficient(self, degree: int) -> Optional[PAdic]:
        b = degree - self.index.weight
        if 0 <= b < len(self.coefficients):
            return self.coefficients[b]
        return None


# ----------------------------------------------------------------------
# Cache records
# ----------------------------------------------------------------------

@dataclass
class CacheRecord:
    """One persisted p-adic value; serialised as a '|'-separated line."""
    kind: RecordKind
    prime: int
    alpha: int
    index: str
    b: Optional[int]
    rel_precision: int
    valuation: Optional[int]
    digits: List[int]
    format_version: int = CACHE_FORMAT_VERSION
    abs_precision: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.kind, RecordKind):
            self.kind = RecordKind(self.kind)
        if self.kind is RecordKind.ADJOINT and self.b is None:
            raise ValueError("adjoint records need b")
        if any(not 0 <= d < self.prime for d in self.digits):
            raise ValueError("digits must be base-p")

    @property
    def key(self) -> Tuple[str, int, int, str, Optional[int]]:
        """Lookup key; rel_precision is left out so lookups pick the best record."""
        return (self.kind.value, self.prime, self.alpha, self.index, self.b)

    @classmethod
    def from_padic(cls, kind: RecordKind, alpha: int, index: CompositionIndex,
                   value: PAdic, b: Optional[int] = None) -> 'CacheRecord':
        if value.precision is None:
            raise ValueError("exact values are not cached")
        if value.valuation is None:
            return cls(kind, value.prime, alpha, str(index), b, 0, None, [],
                       abs_precision=value.precision)
        return cls(kind, value.prime, alpha, str(index), b, value.relative_precision,
                   value.valuation, value.digits())

    def to_padic(self) -> PAdic:
        if self.valuation is None:
            return PAdic.zero(self.prime, self.abs_precision)
        return PAdic.from_digits(self.prime, self.valuation, self.digits,
                                 self.valuation + self.rel_precision)

    def absolute_precision(self) -> int:
        if self.valuation is None:
            return self.abs_precision
        return self.valuation + self.rel_precision

    def to_line(self) -> str:
        fields = [
            f"v{self.format_version}",
            self.kind.value,
            str(self.prime),
            str(self.alpha),
            self.index,
            "" if self.b is None else str(self.b),
            str(self.rel_precision),
            "inf" if self.valuation is None else str(self.valuation),
            ",".join(str(d) for d in self.digits),
            "" if self.valuation is not None else str(self.abs_precision),
        ]
        return "|".join(fields)

    @classmethod
    def from_line(cls, line: str) -> 'CacheRecord':
        parts = line.rstrip("\n").split("|")
        if not parts or parts[0] != f"v{CACHE_FORMAT_VERSION}":
            raise CorruptRecordError(f"unknown record version in {line!r}")
        if len(parts) != 10:
            raise CorruptRecordError(f"expected 10 fields, got {len(parts)}")
        try:
            _, kind, prime, alpha, index, b, rel, val, digits, zero_prec = parts
            CompositionIndex.parse(index)
            return cls(
                kind=RecordKind(kind),
                prime=int(prime),
                alpha=int(alpha),
                index=index,
                b=int(b) if b else None,
                rel_precision=int(rel),
                valuation=None if val == "inf" else int(val),
                digits=[int(d) for d in digits.split(",")] if digits else [],
                abs_precision=int(zero_prec) if zero_prec else None,
            )
        except ValueError as exc:
            raise CorruptRecordError(f"malformed record {line!r}: {exc}") from exc


# ----------------------------------------------------------------------
# Relations harness
# ----------------------------------------------------------------------

@dataclass
class IdentityCheck:
    """
    An identity to verify, described as data.

    check_type names a validator routine; terms, when given, is an explicit
    plan: a list of (coefficient, atoms) whose atom products are summed.
    Atoms are tuples such as ('har', p, alpha, '2,1'),
    ('adjoint', p, alpha, b, '2,1') or ('b_coeff', (l_r, ..., l_1), b).
    """
    name: str
    check_type: str
    params: Dict[str, Any] = field(default_factory=dict)
    terms: Optional[List[Tuple[Fraction, Tuple[tuple, ...]]]] = None
    threshold: Optional[int] = None
    informational: bool = False

    def __post_init__(self):
        if not self.name:
            raise ValueError("check name cannot be empty")


@dataclass
class Report:
    """Outcome of one identity check."""
    name: str
    params: Dict[str, Any]
    status: CheckStatus
    defect_valuation: Optional[int] = None
    exact_zero: bool = False
    threshold: Optional[int] = None
    millis: int = 0
    message: str = ""
    informational: bool = False
    details: Dict[str, Any] = field(default_factory=dict)
    config_hash: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'name': self.name,
            'params': self.params,
            'defect_valuation': "exact zero" if self.exact_zero else self.defect_valuation,
            'threshold': self.threshold,
            'pass': self.passed,
            'status': self.status.value,
            'millis': self.millis,
        }
        if self.message:
            data['message'] = self.message
        if self.informational:
            data['informational'] = True
        if self.details:
            data['details'] = self.details
        if self.config_hash:
            data['config_hash'] = self.config_hash
        return data


# ----------------------------------------------------------------------
# Run configuration
# ----------------------------------------------------------------------

@dataclass
class RunConfig:
    """
    Configuration for a CLI run.

    Resolved from defaults, a JSON file, HARMFROB_* environment variables and
    flags, in that order of precedence.
    """
    primes: List[int] = field(default_factory=lambda: [5, 7])
    alphas: List[int] = field(default_factory=lambda: [1])
    weight_cutoff: int = 8
    depth_cutoff: Optional[int] = None
    precision: int = 8
    cache_dir: Optional[str] = None
    output_format: OutputFormat = OutputFormat.TEXT
    seed: int = 0
    max_workers: int = 4
    tail_margin: int = 2
    use_cache: bool = True
    config_version: str = "1.0"

    def __post_init__(self):
        """Validate configuration after initialization."""
        self._validate()

    def _validate(self):
        if self.precision < 1:
            raise ValueError("precision must be at least 1")
        if self.weight_cutoff < 1:
            raise ValueError("weight_cutoff must be positive")
        if self.depth_cutoff is not None and self.depth_cutoff < 1:
            raise ValueError("depth_cutoff must be positive")
        if any(a < 1 for a in self.alphas):
            raise ValueError("alpha values must be positive")
        if any(p < 2 for p in self.primes):
            raise ValueError("primes must be at least 2")
        if self.max_workers <= 0:
            raise ValueError("max_workers must be positive")
        if self.max_workers > 64:
            raise ValueError("max_workers should not exceed 64")
        if self.tail_margin < 0:
            raise ValueError("tail_margin must be nonnegative")
        if not isinstance(self.output_format, OutputFormat):
            try:
                self.output_format = OutputFormat(self.output_format)
            except ValueError:
                raise ValueError(
                    f"Invalid output format: {self.output_format}. "
                    f"Must be one of {[f.value for f in OutputFormat]}"
                )

    def require_weight(self, weight: int) -> None:
        """Check that the weight cutoff can hold a requested weight."""
        if weight > self.weight_cutoff:
            raise ValueError(f"weight {weight} exceeds weight_cutoff {self.weight_cutoff}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary for serialization."""
        config_dict = asdict(self)
        config_dict['output_format'] = self.output_format.value
        return config_dict

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> 'RunConfig':
        """Create configuration from dictionary, ignoring unknown keys."""
        known = {k: v for k, v in config_dict.items() if k in cls.__dataclass_fields__}
        if 'output_format' in known and isinstance(known['output_format'], str):
            known['output_format'] = OutputFormat(known['output_format'])
        return cls(**known)

    def get_config_hash(self) -> str:
        """Generate a hash for this configuration."""
        config_string = (
            f"{self.primes}_{self.alphas}_{self.weight_cutoff}_{self.depth_cutoff}_"
            f"{self.precision}_{self.seed}_{self.tail_margin}_{self.config_version}"
        )
        return hashlib.sha256(config_string.encode()).hexdigest()[:16]
