#!/usr/bin/env python3
"""
Command-line interface for harmonic-frobenius.

Subcommands:
    har           prime harmonic sums har_{p^alpha}(I), or exact har_m(I)
    finite-mzv    residues of p^{-weight} har_p(I) modulo p
    zeta1         depth-one p-adic zeta values
    adjoint       adjoint values (b, I) for b <= b_max
    expand-sigma  symbolic expansion of har_{p^alpha m}(I)
    verify        run an identity suite and write a JSON report
    cache-gc      compact, inspect or clear the value cache

Exit codes: 0 on success, 1 on a failed check or computation error,
2 on a usage error.
"""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

from dotenv import load_dotenv
from sympy import primerange

from harmfrob.core.adjoint import AdjointEngine
from harmfrob.core.harmonic.harmonic_engine import HarmonicEngine
from harmfrob.core.power_sums import expand_sigma
from harmfrob.core.processing import ParallelProcessor
from harmfrob.core.validation import (
    SUITES,
    RelationValidator,
    build_suite,
    override_params,
)
from harmfrob.core.words.word import CompositionIndex
from harmfrob.errors import ConfigError, HarmFrobError
from harmfrob.models import OutputFormat, Report, RunConfig
from harmfrob.storage import CacheManager
from harmfrob.utils.config_utils import resolve_config
from harmfrob.utils.format_utils import (
    expansion_to_dict,
    format_expansion_text,
    format_padic,
    padic_fields,
    write_json,
    write_rows,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad arguments detected after parsing."""


def _int_list(text: str) -> List[int]:
    try:
        return [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _index(text: str) -> CompositionIndex:
    try:
        return CompositionIndex.parse(text)
    except ValueError as e:
        raise UsageError(str(e))


def _key_values(pairs: Sequence[str]) -> Dict[str, str]:
    out = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"expected KEY=VALUE, got {pair!r}")
        out[key.strip()] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=None,
                        help='JSON configuration file')
    common.add_argument('--cache-dir', type=str, default=None,
                        help='Cache directory (default: $HARMFROB_CACHE_DIR, or no cache)')
    common.add_argument('--no-cache', action='store_true',
                        help='Do not read or write the value cache')
    common.add_argument('--format', choices=[f.value for f in OutputFormat], default=None,
                        help='Output format (default: from --out suffix, then config)')
    common.add_argument('--out', type=str, default=None,
                        help='Output file (default: stdout)')
    common.add_argument('--workers', type=int, default=None,
                        help='Maximum number of parallel workers')
    common.add_argument('--seed', type=int, default=None,
                        help='Random seed for randomized checks')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', '-v', action='store_true',
                           help='Enable debug logging')
    verbosity.add_argument('--quiet', '-q', action='store_true',
                           help='Only log warnings and errors')

    parser = argparse.ArgumentParser(
        prog='harmfrob',
        description='Prime harmonic sums, adjoint p-adic multiple zeta values and their relations',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    har = sub.add_parser('har', parents=[common], help='Prime harmonic sums')
    har.add_argument('--index', required=True, help="Composition 'n_d,...,n_1'")
    har.add_argument('--p', type=_int_list, default=None, help='Primes, comma-separated')
    har.add_argument('--alpha', type=_int_list, default=None, help='Levels, comma-separated')
    har.add_argument('--prec', type=int, default=None, help='Absolute precision K')
    har.add_argument('--m', type=int, default=None,
                     help='Exact rational har_m(I) instead of p-adic values')

    finite = sub.add_parser('finite-mzv', parents=[common], help='Finite multiple zeta residues')
    finite.add_argument('--index', required=True, help="Composition 'n_d,...,n_1'")
    finite.add_argument('--pmax', type=int, required=True, help='Largest prime')
    finite.add_argument('--pmin', type=int, default=2, help='Smallest prime')

    zeta = sub.add_parser('zeta1', parents=[common], help='Depth-one p-adic zeta values')
    zeta.add_argument('--p', type=int, required=True, help='Prime')
    zeta.add_argument('--alpha', type=int, default=1, help='Level')
    zeta.add_argument('--n', type=_int_list, required=True, help='Arguments n >= 2, comma-separated')
    zeta.add_argument('--prec', type=int, default=None, help='Absolute precision K')

    adjoint = sub.add_parser('adjoint', parents=[common], help='Adjoint p-adic multiple zeta values')
    adjoint.add_argument('--index', required=True, help="Composition 'n_d,...,n_1'")
    adjoint.add_argument('--p', type=int, required=True, help='Prime')
    adjoint.add_argument('--alpha', type=int, default=1, help='Level')
    which_b = adjoint.add_mutually_exclusive_group()
    which_b.add_argument('--bmax', type=int, default=4, help='Largest b')
    which_b.add_argument('--b', type=int, default=None, help='A single b instead of 0..bmax')
    adjoint.add_argument('--weight-cutoff', type=int, default=None,
                         help='Weight cutoff N for b + weight(I) (default: from config)')
    adjoint.add_argument('--prec', type=int, default=None, help='Absolute precision K')
    adjoint.add_argument('--lambda-adic', action='store_true',
                         help='Report Lambda-adic coefficients (sign (-1)^depth)')

    sigma = sub.add_parser('expand-sigma', parents=[common], help='Symbolic expansion of har_{p^a m}')
    sigma.add_argument('--index', required=True, help="Composition 'n_d,...,n_1'")
    sigma.add_argument('--cutoff', type=int, required=True, help='Weight cutoff N')

    verify = sub.add_parser('verify', parents=[common], help='Run an identity suite')
    verify.add_argument('--suite', choices=sorted(SUITES), default='default', help='Suite name')
    verify.add_argument('--param', action='append', default=[], metavar='KEY=VALUE',
                        help='Override a parameter in every check that has it; repeatable')

    gc = sub.add_parser('cache-gc', parents=[common], help='Maintain the value cache')
    action = gc.add_mutually_exclusive_group()
    action.add_argument('--stats', action='store_true', help='Only print cache statistics')
    action.add_argument('--clear', action='store_true', help='Delete every record file')

    return parser


def configure_logging(args: argparse.Namespace) -> None:
    """Set the root log level from flags, then HARMFROB_LOG_LEVEL."""
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    else:
        level = getattr(logging, os.getenv('HARMFROB_LOG_LEVEL', 'INFO').upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(level)


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        'cache_dir': args.cache_dir,
        'output_format': args.format,
        'max_workers': args.workers,
        'seed': args.seed,
        'precision': getattr(args, 'prec', None),
    }
    primes = getattr(args, 'p', None)
    if isinstance(primes, list):
        overrides['primes'] = primes
    alphas = getattr(args, 'alpha', None)
    if isinstance(alphas, list):
        overrides['alphas'] = alphas
    if args.no_cache:
        overrides['use_cache'] = False
    return overrides


def _output_format(args: argparse.Namespace, config: RunConfig) -> OutputFormat:
    if args.format:
        return OutputFormat(args.format)
    if args.out:
        suffix = args.out.rsplit('.', 1)[-1].lower()
        if suffix in ('csv', 'json'):
            return OutputFormat(suffix)
    return config.output_format


class CommandRunner:
    """
    Executes one parsed subcommand against shared engines.
    """

    def __init__(self, config: RunConfig, args: argparse.Namespace):
        self.config = config
        self.args = args
        cache = None
        if config.use_cache and config.cache_dir:
            cache = CacheManager(config.cache_dir)
        self.cache_manager = cache
        self.harmonic = HarmonicEngine(cache)
        self.adjoint = AdjointEngine(self.harmonic, cache)
        self.output_format = _output_format(args, config)

    def _emit(self, rows: List[Dict[str, Any]], fieldnames: List[str]) -> None:
        write_rows(rows, self.output_format, self.args.out, fieldnames)

    def run_har(self) -> int:
        index = _index(self.args.index)
        if self.args.m is not None:
            value = self.harmonic.har(self.args.m, index).value
            self._emit([{'index': str(index), 'm': self.args.m, 'value': str(value)}],
                       ['index', 'm', 'value'])
            return EXIT_OK
        rows = []
        for row in self.harmonic.har_table(index, self.config.primes, self.config.alphas,
                                           self.config.precision):
            rows.append({'index': str(index), 'p': row.prime, 'alpha': row.alpha,
                         **padic_fields(row.value)})
        self._emit(rows, ['index', 'p', 'alpha', 'valuation', 'precision', 'digits'])
        return EXIT_OK

    def run_finite_mzv(self) -> int:
        index = _index(self.args.index)
        primes = list(primerange(self.args.pmin, self.args.pmax + 1))
        rows = [r.to_row() for r in self.harmonic.finite_mzv(index, primes)]
        self._emit(rows, ['index', 'p', 'residue'])
        return EXIT_OK

    def run_zeta1(self) -> int:
        rows = []
        for n in self.args.n:
            result = self.adjoint.zeta_depth1(self.args.p, self.args.alpha, n, self.config.precision)
            row = {'n': n, 'p': self.args.p, 'alpha': self.args.alpha,
                   'value': format_padic(result.value), 'truncation_l': result.truncation_l}
            row['zero_to_precision'] = result.value.is_zero()
            rows.append(row)
        self._emit(rows, ['n', 'p', 'alpha', 'value', 'truncation_l', 'zero_to_precision'])
        return EXIT_OK

    def run_adjoint(self) -> int:
        index = _index(self.args.index)
        p, alpha, precision = self.args.p, self.args.alpha, self.config.precision
        cutoff = self.args.weight_cutoff
        if cutoff is None:
            cutoff = self.config.weight_cutoff
        depth_cutoff = self.config.depth_cutoff
        if depth_cutoff is not None and index.depth > depth_cutoff:
            raise UsageError(f"depth of {index} exceeds depth_cutoff {depth_cutoff}")
        if self.args.b is not None:
            b_values = [self.args.b]
        else:
            b_values = list(range(self.args.bmax + 1))
        if max(b_values) + index.weight > cutoff:
            raise UsageError(f"b + weight exceeds weight cutoff {cutoff}")
        if self.args.lambda_adic:
            series = self.adjoint.lambda_adjoint(p, alpha, index, precision,
                                                 index.weight + max(b_values))
            values = [(b, series.coefficients[b]) for b in b_values]
        else:
            values = [(b, self.adjoint.adjoint_pmzv(p, alpha, b, index, precision,
                                                    weight_cutoff=cutoff))
                      for b in b_values]
        rows = [{'index': str(index), 'p': p, 'alpha': alpha, 'b': b, **padic_fields(value)}
                for b, value in values]
        self._emit(rows, ['index', 'p', 'alpha', 'b', 'valuation', 'precision', 'digits'])
        return EXIT_OK

    def run_expand_sigma(self) -> int:
        expansion = expand_sigma(_index(self.args.index), self.args.cutoff)
        if self.output_format is OutputFormat.JSON:
            write_json(expansion_to_dict(expansion), self.args.out)
        elif self.output_format is OutputFormat.CSV:
            rows = [term.to_dict() for term in expansion]
            for row in rows:
                row['har_pa'] = " ".join(row['har_pa'])
            self._emit(rows, ['coeff', 'm_power', 'har_m', 'har_pa'])
        else:
            text = format_expansion_text(expansion)
            if self.args.out:
                with open(self.args.out, 'w') as f:
                    f.write(text)
            else:
                sys.stdout.write(text)
        return EXIT_OK

    def run_verify(self) -> int:
        checks = build_suite(self.args.suite, self.config)
        if self.args.param:
            override_params(checks, _key_values(self.args.param))
        validator = RelationValidator(self.adjoint, self.harmonic,
                                      config_hash=self.config.get_config_hash())
        processor = ParallelProcessor(self.config.max_workers,
                                      show_progress=False if self.args.quiet else None)
        reports = processor.run_checks(checks, validator.run)
        failed = [r for r in reports if not r.passed and not r.informational]
        write_json(_report_document(self.args.suite, self.config, reports), self.args.out)
        summary = f"{len(reports) - len(failed)}/{len(reports)} checks passed"
        if failed:
            logger.warning("%s; failing: %s", summary, ", ".join(r.name for r in failed))
            return EXIT_FAILURE
        logger.info(summary)
        return EXIT_OK

    def run_cache_gc(self) -> int:
        if self.cache_manager is None:
            raise UsageError("cache-gc needs --cache-dir or HARMFROB_CACHE_DIR")
        if self.args.clear:
            self.cache_manager.clear()
        elif not self.args.stats:
            self.cache_manager.garbage_collect()
        write_json(self.cache_manager.get_cache_stats(), self.args.out)
        return EXIT_OK

    def run(self) -> int:
        handler = getattr(self, "run_" + self.args.command.replace('-', '_'))
        return handler()


def _report_document(suite: str, config: RunConfig, reports: Sequence[Report]) -> Dict[str, Any]:
    failed = [r.name for r in reports if not r.passed and not r.informational]
    return {
        'suite': suite,
        'config': config.to_dict(),
        'config_hash': config.get_config_hash(),
        'summary': {
            'total': len(reports),
            'passed': sum(1 for r in reports if r.passed),
            'failed': failed,
            'informational': sum(1 for r in reports if r.informational),
        },
        'reports': [r.to_dict() for r in reports],
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the harmfrob command."""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    configure_logging(args)

    try:
        config = resolve_config(args.config, _overrides(args))
        return CommandRunner(config, args).run()
    except (UsageError, ConfigError, ValueError) as e:
        logger.error("usage error: %s", e)
        return EXIT_USAGE
    except HarmFrobError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_FAILURE
    except KeyboardInterrupt:
        logger.info("interrupted by user")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
