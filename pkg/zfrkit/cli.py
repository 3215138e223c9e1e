"""Command line entry point: configuration, suite orchestration, reports.

    zfrkit --suite theorem --format text
    zfrkit --config run.json --out report.json --fixed-clock

The exit status is 0 when every gated check passes and 1 otherwise.
"""

import argparse
import concurrent.futures
import dataclasses
import json
import logging
import os
import sys
from typing import Optional, Tuple

from .event import CheckDispatcher, LoggingListener
from .numerics import DomainError, TolerancePolicy
from .report import (WRITERS, Report, ReportCollector, emit_constant_ledger,
                     write_report)
from .suites import (SUITE_ALIASES, SUITES, canonical_suite, run_suite,
                     suite_names)
from .trigpoly import PUBLISHED_PARAMS, PolyParams

logger = logging.getLogger(__name__)

MIN_SWEEP_POINTS = 10 ** 3
MIN_PRIME_CUTOFF = 10 ** 4


def _all_suites() -> Tuple[str, ...]:
    return tuple(sorted(SUITES))


@dataclasses.dataclass(frozen=True)
class RunConfig(object):
    """Everything that determines a run. Equal configs give equal reports,
    up to timestamps and runtimes, which `fixed_clock` pins."""
    poly: PolyParams = PUBLISHED_PARAMS
    prime_cutoff: int = 10 ** 4
    sweep_seed: int = 20240601
    sweep_points: int = 10 ** 5
    tolerance: TolerancePolicy = TolerancePolicy()
    suites: Tuple[str, ...] = dataclasses.field(default_factory=_all_suites)
    output_path: str = '-'
    output_format: str = 'json'
    ap_prime_max: int = 10 ** 6
    fixed_clock: bool = False
    ledger_path: Optional[str] = None

    def __post_init__(self):
        if self.sweep_points < MIN_SWEEP_POINTS:
            raise DomainError(
                'sweep_points must be at least {}, got {}'.format(
                    MIN_SWEEP_POINTS, self.sweep_points))
        if self.prime_cutoff < MIN_PRIME_CUTOFF:
            raise DomainError(
                'prime_cutoff must be at least {}, got {}'.format(
                    MIN_PRIME_CUTOFF, self.prime_cutoff))
        if self.ap_prime_max < 3:
            raise DomainError('ap_prime_max must be at least 3, got {}'.format(
                self.ap_prime_max))
        if self.output_format not in WRITERS:
            raise DomainError('Unknown output format {!r}, expected one of {}'
                              .format(self.output_format,
                                      ', '.join(sorted(WRITERS))))
        if not self.suites:
            raise DomainError('No suites selected')
        unknown = [name for name in self.suites
                   if SUITE_ALIASES.get(name, name) not in SUITES]
        if unknown:
            raise DomainError('Unknown suites: {}. Known: {}'.format(
                ', '.join(unknown), ', '.join(suite_names())))
        # Normalized so that neither aliases nor the selection order matter.
        object.__setattr__(self, 'suites', tuple(sorted(
            {canonical_suite(name) for name in self.suites})))

    @classmethod
    def from_dict(cls, data: dict) -> 'RunConfig':
        """Builds a config from its JSON form. Missing keys take defaults.

        Raises:
            DomainError: for unknown keys, unknown suites or values out of
                range.
        """
        fields = {field.name for field in dataclasses.fields(cls)}
        unknown = sorted(set(data) - fields)
        if unknown:
            raise DomainError('Unknown config keys: {}'.format(
                ', '.join(unknown)))
        kwargs = dict(data)
        if 'poly' in kwargs:
            kwargs['poly'] = _poly_from_dict(kwargs['poly'])
        if 'tolerance' in kwargs:
            kwargs['tolerance'] = _tolerance_from_dict(kwargs['tolerance'])
        if 'suites' in kwargs:
            kwargs['suites'] = tuple(kwargs['suites'])
        for name in ('prime_cutoff', 'sweep_seed', 'sweep_points',
                     'ap_prime_max'):
            if name in kwargs:
                kwargs[name] = _integer(name, kwargs[name])
        return cls(**kwargs)


def _integer(name, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError('{} must be an integer, got {!r}'.format(
            name, value))
    return value


def _poly_from_dict(data: dict) -> PolyParams:
    unknown = sorted(set(data) - set(PolyParams._fields))
    if unknown:
        raise DomainError('Unknown poly keys: {}'.format(', '.join(unknown)))
    values = PUBLISHED_PARAMS._replace(**data)
    return PolyParams(*(float(v) for v in values))


def _tolerance_from_dict(data: dict) -> TolerancePolicy:
    known = {field.name for field in dataclasses.fields(TolerancePolicy)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise DomainError('Unknown tolerance keys: {}'.format(
            ', '.join(unknown)))
    try:
        return TolerancePolicy.from_dict(data)
    except ValueError as e:
        raise DomainError('Invalid tolerance: {}'.format(e)) from e


def load_config(path: str) -> RunConfig:
    """Reads a JSON config file.

    Raises:
        OSError: if the file cannot be read.
        DomainError: if the document is not a valid config.
    """
    with open(path, encoding='utf-8') as stream:
        try:
            data = json.load(stream)
        except json.JSONDecodeError as e:
            raise DomainError('{} is not valid JSON: {}'.format(
                path, e)) from e
    if not isinstance(data, dict):
        raise DomainError('{} must hold a JSON object'.format(path))
    return RunConfig.from_dict(data)


def thread_count() -> int:
    """Worker count from the THREADS variable, the CPU count if unset or
    invalid."""
    default = os.cpu_count() or 1
    value = os.environ.get('THREADS')
    if value is None:
        return default
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning('Ignoring THREADS=%r, using %d threads', value,
                       default)
        return default


def run(config: RunConfig,
        dispatcher: Optional[CheckDispatcher] = None) -> Report:
    """Runs the selected suites and collects their checks into a report.

    Suites run on a thread pool. A failing check or a raising suite does not
    stop the others.
    """
    if dispatcher is None:
        dispatcher = CheckDispatcher()
    collector = ReportCollector(fixed_clock=config.fixed_clock)
    listener = LoggingListener()
    dispatcher.push_handlers(collector, listener)
    try:
        with concurrent.futures.ThreadPoolExecutor(
                max_workers=thread_count()) as executor:
            futures = [executor.submit(run_suite, name, config, dispatcher)
                       for name in config.suites]
            for future in futures:
                future.result()
    finally:
        dispatcher.remove_handlers(collector, listener)
    report = collector.build(config.sweep_seed)
    logger.info('%d checks in %d suites, %s', len(report.records),
                len(report.suites), 'passed' if report.passed else 'FAILED')
    return report


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='zfrkit',
        description='Re-derives and checks the constants of an explicit '
                    'zero-free region for L-functions of newforms.')
    parser.add_argument('--config', metavar='PATH',
                        help='JSON config file')
    parser.add_argument('--suite', action='append', metavar='NAME',
                        choices=suite_names(),
                        help='suite to run, may be repeated (default: all)')
    parser.add_argument('--format', choices=sorted(WRITERS),
                        help='report format')
    parser.add_argument('--out', metavar='PATH',
                        help="report path, '-' for stdout")
    parser.add_argument('--seed', type=int, help='sweep seed')
    parser.add_argument('--points', type=int, help='sweep points')
    parser.add_argument('--fixed-clock', action='store_true', default=None,
                        help='zero runtimes and pin the timestamp')
    parser.add_argument('--ledger', metavar='PATH',
                        help='also write the constant ledger as JSON lines')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    parser.add_argument('-q', '--quiet', action='store_true')
    return parser


def _overrides(args) -> dict:
    flags = {
        'suites': args.suite,
        'output_format': args.format,
        'output_path': args.out,
        'sweep_seed': args.seed,
        'sweep_points': args.points,
        'fixed_clock': args.fixed_clock,
        'ledger_path': args.ledger,
    }
    return {k: v for k, v in flags.items() if v is not None}


def _log_level(args) -> int:
    if args.quiet:
        return logging.ERROR
    if args.verbose >= 2:
        return logging.DEBUG
    if args.verbose == 1:
        return logging.INFO
    return logging.WARNING


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=_log_level(args), stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        config = load_config(args.config) if args.config else RunConfig()
        config = dataclasses.replace(config, **_overrides(args))
    except (OSError, DomainError) as e:
        logger.error('Bad configuration: %s', e)
        return 1

    report = run(config)

    try:
        write_report(report, config.output_format, config.output_path)
        if config.ledger_path:
            emit_constant_ledger(report, config.ledger_path)
    except OSError as e:
        logger.error('Cannot write output: %s', e)
        return 1
    return 0 if report.passed else 1
