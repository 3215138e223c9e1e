"""Check records, the report collector and report writers."""

import csv
import dataclasses
import datetime
import json
import logging
import math
import platform
import sys
from typing import Any, Dict, List, NamedTuple, Optional, TextIO

import numpy as np

from . import __version__
from .jbounds import LITERATURE_CONSTANTS, LedgerEntry, defined_cases, jbound
from .numerics import Verdict
from .steckin import KAPPA, PHI

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('suite', 'check_id', 'computed', 'expected', 'tolerance',
               'margin', 'verdict', 'citation')

FIXED_TIMESTAMP = '1970-01-01T00:00:00+00:00'


def _published_constants():
    entries = [
        LedgerEntry('kappa', KAPPA, 'closed form 1 - 1/sqrt(5)'),
        LedgerEntry('phi', PHI, 'closed form (1 + sqrt(5))/2'),
        LedgerEntry('triple_floor', -2.2473,
                    'lower bound of the triple-height reflected difference '
                    'counted twice, 2(phi/sqrt5 + 2/5) rounded up'),
        LedgerEntry('zeta_prime_sum', -0.19197,
                    'proof of the j_0 bound for sigma < phi: '
                    '-(1/sqrt5) sum_{p <= 10^4} log p/(p^sigma1 - 1), '
                    'largest at sigma = phi'),
        LedgerEntry('zeta_pole_error', -0.601655,
                    'proof of the j_0 bound for sigma < phi: error constant '
                    'of the zeta pole term'),
        LedgerEntry('poly_a', 1.5315, 'optimized radius parameter a'),
        LedgerEntry('poly_b', 0.374949, 'optimized radius parameter b'),
        LedgerEntry('large_t_error_sum', -105.9932431,
                    'weighted sum of error constants for |t| >= 1'),
        LedgerEntry('mid_t_small_primes', 37.5815,
                    'upper bound of A_2 log 2 + A_3 log 3 near sigma = 1'),
        LedgerEntry('large_t_radius', 0.1175, 'optimal radius for |t| >= 1'),
        LedgerEntry('large_t_constant', 16.7053,
                    'zero-free region constant for |t| >= 1'),
        LedgerEntry('tiny_t_gamma', 0.30992,
                    'height cut |t| <= gamma/log(kN) of the small-t regime'),
        LedgerEntry('tiny_t_r1', 0.675015, 'radius of the small-t argument'),
        LedgerEntry('mid_t_delta', 1.62622,
                    'absorption constant of the mid-t regime'),
        LedgerEntry('mid_t_constant', 16.9309,
                    'zero-free region constant for gamma/log(kN) < |t| < 1'),
        LedgerEntry('baseline_constant', 445.994,
                    'earlier constant 64/(2(2 - sqrt3)^2), rounded up'),
    ]
    for n, mult, regime in defined_cases():
        entries.append(LedgerEntry(
            'j{}_{}_{}'.format(n, mult, regime.value),
            jbound(n, mult, regime).error_const,
            'error constant of the j_{} bound at height {}t, {}'.format(
                n, mult, regime.value)))
    return tuple(entries)


PUBLISHED_CONSTANTS = _published_constants()


class CheckRecord(NamedTuple):
    """One computed-vs-expected row.

    Informational rows are reported but never affect the exit status.
    """
    suite: str
    check_id: str
    computed: Any
    expected: Any
    tolerance: Optional[float]
    margin: Optional[float]
    passed: bool
    citation: str
    informational: bool = False

    @property
    def verdict(self) -> str:
        if self.informational:
            return 'info'
        return 'pass' if self.passed else 'fail'

    @classmethod
    def from_verdict(cls, suite: str, check_id: str, verdict: Verdict,
                     citation: str, computed=None, expected=None
                     ) -> 'CheckRecord':
        """Builds a row from a `Verdict` of the check computed <= expected,
        or of an explicit computed/expected pair."""
        return cls(suite, check_id,
                   verdict.lhs if computed is None else computed,
                   verdict.rhs if expected is None else expected,
                   verdict.tolerance, verdict.margin, verdict.passed, citation)


@dataclasses.dataclass
class SuiteSummary(object):
    name: str
    passed: int = 0
    failed: int = 0
    runtime: float = 0.0


@dataclasses.dataclass
class Report(object):
    suites: Dict[str, SuiteSummary]
    records: List[CheckRecord]
    ledger: List[LedgerEntry]
    fingerprint: Dict[str, Any]

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records
                   if not record.informational)

    def to_dict(self) -> dict:
        return {
            'fingerprint': self.fingerprint,
            'passed': self.passed,
            'suites': [dataclasses.asdict(self.suites[name])
                       for name in sorted(self.suites)],
            'records': [dict(_row(record), informational=record.informational)
                        for record in self.records],
            'ledger': [entry._asdict() for entry in self.ledger],
        }


class ReportCollector(object):
    """Listener that gathers check events into a `Report`.

    Records are kept per suite, so the merged report does not depend on the
    order in which concurrent suites finish.
    """

    def __init__(self, fixed_clock: bool = False):
        self.fixed_clock = fixed_clock
        self._records = {}
        self._summaries = {}

    def on_suite_start(self, suite):
        self._records.setdefault(suite, [])
        self._summaries[suite] = SuiteSummary(suite)

    def on_check(self, record):
        self._records.setdefault(record.suite, []).append(record)

    def on_suite_end(self, suite, passed, failed, runtime):
        self._summaries[suite] = SuiteSummary(
            suite, passed, failed, 0.0 if self.fixed_clock else runtime)

    def build(self, seed: int) -> Report:
        records = []
        for suite in sorted(self._records):
            records.extend(self._records[suite])
        return Report(suites=dict(self._summaries), records=records,
                      ledger=list(LITERATURE_CONSTANTS + PUBLISHED_CONSTANTS),
                      fingerprint=environment_fingerprint(
                          seed, self.fixed_clock))


def environment_fingerprint(seed: int, fixed_clock: bool = False) -> dict:
    if fixed_clock:
        timestamp = FIXED_TIMESTAMP
    else:
        timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return {
        'build': 'zfrkit {}'.format(__version__),
        'python': platform.python_version(),
        'numpy': np.__version__,
        'seed': seed,
        'timestamp': timestamp,
    }


def _plain(value):
    """JSON- and CSV-friendly form of a computed value."""
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, complex):
        return [_plain(value.real), _plain(value.imag)]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _row(record: CheckRecord) -> dict:
    return {
        'suite': record.suite,
        'check_id': record.check_id,
        'computed': _plain(record.computed),
        'expected': _plain(record.expected),
        'tolerance': _plain(record.tolerance),
        'margin': _plain(record.margin),
        'verdict': record.verdict,
        'citation': record.citation,
    }


def write_json(report: Report, stream: TextIO):
    json.dump(report.to_dict(), stream, indent=2, sort_keys=True)
    stream.write('\n')


def write_csv(report: Report, stream: TextIO):
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS,
                            lineterminator='\n')
    writer.writeheader()
    for record in report.records:
        row = _row(record)
        for key in ('computed', 'expected'):
            if isinstance(row[key], list):
                row[key] = json.dumps(row[key])
        writer.writerow(row)


def write_text(report: Report, stream: TextIO):
    for name in sorted(report.suites):
        summary = report.suites[name]
        stream.write('{}: {} passed, {} failed ({:.2f}s)\n'.format(
            name, summary.passed, summary.failed, summary.runtime))
        for record in report.records:
            if record.suite != name:
                continue
            stream.write('  [{}] {}: computed {}, expected {}, margin {}\n'
                         .format(record.verdict, record.check_id,
                                 _plain(record.computed),
                                 _plain(record.expected),
                                 _plain(record.margin)))
    stream.write('{}\n'.format('PASS' if report.passed else 'FAIL'))


WRITERS = {'json': write_json, 'csv': write_csv, 'text': write_text}


def write_report(report: Report, output_format: str, path: str):
    """Writes the report to `path`, or to stdout for '-'.

    Raises:
        OSError: if the path cannot be written.
    """
    writer = WRITERS[output_format]
    if path == '-':
        writer(report, sys.stdout)
        return
    with open(path, 'w', encoding='utf-8', newline='') as stream:
        writer(report, stream)
    logger.info('Wrote %s report to %s', output_format, path)


def emit_constant_ledger(report: Report, path: str):
    """Writes every ledger entry as one JSON object per line."""
    with open(path, 'w', encoding='utf-8') as stream:
        for entry in report.ledger:
            stream.write(json.dumps(entry._asdict(), sort_keys=True))
            stream.write('\n')
    logger.info('Wrote %d ledger entries to %s', len(report.ledger), path)
