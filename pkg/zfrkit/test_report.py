import csv
import io
import json
import os
import tempfile
import unittest

import numpy as np

from .numerics import leq_with_policy
from .report import (CSV_COLUMNS, FIXED_TIMESTAMP, PUBLISHED_CONSTANTS,
                     CheckRecord, ReportCollector, emit_constant_ledger,
                     environment_fingerprint, write_csv, write_json,
                     write_report, write_text)


def _record(suite, check_id, passed=True, informational=False,
            computed=1.0):
    return CheckRecord(suite, check_id, computed, 2.0, 1e-9, 1.0, passed,
                       'test', informational)


def _report(records, fixed_clock=True):
    collector = ReportCollector(fixed_clock=fixed_clock)
    for suite in sorted({record.suite for record in records}):
        collector.on_suite_start(suite)
    for record in records:
        collector.on_check(record)
    for suite in sorted({record.suite for record in records}):
        collector.on_suite_end(suite, 1, 0, 3.5)
    return collector.build(seed=7)


class CheckRecordTest(unittest.TestCase):
    def test_verdict(self):
        self.assertEqual(_record('a', 'x').verdict, 'pass')
        self.assertEqual(_record('a', 'x', passed=False).verdict, 'fail')
        self.assertEqual(
            _record('a', 'x', passed=False, informational=True).verdict,
            'info')

    def test_from_verdict(self):
        record = CheckRecord.from_verdict('poly', 'bound',
                                          leq_with_policy(1.0, 2.0), 'cite')
        self.assertEqual(record.computed, 1.0)
        self.assertEqual(record.expected, 2.0)
        self.assertEqual(record.margin, 1.0)
        self.assertTrue(record.passed)
        self.assertFalse(record.informational)

        record = CheckRecord.from_verdict('poly', 'bound',
                                          leq_with_policy(3.0, 2.0), 'cite',
                                          computed='x', expected='y')
        self.assertEqual((record.computed, record.expected), ('x', 'y'))
        self.assertFalse(record.passed)


class CollectorTest(unittest.TestCase):
    def test_records_sorted_by_suite(self):
        report = _report([_record('zeta', 'z1'), _record('alpha', 'a1'),
                          _record('zeta', 'z2'), _record('alpha', 'a2')])
        self.assertEqual([r.check_id for r in report.records],
                         ['a1', 'a2', 'z1', 'z2'])
        self.assertEqual(sorted(report.suites), ['alpha', 'zeta'])

    def test_fixed_clock(self):
        report = _report([_record('a', 'x')])
        self.assertEqual(report.suites['a'].runtime, 0.0)
        self.assertEqual(report.fingerprint['timestamp'], FIXED_TIMESTAMP)
        self.assertEqual(report.fingerprint['seed'], 7)

    def test_live_clock(self):
        report = _report([_record('a', 'x')], fixed_clock=False)
        self.assertEqual(report.suites['a'].runtime, 3.5)
        self.assertNotEqual(report.fingerprint['timestamp'], FIXED_TIMESTAMP)

    def test_passed_ignores_informational(self):
        self.assertTrue(_report([
            _record('a', 'x'),
            _record('a', 'y', passed=False, informational=True)]).passed)
        self.assertFalse(_report([
            _record('a', 'x'), _record('b', 'y', passed=False)]).passed)

    def test_ledger(self):
        report = _report([_record('a', 'x')])
        names = [entry.name for entry in report.ledger]
        self.assertEqual(len(names), len(set(names)))
        self.assertIn('principal_m0', names)
        self.assertIn('large_t_constant', names)

    def test_fingerprint(self):
        fingerprint = environment_fingerprint(3, fixed_clock=True)
        self.assertEqual(set(fingerprint),
                         {'build', 'python', 'numpy', 'seed', 'timestamp'})
        self.assertTrue(fingerprint['build'].startswith('zfrkit '))


class PublishedConstantsTest(unittest.TestCase):
    def test_values(self):
        values = {entry.name: entry.value for entry in PUBLISHED_CONSTANTS}
        self.assertEqual(values['zeta_prime_sum'], -0.19197)
        self.assertAlmostEqual(values['kappa'], 1 - 5 ** -0.5)
        self.assertEqual(values['j1_1_t_ge_1'], -0.48973)

    def test_provenance(self):
        sources = {entry.name: entry.provenance
                   for entry in PUBLISHED_CONSTANTS}
        for name in ('zeta_prime_sum', 'zeta_pole_error'):
            self.assertTrue(
                sources[name].startswith('proof of the j_0 bound'), name)


class WriterTest(unittest.TestCase):
    def setUp(self):
        self.report = _report([
            _record('poly', 'objective', computed=np.float64(0.0598)),
            _record('poly', 'root', computed=complex(1, -2)),
            _record('theorem', 'flag', passed=False, computed=float('inf')),
        ])

    def test_json(self):
        stream = io.StringIO()
        write_json(self.report, stream)
        text = stream.getvalue()
        self.assertTrue(text.endswith('}\n'))
        data = json.loads(text)
        self.assertFalse(data['passed'])
        self.assertEqual([s['name'] for s in data['suites']],
                         ['poly', 'theorem'])
        self.assertEqual(data['records'][0]['computed'], 0.0598)
        self.assertEqual(data['records'][1]['computed'], [1.0, -2.0])
        self.assertEqual(data['records'][2]['computed'], 'inf')
        self.assertEqual(data['records'][2]['verdict'], 'fail')

    def test_json_deterministic(self):
        first, second = io.StringIO(), io.StringIO()
        write_json(self.report, first)
        write_json(self.report, second)
        self.assertEqual(first.getvalue(), second.getvalue())

    def test_csv(self):
        stream = io.StringIO()
        write_csv(self.report, stream)
        stream.seek(0)
        reader = csv.DictReader(stream)
        self.assertEqual(tuple(reader.fieldnames), CSV_COLUMNS)
        rows = list(reader)
        self.assertEqual(len(rows), 3)
        self.assertEqual(json.loads(rows[1]['computed']), [1.0, -2.0])
        self.assertEqual(rows[2]['verdict'], 'fail')

    def test_text(self):
        stream = io.StringIO()
        write_text(self.report, stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], 'poly: 1 passed, 0 failed (0.00s)')
        self.assertIn('[fail] flag', lines[-2])
        self.assertEqual(lines[-1], 'FAIL')


class FileOutputTest(unittest.TestCase):
    def setUp(self):
        self.report = _report([_record('a', 'x')])
        self.dir = tempfile.TemporaryDirectory()
        self.addCleanup(self.dir.cleanup)

    def test_write_report(self):
        path = os.path.join(self.dir.name, 'report.csv')
        with self.assertLogs('zfrkit.report', level='INFO'):
            write_report(self.report, 'csv', path)
        with open(path, encoding='utf-8') as stream:
            self.assertEqual(stream.readline().strip(), ','.join(CSV_COLUMNS))

    def test_ledger(self):
        path = os.path.join(self.dir.name, 'ledger.jsonl')
        emit_constant_ledger(self.report, path)
        with open(path, encoding='utf-8') as stream:
            entries = [json.loads(line) for line in stream]
        self.assertEqual(len(entries), len(self.report.ledger))
        self.assertEqual(set(entries[0]), {'name', 'value', 'provenance'})

    def test_unwritable(self):
        path = os.path.join(self.dir.name, 'missing', 'report.json')
        with self.assertRaises(OSError):
            write_report(self.report, 'json', path)
        with self.assertRaises(OSError):
            emit_constant_ledger(self.report, path)


if __name__ == '__main__':
    unittest.main()
