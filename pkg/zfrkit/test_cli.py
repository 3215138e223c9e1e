import io
import json
import os
import tempfile
import unittest
from unittest import mock

from .cli import (RunConfig, _parser, load_config, main, run,
                  thread_count)
from .event import CheckDispatcher
from .numerics import DomainError, SlackMode
from .suites import SUITE_ALIASES
from .trigpoly import PUBLISHED_PARAMS

CHEAP_SUITES = ('positivity', 'sym_power')


class RunConfigTest(unittest.TestCase):
    def test_defaults(self):
        config = RunConfig()
        self.assertEqual(config.poly, PUBLISHED_PARAMS)
        self.assertEqual(config.sweep_points, 10 ** 5)
        self.assertIn('theorem', config.suites)
        self.assertEqual(list(config.suites), sorted(config.suites))

    def test_suites_normalized(self):
        config = RunConfig(suites=('poly', 'digamma', 'poly'))
        self.assertEqual(config.suites, ('digamma', 'poly'))

    def test_aliases(self):
        config = RunConfig(suites=('lemma31', 'pair_difference', 'prop41',
                                   'section6'))
        self.assertEqual(config.suites,
                         ('large_t', 'pair_difference', 'positivity'))
        self.assertEqual(RunConfig.from_dict({'suites': ['lemma21']}).suites,
                         ('sym_power',))

    def test_invalid(self):
        for kwargs in ({'sweep_points': 999}, {'prime_cutoff': 100},
                       {'ap_prime_max': 2}, {'output_format': 'xml'},
                       {'suites': ()}, {'suites': ('poly', 'nope')}):
            with self.assertRaises(DomainError, msg=kwargs):
                RunConfig(**kwargs)

    def test_from_dict(self):
        config = RunConfig.from_dict({
            'poly': {'a': 1.0},
            'tolerance': {'abs_tol': 1e-12, 'slack_mode': 'strict'},
            'suites': ['poly'],
            'sweep_points': 2000,
        })
        self.assertEqual(config.poly,
                         PUBLISHED_PARAMS._replace(a=1.0))
        self.assertEqual(config.tolerance.slack_mode, SlackMode.STRICT)
        self.assertEqual(config.tolerance.abs_tol, 1e-12)
        self.assertEqual(config.suites, ('poly',))
        self.assertEqual(config.sweep_points, 2000)

    def test_from_dict_errors(self):
        for data in ({'colour': 'red'}, {'poly': {'c': 1.0}},
                     {'tolerance': {'abs_tol': 1.0}},
                     {'tolerance': {'slack_mode': 'loud'}},
                     {'tolerance': {'slack': 0.1}},
                     {'sweep_points': True}, {'sweep_seed': 1.5}):
            with self.assertRaises(DomainError, msg=data):
                RunConfig.from_dict(data)


class LoadConfigTest(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()
        self.addCleanup(self.dir.cleanup)

    def _write(self, text):
        path = os.path.join(self.dir.name, 'config.json')
        with open(path, 'w', encoding='utf-8') as stream:
            stream.write(text)
        return path

    def test_load(self):
        path = self._write('{"sweep_seed": 5, "output_format": "csv"}')
        config = load_config(path)
        self.assertEqual(config.sweep_seed, 5)
        self.assertEqual(config.output_format, 'csv')

    def test_bad_documents(self):
        for text in ('{"sweep_seed": ', '[1, 2]'):
            with self.assertRaises(DomainError):
                load_config(self._write(text))

    def test_missing(self):
        with self.assertRaises(OSError):
            load_config(os.path.join(self.dir.name, 'absent.json'))


class ThreadCountTest(unittest.TestCase):
    def test_unset(self):
        with mock.patch.dict(os.environ):
            os.environ.pop('THREADS', None)
            self.assertEqual(thread_count(), os.cpu_count() or 1)

    def test_set(self):
        with mock.patch.dict(os.environ, {'THREADS': '4'}):
            self.assertEqual(thread_count(), 4)
        with mock.patch.dict(os.environ, {'THREADS': '0'}):
            self.assertEqual(thread_count(), 1)

    def test_invalid(self):
        with mock.patch.dict(os.environ, {'THREADS': 'many'}):
            with self.assertLogs('zfrkit.cli', level='WARNING'):
                self.assertEqual(thread_count(), os.cpu_count() or 1)


class RunTest(unittest.TestCase):
    def setUp(self):
        self.config = RunConfig(suites=CHEAP_SUITES, sweep_points=1000,
                                fixed_clock=True)

    def test_run(self):
        dispatcher = CheckDispatcher()
        report = run(self.config, dispatcher)
        self.assertTrue(report.passed)
        self.assertEqual(sorted(report.suites), list(CHEAP_SUITES))
        self.assertEqual(
            [r.suite for r in report.records],
            sorted(r.suite for r in report.records))
        self.assertTrue(all(not queue
                            for queue in dispatcher._handlers.values()))

    def test_deterministic_across_threads(self):
        with mock.patch.dict(os.environ, {'THREADS': '1'}):
            first = json.dumps(run(self.config).to_dict(), sort_keys=True)
        with mock.patch.dict(os.environ, {'THREADS': '2'}):
            second = json.dumps(run(self.config).to_dict(), sort_keys=True)
        self.assertEqual(first, second)

    def test_seed_changes_sweeps(self):
        other = run(RunConfig(suites=('positivity',), sweep_points=1000,
                              sweep_seed=1, fixed_clock=True))
        self.assertEqual(other.fingerprint['seed'], 1)
        self.assertTrue(other.passed)


class MainTest(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()
        self.addCleanup(self.dir.cleanup)
        self.out = os.path.join(self.dir.name, 'report.json')

    def _args(self, *extra):
        return ['--suite', 'positivity', '--points', '1000', '--fixed-clock',
                '-q'] + list(extra)

    def test_success(self):
        ledger = os.path.join(self.dir.name, 'ledger.jsonl')
        self.assertEqual(main(self._args('--out', self.out,
                                         '--ledger', ledger)), 0)
        with open(self.out, encoding='utf-8') as stream:
            data = json.load(stream)
        self.assertTrue(data['passed'])
        self.assertEqual(data['fingerprint']['timestamp'],
                         '1970-01-01T00:00:00+00:00')
        with open(ledger, encoding='utf-8') as stream:
            self.assertGreater(len(stream.readlines()), 30)

    def test_text_format(self):
        out = os.path.join(self.dir.name, 'report.txt')
        self.assertEqual(main(self._args('--out', out, '--format', 'text')),
                         0)
        with open(out, encoding='utf-8') as stream:
            self.assertEqual(stream.read().splitlines()[-1], 'PASS')

    def test_failing_run(self):
        failing = mock.Mock(passed=False)
        with mock.patch('zfrkit.cli.run', return_value=failing), \
                mock.patch('zfrkit.cli.write_report') as write:
            self.assertEqual(main(self._args('--out', self.out)), 1)
        write.assert_called_once_with(failing, 'json', self.out)

    def test_bad_config(self):
        self.assertEqual(
            main(self._args('--config',
                            os.path.join(self.dir.name, 'absent.json'))), 1)
        self.assertEqual(main(['--points', '10', '-q']), 1)

    def test_unwritable_output(self):
        out = os.path.join(self.dir.name, 'missing', 'report.json')
        self.assertEqual(main(self._args('--out', out)), 1)

    def test_alias_suite(self):
        outputs = []
        for name in ('first.json', 'second.json'):
            out = os.path.join(self.dir.name, name)
            self.assertEqual(main(['--suite', 'lemma31', '--points', '1000',
                                   '--fixed-clock', '-q', '--out', out]), 0)
            with open(out, encoding='utf-8') as stream:
                outputs.append(stream.read())
        self.assertEqual(outputs[0], outputs[1])
        data = json.loads(outputs[0])
        self.assertEqual([s['name'] for s in data['suites']],
                         ['pair_difference'])

    def test_every_alias_is_accepted(self):
        for name in SUITE_ALIASES:
            args = _parser().parse_args(['--suite', name])
            self.assertEqual(args.suite, [name])

    def test_unknown_suite(self):
        with mock.patch('sys.stderr', new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as context:
                main(['--suite', 'nope'])
        self.assertEqual(context.exception.code, 2)


if __name__ == '__main__':
    unittest.main()
