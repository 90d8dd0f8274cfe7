import csv
import json
import logging
import os
import tempfile
import unittest

from sandcare import sandctl, settings
from sandcare.commands import EXIT_FAILED, EXIT_INVALID


class SettingsTest(unittest.TestCase):
    _names = ('LOG_LEVEL', 'LOG_PATH', 'CRITICAL_MARGIN', 'OUTPUT_PATH', 'COLOR_BAND_EDGES')

    def setUp(self):
        self.saved = {name: getattr(settings, name) for name in self._names}

    def tearDown(self):
        for name, value in self.saved.items():
            setattr(settings, name, value)

        settings.config_file = None

    def _load(self, text, *extra):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'sandcare.conf')
            with open(path, 'w') as f:
                f.write(text)

            sandctl.load_settings(['sandctl', 'run', '-c', path] + list(extra))
            return d

    def test_values(self):
        directory = self._load(
            '# comment\n'
            'log-level warning\n'
            'critical_margin 3\n'
            'output_path none\n'
            'color_band_edges 2,4,6,7\n'
        )
        self.assertEqual(logging.WARNING, settings.LOG_LEVEL)
        self.assertEqual(3, settings.CRITICAL_MARGIN)
        self.assertIsNone(settings.OUTPUT_PATH)
        self.assertEqual('2,4,6,7', settings.COLOR_BAND_EDGES)
        self.assertEqual(directory, settings.LOG_PATH)

    def test_config_file_recorded(self):
        self.assertIsNone(settings.config_file)
        directory = self._load('log_level info\n')
        self.assertEqual(os.path.join(directory, 'sandcare.conf'), settings.config_file)

    def test_explicit_log_path(self):
        self._load('log_path /var/log/sandcare\n')
        self.assertEqual('/var/log/sandcare', settings.LOG_PATH)

    def test_debug_flag(self):
        self._load('log_level error\n', '-d')
        self.assertEqual(logging.DEBUG, settings.LOG_LEVEL)

    def test_invalid_number(self):
        with self.assertRaises(SystemExit):
            self._load('critical_margin many\n')


class CommandTest(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def _path(self, name):
        return os.path.join(self.dir.name, name)

    def test_run_csv(self):
        path = self._path('iterated.csv')
        sandctl.main(
            ['sandctl', 'run', '--scenario', 'iterated_hub', '--format', 'csv', '--out', path]
        )
        with open(path) as f:
            rows = list(csv.DictReader(f))

        self.assertEqual(['1', '2', '3', '4'], [r['step'] for r in rows])
        self.assertEqual({'standard'}, {r['strategy'] for r in rows})

    def test_compare_report(self):
        path = self._path('compare.json')
        sandctl.main(
            [
                'sandctl',
                'compare',
                '--scenario',
                'central_outbreak',
                '--format',
                'report',
                '--out',
                path,
            ]
        )
        with open(path) as f:
            doc = json.load(f)

        self.assertEqual('srh', doc['preferred'])
        self.assertEqual(['4.4', '5.9'], [r['F_decimal'] for r in doc['rows']])

    def test_render(self):
        path = self._path('grid.ppm')
        sandctl.main(
            [
                'sandctl',
                'render',
                '--scenario',
                'two_topplings',
                '--state',
                'final',
                '--out',
                path,
            ]
        )
        with open(path, 'rb') as f:
            self.assertTrue(f.read().startswith(b'P6\n5 5\n255\n'))

    def test_command_module_names(self):
        from sandcare.commands import render

        self.assertEqual('sandcare.commands.render', render.__name__)
        self.assertTrue(callable(render.main))

    def test_verify(self):
        path = self._path('verify.txt')
        sandctl.main(['sandctl', 'verify', '--out', path])
        with open(path) as f:
            self.assertTrue(f.read().rstrip().endswith('checks passed'))

    def test_missing_scenario(self):
        with self.assertRaises(SystemExit) as cm:
            sandctl.main(['sandctl', 'run', '--scenario', self._path('missing.json')])

        self.assertEqual(EXIT_INVALID, cm.exception.code)

    def test_invalid_scenario(self):
        path = self._path('bad.json')
        with open(path, 'w') as f:
            f.write('{"network": {"grid": {"n": 4, "hub": true}}, "ground_state": []}')

        with self.assertRaises(SystemExit) as cm:
            sandctl.main(['sandctl', 'stabilize', '--scenario', path])

        self.assertEqual(EXIT_INVALID, cm.exception.code)

    def test_zero_generator_weights(self):
        path = self._path('weights.json')
        with open(path, 'w') as f:
            json.dump(
                {
                    'network': {'grid': {'n': 3}},
                    'ground_state': [0] * 9,
                    'inflow': {'generator': {'per_step': 2, 'sites': [1, 2], 'weights': [0, 0]}},
                },
                f,
            )

        with self.assertRaises(SystemExit) as cm:
            sandctl.main(['sandctl', 'run', '--scenario', path])

        self.assertEqual(EXIT_INVALID, cm.exception.code)

    def test_failed_run(self):
        with self.assertRaises(SystemExit) as cm:
            sandctl.main(
                ['sandctl', 'compare', '--scenario', 'two_topplings', '--strategy', 'srh']
            )

        self.assertEqual(EXIT_FAILED, cm.exception.code)

    def test_unknown_command(self):
        with self.assertRaises(SystemExit) as cm:
            sandctl.main(['sandctl', 'triage'])

        self.assertEqual(2, cm.exception.code)


if __name__ == '__main__':
    unittest.main()
