# -*- coding: utf-8 -*-

"""Tests for the command line interface."""

import json
import logging
import math
import os
import traceback
import unittest

from click.testing import CliRunner

from biphoton import cli
from biphoton.io import read_csv, read_matrix_csv
from tests.constants import NumericTestCase

log = logging.getLogger(__name__)

PS = 1e-12


def _load(path):
    with open(path) as file:
        return json.load(file)


def _read_outputs(directory):
    """Read every file in a directory, dropping the wall-clock duration from JSON manifests."""
    contents = {}
    for name in sorted(os.listdir(directory)):
        with open(os.path.join(directory, name), 'rb') as file:
            data = file.read()
        if name.endswith('.json'):
            payload = json.loads(data)
            del payload['manifest']['duration']
            data = json.dumps(payload, sort_keys=True).encode('utf-8')
        contents[name] = data
    return contents


def _run_twice(test_case, args):
    """Run a command into two directories and read back both sets of outputs."""
    outputs = []
    with test_case.runner.isolated_filesystem():
        for out in ('first', 'second'):
            test_case.invoke(['--out', out] + args)
            outputs.append(_read_outputs(out))
    return outputs


class CliTestCase(NumericTestCase):
    """A test case that runs commands in a temporary directory."""

    def setUp(self):
        super().setUp()
        self.runner = CliRunner()

    def invoke(self, args, exit_code: int = 0):
        """Run the command line and check its exit code."""
        result = self.runner.invoke(cli.main, args)
        trace = ''.join(traceback.format_exception(*result.exc_info)) if result.exc_info else ''
        msg = '{}\n{}'.format(result.output, trace)
        self.assertEqual(exit_code, result.exit_code, msg=msg)
        return result


class TestSpectrum(CliTestCase):
    """Test the spectrum command."""

    def test_degenerate(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', 'spectrum'])
            summary = _load(os.path.join('out', 'spectrum_summary.json'))

            self.assert_relative(0.658e-9, summary['coincidence_fwhm'], 0.02)
            self.assert_relative(195e-9, summary['single_fwhm'], 0.03)
            self.assert_relative(28.57, summary['pump_to_coincidence'], 0.03)
            self.assertEqual('m', summary['units'])
            self.assertEqual(
                [
                    'spectrum_coincidence.csv',
                    'spectrum_pump.csv',
                    'spectrum_single.csv',
                    'spectrum_single_analytic.csv',
                    'spectrum_summary.json',
                ],
                summary['manifest']['outputs'],
            )

            meta, frame = read_csv(os.path.join('out', 'spectrum_coincidence.csv'))
            self.assertEqual('lambda1', meta['x'])
            self.assertEqual(summary['coincidence_fwhm'], float(meta['fwhm']))
            self.assertIn('lambda1', frame.columns)

    def test_detuned(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', 'spectrum', '--lambda2', '870nm'])
            summary = _load(os.path.join('out', 'spectrum_summary.json'))
            self.assertAlmostEqual(870e-9, summary['lambda2'], delta=1e-20)
            self.assertLess(summary['nu2'], 0)
            self.assertAlmostEqual(740.4e-9, summary['coincidence_peak'], delta=10e-9)

    def test_missing_config(self):
        """Test that a missing configuration exits before anything is written."""
        with self.runner.isolated_filesystem():
            result = self.invoke(['--config', 'nope.cfg', '--out', 'out', 'spectrum'], exit_code=cli.EXIT_CONFIG)
            self.assertIn('configuration failed', result.output)
            self.assertFalse(os.path.exists('out'))

    def test_bad_wavelength(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', 'spectrum', '--lambda2', '870ps'], exit_code=cli.EXIT_CONFIG)
            self.assertFalse(os.path.exists('out'))

    def test_tolerance(self):
        """Test that the tolerance reaches the numeric single-particle spectrum and is checked."""
        result = self.invoke(['--help'])
        self.assertIn('numeric single-particle spectrum', ' '.join(result.output.split()))
        with self.runner.isolated_filesystem():
            self.invoke(['--tol', '0', '--out', 'out', 'spectrum'], exit_code=cli.EXIT_CONFIG)
            self.assertFalse(os.path.exists('out'))
            self.invoke(['--tol', '1e-6', '--out', 'out', 'spectrum'])
            summary = _load(os.path.join('out', 'spectrum_summary.json'))
            self.assert_relative(195e-9, summary['single_fwhm'], 0.03)


class TestScan(CliTestCase):
    """Test the scan command."""

    def test_minimum(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', 'scan'])
            summary = _load(os.path.join('out', 'scan_summary.json'))
            self.assert_relative(2 ** (-1 / 3), summary['eta_at_min_R'], 0.05)
            self.assert_relative(73, summary['min_R'], 0.05)
            self.assert_relative(2 ** (-1 / 3), summary['eta_at_min_R_closed_form'], 0.02)

            _, frame = read_csv(os.path.join('out', 'scan.csv'))
            self.assertEqual(cli.SCAN_COLUMNS, list(frame.columns))
            self.assertEqual(50, len(frame))
            self.assertAlmostEqual(0.1, frame['eta'][0], places=12)
            self.assertAlmostEqual(10.0, frame['eta'][49], places=10)

    def test_reproducible(self):
        """Test that two runs write the same files."""
        first, second = _run_twice(self, ['scan', '--count', '7'])
        self.assertEqual(['scan.csv', 'scan_summary.json'], sorted(first))
        self.assertEqual(first, second)

    def test_bad_range(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', 'scan', '--eta-min', '2', '--eta-max', '1'], exit_code=cli.EXIT_CONFIG)


class TestSchmidt(CliTestCase):
    """Test the schmidt command."""

    def test_long_pulse(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', 'schmidt', '--tau', '7ps'])
            summary = _load(os.path.join('out', 'schmidt.json'))
            self.assert_relative(summary['K_long'], summary['K_svd'], 0.15)
            self.assert_relative(summary['K_svd'], summary['K_integral4d'], 0.01)
            self.assertEqual(summary['points'], summary['trace'][-1][0])

            _, frame = read_csv(os.path.join('out', 'schmidt_coefficients.csv'))
            self.assertAlmostEqual(1.0, frame['probability'].sum(), places=8)
            self.assert_relative(summary['K_svd'], 1 / (frame['probability'] ** 2).sum(), 1e-6)

    def test_not_converged(self):
        with self.runner.isolated_filesystem():
            result = self.invoke(['--out', 'out', 'schmidt', '--max-points', '16'], exit_code=cli.EXIT_NUMERICS)
            self.assertIn('schmidt failed', result.output)


class TestTemporal(CliTestCase):
    """Test the temporal command."""

    def test_short_pulse(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', '--grid', '64', 'temporal', '--localization-samples', '5'])
            summary = _load(os.path.join('out', 'temporal_summary.json'))

            self.assert_relative(1.46 * PS, summary['front_wing'], 0.05)
            self.assert_relative(summary['front_wing_analytic'], summary['front_wing'], 0.05)
            self.assert_relative(43e-15, summary['region_crossing'], 0.15)
            self.assertNotIn('R_t', summary)
            self.assertEqual(0.0, summary['coincidence_t2_0'])
            self.assertIsNone(summary['coincidence_fwhm_analytic_0'])
            self.assertLess(summary['plateau_start'], summary['plateau_end'])
            self.assert_relative(0.555, summary['long_pulse_fwhm_tau0'], 0.01)

            meta, grid = read_matrix_csv(os.path.join('out', 'temporal_grid.csv'))
            self.assertEqual((64, 64), grid.values.shape)
            self.assertEqual('t1', grid.row_label)
            self.assertEqual('intensity', meta['y'])

            _, frame = read_csv(os.path.join('out', 'temporal_localization.csv'))
            self.assertEqual(5, len(frame))
            self.assertEqual('I', frame['region'][0])
            for i in range(3):
                self.assertTrue(os.path.exists(os.path.join('out', 'temporal_coincidence_{}.csv'.format(i))))

    def test_long_pulse(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', '--grid', '64', 'temporal', '--tau', '2ps', '--rt-min-eta', '1'])
            summary = _load(os.path.join('out', 'temporal_summary.json'))

            self.assert_relative(58, summary['R_t'], 0.01)
            self.assert_relative(summary['R_long_scaled'], summary['R_t'], 0.03)
            self.assert_relative(summary['K_long_scaled'], summary['R_t'], 0.03)
            self.assert_relative(0.555, summary['long_pulse_fwhm_tau0'], 0.01)
            self.assertNotIn('front_wing', summary)
            self.assertFalse(os.path.exists(os.path.join('out', 'temporal_localization.csv')))

            _, grid = read_matrix_csv(os.path.join('out', 'temporal_grid.csv'))
            self.assertEqual('t_plus', grid.row_label)
            self.assertEqual('t_minus', grid.column_label)

    def test_rt_threshold(self):
        """Test that the width ratio is left out below eta = 3 and refused when asked for explicitly."""
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', '--grid', '64', 'temporal', '--tau', '2ps'])
            summary = _load(os.path.join('out', 'temporal_summary.json'))
            self.assertNotIn('R_t', summary)
            self.assertEqual(3.0, summary['manifest']['overrides']['rt_min_eta'])

            self.invoke(['--out', 'out7', '--grid', '64', 'temporal', '--tau', '7ps'])
            self.assertIn('R_t', _load(os.path.join('out7', 'temporal_summary.json')))

            self.invoke(['--out', 'other', 'temporal', '--tau', '2ps', '--rt'], exit_code=cli.EXIT_REGIME)
            self.assertFalse(os.path.exists('other'))
            self.invoke(['--out', 'other', 'temporal', '--tau', '2ps', '--rt-min-eta', '0.5'],
                        exit_code=cli.EXIT_CONFIG)

    def test_rt_refused(self):
        """Test that the temporal width ratio is refused for short pulses."""
        with self.runner.isolated_filesystem():
            result = self.invoke(['--out', 'out', 'temporal', '--rt'], exit_code=cli.EXIT_REGIME)
            self.assertIn('temporal failed', result.output)
            self.assertFalse(os.path.exists('out'))


class TestAngular(CliTestCase):
    """Test the angular command."""

    def test_write(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', 'angular', '--np', '1.7', '--np-prime', '0.1', '--alpha0', '1e-3'])
            data = _load(os.path.join('out', 'angular.json'))
            self.assert_relative(0.1 * math.sqrt(2 * 0.005 / (1.7 * 4e-7)), data['R_min_angular'], 1e-12)
            self.assertEqual(['angular.json'], data['manifest']['outputs'])

    def test_no_derivative(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--out', 'out', 'angular', '--np', '1.7', '--np-prime', '0', '--alpha0', '1e-3'])
            data = _load(os.path.join('out', 'angular.json'))
            self.assertIsNone(data['eta_tilde'])
            self.assertEqual(0.0, data['R_min_angular'])

    def test_bad_input(self):
        with self.runner.isolated_filesystem():
            for args in (['--np-prime=-1', '--alpha0', '1e-3'], ['--np-prime', '0.1', '--alpha0', 'wide']):
                with self.subTest(args=args):
                    self.invoke(['--out', 'out', 'angular', '--np', '1.7'] + args, exit_code=cli.EXIT_CONFIG)

    def test_small_grid(self):
        with self.runner.isolated_filesystem():
            self.invoke(['--grid', '8', 'angular', '--np', '1.7', '--np-prime', '0.1', '--alpha0', '1e-3'],
                        exit_code=cli.EXIT_CONFIG)

    def test_unwritable(self):
        """Test that an output path blocked by a file exits with the output code."""
        with self.runner.isolated_filesystem():
            with open('blocker', 'w') as file:
                file.write('x')
            result = self.invoke(
                ['--out', 'blocker', 'angular', '--np', '1.7', '--np-prime', '0.1', '--alpha0', '1e-3'],
                exit_code=cli.EXIT_OUTPUT,
            )
            self.assertIn('output failed', result.output)


class TestReproducible(CliTestCase):
    """Test that every command writes byte-identical files on a second run."""

    def test_spectrum(self):
        first, second = _run_twice(self, ['spectrum'])
        self.assertEqual(5, len(first))
        self.assertEqual(first, second)

    def test_schmidt(self):
        first, second = _run_twice(self, ['schmidt', '--tau', '7ps'])
        self.assertEqual(['schmidt.json', 'schmidt_coefficients.csv'], sorted(first))
        self.assertEqual(first, second)

    def test_temporal_short_pulse(self):
        first, second = _run_twice(self, ['--grid', '32', 'temporal', '--localization-samples', '3'])
        self.assertIn('temporal_localization.csv', first)
        self.assertIn('temporal_coincidence_2.csv', first)
        self.assertEqual(first, second)

    def test_temporal_long_pulse(self):
        first, second = _run_twice(self, ['--grid', '32', 'temporal', '--tau', '7ps'])
        self.assertIn('temporal_long_pulse_factor.csv', first)
        self.assertEqual(first, second)

    def test_angular(self):
        first, second = _run_twice(self, ['angular', '--np', '1.7', '--np-prime', '0.1', '--alpha0', '1e-3'])
        self.assertEqual(['angular.json'], sorted(first))
        self.assertEqual(first, second)


if __name__ == '__main__':
    unittest.main()
