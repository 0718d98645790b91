# -*- coding: utf-8 -*-

"""Tests for the Schmidt number."""

import dataclasses
import math
import unittest

import numpy as np

from biphoton.numerics import NonConvergence
from biphoton.params import derive
from biphoton.schmidt import (
    INTEGRAL4D, SVD, SchmidtGridSpec, SchmidtResult, entanglement_report, k_analytic, k_unified, kr_ratio,
    schmidt_integral4d, schmidt_svd,
)
from biphoton.spectral import jsa, r_parameter
from tests.constants import NumericTestCase, baseline, config_at_eta

#: Wide enough for the single-particle spectrum of the baseline, fine enough for its coincidence width
BASELINE_GRID = SchmidtGridSpec(half_width=7.5e14, points=4096, refine=False)

#: The baseline crystal cut to 50 um, which divides every width ratio and Schmidt number by ten
SHORT_CRYSTAL = dataclasses.replace(baseline, L=5e-5)


def double_gaussian(x, y):
    """A double-Gaussian kernel whose Schmidt number and width ratio are both 5/4."""
    return np.exp(-(x + y) ** 2 / 4 - (x - y) ** 2 / 16)


class TestClosedForms(NumericTestCase):
    """Test the closed-form Schmidt numbers."""

    def test_short(self):
        eta = derive(baseline).eta
        K = k_analytic(baseline).K_short
        self.assert_relative(57.5 / math.sqrt(eta), K, 0.02)
        self.assert_relative(305, K, 0.02)

    def test_short_over_r(self):
        self.assert_relative(1.045, k_analytic(baseline).K_short / r_parameter(baseline).R_short, 0.002)

    def test_unit_eta(self):
        self.assert_relative(72.4, k_unified(1.0), 1e-3)
        self.assert_relative(k_unified(1.0), k_analytic(config_at_eta(1.0)).K_interp, 0.02)

    def test_long(self):
        cfg = config_at_eta(5.0)
        self.assert_relative(44 * 5.0, k_analytic(cfg).K_long, 0.02)

    def test_interpolation(self):
        k = k_analytic(baseline)
        self.assertEqual(math.hypot(k.K_short, k.K_long), k.K_interp)


class TestRatio(NumericTestCase):
    """Test the ratio of the Schmidt number to the width ratio."""

    def test_limits(self):
        self.assert_relative(1.04, kr_ratio(1e-4), 1e-6)
        self.assert_relative(1.04 * math.sqrt(0.586), kr_ratio(1e4), 1e-6)
        self.assert_relative(44 / 55.28, kr_ratio(1e4), 0.005)

    def test_unit_eta(self):
        cfg = config_at_eta(1.0)
        k, r = k_analytic(cfg), r_parameter(cfg)
        self.assert_relative(k.K_interp / r.R_interp, kr_ratio(1.0), 0.01)

    def test_monotonic(self):
        values = [kr_ratio(eta) for eta in np.logspace(-2, 2, 50)]
        self.assertTrue(all(a > b for a, b in zip(values, values[1:])))

    def test_invalid(self):
        with self.assertRaises(ValueError):
            kr_ratio(0.0)


class TestNumeric(NumericTestCase):
    """Test the Schmidt number from the sampled amplitude."""

    def test_double_gaussian(self):
        spec = SchmidtGridSpec(half_width=15.0, points=401, refine=False)
        result = schmidt_svd(baseline, spec=spec, kernel=double_gaussian)
        self.assert_relative(1.25, result.K, 1e-6)
        self.assertEqual(SVD, result.method)
        self.assertEqual([(401, result.K)], result.trace)
        integral = schmidt_integral4d(baseline, spec=spec, kernel=double_gaussian)
        self.assert_relative(result.K, integral.K, 1e-9)
        self.assertEqual(INTEGRAL4D, integral.method)

    def test_shared_grid(self):
        """Test that the overlap integral and the singular values agree on the same grid."""
        spec = SchmidtGridSpec(half_width=7.5e14, points=512, refine=False)
        svd = schmidt_svd(baseline, spec=spec)
        integral = schmidt_integral4d(baseline, spec=spec)
        self.assert_relative(svd.K, integral.K, 0.01)
        self.assertGreaterEqual(svd.K, 1.0)
        self.assertAlmostEqual(1.0, float(np.sum(svd.coeffs)), places=10)

    def test_short_pulse(self):
        """Test the short-pulse Schmidt number against its closed form."""
        eta = derive(baseline).eta
        result = schmidt_svd(baseline, spec=BASELINE_GRID)
        self.assert_relative(57.5 / math.sqrt(eta), result.K, 0.15)
        self.assertEqual(4096, result.points)

    def test_long_pulse(self):
        """Test the long-pulse Schmidt number with grid refinement."""
        result = schmidt_svd(config_at_eta(5.0))
        self.assert_relative(44 * 5.0, result.K, 0.15)
        self.assertGreaterEqual(len(result.trace), 2)
        first, last = result.trace[-2][1], result.trace[-1][1]
        self.assertLessEqual(abs(last - first), 0.005 * last)

    def test_not_converged(self):
        spec = SchmidtGridSpec(half_width=7.5e14, points=128, max_points=256, rtol=1e-12)
        with self.assertRaises(NonConvergence):
            schmidt_svd(baseline, spec=spec)

    def test_result(self):
        with self.assertRaises(ValueError):
            SchmidtResult(K=2.0, method=SVD, coeffs=np.array([0.5, 0.4]))


class TestSampling(NumericTestCase):
    """Test that sampling only the pump ridge gives the same Schmidt number as the full lattice."""

    def test_band_matches_full(self):
        for eta in (0.1, 10.0):
            cfg = config_at_eta(eta)
            with self.subTest(eta=eta):
                band = schmidt_svd(cfg, spec=SchmidtGridSpec(points=256, refine=False))
                full = schmidt_svd(cfg, spec=SchmidtGridSpec(points=256, refine=False, band=False))
                self.assertEqual(full.half_width, band.half_width)
                self.assert_relative(full.K, band.K, 1e-9)
                np.testing.assert_allclose(full.coeffs[:20], band.coeffs[:20], rtol=1e-8, atol=1e-15)

    def test_band_matches_full_refined(self):
        """Test that refinement settles on the same grid and value with and without the band."""
        cfg = config_at_eta(10.0, SHORT_CRYSTAL)
        band = schmidt_svd(cfg)
        full = schmidt_svd(cfg, spec=SchmidtGridSpec(band=False))
        self.assertEqual(full.points, band.points)
        self.assert_relative(full.K, band.K, 1e-9)

    def test_band_overlap_integral(self):
        cfg = config_at_eta(0.1)
        band = schmidt_integral4d(cfg, spec=SchmidtGridSpec(points=256))
        full = schmidt_integral4d(cfg, spec=SchmidtGridSpec(points=256, band=False))
        self.assert_relative(full.K, band.K, 1e-9)

    def test_reflection(self):
        """Test that reflecting the amplitude through the anti-diagonal leaves the Schmidt number unchanged."""
        for eta in (0.1, 10.0):
            cfg = config_at_eta(eta)
            with self.subTest(eta=eta):
                spec = SchmidtGridSpec(points=256, refine=False, band=False)
                direct = schmidt_svd(cfg, spec=spec, kernel=lambda x, y, c=cfg: jsa(x, y, c).real)
                reflected = schmidt_svd(cfg, spec=spec, kernel=lambda x, y, c=cfg: jsa(-y, -x, c).real)
                self.assert_relative(direct.K, reflected.K, 1e-6)
                self.assert_relative(schmidt_svd(cfg, spec=spec).K, direct.K, 1e-12)

    def test_monotonic_in_duration(self):
        """Test that K falls with the pump duration for short pulses and grows with it for long ones."""
        spec = SchmidtGridSpec(refine=False)
        for etas in ((0.01, 0.02, 0.04, 0.08, 0.16), (4.0, 6.0, 9.0, 13.5, 20.0)):
            with self.subTest(etas=etas):
                configs = [config_at_eta(eta, SHORT_CRYSTAL) for eta in etas]
                taus = [cfg.tau for cfg in configs]
                self.assertEqual(sorted(taus), taus)
                values = [schmidt_svd(cfg, spec=spec).K for cfg in configs]
                steps = np.sign(np.diff(values))
                self.assertEqual(1, len(set(steps)), msg='K is not monotonic in tau: {}'.format(values))
                self.assertEqual(-1.0 if etas[0] < 1 else 1.0, steps[0])


class TestReport(unittest.TestCase):
    """Test the collected entanglement parameters."""

    def test_analytic(self):
        report = entanglement_report(baseline)
        self.assertIsNone(report.K_numeric)
        self.assertEqual(r_parameter(baseline).R_short, report.R_short)
        self.assertEqual(k_analytic(baseline).K_long, report.K_long)
        self.assertEqual(kr_ratio(report.eta), report.KR_ratio)

    def test_numeric(self):
        spec = SchmidtGridSpec(half_width=7.5e14, points=256, refine=False)
        report = entanglement_report(baseline, numeric=True, spec=spec)
        self.assertEqual(schmidt_svd(baseline, spec=spec).K, report.K_numeric)
