# -*- coding: utf-8 -*-

"""Tests for quadrature, curve widths, special functions and the Schmidt decomposition."""

import math
import unittest

import numpy as np
from scipy import special

from biphoton.constants import LN2, SINC2_FWHM_EXACT
from biphoton.exceptions import InvalidParameterError
from biphoton.numerics import (
    Curve, DomainOverflow, NoHalfCrossing, NonConvergence, ZeroKernel, erf_complex, erf_damped, fresnel_tail, fwhm,
    geometric_edges, gram_schmidt_number, integrate_1d, panel_rule, sinc, sinc_convolution_check, svd_schmidt,
    widen_until_crossed,
)
from biphoton.spectral import Axis
from tests.constants import NumericTestCase


def _gaussian_curve(sigma: float, points: int = 801):
    xs = np.linspace(-8 * sigma, 8 * sigma, points)

    def func(x):
        return math.exp(-x * x / (2 * sigma * sigma))

    return Curve(xs, np.exp(-xs * xs / (2 * sigma * sigma))), func


class TestCurve(unittest.TestCase):
    """Test validation of sampled curves."""

    def test_shape(self):
        with self.assertRaises(InvalidParameterError):
            Curve([0.0, 1.0, 2.0], [1.0, 2.0])

    def test_too_short(self):
        with self.assertRaises(InvalidParameterError):
            Curve([0.0, 1.0], [1.0, 2.0])

    def test_increasing(self):
        with self.assertRaises(InvalidParameterError):
            Curve([0.0, 2.0, 1.0], [1.0, 2.0, 3.0])

    def test_normalized(self):
        curve = Curve([0.0, 1.0, 2.0], [1.0, 4.0, 2.0]).normalized()
        self.assertEqual([0.25, 1.0, 0.5], list(curve.ys))
        self.assertEqual(3, len(curve))


class TestFwhm(NumericTestCase):
    """Test measurement of the full width at half maximum."""

    def test_gaussian_pump(self):
        """Test the Gaussian identity ``exp(-x^2 tau^2 / (4 ln 2))`` has width ``4 ln 2 / tau``."""
        tau = 5e-14
        xs = np.linspace(-1e15, 1e15, 1001)
        curve = Curve(xs, np.exp(-xs ** 2 * tau ** 2 / (4 * LN2)))
        result = fwhm(curve, func=lambda x: math.exp(-x * x * tau * tau / (4 * LN2)))
        self.assert_relative(4 * LN2 / tau, result.width, 1e-6)
        self.assertAlmostEqual(0.0, result.peak_x, delta=1e3)
        self.assertAlmostEqual(1.0, result.peak_y)

    def test_sinc_squared(self):
        xs = np.linspace(-10, 10, 2001)
        curve = Curve(xs, np.asarray(sinc(xs)) ** 2)
        result = fwhm(curve, func=lambda x: sinc(x) ** 2)
        self.assertAlmostEqual(SINC2_FWHM_EXACT, result.width, places=8)

    def test_interpolant(self):
        """Test that without a function the crossings come from the linear interpolant."""
        curve, _ = _gaussian_curve(1.0, points=4001)
        self.assert_relative(2 * math.sqrt(2 * LN2), fwhm(curve).width, 1e-4)

    def test_bimodal(self):
        """Test that the outermost crossings of two equal lobes span both."""
        xs = np.linspace(-10, 10, 2001)

        def func(x):
            return max(math.exp(-(x - 3) ** 2), math.exp(-(x + 3) ** 2))

        curve = Curve(xs, np.maximum(np.exp(-(xs - 3) ** 2), np.exp(-(xs + 3) ** 2)))
        result = fwhm(curve, func=func)
        self.assertAlmostEqual(6 + 2 * math.sqrt(LN2), result.width, places=8)
        self.assertAlmostEqual(-3 - math.sqrt(LN2), result.x_left, places=8)

    def test_many_decades(self):
        """Test Gaussians with widths spread over six decades."""
        rng = np.random.RandomState(seed=127)
        for sigma in 10 ** rng.uniform(-3, 3, size=20):
            curve, func = _gaussian_curve(sigma)
            self.assert_relative(2 * sigma * math.sqrt(2 * LN2), fwhm(curve, func=func).width, 1e-6)

    def test_no_crossing(self):
        xs = np.linspace(0, 1, 11)
        with self.assertRaises(NoHalfCrossing):
            fwhm(Curve(xs, xs))
        with self.assertRaises(NoHalfCrossing):
            fwhm(Curve(xs, 1 - xs))
        with self.assertRaises(NoHalfCrossing):
            fwhm(Curve(xs, np.zeros_like(xs)))

    def test_with_width(self):
        curve, func = _gaussian_curve(2.0)
        self.assertIsNone(curve.width)
        self.assertIsNotNone(curve.with_width(func).width)

    def test_widen_until_crossed(self):
        """Test that a window too narrow for the crossings is widened."""
        calls = []

        def build(window: Axis):
            calls.append(window.half_width)
            xs = window.values
            return Curve(xs, np.exp(-xs * xs / 2)), None

        curve = widen_until_crossed(build, Axis(center=0.0, half_width=0.5, points=201), 'test')
        self.assertEqual([0.5, 1.0, 2.0], calls)
        self.assert_relative(2 * math.sqrt(2 * LN2), curve.width.width, 1e-3)

    def test_widen_gives_up(self):
        def build(window: Axis):
            xs = window.values
            return Curve(xs, np.ones_like(xs)), None

        with self.assertRaises(NoHalfCrossing):
            widen_until_crossed(build, Axis(center=0.0, half_width=1.0, points=11), 'test', max_widenings=2)


class TestQuadrature(unittest.TestCase):
    """Test adaptive quadrature on integrals with known values."""

    def test_sinc_squared(self):
        """Test the integral of sinc^2 is pi, with the truncated tail ``1 / X`` restored."""
        points = np.arange(-63, 64) * np.pi
        value = integrate_1d(lambda x: sinc(x) ** 2, -200, 200, tol=1e-10, points=points)
        self.assertAlmostEqual(math.pi, value + 1 / 200, delta=1e-4)

    def test_quartic_gaussian(self):
        value = integrate_1d(lambda x: math.exp(-x ** 4), -10, 10)
        self.assertAlmostEqual(2 * special.gamma(1.25), value, delta=1e-8)
        self.assertAlmostEqual(1.8128, value, delta=1e-4)

    def test_sinc_squared_of_square(self):
        points = np.sqrt(np.arange(1, 796) * np.pi)
        points = np.concatenate([-points[::-1], points])
        value = integrate_1d(lambda x: sinc(x * x) ** 2, -50, 50, tol=1e-9, points=points)
        self.assertAlmostEqual(4 * math.sqrt(math.pi) / 3, value, delta=1e-4)

    def test_sinc_fourth_of_square(self):
        points = np.sqrt(np.arange(1, 796) * np.pi)
        points = np.concatenate([-points[::-1], points])
        value = integrate_1d(lambda x: sinc(x * x) ** 4, -50, 50, tol=1e-9, points=points)
        expected = 64 / 105 * (2 ** 1.5 - 1) * math.sqrt(math.pi)
        self.assertAlmostEqual(expected, value, delta=1e-4)
        self.assertAlmostEqual(1.9754, value, delta=1e-4)

    def test_complex(self):
        value = integrate_1d(lambda x: np.exp(1j * x), 0, 1)
        self.assertIsInstance(value, complex)
        self.assertAlmostEqual(math.sin(1), value.real, places=10)
        self.assertAlmostEqual(1 - math.cos(1), value.imag, places=10)

    def test_vector(self):
        value = integrate_1d(lambda x: np.array([x, x * x]), 0, 1)
        np.testing.assert_allclose([0.5, 1 / 3], value, rtol=1e-10)

    def test_non_convergence(self):
        with self.assertRaises(NonConvergence):
            integrate_1d(lambda x: math.sin(1 / x), 1e-6, 1, tol=1e-14, limit=3)

    def test_sinc_convolution(self):
        self.assertAlmostEqual(math.pi, sinc_convolution_check(0.0), delta=1e-4)
        self.assertAlmostEqual(0.0, sinc_convolution_check(math.pi), delta=1e-4)
        self.assertAlmostEqual(math.pi * math.sin(1.0), sinc_convolution_check(1.0), delta=1e-4)
        self.assertAlmostEqual(2.6436, sinc_convolution_check(1.0), delta=1e-4)

    def test_geometric_edges(self):
        """Test that the edges are finite in number, end on both limits and grow away from the lower one."""
        for lo, hi, ratio in ((0.1, 1.0, 0.9), (7.0710678118654756e-06, 0.070710678118654752, 0.98),
                              (1e-4, 1.0, 0.99), (2.5, 3.0, 0.5), (0.3, 0.31, 0.9)):
            with self.subTest(lo=lo, hi=hi, ratio=ratio):
                edges = geometric_edges(lo, hi, ratio=ratio)
                self.assertEqual(lo, edges[0])
                self.assertEqual(hi, edges[-1])
                self.assertTrue(np.all(np.diff(edges) > 0))
                self.assertLessEqual(len(edges), math.log(lo / hi) / math.log(ratio) + 3)
                widths = np.diff(edges)[1:]
                self.assertTrue(np.all(np.diff(widths) > 0), msg='panels must grow away from the lower edge')

    def test_geometric_edges_invalid(self):
        for lo, hi, ratio in ((0.0, 1.0, 0.9), (1.0, 1.0, 0.9), (0.5, 1.0, 1.0), (0.5, 1.0, 0.0)):
            with self.subTest(lo=lo, hi=hi, ratio=ratio):
                with self.assertRaises(InvalidParameterError):
                    geometric_edges(lo, hi, ratio=ratio)

    def test_panel_rule(self):
        nodes, weights = panel_rule(geometric_edges(0.5, 2.0, ratio=0.8), order=8)
        self.assertAlmostEqual(1.5, float(np.sum(weights)), places=12)
        self.assertAlmostEqual(2.625, float(np.sum(weights * nodes ** 2)), places=12)


class TestSpecial(unittest.TestCase):
    """Test sinc and the complex error function."""

    def test_sinc(self):
        self.assertEqual(1.0, sinc(0.0))
        self.assertAlmostEqual(0.0, sinc(math.pi), delta=1e-15)
        self.assertAlmostEqual(1 - 1e-10 / 6, sinc(1e-5), delta=1e-16)
        np.testing.assert_allclose(np.sin([1.0, 2.0]) / [1.0, 2.0], sinc(np.array([1.0, 2.0])), rtol=1e-15)

    def test_erf_complex(self):
        value = erf_complex(1 + 1j)
        self.assertAlmostEqual(1.3161512816979477, value.real, delta=1e-10)
        self.assertAlmostEqual(-0.19045346923783471, value.imag, delta=1e-10)
        self.assertAlmostEqual(0.8427007929497149, erf_complex(1.0).real, delta=1e-14)

    def test_erf_symmetry(self):
        zs = np.array([0.3 + 2.1j, -1.7 + 0.4j, 2.2 - 0.9j])
        np.testing.assert_array_equal(-erf_complex(zs), erf_complex(-zs))
        np.testing.assert_array_equal(np.conj(erf_complex(zs)), erf_complex(np.conj(zs)))

    def test_erf_reflection_random(self):
        """Test the reflection identities on random arguments in all four quadrants."""
        rng = np.random.default_rng(0)
        zs = rng.uniform(-6, 6, 200) + 1j * rng.uniform(-5, 5, 200)
        values = erf_complex(zs)
        np.testing.assert_array_equal(-values, erf_complex(-zs))
        np.testing.assert_array_equal(np.conj(values), erf_complex(np.conj(zs)))
        np.testing.assert_allclose(special.erf(zs), values, rtol=1e-10, atol=1e-14)

    def test_erf_overflow(self):
        with self.assertRaises(DomainOverflow):
            erf_complex(1 + 40j)

    def test_erf_damped(self):
        for z in (1 + 1j, -0.5 + 2j, 3 - 1.5j):
            expected = math.exp(-z.imag ** 2) * erf_complex(z)
            self.assertAlmostEqual(0.0, abs(erf_damped(z) - expected), delta=1e-12)
        self.assertTrue(np.isfinite(erf_damped(1 + 40j)))

    def test_fresnel_tail(self):
        """Test the closed form against quadrature of ``2 exp(i / u^2)`` on ``u = sqrt(x)``.

        The quadrature stops where the phase reaches 1e4 rad; the rest is its leading endpoint term.
        """
        u0 = 0.01
        points = 1 / np.sqrt(2 * np.pi * np.arange(1, 1592))
        value = integrate_1d(lambda u: 2 * np.exp(1j / (u * u)), u0, 1.0, tol=1e-11, points=points)
        value += 1j * u0 ** 3 * np.exp(1j / (u0 * u0))
        self.assertAlmostEqual(0.0, abs(fresnel_tail(1.0, 1.0) - value), delta=1e-7)

    def test_fresnel_tail_limit(self):
        """Test that beyond ``2 sqrt(X)`` the integral converges to ``-2 sqrt(pi beta) exp(-i pi / 4)``."""
        X = 1e16
        value = fresnel_tail(1.0, X) - 2 * math.sqrt(X) * np.exp(1j / X)
        expected = -2 * math.sqrt(math.pi) * np.exp(-0.25j * math.pi)
        self.assertAlmostEqual(0.0, abs(value - expected), delta=1e-6)

    def test_fresnel_tail_no_phase(self):
        self.assertAlmostEqual(2.0, fresnel_tail(0.0, 1.0), delta=1e-15)

    def test_fresnel_tail_invalid(self):
        with self.assertRaises(ValueError):
            fresnel_tail(-1.0, 1.0)
        with self.assertRaises(ValueError):
            fresnel_tail(1.0, 0.0)


class TestSchmidtDecomposition(NumericTestCase):
    """Test the Schmidt number of sampled kernels."""

    def setUp(self):
        self.xs = np.linspace(-15, 15, 401)
        self.step = self.xs[1] - self.xs[0]
        x, y = np.meshgrid(self.xs, self.xs, indexing='ij')
        self.double_gaussian = np.exp(-(x + y) ** 2 / 4 - (x - y) ** 2 / 16)

    def test_separable(self):
        kernel = np.outer(np.exp(-self.xs ** 2), np.cos(self.xs) * np.exp(-self.xs ** 2 / 3))
        result = svd_schmidt(kernel, self.step, self.step)
        self.assertAlmostEqual(1.0, result.K, delta=1e-10)

    def test_coefficients(self):
        result = svd_schmidt(self.double_gaussian, self.step, self.step)
        self.assertAlmostEqual(1.0, float(np.sum(result.coeffs)), places=12)
        self.assertTrue(np.all(np.diff(result.coeffs) <= 0))
        self.assertTrue(np.all(result.coeffs >= 0))

    def test_double_gaussian(self):
        """Test that the Schmidt number of a double Gaussian equals its width ratio."""
        self.assert_relative(1.25, svd_schmidt(self.double_gaussian, self.step, self.step).K, 1e-6)

        intensity = np.abs(self.double_gaussian) ** 2
        coincidence = fwhm(Curve(self.xs, intensity[:, 200] / np.max(intensity[:, 200]))).width
        marginal = np.sum(intensity, axis=1)
        single = fwhm(Curve(self.xs, marginal / np.max(marginal))).width
        self.assert_relative(1.25, single / coincidence, 0.01)

    def test_gram_identity(self):
        K = svd_schmidt(self.double_gaussian, self.step, self.step).K
        self.assert_relative(K, gram_schmidt_number(self.double_gaussian, self.step, self.step), 1e-10)

    def test_identity_matrix(self):
        """Test that two equally weighted modes give a Schmidt number of two."""
        result = svd_schmidt(np.eye(2))
        self.assertAlmostEqual(2.0, result.K, places=12)
        np.testing.assert_allclose([0.5, 0.5], result.coeffs, rtol=1e-12)

    def test_complex_rescale(self):
        """Test that multiplying the kernel by a complex constant leaves the Schmidt number unchanged."""
        K = svd_schmidt(self.double_gaussian, self.step, self.step).K
        for scale in (2 - 3j, 1j, -1e-3, 1e5 * np.exp(0.7j)):
            with self.subTest(scale=scale):
                self.assert_relative(K, svd_schmidt(scale * self.double_gaussian, self.step, self.step).K, 1e-10)

    def test_transpose(self):
        """Test that exchanging the photons leaves the Schmidt number unchanged."""
        x, y = np.meshgrid(self.xs, self.xs[::2], indexing='ij')
        kernel = np.exp(-(x + y) ** 2 / 4 - (x - 0.5 * y) ** 2 / 9) * np.exp(0.3j * x * y)
        K = svd_schmidt(kernel, self.step, 2 * self.step).K
        self.assert_relative(K, svd_schmidt(kernel.T, 2 * self.step, self.step).K, 1e-10)
        self.assert_relative(K, gram_schmidt_number(kernel.T, 2 * self.step, self.step), 1e-10)

    def test_zero(self):
        with self.assertRaises(ZeroKernel):
            svd_schmidt(np.zeros((4, 4)))
        with self.assertRaises(ZeroKernel):
            gram_schmidt_number(np.zeros((4, 4)))

    def test_invalid(self):
        with self.assertRaises(InvalidParameterError):
            svd_schmidt(np.ones(4))
        with self.assertRaises(InvalidParameterError):
            svd_schmidt(np.array([[1.0, np.nan], [0.0, 1.0]]))
