# -*- coding: utf-8 -*-

"""The joint spectral amplitude and the spectra derived from it.

The two-photon amplitude of a Gaussian pump of duration ``tau`` in a crystal of length ``L`` is

    psi(nu1, nu2) = exp(-(nu1 + nu2)^2 tau^2 / (8 ln 2)) sinc(L delta(nu1, nu2) / 2)

with the phase mismatch ``delta = [A (nu1 + nu2) - B (nu1 - nu2)^2 / omega0] / c`` and detunings ``nu`` measured
from the degenerate frequency ``omega0 / 2``. Constant prefactors are dropped: every curve is normalized to one at
its maximum.

>>> from biphoton.params import read_config
>>> from biphoton.constants import BASELINE_CONFIG_PATH
>>> cfg = read_config(BASELINE_CONFIG_PATH)
>>> curve = coincidence_spectrum(0.0, cfg, axis='wavelength')
>>> round(curve.width.width * 1e9, 2)  # nm
0.67
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np
from scipy import integrate

from .constants import LN2, SINC2_FWHM
from .exceptions import AnalyticOutOfRegime, InvalidParameterError, OutOfBranch
from .numerics import Curve, NoHalfCrossing, NonConvergence, sinc, widen_until_crossed
from .params import PhysicalConfig, derive

__all__ = [
    'Axis',
    'SpectralGrid',
    'AmplitudeGrid',
    'EntanglementReport',
    'RParameters',
    'FREQUENCY',
    'WAVELENGTH',
    'mismatch',
    'phase_match_curve',
    'phase_match_curve_approx',
    'phase_matched_sum',
    'jsa',
    'amplitude_grid',
    'detuning_to_wavelength',
    'wavelength_to_detuning',
    'pump_width',
    'coincidence_width_short',
    'coincidence_width_long',
    'coincidence_width_local',
    'single_particle_width_short',
    'single_particle_width_long',
    'coincidence_spectrum',
    'single_particle_spectrum',
    'pump_spectrum',
    'crystal_factor',
    'r_parameter',
    'r_unified',
    'r_minimum',
    'r_measured',
]

logger = logging.getLogger(__name__)

FREQUENCY = 'frequency'
WAVELENGTH = 'wavelength'

#: How many times a window is doubled after a missing half-maximum crossing
MAX_WIDENINGS = 3
#: Default number of samples of a one-dimensional spectrum
DEFAULT_POINTS = 801

#: Closed-form single-particle spectra hold for eta below the first and above the second bound
ANALYTIC_SHORT_MAX_ETA = 0.3
ANALYTIC_LONG_MIN_ETA = 3.0

R_SHORT_COEFFICIENT = 0.7507
R_LONG_COEFFICIENT = 0.7537
R_UNIFIED_COEFFICIENT = 0.75


@dataclass(frozen=True)
class Axis:
    """A uniform grid of samples around a center, detunings [rad/s] or times [s]."""

    center: float
    half_width: float
    points: int = DEFAULT_POINTS

    def __post_init__(self):
        if not self.half_width > 0:
            raise InvalidParameterError('half_width', self.half_width)
        if self.points < 16:
            raise InvalidParameterError('points', self.points, 'must be at least 16')

    @property
    def values(self) -> np.ndarray:
        """The sample positions."""
        return np.linspace(self.center - self.half_width, self.center + self.half_width, self.points)

    @property
    def step(self) -> float:
        """The spacing between samples."""
        return 2 * self.half_width / (self.points - 1)

    def widened(self, factor: float = 2.0) -> 'Axis':
        """Get an axis with the same center and point density, ``factor`` times wider."""
        return replace(self, half_width=self.half_width * factor, points=int((self.points - 1) * factor) + 1)


@dataclass(frozen=True)
class SpectralGrid:
    """A rectangular grid of photon 1 and photon 2 detunings."""

    nu1: Axis
    nu2: Axis

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Get the (nu1, nu2) mesh with photon 1 along rows."""
        return np.meshgrid(self.nu1.values, self.nu2.values, indexing='ij')


@dataclass(frozen=True)
class AmplitudeGrid:
    """The two-photon amplitude sampled on a :class:`SpectralGrid`."""

    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        shape = (self.grid.nu1.points, self.grid.nu2.points)
        if self.values.shape != shape:
            raise InvalidParameterError('values', self.values.shape, 'must have shape {}'.format(shape))
        if not np.all(np.isfinite(self.values)):
            raise InvalidParameterError('values', '...', 'must be finite')


@dataclass(frozen=True)
class EntanglementReport:
    """The entanglement parameters of a configuration."""

    eta: float
    R_short: float
    R_long: float
    R_interp: float
    K_short: float
    K_long: float
    K_interp: float
    KR_ratio: float
    K_numeric: Optional[float] = None

    def __post_init__(self):
        for name, value in self.to_dict().items():
            if value is not None and value < 0:
                raise InvalidParameterError(name, value, 'must be non-negative')

    def to_dict(self):
        """Get the report as a flat dictionary."""
        return {
            'eta': self.eta,
            'R_short': self.R_short,
            'R_long': self.R_long,
            'R_interp': self.R_interp,
            'K_short': self.K_short,
            'K_long': self.K_long,
            'K_interp': self.K_interp,
            'KR_ratio': self.KR_ratio,
            'K_numeric': self.K_numeric,
        }


class RParameters(NamedTuple):
    """The ratio of single-particle to coincidence widths in the short and long pulse limits."""

    R_short: float
    R_long: float
    R_interp: float


def mismatch(nu1, nu2, cfg: PhysicalConfig):
    """Get the phase mismatch [1/m], ``[A (nu1 + nu2) - B (nu1 - nu2)^2 / omega0] / c``."""
    return (cfg.A * (nu1 + nu2) - cfg.B * (nu1 - nu2) ** 2 / cfg.omega0) / cfg.c


def phase_match_curve(nu2: float, cfg: PhysicalConfig) -> float:
    """Get the photon 1 detuning where the mismatch vanishes for a given photon 2 detuning.

    This is the root ``nu2 + 2a - 2 sqrt(a^2 + 2 a nu2)`` with ``a = A omega0 / (4 B)`` that passes through the
    origin. It is real for ``nu2 >= -A omega0 / (8 B)``.

    :raises OutOfBranch: if the quadratic has no real root
    """
    a = cfg.A * cfg.omega0 / (4 * cfg.B)
    radicand = a * a + 2 * a * nu2
    if radicand < 0:
        raise OutOfBranch(nu2, radicand)
    return nu2 - 4 * a * nu2 / (a + math.sqrt(radicand))


def phase_match_curve_approx(nu2, cfg: PhysicalConfig):
    """Get the small-detuning approximation ``-nu2 + 4 B nu2^2 / (A omega0)`` of :func:`phase_match_curve`."""
    return -nu2 + 4 * cfg.B * nu2 ** 2 / (cfg.A * cfg.omega0)


def phase_matched_sum(nu1, cfg: PhysicalConfig, exact: bool = True):
    """Get the frequency sum ``nu1 + nu2`` on the phase-matching curve for a given photon 1 detuning.

    The exact branch is ``[A omega0 + 4 B nu1 - sqrt(A^2 omega0^2 + 8 A B omega0 nu1)] / (2 B)``. Where its
    radicand is negative the result is ``nan``. The approximation is ``4 B nu1^2 / (A omega0)``.
    """
    nu1 = np.asarray(nu1, dtype=float)
    if not exact:
        return 4 * cfg.B * nu1 ** 2 / (cfg.A * cfg.omega0)
    a = cfg.A * cfg.omega0 / (4 * cfg.B)
    with np.errstate(invalid='ignore'):
        return 2 * nu1 - 4 * a * nu1 / (a + np.sqrt(a * a + 2 * a * nu1))


def jsa(nu1, nu2, cfg: PhysicalConfig):
    """Evaluate the two-photon spectral amplitude.

    The amplitude is real; it is returned as a complex array for uniformity with the temporal amplitude.
    """
    pump = np.exp(-(nu1 + nu2) ** 2 * cfg.tau ** 2 / (8 * LN2))
    return (pump * sinc(cfg.L * mismatch(nu1, nu2, cfg) / 2)).astype(complex)


def amplitude_grid(cfg: PhysicalConfig, grid: SpectralGrid) -> AmplitudeGrid:
    """Sample the two-photon amplitude on a grid."""
    nu1, nu2 = grid.mesh()
    return AmplitudeGrid(grid=grid, values=jsa(nu1, nu2, cfg))


def detuning_to_wavelength(nu, cfg: PhysicalConfig):
    """Convert a detuning [rad/s] to a vacuum wavelength [m]."""
    return 2 * math.pi * cfg.c / (cfg.omega0 / 2 + np.asarray(nu))


def wavelength_to_detuning(wavelength, cfg: PhysicalConfig):
    """Convert a vacuum wavelength [m] to a detuning [rad/s]."""
    return 2 * math.pi * cfg.c / np.asarray(wavelength) - cfg.omega0 / 2


def pump_width(cfg: PhysicalConfig) -> float:
    """Get the FWHM of the pump intensity spectrum [rad/s], ``4 ln 2 / tau``."""
    return 4 * LN2 / cfg.tau


def coincidence_width_short(cfg: PhysicalConfig) -> float:
    """Get the short-pulse coincidence FWHM [rad/s], ``2.78 * 2c / (A L)``."""
    return SINC2_FWHM * 2 * cfg.c / (cfg.A * cfg.L)


def coincidence_width_long(cfg: PhysicalConfig) -> float:
    """Get the long-pulse coincidence FWHM [rad/s], set by the pump."""
    return pump_width(cfg)


def coincidence_width_local(nu2: float, cfg: PhysicalConfig) -> float:
    """Get the short-pulse coincidence FWHM [rad/s] at a photon 2 detuning away from degeneracy.

    The slope of the mismatch in ``nu1`` at the phase-matched point is ``[A - 2 B (nu1* - nu2) / omega0] / c``,
    which reduces to ``A / c`` at ``nu2 = 0``.
    """
    nu1 = phase_match_curve(nu2, cfg)
    slope = abs(cfg.A - 2 * cfg.B * (nu1 - nu2) / cfg.omega0)
    return SINC2_FWHM * 2 * cfg.c / (cfg.L * slope)


def single_particle_width_short(cfg: PhysicalConfig) -> float:
    """Get the short-pulse single-particle FWHM [rad/s], ``sqrt(2 A ln2 omega0 / (B tau))``."""
    return math.sqrt(2 * cfg.A * LN2 * cfg.omega0 / (cfg.B * cfg.tau))


def single_particle_width_long(cfg: PhysicalConfig) -> float:
    """Get the long-pulse single-particle FWHM [rad/s], ``sqrt(2.78 c omega0 / (L B))``."""
    return math.sqrt(SINC2_FWHM * cfg.c * cfg.omega0 / (cfg.L * cfg.B))


def _to_curve(xs, ys, func, meta, axis: str, cfg: PhysicalConfig) -> Tuple[Curve, Callable[[float], float]]:
    """Wrap frequency samples into a normalized curve on the requested axis."""
    peak = float(np.max(ys))
    if not peak > 0:
        raise NoHalfCrossing('peak', 0.0)

    def normalized(nu):
        return func(nu) / peak

    if axis == FREQUENCY:
        return Curve(xs, ys / peak, meta=dict(meta, x='nu1', x_unit='rad/s')), (normalized if func is not None else None)
    if axis == WAVELENGTH:
        def by_wavelength(wavelength):
            return normalized(float(wavelength_to_detuning(wavelength, cfg)))

        wavelengths = detuning_to_wavelength(xs, cfg)[::-1]
        return (
            Curve(wavelengths, ys[::-1] / peak, meta=dict(meta, x='lambda1', x_unit='m')),
            by_wavelength if func is not None else None,
        )
    raise InvalidParameterError('axis', axis, 'must be {} or {}'.format(FREQUENCY, WAVELENGTH))


def _coincidence_window(nu2: float, cfg: PhysicalConfig) -> Axis:
    sinc_width = coincidence_width_local(nu2, cfg)
    pump = pump_width(cfg)
    if sinc_width <= pump:
        return Axis(center=phase_match_curve(nu2, cfg), half_width=6 * sinc_width)
    return Axis(center=-nu2, half_width=6 * pump)


def coincidence_spectrum(
    nu2: float,
    cfg: PhysicalConfig,
    window: Optional[Axis] = None,
    axis: str = FREQUENCY,
) -> Curve:
    """Get the photon 1 spectrum conditioned on photon 2 at detuning ``nu2``.

    :param nu2: The photon 2 detuning [rad/s]
    :param cfg: A physical configuration
    :param window: The photon 1 detunings to sample. Defaults to six widths around the peak.
    :param axis: ``frequency`` for a curve over nu1 [rad/s] or ``wavelength`` for one over lambda1 [m]
    :return: A normalized curve with its FWHM attached
    :raises NoHalfCrossing: if the window is still too narrow after widening
    """
    if window is None:
        window = _coincidence_window(nu2, cfg)

    def func(nu1):
        return abs(complex(jsa(nu1, nu2, cfg))) ** 2

    def build(w: Axis):
        xs = w.values
        ys = np.abs(jsa(xs, nu2, cfg)) ** 2
        meta = {'curve': 'coincidence', 'nu2': repr(float(nu2)), 'y': 'intensity', 'y_unit': '1'}
        return _to_curve(xs, ys, func, meta, axis, cfg)

    return widen_until_crossed(build, window, 'coincidence spectrum', max_widenings=MAX_WIDENINGS)


def _single_particle_numeric(nu1: np.ndarray, cfg: PhysicalConfig, tol: float) -> np.ndarray:
    """Integrate |psi|^2 over photon 2 for every photon 1 detuning at once.

    The integration variable is the frequency sum ``u = nu1 + nu2`` in units of the pump width. Beyond eight pump
    widths the pump factor is below exp(-170).
    """
    scale = pump_width(cfg)

    def integrand(s):
        u = s * scale
        return np.abs(jsa(nu1, u - nu1, cfg)) ** 2

    result, error, info = integrate.quad_vec(
        integrand, -8.0, 8.0,
        epsabs=tol,
        epsrel=tol,
        norm='max',
        points=[0.0],
        limit=2 ** 16,
        full_output=True,
    )
    if info.status != 0:
        raise NonConvergence('single-particle spectrum', 'error estimate {:.3g}'.format(error))
    return result * scale


def _single_particle_analytic(nu1, cfg: PhysicalConfig):
    eta = derive(cfg).eta
    if eta <= ANALYTIC_SHORT_MAX_ETA:
        radicand = cfg.A ** 2 * cfg.omega0 ** 2 + 8 * cfg.A * cfg.B * cfg.omega0 * np.asarray(nu1, dtype=float)
        total = phase_matched_sum(nu1, cfg)
        with np.errstate(invalid='ignore', divide='ignore'):
            value = np.exp(-total ** 2 * cfg.tau ** 2 / (4 * LN2)) / np.sqrt(radicand)
        return np.where(radicand > 0, value, 0.0)
    if eta >= ANALYTIC_LONG_MIN_ETA:
        return sinc(2 * cfg.L * cfg.B * np.asarray(nu1) ** 2 / (cfg.c * cfg.omega0)) ** 2
    raise AnalyticOutOfRegime(eta, ANALYTIC_SHORT_MAX_ETA, ANALYTIC_LONG_MIN_ETA)


def _single_particle_window(cfg: PhysicalConfig) -> Axis:
    eta = derive(cfg).eta
    estimate = math.hypot(
        single_particle_width_short(cfg) if eta < 1 else 0.0,
        single_particle_width_long(cfg),
    )
    return Axis(center=0.0, half_width=2 * estimate)


def single_particle_spectrum(
    cfg: PhysicalConfig,
    window: Optional[Axis] = None,
    method: str = 'numeric',
    axis: str = FREQUENCY,
    tol: float = 1e-6,
) -> Curve:
    """Get the photon 1 spectrum with photon 2 unobserved.

    :param cfg: A physical configuration
    :param window: The photon 1 detunings to sample. Defaults to four half-widths around the origin.
    :param method: ``numeric`` integrates |psi|^2 over photon 2; ``analytic`` uses the closed form of the short
        (eta <= 0.3) or long (eta >= 3) pulse limit
    :param axis: ``frequency`` or ``wavelength``
    :param tol: Quadrature tolerance of the numeric method
    :raises AnalyticOutOfRegime: if the analytic form is requested for 0.3 < eta < 3
    :raises NonConvergence: if the numeric integration fails
    """
    if window is None:
        window = _single_particle_window(cfg)

    if method == 'numeric':
        func = None  # samples are dense enough for the interpolant

        def sample(xs):
            return _single_particle_numeric(xs, cfg, tol)
    elif method == 'analytic':
        def func(nu1):
            return float(_single_particle_analytic(nu1, cfg))

        sample = lambda xs: _single_particle_analytic(xs, cfg)  # noqa: E731
    else:
        raise InvalidParameterError('method', method, 'must be numeric or analytic')

    def build(w: Axis):
        xs = w.values
        meta = {'curve': 'single', 'method': method, 'y': 'intensity', 'y_unit': '1'}
        return _to_curve(xs, sample(xs), func, meta, axis, cfg)

    return widen_until_crossed(build, window, 'single-particle spectrum', max_widenings=MAX_WIDENINGS)


def pump_spectrum(
    cfg: PhysicalConfig,
    window: Optional[Axis] = None,
    axis: str = FREQUENCY,
    nu2: float = 0.0,
) -> Curve:
    """Get the pump intensity spectrum seen by photon 1 with photon 2 at detuning ``nu2``.

    Over wavelength this is ``exp{-(pi^2 c^2 tau^2 / ln 2) (1/lambda1 + 1/lambda2 - 1/lambda0)^2}``.
    """
    if window is None:
        window = Axis(center=-nu2, half_width=3 * pump_width(cfg))

    def func(nu1):
        return math.exp(-(nu1 + nu2) ** 2 * cfg.tau ** 2 / (4 * LN2))

    def build(w: Axis):
        xs = w.values
        ys = np.exp(-(xs + nu2) ** 2 * cfg.tau ** 2 / (4 * LN2))
        meta = {'curve': 'pump', 'nu2': repr(float(nu2)), 'y': 'intensity', 'y_unit': '1'}
        return _to_curve(xs, ys, func, meta, axis, cfg)

    return widen_until_crossed(build, window, 'pump spectrum', max_widenings=MAX_WIDENINGS)


def crystal_factor(cfg: PhysicalConfig) -> float:
    """Get the crystal scale of the width ratio and the Schmidt number, ``(A / sqrt(B)) sqrt(L / lambda0)``."""
    return cfg.A / math.sqrt(cfg.B) * math.sqrt(cfg.L / cfg.lambda0)


def r_parameter(cfg: PhysicalConfig) -> RParameters:
    """Get the width ratio from the short- and long-pulse closed forms and their square-root interpolation."""
    eta = derive(cfg).eta
    factor = crystal_factor(cfg)
    r_short = R_SHORT_COEFFICIENT * factor / math.sqrt(eta)
    r_long = R_LONG_COEFFICIENT * factor * eta
    return RParameters(R_short=r_short, R_long=r_long, R_interp=math.hypot(r_short, r_long))


def r_unified(eta: float, cfg: PhysicalConfig) -> float:
    """Get the width ratio from the one-coefficient form ``0.75 (A / sqrt(B)) sqrt(L / lambda0) sqrt(eta^2 + 1/eta)``.

    Only the crystal constants of ``cfg`` are used.
    """
    return R_UNIFIED_COEFFICIENT * crystal_factor(cfg) * math.sqrt(eta ** 2 + 1 / eta)


def r_minimum(cfg: PhysicalConfig) -> Tuple[float, float]:
    """Get the control parameter minimizing the interpolated width ratio, and the minimum.

    With ``R^2 = a^2 / eta + b^2 eta^2`` the minimum sits at ``eta^3 = a^2 / (2 b^2)``, i.e. at ``2^(-1/3)`` when the
    two coefficients are equal.
    """
    a, b = R_SHORT_COEFFICIENT, R_LONG_COEFFICIENT
    eta0 = (a * a / (2 * b * b)) ** (1 / 3)
    value = crystal_factor(cfg) * math.sqrt(a * a / eta0 + b * b * eta0 * eta0)
    return eta0, value


def r_measured(cfg: PhysicalConfig, tol: float = 1e-6) -> float:
    """Get the width ratio from numerically measured single-particle and coincidence widths at ``nu2 = 0``."""
    single = single_particle_spectrum(cfg, method='numeric', tol=tol)
    coincidence = coincidence_spectrum(0.0, cfg)
    return single.width.width / coincidence.width.width
