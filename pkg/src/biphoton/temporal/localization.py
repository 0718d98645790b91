# -*- coding: utf-8 -*-

"""The localization region of the exit-face wave function in the (t+, t-) plane.

At every t+ the half-maximum crossings ``t-(+)`` and ``t-(-)`` of ``|psi|^2`` over t- are measured numerically.
The resulting borders fall into three regions with different shapes: region I right after the pump enters the
crystal, region II with the pump deep inside and region III as it leaves. Each region has an analytic line that is
returned alongside the measurement.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .approximations import (
    region_of, region_one_half_width, region_three_scale, region_three_width, region_two_half_width,
    single_duration_analytic,
)
from .exit_face import psi_exit_points
from .long_pulse import coincidence_width_long_pulse
from ..exceptions import InvalidParameterError
from ..numerics import Curve, NoHalfCrossing, widen_until_crossed
from ..params import PhysicalConfig, derive
from ..spectral import Axis

__all__ = [
    'LocalizationBoundary',
    't_minus_profile',
    'zero_plus_width_measured',
    'localization_boundaries',
]

logger = logging.getLogger(__name__)

PROFILE_POINTS = 401
DEFAULT_SAMPLES = 57

#: Relative asymmetry allowed between the upper and lower borders
SYMMETRY_RTOL = 1e-6


@dataclass(frozen=True)
class LocalizationBoundary:
    """Measured borders of the localization region with the analytic half-widths of each region."""

    t_plus: np.ndarray
    t_minus_upper: np.ndarray
    t_minus_lower: np.ndarray
    region_tags: Tuple[str, ...]
    #: Region I line, ``(LA / (c sqrt(a))) (1 - 0.24 sqrt(2 ln 2) t+ / tau)``
    region_one: np.ndarray
    #: Region II line, proportional to ``LA - c t+``
    region_two: np.ndarray
    #: Region III estimate, NaN while the pump peak is inside the crystal
    region_three: np.ndarray

    def __post_init__(self):
        if len(self.region_tags) != len(self.t_plus):
            raise InvalidParameterError('region_tags', len(self.region_tags), 'must have one tag per t+')
        if np.any(self.t_minus_upper < self.t_minus_lower):
            raise InvalidParameterError('t_minus_upper', '...', 'must not be below t_minus_lower')
        asymmetry = np.abs(self.t_minus_upper + self.t_minus_lower)
        if np.any(asymmetry > SYMMETRY_RTOL * (self.t_minus_upper - self.t_minus_lower) + 1e-18):
            raise InvalidParameterError('t_minus_upper', '...', 'must mirror t_minus_lower')

    @property
    def widths(self) -> np.ndarray:
        """The full width in t- at every t+ [s]."""
        return self.t_minus_upper - self.t_minus_lower


def _half_width_estimate(t_plus: float, cfg: PhysicalConfig) -> float:
    return max(
        float(region_one_half_width(t_plus, cfg)),
        float(region_two_half_width(t_plus, cfg)),
        region_three_scale(cfg),
        coincidence_width_long_pulse(cfg) / 2,
    )


def t_minus_profile(t_plus: float, cfg: PhysicalConfig, window: Optional[Axis] = None) -> Curve:
    """Get ``|psi|^2`` over t- at a fixed t+, normalized, with its FWHM attached.

    :param window: The t- samples [s]. Defaults to three estimated half-widths on each side.
    """
    if window is None:
        window = Axis(center=0.0, half_width=3 * _half_width_estimate(t_plus, cfg), points=PROFILE_POINTS)

    def build(w: Axis):
        ts = w.values
        ys = np.abs(psi_exit_points(t_plus, ts, cfg)) ** 2
        peak = float(np.max(ys))
        if not peak > 0:
            raise NoHalfCrossing('peak', 0.0)

        def func(t_minus):
            return abs(complex(psi_exit_points(t_plus, t_minus, cfg))) ** 2 / peak

        meta = {'curve': 't_minus_profile', 't_plus': repr(float(t_plus)), 'x': 't_minus', 'x_unit': 's',
                'y': 'intensity', 'y_unit': '1'}
        return Curve(ts, ys / peak, meta=meta), func

    return widen_until_crossed(build, window, 't- profile at t+={:.4g}'.format(t_plus))


def zero_plus_width_measured(cfg: PhysicalConfig) -> float:
    """Measure the full width in t- of the localization region at t+ = 0 [s].

    This is also the duration of the rising front of the single-particle signal.
    """
    return t_minus_profile(0.0, cfg).width.width


def _default_samples(cfg: PhysicalConfig) -> np.ndarray:
    return np.linspace(0.0, single_duration_analytic(cfg) + 2 * cfg.tau, DEFAULT_SAMPLES)


def localization_boundaries(
    cfg: PhysicalConfig,
    t_plus_samples: Optional[Sequence[float]] = None,
    use_tqdm: bool = False,
) -> LocalizationBoundary:
    """Measure the borders of the localization region and tag every t+ with its region.

    :param cfg: A short-pulse configuration
    :param t_plus_samples: The t+ values [s]. Defaults to 57 points from the entrance of the pump to two pulse
        lengths after it leaves the crystal.
    :param use_tqdm: Show a progress bar
    """
    if derive(cfg).eta >= 1:
        logger.warning('region structure of the localization diagram is a short-pulse feature (eta=%.3g)',
                       derive(cfg).eta)

    t_plus = _default_samples(cfg) if t_plus_samples is None else np.asarray(t_plus_samples, dtype=float)
    it = tqdm(t_plus, desc='Localization', leave=False) if use_tqdm else t_plus

    upper, lower = [], []
    for value in it:
        width = t_minus_profile(float(value), cfg).width
        upper.append(width.x_right)
        lower.append(width.x_left)

    walk_off = cfg.L * cfg.A
    outside = cfg.c * t_plus > walk_off
    region_three = np.full(len(t_plus), np.nan)
    if np.any(outside):
        region_three[outside] = region_three_width(t_plus[outside], cfg)

    return LocalizationBoundary(
        t_plus=t_plus,
        t_minus_upper=np.array(upper),
        t_minus_lower=np.array(lower),
        region_tags=tuple(region_of(float(value), cfg) for value in t_plus),
        region_one=np.asarray(region_one_half_width(t_plus, cfg), dtype=float),
        region_two=np.asarray(region_two_half_width(t_plus, cfg), dtype=float),
        region_three=region_three,
    )
