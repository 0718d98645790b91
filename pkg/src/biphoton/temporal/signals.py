# -*- coding: utf-8 -*-

"""Temporal signals read off the exit-face wave function.

- :func:`diagonal_profile`: ``|psi(t, t)|^2``, photons arriving together
- :func:`coincidence_signal`: ``|psi(t1, t2)|^2`` over photon 1 with photon 2 detected at a fixed time
- :func:`single_particle_signal`: ``|psi(t1, t2)|^2`` integrated over photon 2
"""

import logging
from typing import Optional

import numpy as np
from scipy import integrate

from .approximations import region_three_scale, region_two_half_width
from .exit_face import TemporalPacket, default_axis, psi_exit_points, psi_exit_table, temporal_packet
from .long_pulse import coincidence_width_long_pulse
from ..exceptions import InvalidParameterError
from ..numerics import Curve, NoHalfCrossing, widen_until_crossed
from ..params import PhysicalConfig
from ..spectral import Axis

__all__ = [
    'MAX_SIGNAL_POINTS',
    'diagonal_profile',
    'coincidence_signal',
    'coincidence_window',
    'single_particle_signal',
]

logger = logging.getLogger(__name__)

#: Largest square grid integrated for the single-particle signal
MAX_SIGNAL_POINTS = 2048

#: Samples of a coincidence signal
COINCIDENCE_POINTS = 801


def _normalized(xs, ys, func, meta):
    peak = float(np.max(ys))
    if not peak > 0:
        raise NoHalfCrossing('peak', 0.0)

    def normalized(x):
        return func(x) / peak

    return Curve(xs, ys / peak, meta=meta), normalized


def _axis_of(values: np.ndarray) -> Axis:
    return Axis(center=(values[0] + values[-1]) / 2, half_width=(values[-1] - values[0]) / 2, points=len(values))


def diagonal_profile(cfg: PhysicalConfig, window: Optional[Axis] = None) -> Curve:
    """Get the probability of both photons leaving at the same time ``t``, normalized to its peak.

    For short pulses it shows a plateau rising as ``1 / (LA - c t)`` to a sharp peak near the walk-off delay
    ``LA / c``, then a rapid turn-off.

    :param cfg: A physical configuration
    :param window: The shifted times to sample [s]. Defaults to the axis of :func:`temporal_packet`.
    """
    if window is None:
        window = _axis_of(default_axis(cfg))

    def func(t):
        return abs(complex(psi_exit_points(t, 0.0, cfg))) ** 2

    def build(w: Axis):
        ts = w.values
        ys = np.abs(psi_exit_table(ts, [0.0], cfg)[:, 0]) ** 2
        meta = {'curve': 'diagonal', 'x': 't', 'x_unit': 's', 'y': 'intensity', 'y_unit': '1'}
        return _normalized(ts, ys, func, meta)

    return widen_until_crossed(build, window, 'diagonal profile')


def coincidence_window(t2: float, cfg: PhysicalConfig) -> Axis:
    """Get a photon 1 window wide enough for the coincidence signal at ``t2``.

    The width estimate is the largest of the region II line, the region III scale and the long-pulse width.
    """
    estimate = max(
        2 * max(float(region_two_half_width(t2, cfg)), 0.0),
        2 * region_three_scale(cfg),
        coincidence_width_long_pulse(cfg),
    )
    return Axis(center=t2, half_width=3 * estimate, points=COINCIDENCE_POINTS)


def coincidence_signal(t2: float, cfg: PhysicalConfig, window: Optional[Axis] = None) -> Curve:
    """Get the arrival-time distribution of photon 1 given photon 2 at shifted time ``t2``.

    :param t2: Photon 2 time [s]
    :param cfg: A physical configuration
    :param window: The photon 1 times to sample [s], widened as needed. Defaults to :func:`coincidence_window`.
    :return: A normalized curve with its FWHM attached
    """
    if window is None:
        window = coincidence_window(t2, cfg)

    def func(t1):
        return abs(complex(psi_exit_points((t1 + t2) / 2, t1 - t2, cfg))) ** 2

    def build(w: Axis):
        t1s = w.values
        ys = np.abs(psi_exit_points((t1s + t2) / 2, t1s - t2, cfg)) ** 2
        meta = {'curve': 'coincidence', 't2': repr(float(t2)), 'x': 't1', 'x_unit': 's', 'y': 'intensity',
                'y_unit': '1'}
        return _normalized(t1s, ys, func, meta)

    return widen_until_crossed(build, window, 'coincidence signal')


def single_particle_signal(
    cfg: PhysicalConfig,
    packet: Optional[TemporalPacket] = None,
    points: Optional[int] = None,
    use_tqdm: bool = False,
) -> Curve:
    """Get the arrival-time distribution of photon 1 with photon 2 unobserved.

    Every row of a square grid is integrated over photon 2 with the trapezoidal rule.

    :param cfg: A physical configuration
    :param packet: A precomputed grid. Sampled with :func:`temporal_packet` if not given.
    :param points: Samples per axis of the grid, at most 2048
    :param use_tqdm: Show a progress bar while sampling
    """
    if packet is None:
        if points is not None and points > MAX_SIGNAL_POINTS:
            raise InvalidParameterError('points', points, 'must be at most {}'.format(MAX_SIGNAL_POINTS))
        packet = temporal_packet(cfg, points=points, use_tqdm=use_tqdm)

    ys = integrate.trapezoid(np.abs(packet.values) ** 2, packet.t2s, axis=1)
    peak = float(np.max(ys))
    if not peak > 0:
        raise NoHalfCrossing('peak', 0.0)
    meta = {'curve': 'single', 'x': 't1', 'x_unit': 's', 'y': 'intensity', 'y_unit': '1'}
    return Curve(packet.t1s, ys / peak, meta=meta).with_width()
