# -*- coding: utf-8 -*-

"""The long-pulse limit of the exit-face wave function.

When the pump is much longer than the walk-off delay its envelope is nearly constant across the crystal and the
wave function factorizes into the pump envelope in t+ and a universal correlation factor in t-:

    F(t-) = 1 + sqrt(i pi) exp(i x^2) |x| [-1 + erf(sqrt(i) |x|)],    x = t- / tau0

with ``tau0 = sqrt(8 B lambda0 L / pi) / c``. The intensity ``|F|^2`` has a full width at half maximum of ``0.555``
in units of ``tau0``.
"""

import logging
import math
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .exit_face import LongPulsePacket
from ..constants import LN2, LONG_PULSE_FWHM
from ..exceptions import InvalidParameterError, ShortPulseRegime
from ..numerics import Curve, erf_complex
from ..params import PhysicalConfig, derive
from ..schmidt import k_analytic
from ..spectral import r_parameter

__all__ = [
    'RT_MIN_ETA',
    'RtParameters',
    'long_pulse_factor',
    'long_pulse_profile',
    'pump_envelope',
    'factorized_packet',
    'coincidence_width_long_pulse',
    'rt_parameter',
]

logger = logging.getLogger(__name__)

#: The temporal width ratio is defined for eta at or above this
RT_MIN_ETA = 3.0

#: Correspondence of the temporal width ratio with the spectral R and the Schmidt number for long pulses
RT_PER_R_LONG = 0.75
RT_PER_K_LONG = 0.94

_SQRT_I = np.exp(0.25j * np.pi)


class RtParameters(NamedTuple):
    """The temporal width ratio with its long-pulse spectral and Schmidt counterparts."""

    #: Single-particle duration over coincidence width, ``tau / (0.555 tau0)``
    R_t: float
    #: ``0.75 R_long``
    R_long_scaled: float
    #: ``0.94 K_long``
    K_long_scaled: float


def long_pulse_factor(t_minus, cfg: PhysicalConfig):
    """Evaluate the long-pulse correlation factor F(t-).

    :param t_minus: Time difference(s) [s]
    :param cfg: A physical configuration. Only ``tau0`` is used.
    :return: F, with F(0) = 1
    """
    x = np.abs(np.asarray(t_minus, dtype=float)) / derive(cfg).tau0
    value = 1 + math.sqrt(math.pi) * _SQRT_I * np.exp(1j * x * x) * x * (-1 + np.asarray(erf_complex(_SQRT_I * x)))
    return value if np.ndim(value) else complex(value)


def long_pulse_profile(cfg: PhysicalConfig, half_width: float = 3.0, points: int = 601) -> Curve:
    """Get |F|^2 on the dimensionless axis ``t- / tau0`` with its FWHM attached."""
    tau0 = derive(cfg).tau0
    xs = np.linspace(-half_width, half_width, points)

    def func(x):
        return abs(long_pulse_factor(x * tau0, cfg)) ** 2

    ys = np.abs(long_pulse_factor(xs * tau0, cfg)) ** 2
    meta = {'curve': 'long_pulse_factor', 'x': 't_minus/tau0', 'x_unit': '1', 'y': '|F|^2', 'y_unit': '1'}
    return Curve(xs, ys, meta=meta).with_width(func)


def pump_envelope(t_plus, cfg: PhysicalConfig):
    """Get the pump intensity envelope ``exp(-4 ln 2 t^2 / tau^2)``."""
    return np.exp(-4 * LN2 * (np.asarray(t_plus, dtype=float) / cfg.tau) ** 2)


def factorized_packet(
    cfg: PhysicalConfig,
    t_plus: Sequence[float],
    t_minus: Sequence[float],
    delay: Optional[float] = None,
) -> LongPulsePacket:
    """Build the product model of the long-pulse intensity on a rotated grid.

    :param delay: Shift of the pump envelope in t+ [s]. Defaults to the mean walk-off delay ``LA / (2c)``, the
        center of the crystal.
    :return: A packet whose values are the real amplitudes ``sqrt(G(t+ - delay)) |F(t-)|``
    """
    if delay is None:
        delay = cfg.L * cfg.A / (2 * cfg.c)
    t_plus = np.asarray(t_plus, dtype=float)
    t_minus = np.asarray(t_minus, dtype=float)
    envelope = np.sqrt(pump_envelope(t_plus - delay, cfg))
    factor = np.abs(long_pulse_factor(t_minus, cfg))
    return LongPulsePacket(t_plus=t_plus, t_minus=t_minus, values=np.outer(envelope, factor))


def coincidence_width_long_pulse(cfg: PhysicalConfig) -> float:
    """Get the long-pulse coincidence width ``0.555 tau0`` [s], the same at every photon 2 time."""
    return LONG_PULSE_FWHM * derive(cfg).tau0


def rt_parameter(cfg: PhysicalConfig, min_eta: float = RT_MIN_ETA) -> RtParameters:
    """Get the ratio of the single-particle duration to the coincidence width for long pulses.

    The single-particle signal follows the pump and lasts ``tau``; the coincidence width is ``0.555 tau0``. Between
    ``eta = 1`` and :data:`RT_MIN_ETA` the long-pulse widths are already close (the 2 ps pump on the 0.5 cm LiIO3
    crystal, ``eta ~ 1.4``, gives ``R_t ~ 58``) and a caller can lower ``min_eta`` to accept them.

    :param cfg: A physical configuration
    :param min_eta: The smallest accepted eta
    :raises ShortPulseRegime: if eta < min_eta, where the temporal ratio does not track the entanglement
    :raises InvalidParameterError: if min_eta is below one, which is the short-pulse regime
    """
    if not min_eta >= 1:
        raise InvalidParameterError('min_eta', min_eta, 'must be at least 1')
    eta = derive(cfg).eta
    if eta < min_eta:
        raise ShortPulseRegime(eta, min_eta)
    r_t = cfg.tau / coincidence_width_long_pulse(cfg)
    return RtParameters(
        R_t=r_t,
        R_long_scaled=RT_PER_R_LONG * r_parameter(cfg).R_long,
        K_long_scaled=RT_PER_K_LONG * k_analytic(cfg).K_long,
    )
