# -*- coding: utf-8 -*-

"""Closed-form approximations of the exit-face wave function and of the localization region.

For short pulses the pump envelope selects a thin slice of the crystal around ``z0 = c t+ / A``. Freezing the
square-root weight at ``z0`` and linearizing ``1 / (L - z)`` around it turns the integral into a Gaussian with finite
limits:

    psi ~ C / sqrt(LA - c t+) exp(i phi) [erf(X - iy) - erf(Y - iy)] exp(-y^2)

with ``X = sqrt(2 ln 2) (AL - c t+) / (c tau)``, ``Y = -sqrt(2 ln 2) t+ / tau`` and
``y = a (c t- / (LA - c t+))^2``. Far from both crystal faces the error functions become +1 and -1. Both forms keep
the normalization of the exact integral, so they can be compared with it directly.

The remaining functions give the half-widths of the localization region in the three regions of the (t+, t-) plane
and the durations read off them.
"""

import logging
import math

import numpy as np

from ..constants import LN2
from ..exceptions import ApproxOutOfDomain, RegionMismatch
from ..numerics import erf_damped
from ..params import PhysicalConfig, derive

__all__ = [
    'ERF',
    'EXP',
    'REGION_I',
    'REGION_II',
    'REGION_III',
    'psi_exit_erf',
    'psi_exit_exp',
    'single_duration_analytic',
    'region_one_half_width',
    'region_two_half_width',
    'region_crossing',
    'region_of',
    'zero_plus_width',
    'front_wing_analytic',
    'coincidence_width_analytic',
    'region_three_scale',
    'region_three_width',
]

logger = logging.getLogger(__name__)

ERF = 'erf'
EXP = 'exp'

REGION_I = 'I'
REGION_II = 'II'
REGION_III = 'III'

#: The approximations need the pump this many pulse lengths away from a crystal face
CRITERION_MARGIN = 3.0

#: Relative fall of the region I half-width per unit of sqrt(2 ln 2) t+ / tau
REGION_ONE_SLOPE = 0.24


def _prefactor(cfg: PhysicalConfig) -> float:
    return math.sqrt(cfg.A) * (cfg.c * cfg.tau / cfg.A) * math.sqrt(math.pi / (2 * LN2)) / 2


def _slice_terms(t1, t2, cfg: PhysicalConfig, method: str):
    """Get t+, the distance LA - c t+ and the damped-erf imaginary part y, checking the validity criterion."""
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    t_plus = (t1 + t2) / 2
    t_minus = t1 - t2
    distance = cfg.L * cfg.A - cfg.c * t_plus

    short = distance < CRITERION_MARGIN * cfg.c * cfg.tau
    if np.any(short):
        bad = float(np.ravel(t_plus)[np.argmax(np.ravel(short))])
        raise ApproxOutOfDomain(method, bad, 'needs LA - c t+ >= 3 c tau')
    if method == EXP:
        early = t_plus < CRITERION_MARGIN * cfg.tau
        if np.any(early):
            bad = float(np.ravel(t_plus)[np.argmax(np.ravel(early))])
            raise ApproxOutOfDomain(method, bad, 'needs t+ >= 3 tau')

    a_const = derive(cfg).a_const
    y = a_const * (cfg.c * t_minus / distance) ** 2
    beta = math.pi * cfg.c ** 2 * t_minus ** 2 / (8 * cfg.B * cfg.lambda0)
    phase = beta * cfg.A / distance
    return t_plus, distance, y, phase


def psi_exit_erf(t1, t2, cfg: PhysicalConfig):
    """Evaluate the two-error-function approximation of the exit-face wave function.

    :param t1: Shifted arrival time(s) of photon 1 [s]
    :param t2: Shifted arrival time(s) of photon 2 [s]
    :raises ApproxOutOfDomain: if the pump is within three pulse lengths of the exit face
    """
    t_plus, distance, y, phase = _slice_terms(t1, t2, cfg, ERF)
    upper = math.sqrt(2 * LN2) * distance / (cfg.c * cfg.tau)
    lower = -math.sqrt(2 * LN2) * t_plus / cfg.tau
    value = (
        _prefactor(cfg) / np.sqrt(distance) * np.exp(1j * phase)
        * (erf_damped(upper - 1j * y) - erf_damped(lower - 1j * y))
    )
    return value if np.ndim(value) else complex(value)


def psi_exit_exp(t1, t2, cfg: PhysicalConfig):
    """Evaluate the Gaussian-tail approximation valid with the pump deep inside the crystal.

    :raises ApproxOutOfDomain: if the pump is within three pulse lengths of either crystal face
    """
    _, distance, y, phase = _slice_terms(t1, t2, cfg, EXP)
    value = 2 * _prefactor(cfg) / np.sqrt(distance) * np.exp(1j * phase - y ** 2)
    return value if np.ndim(value) else complex(value)


def single_duration_analytic(cfg: PhysicalConfig) -> float:
    """Get the total duration of the single-particle signal, the walk-off delay ``LA / c`` [s]."""
    return cfg.L * cfg.A / cfg.c


def region_one_half_width(t_plus, cfg: PhysicalConfig):
    """Get the half-width in t- of the localization region just after the pump enters the crystal.

    ``(LA / (c sqrt(a))) (1 - 0.24 sqrt(2 ln 2) t+ / tau)``
    """
    a_const = derive(cfg).a_const
    head = cfg.L * cfg.A / (cfg.c * math.sqrt(a_const))
    return head * (1 - REGION_ONE_SLOPE * math.sqrt(2 * LN2) * np.asarray(t_plus) / cfg.tau)


def _region_two_slope(cfg: PhysicalConfig) -> float:
    return 4 / cfg.c * math.sqrt(LN2 * cfg.B * cfg.lambda0 / (math.pi * cfg.A * cfg.c * cfg.tau))


def region_two_half_width(t_plus, cfg: PhysicalConfig):
    """Get the half-width in t- of the localization region with the pump deep in the crystal.

    ``(4 / c) sqrt(ln 2 B lambda0 / (pi A c tau)) (LA - c t+)``
    """
    return _region_two_slope(cfg) * (cfg.L * cfg.A - cfg.c * np.asarray(t_plus))


def region_crossing(cfg: PhysicalConfig) -> float:
    """Get the t+ [s] where the region I and region II half-widths are equal."""
    a_const = derive(cfg).a_const
    head = cfg.L * cfg.A / (cfg.c * math.sqrt(a_const))
    fall = head * REGION_ONE_SLOPE * math.sqrt(2 * LN2) / cfg.tau
    slope = _region_two_slope(cfg)
    return (head - slope * cfg.L * cfg.A) / (fall - slope * cfg.c)


def region_of(t_plus: float, cfg: PhysicalConfig) -> str:
    """Tag a t+ with the region of the localization diagram it belongs to.

    Region I ends where the region I and II half-widths cross. Region III starts where the pump is less than three
    pulse lengths from the exit face.
    """
    if cfg.L * cfg.A - cfg.c * t_plus < CRITERION_MARGIN * cfg.c * cfg.tau:
        return REGION_III
    if t_plus < region_crossing(cfg):
        return REGION_I
    return REGION_II


def zero_plus_width(cfg: PhysicalConfig) -> float:
    """Get the full width in t- of the localization region at t+ = 0, ``2 LA / (c sqrt(a))`` [s]."""
    return 2 * float(region_one_half_width(0.0, cfg))


def front_wing_analytic(cfg: PhysicalConfig) -> float:
    """Get the duration of the rising front of the single-particle signal [s].

    ``8 L (2 ln 2)^(1/4) sqrt(A B lambda0) / (c sqrt(pi c tau))``, equal to :func:`zero_plus_width`.
    """
    return (
        8 * cfg.L * (2 * LN2) ** 0.25 * math.sqrt(cfg.A * cfg.B * cfg.lambda0)
        / (cfg.c * math.sqrt(math.pi * cfg.c * cfg.tau))
    )


def coincidence_width_analytic(t2: float, cfg: PhysicalConfig) -> float:
    """Get the width of the coincidence signal of photon 1 with photon 2 detected at ``t2`` [s].

    ``(8 / c) sqrt(B lambda0 ln 2 / (pi A c tau)) (LA - c t2)``. The line holds from the end of region I up to the
    apex ``t2 = LA / c`` where it closes.

    :raises RegionMismatch: if ``t2`` is before the region I/II crossing or after the apex
    """
    apex = single_duration_analytic(cfg)
    if t2 < region_crossing(cfg) or t2 > apex:
        raise RegionMismatch(REGION_II, t2)
    return 2 * float(region_two_half_width(t2, cfg))


def region_three_scale(cfg: PhysicalConfig) -> float:
    """Get the half-width scale in t- where region III begins, ``sqrt(B lambda0 tau / (c A))`` [s]."""
    return math.sqrt(cfg.B * cfg.lambda0 * cfg.tau / (cfg.c * cfg.A))


def region_three_width(t_plus, cfg: PhysicalConfig):
    """Estimate the half-width in t- once the pump peak has left the crystal.

    ``tau sqrt(B lambda0 / (A (c t+ - LA)))``. This is an order-of-magnitude estimate: only its scaling is
    meaningful.

    :raises RegionMismatch: if the pump peak is still inside the crystal
    """
    excess = cfg.c * np.asarray(t_plus, dtype=float) - cfg.L * cfg.A
    if np.any(excess <= 0):
        raise RegionMismatch(REGION_III, float(np.min(t_plus)))
    value = cfg.tau * np.sqrt(cfg.B * cfg.lambda0 / (cfg.A * excess))
    return value if np.ndim(value) else float(value)
