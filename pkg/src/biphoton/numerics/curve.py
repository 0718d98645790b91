# -*- coding: utf-8 -*-

"""Sampled one-dimensional curves and their full width at half maximum."""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Optional

import numpy as np
from scipy import optimize

from .exc import NoHalfCrossing
from ..exceptions import InvalidParameterError

__all__ = [
    'Curve',
    'FwhmResult',
    'fwhm',
    'widen_until_crossed',
]

logger = logging.getLogger(__name__)

RealFunction = Callable[[float], float]


@dataclass(frozen=True)
class FwhmResult:
    """The full width at half maximum of a curve and where it was measured."""

    width: float
    x_left: float
    x_right: float
    peak_x: float
    peak_y: float


@dataclass(frozen=True)
class Curve:
    """A sampled real function on a strictly increasing axis.

    ``meta`` holds axis labels and units, e.g. ``{'x': 'nu1', 'x_unit': 'rad/s', 'y': 'intensity'}``, and ends up in
    the header of emitted files.
    """

    xs: np.ndarray
    ys: np.ndarray
    meta: Mapping[str, str] = field(default_factory=dict)
    width: Optional[FwhmResult] = None

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise InvalidParameterError('ys', ys.shape, 'must match xs {}'.format(xs.shape))
        if len(xs) < 3:
            raise InvalidParameterError('xs', len(xs), 'needs at least 3 samples')
        if not np.all(np.diff(xs) > 0):
            raise InvalidParameterError('xs', '...', 'must be strictly increasing')
        object.__setattr__(self, 'xs', xs)
        object.__setattr__(self, 'ys', ys)

    def __len__(self):
        return len(self.xs)

    def normalized(self) -> 'Curve':
        """Get a copy scaled so the maximum equals one."""
        peak = np.max(self.ys)
        if peak <= 0:
            raise InvalidParameterError('ys', peak, 'must have a positive maximum')
        return replace(self, ys=self.ys / peak, width=None)

    def with_width(self, func: Optional[RealFunction] = None) -> 'Curve':
        """Get a copy with the FWHM attached.

        :param func: The function the samples came from, already scaled like the samples. Used to refine the
            crossings and the peak.
        """
        return replace(self, width=fwhm(self, func=func))


def _refine_peak(xs, ys, i: int, func: RealFunction):
    if i == 0 or i == len(xs) - 1:
        return xs[i], ys[i]
    lo, hi = xs[i - 1], xs[i + 1]
    result = optimize.minimize_scalar(
        lambda x: -func(x),
        bounds=(lo, hi),
        method='bounded',
        options={'xatol': 1e-12 * (hi - lo)},
    )
    if -result.fun > ys[i]:
        return float(result.x), float(-result.fun)
    return xs[i], ys[i]


def _crossing(g: RealFunction, below: float, above: float, rtol: float) -> Optional[float]:
    """Find the half-maximum crossing between a sample below and a sample at or above half maximum."""
    if g(above) == 0:
        return above
    if g(below) >= 0 or g(above) < 0:  # refinement function disagrees with the samples
        return None
    lo, hi = min(below, above), max(below, above)
    return optimize.bisect(g, lo, hi, xtol=rtol * (hi - lo), maxiter=200)


def fwhm(curve: Curve, func: Optional[RealFunction] = None, rtol: float = 1e-10) -> FwhmResult:
    """Measure the full width at half maximum between the outermost half-maximum crossings.

    Plateau and multi-peaked curves report their total span. Each crossing is bracketed by the samples and refined
    by bisection on ``func`` when given, or on the linear interpolant of the samples otherwise.

    :param curve: A curve with a positive maximum
    :param func: Optional function the samples were taken from, on the same scale as ``curve.ys``
    :param rtol: Bisection tolerance relative to the bracketing sample interval
    :raises NoHalfCrossing: if the curve does not fall below half maximum at either end
    """
    xs, ys = curve.xs, curve.ys
    i_peak = int(np.argmax(ys))
    peak_x, peak_y = float(xs[i_peak]), float(ys[i_peak])
    if not peak_y > 0:
        raise NoHalfCrossing('peak', peak_y / 2)

    if func is not None:
        peak_x, peak_y = _refine_peak(xs, ys, i_peak, func)

    half = peak_y / 2
    above = np.flatnonzero(ys >= half)
    i_left, i_right = int(above[0]), int(above[-1])
    if i_left == 0:
        raise NoHalfCrossing('left', half)
    if i_right == len(xs) - 1:
        raise NoHalfCrossing('right', half)

    def interpolant(x):
        return float(np.interp(x, xs, ys)) - half

    if func is None:
        g = interpolant
    else:
        def g(x):
            return func(x) - half

    x_left = _crossing(g, xs[i_left - 1], xs[i_left], rtol)
    if x_left is None:
        x_left = _crossing(interpolant, xs[i_left - 1], xs[i_left], rtol)
    x_right = _crossing(g, xs[i_right + 1], xs[i_right], rtol)
    if x_right is None:
        x_right = _crossing(interpolant, xs[i_right + 1], xs[i_right], rtol)

    return FwhmResult(
        width=float(x_right - x_left),
        x_left=float(x_left),
        x_right=float(x_right),
        peak_x=float(peak_x),
        peak_y=float(peak_y),
    )


def widen_until_crossed(build: Callable, window, stage: str, max_widenings: int = 3) -> Curve:
    """Build a curve and measure its width, widening the window until both half-maximum crossings are inside.

    :param build: A function of the window returning a pair (curve, refinement function or None)
    :param window: Anything with a ``widened()`` method and a ``half_width`` attribute
    :param stage: A name for log messages
    :raises NoHalfCrossing: if the crossings are still outside after ``max_widenings`` doublings
    """
    for _ in range(max_widenings):
        curve, func = build(window)
        try:
            return curve.with_width(func)
        except NoHalfCrossing:
            logger.debug('%s: widening window from %.4g to %.4g', stage, window.half_width, 2 * window.half_width)
            window = window.widened()
    curve, func = build(window)
    return curve.with_width(func)
