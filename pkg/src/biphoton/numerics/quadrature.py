# -*- coding: utf-8 -*-

"""Adaptive and fixed-panel quadrature.

:func:`integrate_1d` is a thin wrapper around :func:`scipy.integrate.quad_vec`, a globally adaptive
Gauss-Kronrod (21-point) rule with interval bisection. It is deterministic, accepts real or complex scalar and
vector integrands, and turns an exhausted subdivision budget into :class:`NonConvergence`.
"""

import logging
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from .exc import NonConvergence
from .special import sinc
from ..exceptions import InvalidParameterError

__all__ = [
    'integrate_1d',
    'panel_rule',
    'geometric_edges',
    'sinc_convolution_check',
]

logger = logging.getLogger(__name__)

#: Default subdivision budget of :func:`integrate_1d`
DEFAULT_LIMIT = 2 ** 20

Value = Union[float, complex, np.ndarray]


def integrate_1d(
    f: Callable[[float], Value],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    points: Optional[Sequence[float]] = None,
    limit: int = DEFAULT_LIMIT,
) -> Value:
    """Integrate ``f`` over ``[lo, hi]`` to an estimated absolute error of about ``tol * (1 + |result|)``.

    :param f: A function of one real variable returning a real or complex scalar or array
    :param lo: Lower limit
    :param hi: Upper limit
    :param tol: Absolute and relative tolerance
    :param points: Interior break points (singularities, peaks) the rule must not straddle
    :param limit: The maximum number of subintervals
    :raises NonConvergence: if the subdivision budget is exhausted or the integrand is not finite
    """
    first = np.asarray(f(0.5 * (lo + hi)))
    is_complex = np.iscomplexobj(first)

    if is_complex:
        def g(x):
            value = np.asarray(f(x))
            return np.stack([value.real, value.imag])
    else:
        g = f

    if points is not None:
        points = [p for p in points if lo < p < hi]

    result, error, info = integrate.quad_vec(
        g, lo, hi,
        epsabs=tol,
        epsrel=tol,
        norm='max',
        limit=limit,
        points=points or None,
        full_output=True,
    )
    if info.status != 0:
        detail = 'subdivision limit reached' if info.status == 1 else 'non-finite integrand'
        raise NonConvergence('quadrature on [{:.6g}, {:.6g}]'.format(lo, hi), '{} (error {:.3g})'.format(detail, error))

    logger.debug('quadrature on [%g, %g] used %d intervals, error %.3g', lo, hi, info.intervals.shape[0], error)

    if is_complex:
        result = result[0] + 1j * result[1]
    if np.ndim(result) == 0:
        return complex(result) if is_complex else float(result)
    return result


def geometric_edges(lo: float, hi: float, ratio: float = 0.98) -> np.ndarray:
    """Build increasing panel edges on ``[lo, hi]`` that are geometric in the variable itself.

    The edges are ``hi * ratio^k`` down to the first one above ``lo``, so each panel is ``1 - ratio`` of its upper
    edge wide and there are about ``log(lo / hi) / log(ratio)`` of them. The innermost panel is closed at ``lo``
    and merged into its neighbour when it would be less than half the regular width.

    :raises InvalidParameterError: unless ``0 < lo < hi`` and ``0 < ratio < 1``
    """
    if not 0 < lo < hi:
        raise InvalidParameterError('lo', lo, 'must satisfy 0 < lo < hi = {:g}'.format(hi))
    if not 0 < ratio < 1:
        raise InvalidParameterError('ratio', ratio, 'must be in (0, 1)')

    count = max(int(np.ceil(np.log(lo / hi) / np.log(ratio))), 1)
    edges = hi * ratio ** np.arange(count)
    edges = edges[edges > lo]
    if len(edges) > 1 and edges[-1] - lo < 0.5 * (1 - ratio) * edges[-1]:
        edges = edges[:-1]
    return np.append(edges, lo)[::-1]


def panel_rule(edges: Sequence[float], order: int = 24) -> Tuple[np.ndarray, np.ndarray]:
    """Get nodes and weights of a composite Gauss-Legendre rule on the given panel edges.

    :param edges: Increasing panel edges
    :param order: Number of Gauss-Legendre points per panel
    :return: A pair of flat arrays (nodes, weights)
    """
    edges = np.asarray(edges, dtype=float)
    x, w = leggauss(order)
    left, right = edges[:-1, None], edges[1:, None]
    half = 0.5 * (right - left)
    nodes = (left + right) / 2 + half * x[None, :]
    weights = half * w[None, :]
    return nodes.ravel(), weights.ravel()


def sinc_convolution_check(y: float, half_width: float = 500.0, tol: float = 1e-10) -> float:
    """Evaluate the integral of sinc(x) sinc(x + y) over the real line.

    The integral is taken on ``[-half_width, half_width]`` and completed with the averaged tail
    ``cos(y) / half_width``. The result should equal ``pi * sinc(y)``.
    """
    n = int(np.ceil(2 * half_width / np.pi))
    points = np.linspace(-half_width, half_width, n + 1)[1:-1]
    value = integrate_1d(
        lambda x: sinc(x) * sinc(x + y),
        -half_width,
        half_width,
        tol=tol,
        points=points,
    )
    return value + np.cos(y) / half_width
