# -*- coding: utf-8 -*-

"""The two-time wave function of the photon pair at the exit face of the crystal.

In the shifted times ``t1, t2`` (zero is when a photon born with the pump peak at the entrance face and moving at
its group velocity leaves the crystal), with ``t+ = (t1 + t2) / 2`` and ``t- = t1 - t2``,

    psi(t1, t2) = integral over z in [0, L] of G(z) exp(i beta / (L - z)) / sqrt(L - z)

with the pump overlap ``G(z) = exp(-(2 ln 2 / (c tau)^2) (A z - c t+)^2)`` and ``beta = pi c^2 t-^2 / (8 B lambda0)``.

The substitution ``u = sqrt(L - z)`` removes the inverse square root and leaves ``2 G(L - u^2) exp(i beta / u^2)``.
Below the split point ``u_s``, where the phase ``beta / u^2`` exceeds :data:`biphoton.constants.PHASE_THRESHOLD`,
the overlap is frozen at ``G(L - u_s^2)`` and the oscillation is integrated in closed form by
:func:`biphoton.numerics.fresnel_tail`. Above it the integral is done numerically:

- :func:`psi_exit` evaluates one point with adaptive quadrature.
- :func:`psi_exit_points` and :func:`psi_exit_table` use a fixed composite Gauss-Legendre rule on panels that shrink
  geometrically toward the exit face and many points at once.
- :func:`temporal_packet` samples a square grid through a table over (t+, |t-|), which makes the result exactly
  symmetric under photon exchange.
"""

import functools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .approximations import ERF, EXP, psi_exit_erf, psi_exit_exp
from ..constants import LN2, PHASE_THRESHOLD
from ..exceptions import InvalidParameterError
from ..numerics import fresnel_tail, geometric_edges, integrate_1d, panel_rule
from ..params import PhysicalConfig, derive

__all__ = [
    'EXACT',
    'TemporalPacket',
    'LongPulsePacket',
    'ExitFaceRule',
    'exit_face_rule',
    'pump_overlap',
    'phase_coefficient',
    'psi_exit',
    'psi_exit_points',
    'psi_exit_table',
    'default_axis',
    'temporal_packet',
    'long_pulse_packet',
]

logger = logging.getLogger(__name__)

EXACT = 'exact'

#: The innermost panel edge, relative to sqrt(L)
U_FLOOR_FRACTION = 1e-4
#: Each panel spans 1% of its upper edge, about 20 rad of phase at the split point
PANEL_RATIO = 0.99
PANEL_ORDER = 24

#: Nodes where the pump overlap of a whole block is below this are skipped
OVERLAP_CUTOFF = 1e-18

ROW_BLOCK = 256
COLUMN_BLOCK = 256
POINT_BLOCK = 64

#: Default samples per axis of a square grid
DEFAULT_POINTS = 1024
#: Default samples per axis of a long-pulse (t+, t-) grid
DEFAULT_LONG_POINTS = 129

#: Short-pulse square grids span these multiples of LA / c
SHORT_WINDOW = (-0.5, 1.2)
#: Long-pulse grids span this many pulse durations around the mean walk-off delay in t+
LONG_WINDOW_TAU = 3.0
#: ... and this many correlation times in t-
LONG_WINDOW_TAU0 = 6.0


@dataclass(frozen=True)
class TemporalPacket:
    """The exit-face wave function on a grid of shifted arrival times, photon 1 along rows."""

    #: Uniform photon 1 times [s]
    t1s: np.ndarray
    #: Uniform photon 2 times [s]
    t2s: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for name in ('t1s', 't2s'):
            axis = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, axis)
            if axis.ndim != 1 or len(axis) < 2:
                raise InvalidParameterError(name, axis.shape, 'must be a one-dimensional grid')
            steps = np.diff(axis)
            if not np.all(steps > 0) or not np.allclose(steps, steps[0], rtol=1e-6, atol=0):
                raise InvalidParameterError(name, '...', 'must be uniform and increasing')
        shape = (len(self.t1s), len(self.t2s))
        if np.shape(self.values) != shape:
            raise InvalidParameterError('values', np.shape(self.values), 'must have shape {}'.format(shape))
        if not np.all(np.isfinite(self.values)):
            raise InvalidParameterError('values', '...', 'must be finite')

    def intensity(self) -> np.ndarray:
        """Get |psi|^2 scaled to a maximum of one."""
        intensity = np.abs(self.values) ** 2
        return intensity / np.max(intensity)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Get the (t+, t-) coordinates of every grid point."""
        t1, t2 = np.meshgrid(self.t1s, self.t2s, indexing='ij')
        return (t1 + t2) / 2, t1 - t2


@dataclass(frozen=True)
class LongPulsePacket:
    """The exit-face wave function on a rotated grid, t+ along rows and t- along columns."""

    t_plus: np.ndarray
    t_minus: np.ndarray
    values: np.ndarray

    def intensity(self) -> np.ndarray:
        """Get |psi|^2 scaled to a maximum of one."""
        intensity = np.abs(self.values) ** 2
        return intensity / np.max(intensity)


@dataclass(frozen=True)
class ExitFaceRule:
    """A composite Gauss-Legendre rule in ``u = sqrt(L - z)`` on panels shrinking toward the exit face."""

    edges: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def floor(self) -> float:
        """The innermost edge, next to the exit face."""
        return float(self.edges[0])

    @property
    def top(self) -> float:
        """The outermost edge, sqrt(L), at the entrance face."""
        return float(self.edges[-1])


@functools.lru_cache(maxsize=16)
def exit_face_rule(cfg: PhysicalConfig) -> ExitFaceRule:
    """Build (and cache) the quadrature rule for a crystal."""
    top = math.sqrt(cfg.L)
    edges = geometric_edges(U_FLOOR_FRACTION * top, top, ratio=PANEL_RATIO)
    nodes, weights = panel_rule(edges, order=PANEL_ORDER)
    logger.debug('exit-face rule: %d panels, %d nodes', len(edges) - 1, len(nodes))
    return ExitFaceRule(edges=edges, nodes=nodes, weights=weights)


def pump_overlap(z, t_plus, cfg: PhysicalConfig):
    """Get the pump envelope seen at depth ``z`` [m] at mean time ``t+`` [s]."""
    width = 2 * LN2 / (cfg.c * cfg.tau) ** 2
    return np.exp(-width * (cfg.A * np.asarray(z) - cfg.c * np.asarray(t_plus)) ** 2)


def phase_coefficient(t_minus, cfg: PhysicalConfig):
    """Get ``beta = pi c^2 t-^2 / (8 B lambda0)`` [m], the dispersive phase times the distance to the exit face."""
    return math.pi * cfg.c ** 2 * np.asarray(t_minus, dtype=float) ** 2 / (8 * cfg.B * cfg.lambda0)


def _split_points(beta: np.ndarray, rule: ExitFaceRule) -> np.ndarray:
    """Get the split point of every phase coefficient, moved up to the next panel edge."""
    raw = np.maximum(np.sqrt(beta / PHASE_THRESHOLD), rule.floor)
    index = np.minimum(np.searchsorted(rule.edges, raw, side='left'), len(rule.edges) - 1)
    return rule.edges[index]


def _tail(split, beta, t_plus, cfg: PhysicalConfig):
    """Get the closed-form part below the split point."""
    return pump_overlap(cfg.L - split ** 2, t_plus, cfg) * fresnel_tail(beta, split ** 2)


def _check_method(method: str):
    if method not in (EXACT, ERF, EXP):
        raise InvalidParameterError('method', method, 'must be exact, erf or exp')


def psi_exit(t1: float, t2: float, cfg: PhysicalConfig, method: str = EXACT, tol: float = 1e-10) -> complex:
    """Evaluate the exit-face wave function at one pair of shifted arrival times.

    :param t1: Photon 1 time [s]
    :param t2: Photon 2 time [s]
    :param cfg: A physical configuration
    :param method: ``exact`` for the integral, ``erf`` or ``exp`` for the closed-form approximations
    :param tol: Quadrature tolerance of the exact method
    :raises ApproxOutOfDomain: if an approximation is requested where its criterion fails
    :raises NonConvergence: if the quadrature fails
    """
    _check_method(method)
    if method == ERF:
        return psi_exit_erf(t1, t2, cfg)
    if method == EXP:
        return psi_exit_exp(t1, t2, cfg)

    t_plus = (t1 + t2) / 2
    beta = float(phase_coefficient(t1 - t2, cfg))
    top = math.sqrt(cfg.L)
    split = min(max(math.sqrt(beta / PHASE_THRESHOLD), U_FLOOR_FRACTION * top), top)
    tail = complex(_tail(split, beta, t_plus, cfg))
    if split >= top:
        return tail

    def integrand(u):
        return 2 * pump_overlap(cfg.L - u * u, t_plus, cfg) * np.exp(1j * beta / (u * u))

    z0 = cfg.c * t_plus / cfg.A
    sigma = cfg.c * cfg.tau / (2 * cfg.A * math.sqrt(LN2))
    points = [
        math.sqrt(cfg.L - z)
        for z in (z0 - 6 * sigma, z0 - 3 * sigma, z0, z0 + 3 * sigma, z0 + 6 * sigma)
        if 0 < z < cfg.L
    ]
    points.extend(geometric_edges(split, top, ratio=PANEL_RATIO)[1:-1])
    return integrate_1d(integrand, split, top, tol=tol, points=sorted(points)) + tail


def psi_exit_points(t_plus, t_minus, cfg: PhysicalConfig) -> np.ndarray:
    """Evaluate the exact exit-face wave function at arbitrary (t+, t-) pairs with the fixed panel rule.

    :param t_plus: Mean times [s]
    :param t_minus: Time differences [s], broadcast against ``t_plus``
    :return: Complex values with the broadcast shape
    """
    t_plus, t_minus = np.broadcast_arrays(np.asarray(t_plus, dtype=float), np.asarray(t_minus, dtype=float))
    shape = t_plus.shape
    t_plus, t_minus = t_plus.ravel(), t_minus.ravel()

    rule = exit_face_rule(cfg)
    depth = cfg.L - rule.nodes ** 2
    inverse_square = 1 / rule.nodes ** 2
    beta = phase_coefficient(t_minus, cfg)
    split = _split_points(beta, rule)

    result = np.empty(len(t_plus), dtype=complex)
    for start in range(0, len(t_plus), POINT_BLOCK):
        block = slice(start, start + POINT_BLOCK)
        overlap = pump_overlap(depth[None, :], t_plus[block, None], cfg)
        keep = np.flatnonzero(np.max(overlap, axis=0) > OVERLAP_CUTOFF)
        terms = (2 * rule.weights[keep]) * overlap[:, keep] * np.exp(1j * beta[block, None] * inverse_square[keep])
        terms[rule.nodes[keep][None, :] < split[block, None]] = 0
        result[block] = terms.sum(axis=1) + _tail(split[block], beta[block], t_plus[block], cfg)
    return result.reshape(shape)


def psi_exit_table(
    t_plus: Sequence[float],
    t_minus: Sequence[float],
    cfg: PhysicalConfig,
    use_tqdm: bool = False,
) -> np.ndarray:
    """Evaluate the exact exit-face wave function on the outer product of t+ and t- samples.

    The t+ dependence sits in the pump overlap and the t- dependence in the phase, so the panel sums are a matrix
    product of the two, computed in blocks.

    :return: A complex matrix with t+ along rows
    """
    t_plus = np.atleast_1d(np.asarray(t_plus, dtype=float))
    t_minus = np.atleast_1d(np.asarray(t_minus, dtype=float))

    rule = exit_face_rule(cfg)
    depth = cfg.L - rule.nodes ** 2
    beta = phase_coefficient(t_minus, cfg)
    split = _split_points(beta, rule)

    result = np.empty((len(t_plus), len(t_minus)), dtype=complex)
    result[:] = pump_overlap(cfg.L - split[None, :] ** 2, t_plus[:, None], cfg) * fresnel_tail(beta, split ** 2)

    column_starts = range(0, len(t_minus), COLUMN_BLOCK)
    if use_tqdm:
        column_starts = tqdm(column_starts, desc='Exit-face table', leave=False)

    for column in column_starts:
        columns = slice(column, column + COLUMN_BLOCK)
        phases = np.exp(1j * beta[None, columns] / rule.nodes[:, None] ** 2) * (2 * rule.weights[:, None])
        phases[rule.nodes[:, None] < split[None, columns]] = 0
        for row in range(0, len(t_plus), ROW_BLOCK):
            rows = slice(row, row + ROW_BLOCK)
            overlap = pump_overlap(depth[None, :], t_plus[rows, None], cfg)
            keep = np.flatnonzero(np.max(overlap, axis=0) > OVERLAP_CUTOFF)
            if not len(keep):
                continue
            result[rows, columns] += overlap[:, keep] @ phases[keep]
    return result


def default_axis(cfg: PhysicalConfig, points: Optional[int] = None) -> np.ndarray:
    """Get the default shifted-time axis of a square grid.

    Short pulses (eta < 1) span ``[-0.5, 1.2] LA / c``; longer ones span three pulse durations around the mean
    walk-off delay ``LA / (2c)``.
    """
    points = points or DEFAULT_POINTS
    walk_off = cfg.L * cfg.A / cfg.c
    if derive(cfg).eta < 1:
        lo, hi = SHORT_WINDOW[0] * walk_off, SHORT_WINDOW[1] * walk_off
    else:
        lo, hi = walk_off / 2 - LONG_WINDOW_TAU * cfg.tau, walk_off / 2 + LONG_WINDOW_TAU * cfg.tau
    return np.linspace(lo, hi, points)


def _is_square(t1s: np.ndarray, t2s: np.ndarray) -> bool:
    return t1s.shape == t2s.shape and np.array_equal(t1s, t2s)


def temporal_packet(
    cfg: PhysicalConfig,
    t1s: Optional[Sequence[float]] = None,
    t2s: Optional[Sequence[float]] = None,
    points: Optional[int] = None,
    use_tqdm: bool = False,
) -> TemporalPacket:
    """Sample the exact exit-face wave function on a grid of shifted arrival times.

    :param cfg: A physical configuration
    :param t1s: Uniform photon 1 times [s]. Defaults to :func:`default_axis`.
    :param t2s: Uniform photon 2 times [s]. Defaults to ``t1s``.
    :param points: Samples per axis of the default axis
    :param use_tqdm: Show a progress bar
    """
    t1s = default_axis(cfg, points) if t1s is None else np.asarray(t1s, dtype=float)
    t2s = t1s if t2s is None else np.asarray(t2s, dtype=float)

    if _is_square(t1s, t2s):
        n = len(t1s)
        step = (t1s[-1] - t1s[0]) / (n - 1)
        table = psi_exit_table(
            t1s[0] + np.arange(2 * n - 1) * step / 2,
            np.arange(n) * step,
            cfg,
            use_tqdm=use_tqdm,
        )
        index = np.arange(n)
        values = table[np.add.outer(index, index), np.abs(np.subtract.outer(index, index))]
    else:
        rows = range(len(t1s))
        if use_tqdm:
            rows = tqdm(rows, desc='Exit-face rows', leave=False)
        values = np.empty((len(t1s), len(t2s)), dtype=complex)
        for i in rows:
            values[i] = psi_exit_points((t1s[i] + t2s) / 2, t1s[i] - t2s, cfg)

    logger.debug('sampled exit-face packet on %d x %d grid', len(t1s), len(t2s))
    return TemporalPacket(t1s=t1s, t2s=t2s, values=values)


def long_pulse_packet(
    cfg: PhysicalConfig,
    t_plus: Optional[Sequence[float]] = None,
    t_minus: Optional[Sequence[float]] = None,
    points: Optional[int] = None,
) -> LongPulsePacket:
    """Sample the exact exit-face wave function on a rotated (t+, t-) grid.

    The defaults span three pulse durations in t+ around the mean walk-off delay ``LA / (2c)`` and six correlation
    times ``tau0`` in t-, which resolves both scales when ``tau >> tau0``.
    """
    points = points or DEFAULT_LONG_POINTS
    if t_plus is None:
        center = cfg.L * cfg.A / (2 * cfg.c)
        span = LONG_WINDOW_TAU * cfg.tau
        t_plus = np.linspace(center - span, center + span, points)
    if t_minus is None:
        span = LONG_WINDOW_TAU0 * derive(cfg).tau0
        t_minus = np.linspace(-span, span, points)
    t_plus = np.asarray(t_plus, dtype=float)
    t_minus = np.asarray(t_minus, dtype=float)
    return LongPulsePacket(t_plus=t_plus, t_minus=t_minus, values=psi_exit_table(t_plus, t_minus, cfg))
