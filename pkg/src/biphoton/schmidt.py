# -*- coding: utf-8 -*-

"""The Schmidt number of the two-photon state, computed three ways.

1. :func:`schmidt_svd` samples the spectral amplitude on a square grid of photon 1 and photon 2 detunings and takes
   singular values, refining the grid until the result settles.
2. :func:`schmidt_integral4d` evaluates the four-fold overlap integral that defines the Schmidt number as a trace of
   the squared one-photon overlap matrix.
3. :func:`k_analytic` gives the short- and long-pulse closed forms and their interpolation.

The grid is a square lattice in (nu1, nu2), so the Schmidt modes are functions of single-photon detuning. The
amplitude is only evaluated in a band of the rotated coordinate ``u = nu1 + nu2`` around the pump ridge ``u = 0``;
outside :data:`PUMP_BAND` pump widths the pump factor is below ``2^-72`` and the entry is left at zero. Along the
diagonal the amplitude is a sinc of ``L A (nu1 + nu2) / (2c)`` times a Gaussian, so the samples resolve it once the
step is below ``2 pi c / (L A)``. The initial resolution is chosen from that bound and from the expected number of
modes.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np
from tqdm import tqdm

from .numerics import NonConvergence, gram_schmidt_number, svd_schmidt
from .params import PhysicalConfig, derive
from .spectral import (
    EntanglementReport, crystal_factor, jsa, pump_width, r_parameter, single_particle_width_long,
    single_particle_width_short,
)

__all__ = [
    'SchmidtGridSpec',
    'SchmidtResult',
    'KParameters',
    'schmidt_svd',
    'schmidt_integral4d',
    'k_analytic',
    'k_unified',
    'kr_ratio',
    'entanglement_report',
]

logger = logging.getLogger(__name__)

Kernel = Callable[[np.ndarray, np.ndarray], np.ndarray]

SVD = 'svd'
INTEGRAL4D = 'integral4d'

K_SHORT_COEFFICIENT = 0.785
K_LONG_COEFFICIENT = 0.6

#: Baseline-crystal coefficients of the unified Schmidt number
K_UNIFIED_SHORT = 57.5
K_UNIFIED_LONG = 44.0

#: Half-width of the evaluated band in nu1 + nu2, in pump widths
PUMP_BAND = 6.0

MIN_POINTS = 128
START_MAX_POINTS = 2048


@dataclass(frozen=True)
class SchmidtGridSpec:
    """How to sample a kernel for the Schmidt decomposition.

    Unset fields are sized from the configuration.
    """

    #: Half-width of both detuning axes [rad/s]
    half_width: Optional[float] = None
    #: Samples per axis of the first grid
    points: Optional[int] = None
    #: Double the resolution until K changes by less than ``rtol``
    refine: bool = True
    rtol: float = 0.005
    max_points: int = 4096
    #: Evaluate the spectral amplitude only near the pump ridge. Injected kernels are always sampled in full.
    band: bool = True


@dataclass(frozen=True)
class SchmidtResult:
    """A Schmidt number and how it was obtained."""

    K: float
    method: str
    coeffs: Optional[np.ndarray] = None
    points: Optional[int] = None
    half_width: Optional[float] = None
    #: (samples per axis, K) for every grid that was tried
    trace: List[Tuple[int, float]] = field(default_factory=list)

    def __post_init__(self):
        if self.coeffs is not None and not math.isclose(float(np.sum(self.coeffs)), 1.0, abs_tol=1e-8):
            raise ValueError('Schmidt probabilities must sum to one')


class KParameters(NamedTuple):
    """The Schmidt number from the short- and long-pulse closed forms and their interpolation."""

    K_short: float
    K_long: float
    K_interp: float


def _next_power_of_two(n: float) -> int:
    return 1 << max(0, math.ceil(math.log2(max(n, 1))))


def _default_half_width(cfg: PhysicalConfig) -> float:
    eta = derive(cfg).eta
    short = single_particle_width_short(cfg) if eta < 1 else 0.0
    return 2.5 * math.hypot(short, single_particle_width_long(cfg))


def _default_points(cfg: PhysicalConfig, half_width: float) -> int:
    nyquist = 2 * math.pi * cfg.c / (cfg.L * cfg.A)
    wanted = max(6 * r_parameter(cfg).R_interp, 2 * half_width / nyquist)
    return min(max(_next_power_of_two(wanted), MIN_POINTS), START_MAX_POINTS)


def _sample(
    cfg: PhysicalConfig,
    kernel: Optional[Kernel],
    half_width: float,
    points: int,
    band: bool = True,
    block: int = 256,
):
    """Sample the kernel on a square lattice in blocks of rows to bound the size of temporaries.

    For the spectral amplitude with ``band`` set, only lattice points with ``|nu1 + nu2|`` within
    :data:`PUMP_BAND` pump widths are evaluated; the rest are left at zero.
    """
    axis = np.linspace(-half_width, half_width, points)
    limit = PUMP_BAND * pump_width(cfg) if kernel is None and band else None
    if kernel is None:
        def kernel(x, y):
            return jsa(x, y, cfg).real

    rows = []
    evaluated = 0
    for start in range(0, points, block):
        nu1, nu2 = np.meshgrid(axis[start:start + block], axis, indexing='ij')
        if limit is None:
            rows.append(kernel(nu1, nu2))
            evaluated += nu1.size
            continue
        inside = np.abs(nu1 + nu2) <= limit
        values = np.zeros(nu1.shape)
        values[inside] = kernel(nu1[inside], nu2[inside])
        rows.append(values)
        evaluated += int(np.count_nonzero(inside))

    logger.debug('sampled %d of %d lattice points', evaluated, points * points)
    return np.concatenate(rows, axis=0), axis[1] - axis[0]


def schmidt_svd(
    cfg: PhysicalConfig,
    spec: Optional[SchmidtGridSpec] = None,
    kernel: Optional[Kernel] = None,
    use_tqdm: bool = False,
) -> SchmidtResult:
    """Compute the Schmidt number from the singular values of the sampled amplitude.

    :param cfg: A physical configuration. Also used to size the grid when ``kernel`` is given.
    :param spec: Grid specification
    :param kernel: A function of the (nu1, nu2) meshes replacing the spectral amplitude
    :param use_tqdm: Show a progress bar over refinement steps
    :raises NonConvergence: if K has not settled at ``spec.max_points`` samples per axis
    """
    spec = spec or SchmidtGridSpec()
    half_width = spec.half_width or _default_half_width(cfg)
    points = spec.points or _default_points(cfg, half_width)

    trace = []
    previous = None
    steps = range(int(math.log2(spec.max_points)) + 1)
    if use_tqdm:
        steps = tqdm(steps, desc='Schmidt refinement', leave=False)

    for _ in steps:
        matrix, step = _sample(cfg, kernel, half_width, points, band=spec.band)
        decomposition = svd_schmidt(matrix, step, step)
        trace.append((points, decomposition.K))
        logger.debug('svd on %d x %d grid: K=%.6g', points, points, decomposition.K)

        converged = previous is not None and abs(decomposition.K - previous) <= spec.rtol * decomposition.K
        if not spec.refine or converged:
            return SchmidtResult(
                K=decomposition.K,
                method=SVD,
                coeffs=decomposition.coeffs,
                points=points,
                half_width=half_width,
                trace=trace,
            )
        if 2 * points > spec.max_points:
            break
        previous = decomposition.K
        points *= 2

    raise NonConvergence('Schmidt refinement', 'K changed by more than {:.2%} at {} points: {}'.format(
        spec.rtol, points, trace,
    ))


def schmidt_integral4d(
    cfg: PhysicalConfig,
    spec: Optional[SchmidtGridSpec] = None,
    kernel: Optional[Kernel] = None,
) -> SchmidtResult:
    """Compute the Schmidt number from its four-fold integral definition.

    ``K = N^2 / (integral of psi(1,2) psi*(1,2') psi*(1',2) psi(1',2'))`` with the norm ``N`` of the amplitude. On a
    grid the denominator is the squared Frobenius norm of the one-photon overlap matrix, so no four-fold loop is
    formed. The grid is used as given: no refinement.

    :raises ZeroKernel: if the sampled kernel vanishes
    """
    spec = spec or SchmidtGridSpec()
    half_width = spec.half_width or _default_half_width(cfg)
    points = spec.points or _default_points(cfg, half_width)
    matrix, step = _sample(cfg, kernel, half_width, points, band=spec.band)
    K = gram_schmidt_number(matrix, step, step)
    logger.debug('overlap trace on %d x %d grid: K=%.6g', points, points, K)
    return SchmidtResult(K=K, method=INTEGRAL4D, points=points, half_width=half_width, trace=[(points, K)])


def k_analytic(cfg: PhysicalConfig) -> KParameters:
    """Get the Schmidt number in the short- and long-pulse limits and their square-root interpolation."""
    eta = derive(cfg).eta
    factor = crystal_factor(cfg)
    k_short = K_SHORT_COEFFICIENT * factor / math.sqrt(eta)
    k_long = K_LONG_COEFFICIENT * factor * eta
    return KParameters(K_short=k_short, K_long=k_long, K_interp=math.hypot(k_short, k_long))


def k_unified(eta: float) -> float:
    """Get the interpolated Schmidt number of the LiIO3 baseline crystal, ``sqrt(57.5^2 / eta + (44 eta)^2)``."""
    return math.sqrt(K_UNIFIED_SHORT ** 2 / eta + (K_UNIFIED_LONG * eta) ** 2)


def kr_ratio(eta: float) -> float:
    """Get the ratio of the Schmidt number to the width ratio, ``1.04 sqrt((1 + 0.586 eta^3) / (1 + eta^3))``.

    The ratio depends on the pulse duration only, not on the crystal.
    """
    if not eta > 0:
        raise ValueError('eta must be positive')
    cube = eta ** 3
    return 1.04 * math.sqrt((1 + 0.586 * cube) / (1 + cube))


def entanglement_report(
    cfg: PhysicalConfig,
    numeric: bool = False,
    spec: Optional[SchmidtGridSpec] = None,
    use_tqdm: bool = False,
) -> EntanglementReport:
    """Collect the width ratios and Schmidt numbers of a configuration.

    :param numeric: Also compute the Schmidt number from the singular values. This is the expensive part.
    """
    eta = derive(cfg).eta
    r = r_parameter(cfg)
    k = k_analytic(cfg)
    k_numeric = schmidt_svd(cfg, spec=spec, use_tqdm=use_tqdm).K if numeric else None
    return EntanglementReport(
        eta=eta,
        R_short=r.R_short,
        R_long=r.R_long,
        R_interp=r.R_interp,
        K_short=k.K_short,
        K_long=k.K_long,
        K_interp=k.K_interp,
        KR_ratio=kr_ratio(eta),
        K_numeric=k_numeric,
    )
