# -*- coding: utf-8 -*-

"""Schmidt decomposition of a sampled two-photon kernel.

A kernel ``M[i, j] = psi(x_i, y_j)`` sampled on a grid with steps ``dx``, ``dy`` is an approximation of the integral
operator with kernel ``psi``. Its singular values give the Schmidt coefficients. The cell area cancels in the
normalized probabilities but is kept in the signatures so callers pass physical grids.
"""

import logging
from typing import NamedTuple

import numpy as np

from .exc import ZeroKernel
from ..exceptions import InvalidParameterError

__all__ = [
    'SchmidtDecomposition',
    'svd_schmidt',
    'gram_schmidt_number',
]

logger = logging.getLogger(__name__)


class SchmidtDecomposition(NamedTuple):
    """Schmidt probabilities (non-increasing, summing to one) and the Schmidt number."""

    coeffs: np.ndarray
    K: float


def _check_kernel(matrix) -> np.ndarray:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2:
        raise InvalidParameterError('matrix', matrix.shape, 'must be two-dimensional')
    if not np.all(np.isfinite(matrix)):
        raise InvalidParameterError('matrix', '...', 'must be finite')
    if not np.max(np.abs(matrix)) > np.finfo(float).tiny:
        raise ZeroKernel
    if np.iscomplexobj(matrix) and not np.any(matrix.imag):
        matrix = matrix.real
    return matrix


def svd_schmidt(matrix, dx: float = 1.0, dy: float = 1.0) -> SchmidtDecomposition:
    """Compute Schmidt probabilities and the Schmidt number from singular values.

    :param matrix: Kernel samples, photon 1 along rows and photon 2 along columns
    :param dx: Row grid step
    :param dy: Column grid step
    :raises ZeroKernel: if every entry is zero
    """
    matrix = _check_kernel(matrix)
    sigma = np.linalg.svd(matrix, compute_uv=False)
    weights = sigma ** 2 * dx * dy
    coeffs = weights / np.sum(weights)
    K = 1.0 / float(np.sum(coeffs ** 2))
    logger.debug('SVD of %s kernel: K=%.6g, leading coefficient %.6g', matrix.shape, K, coeffs[0])
    return SchmidtDecomposition(coeffs=coeffs, K=K)


def gram_schmidt_number(matrix, dx: float = 1.0, dy: float = 1.0) -> float:
    """Compute the Schmidt number as the squared norm over the trace of the squared one-photon overlap.

    With ``N = sum |M|^2 dx dy`` and the overlap ``G = M^H M dx`` the four-fold integral of the kernel reduces to
    ``trace(G G) dy^2 = ||G||_F^2 dy^2``, so ``K = N^2 / (||G||_F^2 dy^2)``. The smaller of the two Gram matrices is
    formed.

    :raises ZeroKernel: if every entry is zero
    """
    matrix = _check_kernel(matrix)
    norm = float(np.sum(np.abs(matrix) ** 2)) * dx * dy
    if matrix.shape[0] >= matrix.shape[1]:
        gram = (matrix.conj().T @ matrix) * dx * dy
    else:
        gram = (matrix @ matrix.conj().T) * dx * dy
    return norm ** 2 / float(np.sum(np.abs(gram) ** 2))
