# -*- coding: utf-8 -*-

"""Special functions: sinc, the complex error function and a closed-form oscillatory endpoint integral.

The complex error function comes from the Faddeeva function in :mod:`scipy.special`. The wrappers here make the
reflection symmetries exact, guard against overflow and provide the damped product ``exp(-y^2) erf(x + iy)`` that
stays finite where ``erf`` itself overflows.
"""

import numpy as np
from scipy import special

from .exc import DomainOverflow

__all__ = [
    'sinc',
    'erf_complex',
    'erf_damped',
    'fresnel_tail',
]

#: Below this magnitude sinc uses its Taylor series
SINC_SERIES_CUTOFF = 1e-4

#: Documented bound on the imaginary part for the unscaled complex error function
ERF_IMAG_BOUND = 30.0

_EIGHTH_TURN = np.exp(0.25j * np.pi)


def _scalar_or_array(value: np.ndarray):
    if value.ndim:
        return value
    return value.item()


def sinc(x):
    """Compute sin(x)/x, with 1 - x^2/6 + x^4/120 for ``|x| < 1e-4``."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    value = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return _scalar_or_array(value)


def erf_complex(z):
    """Compute the error function of a complex argument.

    The argument is reflected into the first quadrant before evaluation so that ``erf(-z) = -erf(z)`` and
    ``erf(conj(z)) = conj(erf(z))`` hold exactly.

    :raises DomainOverflow: if the value is not representable. Use :func:`erf_damped` instead.
    """
    z = np.asarray(z, dtype=complex)
    flip = z.real < 0
    reflected = np.where(flip, -z, z)
    conjugate = reflected.imag < 0
    reflected = np.where(conjugate, np.conj(reflected), reflected)

    with np.errstate(over='ignore', invalid='ignore'):
        value = special.erf(reflected)

    if not np.all(np.isfinite(value)):
        raise DomainOverflow('erf', z[~np.isfinite(value)].ravel()[0] if z.ndim else complex(z))

    value = np.where(conjugate, np.conj(value), value)
    value = np.where(flip, -value, value)
    return _scalar_or_array(value)


def erf_damped(z):
    """Compute exp(-Im(z)^2) erf(z) without forming erf(z).

    For ``Re z >= 0`` this is ``exp(-y^2) - exp(-x^2 - 2ixy) w(iz)`` with the Faddeeva function ``w``, which is
    bounded there. The left half-plane follows from oddness.
    """
    z = np.asarray(z, dtype=complex)
    flip = z.real < 0
    zr = np.where(flip, -z, z)
    x, y = zr.real, zr.imag
    value = np.exp(-y * y) - np.exp(-x * x - 2j * x * y) * special.wofz(1j * zr)
    value = np.where(flip, -value, value)
    return _scalar_or_array(value)


def fresnel_tail(beta, X):
    """Integrate x^(-1/2) exp(i beta / x) over ``(0, X]`` in closed form.

    With ``q = exp(-i pi/4) sqrt(beta / X)`` the integral equals

        exp(i beta/X) [2 sqrt(X) + 2i sqrt(pi beta) exp(i pi/4) w(iq)]

    where ``w`` is the Faddeeva function, i.e. ``2 sqrt(X) exp(i beta/X) + 2i sqrt(pi beta) exp(i pi/4) erfc(q)``.

    :param beta: Non-negative phase coefficient(s)
    :param X: Positive upper limit(s)
    """
    beta = np.asarray(beta, dtype=float)
    X = np.asarray(X, dtype=float)
    if np.any(beta < 0):
        raise ValueError('beta must be non-negative')
    if np.any(X <= 0):
        raise ValueError('X must be positive')

    ratio = beta / X
    q = np.sqrt(ratio) / _EIGHTH_TURN
    value = np.exp(1j * ratio) * (
        2 * np.sqrt(X) + 2j * np.sqrt(np.pi * beta) * _EIGHTH_TURN * special.wofz(1j * q)
    )
    return _scalar_or_array(value)
