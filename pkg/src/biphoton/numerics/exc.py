# -*- coding: utf-8 -*-

"""Exceptions for the numerical kernels.

Each of these signals something the caller has to act on: widen a window, transform an integrand, switch to an
asymptotic form or fix the kernel.
"""

from ..exceptions import BiphotonError

__all__ = [
    'NumericsError',
    'NoHalfCrossing',
    'NonConvergence',
    'DomainOverflow',
    'ZeroKernel',
]


class NumericsError(BiphotonError):
    """The base class for errors raised by the numerical kernels."""


class NoHalfCrossing(NumericsError, ValueError):
    """Raised when a sampled curve does not fall below half of its maximum on one side of the peak."""

    def __init__(self, side: str, half: float):
        super().__init__(side, half)
        self.side = side
        self.half = half

    def __str__(self):
        return 'curve never falls below half maximum ({:.6g}) on the {} side: widen the window'.format(
            self.half, self.side,
        )


class NonConvergence(NumericsError, RuntimeError):
    """Raised when an iterative or adaptive procedure exhausts its budget."""

    def __init__(self, stage: str, detail: str):
        super().__init__(stage, detail)
        self.stage = stage
        self.detail = detail

    def __str__(self):
        return '{} did not converge: {}'.format(self.stage, self.detail)


class DomainOverflow(NumericsError, OverflowError):
    """Raised when a special function would overflow for the requested argument."""

    def __init__(self, function: str, argument):
        super().__init__(function, argument)
        self.function = function
        self.argument = argument

    def __str__(self):
        return '{} overflows at {}: use the scaled or asymptotic form'.format(self.function, self.argument)


class ZeroKernel(NumericsError, ValueError):
    """Raised when a two-photon kernel vanishes everywhere on its grid."""

    def __str__(self):
        return 'kernel is identically zero on the grid'
