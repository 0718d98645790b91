# -*- coding: utf-8 -*-

"""Numerical kernels shared by the spectral, Schmidt and temporal modules.

This package holds quadrature (:mod:`biphoton.numerics.quadrature`), curve width analysis
(:mod:`biphoton.numerics.curve`), special functions (:mod:`biphoton.numerics.special`) and the dense Schmidt
decomposition (:mod:`biphoton.numerics.svd`).
"""

from .curve import Curve, FwhmResult, fwhm, widen_until_crossed
from .exc import DomainOverflow, NoHalfCrossing, NonConvergence, NumericsError, ZeroKernel
from .quadrature import geometric_edges, integrate_1d, panel_rule, sinc_convolution_check
from .special import erf_complex, erf_damped, fresnel_tail, sinc
from .svd import SchmidtDecomposition, gram_schmidt_number, svd_schmidt

__all__ = [
    'Curve',
    'FwhmResult',
    'fwhm',
    'widen_until_crossed',
    'NumericsError',
    'NoHalfCrossing',
    'NonConvergence',
    'DomainOverflow',
    'ZeroKernel',
    'integrate_1d',
    'geometric_edges',
    'panel_rule',
    'sinc_convolution_check',
    'sinc',
    'erf_complex',
    'erf_damped',
    'fresnel_tail',
    'SchmidtDecomposition',
    'svd_schmidt',
    'gram_schmidt_number',
]
