# -*- coding: utf-8 -*-

"""Constants for biphoton.

This module keeps the physical constants, the tabulated shape factors and the unit tables used throughout the
biphoton codebase to promote consistency. Everything is in SI units.
"""

import math
import os

__all__ = [
    'SPEED_OF_LIGHT',
    'LN2',
    'SINC2_FWHM',
    'SINC2_FWHM_EXACT',
    'LONG_PULSE_FWHM',
    'PHASE_THRESHOLD',
    'TIME_UNITS',
    'LENGTH_UNITS',
    'CONFIG_KEYS',
    'HERE',
    'BASELINE_CONFIG_PATH',
]

#: Speed of light in vacuum [m/s]. Fixed, never configurable.
SPEED_OF_LIGHT = 299792458.0

LN2 = math.log(2.0)

#: The rounded full width at half maximum of sinc^2(u) used by the closed-form width and R/K formulas
SINC2_FWHM = 2.78
#: The full width at half maximum of sinc^2(u) to ten digits
SINC2_FWHM_EXACT = 2.7831124319

#: The full width at half maximum of |F(x)|^2 for the long-pulse correlation factor, in units of tau_0
LONG_PULSE_FWHM = 0.555

#: Phase [rad] beyond which the exit-face oscillation is closed analytically
PHASE_THRESHOLD = 1.0e3

#: Multipliers from time suffixes to seconds
TIME_UNITS = {
    'fs': 1e-15,
    'ps': 1e-12,
    'ns': 1e-9,
    'us': 1e-6,
    's': 1.0,
}

#: Multipliers from length suffixes to meters
LENGTH_UNITS = {
    'nm': 1e-9,
    'um': 1e-6,
    'mm': 1e-3,
    'cm': 1e-2,
    'm': 1.0,
}

#: The keys of a physical configuration file and the kind of quantity each holds
CONFIG_KEYS = {
    'A': 'dimensionless',
    'B': 'dimensionless',
    'L': 'length',
    'lambda0': 'length',
    'tau': 'time',
}

HERE = os.path.dirname(os.path.abspath(__file__))

#: The shipped LiIO3 configuration (A=0.17, B=0.069, L=0.5 cm, lambda0=400 nm, tau=50 fs)
BASELINE_CONFIG_PATH = os.path.join(HERE, 'data', 'liio3_baseline.cfg')
